//! The double-negation map `g`, the translation of classical derivations into
//! intuitionistic ones, and a one-way export of derivations into labelled
//! sequent form.
//!
//! Negative formulas are built from ⊥ and doubly negated atoms with □, ∧ and
//! →. Every image `g(A)` is negative, and for negative `A` the intuitionistic
//! systems derive `¬¬A → A` at any position. That is what lets the
//! classical rules (∨, ◇ and reductio) go through.

mod classical;
mod dne;
mod g;
mod labelled;

use thiserror::Error;

use crate::kernel::Label;
use crate::syntax::Formula;

pub use classical::classical_to_intuitionistic;
pub use dne::{build_dne, contrapose};
pub use g::{g_translate, is_negative_over_dna};
pub use labelled::{
    derivation_to_labelled, judgment_to_labelled, pos_to_relational, position_label, LabelledAtom,
    LabelledProofSketch, LabelledRule, LabelledSequent, Mode,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("{0} is not built from ⊥ and doubly negated atoms with □, ∧ and →")]
    NotEligible(Formula),
    #[error("no open p-formula assumption carries the label {0}")]
    LabelNotOpen(Label),
    #[error("ill-formed derivation: {0}")]
    IllFormed(String),
}
