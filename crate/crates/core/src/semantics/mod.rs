//! Tree-shaped Kripke models, evaluations of positions into their nodes, and
//! bounded enumeration used to probe consequence and soundness.
//!
//! Models for D and D4 must have no leaves. A finite tree stands in for such
//! a model through serial completion: every leaf continues as an infinite
//! chain of copies of itself. Truth on the chain never changes, so only the
//! leaf is stored and tail nodes resolve to it.
//!
//! Evaluations send the root position to the root node. Any other choice is
//! the same as evaluating in the subtree below that node, which the
//! enumeration already produces.

mod enumerate;
mod evaluation;
pub mod lemmas;
mod model;
mod model_file;
mod probe;

use thiserror::Error;

use crate::syntax::Position;

pub use enumerate::{atom_names, enumerate_models, enumerate_models_over, Bounds, Models};
pub use evaluation::{enumerate_evaluations, sat, sat_left, sat_right, validate_evaluation, Evaluation};
pub use model::{accessible, chain_truth, holds, node_subtract, step_kind, validate_model, Node, TreeModel};
pub use model_file::{
    evaluation_from_sexp, model_from_sexp, parse_model, print_countermodel, print_evaluation, print_model,
};
pub use probe::{consequence_probe, find_countermodel, soundness_countermodel, soundness_probe, Countermodel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("evaluation is undefined at {0}")]
    UndefinedPosition(Position),
    #[error("{u:?} is not a prefix of {v:?}")]
    NotAPrefix { v: Node, u: Node },
    #[error("{0} occurs in the assumptions")]
    NotFresh(Position),
    #[error("{0} atoms exceed the valuation width of 64")]
    TooManyAtoms(usize),
}
