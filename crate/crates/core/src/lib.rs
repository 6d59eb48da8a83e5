//! Position-decorated natural deduction for the normal modal logics
//! K, D, T, K4, D4 and S4, in classical and intuitionistic flavors.
//!
//! Every formula occurrence carries a position, a finite sequence of tokens
//! naming a node of a tree-shaped Kripke model. The crate provides a proof
//! kernel with all side conditions, a normalizer, bounded semantic probes,
//! the double-negation translation and a labelled-sequent export.

pub mod kernel;
pub mod normalizer;
pub mod semantics;
pub mod sexpr;
pub mod syntax;
pub mod translate;

pub use kernel::{check, Derivation, Flavor, Logic, System};
pub use syntax::{Formula, PFormula, Position, Token};
