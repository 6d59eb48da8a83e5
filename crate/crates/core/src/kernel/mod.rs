//! Derivation trees, per-system rule checking, position-condition maintenance,
//! prefix substitution on derivations, lift, and the builtin axiom derivations.

mod builtins;
mod check;
mod derivation;
mod efq;
mod proof_file;
mod transform;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use builtins::{builtin, builtin_with, Axiom};
pub use check::{check, dotted_path, print_report, CheckReport, Clause, Violation};
pub use derivation::{
    infer, open_assumptions, Assumption, Connective, Derivation, Fresh, Judgment, Label, Rule,
    RuleKind,
};
pub use efq::expand_efq;
pub use proof_file::{parse_proof, print_derivation, print_proof, proof_from_sexp, ProofFile};
pub(crate) use transform::substitute_with;
pub use transform::{
    check_position_condition, freshen, lift, map_positions, proper_positions, substitute,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Logic {
    K,
    D,
    T,
    K4,
    D4,
    S4,
}

impl Logic {
    pub const ALL: [Logic; 6] = [Logic::K, Logic::D, Logic::T, Logic::K4, Logic::D4, Logic::S4];

    /// K and K4 need existence premises on modal rules.
    pub fn is_partial(self) -> bool {
        matches!(self, Logic::K | Logic::K4)
    }

    pub fn name(self) -> &'static str {
        match self {
            Logic::K => "k",
            Logic::D => "d",
            Logic::T => "t",
            Logic::K4 => "k4",
            Logic::D4 => "d4",
            Logic::S4 => "s4",
        }
    }

    /// The β-constraint on BoxE/DiaI. `strict_t` restores `β = ()` for T.
    pub fn check_beta(self, len: usize, strict_t: bool) -> Result<(), String> {
        let (ok, need) = match self {
            Logic::S4 => (true, "no constraint"),
            Logic::T if strict_t => (len == 0, "|β| = 0"),
            Logic::T => (len <= 1, "|β| ≤ 1"),
            Logic::D | Logic::K => (len == 1, "|β| = 1"),
            Logic::D4 | Logic::K4 => (len >= 1, "|β| ≥ 1"),
        };
        if ok {
            Ok(())
        } else {
            Err(format!(
                "|β| = {len} but {} requires {need}",
                self.name().to_uppercase()
            ))
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Logic::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown logic `{s}` (expected k, d, t, k4, d4 or s4)"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    Classical,
    Intuitionistic,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Classical => "classical",
            Flavor::Intuitionistic => "intuitionistic",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "classical" => Ok(Flavor::Classical),
            "intuitionistic" => Ok(Flavor::Intuitionistic),
            _ => Err(format!("unknown flavor `{s}` (expected classical or intuitionistic)")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct System {
    pub logic: Logic,
    pub flavor: Flavor,
    /// Use the printed T row `β = ()` instead of `|β| ≤ 1`.
    pub t_strict_empty_beta: bool,
}

impl System {
    pub fn new(logic: Logic, flavor: Flavor) -> Self {
        System {
            logic,
            flavor,
            t_strict_empty_beta: false,
        }
    }

    pub fn classical(logic: Logic) -> Self {
        System::new(logic, Flavor::Classical)
    }

    pub fn intuitionistic(logic: Logic) -> Self {
        System::new(logic, Flavor::Intuitionistic)
    }

    pub fn with_flavor(self, flavor: Flavor) -> Self {
        System { flavor, ..self }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("the axiom {axiom} is not derived for logic {logic}")]
    UnsupportedPair { axiom: Axiom, logic: Logic },
    #[error("substitution produced a derivation that fails to check: {0}")]
    SubstitutionUnsound(String),
    #[error("cannot expand ex falso to {target}: subformula {subformula} needs an existence premise that cannot be discharged")]
    NotExpandable { target: String, subformula: String },
    #[error("target {0} equals the premise")]
    TrivialTarget(String),
}
