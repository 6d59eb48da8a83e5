//! Bounded checks of the substitution lemmas behind soundness: the modal
//! clauses read through one-point extensions of an evaluation, extension by
//! node difference, and elimination of a fresh existence assumption.

use std::collections::BTreeSet;

use crate::kernel::{Judgment, Logic};
use crate::syntax::{init_set, Formula, PFormula, Position, Token};

use super::enumerate::{enumerate_models, Bounds};
use super::evaluation::{assignments, to_evaluation, Domain, Universe};
use super::model::node_subtract;
use super::probe::consequence_probe;
use super::SemanticsError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub instances: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

/// Whether `t` may serve as the image offset of a fresh token: `|t| = 1` for
/// K and D, `≤ 1` for T, `≥ 1` for K4 and D4, anything for S4.
pub fn extension_admits(logic: Logic, len: usize) -> bool {
    match logic {
        Logic::K | Logic::D => len == 1,
        Logic::T => len <= 1,
        Logic::K4 | Logic::D4 => len >= 1,
        Logic::S4 => true,
    }
}

/// Every formula over `atoms` and ⊥ of degree at most `depth`.
pub fn formulas_up_to(depth: usize, atoms: &[&str]) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![atoms
        .iter()
        .map(|a| Formula::atom(a))
        .chain([Formula::Bottom])
        .collect()];
    for d in 1..=depth {
        let below: Vec<&Formula> = levels.iter().flatten().collect();
        let prev = &levels[d - 1];
        let mut next = Vec::new();
        for a in prev {
            next.push(Formula::boxed(a.clone()));
            next.push(Formula::dia(a.clone()));
        }
        for a in &below {
            for b in &below {
                if a.degree() == d - 1 || b.degree() == d - 1 {
                    next.push(Formula::and((*a).clone(), (*b).clone()));
                    next.push(Formula::or((*a).clone(), (*b).clone()));
                    next.push(Formula::imp((*a).clone(), (*b).clone()));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

fn alphas() -> [Position; 2] {
    [Position::empty(), Position::of(&["y"])]
}

/// For every enumerated model and evaluation defined at `α`: `□A^α` holds
/// iff `A^{αx}` holds under every admissible one-point extension at the
/// fresh `αx`, and `◇A^α` iff under some defined one. Partial logics also
/// extend to "undefined", which satisfies every conclusion.
pub fn check_sub1(logic: Logic, b: Bounds, formulas: &[Formula]) -> LemmaReport {
    let mut report = LemmaReport::default();
    for m in enumerate_models(b, logic) {
        let plain: Vec<Vec<bool>> = formulas.iter().map(|f| m.truth(logic, f)).collect();
        let boxed: Vec<Vec<bool>> = formulas.iter().map(|f| m.truth(logic, &Formula::boxed(f.clone()))).collect();
        let dia: Vec<Vec<bool>> = formulas.iter().map(|f| m.truth(logic, &Formula::dia(f.clone()))).collect();
        for alpha in alphas() {
            let dom = Domain::new([&alpha]);
            let at = dom.index(&alpha).expect("α is in its own closure");
            // Extensions come from one tail level deeper than assignments
            // reach, so every assigned node has all its extensions available.
            let mut u = Universe::new(&m, alpha.len());
            let wide = Universe::new(&m, alpha.len() + 1);
            for a in assignments(&mut u, &dom, logic) {
                let Some(base) = a[at] else { continue };
                let node = &u.nodes[base];
                let extensions: Vec<usize> = (0..wide.nodes.len())
                    .filter(|t| node_subtract(&wide.nodes[*t], node).is_ok_and(|d| extension_admits(logic, d.len())))
                    .collect();
                for (i, f) in formulas.iter().enumerate() {
                    let at_ext = |t: &usize| plain[i][wide.theory[*t]];
                    let every = extensions.iter().all(at_ext);
                    let some = extensions.iter().any(at_ext);
                    report.record(boxed[i][u.theory[base]] == every, || {
                        format!("□{f} at {alpha} ↦ {node:?} in {:?}", m.nodes())
                    });
                    report.record(dia[i][u.theory[base]] == some, || {
                        format!("◇{f} at {alpha} ↦ {node:?} in {:?}", m.nodes())
                    });
                }
            }
        }
    }
    report
}

/// For every enumerated model and evaluation defined at `α` and `αβ`:
/// sending the fresh `αx` to `ρ(α)·(ρ(αβ) ÷ ρ(α))` lands on `ρ(αβ)` and
/// preserves the truth of every formula moved from `αβ` to `αx`.
pub fn check_diff1(logic: Logic, b: Bounds, formulas: &[Formula]) -> LemmaReport {
    let mut report = LemmaReport::default();
    let deepest = Position::of(&["y", "z"]);
    let x = Token::new("x");
    for m in enumerate_models(b, logic) {
        let truths: Vec<Vec<bool>> = formulas.iter().map(|f| m.truth(logic, f)).collect();
        let dom = Domain::new([&deepest]);
        let mut u = Universe::new(&m, deepest.len() + 1);
        for a in assignments(&mut u, &dom, logic) {
            let rho = to_evaluation(&u, &dom, &a, logic);
            for (alpha, v) in &rho.entries {
                for (alpha_beta, w) in &rho.entries {
                    if !alpha.is_prefix_of(alpha_beta) {
                        continue;
                    }
                    let Ok(diff) = node_subtract(w, v) else {
                        report.record(false, || format!("ρ({alpha}) is not a prefix of ρ({alpha_beta})"));
                        continue;
                    };
                    let ax = alpha.child(&x);
                    let mut image = v.clone();
                    image.extend(diff);
                    report.record(image == *w, || format!("ρ'({ax}) = {image:?}, expected {w:?}"));
                    let (Some(before), Some(after)) = (m.resolve(w), m.resolve(&image)) else {
                        report.record(false, || format!("ρ'({ax}) = {image:?} is not a node"));
                        continue;
                    };
                    for (f, t) in formulas.iter().zip(&truths) {
                        report.record(t[before] == t[after], || {
                            format!("{f} at {alpha_beta} vs {ax} in {:?}", m.nodes())
                        });
                    }
                }
            }
        }
    }
    report
}

/// Outcome of one existence-elimination instance: whether
/// `Γ, E(αx) ⊩ □A^α` and whether `Γ ⊩ □A^α`, both within the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EElimination {
    pub premise: bool,
    pub conclusion: bool,
}

impl EElimination {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

pub fn check_e_elimination(
    gamma: &[Judgment],
    alpha: &Position,
    x: &Token,
    a: &Formula,
    logic: Logic,
    b: Bounds,
) -> Result<EElimination, SemanticsError> {
    let ax = alpha.child(x);
    let init: BTreeSet<Position> = init_set(gamma.iter().map(Judgment::position));
    if init.contains(&ax) {
        return Err(SemanticsError::NotFresh(ax));
    }
    let target = PFormula::new(Formula::boxed(a.clone()), alpha.clone());
    let mut with_e = gamma.to_vec();
    with_e.push(Judgment::exists(ax));
    Ok(EElimination {
        premise: consequence_probe(&with_e, &target, logic, b),
        conclusion: consequence_probe(gamma, &target, logic, b),
    })
}
