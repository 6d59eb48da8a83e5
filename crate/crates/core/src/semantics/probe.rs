use std::collections::BTreeSet;
use std::sync::Arc;

use crate::kernel::{open_assumptions, Derivation, Judgment, Logic, System};
use crate::syntax::{Formula, PFormula};

use super::enumerate::{enumerate_models_over, Bounds};
use super::evaluation::{assignments, to_evaluation, Domain, Evaluation, Universe};
use super::model::TreeModel;

/// A model and evaluation satisfying every assumption but not the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub logic: Logic,
    pub model: TreeModel,
    pub evaluation: Evaluation,
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<Arc<str>>) {
    match f {
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
        Formula::Box(a) | Formula::Dia(a) => collect_atoms(a, out),
    }
}

/// Searches the models within `b`, valuating the first `b.num_atoms` atoms
/// (in name order) that the question mentions, and every evaluation of the
/// mentioned positions. Returns the first refutation in enumeration order.
pub fn find_countermodel(gamma: &[Judgment], target: &PFormula, logic: Logic, b: Bounds) -> Option<Countermodel> {
    let mut atoms = BTreeSet::new();
    for j in gamma {
        if let Judgment::P(pf) = j {
            collect_atoms(&pf.formula, &mut atoms);
        }
    }
    collect_atoms(&target.formula, &mut atoms);
    let atoms: Vec<Arc<str>> = atoms.into_iter().take(b.num_atoms).collect();

    let dom = Domain::new(gamma.iter().map(Judgment::position).chain([&target.position]));
    let slot = |pos| dom.index(pos).expect("domain holds every mentioned position");
    let mut formulas: Vec<Formula> = Vec::new();
    let mut formula_slot = |f: &Formula| match formulas.iter().position(|g| g == f) {
        Some(i) => i,
        None => {
            formulas.push(f.clone());
            formulas.len() - 1
        }
    };
    let left: Vec<(Option<usize>, usize)> = gamma
        .iter()
        .map(|j| match j {
            Judgment::P(pf) => (Some(formula_slot(&pf.formula)), slot(&pf.position)),
            Judgment::E(e) => (None, slot(&e.position)),
        })
        .collect();
    let right = (formula_slot(&target.formula), slot(&target.position));

    for m in enumerate_models_over(b, logic, atoms) {
        let truths: Vec<Vec<bool>> = formulas.iter().map(|f| m.truth(logic, f)).collect();
        let mut u = Universe::new(&m, dom.max_len());
        for a in assignments(&mut u, &dom, logic) {
            let holds = |f: usize, n: usize| truths[f][u.theory[n]];
            let assumed = left.iter().all(|(f, pos)| match (f, a[*pos]) {
                (_, None) => false,
                (None, Some(_)) => true,
                (Some(f), Some(n)) => holds(*f, n),
            });
            if !assumed {
                continue;
            }
            let concluded = a[right.1].is_none_or(|n| holds(right.0, n));
            if !concluded {
                let evaluation = to_evaluation(&u, &dom, &a, logic);
                return Some(Countermodel {
                    logic,
                    model: m,
                    evaluation,
                });
            }
        }
    }
    None
}

/// Bounded `Γ ⊩ A^α`: assumptions on the left, the target on the right.
pub fn consequence_probe(gamma: &[Judgment], target: &PFormula, logic: Logic, b: Bounds) -> bool {
    find_countermodel(gamma, target, logic, b).is_none()
}

/// The open assumptions and conclusion of `d`, probed in `sys.logic`. A
/// derivation without a p-formula conclusion yields a one-line refusal.
pub fn soundness_countermodel(d: &Derivation, sys: System, b: Bounds) -> Result<Option<Countermodel>, String> {
    let Some(Judgment::P(target)) = d.conclusion() else {
        return Err("the derivation has no p-formula conclusion".into());
    };
    let gamma: Vec<Judgment> = open_assumptions(d).into_iter().map(|a| a.content).collect();
    Ok(find_countermodel(&gamma, target, sys.logic, b))
}

pub fn soundness_probe(d: &Derivation, sys: System, b: Bounds) -> bool {
    matches!(soundness_countermodel(d, sys, b), Ok(None))
}
