use super::derivation::{Derivation, Fresh};
use super::{KernelError, Logic};
use crate::syntax::{Formula, PFormula, Position};

/// Derives `target` from a derivation of `⊥^β` by induction on the target formula.
pub fn expand_efq(target: &PFormula, premise: Derivation, logic: Logic) -> Result<Derivation, KernelError> {
    if premise.pformula() == Some(target) {
        return Err(KernelError::TrivialTarget(target.to_string()));
    }
    let mut fresh = Fresh::avoiding(&premise);
    fresh.avoid_position(&target.position);
    build(target, &premise, logic, &mut fresh, target)
}

fn build(
    target: &PFormula,
    premise: &Derivation,
    logic: Logic,
    fresh: &mut Fresh,
    top: &PFormula,
) -> Result<Derivation, KernelError> {
    if premise.pformula() == Some(target) {
        return Ok(premise.clone());
    }
    let at = |f: &Formula, p: &Position| f.clone().at(p.clone());
    let alpha = &target.position;
    Ok(match &target.formula {
        Formula::Atom(_) | Formula::Bottom => Derivation::bot_i(premise.clone(), target.clone()),
        Formula::And(a, b) => Derivation::and_i(
            build(&at(a, alpha), premise, logic, fresh, top)?,
            build(&at(b, alpha), premise, logic, fresh, top)?,
        ),
        Formula::Imp(a, b) => Derivation::imp_i(&[], (**a).clone(), build(&at(b, alpha), premise, logic, fresh, top)?),
        Formula::Or(a, b) => Derivation::or_i1(build(&at(a, alpha), premise, logic, fresh, top)?, (**b).clone()),
        Formula::Box(a) => {
            let x = fresh.token();
            let inner = build(&at(a, &alpha.child(&x)), premise, logic, fresh, top)?;
            Derivation::box_i(x.name(), &[], inner)
        }
        Formula::Dia(a) => {
            if logic.is_partial() {
                return Err(KernelError::NotExpandable {
                    target: top.to_string(),
                    subformula: target.to_string(),
                });
            }
            let x = fresh.token();
            let inner = build(&at(a, &alpha.child(&x)), premise, logic, fresh, top)?;
            Derivation::dia_i(Position::from_tokens(vec![x]), inner, None)
        }
    })
}
