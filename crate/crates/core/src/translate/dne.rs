//! Double-negation elimination for negative formulas and contraposition of
//! derivations, both as intuitionistic derivation builders.

use crate::kernel::{open_assumptions, Derivation, Fresh, Judgment, Label, Rule, System};
use crate::syntax::{Formula, PFormula, Position};

use super::g::is_negative_over_dna;
use super::TranslateError;

pub(crate) fn hyp(label: &Label, f: Formula, pos: &Position) -> Derivation {
    Derivation::hyp_p(label.clone(), f.at(pos.clone()))
}

pub(crate) fn imp_i(discharge: Vec<Label>, antecedent: Formula, d: Derivation) -> Derivation {
    Derivation::new(Rule::ImpI { discharge, antecedent }, vec![d])
}

/// Moves a derivation of `⊥^β` to `⊥^α`, adding a BotI step when `α ≠ β`.
pub(crate) fn bot_at(alpha: &Position, d: Derivation) -> Derivation {
    match d.pformula() {
        Some(p) if &p.position == alpha => d,
        _ => Derivation::new(
            Rule::BotI {
                conclusion: Formula::Bottom.at(alpha.clone()),
            },
            vec![d],
        ),
    }
}

/// `(¬¬f → f)^α` by induction on the negative formula `f`.
pub(crate) fn dne(f: &Formula, alpha: &Position, partial: bool, fresh: &mut Fresh) -> Result<Derivation, TranslateError> {
    if !is_negative_over_dna(f) {
        return Err(TranslateError::NotEligible(f.clone()));
    }
    let nn = Formula::not(Formula::not(f.clone()));
    let h = fresh.label();
    let body = match f {
        Formula::Bottom => {
            let v = fresh.label();
            let not_bot = imp_i(vec![v.clone()], Formula::Bottom, hyp(&v, Formula::Bottom, alpha));
            Derivation::imp_e(hyp(&h, nn.clone(), alpha), not_bot)
        }
        // ¬¬¬g → ¬g, covering ¬¬p.
        Formula::Imp(g, b) if b.is_bottom() => {
            let g = (**g).clone();
            let (v, w) = (fresh.label(), fresh.label());
            let not_g = Formula::not(g.clone());
            let bot = Derivation::imp_e(hyp(&w, not_g.clone(), alpha), hyp(&v, g.clone(), alpha));
            let nn_g = imp_i(vec![w], not_g, bot);
            imp_i(vec![v], g, Derivation::imp_e(hyp(&h, nn.clone(), alpha), nn_g))
        }
        Formula::Imp(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            let (va, k, m) = (fresh.label(), fresh.label(), fresh.label());
            let b_at = Derivation::imp_e(hyp(&m, f.clone(), alpha), hyp(&va, a.clone(), alpha));
            let bot = Derivation::imp_e(hyp(&k, Formula::not(b.clone()), alpha), b_at);
            let not_f = imp_i(vec![m], f.clone(), bot);
            let bot = Derivation::imp_e(hyp(&h, nn.clone(), alpha), not_f);
            let nn_b = imp_i(vec![k], Formula::not(b.clone()), bot);
            let b_at = Derivation::imp_e(dne(&b, alpha, partial, fresh)?, nn_b);
            imp_i(vec![va], a, b_at)
        }
        Formula::And(a, b) => {
            let mut side = |part: &Formula, first: bool| -> Result<Derivation, TranslateError> {
                let (k, m) = (fresh.label(), fresh.label());
                let proj = if first { Derivation::and_e1 } else { Derivation::and_e2 };
                let bot = Derivation::imp_e(hyp(&k, Formula::not(part.clone()), alpha), proj(hyp(&m, f.clone(), alpha)));
                let not_f = imp_i(vec![m], f.clone(), bot);
                let bot = Derivation::imp_e(hyp(&h, nn.clone(), alpha), not_f);
                let nn_part = imp_i(vec![k], Formula::not(part.clone()), bot);
                Ok(Derivation::imp_e(dne(part, alpha, partial, fresh)?, nn_part))
            };
            let left = side(a, true)?;
            let right = side(b, false)?;
            Derivation::and_i(left, right)
        }
        Formula::Box(a) => {
            let a = (**a).clone();
            let x = fresh.token();
            let ax = alpha.child(&x);
            let (k, m, e) = (fresh.label(), fresh.label(), fresh.label());
            let e_prem = partial.then(|| Derivation::ehyp(e.name(), ax.clone()));
            let a_x = Derivation::box_e(hyp(&m, f.clone(), alpha), Position::from_tokens(vec![x.clone()]), e_prem);
            let bot = bot_at(alpha, Derivation::imp_e(hyp(&k, Formula::not(a.clone()), &ax), a_x));
            let not_f = imp_i(vec![m], f.clone(), bot);
            let bot = bot_at(&ax, Derivation::imp_e(hyp(&h, nn.clone(), alpha), not_f));
            let nn_a = imp_i(vec![k], Formula::not(a.clone()), bot);
            let a_x = Derivation::imp_e(dne(&a, &ax, partial, fresh)?, nn_a);
            let e_discharge = if partial { vec![e] } else { Vec::new() };
            Derivation::new(Rule::BoxI { token: x, e_discharge }, vec![a_x])
        }
        _ => unreachable!("eligibility admits only ⊥, →, ∧ and □"),
    };
    Ok(imp_i(vec![h], nn, body))
}

/// A checking intuitionistic derivation of `(¬¬f → f)^α` without open
/// assumptions.
pub fn build_dne(f: &Formula, alpha: &Position, sys: System) -> Result<Derivation, TranslateError> {
    let mut fresh = Fresh::new();
    fresh.avoid_position(alpha);
    dne(f, alpha, sys.logic.is_partial(), &mut fresh)
}

/// From `d` deriving `B^β` with the assumptions labelled `labels` (all
/// `A^α`), derives `¬A^α` from the hypothesis `h: ¬B^β`.
pub(crate) fn contra(d: Derivation, labels: Vec<Label>, a: &PFormula, h: &Label) -> Result<Derivation, TranslateError> {
    let b = d
        .pformula()
        .cloned()
        .ok_or_else(|| TranslateError::IllFormed("contraposed derivation has no p-formula conclusion".into()))?;
    let bot = Derivation::imp_e(hyp(h, Formula::not(b.formula), &b.position), d);
    Ok(imp_i(labels, a.formula.clone(), bot_at(&a.position, bot)))
}

/// Turns `d: Γ, A^α ⊢ B^β`, where `label` marks `A^α`, into a derivation of
/// `¬A^α` from `Γ` and a fresh hypothesis `¬B^β`.
pub fn contrapose(d: &Derivation, label: &Label) -> Result<Derivation, TranslateError> {
    let a = open_assumptions(d)
        .into_iter()
        .find_map(|x| match x.content {
            Judgment::P(p) if &x.label == label => Some(p),
            _ => None,
        })
        .ok_or_else(|| TranslateError::LabelNotOpen(label.clone()))?;
    let h = Fresh::avoiding(d).label();
    contra(d.clone(), vec![label.clone()], &a, &h)
}
