use crate::kernel::{Derivation, Fresh, Judgment, Label, Rule, System};
use crate::syntax::{Formula, PFormula};

use super::dne::{bot_at, contra, dne, hyp, imp_i};
use super::g::g_translate;
use super::TranslateError;

struct Ctx {
    fresh: Fresh,
    partial: bool,
}

fn conclusion(d: &Derivation) -> Result<PFormula, TranslateError> {
    d.pformula()
        .cloned()
        .ok_or_else(|| TranslateError::IllFormed(format!("{} node without a p-formula conclusion", d.kind().name())))
}

fn g_at(p: &PFormula) -> PFormula {
    g_translate(&p.formula).at(p.position.clone())
}

/// Concludes `g(C)^β` from a derivation of `⊥^γ` under the hypothesis
/// `h: ¬g(C)^β`, using double-negation elimination on `g(C)`.
fn by_dne(cx: &mut Ctx, target: &PFormula, build: impl FnOnce(&mut Ctx, &Label) -> Result<Derivation, TranslateError>) -> Result<Derivation, TranslateError> {
    let gc = g_translate(&target.formula);
    let h = cx.fresh.label();
    let bot = build(cx, &h)?;
    let nn = imp_i(vec![h], Formula::not(gc.clone()), bot_at(&target.position, bot));
    Ok(Derivation::imp_e(dne(&gc, &target.position, cx.partial, &mut cx.fresh)?, nn))
}

fn go(cx: &mut Ctx, d: &Derivation) -> Result<Derivation, TranslateError> {
    let ps = d.premises();
    let rule = d.rule();
    // E premises and EHyp leaves pass through unchanged.
    if let Some(Judgment::E(_)) = d.conclusion() {
        return Ok(d.clone());
    }
    let concl = conclusion(d)?;
    let keep = |cx: &mut Ctx, i: usize| -> Result<Option<Derivation>, TranslateError> {
        ps.get(i).map(|p| go(cx, p)).transpose()
    };
    let out = match rule {
        Rule::Hyp { label, formula } => Derivation::hyp_p(label.clone(), g_at(formula)),
        Rule::EHyp { .. } => d.clone(),
        Rule::AndI | Rule::AndE1 | Rule::AndE2 | Rule::ImpE => {
            let mapped = ps.iter().map(|p| go(cx, p)).collect::<Result<Vec<_>, _>>()?;
            Derivation::new(rule.clone(), mapped)
        }
        Rule::ImpI { discharge, antecedent } => imp_i(discharge.clone(), g_translate(antecedent), go(cx, &ps[0])?),
        Rule::BoxI { .. } => Derivation::new(rule.clone(), vec![go(cx, &ps[0])?]),
        Rule::BoxE { beta } => {
            let major = go(cx, &ps[0])?;
            Derivation::box_e(major, beta.clone(), keep(cx, 1)?)
        }
        Rule::BotI { conclusion } => {
            let inner = go(cx, &ps[0])?;
            if conclusion.formula.is_bottom() {
                bot_at(&conclusion.position, inner)
            } else {
                imp_i(Vec::new(), Formula::not(conclusion.formula.clone()), bot_at(&conclusion.position, inner))
            }
        }
        Rule::OrI1 { .. } | Rule::OrI2 { .. } => {
            let Formula::Or(a, b) = &concl.formula else {
                return Err(TranslateError::IllFormed("∨I without a disjunction".into()));
            };
            let (ga, gb) = (g_translate(a), g_translate(b));
            let both = Formula::and(Formula::not(ga), Formula::not(gb));
            let h = cx.fresh.label();
            let proj = if matches!(rule, Rule::OrI1 { .. }) {
                Derivation::and_e1
            } else {
                Derivation::and_e2
            };
            let bot = Derivation::imp_e(proj(hyp(&h, both.clone(), &concl.position)), go(cx, &ps[0])?);
            imp_i(vec![h], both, bot)
        }
        Rule::DiaI { beta } => {
            let Formula::Dia(a) = &concl.formula else {
                return Err(TranslateError::IllFormed("◇I without a diamond".into()));
            };
            let box_not = Formula::boxed(Formula::not(g_translate(a)));
            let h = cx.fresh.label();
            let e = keep(cx, 1)?;
            let not_a = Derivation::box_e(hyp(&h, box_not.clone(), &concl.position), beta.clone(), e);
            let bot = Derivation::imp_e(not_a, go(cx, &ps[0])?);
            imp_i(vec![h], box_not, bot_at(&concl.position, bot))
        }
        Rule::OrE { left, right } => {
            let major_pf = conclusion(&ps[0])?;
            let Formula::Or(a, b) = &major_pf.formula else {
                return Err(TranslateError::IllFormed("∨E major is not a disjunction".into()));
            };
            let alpha = major_pf.position.clone();
            let ga = g_translate(a).at(alpha.clone());
            let gb = g_translate(b).at(alpha);
            by_dne(cx, &concl, |cx, h| {
                let major = go(cx, &ps[0])?;
                let l = contra(go(cx, &ps[1])?, left.clone(), &ga, h)?;
                let r = contra(go(cx, &ps[2])?, right.clone(), &gb, h)?;
                Ok(Derivation::imp_e(major, Derivation::and_i(l, r)))
            })?
        }
        Rule::DiaE { token, discharge, e_discharge } => {
            let major_pf = conclusion(&ps[0])?;
            let Formula::Dia(a) = &major_pf.formula else {
                return Err(TranslateError::IllFormed("◇E major is not a diamond".into()));
            };
            let ga = g_translate(a).at(major_pf.position.child(token));
            by_dne(cx, &concl, |cx, h| {
                let major = go(cx, &ps[0])?;
                let not_a = contra(go(cx, &ps[1])?, discharge.clone(), &ga, h)?;
                let boxed = Derivation::new(
                    Rule::BoxI {
                        token: token.clone(),
                        e_discharge: e_discharge.clone(),
                    },
                    vec![not_a],
                );
                Ok(Derivation::imp_e(major, boxed))
            })?
        }
        Rule::BotC { discharge, conclusion } => {
            let gc = g_translate(&conclusion.formula);
            let inner = go(cx, &ps[0])?;
            let nn = imp_i(discharge.clone(), Formula::not(gc.clone()), bot_at(&conclusion.position, inner));
            Derivation::imp_e(dne(&gc, &conclusion.position, cx.partial, &mut cx.fresh)?, nn)
        }
    };
    Ok(out)
}

/// Maps a classical derivation of `A^α` to an intuitionistic one of
/// `g(A)^α` whose open assumptions are the images of the original ones.
pub fn classical_to_intuitionistic(d: &Derivation, sys: System) -> Result<Derivation, TranslateError> {
    let mut cx = Ctx {
        fresh: Fresh::avoiding(d),
        partial: sys.logic.is_partial(),
    };
    go(&mut cx, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{builtin, check, open_assumptions, Axiom, Logic, RuleKind};
    use crate::syntax::Position;

    #[test]
    fn builtin_corpus_translates() {
        for (ax, logic) in Axiom::corpus() {
            let d = builtin(ax, logic).unwrap();
            let t = classical_to_intuitionistic(&d, System::classical(logic)).unwrap();
            let r = check(&t, System::intuitionistic(logic));
            assert!(r.ok, "{ax} in {logic}: {:?}", r.violations);
            assert_eq!(t.pformula(), Some(&g_at(d.pformula().unwrap())));
            assert!(open_assumptions(&t).is_empty());
        }
    }

    #[test]
    fn t_axiom_image() {
        let d = builtin(Axiom::T, Logic::T).unwrap();
        let t = classical_to_intuitionistic(&d, System::classical(Logic::T)).unwrap();
        let nnp = Formula::not(Formula::not(Formula::atom("p")));
        assert_eq!(
            t.pformula(),
            Some(&Formula::imp(Formula::boxed(nnp.clone()), nnp).at(Position::empty()))
        );
    }

    #[test]
    fn hypothesis_maps_to_its_image() {
        let p = Formula::atom("p");
        let d = Derivation::hyp("u", p.clone(), Position::empty());
        let t = classical_to_intuitionistic(&d, System::classical(Logic::K)).unwrap();
        assert_eq!(t, Derivation::hyp("u", g_translate(&p), Position::empty()));
    }

    #[test]
    fn open_assumptions_map_to_images() {
        let pq = Formula::or(Formula::atom("p"), Formula::atom("q"));
        let x = Position::of(&["x"]);
        let d = Derivation::or_e(
            Derivation::hyp("u", pq.clone(), x.clone()),
            &["a"],
            Derivation::or_i2(Formula::atom("q"), Derivation::hyp("a", Formula::atom("p"), x.clone())),
            &["b"],
            Derivation::or_i1(Derivation::hyp("b", Formula::atom("q"), x.clone()), Formula::atom("p")),
        );
        let sys = System::classical(Logic::K);
        assert!(check(&d, sys).ok);
        let t = classical_to_intuitionistic(&d, sys).unwrap();
        assert!(check(&t, System::intuitionistic(Logic::K)).ok);
        let open: Vec<Judgment> = open_assumptions(&t).into_iter().map(|a| a.content).collect();
        assert_eq!(open, vec![Judgment::P(g_translate(&pq).at(x))]);
    }

    #[test]
    fn dia_iff_uses_reductio_and_dia_elimination() {
        let d = builtin(Axiom::DiaIffNegBoxNeg, Logic::S4).unwrap();
        let kinds: Vec<RuleKind> = d.nodes().iter().map(|(_, n)| n.kind()).collect();
        assert!(kinds.contains(&RuleKind::BotC) && kinds.contains(&RuleKind::DiaE));
        let t = classical_to_intuitionistic(&d, System::classical(Logic::S4)).unwrap();
        assert!(t.nodes().iter().all(|(_, n)| n.kind() != RuleKind::BotC));
    }
}
