use crate::syntax::Formula;

/// `g(⊥) = ⊥`, `g(p) = ¬¬p`, `g(A∨B) = ¬(¬gA ∧ ¬gB)`, `g(◇A) = ¬□¬gA`, and
/// homomorphic on ∧, → and □.
pub fn g_translate(f: &Formula) -> Formula {
    match f {
        Formula::Bottom => Formula::Bottom,
        Formula::Atom(_) => Formula::not(Formula::not(f.clone())),
        Formula::And(a, b) => Formula::and(g_translate(a), g_translate(b)),
        Formula::Imp(a, b) => Formula::imp(g_translate(a), g_translate(b)),
        Formula::Or(a, b) => Formula::not(Formula::and(
            Formula::not(g_translate(a)),
            Formula::not(g_translate(b)),
        )),
        Formula::Box(a) => Formula::boxed(g_translate(a)),
        Formula::Dia(a) => Formula::not(Formula::boxed(Formula::not(g_translate(a)))),
    }
}

fn is_double_negated_atom(f: &Formula) -> bool {
    matches!(
        f.negated().and_then(Formula::negated),
        Some(Formula::Atom(_))
    )
}

pub fn is_negative_over_dna(f: &Formula) -> bool {
    if is_double_negated_atom(f) {
        return true;
    }
    match f {
        Formula::Bottom => true,
        Formula::Box(a) => is_negative_over_dna(a),
        Formula::And(a, b) | Formula::Imp(a, b) => is_negative_over_dna(a) && is_negative_over_dna(b),
        Formula::Atom(_) | Formula::Or(..) | Formula::Dia(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(g_translate(&f("p")), f("(imp (imp p bot) bot)"));
        assert_eq!(g_translate(&Formula::Bottom), Formula::Bottom);
        let nnn = |a: &str| format!("(imp (imp (imp {a} bot) bot) bot)");
        assert_eq!(
            g_translate(&f("(or p q)")),
            f(&format!("(imp (and {} {}) bot)", nnn("p"), nnn("q")))
        );
        assert_eq!(
            g_translate(&f("(dia bot)")),
            f("(imp (box (imp bot bot)) bot)")
        );
    }

    #[test]
    fn negativity() {
        assert!(is_negative_over_dna(&f("(imp (imp p bot) bot)")));
        assert!(!is_negative_over_dna(&f("p")));
        assert!(is_negative_over_dna(&f("(box (imp (imp (imp p bot) bot) bot))")));
        assert!(!is_negative_over_dna(&f("(imp p bot)")));
        assert!(!is_negative_over_dna(&f("(dia bot)")));
        assert!(is_negative_over_dna(&f("(and bot (imp bot bot))")));
    }
}
