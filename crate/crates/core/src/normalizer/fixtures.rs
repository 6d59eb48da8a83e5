//! Small derivations containing redexes, one or more per contraction figure.
//! Shared by unit tests, the acceptance suite, the CLI tests and benchmarks.

use crate::kernel::{Derivation, Logic, System};
use crate::syntax::{Formula, Position};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    /// The contraction figure the fixture exercises.
    pub figure: &'static str,
    pub system: System,
    pub derivation: Derivation,
}

fn p() -> Formula {
    Formula::atom("p")
}

fn q() -> Formula {
    Formula::atom("q")
}

fn r() -> Formula {
    Formula::atom("r")
}

fn at(ts: &[&str]) -> Position {
    Position::of(ts)
}

fn hyp(l: &str, f: Formula, ts: &[&str]) -> Derivation {
    Derivation::hyp(l, f, at(ts))
}

fn fixture(name: &'static str, figure: &'static str, logic: Logic, derivation: Derivation) -> Fixture {
    Fixture {
        name,
        figure,
        system: System::intuitionistic(logic),
        derivation,
    }
}

fn and_pair() -> Derivation {
    Derivation::and_i(hyp("u", p(), &[]), hyp("v", q(), &[]))
}

/// `(p∨q) → ... ` redex whose branches both conclude `(p∧p)^()`.
fn or_redex(left: bool) -> Derivation {
    let pp = Formula::and(p(), p());
    let major = if left {
        Derivation::or_i1(hyp("u", p(), &[]), q())
    } else {
        Derivation::or_i2(p(), hyp("u", q(), &[]))
    };
    Derivation::or_e(
        major,
        &["a"],
        Derivation::and_i(hyp("a", p(), &[]), hyp("a", p(), &[])),
        &["b"],
        Derivation::imp_e(hyp("w", Formula::imp(q(), pp), &[]), hyp("b", q(), &[])),
    )
}

/// Two nested DiaE whose minor conclusion `(q∧q)^()` comes from an AndI,
/// consumed by AndE1: a cut segment of length 3.
pub fn nested_dia_segment() -> Derivation {
    let dia_p = Formula::dia(p());
    let pair = Derivation::and_i(hyp("w", q(), &[]), hyp("w", q(), &[]));
    let inner = Derivation::dia_e(hyp("u2", dia_p.clone(), &[]), "y", &["b"], &[], pair);
    let outer = Derivation::dia_e(hyp("u1", dia_p, &[]), "x", &["a"], &[], inner);
    Derivation::and_e1(outer)
}

pub fn corpus() -> Vec<Fixture> {
    let bp = Formula::boxed(p());
    vec![
        fixture("and-e1", "proper-and", Logic::S4, Derivation::and_e1(and_pair())),
        fixture("and-e2", "proper-and", Logic::S4, Derivation::and_e2(and_pair())),
        fixture("or-left", "proper-or", Logic::S4, or_redex(true)),
        fixture("or-right", "proper-or", Logic::S4, or_redex(false)),
        fixture(
            "imp",
            "proper-imp",
            Logic::S4,
            Derivation::imp_e(
                Derivation::imp_i(&["u"], p(), Derivation::and_i(hyp("u", p(), &[]), hyp("u", p(), &[]))),
                hyp("v", p(), &[]),
            ),
        ),
        fixture("commute-or", "commutative-or", Logic::S4, {
            let pr = Formula::and(p(), r());
            Derivation::and_e1(Derivation::or_e(
                hyp("d", Formula::or(p(), q()), &[]),
                &["a"],
                Derivation::and_i(hyp("a", p(), &[]), hyp("e", r(), &[])),
                &["b"],
                hyp("w", pr, &[]),
            ))
        }),
        fixture("commute-dia", "commutative-dia", Logic::S4, {
            let pair = Derivation::and_i(hyp("w", q(), &[]), hyp("w", q(), &[]));
            Derivation::and_e1(Derivation::dia_e(hyp("u", Formula::dia(p()), &[]), "x", &["a"], &[], pair))
        }),
        fixture("commute-dia-nested", "commutative-dia", Logic::S4, nested_dia_segment()),
        fixture(
            "box-s4",
            "proper-box-total",
            Logic::S4,
            Derivation::box_e(
                Derivation::box_i("x", &[], Derivation::box_e(hyp("u", bp.clone(), &[]), at(&["x"]), None)),
                at(&["y"]),
                None,
            ),
        ),
        fixture(
            "dia-s4",
            "proper-dia-total",
            Logic::S4,
            Derivation::dia_e(
                Derivation::dia_i(at(&["y"]), hyp("v", p(), &["y"]), None),
                "x",
                &["a"],
                &[],
                Derivation::dia_i(at(&["x"]), hyp("a", p(), &["x"]), None),
            ),
        ),
        fixture(
            "box-k",
            "proper-box-partial",
            Logic::K,
            Derivation::box_e(
                Derivation::box_i(
                    "x",
                    &["e"],
                    Derivation::box_e(hyp("u", bp.clone(), &[]), at(&["x"]), Some(Derivation::ehyp("e", at(&["x"])))),
                ),
                at(&["y"]),
                Some(Derivation::ehyp("f", at(&["y"]))),
            ),
        ),
        fixture(
            "dia-k",
            "proper-dia-partial",
            Logic::K,
            Derivation::dia_e(
                Derivation::dia_i(at(&["y"]), hyp("v", p(), &["y"]), Some(Derivation::ehyp("f", at(&["y"])))),
                "x",
                &["a"],
                &["e"],
                Derivation::dia_i(at(&["x"]), hyp("a", p(), &["x"]), Some(Derivation::ehyp("e", at(&["x"])))),
            ),
        ),
        fixture("stacked", "proper-and+proper-imp", Logic::S4, {
            let id = Derivation::imp_i(&["u"], p(), hyp("u", p(), &[]));
            Derivation::imp_e(
                Derivation::and_e1(Derivation::and_i(id, hyp("w", q(), &[]))),
                hyp("v", p(), &[]),
            )
        }),
        fixture("box-chain-s4", "proper-box-total", Logic::S4, {
            // □□p^() ⊢ p^(y z) by a detour through □p^(y).
            let bbp = Formula::boxed(bp.clone());
            let inner = Derivation::box_e(hyp("u", bbp, &[]), at(&["x"]), None);
            let boxed = Derivation::box_i("x", &[], inner);
            let mid = Derivation::box_e(boxed, at(&["y"]), None);
            Derivation::box_e(mid, at(&["z"]), None)
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check, open_assumptions};
    use crate::normalizer::{is_normal, normalize, rank, reduce_once, Rank};

    #[test]
    fn fixtures_check() {
        for f in corpus() {
            let r = check(&f.derivation, f.system);
            assert!(r.ok, "{}: {:?}", f.name, r.violations);
        }
    }

    #[test]
    fn fixtures_normalize() {
        for f in corpus() {
            let before = rank(&f.derivation);
            let n = normalize(&f.derivation, f.system).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            assert!(n.trace.windows(2).all(|w| w[1] < w[0]), "{}: {:?}", f.name, n.trace);
            assert_eq!(n.trace[0], before);
            assert_eq!(*n.trace.last().unwrap(), Rank::ZERO);
            assert!(is_normal(&n.derivation), "{}", f.name);
            assert_eq!(reduce_once(&n.derivation), Ok(None));
            assert_eq!(n.derivation.conclusion(), f.derivation.conclusion(), "{}", f.name);
            let r = check(&n.derivation, f.system);
            assert!(r.ok, "{}: {:?}", f.name, r.violations);
            let orig = open_assumptions(&f.derivation);
            for a in open_assumptions(&n.derivation) {
                assert!(orig.iter().any(|o| o.content == a.content), "{}: new assumption {:?}", f.name, a);
            }
        }
    }

    #[test]
    fn stacked_trace() {
        let f = corpus().into_iter().find(|f| f.name == "stacked").unwrap();
        let n = normalize(&f.derivation, f.system).unwrap();
        assert_eq!(n.trace, vec![Rank { d: 2, n: 1 }, Rank { d: 1, n: 1 }, Rank::ZERO]);
    }

    #[test]
    fn nested_segment_shrinks_by_one_per_commutation() {
        use crate::normalizer::{contract_commutative, cut_at};
        let d = super::nested_dia_segment();
        let c = cut_at(&d, &[0, 1, 1]).unwrap();
        assert_eq!(c.segment.len(), 3);
        let d1 = contract_commutative(&d, &c.elimination()).unwrap();
        let c1 = cut_at(&d1, &[1, 0, 1]).unwrap();
        assert_eq!(c1.segment.len(), 2);
        let d2 = contract_commutative(&d1, &c1.elimination()).unwrap();
        let c2 = cut_at(&d2, &[1, 1, 0]).unwrap();
        assert_eq!(c2.segment.len(), 1);
    }
}
