//! Property tests for the invariants of every module.

mod common;

use std::collections::{BTreeSet, HashMap};

use posnd::kernel::{
    builtin, check, freshen, lift, open_assumptions, substitute, Axiom, Clause, Derivation, Judgment, Label, Rule,
    RuleKind,
};
use posnd::normalizer::{is_normal, normalize, reduce_once, segments};
use posnd::semantics::{enumerate_models_over, holds, node_subtract};
use posnd::syntax::{
    concat, degree, init_set, parse_formula, prefix_replace, step_holds, Formula, PFormula, Position, StepKind,
};
use posnd::translate::{
    classical_to_intuitionistic, contrapose, g_translate, is_negative_over_dna, pos_to_relational,
};
use posnd::{Flavor, Logic, System};
use proptest::prelude::*;
use std::sync::Arc;

// ---------- strategies ----------

fn formula(depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bottom),
        "[pqr]".prop_map(|s| Formula::atom(&s)),
        "[a-z][a-z0-9_]{0,3}".prop_filter("connective names are reserved", |s| {
            !["and", "or", "imp", "not", "box", "dia", "bot"].contains(&s.as_str())
        })
        .prop_map(|s| Formula::atom(&s)),
    ];
    leaf.prop_recursive(depth, 96, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            inner.clone().prop_map(Formula::boxed),
            inner.prop_map(Formula::dia),
        ]
    })
    .boxed()
}

fn modal_free(depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![Just(Formula::Bottom), Just(Formula::atom("p")), Just(Formula::atom("q"))];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
    .boxed()
}

fn position(max_len: usize) -> impl Strategy<Value = Position> {
    prop::collection::vec(prop::sample::select(vec!["x", "y", "z"]), 0..=max_len).prop_map(|v| Position::of(&v))
}

fn modal_depth(f: &Formula) -> usize {
    match f {
        Formula::Atom(_) | Formula::Bottom => 0,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => modal_depth(a).max(modal_depth(b)),
        Formula::Box(a) | Formula::Dia(a) => 1 + modal_depth(a),
    }
}

fn contents(d: &Derivation) -> Vec<Judgment> {
    let mut v: Vec<Judgment> = open_assumptions(d).into_iter().map(|a| a.content).collect();
    v.sort();
    v
}

// ---------- syntax ----------

fn all_positions(max_len: usize) -> Vec<Position> {
    let mut out = vec![Position::empty()];
    let mut layer = vec![Position::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p| ["x", "y", "z"].map(|t| p.child(&posnd::Token::new(t))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn concat_is_associative_with_empty_identity() {
    let all = all_positions(6);
    let e = Position::empty();
    for p in &all {
        assert_eq!(&concat(&e, p), p);
        assert_eq!(&concat(p, &e), p);
    }
    let mut triples = 0usize;
    for p in &all {
        for q in all.iter().filter(|q| p.len() + q.len() <= 6) {
            for r in all.iter().filter(|r| p.len() + q.len() + r.len() <= 6) {
                assert_eq!(concat(&concat(p, q), r), concat(p, &concat(q, r)));
                triples += 1;
            }
        }
    }
    // Σ_{n ≤ 6} C(n+2, 2)·3^n ordered splits of words of length n.
    assert_eq!(triples, 27_064);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn formula_round_trip(f in formula(7)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn g_image_is_negative(f in formula(7)) {
        prop_assert!(is_negative_over_dna(&g_translate(&f)));
    }
}

proptest! {
    #[test]
    fn prefix_replace_shape(s in position(5), u in position(3), v in position(3)) {
        let r = prefix_replace(&s, &u, &v);
        if u.is_prefix_of(&s) {
            prop_assert_eq!(r.len(), s.len() - u.len() + v.len());
            prop_assert!(v.is_prefix_of(&r));
        } else {
            prop_assert_eq!(r, s);
        }
    }

    #[test]
    fn init_set_is_prefix_closed_and_minimal(ps in prop::collection::vec(position(4), 0..5)) {
        let init = init_set(ps.iter());
        for m in &init {
            prop_assert!(ps.iter().any(|p| m.is_prefix_of(p)));
            for q in m.prefixes() {
                prop_assert!(init.contains(&q));
            }
        }
        for p in &ps {
            prop_assert!(init.contains(p));
        }
    }

    #[test]
    fn step_relations(s in prop::collection::vec(0u8..3, 0..4), t in prop::collection::vec(0u8..3, 0..5)) {
        let trans = step_holds(StepKind::Trans, &s, &t);
        prop_assert_eq!(trans, step_holds(StepKind::ReflTrans, &s, &t) && s != t);
        if step_holds(StepKind::Succ, &s, &t) {
            prop_assert!(trans);
            prop_assert!(step_holds(StepKind::SuccRefl, &s, &t));
        }
        prop_assert!(step_holds(StepKind::ReflTrans, &s, &s));
    }

    #[test]
    fn degree_laws(f in formula(6)) {
        if !f.is_atomic() {
            prop_assert!(degree(&f) >= 1);
        }
        match &f {
            Formula::Box(a) | Formula::Dia(a) => prop_assert!(degree(a) < degree(&f)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                prop_assert!(degree(a) < degree(&f) && degree(b) < degree(&f));
            }
            _ => {}
        }
    }
}

// ---------- kernel ----------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weakening_keeps_checks(seed in any::<u64>(), classical in any::<bool>()) {
        let flavor = if classical { Flavor::Classical } else { Flavor::Intuitionistic };
        let sys = common::system(seed, flavor);
        let d = common::derivation(seed, sys, 5);
        prop_assert!(check(&d, sys).ok);
        let pf = d.pformula().unwrap().clone();
        let extra = Derivation::hyp("w_unused", Formula::atom("r"), pf.position.clone());
        let weak = Derivation::and_e1(Derivation::and_i(d, extra));
        prop_assert!(check(&weak, sys).ok);
        prop_assert_eq!(weak.pformula(), Some(&pf));
    }

    #[test]
    fn freshen_preserves_checks_and_assumptions(seed in any::<u64>(), classical in any::<bool>()) {
        let flavor = if classical { Flavor::Classical } else { Flavor::Intuitionistic };
        let sys = common::system(seed, flavor);
        let d = common::derivation(seed, sys, 6);
        let f = freshen(&d);
        prop_assert!(check(&f, sys).ok);
        prop_assert_eq!(f.conclusion(), d.conclusion());
        prop_assert_eq!(contents(&f), contents(&d));
    }

    #[test]
    fn botc_is_rejected_intuitionistically(seed in any::<u64>()) {
        let sys = common::system(seed, Flavor::Classical);
        let d = common::derivation(seed, sys, 6);
        let has_botc = d.nodes().iter().any(|(_, n)| n.kind() == RuleKind::BotC);
        let r = check(&d, sys.with_flavor(Flavor::Intuitionistic));
        prop_assert_eq!(r.violations.iter().any(|v| v.clause == Clause::Flavor), has_botc);
        if has_botc {
            prop_assert!(!r.ok);
        }
    }
}

/// True unless β lies strictly inside the offset of some BoxE or DiaI, that
/// is, β is a prefix of the far end of the step but not of its near end.
fn respects_offsets(d: &Derivation, beta: &Position) -> bool {
    d.nodes().iter().all(|(_, n)| {
        let (far, offset) = match n.rule() {
            Rule::BoxE { beta: off } => (n.pformula().map(|p| p.position.clone()), off),
            Rule::DiaI { beta: off } => (n.premises()[0].pformula().map(|p| p.position.clone()), off),
            _ => return true,
        };
        let Some(far) = far else { return true };
        let near = far.strip_suffix(offset).expect("offset is a suffix");
        !(beta.is_prefix_of(&far) && !beta.is_prefix_of(&near))
    })
}

fn positions_in(d: &Derivation) -> Vec<Position> {
    let all: BTreeSet<Position> = d
        .nodes()
        .iter()
        .filter_map(|(_, n)| n.conclusion().map(|j| j.position().clone()))
        .collect();
    init_set(all.iter()).into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn substitute_soundness(seed in any::<u64>(), classical in any::<bool>(), pick in any::<usize>(), gamma in position(2)) {
        let flavor = if classical { Flavor::Classical } else { Flavor::Intuitionistic };
        let sys = common::system(seed, flavor);
        let d = common::derivation(seed, sys, 6);
        let candidates: Vec<Position> = positions_in(&d)
            .into_iter()
            .filter(|b| respects_offsets(&d, b))
            .collect();
        let beta = &candidates[pick % candidates.len()];
        let out = substitute(&d, beta, &gamma, sys);
        prop_assert!(out.is_ok(), "{:?}", out);
        let out = out.unwrap();
        let pf = d.pformula().unwrap();
        let expected = pf.formula.clone().at(prefix_replace(&pf.position, beta, &gamma));
        prop_assert_eq!(out.pformula(), Some(&expected));
    }
}

#[test]
fn substitution_cutting_an_offset_keeps_the_old_conclusion() {
    let d = Derivation::box_e(
        Derivation::hyp("u", Formula::boxed(Formula::atom("p")), Position::of(&["a"])),
        Position::of(&["b"]),
        None,
    );
    let sys = System::classical(Logic::S4);
    assert!(check(&d, sys).ok);
    let beta = Position::of(&["a", "b"]);
    assert!(!respects_offsets(&d, &beta));
    // The major premise is untouched, so the offset re-derives the old
    // conclusion instead of p^(c).
    let out = substitute(&d, &beta, &Position::of(&["c"]), sys).unwrap();
    assert_eq!(out.pformula(), Some(&Formula::atom("p").at(Position::of(&["a", "b"]))));
}

#[test]
fn lift_soundness_over_builtins() {
    let betas = all_positions(2)
        .into_iter()
        .filter(|p| p.tokens().iter().all(|t| t.name() != "z"))
        .collect::<Vec<_>>();
    assert_eq!(betas.len(), 7);
    for (ax, logic) in Axiom::corpus() {
        let d = builtin(ax, logic).unwrap();
        for flavor in [Flavor::Classical, Flavor::Intuitionistic] {
            let sys = System::new(logic, flavor);
            if !check(&d, sys).ok {
                continue;
            }
            for beta in &betas {
                let l = lift(&d, beta);
                assert!(check(&l, sys).ok, "{ax} in {logic} lifted by {beta}");
                let pf = d.pformula().unwrap();
                assert_eq!(l.pformula(), Some(&pf.formula.clone().at(concat(beta, &pf.position))));
            }
        }
    }
}

// ---------- normalizer ----------

/// Number of maximal segments through each occurrence: one, plus one per
/// extra minor branch of an ∨E above it.
fn multiplicity(d: &Derivation, path: &[usize], memo: &mut HashMap<Vec<usize>, usize>) -> usize {
    if let Some(m) = memo.get(path) {
        return *m;
    }
    let n = d.get(path).unwrap();
    let kind = n.kind();
    let m = if kind.has_minor_segments() {
        (0..n.premises().len())
            .filter(|i| kind.is_segment_minor(*i))
            .map(|i| {
                let mut p = path.to_vec();
                p.push(i);
                multiplicity(d, &p, memo)
            })
            .sum()
    } else {
        1
    };
    memo.insert(path.to_vec(), m);
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn is_normal_iff_no_reduction(seed in any::<u64>()) {
        let sys = common::system(seed, Flavor::Intuitionistic);
        let d = common::derivation(seed, sys, 6);
        let step = reduce_once(&d).unwrap();
        prop_assert_eq!(is_normal(&d), step.is_none());
    }

    #[test]
    fn segments_cover_occurrences(seed in any::<u64>(), classical in any::<bool>()) {
        let flavor = if classical { Flavor::Classical } else { Flavor::Intuitionistic };
        let sys = common::system(seed, flavor);
        let d = common::derivation(seed, sys, 6);
        let occurrences: Vec<Vec<usize>> = d
            .nodes()
            .into_iter()
            .filter(|(_, n)| n.pformula().is_some())
            .map(|(p, _)| p)
            .collect();
        let segs = segments(&d);
        let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &segs {
            for o in &s.occurrences {
                *count.entry(o.path.clone()).or_default() += 1;
            }
        }
        let mut memo = HashMap::new();
        for o in &occurrences {
            prop_assert_eq!(count.get(o).copied().unwrap_or(0), multiplicity(&d, o, &mut memo));
        }
        prop_assert_eq!(count.len(), occurrences.len());
        let has_or_e = d.nodes().iter().any(|(_, n)| n.kind() == RuleKind::OrE);
        let total: usize = segs.iter().map(|s| s.len()).sum();
        if !has_or_e {
            prop_assert!(count.values().all(|c| *c == 1));
            prop_assert_eq!(total, occurrences.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn normalize_random_derivations(seed in any::<u64>()) {
        let sys = common::system(seed, Flavor::Intuitionistic);
        let d = common::derivation(seed, sys, 4);
        let n = normalize(&d, sys);
        prop_assert!(n.is_ok(), "{:?}", n.err());
        let n = n.unwrap();
        prop_assert!(n.trace.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(n.trace.last().map(|r| (r.d, r.n)), Some((0, 0)));
        prop_assert!(is_normal(&n.derivation));
        prop_assert!(check(&n.derivation, sys).ok);
        prop_assert_eq!(n.derivation.conclusion(), d.conclusion());
        let before: BTreeSet<Judgment> = contents(&d).into_iter().collect();
        let after: BTreeSet<Judgment> = contents(&n.derivation).into_iter().collect();
        prop_assert!(after.is_subset(&before));
    }
}

// ---------- semantics ----------

fn truth_table(f: &Formula, atoms: &BTreeSet<&str>) -> bool {
    match f {
        Formula::Atom(a) => atoms.contains(&**a),
        Formula::Bottom => false,
        Formula::And(a, b) => truth_table(a, atoms) && truth_table(b, atoms),
        Formula::Or(a, b) => truth_table(a, atoms) || truth_table(b, atoms),
        Formula::Imp(a, b) => !truth_table(a, atoms) || truth_table(b, atoms),
        Formula::Box(_) | Formula::Dia(_) => unreachable!("modal-free input"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn holds_matches_truth_table(f in modal_free(4)) {
        let atoms: Vec<Arc<str>> = vec![Arc::from("p"), Arc::from("q")];
        let b = posnd::semantics::Bounds::new(2, 2, 2);
        for logic in Logic::ALL {
            for m in enumerate_models_over(b, logic, atoms.clone()) {
                for node in m.nodes() {
                    let here = m.atoms_at(node).unwrap();
                    prop_assert_eq!(holds(&m, logic, node, &f), truth_table(&f, &here));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn node_subtract_inverts_concat(u in prop::collection::vec(0u32..3, 0..4), t in prop::collection::vec(0u32..3, 0..4)) {
        let v: Vec<u32> = u.iter().chain(&t).copied().collect();
        prop_assert_eq!(node_subtract(&v, &u).unwrap(), t);
        let back: Vec<u32> = u.iter().chain(&node_subtract(&v, &u).unwrap()).copied().collect();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn node_subtract_needs_prefix(v in prop::collection::vec(0u32..3, 0..4), u in prop::collection::vec(0u32..3, 0..4)) {
        prop_assert_eq!(node_subtract(&v, &u).is_ok(), v.starts_with(&u));
    }
}

// ---------- translate ----------

fn g_shape_ok(f: &Formula) -> bool {
    let g = g_translate(f);
    let nn = |x: Formula| Formula::not(Formula::not(x));
    let shape = match f {
        Formula::Atom(_) => g == nn(f.clone()),
        Formula::Bottom => g == Formula::Bottom,
        Formula::And(a, b) => g == Formula::and(g_translate(a), g_translate(b)),
        Formula::Imp(a, b) => g == Formula::imp(g_translate(a), g_translate(b)),
        Formula::Box(a) => g == Formula::boxed(g_translate(a)),
        Formula::Or(a, b) => {
            g == Formula::not(Formula::and(Formula::not(g_translate(a)), Formula::not(g_translate(b))))
        }
        Formula::Dia(a) => g == Formula::not(Formula::boxed(Formula::not(g_translate(a)))),
    };
    let children = match f {
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => g_shape_ok(a) && g_shape_ok(b),
        Formula::Box(a) | Formula::Dia(a) => g_shape_ok(a),
        _ => true,
    };
    shape && children && modal_depth(&g) == modal_depth(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn g_structure(f in formula(6)) {
        prop_assert!(g_shape_ok(&f));
    }

    #[test]
    fn relational_chain(alpha in position(6)) {
        let rel = pos_to_relational(&alpha);
        prop_assert_eq!(rel.len(), alpha.len());
        for w in rel.windows(2) {
            prop_assert_eq!(&w[0].1, &w[1].0);
        }
        if let (Some(first), Some(last)) = (rel.first(), rel.last()) {
            prop_assert_eq!(&first.0, &Position::empty());
            prop_assert_eq!(&last.1, &alpha);
        }
        for (s, t) in &rel {
            prop_assert!(step_holds(StepKind::Succ, s.tokens(), t.tokens()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn contrapose_assumptions(seed in any::<u64>(), pick in any::<usize>()) {
        let sys = common::system(seed, Flavor::Intuitionistic);
        let d = common::derivation(seed, sys, 5);
        let open: Vec<(Label, PFormula)> = open_assumptions(&d)
            .into_iter()
            .filter_map(|a| a.content.as_p().cloned().map(|p| (a.label, p)))
            .collect();
        prop_assume!(!open.is_empty());
        let (label, a) = open[pick % open.len()].clone();
        let c = contrapose(&d, &label).unwrap();
        prop_assert!(check(&c, sys).ok);
        prop_assert_eq!(c.pformula(), Some(&Formula::not(a.formula.clone()).at(a.position.clone())));
        let b = d.pformula().unwrap();
        let mut expected: Vec<Judgment> = open_assumptions(&d)
            .into_iter()
            .filter(|x| x.label != label)
            .map(|x| x.content)
            .collect();
        expected.push(Judgment::P(Formula::not(b.formula.clone()).at(b.position.clone())));
        expected.sort();
        prop_assert_eq!(contents(&c), expected);
    }

    #[test]
    fn classical_translation_of_random_derivations(seed in any::<u64>()) {
        let sys = common::system(seed, Flavor::Classical);
        let d = common::derivation(seed, sys, 5);
        let t = classical_to_intuitionistic(&d, sys).unwrap();
        let target = sys.with_flavor(Flavor::Intuitionistic);
        let r = check(&t, target);
        prop_assert!(r.ok, "{:?}", r.violations);
        let pf = d.pformula().unwrap();
        prop_assert_eq!(t.pformula(), Some(&g_translate(&pf.formula).at(pf.position.clone())));
        let image: BTreeSet<Judgment> = contents(&d)
            .into_iter()
            .map(|j| match j {
                Judgment::P(p) => Judgment::P(g_translate(&p.formula).at(p.position)),
                e => e,
            })
            .collect();
        let got: BTreeSet<Judgment> = contents(&t).into_iter().collect();
        prop_assert_eq!(got, image);
    }
}

#[test]
fn generator_reaches_every_rule() {
    let mut seen: BTreeSet<&'static str> = BTreeSet::new();
    for seed in 0..300u64 {
        let sys = common::system(seed, Flavor::Classical);
        let d = common::derivation(seed, sys, 6);
        for (_, n) in d.nodes() {
            seen.insert(n.kind().name());
        }
    }
    for k in [
        RuleKind::AndI,
        RuleKind::AndE1,
        RuleKind::OrI1,
        RuleKind::OrE,
        RuleKind::ImpI,
        RuleKind::ImpE,
        RuleKind::BotI,
        RuleKind::BotC,
        RuleKind::BoxI,
        RuleKind::BoxE,
        RuleKind::DiaI,
        RuleKind::DiaE,
        RuleKind::EHyp,
    ] {
        assert!(seen.contains(k.name()), "{} never generated", k.name());
    }
}
