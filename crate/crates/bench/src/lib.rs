//! Scalable inputs for the benchmarks in `benches/`.

use posnd::kernel::Derivation;
use posnd::syntax::{Formula, Position};

/// `n` stacked implication redexes `(λu. u) ((λu. u) … p)` in S4, each a cut
/// of degree 1, over the open assumption `p^()`.
pub fn imp_redex_chain(n: usize) -> Derivation {
    let p = Formula::atom("p");
    let mut d = Derivation::hyp("h", p.clone(), Position::empty());
    for i in 0..n {
        let u = format!("u{i}");
        let id = Derivation::imp_i(&[&u], p.clone(), Derivation::hyp(&u, p.clone(), Position::empty()));
        d = Derivation::imp_e(id, d);
    }
    d
}

/// `□…□p → □…□p` (`n` boxes) in S4, proved by `n` BoxE/BoxI pairs.
pub fn box_tower(n: usize) -> Derivation {
    let p = Formula::atom("p");
    let mut f = p;
    for _ in 0..n {
        f = Formula::boxed(f);
    }
    let tokens: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut d = Derivation::hyp("u", f.clone(), Position::empty());
    for t in &tokens {
        d = Derivation::box_e(d, Position::of(&[t]), None);
    }
    for t in tokens.iter().rev() {
        d = Derivation::box_i(t, &[], d);
    }
    Derivation::imp_i(&["u"], f, d)
}
