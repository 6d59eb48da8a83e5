use std::fmt;
use std::str::FromStr;

use super::derivation::Derivation;
use super::{KernelError, Logic};
use crate::syntax::{Formula, Position};

/// The axiom schemas with a fixed derivation in the systems.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axiom {
    /// `◇A ↔ ¬□¬A`, encoded as `(◇A → ¬□¬A) ∧ (¬□¬A → ◇A)`.
    DiaIffNegBoxNeg,
    K,
    T,
    D,
    Four,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::DiaIffNegBoxNeg, Axiom::K, Axiom::T, Axiom::D, Axiom::Four];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::DiaIffNegBoxNeg => "dia-iff",
            Axiom::K => "k",
            Axiom::T => "t",
            Axiom::D => "d",
            Axiom::Four => "four",
        }
    }

    pub fn supports(self, logic: Logic) -> bool {
        use Logic::*;
        match self {
            Axiom::DiaIffNegBoxNeg | Axiom::K => true,
            Axiom::T => matches!(logic, T | S4),
            Axiom::D => matches!(logic, D | D4 | S4),
            Axiom::Four => matches!(logic, K4 | D4 | S4),
        }
    }

    /// Every supported (axiom, logic) pair.
    pub fn corpus() -> Vec<(Axiom, Logic)> {
        let mut out = Vec::new();
        for a in Axiom::ALL {
            for l in Logic::ALL {
                if a.supports(l) {
                    out.push((a, l));
                }
            }
        }
        out
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown axiom `{s}` (expected dia-iff, k, t, d or four)"))
    }
}

/// The builtin derivation with `A = p` and `B = q`.
pub fn builtin(axiom: Axiom, logic: Logic) -> Result<Derivation, KernelError> {
    builtin_with(axiom, logic, &Formula::atom("p"), &Formula::atom("q"))
}

/// The builtin derivation instantiated at `A` (and `B` for axiom K).
pub fn builtin_with(axiom: Axiom, logic: Logic, a: &Formula, b: &Formula) -> Result<Derivation, KernelError> {
    if !axiom.supports(logic) {
        return Err(KernelError::UnsupportedPair { axiom, logic });
    }
    let partial = logic.is_partial();
    let root = Position::empty;
    let x = || Position::of(&["x"]);
    let e = |label: &str, pos: Position| partial.then(|| Derivation::ehyp(label, pos));
    let el = |label: &'static str| if partial { vec![label] } else { vec![] };
    let a = a.clone();
    let boxa = Formula::boxed(a.clone());

    let d = match axiom {
        Axiom::K => {
            let ab = Formula::imp(a.clone(), b.clone());
            let box_ab = Formula::boxed(ab.clone());
            let ab_x = Derivation::box_e(Derivation::hyp("u", box_ab.clone(), root()), x(), e("e", x()));
            let a_x = Derivation::box_e(Derivation::hyp("v", boxa.clone(), root()), x(), e("e", x()));
            let b_x = Derivation::imp_e(ab_x, a_x);
            let box_b = Derivation::box_i("x", &el("e"), b_x);
            Derivation::imp_i(&["u"], box_ab, Derivation::imp_i(&["v"], boxa, box_b))
        }
        Axiom::T => Derivation::imp_i(
            &["u"],
            boxa.clone(),
            Derivation::box_e(Derivation::hyp("u", boxa, root()), root(), None),
        ),
        Axiom::D => Derivation::imp_i(
            &["u"],
            boxa.clone(),
            Derivation::dia_i(
                x(),
                Derivation::box_e(Derivation::hyp("u", boxa, root()), x(), None),
                None,
            ),
        ),
        Axiom::Four => {
            let xy = Position::of(&["x", "y"]);
            let a_xy = Derivation::box_e(Derivation::hyp("u", boxa.clone(), root()), xy.clone(), e("e2", xy));
            let inner = Derivation::box_i("y", &el("e2"), a_xy);
            let outer = Derivation::box_i("x", &el("e1"), inner);
            Derivation::imp_i(&["u"], boxa, outer)
        }
        Axiom::DiaIffNegBoxNeg => {
            let not_a = Formula::not(a.clone());
            let box_not_a = Formula::boxed(not_a);
            let not_box_not_a = Formula::not(box_not_a.clone());
            let dia_a = Formula::dia(a.clone());

            // ◇A → ¬□¬A
            let bot_x = Derivation::imp_e(
                Derivation::box_e(Derivation::hyp("v", box_not_a.clone(), root()), x(), e("e", x())),
                Derivation::hyp("w", a.clone(), x()),
            );
            let bot_root = Derivation::bot_i(bot_x, Formula::Bottom.at(root()));
            let minor = Derivation::imp_i(&["v"], box_not_a.clone(), bot_root);
            let forward = Derivation::imp_i(
                &["u"],
                dia_a.clone(),
                Derivation::dia_e(Derivation::hyp("u", dia_a.clone(), root()), "x", &["w"], &el("e"), minor),
            );

            // ¬□¬A → ◇A
            let dia_root = Derivation::dia_i(x(), Derivation::hyp("w2", a.clone(), x()), e("e3", x()));
            let bot_root = Derivation::imp_e(Derivation::hyp("m", Formula::not(dia_a.clone()), root()), dia_root);
            let bot_x = Derivation::bot_i(bot_root, Formula::Bottom.at(x()));
            let not_a_x = Derivation::imp_i(&["w2"], a.clone(), bot_x);
            let box_not = Derivation::box_i("x", &el("e3"), not_a_x);
            let bot = Derivation::imp_e(Derivation::hyp("n", not_box_not_a.clone(), root()), box_not);
            let backward = Derivation::imp_i(
                &["n"],
                not_box_not_a,
                Derivation::bot_c(&["m"], bot, dia_a.at(root())),
            );
            Derivation::and_i(forward, backward)
        }
    };
    Ok(d)
}
