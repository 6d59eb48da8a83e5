//! Export of derivations into labelled sequents `Γ ⊢ w:A`.
//!
//! A position α becomes the label `w_` followed by its tokens joined with
//! `_`. In total logics a judgment at α carries the relational chain from the
//! root to α, and so does every assumption. In partial logics only existence
//! assumptions `E(αx)` contribute relational atoms, one each.
//!
//! Where the modal rule's own conclusion keeps a relational atom that the
//! translated judgment lacks, a structural step is inserted, chosen by |β|:
//! Refl for `β = ()`, Ser for one step and a Trans chain for longer β. The
//! result is a sketch; no labelled kernel checks it.

use std::collections::BTreeSet;
use std::fmt;

use crate::kernel::{open_assumptions, Derivation, Judgment, Rule, System};
use crate::syntax::{Formula, PFormula, Position};

use super::TranslateError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Total,
    Partial,
}

pub fn position_label(alpha: &Position) -> String {
    let names: Vec<&str> = alpha.tokens().iter().map(|t| t.name()).collect();
    format!("w_{}", names.join("_"))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum LabelledAtom {
    Formula { label: Position, formula: Formula },
    Rel { from: Position, to: Position },
}

impl fmt::Display for LabelledAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelledAtom::Formula { label, formula } => write!(f, "{}:{formula}", position_label(label)),
            LabelledAtom::Rel { from, to } => write!(f, "{} R {}", position_label(from), position_label(to)),
        }
    }
}

/// `⌊α⌋`: the atoms linking the root to α through every prefix, in order.
pub fn pos_to_relational(alpha: &Position) -> Vec<(Position, Position)> {
    let mut out = Vec::with_capacity(alpha.len());
    let mut cur = Position::empty();
    for t in alpha.tokens() {
        let next = cur.child(t);
        out.push((cur, next.clone()));
        cur = next;
    }
    out
}

fn chain(alpha: &Position) -> impl Iterator<Item = LabelledAtom> {
    pos_to_relational(alpha)
        .into_iter()
        .map(|(from, to)| LabelledAtom::Rel { from, to })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelledSequent {
    pub left: BTreeSet<LabelledAtom>,
    pub label: Position,
    pub formula: Formula,
}

impl fmt::Display for LabelledSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left: Vec<String> = self.left.iter().map(ToString::to_string).collect();
        if !left.is_empty() {
            write!(f, "{} ", left.join(", "))?;
        }
        write!(f, "⊢ {}:{}", position_label(&self.label), self.formula)
    }
}

pub fn judgment_to_labelled(gamma: &[Judgment], target: &PFormula, mode: Mode) -> LabelledSequent {
    let mut left = BTreeSet::new();
    for j in gamma {
        match j {
            Judgment::P(b) => {
                if mode == Mode::Total {
                    left.extend(chain(&b.position));
                }
                left.insert(LabelledAtom::Formula {
                    label: b.position.clone(),
                    formula: b.formula.clone(),
                });
            }
            Judgment::E(e) => {
                if let Some(parent) = e.position.parent() {
                    left.insert(LabelledAtom::Rel {
                        from: parent,
                        to: e.position.clone(),
                    });
                }
            }
        }
    }
    if mode == Mode::Total {
        left.extend(chain(&target.position));
    }
    LabelledSequent {
        left,
        label: target.position.clone(),
        formula: target.formula.clone(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LabelledRule {
    Hyp,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    BotC,
    BotI,
    BoxI,
    BoxE,
    DiaI,
    DiaE,
    Ser,
    Refl,
    Trans,
}

impl LabelledRule {
    pub fn name(self) -> &'static str {
        match self {
            LabelledRule::Hyp => "Hyp",
            LabelledRule::AndI => "∧I",
            LabelledRule::AndE1 => "∧E1",
            LabelledRule::AndE2 => "∧E2",
            LabelledRule::OrI1 => "∨I1",
            LabelledRule::OrI2 => "∨I2",
            LabelledRule::OrE => "∨E",
            LabelledRule::ImpI => "→I",
            LabelledRule::ImpE => "→E",
            LabelledRule::BotC => "⊥C",
            LabelledRule::BotI => "⊥I",
            LabelledRule::BoxI => "□I_L",
            LabelledRule::BoxE => "□E_L",
            LabelledRule::DiaI => "◇I_L",
            LabelledRule::DiaE => "◇E_L",
            LabelledRule::Ser => "Ser",
            LabelledRule::Refl => "Refl",
            LabelledRule::Trans => "Trans",
        }
    }

    pub fn is_relational(self) -> bool {
        matches!(self, LabelledRule::Ser | LabelledRule::Refl | LabelledRule::Trans)
    }

    fn of(rule: &Rule) -> LabelledRule {
        match rule {
            Rule::Hyp { .. } | Rule::EHyp { .. } => LabelledRule::Hyp,
            Rule::AndI => LabelledRule::AndI,
            Rule::AndE1 => LabelledRule::AndE1,
            Rule::AndE2 => LabelledRule::AndE2,
            Rule::OrI1 { .. } => LabelledRule::OrI1,
            Rule::OrI2 { .. } => LabelledRule::OrI2,
            Rule::OrE { .. } => LabelledRule::OrE,
            Rule::ImpI { .. } => LabelledRule::ImpI,
            Rule::ImpE => LabelledRule::ImpE,
            Rule::BotC { .. } => LabelledRule::BotC,
            Rule::BotI { .. } => LabelledRule::BotI,
            Rule::BoxI { .. } => LabelledRule::BoxI,
            Rule::BoxE { .. } => LabelledRule::BoxE,
            Rule::DiaI { .. } => LabelledRule::DiaI,
            Rule::DiaE { .. } => LabelledRule::DiaE,
        }
    }
}

impl fmt::Display for LabelledRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelledProofSketch {
    pub rule: LabelledRule,
    pub sequent: LabelledSequent,
    pub children: Vec<LabelledProofSketch>,
}

impl LabelledProofSketch {
    /// Rule names and arities only, as `→I(□I_L(Hyp))`.
    pub fn shape(&self) -> String {
        if self.children.is_empty() {
            return self.rule.name().to_owned();
        }
        let kids: Vec<String> = self.children.iter().map(Self::shape).collect();
        format!("{}({})", self.rule.name(), kids.join(", "))
    }

    pub fn count(&self, rule: LabelledRule) -> usize {
        usize::from(self.rule == rule) + self.children.iter().map(|c| c.count(rule)).sum::<usize>()
    }

    fn write_lines(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}  [{}]\n", self.sequent, self.rule));
        for c in &self.children {
            c.write_lines(depth + 1, out);
        }
    }

    /// A `sketch` header, then one line per node, conclusion first.
    pub fn print(&self) -> String {
        let mut out = String::from("sketch\n");
        self.write_lines(0, &mut out);
        out
    }
}

fn node(rule: LabelledRule, sequent: LabelledSequent, children: Vec<LabelledProofSketch>) -> LabelledProofSketch {
    LabelledProofSketch { rule, sequent, children }
}

fn export(d: &Derivation, mode: Mode) -> Result<LabelledProofSketch, TranslateError> {
    let concl = d
        .pformula()
        .cloned()
        .ok_or_else(|| TranslateError::IllFormed(format!("{} node without a p-formula conclusion", d.kind().name())))?;
    let gamma: Vec<Judgment> = open_assumptions(d).into_iter().map(|a| a.content).collect();
    let target = judgment_to_labelled(&gamma, &concl, mode);
    let children = d
        .premises()
        .iter()
        .filter(|p| !matches!(p.conclusion(), Some(Judgment::E(_))))
        .map(|p| export(p, mode))
        .collect::<Result<Vec<_>, _>>()?;
    let rule = LabelledRule::of(d.rule());

    let step = match d.rule() {
        Rule::BoxE { beta } => d.premises()[0].pformula().map(|m| (m.position.clone(), beta.clone())),
        Rule::DiaI { beta } => Some((concl.position.clone(), beta.clone())),
        _ => None,
    };
    let Some((alpha, beta)) = step else {
        return Ok(node(rule, target, children));
    };

    let far = crate::syntax::concat(&alpha, &beta);
    let mut natural = target.clone();
    natural.left = children.iter().flat_map(|c| c.sequent.left.iter().cloned()).collect();
    natural.left.insert(LabelledAtom::Rel {
        from: alpha.clone(),
        to: far.clone(),
    });
    if natural == target {
        return Ok(node(rule, target, children));
    }
    let mut cur = node(rule, natural.clone(), children);
    match beta.len() {
        0 => Ok(node(LabelledRule::Refl, target, vec![cur])),
        1 => Ok(node(LabelledRule::Ser, target, vec![cur])),
        k => {
            // Split `α R αβ` at its last step, k - 1 times; the final
            // sequent is the translated judgment.
            let mut seq = natural;
            let mut to = far;
            for _ in 2..k {
                let mid = to.parent().expect("|β| ≥ 2 leaves a parent");
                seq.left.remove(&LabelledAtom::Rel {
                    from: alpha.clone(),
                    to: to.clone(),
                });
                seq.left.insert(LabelledAtom::Rel {
                    from: alpha.clone(),
                    to: mid.clone(),
                });
                seq.left.insert(LabelledAtom::Rel { from: mid.clone(), to });
                cur = node(LabelledRule::Trans, seq.clone(), vec![cur]);
                to = mid;
            }
            Ok(node(LabelledRule::Trans, target, vec![cur]))
        }
    }
}

/// The labelled sketch of `d`, in partial mode for K and K4. Existence
/// premises of modal rules become relational atoms rather than subtrees.
pub fn derivation_to_labelled(d: &Derivation, sys: System) -> Result<LabelledProofSketch, TranslateError> {
    let mode = if sys.logic.is_partial() { Mode::Partial } else { Mode::Total };
    export(d, mode)
}
