use super::normalize::is_normal;
use super::segments::Occurrence;
use super::NormalizeError;
use crate::kernel::{Derivation, RuleKind};

/// How a spine element relates to the rule directly below it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SpineRole {
    /// Major premise of an elimination.
    Elim,
    /// Premise of BotI.
    Minimum,
    /// Premise of an introduction.
    Intro,
}

/// A path of occurrences from an assumption (first) to the end formula (last).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spine {
    pub occurrences: Vec<Occurrence>,
    /// `roles[i]` relates `occurrences[i]` to `occurrences[i + 1]`.
    pub roles: Vec<SpineRole>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SpineParts {
    pub elim: Vec<Occurrence>,
    pub minimum: Vec<Occurrence>,
    pub intro: Vec<Occurrence>,
}

/// Premises a spine may continue into, with the role they play.
fn spine_premises(n: &Derivation) -> Vec<(usize, SpineRole)> {
    let k = n.kind();
    if k.is_elim() {
        vec![(0, SpineRole::Elim)]
    } else if k.is_intro() {
        // The E-premise of DiaI is not a formula occurrence of the spine.
        let m = if k == RuleKind::DiaI { 1 } else { n.premises().len() };
        (0..m).map(|i| (i, SpineRole::Intro)).collect()
    } else if matches!(k, RuleKind::BotI | RuleKind::BotC) {
        vec![(0, SpineRole::Minimum)]
    } else {
        Vec::new()
    }
}

/// Every spine of `d`, in pre-order of their assumption leaves.
pub fn spines(d: &Derivation) -> Vec<Spine> {
    fn go(n: &Derivation, path: &mut Vec<usize>, down: &mut Vec<(Vec<usize>, SpineRole)>, out: &mut Vec<Spine>) {
        let next = spine_premises(n);
        if next.is_empty() {
            if n.kind() == RuleKind::Hyp {
                let mut occurrences = vec![Occurrence::new(path.clone())];
                let mut roles = Vec::new();
                for (p, r) in down.iter().rev() {
                    occurrences.push(Occurrence::new(p.clone()));
                    roles.push(*r);
                }
                out.push(Spine { occurrences, roles });
            }
            return;
        }
        for (i, role) in next {
            down.push((path.clone(), role));
            path.push(i);
            go(&n.premises()[i], path, down, out);
            path.pop();
            down.pop();
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Splits a spine of a normal derivation into its elimination, minimum and
/// introduction sequences, verifying that order.
pub fn spine_decompose(d: &Derivation, spine: &Spine) -> Result<SpineParts, NormalizeError> {
    if !is_normal(d) {
        return Err(NormalizeError::NotNormal);
    }
    if let Some(w) = spine.roles.windows(2).find(|w| w[0] > w[1]) {
        return Err(NormalizeError::SpineOrder(format!("{:?} above {:?}", w[0], w[1])));
    }
    let ne = spine.roles.iter().filter(|r| **r == SpineRole::Elim).count();
    let nm = spine.roles.iter().filter(|r| **r == SpineRole::Minimum).count();
    let occ = &spine.occurrences;
    Ok(SpineParts {
        elim: occ[..=ne].to_vec(),
        minimum: occ[ne + 1..ne + 1 + nm].to_vec(),
        intro: occ[ne + 1 + nm..].to_vec(),
    })
}

/// Decomposes every spine of a normal derivation.
pub fn decompose_all(d: &Derivation) -> Result<Vec<SpineParts>, NormalizeError> {
    spines(d).iter().map(|s| spine_decompose(d, s)).collect()
}
