use std::collections::{BTreeMap, BTreeSet};

use crate::kernel::{Judgment, Logic};
use crate::syntax::{init_set, step_holds, PFormula, Position};

use super::model::{accessible, step_kind, Node, TreeModel};
use super::SemanticsError;

/// A map from positions to nodes over a prefix-closed domain. Only the
/// positions a question mentions are ever assigned.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Evaluation {
    pub entries: BTreeMap<Position, Node>,
    /// Set for K and K4, whose evaluations may leave positions undefined.
    pub partial_allowed: bool,
}

impl Evaluation {
    pub fn new(partial_allowed: bool) -> Self {
        Evaluation {
            entries: BTreeMap::new(),
            partial_allowed,
        }
    }

    pub fn with(mut self, position: Position, node: Node) -> Self {
        self.entries.insert(position, node);
        self
    }

    pub fn get(&self, position: &Position) -> Option<&Node> {
        self.entries.get(position)
    }
}

/// Prefix-closed domain, partiality matching the logic, and the logic's step
/// condition on every defined one-step pair.
pub fn validate_evaluation(rho: &Evaluation, m: &TreeModel, logic: Logic) -> bool {
    if rho.partial_allowed != logic.is_partial() {
        return false;
    }
    rho.entries.iter().all(|(pos, node)| {
        if !m.contains(node) {
            return false;
        }
        match pos.parent() {
            None => true,
            Some(parent) => match rho.entries.get(&parent) {
                Some(up) => accessible(m, logic, up, node),
                None => false,
            },
        }
    })
}

/// `M, ρ ⊩ A^α` for total logics.
pub fn sat(m: &TreeModel, logic: Logic, rho: &Evaluation, pf: &PFormula) -> Result<bool, SemanticsError> {
    let node = rho
        .get(&pf.position)
        .ok_or_else(|| SemanticsError::UndefinedPosition(pf.position.clone()))?;
    Ok(holds_at(m, logic, node, pf))
}

fn holds_at(m: &TreeModel, logic: Logic, node: &[u32], pf: &PFormula) -> bool {
    super::model::holds(m, logic, node, &pf.formula)
}

/// Satisfaction of an assumption: the position must be defined.
pub fn sat_left(m: &TreeModel, logic: Logic, rho: &Evaluation, j: &Judgment) -> bool {
    match j {
        Judgment::P(pf) => rho.get(&pf.position).is_some_and(|n| holds_at(m, logic, n, pf)),
        Judgment::E(e) => rho.get(&e.position).is_some(),
    }
}

/// Satisfaction of a conclusion: vacuous where the position is undefined.
pub fn sat_right(m: &TreeModel, logic: Logic, rho: &Evaluation, pf: &PFormula) -> bool {
    rho.get(&pf.position).is_none_or(|n| holds_at(m, logic, n, pf))
}

/// The nodes an evaluation may use: the tree's own, then for a completed
/// model the tails `ℓ·0^k` (`1 ≤ k ≤ extra`) below each leaf. `theory[i]` is
/// the tree node whose truth node `i` shares.
pub(crate) struct Universe {
    pub(crate) nodes: Vec<Node>,
    pub(crate) theory: Vec<usize>,
    succ: Vec<Option<Vec<usize>>>,
}

impl Universe {
    pub(crate) fn new(m: &TreeModel, extra: usize) -> Universe {
        let mut nodes: Vec<Node> = m.nodes().to_vec();
        let mut theory: Vec<usize> = (0..nodes.len()).collect();
        if m.serial_completion {
            for i in 0..m.nodes().len() {
                if m.is_leaf(i) {
                    let mut n = m.nodes()[i].clone();
                    for _ in 0..extra {
                        n.push(0);
                        nodes.push(n.clone());
                        theory.push(i);
                    }
                }
            }
        }
        let succ = vec![None; nodes.len()];
        Universe { nodes, theory, succ }
    }

    /// Universe nodes one logic step away from node `i`.
    pub(crate) fn steps(&mut self, logic: Logic, i: usize) -> &[usize] {
        if self.succ[i].is_none() {
            let kind = step_kind(logic);
            let s = &self.nodes[i];
            let out = (0..self.nodes.len()).filter(|j| step_holds(kind, s, &self.nodes[*j])).collect();
            self.succ[i] = Some(out);
        }
        self.succ[i].as_deref().unwrap_or_default()
    }
}

/// A prefix-closed domain in parent-before-child order.
pub(crate) struct Domain {
    pub(crate) positions: Vec<Position>,
    parent: Vec<Option<usize>>,
}

impl Domain {
    pub(crate) fn new<'a>(positions: impl IntoIterator<Item = &'a Position>) -> Domain {
        let positions: Vec<Position> = init_set(positions).into_iter().collect();
        let parent = positions
            .iter()
            .map(|p| p.parent().and_then(|q| positions.iter().position(|r| *r == q)))
            .collect();
        Domain { positions, parent }
    }

    pub(crate) fn index(&self, p: &Position) -> Option<usize> {
        self.positions.iter().position(|q| q == p)
    }

    pub(crate) fn max_len(&self) -> usize {
        self.positions.iter().map(Position::len).max().unwrap_or(0)
    }
}

/// Every assignment of universe nodes to the domain meeting the logic's step
/// condition, with `()` sent to the root when defined.
pub(crate) fn assignments(u: &mut Universe, dom: &Domain, logic: Logic) -> Vec<Vec<Option<usize>>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(dom.positions.len());
    go(u, dom, logic, &mut cur, &mut out);
    out
}

fn go(u: &mut Universe, dom: &Domain, logic: Logic, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
    let k = cur.len();
    if k == dom.positions.len() {
        out.push(cur.clone());
        return;
    }
    let mut choices: Vec<Option<usize>> = match dom.parent[k] {
        None => vec![Some(0)],
        Some(p) => match cur[p] {
            Some(up) => u.steps(logic, up).iter().copied().map(Some).collect(),
            None => Vec::new(),
        },
    };
    if logic.is_partial() {
        choices.push(None);
    }
    for c in choices {
        cur.push(c);
        go(u, dom, logic, cur, out);
        cur.pop();
    }
}

/// All valid evaluations of the prefix closure of `positions` into `m`, the
/// root position sent to the root node. Partial logics also get every
/// evaluation with a smaller prefix-closed domain.
pub fn enumerate_evaluations(m: &TreeModel, positions: &BTreeSet<Position>, logic: Logic) -> Vec<Evaluation> {
    let dom = Domain::new(positions);
    let mut u = Universe::new(m, dom.max_len());
    assignments(&mut u, &dom, logic)
        .into_iter()
        .map(|a| to_evaluation(&u, &dom, &a, logic))
        .collect()
}

pub(crate) fn to_evaluation(u: &Universe, dom: &Domain, a: &[Option<usize>], logic: Logic) -> Evaluation {
    let mut e = Evaluation::new(logic.is_partial());
    for (pos, n) in dom.positions.iter().zip(a) {
        if let Some(n) = n {
            e.entries.insert(pos.clone(), u.nodes[*n].clone());
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula;

    fn two(serial: bool) -> TreeModel {
        TreeModel::new(vec![(vec![], vec![]), (vec![0], vec!["p"])], serial).unwrap()
    }

    fn x() -> Position {
        Position::of(&["x"])
    }

    #[test]
    fn validate_examples() {
        let m = two(true);
        let rho = Evaluation::new(false).with(Position::empty(), vec![]).with(x(), vec![0]);
        assert!(validate_evaluation(&rho, &m, Logic::D));
        assert!(validate_evaluation(&rho, &m, Logic::T));
        let refl = Evaluation::new(false).with(Position::empty(), vec![]).with(x(), vec![]);
        assert!(validate_evaluation(&refl, &m, Logic::T));
        assert!(!validate_evaluation(&refl, &m, Logic::D));
        let deep = TreeModel::new(vec![(vec![], Vec::<&str>::new()), (vec![0], vec![]), (vec![0, 0], vec![])], false).unwrap();
        let far = Evaluation::new(true).with(Position::empty(), vec![]).with(x(), vec![0, 0]);
        assert!(!validate_evaluation(&far, &deep, Logic::K));
        assert!(validate_evaluation(&far, &deep, Logic::K4));
        let gap = Evaluation::new(true).with(x(), vec![0]);
        assert!(!validate_evaluation(&gap, &deep, Logic::K));
    }

    #[test]
    fn sat_examples() {
        let m = two(false);
        let px = Formula::atom("p").at(x());
        let undefined = Evaluation::new(true).with(Position::empty(), vec![]);
        assert!(sat_right(&m, Logic::K, &undefined, &px));
        assert!(!sat_left(&m, Logic::K, &undefined, &Judgment::P(px.clone())));
        assert!(sat_left(&m, Logic::K, &undefined, &Judgment::exists(Position::empty())));
        assert_eq!(
            sat(&m, Logic::K, &undefined, &px),
            Err(SemanticsError::UndefinedPosition(x()))
        );
        let rho = Evaluation::new(false).with(Position::empty(), vec![]).with(x(), vec![0]);
        assert_eq!(sat(&m, Logic::D, &rho, &px), Ok(true));
    }

    #[test]
    fn enumeration_counts() {
        let dom: BTreeSet<Position> = [Position::empty(), x()].into_iter().collect();
        let d = enumerate_evaluations(&two(true), &dom, Logic::D);
        assert_eq!(d, vec![Evaluation::new(false).with(Position::empty(), vec![]).with(x(), vec![0])]);
        let k = enumerate_evaluations(&two(false), &dom, Logic::K);
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|e| validate_evaluation(e, &two(false), Logic::K)));
        assert!(k.contains(&Evaluation::new(true)));
    }
}
