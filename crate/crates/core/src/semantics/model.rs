use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::kernel::Logic;
use crate::syntax::{step_holds, Formula, StepKind};

use super::SemanticsError;

/// A node of a tree: a finite sequence of child indices, `()` being the root.
pub type Node = Vec<u32>;

/// The accessibility relation of each logic, as a relation on node sequences.
pub fn step_kind(logic: Logic) -> StepKind {
    match logic {
        Logic::K | Logic::D => StepKind::Succ,
        Logic::T => StepKind::SuccRefl,
        Logic::K4 | Logic::D4 => StepKind::Trans,
        Logic::S4 => StepKind::ReflTrans,
    }
}

/// The node set of a tree with its child and descendant lists. Shared by all
/// models that differ only in their valuation.
#[derive(Debug)]
pub(crate) struct Shape {
    pub(crate) nodes: Vec<Node>,
    index: HashMap<Node, usize>,
    children: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    ids: Vec<usize>,
}

fn length_lex(a: &Node, b: &Node) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Shape {
    pub(crate) fn new(mut nodes: Vec<Node>) -> Shape {
        nodes.sort_by(length_lex);
        nodes.dedup();
        let index: HashMap<Node, usize> = nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let mut children = vec![Vec::new(); nodes.len()];
        let mut below = vec![Vec::new(); nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            if let Some(p) = n.len().checked_sub(1).and_then(|k| index.get(&n[..k])) {
                children[*p].push(i);
            }
            for k in 0..n.len() {
                if let Some(a) = index.get(&n[..k]) {
                    below[*a].push(i);
                }
            }
        }
        let ids = (0..nodes.len()).collect();
        Shape {
            nodes,
            index,
            children,
            below,
            ids,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    fn is_leaf(&self, i: usize) -> bool {
        self.children[i].is_empty()
    }
}

/// A finite tree model with a valuation over a fixed list of atoms.
///
/// With `serial_completion` set, each leaf stands for an infinite chain
/// `ℓ, ℓ·0, ℓ·00, …` whose nodes all carry the leaf's valuation. Such tail
/// nodes are accepted wherever a node is expected.
#[derive(Clone, Debug)]
pub struct TreeModel {
    pub(crate) shape: Arc<Shape>,
    pub(crate) atoms: Arc<[Arc<str>]>,
    /// Bit `a` of `valuation[i]` is atom `atoms[a]` at node `i`.
    pub(crate) valuation: Vec<u64>,
    pub serial_completion: bool,
}

impl PartialEq for TreeModel {
    fn eq(&self, other: &Self) -> bool {
        self.shape.nodes == other.shape.nodes
            && self.serial_completion == other.serial_completion
            && (0..self.shape.len()).all(|i| self.atoms_at_index(i) == other.atoms_at_index(i))
    }
}

impl Eq for TreeModel {}

impl TreeModel {
    /// Builds a model from nodes and the atoms true at each. The node set is
    /// taken as given; [`validate_model`] checks that it is a tree.
    pub fn new<S: AsRef<str>>(nodes: Vec<(Node, Vec<S>)>, serial_completion: bool) -> Result<TreeModel, SemanticsError> {
        let names: BTreeSet<&str> = nodes.iter().flat_map(|(_, a)| a.iter().map(|s| s.as_ref())).collect();
        if names.len() > 64 {
            return Err(SemanticsError::TooManyAtoms(names.len()));
        }
        let atoms: Arc<[Arc<str>]> = names.iter().map(|s| Arc::from(*s)).collect();
        let shape = Shape::new(nodes.iter().map(|(n, _)| n.clone()).collect());
        let mut valuation = vec![0u64; shape.len()];
        for (n, true_atoms) in &nodes {
            let i = shape.index[n];
            for a in true_atoms {
                let k = atoms.iter().position(|x| &**x == a.as_ref()).expect("atom collected above");
                valuation[i] |= 1 << k;
            }
        }
        Ok(TreeModel {
            shape: Arc::new(shape),
            atoms,
            valuation,
            serial_completion,
        })
    }

    pub(crate) fn from_parts(shape: Arc<Shape>, atoms: Arc<[Arc<str>]>, valuation: Vec<u64>, serial_completion: bool) -> TreeModel {
        TreeModel {
            shape,
            atoms,
            valuation,
            serial_completion,
        }
    }

    /// The nodes in length-lexicographic order.
    pub fn nodes(&self) -> &[Node] {
        &self.shape.nodes
    }

    fn atoms_at_index(&self, i: usize) -> BTreeSet<&str> {
        (0..self.atoms.len())
            .filter(|a| self.valuation[i] >> a & 1 == 1)
            .map(|a| &*self.atoms[a])
            .collect()
    }

    /// Atoms true at `node`, tail nodes included. `None` outside the model.
    pub fn atoms_at(&self, node: &[u32]) -> Option<BTreeSet<&str>> {
        self.resolve(node).map(|i| self.atoms_at_index(i))
    }

    pub fn contains(&self, node: &[u32]) -> bool {
        self.resolve(node).is_some()
    }

    /// Index of the tree node whose theory `node` has: the node itself, or
    /// for a tail node `ℓ·0…0` the leaf `ℓ`.
    pub(crate) fn resolve(&self, node: &[u32]) -> Option<usize> {
        if let Some(i) = self.shape.index.get(node) {
            return Some(*i);
        }
        if !self.serial_completion {
            return None;
        }
        (0..node.len()).rev().find_map(|k| {
            let i = *self.shape.index.get(&node[..k])?;
            (self.shape.is_leaf(i) && node[k..].iter().all(|c| *c == 0)).then_some(i)
        })
    }

    pub(crate) fn is_leaf(&self, i: usize) -> bool {
        self.shape.is_leaf(i)
    }

    /// Successors of tree node `i` up to theory: a completed leaf sees its
    /// own tail, whose theory is the leaf's.
    fn successors(&self, kind: StepKind, i: usize) -> Vec<usize> {
        let s = &self.shape;
        if self.serial_completion && s.is_leaf(i) {
            return vec![s.ids[i]];
        }
        let mut out = match kind {
            StepKind::Succ | StepKind::SuccRefl => s.children[i].clone(),
            StepKind::Trans | StepKind::ReflTrans => s.below[i].clone(),
        };
        if matches!(kind, StepKind::SuccRefl | StepKind::ReflTrans) {
            out.push(i);
        }
        out
    }

    /// Truth of `f` at every tree node, indexed like [`TreeModel::nodes`].
    pub fn truth(&self, logic: Logic, f: &Formula) -> Vec<bool> {
        let n = self.shape.len();
        match f {
            Formula::Atom(a) => match self.atoms.iter().position(|x| x == a) {
                Some(k) => self.valuation.iter().map(|v| v >> k & 1 == 1).collect(),
                None => vec![false; n],
            },
            Formula::Bottom => vec![false; n],
            Formula::And(a, b) => zip(self.truth(logic, a), self.truth(logic, b), |x, y| x && y),
            Formula::Or(a, b) => zip(self.truth(logic, a), self.truth(logic, b), |x, y| x || y),
            Formula::Imp(a, b) => zip(self.truth(logic, a), self.truth(logic, b), |x, y| !x || y),
            Formula::Box(a) => {
                let t = self.truth(logic, a);
                let kind = step_kind(logic);
                (0..n).map(|i| self.successors(kind, i).iter().all(|j| t[*j])).collect()
            }
            Formula::Dia(a) => {
                let t = self.truth(logic, a);
                let kind = step_kind(logic);
                (0..n).map(|i| self.successors(kind, i).iter().any(|j| t[*j])).collect()
            }
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Prefix closure with the root present; D and D4 also need the serial
/// completion, the finite stand-in for a tree without leaves.
pub fn validate_model(m: &TreeModel, logic: Logic) -> bool {
    let nodes = m.nodes();
    let closed = !nodes.is_empty()
        && nodes.iter().all(|n| n.is_empty() || m.shape.index.contains_key(&n[..n.len() - 1]));
    let serial_ok = !matches!(logic, Logic::D | Logic::D4) || m.serial_completion;
    closed && serial_ok
}

/// Accessibility in the logic's model class, tail nodes included.
pub fn accessible(m: &TreeModel, logic: Logic, s: &[u32], t: &[u32]) -> bool {
    m.contains(s) && m.contains(t) && step_holds(step_kind(logic), s, t)
}

/// Kripke truth of `f` at `s`; false when `s` is not a node of `m`.
pub fn holds(m: &TreeModel, logic: Logic, s: &[u32], f: &Formula) -> bool {
    match m.resolve(s) {
        Some(i) => m.truth(logic, f)[i],
        None => false,
    }
}

/// Truth of `f` on an infinite chain whose nodes all carry `leaf_atoms`.
/// Every node sees only chain nodes with the same theory, so both modalities
/// reduce to their argument; the result is the same for all six logics.
pub fn chain_truth<S: AsRef<str>>(leaf_atoms: &[S], f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => leaf_atoms.iter().any(|x| x.as_ref() == &**a),
        Formula::Bottom => false,
        Formula::And(a, b) => chain_truth(leaf_atoms, a) && chain_truth(leaf_atoms, b),
        Formula::Or(a, b) => chain_truth(leaf_atoms, a) || chain_truth(leaf_atoms, b),
        Formula::Imp(a, b) => !chain_truth(leaf_atoms, a) || chain_truth(leaf_atoms, b),
        Formula::Box(a) | Formula::Dia(a) => chain_truth(leaf_atoms, a),
    }
}

/// `v ÷ u`: the `t` with `u·t = v`.
pub fn node_subtract(v: &[u32], u: &[u32]) -> Result<Node, SemanticsError> {
    v.strip_prefix(u).map(<[u32]>::to_vec).ok_or_else(|| SemanticsError::NotAPrefix {
        v: v.to_vec(),
        u: u.to_vec(),
    })
}
