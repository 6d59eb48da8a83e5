use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::kernel::Logic;

use super::model::{Node, Shape, TreeModel};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub max_depth: usize,
    pub max_branching: usize,
    pub num_atoms: usize,
    /// Tokens available when generating random positions.
    pub alphabet_size: usize,
}

impl Bounds {
    pub fn new(max_depth: usize, max_branching: usize, num_atoms: usize) -> Self {
        Bounds {
            max_depth,
            max_branching,
            num_atoms,
            alphabet_size: 1,
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.max_depth, self.max_branching, self.num_atoms)
    }
}

/// Parses `D,B,K`.
impl FromStr for Bounds {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [d, b, k] = parts[..] else {
            return Err(format!("expected bounds `D,B,K`, got `{s}`"));
        };
        let num = |x: &str| x.parse::<usize>().map_err(|_| format!("`{x}` is not a natural number"));
        let bounds = Bounds::new(num(d)?, num(b)?, num(k)?);
        if bounds.max_branching == 0 || bounds.num_atoms == 0 {
            return Err("branching and atom bounds must be at least 1".into());
        }
        Ok(bounds)
    }
}

/// Default atom names: `p q r s`, then `p4 p5 …`.
pub fn atom_names(n: usize) -> Vec<Arc<str>> {
    (0..n)
        .map(|i| match i {
            0..=3 => Arc::from(["p", "q", "r", "s"][i]),
            _ => Arc::from(format!("p{i}").as_str()),
        })
        .collect()
}

/// Every tree of depth ≤ `depth` whose nodes have ≤ `branching` children,
/// children numbered contiguously from 0.
fn trees_below(prefix: &Node, depth: usize, branching: usize) -> Vec<Vec<Node>> {
    let mut out = vec![vec![prefix.clone()]];
    if depth == 0 {
        return out;
    }
    for k in 1..=branching {
        let per_child: Vec<Vec<Vec<Node>>> = (0..k as u32)
            .map(|c| {
                let mut n = prefix.clone();
                n.push(c);
                trees_below(&n, depth - 1, branching)
            })
            .collect();
        let mut acc: Vec<Vec<Node>> = vec![vec![prefix.clone()]];
        for options in per_child {
            acc = acc
                .iter()
                .flat_map(|a| {
                    options.iter().map(move |o| {
                        let mut v = a.clone();
                        v.extend(o.iter().cloned());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc);
    }
    out
}

pub(crate) fn shapes(depth: usize, branching: usize) -> Vec<Arc<Shape>> {
    let mut all: Vec<Shape> = trees_below(&Vec::new(), depth, branching).into_iter().map(Shape::new).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.nodes.cmp(&b.nodes)));
    all.into_iter().map(Arc::new).collect()
}

/// Models in length-lexicographic order of node sets, then by valuation
/// bitmask. Restartable by cloning before iteration.
#[derive(Clone)]
pub struct Models {
    shapes: Vec<Arc<Shape>>,
    atoms: Arc<[Arc<str>]>,
    serial: bool,
    shape: usize,
    mask: u64,
}

impl Iterator for Models {
    type Item = TreeModel;

    fn next(&mut self) -> Option<TreeModel> {
        let a = self.atoms.len();
        loop {
            let shape = self.shapes.get(self.shape)?;
            let bits = shape.len() * a;
            assert!(bits < 64, "valuation space too large to enumerate");
            if self.mask >= 1u64 << bits {
                self.shape += 1;
                self.mask = 0;
                continue;
            }
            let mask = self.mask;
            self.mask += 1;
            let full = (1u64 << a) - 1;
            let valuation = (0..shape.len()).map(|i| mask >> (i * a) & full).collect();
            return Some(TreeModel::from_parts(shape.clone(), self.atoms.clone(), valuation, self.serial));
        }
    }
}

/// All models within `b` over the default atom names; D and D4 models carry
/// the serial completion.
pub fn enumerate_models(b: Bounds, logic: Logic) -> Models {
    enumerate_models_over(b, logic, atom_names(b.num_atoms))
}

/// As [`enumerate_models`], valuating the given atoms.
pub fn enumerate_models_over(b: Bounds, logic: Logic, atoms: Vec<Arc<str>>) -> Models {
    Models {
        shapes: shapes(b.max_depth, b.max_branching),
        atoms: atoms.into(),
        serial: matches!(logic, Logic::D | Logic::D4),
        shape: 0,
        mask: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::validate_model;

    /// Independent count: trees as child-count choices, valuations summed.
    fn brute_count(depth: usize, branching: usize, atoms: u32) -> u64 {
        let here = 1u64 << atoms;
        if depth == 0 {
            return here;
        }
        let sub = brute_count(depth - 1, branching, atoms);
        here * (0..=branching as u32).map(|k| sub.pow(k)).sum::<u64>()
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(enumerate_models(Bounds::new(1, 1, 1), Logic::K).count(), 6);
        assert_eq!(brute_count(1, 1, 1), 6);
        for (d, b, k) in [(0, 1, 1), (1, 2, 1), (2, 2, 1), (2, 1, 2), (1, 3, 2)] {
            let n = enumerate_models(Bounds::new(d, b, k), Logic::S4).count() as u64;
            assert_eq!(n, brute_count(d, b, k as u32), "bounds {d},{b},{k}");
        }
    }

    #[test]
    fn shape_counts() {
        assert_eq!(shapes(2, 2).len(), 13);
        assert_eq!(shapes(3, 2).len(), 183);
    }

    #[test]
    fn enumerated_models_are_valid_and_ordered() {
        for logic in Logic::ALL {
            let ms: Vec<TreeModel> = enumerate_models(Bounds::new(2, 2, 1), logic).collect();
            assert!(ms.iter().all(|m| validate_model(m, logic)));
            assert!(ms.windows(2).all(|w| w[0].nodes().len() <= w[1].nodes().len()));
            assert_eq!(ms[0].nodes(), &[Vec::<u32>::new()]);
        }
    }

    #[test]
    fn parses_bounds() {
        assert_eq!("3,2,1".parse::<Bounds>(), Ok(Bounds::new(3, 2, 1)));
        assert!("3,2".parse::<Bounds>().is_err());
        assert!("3,0,1".parse::<Bounds>().is_err());
    }
}
