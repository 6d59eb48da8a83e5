use std::fmt;

use crate::kernel::{Connective, Derivation, RuleKind};
use crate::syntax::PFormula;

/// A node address: premise indices from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Occurrence {
    pub path: Vec<usize>,
}

impl Occurrence {
    pub fn new(path: Vec<usize>) -> Self {
        Occurrence { path }
    }

    pub fn parent(&self) -> Option<Occurrence> {
        let (_, init) = self.path.split_last()?;
        Some(Occurrence::new(init.to_vec()))
    }

    pub fn is_within(&self, root: &[usize]) -> bool {
        self.path.starts_with(root)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::kernel::dotted_path(&self.path))
    }
}

/// A maximal chain of occurrences of one p-formula threaded downwards
/// through minor premises of OrE/DiaE. Ordered top to bottom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub occurrences: Vec<Occurrence>,
}

impl Segment {
    pub fn first(&self) -> &Occurrence {
        &self.occurrences[0]
    }

    pub fn last(&self) -> &Occurrence {
        self.occurrences.last().expect("segments are nonempty")
    }

    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn formula<'a>(&self, d: &'a Derivation) -> Option<&'a PFormula> {
        d.get(&self.first().path)?.pformula()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    pub segment: Segment,
    pub connective: Connective,
    pub degree: usize,
}

impl Cut {
    /// Address of the elimination consuming the segment.
    pub fn elimination(&self) -> Occurrence {
        self.segment.last().parent().expect("a cut ends at a premise")
    }
}

/// `(d, n)`: maximal cut degree and total length of the cuts of that degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rank {
    pub d: usize,
    pub n: usize,
}

impl Rank {
    pub const ZERO: Rank = Rank { d: 0, n: 0 };
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.n)
    }
}

fn is_minor_of_parent(d: &Derivation, path: &[usize]) -> bool {
    match path.split_last() {
        Some((&i, parent)) => d
            .get(parent)
            .is_some_and(|p| p.kind().is_segment_minor(i)),
        None => false,
    }
}

/// The maximal segment starting at `start`, which must not be an OrE/DiaE conclusion.
pub fn segment_from(d: &Derivation, start: &[usize]) -> Segment {
    let mut occurrences = vec![Occurrence::new(start.to_vec())];
    let mut cur = start.to_vec();
    while is_minor_of_parent(d, &cur) {
        cur.pop();
        occurrences.push(Occurrence::new(cur.clone()));
    }
    Segment { occurrences }
}

/// All maximal segments, one per p-formula occurrence that is not the
/// conclusion of OrE/DiaE, in pre-order of their first occurrence.
pub fn segments(d: &Derivation) -> Vec<Segment> {
    d.nodes()
        .into_iter()
        .filter(|(_, n)| n.pformula().is_some() && !n.kind().has_minor_segments())
        .map(|(path, _)| segment_from(d, &path))
        .collect()
}

/// The cut whose segment starts at `start`, if that segment is one.
pub fn cut_at(d: &Derivation, start: &[usize]) -> Option<Cut> {
    let top = d.get(start)?;
    let connective = top.kind().introduces()?;
    let segment = segment_from(d, start);
    let (&i, elim) = segment.last().path.split_last()?;
    let elim = d.get(elim)?;
    if i != 0 || elim.kind().eliminates() != Some(connective) {
        return None;
    }
    let degree = top.pformula()?.formula.degree();
    Some(Cut {
        segment,
        connective,
        degree,
    })
}

pub fn cuts(d: &Derivation) -> Vec<Cut> {
    d.nodes()
        .into_iter()
        .filter(|(_, n)| n.kind().is_intro())
        .filter_map(|(path, _)| cut_at(d, &path))
        .collect()
}

pub fn rank_of(cuts: &[Cut]) -> Rank {
    let d = cuts.iter().map(|c| c.degree).max().unwrap_or(0);
    let n = cuts.iter().filter(|c| c.degree == d).map(Cut::len).sum();
    Rank { d, n }
}

pub fn rank(d: &Derivation) -> Rank {
    rank_of(&cuts(d))
}

impl Cut {
    pub fn len(&self) -> usize {
        self.segment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when some occurrence other than the first concludes an OrE.
    pub fn passes_or_e(&self, d: &Derivation) -> bool {
        self.segment.occurrences[1..]
            .iter()
            .any(|o| d.get(&o.path).is_some_and(|n| n.kind() == RuleKind::OrE))
    }
}
