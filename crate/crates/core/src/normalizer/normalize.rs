use std::collections::HashMap;

use super::contract::{commutes, contract_commutative_kind, contract_proper_kind, redex_kind, ContractionKind};
use super::segments::{cut_at, cuts, rank, rank_of, Cut, Occurrence, Rank};
use super::NormalizeError;
use crate::kernel::{check, Derivation, Flavor, RuleKind, System};

/// One contraction performed by [`normalize`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step {
    /// Claim iteration the step belongs to; cleanup commutations after the
    /// rank reaches (0,0) continue the numbering.
    pub iteration: usize,
    /// Rank after the step.
    pub rank: Rank,
    pub kind: ContractionKind,
    pub at: Occurrence,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Normalization {
    pub derivation: Derivation,
    /// Rank before the first iteration, then after each iteration.
    pub trace: Vec<Rank>,
    pub steps: Vec<Step>,
}

/// True iff no proper and no commutative contraction applies anywhere.
pub fn is_normal(d: &Derivation) -> bool {
    d.nodes().iter().all(|(_, n)| redex_kind(n).is_none())
}

/// Applies the first applicable contraction in pre-order, if any.
pub fn reduce_once(d: &Derivation) -> Result<Option<Derivation>, NormalizeError> {
    for (path, n) in d.nodes() {
        match redex_kind(n) {
            Some(true) => {
                let mut start = path.clone();
                start.push(0);
                let cut = cut_at(d, &start)
                    .ok_or_else(|| NormalizeError::NotARedex(Occurrence::new(start).to_string()))?;
                return contract_proper_kind(d, &cut).map(|(out, _)| Some(out));
            }
            Some(false) => {
                return contract_commutative_kind(d, &Occurrence::new(path)).map(|(out, _)| Some(out));
            }
            None => {}
        }
    }
    Ok(None)
}

fn post_order_index(d: &Derivation) -> HashMap<Vec<usize>, usize> {
    fn go(d: &Derivation, path: &mut Vec<usize>, out: &mut HashMap<Vec<usize>, usize>) {
        for (i, p) in d.premises().iter().enumerate() {
            path.push(i);
            go(p, path, out);
            path.pop();
        }
        let k = out.len();
        out.insert(path.clone(), k);
    }
    let mut out = HashMap::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

/// Subtrees that contracting `cut` may copy.
fn duplicated_regions(d: &Derivation, cut: &Cut) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let elim = cut.elimination().path;
    if cut.passes_or_e(d) {
        if let Some(e) = d.get(&elim) {
            for k in 1..e.premises().len() {
                let mut p = elim.clone();
                p.push(k);
                out.push(p);
            }
        }
    }
    let intro = &cut.segment.first().path;
    if let Some(i) = d.get(intro) {
        if matches!(i.kind(), RuleKind::OrI1 | RuleKind::OrI2 | RuleKind::DiaI) {
            let mut p = intro.clone();
            p.push(0);
            out.push(p);
        }
        if i.kind() == RuleKind::ImpI {
            let mut p = elim.clone();
            p.push(1);
            out.push(p);
        }
    }
    out
}

fn touches(other: &Cut, regions: &[Vec<usize>]) -> bool {
    other
        .segment
        .occurrences
        .iter()
        .any(|o| regions.iter().any(|r| o.is_within(r)))
}

/// Chooses the cut to remove next: a maximal cut none of whose duplicated
/// parts (nor, preferably, whose own subderivation) holds another maximal cut;
/// ties go to the leftmost-innermost last occurrence.
fn select_cut(d: &Derivation, all: &[Cut]) -> Option<Cut> {
    let top = all.iter().map(|c| c.degree).max()?;
    let maximal: Vec<&Cut> = all.iter().filter(|c| c.degree == top).collect();
    let order = post_order_index(d);
    let key = |c: &&Cut| order.get(&c.segment.last().path).copied().unwrap_or(usize::MAX);
    let clear = |c: &Cut, regions: &[Vec<usize>]| {
        maximal
            .iter()
            .filter(|o| o.segment != c.segment)
            .all(|o| !touches(o, regions))
    };
    let safe: Vec<&Cut> = maximal
        .iter()
        .copied()
        .filter(|c| {
            let regions = duplicated_regions(d, c);
            clear(c, &regions)
        })
        .collect();
    let paper: Vec<&Cut> = safe
        .iter()
        .copied()
        .filter(|c| {
            let below = vec![c.segment.last().path.clone()];
            clear(c, &below)
        })
        .collect();
    paper
        .into_iter()
        .min_by_key(key)
        .or_else(|| safe.into_iter().min_by_key(key))
        .or_else(|| maximal.into_iter().min_by_key(key))
        .cloned()
}

/// Maps a path below the OrE/DiaE at `m` to its address after commuting the
/// elimination at `at` (the parent of `m`) into the minor premises.
fn commuted_path(path: &[usize], at: &[usize]) -> Vec<usize> {
    let rest = &path[at.len()..];
    match rest {
        [0, j, tail @ ..] => {
            let mut out = at.to_vec();
            out.push(*j);
            out.push(0);
            out.extend_from_slice(tail);
            out
        }
        _ => path.to_vec(),
    }
}

fn verify(d: &Derivation, sys: System, what: &str) -> Result<(), NormalizeError> {
    let r = check(d, sys);
    match r.violations.first() {
        None => Ok(()),
        Some(v) => Err(NormalizeError::Unsound(format!("after {what}: {v}"))),
    }
}

/// Normalizes an intuitionistic derivation by the rank-decreasing claim loop,
/// then removes any remaining commutative redexes.
pub fn normalize(d: &Derivation, sys: System) -> Result<Normalization, NormalizeError> {
    if sys.flavor != Flavor::Intuitionistic {
        return Err(NormalizeError::FlavorUnsupported);
    }
    if let Some(v) = check(d, sys).violations.first() {
        return Err(NormalizeError::Invalid(v.to_string()));
    }
    let mut cur = d.clone();
    let mut trace = vec![rank(&cur)];
    let mut steps = Vec::new();
    let mut iteration = 0;
    loop {
        let all = cuts(&cur);
        let before = rank_of(&all);
        if let Some(mut cut) = select_cut(&cur, &all) {
            iteration += 1;
            while cut.segment.len() > 1 {
                let at = cut.elimination();
                let (next, kind) = contract_commutative_kind(&cur, &at)?;
                let start = commuted_path(&cut.segment.first().path, &at.path);
                cur = next;
                verify(&cur, sys, kind.name())?;
                steps.push(Step {
                    iteration,
                    rank: rank(&cur),
                    kind,
                    at,
                });
                cut = cut_at(&cur, &start).ok_or_else(|| {
                    NormalizeError::Unsound(format!("cut lost after commuting, expected at {}", Occurrence::new(start)))
                })?;
            }
            let at = cut.elimination();
            let (next, kind) = contract_proper_kind(&cur, &cut)?;
            cur = next;
            verify(&cur, sys, kind.name())?;
            let after = rank(&cur);
            steps.push(Step {
                iteration,
                rank: after,
                kind,
                at,
            });
            let last = *trace.last().expect("trace starts nonempty");
            debug_assert_eq!(last, before);
            if after >= last {
                return Err(NormalizeError::RankIncreased { before: last, after });
            }
            trace.push(after);
            continue;
        }
        let Some((path, _)) = cur.nodes().into_iter().find(|(_, n)| commutes(n)) else {
            break;
        };
        iteration += 1;
        let at = Occurrence::new(path);
        let (next, kind) = contract_commutative_kind(&cur, &at)?;
        cur = next;
        verify(&cur, sys, kind.name())?;
        steps.push(Step {
            iteration,
            rank: rank(&cur),
            kind,
            at,
        });
    }
    debug_assert!(is_normal(&cur));
    Ok(Normalization {
        derivation: cur,
        trace,
        steps,
    })
}
