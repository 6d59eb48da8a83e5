use std::collections::{HashMap, HashSet};
use std::fmt;

use super::segments::{Cut, Occurrence};
use super::NormalizeError;
use crate::kernel::{open_assumptions, substitute_with, Derivation, Fresh, Label, Rule};
use crate::syntax::{prefix_replace, Position};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ContractionKind {
    And,
    Or,
    Imp,
    Box,
    Dia,
    CommuteOr,
    CommuteDia,
}

impl ContractionKind {
    pub fn name(self) -> &'static str {
        match self {
            ContractionKind::And => "and",
            ContractionKind::Or => "or",
            ContractionKind::Imp => "imp",
            ContractionKind::Box => "box",
            ContractionKind::Dia => "dia",
            ContractionKind::CommuteOr => "commute-or",
            ContractionKind::CommuteDia => "commute-dia",
        }
    }
}

impl fmt::Display for ContractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn rename_list(ls: &[Label], map: &HashMap<Label, Label>) -> Vec<Label> {
    ls.iter()
        .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
        .collect()
}

/// Renames the labels `rule` binds in premise `i`.
fn rename_binders_at(rule: &Rule, i: usize, map: &HashMap<Label, Label>) -> Rule {
    match (rule, i) {
        (Rule::OrE { left, right }, 1) => Rule::OrE {
            left: rename_list(left, map),
            right: right.clone(),
        },
        (Rule::OrE { left, right }, 2) => Rule::OrE {
            left: left.clone(),
            right: rename_list(right, map),
        },
        (
            Rule::ImpI {
                discharge,
                antecedent,
            },
            0,
        ) => Rule::ImpI {
            discharge: rename_list(discharge, map),
            antecedent: antecedent.clone(),
        },
        (
            Rule::BotC {
                discharge,
                conclusion,
            },
            0,
        ) => Rule::BotC {
            discharge: rename_list(discharge, map),
            conclusion: conclusion.clone(),
        },
        (Rule::BoxI { token, e_discharge }, 0) => Rule::BoxI {
            token: token.clone(),
            e_discharge: rename_list(e_discharge, map),
        },
        (
            Rule::DiaE {
                token,
                discharge,
                e_discharge,
            },
            1,
        ) => Rule::DiaE {
            token: token.clone(),
            discharge: rename_list(discharge, map),
            e_discharge: rename_list(e_discharge, map),
        },
        (r, _) => r.clone(),
    }
}

/// Rewrites every free leaf whose label is a key of `keys` through `f`.
fn map_free_leaves(d: &Derivation, keys: &HashSet<Label>, f: &dyn Fn(&Derivation) -> Derivation) -> Derivation {
    if keys.is_empty() {
        return d.clone();
    }
    match d.rule() {
        Rule::Hyp { label, .. } | Rule::EHyp { label, .. } => {
            if keys.contains(label) {
                f(d)
            } else {
                d.clone()
            }
        }
        rule => {
            let premises = d
                .premises()
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let (pl, el) = rule.discharges_at(i);
                    if pl.iter().chain(el).any(|l| keys.contains(l)) {
                        let mut inner = keys.clone();
                        for l in pl.iter().chain(el) {
                            inner.remove(l);
                        }
                        map_free_leaves(p, &inner, f)
                    } else {
                        map_free_leaves(p, keys, f)
                    }
                })
                .collect();
            d.with_premises(premises)
        }
    }
}

fn relabel_leaf(d: &Derivation, map: &HashMap<Label, Label>) -> Derivation {
    match d.rule() {
        Rule::Hyp { label, formula } => Derivation::hyp_p(map[label].clone(), formula.clone()),
        Rule::EHyp { label, position } => Derivation::new(
            Rule::EHyp {
                label: map[label].clone(),
                position: position.clone(),
            },
            vec![],
        ),
        _ => d.clone(),
    }
}

/// Renames every binder of `d` whose label is in `dangerous`, so that
/// plugging a derivation with those open labels cannot be captured.
fn avoid_capture(d: &Derivation, dangerous: &HashSet<Label>, gen: &mut Fresh) -> Derivation {
    if dangerous.is_empty() || d.premises().is_empty() {
        return d.clone();
    }
    let mut rule = d.rule().clone();
    let mut premises = Vec::with_capacity(d.premises().len());
    for (i, p) in d.premises().iter().enumerate() {
        let (pl, el) = d.rule().discharges_at(i);
        let map: HashMap<Label, Label> = pl
            .iter()
            .chain(el)
            .filter(|l| dangerous.contains(*l))
            .map(|l| (l.clone(), gen.label()))
            .collect();
        let p = if map.is_empty() {
            p.clone()
        } else {
            rule = rename_binders_at(&rule, i, &map);
            let keys: HashSet<Label> = map.keys().cloned().collect();
            map_free_leaves(p, &keys, &|leaf| relabel_leaf(leaf, &map))
        };
        premises.push(avoid_capture(&p, dangerous, gen));
    }
    Derivation::new(rule, premises)
}

fn open_labels(d: &Derivation) -> HashSet<Label> {
    open_assumptions(d).into_iter().map(|a| a.label).collect()
}

/// Replaces the free `labels` leaves of `d` by copies of `with`.
fn plug(d: &Derivation, labels: &[Label], with: &Derivation, gen: &mut Fresh) -> Derivation {
    if labels.is_empty() {
        return d.clone();
    }
    let safe = avoid_capture(d, &open_labels(with), gen);
    let keys: HashSet<Label> = labels.iter().cloned().collect();
    map_free_leaves(&safe, &keys, &|_| with.clone())
}

fn not_a_redex(at: &[usize], why: &str) -> NormalizeError {
    NormalizeError::NotARedex(format!("{}: {why}", Occurrence::new(at.to_vec())))
}

/// Applies the proper contraction of a cut of length 1.
pub fn contract_proper(d: &Derivation, cut: &Cut) -> Result<Derivation, NormalizeError> {
    let (out, _) = contract_proper_kind(d, cut)?;
    Ok(out)
}

pub(crate) fn contract_proper_kind(d: &Derivation, cut: &Cut) -> Result<(Derivation, ContractionKind), NormalizeError> {
    if cut.segment.len() != 1 {
        return Err(not_a_redex(
            &cut.segment.first().path,
            &format!("segment has length {}", cut.segment.len()),
        ));
    }
    let at = cut.elimination().path;
    let elim = d
        .get(&at)
        .ok_or_else(|| not_a_redex(&at, "no such node"))?;
    let mut gen = Fresh::avoiding(d);
    let (new, kind) = contract_node(elim, &at, &mut gen)?;
    Ok((d.replace_at(&at, new), kind))
}

/// Contracts an elimination node whose major premise is the matching introduction.
pub(crate) fn contract_node(
    elim: &Derivation,
    at: &[usize],
    gen: &mut Fresh,
) -> Result<(Derivation, ContractionKind), NormalizeError> {
    let Some(intro) = elim.premises().first() else {
        return Err(not_a_redex(at, "not an elimination"));
    };
    let ep = elim.premises();
    let ip = intro.premises();
    Ok(match (intro.rule(), elim.rule()) {
        (Rule::AndI, Rule::AndE1) => (ip[0].clone(), ContractionKind::And),
        (Rule::AndI, Rule::AndE2) => (ip[1].clone(), ContractionKind::And),
        (Rule::OrI1 { .. }, Rule::OrE { left, .. }) => (plug(&ep[1], left, &ip[0], gen), ContractionKind::Or),
        (Rule::OrI2 { .. }, Rule::OrE { right, .. }) => (plug(&ep[2], right, &ip[0], gen), ContractionKind::Or),
        (Rule::ImpI { discharge, .. }, Rule::ImpE) => (plug(&ip[0], discharge, &ep[1], gen), ContractionKind::Imp),
        (Rule::BoxI { e_discharge, .. }, Rule::BoxE { beta }) => {
            let body = &ip[0];
            let ax = body
                .pformula()
                .map(|p| p.position.clone())
                .ok_or_else(|| not_a_redex(at, "ill-formed box-i premise"))?;
            let alpha = ax.parent().ok_or_else(|| not_a_redex(at, "box-i premise at the root"))?;
            let ab = crate::syntax::concat(&alpha, beta);
            let mut out = substitute_with(body, &ax, &ab, gen);
            if let Some(e) = ep.get(1) {
                out = plug(&out, e_discharge, e, gen);
            }
            (out, ContractionKind::Box)
        }
        (Rule::DiaI { .. }, Rule::DiaE { token, discharge, e_discharge }) => {
            let alpha = intro
                .pformula()
                .map(|p| p.position.clone())
                .ok_or_else(|| not_a_redex(at, "ill-formed dia-i"))?;
            let ab = ip[0]
                .pformula()
                .map(|p| p.position.clone())
                .ok_or_else(|| not_a_redex(at, "ill-formed dia-i premise"))?;
            let ax = alpha.child(token);
            let mut out = substitute_with(&ep[1], &ax, &ab, gen);
            out = plug(&out, discharge, &ip[0], gen);
            if let Some(e) = ip.get(1) {
                out = plug(&out, e_discharge, e, gen);
            }
            (out, ContractionKind::Dia)
        }
        _ => {
            return Err(not_a_redex(
                at,
                &format!("{} over {} is not a redex", elim.kind().name(), intro.kind().name()),
            ))
        }
    })
}

/// True when a commutative contraction applies at `n`.
pub(crate) fn commutes(n: &Derivation) -> bool {
    n.kind().is_elim() && n.premises().first().is_some_and(|m| m.kind().has_minor_segments())
}

/// Pushes the elimination at `at`, whose major premise concludes an OrE or
/// DiaE, into the minor premise(s) of that rule.
pub fn contract_commutative(d: &Derivation, at: &Occurrence) -> Result<Derivation, NormalizeError> {
    let (out, _) = contract_commutative_kind(d, at)?;
    Ok(out)
}

pub(crate) fn contract_commutative_kind(
    d: &Derivation,
    at: &Occurrence,
) -> Result<(Derivation, ContractionKind), NormalizeError> {
    let node = d
        .get(&at.path)
        .ok_or_else(|| NormalizeError::NotApplicable(format!("{at}: no such node")))?;
    if !commutes(node) {
        return Err(NormalizeError::NotApplicable(format!(
            "{at}: {} does not have an or-e/dia-e conclusion as major premise",
            node.kind().name()
        )));
    }
    let mut gen = Fresh::avoiding(d);
    let (new, kind) = commute_node(node, &mut gen);
    Ok((d.replace_at(&at.path, new), kind))
}

pub(crate) fn commute_node(r: &Derivation, gen: &mut Fresh) -> (Derivation, ContractionKind) {
    let m = &r.premises()[0];
    let side = &r.premises()[1..];
    let side_labels: HashSet<Label> = side.iter().flat_map(open_labels).collect();
    let reapply = |branch: Derivation| {
        let mut ps = vec![branch];
        ps.extend(side.iter().cloned());
        Derivation::new(r.rule().clone(), ps)
    };
    let mp = m.premises();
    match m.rule() {
        Rule::OrE { .. } => {
            let safe = avoid_capture_at(m, &side_labels, gen);
            let sp = safe.premises();
            let out = Derivation::new(
                safe.rule().clone(),
                vec![sp[0].clone(), reapply(sp[1].clone()), reapply(sp[2].clone())],
            );
            (out, ContractionKind::CommuteOr)
        }
        Rule::DiaE { token, .. } => {
            let alpha = mp[0].pformula().map(|p| p.position.clone()).unwrap_or_default();
            let ax = alpha.child(token);
            let touches = |p: &Position| ax.is_prefix_of(p);
            let clash = side
                .iter()
                .flat_map(|s| s.nodes())
                .any(|(_, n)| n.conclusion().is_some_and(|j| touches(j.position())))
                || r.conclusion().is_some_and(|j| touches(j.position()));
            let mut m2 = m.clone();
            if clash {
                let t = gen.token();
                let axf = alpha.child(&t);
                let minor = crate::kernel::map_positions(&mp[1], &|pi| prefix_replace(pi, &ax, &axf));
                let rule = match m.rule() {
                    Rule::DiaE {
                        discharge,
                        e_discharge,
                        ..
                    } => Rule::DiaE {
                        token: t,
                        discharge: discharge.clone(),
                        e_discharge: e_discharge.clone(),
                    },
                    _ => unreachable!(),
                };
                m2 = Derivation::new(rule, vec![mp[0].clone(), minor]);
            }
            let safe = avoid_capture_at(&m2, &side_labels, gen);
            let sp = safe.premises();
            let out = Derivation::new(safe.rule().clone(), vec![sp[0].clone(), reapply(sp[1].clone())]);
            (out, ContractionKind::CommuteDia)
        }
        _ => unreachable!("checked by commutes"),
    }
}

/// Renames only the binders of the node itself (not deeper ones) that clash.
fn avoid_capture_at(m: &Derivation, dangerous: &HashSet<Label>, gen: &mut Fresh) -> Derivation {
    let mut rule = m.rule().clone();
    let mut premises = Vec::new();
    for (i, p) in m.premises().iter().enumerate() {
        let (pl, el) = m.rule().discharges_at(i);
        let map: HashMap<Label, Label> = pl
            .iter()
            .chain(el)
            .filter(|l| dangerous.contains(*l))
            .map(|l| (l.clone(), gen.label()))
            .collect();
        if map.is_empty() {
            premises.push(p.clone());
        } else {
            rule = rename_binders_at(&rule, i, &map);
            let keys: HashSet<Label> = map.keys().cloned().collect();
            premises.push(map_free_leaves(p, &keys, &|leaf| relabel_leaf(leaf, &map)));
        }
    }
    Derivation::new(rule, premises)
}

/// The kind of the first contraction applicable at node `n`, if any.
pub(crate) fn redex_kind(n: &Derivation) -> Option<bool> {
    if !n.kind().is_elim() {
        return None;
    }
    let major = n.premises().first()?;
    if major.kind().introduces().is_some() && major.kind().introduces() == n.kind().eliminates() {
        Some(true)
    } else if major.kind().has_minor_segments() {
        Some(false)
    } else {
        None
    }
}
