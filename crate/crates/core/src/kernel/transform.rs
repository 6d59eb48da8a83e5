use std::collections::HashMap;

use super::check::check;
use super::derivation::{Derivation, Fresh, Rule, RuleKind};
use super::{KernelError, System};
use crate::syntax::{concat, prefix_replace, Position};

/// A proper position together with the node introducing it and the premise
/// index of its scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperPosition {
    pub path: Vec<usize>,
    pub rule: RuleKind,
    pub position: Position,
    pub scope: usize,
}

/// Proper positions of all BoxI and DiaE instances, in pre-order.
pub fn proper_positions(d: &Derivation) -> Vec<ProperPosition> {
    let mut out = Vec::new();
    for (path, n) in d.nodes() {
        match n.rule() {
            Rule::BoxI { .. } => {
                if let Some(p) = n.premises()[0].pformula() {
                    out.push(ProperPosition {
                        path,
                        rule: RuleKind::BoxI,
                        position: p.position.clone(),
                        scope: 0,
                    });
                }
            }
            Rule::DiaE { token, .. } => {
                if let Some(m) = n.premises()[0].pformula() {
                    out.push(ProperPosition {
                        path,
                        rule: RuleKind::DiaE,
                        position: m.position.child(token),
                        scope: 1,
                    });
                }
            }
            _ => {}
        }
    }
    out
}

/// Verifies the three clauses of the position condition.
pub fn check_position_condition(d: &Derivation) -> (bool, Vec<String>) {
    let props = proper_positions(d);
    let mut violations = Vec::new();
    let mut count: HashMap<&Position, usize> = HashMap::new();
    for p in &props {
        *count.entry(&p.position).or_default() += 1;
    }
    let mut reported = Vec::new();
    for p in &props {
        let k = count[&p.position];
        if k > 1 && !reported.contains(&&p.position) {
            reported.push(&p.position);
            violations.push(format!(
                "clause 1: {} is the proper position of {k} instances",
                p.position
            ));
        }
    }
    let nodes = d.nodes();
    for p in &props {
        let mut scope = p.path.clone();
        scope.push(p.scope);
        let clause = if p.rule == RuleKind::BoxI { 2 } else { 3 };
        if let Some((path, _)) = nodes.iter().find(|(path, n)| {
            !path.starts_with(&scope)
                && n
                    .conclusion()
                    .is_some_and(|j| p.position.is_prefix_of(j.position()))
        }) {
            violations.push(format!(
                "clause {clause}: proper position {} of the {} at {} occurs outside its scope at {}",
                p.position,
                p.rule.name(),
                super::check::dotted_path(&p.path),
                super::check::dotted_path(path)
            ));
        }
    }
    (violations.is_empty(), violations)
}

/// Rebuilds `d` with every position mapped through `f`, recomputing the
/// relative data (β on BoxE/DiaI, proper tokens) from the mapped endpoints.
pub fn map_positions(d: &Derivation, f: &dyn Fn(&Position) -> Position) -> Derivation {
    let premises: Vec<Derivation> = d.premises().iter().map(|p| map_positions(p, f)).collect();
    let old = d.premises();
    let rule = match d.rule() {
        Rule::Hyp { label, formula } => Rule::Hyp {
            label: label.clone(),
            formula: formula.formula.clone().at(f(&formula.position)),
        },
        Rule::EHyp { label, position } => Rule::EHyp {
            label: label.clone(),
            position: f(position),
        },
        Rule::BotC {
            discharge,
            conclusion,
        } => Rule::BotC {
            discharge: discharge.clone(),
            conclusion: conclusion.formula.clone().at(f(&conclusion.position)),
        },
        Rule::BotI { conclusion } => Rule::BotI {
            conclusion: conclusion.formula.clone().at(f(&conclusion.position)),
        },
        Rule::BoxI { token, e_discharge } => {
            let token = old[0]
                .pformula()
                .and_then(|p| f(&p.position).last().cloned())
                .unwrap_or_else(|| token.clone());
            Rule::BoxI {
                token,
                e_discharge: e_discharge.clone(),
            }
        }
        Rule::BoxE { beta } => {
            let beta = old[0]
                .pformula()
                .and_then(|m| {
                    let from = &m.position;
                    f(&concat(from, beta)).strip_prefix(&f(from))
                })
                .unwrap_or_else(|| beta.clone());
            Rule::BoxE { beta }
        }
        Rule::DiaI { beta } => {
            let beta = old[0]
                .pformula()
                .and_then(|p| {
                    let alpha = p.position.strip_suffix(beta)?;
                    f(&p.position).strip_prefix(&f(&alpha))
                })
                .unwrap_or_else(|| beta.clone());
            Rule::DiaI { beta }
        }
        Rule::DiaE {
            token,
            discharge,
            e_discharge,
        } => {
            let token = old[0]
                .pformula()
                .and_then(|m| {
                    let ax = f(&m.position.child(token));
                    (ax.parent()? == f(&m.position)).then(|| ax.last().cloned())?
                })
                .unwrap_or_else(|| token.clone());
            Rule::DiaE {
                token,
                discharge: discharge.clone(),
                e_discharge: e_discharge.clone(),
            }
        }
        r => r.clone(),
    };
    Derivation::new(rule, premises)
}

/// Renames every proper position to a fresh token within its own scope.
pub fn freshen(d: &Derivation) -> Derivation {
    let mut gen = Fresh::avoiding(d);
    freshen_with(d, &mut gen)
}

pub(crate) fn freshen_with(d: &Derivation, gen: &mut Fresh) -> Derivation {
    let premises: Vec<Derivation> = d.premises().iter().map(|p| freshen_with(p, gen)).collect();
    match d.rule() {
        Rule::BoxI { e_discharge, .. } => {
            let Some(ax) = premises[0].pformula().map(|p| p.position.clone()) else {
                return d.with_premises(premises);
            };
            let Some(alpha) = ax.parent() else {
                return d.with_premises(premises);
            };
            let t = gen.token();
            let af = alpha.child(&t);
            let renamed = map_positions(&premises[0], &|pi| prefix_replace(pi, &ax, &af));
            Derivation::new(
                Rule::BoxI {
                    token: t,
                    e_discharge: e_discharge.clone(),
                },
                vec![renamed],
            )
        }
        Rule::DiaE {
            token,
            discharge,
            e_discharge,
        } => {
            let Some(alpha) = premises[0].pformula().map(|p| p.position.clone()) else {
                return d.with_premises(premises);
            };
            let ax = alpha.child(token);
            let t = gen.token();
            let af = alpha.child(&t);
            let mut ps = premises;
            ps[1] = map_positions(&ps[1], &|pi| prefix_replace(pi, &ax, &af));
            Derivation::new(
                Rule::DiaE {
                    token: t,
                    discharge: discharge.clone(),
                    e_discharge: e_discharge.clone(),
                },
                ps,
            )
        }
        _ => d.with_premises(premises),
    }
}

/// Removes BotI steps whose premise and conclusion coincide as `⊥^δ`.
pub(crate) fn collapse_bot_i(d: &Derivation) -> Derivation {
    let premises: Vec<Derivation> = d.premises().iter().map(collapse_bot_i).collect();
    if let Rule::BotI { conclusion } = d.rule() {
        if conclusion.formula.is_bottom() && premises[0].pformula() == Some(conclusion) {
            return premises.into_iter().next().unwrap();
        }
    }
    d.with_premises(premises)
}

/// `d[β/γ]`: replaces the prefix β by γ in every position, after freshening
/// when β or γ would touch a proper position.
pub fn substitute(
    d: &Derivation,
    beta: &Position,
    gamma: &Position,
    sys: System,
) -> Result<Derivation, KernelError> {
    let out = substitute_with(d, beta, gamma, &mut Fresh::avoiding(d));
    let report = check(&out, sys);
    if report.ok {
        Ok(out)
    } else {
        Err(KernelError::SubstitutionUnsound(report.violations[0].to_string()))
    }
}

/// Unchecked `d[β/γ]` drawing fresh tokens from `gen`.
pub(crate) fn substitute_with(d: &Derivation, beta: &Position, gamma: &Position, gen: &mut Fresh) -> Derivation {
    let clash = proper_positions(d)
        .iter()
        .any(|p| p.position.is_prefix_of(beta) || p.position.is_prefix_of(gamma));
    let base = if clash || !check_position_condition(d).0 {
        gen.avoid_position(beta);
        gen.avoid_position(gamma);
        freshen_with(d, gen)
    } else {
        d.clone()
    };
    let mapped = map_positions(&base, &|pi| prefix_replace(pi, beta, gamma));
    collapse_bot_i(&mapped)
}

/// Prefixes every position by β.
pub fn lift(d: &Derivation, beta: &Position) -> Derivation {
    if beta.is_empty() {
        return d.clone();
    }
    map_positions(d, &|pi| concat(beta, pi))
}
