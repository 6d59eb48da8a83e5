use std::fmt;
use std::fmt::Write as _;

use super::derivation::{infer, Assumption, Derivation, Judgment, Rule, RuleKind};
use super::{Flavor, System};
use crate::syntax::{Formula, PFormula, Position};

/// Which side condition a violation breaks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Clause {
    /// Premise/conclusion shapes do not match the rule schema.
    Shape,
    /// A discharged label names an assumption of the wrong content.
    Discharge,
    /// BoxE/DiaI β does not satisfy the logic's constraint.
    Beta,
    /// Missing or forbidden existence premise on BoxE/DiaI.
    EPremise,
    /// Proper position occurs in an open assumption (or the minor conclusion).
    Freshness,
    /// BotI with conclusion ⊥^α from ⊥^α.
    BotI,
    /// BotC in an intuitionistic system.
    Flavor,
    /// Existence formula in a total logic.
    EFormula,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Shape => "shape",
            Clause::Discharge => "discharge",
            Clause::Beta => "beta",
            Clause::EPremise => "e-premise",
            Clause::Freshness => "freshness",
            Clause::BotI => "bot-i",
            Clause::Flavor => "flavor",
            Clause::EFormula => "e-formula",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub path: Vec<usize>,
    pub rule: RuleKind,
    pub clause: Clause,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {} ({}): {}: {}",
            dotted_path(&self.path),
            self.rule.name(),
            self.clause.name(),
            self.message
        )
    }
}

pub fn dotted_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    pub open_assumptions: Vec<Assumption>,
    pub conclusion: Option<Judgment>,
}

/// Checks every node of `d` against the rules of `sys`. Never aborts.
pub fn check(d: &Derivation, sys: System) -> CheckReport {
    let mut violations = Vec::new();
    let open = walk(d, sys, &mut Vec::new(), &mut violations);
    CheckReport {
        ok: violations.is_empty(),
        violations,
        open_assumptions: open,
        conclusion: d.conclusion().cloned(),
    }
}

fn judgment_sexp(j: &Judgment) -> String {
    match j {
        Judgment::P(p) => format!("({} {})", p.formula, p.position),
        Judgment::E(e) => format!("(exists {})", e.position),
    }
}

/// The report as an s-expression. Each violation's message follows it as a
/// `;` comment, so the text stays readable by the same reader.
pub fn print_report(r: &CheckReport, sys: System) -> String {
    let mut out = format!("(report :ok {} :system {} :flavor {}", r.ok, sys.logic, sys.flavor);
    let concl = r.conclusion.as_ref().map_or_else(|| "none".to_owned(), judgment_sexp);
    let _ = write!(out, "\n  :conclusion {concl}\n  :violations (");
    for v in &r.violations {
        let _ = write!(
            out,
            "\n    (violation :at {} :rule {} :clause {}) ; {}",
            dotted_path(&v.path),
            v.rule.name(),
            v.clause.name(),
            v.message.replace('\n', " ")
        );
    }
    if !r.violations.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str(")\n  :open (");
    let open: Vec<String> = r
        .open_assumptions
        .iter()
        .map(|a| format!("({} {})", a.label, judgment_sexp(&a.content)))
        .collect();
    out.push_str(&open.join(" "));
    out.push_str("))\n");
    out
}

struct Ctx<'a> {
    path: &'a [usize],
    rule: RuleKind,
    out: &'a mut Vec<Violation>,
}

impl Ctx<'_> {
    fn report(&mut self, clause: Clause, message: String) {
        self.out.push(Violation {
            path: self.path.to_vec(),
            rule: self.rule,
            clause,
            message,
        });
    }
}

/// The expected content of assumptions discharged in premise `i`, as
/// (p-formula, E-position).
fn expected_discharge(d: &Derivation, i: usize) -> (Option<PFormula>, Option<Position>) {
    let ps = d.premises();
    let pf = |k: usize| ps.get(k).and_then(Derivation::pformula);
    match (d.rule(), i) {
        (Rule::OrE { .. }, 1 | 2) => match pf(0).map(|m| (&m.formula, &m.position)) {
            Some((Formula::Or(a, b), pos)) => {
                let f = if i == 1 { a } else { b };
                (Some((**f).clone().at(pos.clone())), None)
            }
            _ => (None, None),
        },
        (Rule::ImpI { antecedent, .. }, 0) => (
            pf(0).map(|b| antecedent.clone().at(b.position.clone())),
            None,
        ),
        (Rule::BotC { conclusion, .. }, 0) => (
            Some(Formula::not(conclusion.formula.clone()).at(conclusion.position.clone())),
            None,
        ),
        (Rule::BoxI { .. }, 0) => (None, pf(0).map(|a| a.position.clone())),
        (Rule::DiaE { token, .. }, 1) => match pf(0) {
            Some(PFormula {
                formula: Formula::Dia(a),
                position,
            }) => {
                let ax = position.child(token);
                (Some((**a).clone().at(ax.clone())), Some(ax))
            }
            _ => (None, None),
        },
        _ => (None, None),
    }
}

fn walk(d: &Derivation, sys: System, path: &mut Vec<usize>, out: &mut Vec<Violation>) -> Vec<Assumption> {
    let mut premise_open = Vec::with_capacity(d.premises().len());
    for (i, p) in d.premises().iter().enumerate() {
        path.push(i);
        premise_open.push(walk(p, sys, path, out));
        path.pop();
    }
    let partial = sys.logic.is_partial();
    let mut cx = Ctx {
        path,
        rule: d.kind(),
        out,
    };

    if d.conclusion().is_none() && d.premises().iter().all(|p| p.conclusion().is_some()) {
        if let Err(msg) = infer(d.rule(), d.premises()) {
            cx.report(Clause::Shape, msg);
        }
    }

    // Discharges.
    let mut open = Vec::new();
    let mut after_discharge: Vec<Vec<Assumption>> = Vec::new();
    for (i, assumptions) in premise_open.into_iter().enumerate() {
        let (pl, el) = d.rule().discharges_at(i);
        if !el.is_empty() && !partial {
            cx.report(
                Clause::EFormula,
                format!("existence labels discharged in the total logic {}", sys.logic),
            );
        }
        let (exp_p, exp_e) = expected_discharge(d, i);
        let mut kept = Vec::new();
        for a in assumptions {
            if pl.contains(&a.label) {
                match (&a.content, &exp_p) {
                    (Judgment::P(c), Some(e)) if c == e => {}
                    (c, Some(e)) => cx.report(
                        Clause::Discharge,
                        format!("label {} names {c}, expected {e}", a.label),
                    ),
                    (_, None) => {}
                }
            } else if el.contains(&a.label) {
                match (&a.content, &exp_e) {
                    (Judgment::E(c), Some(e)) if &c.position == e => {}
                    (c, Some(e)) => cx.report(
                        Clause::Discharge,
                        format!("existence label {} names {c}, expected E{e}", a.label),
                    ),
                    (_, None) => {}
                }
            } else {
                kept.push(a);
            }
        }
        after_discharge.push(kept.clone());
        open.extend(kept);
    }

    let ps = d.premises();
    match d.rule() {
        Rule::EHyp { .. } if !partial => cx.report(
            Clause::EFormula,
            format!("existence assumption in the total logic {}", sys.logic),
        ),
        Rule::BotC { .. } if sys.flavor == Flavor::Intuitionistic => cx.report(
            Clause::Flavor,
            "reductio ad absurdum is not available intuitionistically".into(),
        ),
        Rule::BotI { conclusion } => {
            if let Some(prem) = ps[0].pformula() {
                if conclusion.formula.is_bottom() && prem.position == conclusion.position {
                    cx.report(
                        Clause::BotI,
                        format!("conclusion ⊥ at the premise position {}", prem.position),
                    );
                }
            }
        }
        Rule::BoxI { .. } => {
            if let Some(prem) = ps[0].pformula() {
                let ax = &prem.position;
                if let Some(a) = after_discharge[0].iter().find(|a| ax.is_prefix_of(a.content.position())) {
                    cx.report(
                        Clause::Freshness,
                        format!("proper position {ax} occurs in open assumption {}: {}", a.label, a.content),
                    );
                }
            }
        }
        Rule::BoxE { beta } | Rule::DiaI { beta } => {
            if let Err(msg) = sys.logic.check_beta(beta.len(), sys.t_strict_empty_beta) {
                cx.report(Clause::Beta, msg);
            }
            let target = match (d.rule(), d.pformula(), ps[0].pformula()) {
                (Rule::BoxE { .. }, Some(c), _) => Some(c.position.clone()),
                (Rule::DiaI { .. }, _, Some(p)) => Some(p.position.clone()),
                _ => None,
            };
            match (partial, ps.get(1).map(Derivation::conclusion)) {
                (true, None) => cx.report(
                    Clause::EPremise,
                    format!(
                        "missing existence premise E{} required in {}",
                        target.map(|t| t.to_string()).unwrap_or_default(),
                        sys.logic
                    ),
                ),
                (true, Some(Some(Judgment::E(e)))) => {
                    if let Some(t) = target {
                        if e.position != t {
                            cx.report(
                                Clause::EPremise,
                                format!("existence premise is {e}, expected E{t}"),
                            );
                        }
                    }
                }
                (true, Some(_)) => cx.report(
                    Clause::EPremise,
                    "second premise must be an existence assumption".into(),
                ),
                (false, Some(_)) => cx.report(
                    Clause::EPremise,
                    format!("existence premise is forbidden in the total logic {}", sys.logic),
                ),
                (false, None) => {}
            }
        }
        Rule::DiaE { token, .. } => {
            if let (Some(major), Some(minor)) = (ps[0].pformula(), ps[1].pformula()) {
                let ax = major.position.child(token);
                if ax.is_prefix_of(&minor.position) {
                    cx.report(
                        Clause::Freshness,
                        format!("proper position {ax} occurs in the conclusion position {}", minor.position),
                    );
                }
                if let Some(a) = after_discharge[1].iter().find(|a| ax.is_prefix_of(a.content.position())) {
                    cx.report(
                        Clause::Freshness,
                        format!("proper position {ax} occurs in open assumption {}: {}", a.label, a.content),
                    );
                }
            }
        }
        Rule::Hyp { label, formula } => open.push(Assumption {
            label: label.clone(),
            content: Judgment::P(formula.clone()),
        }),
        Rule::EHyp { label, position } => open.push(Assumption {
            label: label.clone(),
            content: Judgment::exists(position.clone()),
        }),
        _ => {}
    }
    open
}
