use std::fmt::Write as _;

use super::derivation::{open_assumptions, Derivation, Judgment, Label, Rule};
use super::{Flavor, Logic, System};
use crate::sexpr::{self, ParseError, Sexp};
use crate::syntax::{formula_from_sexp, position_from_sexp, token_from_sexp, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofFile {
    pub system: System,
    pub derivation: Derivation,
}

/// Parses `(proof :system <logic> :flavor <flavor> <node>)`.
pub fn parse_proof(text: &str) -> Result<ProofFile, ParseError> {
    proof_from_sexp(&sexpr::parse_one(text)?)
}

pub fn proof_from_sexp(e: &Sexp) -> Result<ProofFile, ParseError> {
    let items = e.expect_list("a proof")?;
    if e.head() != Some("proof") {
        return Err(ParseError::new(e.span(), "expected `(proof ...)`"));
    }
    let mut logic = None;
    let mut flavor = None;
    let mut i = 1;
    while i + 1 < items.len() {
        let Some(key) = items[i].as_atom().filter(|k| k.starts_with(':')) else {
            break;
        };
        let value = items[i + 1].expect_atom("a keyword value")?;
        let span = items[i + 1].span();
        match key {
            ":system" => logic = Some(value.parse::<Logic>().map_err(|m| ParseError::new(span, m))?),
            ":flavor" => flavor = Some(value.parse::<Flavor>().map_err(|m| ParseError::new(span, m))?),
            other => return Err(ParseError::new(items[i].span(), format!("unknown keyword `{other}`"))),
        }
        i += 2;
    }
    let logic = logic.ok_or_else(|| ParseError::new(e.span(), "missing `:system`"))?;
    let flavor = flavor.ok_or_else(|| ParseError::new(e.span(), "missing `:flavor`"))?;
    if items.len() != i + 1 {
        return Err(ParseError::new(e.span(), "a proof holds exactly one derivation node"));
    }
    Ok(ProofFile {
        system: System::new(logic, flavor),
        derivation: node_from_sexp(&items[i])?,
    })
}

fn label_from_sexp(e: &Sexp) -> Result<Label, ParseError> {
    let name = e.expect_atom("a label")?;
    if !sexpr::is_plain_name(name) {
        return Err(ParseError::new(e.span(), format!("`{name}` is not a valid label")));
    }
    Ok(Label::new(name))
}

fn labels_from_sexp(e: &Sexp) -> Result<Vec<Label>, ParseError> {
    e.expect_list("a label list")?.iter().map(label_from_sexp).collect()
}

/// The antecedent named by the discharged hypotheses, if any occur.
fn infer_antecedent(premise: &Derivation, discharge: &[Label]) -> Option<Formula> {
    open_assumptions(premise)
        .into_iter()
        .find_map(|a| match a.content {
            Judgment::P(p) if discharge.contains(&a.label) => Some(p.formula),
            _ => None,
        })
}

fn node_from_sexp(e: &Sexp) -> Result<Derivation, ParseError> {
    let span = e.span();
    let items = e.expect_list("a derivation node")?;
    let head = e
        .head()
        .ok_or_else(|| ParseError::new(span, "a derivation node starts with a rule name"))?;
    let args = &items[1..];
    let want = |n: &[usize]| -> Result<(), ParseError> {
        if n.contains(&args.len()) {
            Ok(())
        } else {
            Err(ParseError::new(
                span,
                format!("`{head}` takes {n:?} argument(s), found {}", args.len()),
            ))
        }
    };
    let node = |k: usize| node_from_sexp(&args[k]);
    Ok(match head {
        "hyp" => {
            want(&[3])?;
            Derivation::hyp_p(
                label_from_sexp(&args[0])?,
                formula_from_sexp(&args[1])?.at(position_from_sexp(&args[2])?),
            )
        }
        "ehyp" => {
            want(&[2])?;
            Derivation::new(
                Rule::EHyp {
                    label: label_from_sexp(&args[0])?,
                    position: position_from_sexp(&args[1])?,
                },
                vec![],
            )
        }
        "and-i" => {
            want(&[2])?;
            Derivation::and_i(node(0)?, node(1)?)
        }
        "and-e1" => {
            want(&[1])?;
            Derivation::and_e1(node(0)?)
        }
        "and-e2" => {
            want(&[1])?;
            Derivation::and_e2(node(0)?)
        }
        "or-i1" => {
            want(&[2])?;
            Derivation::or_i1(node(1)?, formula_from_sexp(&args[0])?)
        }
        "or-i2" => {
            want(&[2])?;
            Derivation::or_i2(formula_from_sexp(&args[0])?, node(1)?)
        }
        "or-e" => {
            want(&[5])?;
            Derivation::new(
                Rule::OrE {
                    left: labels_from_sexp(&args[1])?,
                    right: labels_from_sexp(&args[3])?,
                },
                vec![node(0)?, node(2)?, node(4)?],
            )
        }
        "imp-i" => {
            want(&[2, 3])?;
            let discharge = labels_from_sexp(&args[0])?;
            let premise = node(1)?;
            let antecedent = match args.get(2) {
                Some(f) => formula_from_sexp(f)?,
                None => infer_antecedent(&premise, &discharge).ok_or_else(|| {
                    ParseError::new(
                        span,
                        "imp-i discharges no hypothesis; give the antecedent as a trailing formula",
                    )
                })?,
            };
            Derivation::new(Rule::ImpI { discharge, antecedent }, vec![premise])
        }
        "imp-e" => {
            want(&[2])?;
            Derivation::imp_e(node(0)?, node(1)?)
        }
        "bot-c" => {
            want(&[4])?;
            Derivation::new(
                Rule::BotC {
                    discharge: labels_from_sexp(&args[0])?,
                    conclusion: formula_from_sexp(&args[2])?.at(position_from_sexp(&args[3])?),
                },
                vec![node(1)?],
            )
        }
        "bot-i" => {
            want(&[3])?;
            Derivation::bot_i(node(0)?, formula_from_sexp(&args[1])?.at(position_from_sexp(&args[2])?))
        }
        "box-i" => {
            want(&[3])?;
            Derivation::new(
                Rule::BoxI {
                    token: token_from_sexp(&args[0])?,
                    e_discharge: labels_from_sexp(&args[1])?,
                },
                vec![node(2)?],
            )
        }
        "box-e" => {
            want(&[2, 3])?;
            let e = if args.len() == 3 { Some(node(2)?) } else { None };
            Derivation::box_e(node(0)?, position_from_sexp(&args[1])?, e)
        }
        "dia-i" => {
            want(&[2, 3])?;
            let e = if args.len() == 3 { Some(node(2)?) } else { None };
            Derivation::dia_i(position_from_sexp(&args[0])?, node(1)?, e)
        }
        "dia-e" => {
            want(&[5])?;
            Derivation::new(
                Rule::DiaE {
                    token: token_from_sexp(&args[1])?,
                    discharge: labels_from_sexp(&args[2])?,
                    e_discharge: labels_from_sexp(&args[3])?,
                },
                vec![node(0)?, node(4)?],
            )
        }
        other => return Err(ParseError::new(span, format!("unknown head symbol `{other}`"))),
    })
}

fn label_list(ls: &[Label]) -> String {
    let names: Vec<&str> = ls.iter().map(Label::name).collect();
    format!("({})", names.join(" "))
}

fn write_node(out: &mut String, d: &Derivation, indent: usize) {
    let pad = " ".repeat(indent);
    let sub = |out: &mut String, k: usize| {
        out.push('\n');
        write_node(out, &d.premises()[k], indent + 2);
    };
    let head = d.kind().name();
    match d.rule() {
        Rule::Hyp { label, formula } => {
            let _ = write!(out, "{pad}(hyp {label} {} {})", formula.formula, formula.position);
            return;
        }
        Rule::EHyp { label, position } => {
            let _ = write!(out, "{pad}(ehyp {label} {position})");
            return;
        }
        Rule::AndI | Rule::AndE1 | Rule::AndE2 | Rule::ImpE => {
            let _ = write!(out, "{pad}({head}");
            for k in 0..d.premises().len() {
                sub(out, k);
            }
        }
        Rule::OrI1 { other } | Rule::OrI2 { other } => {
            let _ = write!(out, "{pad}({head} {other}");
            sub(out, 0);
        }
        Rule::OrE { left, right } => {
            let _ = write!(out, "{pad}({head}");
            sub(out, 0);
            let _ = write!(out, "\n{pad}  {}", label_list(left));
            sub(out, 1);
            let _ = write!(out, "\n{pad}  {}", label_list(right));
            sub(out, 2);
        }
        Rule::ImpI {
            discharge,
            antecedent,
        } => {
            let _ = write!(out, "{pad}({head} {}", label_list(discharge));
            sub(out, 0);
            if infer_antecedent(&d.premises()[0], discharge).as_ref() != Some(antecedent) {
                let _ = write!(out, "\n{pad}  {antecedent}");
            }
        }
        Rule::BotC {
            discharge,
            conclusion,
        } => {
            let _ = write!(out, "{pad}({head} {}", label_list(discharge));
            sub(out, 0);
            let _ = write!(out, "\n{pad}  {} {}", conclusion.formula, conclusion.position);
        }
        Rule::BotI { conclusion } => {
            let _ = write!(out, "{pad}({head}");
            sub(out, 0);
            let _ = write!(out, "\n{pad}  {} {}", conclusion.formula, conclusion.position);
        }
        Rule::BoxI { token, e_discharge } => {
            let _ = write!(out, "{pad}({head} {token} {}", label_list(e_discharge));
            sub(out, 0);
        }
        Rule::BoxE { beta } => {
            let _ = write!(out, "{pad}({head}");
            sub(out, 0);
            let _ = write!(out, "\n{pad}  {beta}");
            if d.premises().len() > 1 {
                sub(out, 1);
            }
        }
        Rule::DiaI { beta } => {
            let _ = write!(out, "{pad}({head} {beta}");
            sub(out, 0);
            if d.premises().len() > 1 {
                sub(out, 1);
            }
        }
        Rule::DiaE {
            token,
            discharge,
            e_discharge,
        } => {
            let _ = write!(out, "{pad}({head}");
            sub(out, 0);
            let _ = write!(
                out,
                "\n{pad}  {token} {} {}",
                label_list(discharge),
                label_list(e_discharge)
            );
            sub(out, 1);
        }
    }
    out.push(')');
}

/// Prints a derivation node in the proof-file syntax.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_node(&mut out, d, 0);
    out
}

/// Prints a complete proof file, newline-terminated.
pub fn print_proof(d: &Derivation, sys: System) -> String {
    let mut out = format!("(proof :system {} :flavor {}\n", sys.logic, sys.flavor);
    write_node(&mut out, d, 2);
    out.push_str(")\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{builtin, Axiom};
    use crate::syntax::Position;

    #[test]
    fn round_trip_corpus() {
        for (ax, l) in Axiom::corpus() {
            let d = builtin(ax, l).unwrap();
            let sys = System::classical(l);
            let text = print_proof(&d, sys);
            let back = parse_proof(&text).unwrap();
            assert_eq!(back.derivation, d, "{text}");
            assert_eq!(back.system, sys);
        }
    }

    #[test]
    fn vacuous_imp_i_keeps_antecedent() {
        let d = Derivation::imp_i(&[], Formula::atom("q"), Derivation::hyp("u", Formula::atom("p"), Position::empty()));
        let text = print_proof(&d, System::intuitionistic(Logic::K));
        assert_eq!(parse_proof(&text).unwrap().derivation, d);
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse_proof("(proof :system s4 :flavor classical\n  (frob x))").unwrap_err();
        assert!(err.message.contains("unknown head symbol"));
        assert_eq!(err.span.line, 2);
        assert!(parse_proof("(proof :system s5 :flavor classical (hyp u p ()))").is_err());
    }
}
