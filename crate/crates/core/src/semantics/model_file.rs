//! `(model :logic <l> (node (<nat>...) :atoms (p ...)) ... [:serial-completion true])`
//! and `(evaluation (<position> (<nat>...)) ...)`.

use std::fmt::Write as _;

use crate::kernel::Logic;
use crate::sexpr::{self, ParseError, Sexp};
use crate::syntax::position_from_sexp;

use super::evaluation::Evaluation;
use super::model::{Node, TreeModel};
use super::probe::Countermodel;

fn node_from_sexp(e: &Sexp) -> Result<Node, ParseError> {
    e.expect_list("a node")?
        .iter()
        .map(|c| {
            let s = c.expect_atom("a child index")?;
            s.parse::<u32>()
                .map_err(|_| ParseError::new(c.span(), format!("`{s}` is not a child index")))
        })
        .collect()
}

fn node_entry(e: &Sexp) -> Result<(Node, Vec<String>), ParseError> {
    let items = e.expect_list("a node entry")?;
    match items {
        [_, node, key, atoms] if key.as_atom() == Some(":atoms") => {
            let names = atoms
                .expect_list("an atom list")?
                .iter()
                .map(|a| a.expect_atom("an atom").map(str::to_owned))
                .collect::<Result<_, _>>()?;
            Ok((node_from_sexp(node)?, names))
        }
        [_, node] => Ok((node_from_sexp(node)?, Vec::new())),
        _ => Err(ParseError::new(e.span(), "expected `(node (<nat>...) :atoms (...))`")),
    }
}

pub fn model_from_sexp(e: &Sexp) -> Result<(Logic, TreeModel), ParseError> {
    let items = e.expect_list("a model")?;
    if e.head() != Some("model") {
        return Err(ParseError::new(e.span(), "expected `(model ...)`"));
    }
    let mut logic = None;
    let mut serial = false;
    let mut nodes = Vec::new();
    let mut i = 1;
    while i < items.len() {
        let it = &items[i];
        if it.head() == Some("node") {
            nodes.push(node_entry(it)?);
            i += 1;
            continue;
        }
        let key = it.expect_atom("a keyword or node")?;
        let value = items
            .get(i + 1)
            .ok_or_else(|| ParseError::new(it.span(), format!("`{key}` needs a value")))?;
        let v = value.expect_atom("a keyword value")?;
        match key {
            ":logic" => logic = Some(v.parse::<Logic>().map_err(|m| ParseError::new(value.span(), m))?),
            ":serial-completion" => {
                serial = match v {
                    "true" => true,
                    "false" => false,
                    _ => return Err(ParseError::new(value.span(), "expected `true` or `false`")),
                }
            }
            other => return Err(ParseError::new(it.span(), format!("unknown keyword `{other}`"))),
        }
        i += 2;
    }
    let logic = logic.ok_or_else(|| ParseError::new(e.span(), "missing `:logic`"))?;
    let model = TreeModel::new(nodes, serial).map_err(|err| ParseError::new(e.span(), err.to_string()))?;
    Ok((logic, model))
}

pub fn parse_model(text: &str) -> Result<(Logic, TreeModel), ParseError> {
    model_from_sexp(&sexpr::parse_one(text)?)
}

fn node_text(n: &[u32]) -> String {
    let parts: Vec<String> = n.iter().map(u32::to_string).collect();
    format!("({})", parts.join(" "))
}

pub fn print_model(m: &TreeModel, logic: Logic) -> String {
    let mut out = format!("(model :logic {logic}");
    for n in m.nodes() {
        let atoms: Vec<&str> = m.atoms_at(n).unwrap_or_default().into_iter().collect();
        let _ = write!(out, "\n  (node {} :atoms ({}))", node_text(n), atoms.join(" "));
    }
    if m.serial_completion {
        out.push_str("\n  :serial-completion true");
    }
    out.push(')');
    out
}

pub fn print_evaluation(e: &Evaluation) -> String {
    let mut out = String::from("(evaluation");
    for (pos, n) in &e.entries {
        let _ = write!(out, " ({pos} {})", node_text(n));
    }
    out.push(')');
    out
}

pub fn evaluation_from_sexp(e: &Sexp, logic: Logic) -> Result<Evaluation, ParseError> {
    if e.head() != Some("evaluation") {
        return Err(ParseError::new(e.span(), "expected `(evaluation ...)`"));
    }
    let mut out = Evaluation::new(logic.is_partial());
    for entry in &e.expect_list("an evaluation")?[1..] {
        match entry.expect_list("an evaluation entry")? {
            [pos, node] => {
                out.entries.insert(position_from_sexp(pos)?, node_from_sexp(node)?);
            }
            _ => return Err(ParseError::new(entry.span(), "expected `(<position> <node>)`")),
        }
    }
    Ok(out)
}

/// The model followed by the refuting evaluation, newline-terminated.
pub fn print_countermodel(c: &Countermodel) -> String {
    format!("{}\n{}\n", print_model(&c.model, c.logic), print_evaluation(&c.evaluation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Position;

    #[test]
    fn round_trip() {
        let text = "(model :logic d (node () :atoms ()) (node (0) :atoms (p q)) :serial-completion true)";
        let (logic, m) = parse_model(text).unwrap();
        assert_eq!(logic, Logic::D);
        assert!(m.serial_completion);
        let printed = print_model(&m, logic);
        let (l2, m2) = parse_model(&printed).unwrap();
        assert_eq!((l2, &m2), (logic, &m));
        assert_eq!(print_model(&m2, l2), printed);
    }

    #[test]
    fn evaluation_round_trip() {
        let e = Evaluation::new(true)
            .with(Position::empty(), vec![])
            .with(Position::of(&["x"]), vec![0]);
        let text = print_evaluation(&e);
        assert_eq!(text, "(evaluation (() ()) ((x) (0)))");
        let back = evaluation_from_sexp(&sexpr::parse_one(&text).unwrap(), Logic::K).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_model("(model (node () :atoms ()))").is_err());
        assert!(parse_model("(model :logic k (node (a) :atoms ()))").is_err());
        assert!(parse_model("(model :logic k :serial-completion maybe)").is_err());
    }
}
