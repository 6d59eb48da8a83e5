//! Tokens, positions and their algebra, modal formulas, p-formulas, and their
//! s-expression syntax.

mod formula;
mod position;

pub use formula::{degree, EFormula, Formula, PFormula};
pub use position::{concat, init_set, prefix_replace, step_holds, Position, StepKind, Token};

use crate::sexpr::{self, ParseError, Sexp};

const CONNECTIVES: [&str; 6] = ["and", "or", "imp", "not", "box", "dia"];

/// Parses a formula: `bot | name | (and F F) | (or F F) | (imp F F) | (not F) | (box F) | (dia F)`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    formula_from_sexp(&sexpr::parse_one(text)?)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

/// Parses a position written `(t1 t2 ...)`.
pub fn parse_position(text: &str) -> Result<Position, ParseError> {
    position_from_sexp(&sexpr::parse_one(text)?)
}

pub fn formula_from_sexp(e: &Sexp) -> Result<Formula, ParseError> {
    match e {
        Sexp::Atom(a, span) => {
            if a == "bot" {
                Ok(Formula::Bottom)
            } else if CONNECTIVES.contains(&a.as_str()) || !sexpr::is_plain_name(a) {
                Err(ParseError::new(*span, format!("`{a}` is not a valid atom name")))
            } else {
                Ok(Formula::atom(a))
            }
        }
        Sexp::List(items, span) => {
            let head = items
                .first()
                .and_then(Sexp::as_atom)
                .ok_or_else(|| ParseError::new(*span, "formula list must start with a connective"))?;
            let args = &items[1..];
            let arity = match head {
                "and" | "or" | "imp" => 2,
                "not" | "box" | "dia" => 1,
                other => {
                    return Err(ParseError::new(*span, format!("unknown head symbol `{other}`")))
                }
            };
            if args.len() != arity {
                return Err(ParseError::new(
                    *span,
                    format!("`{head}` takes {arity} argument(s), found {}", args.len()),
                ));
            }
            let a = formula_from_sexp(&args[0])?;
            Ok(match head {
                "not" => Formula::not(a),
                "box" => Formula::boxed(a),
                "dia" => Formula::dia(a),
                _ => {
                    let b = formula_from_sexp(&args[1])?;
                    match head {
                        "and" => Formula::and(a, b),
                        "or" => Formula::or(a, b),
                        _ => Formula::imp(a, b),
                    }
                }
            })
        }
    }
}

pub fn position_from_sexp(e: &Sexp) -> Result<Position, ParseError> {
    let items = e.expect_list("a position `(tok ...)`")?;
    let mut tokens = Vec::with_capacity(items.len());
    for it in items {
        tokens.push(token_from_sexp(it)?);
    }
    Ok(Position::from_tokens(tokens))
}

pub fn token_from_sexp(e: &Sexp) -> Result<Token, ParseError> {
    let name = e.expect_atom("a token")?;
    if !sexpr::is_plain_name(name) {
        return Err(ParseError::new(e.span(), format!("`{name}` is not a valid token")));
    }
    Ok(Token::new(name))
}
