use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A token drawn from the denumerable alphabet. Equality is by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(Arc<str>);

impl Token {
    pub fn new(name: &str) -> Self {
        Token(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Tokens beginning with `_` are reserved for machine-generated fresh names.
    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('_')
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite sequence of tokens.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position(Vec<Token>);

impl Position {
    pub fn empty() -> Self {
        Position(Vec::new())
    }

    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        Position(tokens)
    }

    /// Builds a position from token names, e.g. `Position::of(&["x", "y"])`.
    pub fn of(names: &[&str]) -> Self {
        Position(names.iter().map(|n| Token::new(n)).collect())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<&Token> {
        self.0.last()
    }

    /// The position without its last token.
    pub fn parent(&self) -> Option<Position> {
        if self.0.is_empty() {
            None
        } else {
            Some(Position(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn child(&self, t: &Token) -> Position {
        let mut v = self.0.clone();
        v.push(t.clone());
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The `t` with `prefix · t = self`, if `prefix` is a prefix of `self`.
    pub fn strip_prefix(&self, prefix: &Position) -> Option<Position> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|rest| Position(rest.to_vec()))
    }

    /// The `u` with `u · suffix = self`, if `suffix` is a suffix of `self`.
    pub fn strip_suffix(&self, suffix: &Position) -> Option<Position> {
        self.0
            .strip_suffix(suffix.0.as_slice())
            .map(|rest| Position(rest.to_vec()))
    }

    /// All prefixes, shortest first, including `()` and `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Position> + '_ {
        (0..=self.0.len()).map(move |k| Position(self.0[..k].to_vec()))
    }

    pub fn contains_token(&self, t: &Token) -> bool {
        self.0.contains(t)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(t.name())?;
        }
        f.write_str(")")
    }
}

pub fn concat(p: &Position, q: &Position) -> Position {
    let mut v = p.0.clone();
    v.extend(q.0.iter().cloned());
    Position(v)
}

/// `s[u/v]`: `v·t` when `s = u·t`, otherwise `s`.
pub fn prefix_replace(s: &Position, u: &Position, v: &Position) -> Position {
    match s.strip_prefix(u) {
        Some(t) => concat(v, &t),
        None => s.clone(),
    }
}

/// The successor relation and its closures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Succ,
    SuccRefl,
    Trans,
    ReflTrans,
}

/// Works over any sequence type, so it serves both positions and model nodes.
pub fn step_holds<T: PartialEq>(kind: StepKind, s: &[T], t: &[T]) -> bool {
    let prefix = t.starts_with(s);
    match kind {
        StepKind::Succ => prefix && t.len() == s.len() + 1,
        StepKind::SuccRefl => prefix && t.len() <= s.len() + 1,
        StepKind::Trans => prefix && t.len() > s.len(),
        StepKind::ReflTrans => prefix,
    }
}

/// Prefix closure of a set of positions.
pub fn init_set<'a, I>(positions: I) -> BTreeSet<Position>
where
    I: IntoIterator<Item = &'a Position>,
{
    let mut out = BTreeSet::new();
    for p in positions {
        for q in p.prefixes() {
            out.insert(q);
        }
    }
    out
}
