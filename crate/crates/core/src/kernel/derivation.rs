use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::syntax::{EFormula, Formula, PFormula, Position, Token};

/// Name of an assumption class; discharge is by label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Self {
        Label(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// What a node establishes: a p-formula, or (for existence leaves) `E(α)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Judgment {
    P(PFormula),
    E(EFormula),
}

impl Judgment {
    pub fn position(&self) -> &Position {
        match self {
            Judgment::P(p) => &p.position,
            Judgment::E(e) => &e.position,
        }
    }

    pub fn as_p(&self) -> Option<&PFormula> {
        match self {
            Judgment::P(p) => Some(p),
            Judgment::E(_) => None,
        }
    }

    pub fn exists(position: Position) -> Judgment {
        Judgment::E(EFormula { position })
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Judgment::P(p) => write!(f, "{p}"),
            Judgment::E(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Assumption {
    pub label: Label,
    pub content: Judgment,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Connective {
    And,
    Or,
    Imp,
    Box,
    Dia,
}

impl Connective {
    pub fn of(f: &Formula) -> Option<Connective> {
        match f {
            Formula::And(..) => Some(Connective::And),
            Formula::Or(..) => Some(Connective::Or),
            Formula::Imp(..) => Some(Connective::Imp),
            Formula::Box(_) => Some(Connective::Box),
            Formula::Dia(_) => Some(Connective::Dia),
            Formula::Atom(_) | Formula::Bottom => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Imp => "imp",
            Connective::Box => "box",
            Connective::Dia => "dia",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RuleKind {
    Hyp,
    EHyp,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    BotC,
    BotI,
    BoxI,
    BoxE,
    DiaI,
    DiaE,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Hyp => "hyp",
            RuleKind::EHyp => "ehyp",
            RuleKind::AndI => "and-i",
            RuleKind::AndE1 => "and-e1",
            RuleKind::AndE2 => "and-e2",
            RuleKind::OrI1 => "or-i1",
            RuleKind::OrI2 => "or-i2",
            RuleKind::OrE => "or-e",
            RuleKind::ImpI => "imp-i",
            RuleKind::ImpE => "imp-e",
            RuleKind::BotC => "bot-c",
            RuleKind::BotI => "bot-i",
            RuleKind::BoxI => "box-i",
            RuleKind::BoxE => "box-e",
            RuleKind::DiaI => "dia-i",
            RuleKind::DiaE => "dia-e",
        }
    }

    /// The connective introduced by this rule, if it is an introduction.
    pub fn introduces(self) -> Option<Connective> {
        match self {
            RuleKind::AndI => Some(Connective::And),
            RuleKind::OrI1 | RuleKind::OrI2 => Some(Connective::Or),
            RuleKind::ImpI => Some(Connective::Imp),
            RuleKind::BoxI => Some(Connective::Box),
            RuleKind::DiaI => Some(Connective::Dia),
            _ => None,
        }
    }

    /// The connective eliminated by this rule, if it is an elimination.
    pub fn eliminates(self) -> Option<Connective> {
        match self {
            RuleKind::AndE1 | RuleKind::AndE2 => Some(Connective::And),
            RuleKind::OrE => Some(Connective::Or),
            RuleKind::ImpE => Some(Connective::Imp),
            RuleKind::BoxE => Some(Connective::Box),
            RuleKind::DiaE => Some(Connective::Dia),
            _ => None,
        }
    }

    pub fn is_intro(self) -> bool {
        self.introduces().is_some()
    }

    pub fn is_elim(self) -> bool {
        self.eliminates().is_some()
    }

    /// OrE and DiaE: the rules whose minor premises thread segments.
    pub fn has_minor_segments(self) -> bool {
        matches!(self, RuleKind::OrE | RuleKind::DiaE)
    }

    /// True when premise `i` is a minor premise carrying the conclusion formula.
    pub fn is_segment_minor(self, i: usize) -> bool {
        match self {
            RuleKind::OrE => i == 1 || i == 2,
            RuleKind::DiaE => i == 1,
            _ => false,
        }
    }
}

/// A rule instance with the data that is not recoverable from its premises.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    Hyp { label: Label, formula: PFormula },
    EHyp { label: Label, position: Position },
    AndI,
    AndE1,
    AndE2,
    /// Premise `A^α`; `other` is the right disjunct `B`.
    OrI1 { other: Formula },
    /// Premise `B^α`; `other` is the left disjunct `A`.
    OrI2 { other: Formula },
    OrE { left: Vec<Label>, right: Vec<Label> },
    ImpI { discharge: Vec<Label>, antecedent: Formula },
    ImpE,
    BotC { discharge: Vec<Label>, conclusion: PFormula },
    BotI { conclusion: PFormula },
    BoxI { token: Token, e_discharge: Vec<Label> },
    BoxE { beta: Position },
    DiaI { beta: Position },
    DiaE { token: Token, discharge: Vec<Label>, e_discharge: Vec<Label> },
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match self {
            Rule::Hyp { .. } => RuleKind::Hyp,
            Rule::EHyp { .. } => RuleKind::EHyp,
            Rule::AndI => RuleKind::AndI,
            Rule::AndE1 => RuleKind::AndE1,
            Rule::AndE2 => RuleKind::AndE2,
            Rule::OrI1 { .. } => RuleKind::OrI1,
            Rule::OrI2 { .. } => RuleKind::OrI2,
            Rule::OrE { .. } => RuleKind::OrE,
            Rule::ImpI { .. } => RuleKind::ImpI,
            Rule::ImpE => RuleKind::ImpE,
            Rule::BotC { .. } => RuleKind::BotC,
            Rule::BotI { .. } => RuleKind::BotI,
            Rule::BoxI { .. } => RuleKind::BoxI,
            Rule::BoxE { .. } => RuleKind::BoxE,
            Rule::DiaI { .. } => RuleKind::DiaI,
            Rule::DiaE { .. } => RuleKind::DiaE,
        }
    }

    /// Labels discharged in premise `i`, split into p-formula and E-formula labels.
    pub fn discharges_at(&self, i: usize) -> (&[Label], &[Label]) {
        const NONE: &[Label] = &[];
        match (self, i) {
            (Rule::OrE { left, .. }, 1) => (left, NONE),
            (Rule::OrE { right, .. }, 2) => (right, NONE),
            (Rule::ImpI { discharge, .. }, 0) => (discharge, NONE),
            (Rule::BotC { discharge, .. }, 0) => (discharge, NONE),
            (Rule::BoxI { e_discharge, .. }, 0) => (NONE, e_discharge),
            (
                Rule::DiaE {
                    discharge,
                    e_discharge,
                    ..
                },
                1,
            ) => (discharge, e_discharge),
            _ => (NONE, NONE),
        }
    }

    /// Every label this rule binds, in any premise.
    pub fn bound_labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        for i in 0..3 {
            let (p, e) = self.discharges_at(i);
            out.extend(p.iter().cloned());
            out.extend(e.iter().cloned());
        }
        out
    }
}

/// A derivation tree. The conclusion is synthesized from the rule and premises
/// at construction; it is `None` when the premises do not fit the rule schema.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    rule: Rule,
    premises: Vec<Derivation>,
    conclusion: Option<Judgment>,
}

fn p_of(d: &Derivation, what: &str) -> Result<PFormula, String> {
    match &d.conclusion {
        Some(Judgment::P(p)) => Ok(p.clone()),
        Some(Judgment::E(e)) => Err(format!("{what} is the existence formula {e}")),
        None => Err(format!("{what} is ill-formed")),
    }
}

fn arity(rule: &Rule, premises: &[Derivation]) -> Result<(), String> {
    let ok = match rule.kind() {
        RuleKind::Hyp | RuleKind::EHyp => premises.is_empty(),
        RuleKind::AndI | RuleKind::ImpE | RuleKind::DiaE => premises.len() == 2,
        RuleKind::OrE => premises.len() == 3,
        RuleKind::BoxE | RuleKind::DiaI => premises.len() == 1 || premises.len() == 2,
        _ => premises.len() == 1,
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "{} cannot take {} premise(s)",
            rule.kind().name(),
            premises.len()
        ))
    }
}

/// Computes the conclusion of `rule` applied to `premises`, checking only the
/// shape of the schema (no side conditions).
pub fn infer(rule: &Rule, premises: &[Derivation]) -> Result<Judgment, String> {
    arity(rule, premises)?;
    let concl = match rule {
        Rule::Hyp { formula, .. } => formula.clone(),
        Rule::EHyp { position, .. } => return Ok(Judgment::exists(position.clone())),
        Rule::AndI => {
            let a = p_of(&premises[0], "left premise")?;
            let b = p_of(&premises[1], "right premise")?;
            if a.position != b.position {
                return Err(format!(
                    "premises sit at different positions {} and {}",
                    a.position, b.position
                ));
            }
            Formula::and(a.formula, b.formula).at(a.position)
        }
        Rule::AndE1 | Rule::AndE2 => {
            let a = p_of(&premises[0], "premise")?;
            match a.formula {
                Formula::And(l, r) => {
                    let f = if matches!(rule, Rule::AndE1) { *l } else { *r };
                    f.at(a.position)
                }
                other => return Err(format!("premise {other} is not a conjunction")),
            }
        }
        Rule::OrI1 { other } => {
            let a = p_of(&premises[0], "premise")?;
            Formula::or(a.formula, other.clone()).at(a.position)
        }
        Rule::OrI2 { other } => {
            let b = p_of(&premises[0], "premise")?;
            Formula::or(other.clone(), b.formula).at(b.position)
        }
        Rule::OrE { .. } => {
            let major = p_of(&premises[0], "major premise")?;
            if !matches!(major.formula, Formula::Or(..)) {
                return Err(format!("major premise {} is not a disjunction", major.formula));
            }
            let c1 = p_of(&premises[1], "left minor premise")?;
            let c2 = p_of(&premises[2], "right minor premise")?;
            if c1 != c2 {
                return Err(format!("minor premises differ: {c1} vs {c2}"));
            }
            c1
        }
        Rule::ImpI { antecedent, .. } => {
            let b = p_of(&premises[0], "premise")?;
            Formula::imp(antecedent.clone(), b.formula).at(b.position)
        }
        Rule::ImpE => {
            let major = p_of(&premises[0], "major premise")?;
            let minor = p_of(&premises[1], "minor premise")?;
            match major.formula {
                Formula::Imp(a, b) => {
                    let expected = (*a).at(major.position.clone());
                    if minor != expected {
                        return Err(format!("minor premise {minor} should be {expected}"));
                    }
                    (*b).at(major.position)
                }
                other => return Err(format!("major premise {other} is not an implication")),
            }
        }
        Rule::BotC { conclusion, .. } | Rule::BotI { conclusion } => {
            let b = p_of(&premises[0], "premise")?;
            if !b.formula.is_bottom() {
                return Err(format!("premise {b} is not falsum"));
            }
            if matches!(rule, Rule::BotI { .. }) && !conclusion.formula.is_atomic() {
                return Err(format!("conclusion {} is not atomic", conclusion.formula));
            }
            conclusion.clone()
        }
        Rule::BoxI { token, .. } => {
            let a = p_of(&premises[0], "premise")?;
            match a.position.last() {
                Some(t) if t == token => {}
                _ => {
                    return Err(format!(
                        "premise position {} does not end with the proper token {token}",
                        a.position
                    ))
                }
            }
            let alpha = a.position.parent().expect("nonempty");
            Formula::boxed(a.formula).at(alpha)
        }
        Rule::BoxE { beta } => {
            let major = p_of(&premises[0], "major premise")?;
            match major.formula {
                Formula::Box(a) => (*a).at(crate::syntax::concat(&major.position, beta)),
                other => return Err(format!("major premise {other} is not a box formula")),
            }
        }
        Rule::DiaI { beta } => {
            let a = p_of(&premises[0], "premise")?;
            let alpha = a.position.strip_suffix(beta).ok_or_else(|| {
                format!("premise position {} does not end with beta {beta}", a.position)
            })?;
            Formula::dia(a.formula).at(alpha)
        }
        Rule::DiaE { .. } => {
            let major = p_of(&premises[0], "major premise")?;
            if !matches!(major.formula, Formula::Dia(_)) {
                return Err(format!("major premise {} is not a diamond formula", major.formula));
            }
            p_of(&premises[1], "minor premise")?
        }
    };
    Ok(Judgment::P(concl))
}

impl Derivation {
    pub fn new(rule: Rule, premises: Vec<Derivation>) -> Derivation {
        let conclusion = infer(&rule, &premises).ok();
        Derivation {
            rule,
            premises,
            conclusion,
        }
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn kind(&self) -> RuleKind {
        self.rule.kind()
    }

    pub fn premises(&self) -> &[Derivation] {
        &self.premises
    }

    pub fn into_parts(self) -> (Rule, Vec<Derivation>) {
        (self.rule, self.premises)
    }

    pub fn conclusion(&self) -> Option<&Judgment> {
        self.conclusion.as_ref()
    }

    /// The p-formula concluded, if well-formed and not an existence leaf.
    pub fn pformula(&self) -> Option<&PFormula> {
        self.conclusion.as_ref().and_then(Judgment::as_p)
    }

    pub fn hyp(label: &str, formula: Formula, position: Position) -> Derivation {
        Derivation::new(
            Rule::Hyp {
                label: Label::new(label),
                formula: formula.at(position),
            },
            vec![],
        )
    }

    pub fn hyp_p(label: Label, formula: PFormula) -> Derivation {
        Derivation::new(Rule::Hyp { label, formula }, vec![])
    }

    pub fn ehyp(label: &str, position: Position) -> Derivation {
        Derivation::new(
            Rule::EHyp {
                label: Label::new(label),
                position,
            },
            vec![],
        )
    }

    pub fn and_i(a: Derivation, b: Derivation) -> Derivation {
        Derivation::new(Rule::AndI, vec![a, b])
    }

    pub fn and_e1(d: Derivation) -> Derivation {
        Derivation::new(Rule::AndE1, vec![d])
    }

    pub fn and_e2(d: Derivation) -> Derivation {
        Derivation::new(Rule::AndE2, vec![d])
    }

    pub fn or_i1(d: Derivation, other: Formula) -> Derivation {
        Derivation::new(Rule::OrI1 { other }, vec![d])
    }

    pub fn or_i2(other: Formula, d: Derivation) -> Derivation {
        Derivation::new(Rule::OrI2 { other }, vec![d])
    }

    pub fn or_e(major: Derivation, left: &[&str], m1: Derivation, right: &[&str], m2: Derivation) -> Derivation {
        Derivation::new(
            Rule::OrE {
                left: labels(left),
                right: labels(right),
            },
            vec![major, m1, m2],
        )
    }

    pub fn imp_i(discharge: &[&str], antecedent: Formula, d: Derivation) -> Derivation {
        Derivation::new(
            Rule::ImpI {
                discharge: labels(discharge),
                antecedent,
            },
            vec![d],
        )
    }

    pub fn imp_e(major: Derivation, minor: Derivation) -> Derivation {
        Derivation::new(Rule::ImpE, vec![major, minor])
    }

    pub fn bot_c(discharge: &[&str], d: Derivation, conclusion: PFormula) -> Derivation {
        Derivation::new(
            Rule::BotC {
                discharge: labels(discharge),
                conclusion,
            },
            vec![d],
        )
    }

    pub fn bot_i(d: Derivation, conclusion: PFormula) -> Derivation {
        Derivation::new(Rule::BotI { conclusion }, vec![d])
    }

    pub fn box_i(token: &str, e_discharge: &[&str], d: Derivation) -> Derivation {
        Derivation::new(
            Rule::BoxI {
                token: Token::new(token),
                e_discharge: labels(e_discharge),
            },
            vec![d],
        )
    }

    pub fn box_e(major: Derivation, beta: Position, e: Option<Derivation>) -> Derivation {
        let mut ps = vec![major];
        ps.extend(e);
        Derivation::new(Rule::BoxE { beta }, ps)
    }

    pub fn dia_i(beta: Position, d: Derivation, e: Option<Derivation>) -> Derivation {
        let mut ps = vec![d];
        ps.extend(e);
        Derivation::new(Rule::DiaI { beta }, ps)
    }

    pub fn dia_e(
        major: Derivation,
        token: &str,
        discharge: &[&str],
        e_discharge: &[&str],
        minor: Derivation,
    ) -> Derivation {
        Derivation::new(
            Rule::DiaE {
                token: Token::new(token),
                discharge: labels(discharge),
                e_discharge: labels(e_discharge),
            },
            vec![major, minor],
        )
    }

    /// The same rule over new premises.
    pub fn with_premises(&self, premises: Vec<Derivation>) -> Derivation {
        Derivation::new(self.rule.clone(), premises)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn get(&self, path: &[usize]) -> Option<&Derivation> {
        let mut d = self;
        for &i in path {
            d = d.premises.get(i)?;
        }
        Some(d)
    }

    /// Replaces the subtree at `path`, rebuilding conclusions along the spine.
    pub fn replace_at(&self, path: &[usize], new: Derivation) -> Derivation {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => {
                let mut ps = self.premises.clone();
                ps[i] = ps[i].replace_at(rest, new);
                self.with_premises(ps)
            }
        }
    }

    /// Pre-order traversal with premise-index paths.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &Derivation)> {
        let mut out = Vec::new();
        fn go<'a>(d: &'a Derivation, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a Derivation)>) {
            out.push((path.clone(), d));
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                go(p, path, out);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every token mentioned anywhere in the tree.
    pub fn tokens(&self) -> HashSet<Token> {
        let mut out = HashSet::new();
        for (_, n) in self.nodes() {
            if let Some(j) = &n.conclusion {
                out.extend(j.position().tokens().iter().cloned());
            }
            match &n.rule {
                Rule::Hyp { formula, .. } => out.extend(formula.position.tokens().iter().cloned()),
                Rule::EHyp { position, .. } => out.extend(position.tokens().iter().cloned()),
                Rule::BotC { conclusion, .. } | Rule::BotI { conclusion } => {
                    out.extend(conclusion.position.tokens().iter().cloned())
                }
                Rule::BoxI { token, .. } | Rule::DiaE { token, .. } => {
                    out.insert(token.clone());
                }
                Rule::BoxE { beta } | Rule::DiaI { beta } => out.extend(beta.tokens().iter().cloned()),
                _ => {}
            }
        }
        out
    }

    /// Every label mentioned anywhere in the tree, bound or free.
    pub fn labels(&self) -> HashSet<Label> {
        let mut out = HashSet::new();
        for (_, n) in self.nodes() {
            match &n.rule {
                Rule::Hyp { label, .. } | Rule::EHyp { label, .. } => {
                    out.insert(label.clone());
                }
                r => out.extend(r.bound_labels()),
            }
        }
        out
    }
}

fn labels(names: &[&str]) -> Vec<Label> {
    names.iter().map(|n| Label::new(n)).collect()
}

/// Hypotheses not discharged by any ancestor, in left-to-right leaf order.
pub fn open_assumptions(d: &Derivation) -> Vec<Assumption> {
    match &d.rule {
        Rule::Hyp { label, formula } => vec![Assumption {
            label: label.clone(),
            content: Judgment::P(formula.clone()),
        }],
        Rule::EHyp { label, position } => vec![Assumption {
            label: label.clone(),
            content: Judgment::exists(position.clone()),
        }],
        rule => {
            let mut out = Vec::new();
            for (i, p) in d.premises.iter().enumerate() {
                let (pl, el) = rule.discharges_at(i);
                out.extend(
                    open_assumptions(p)
                        .into_iter()
                        .filter(|a| !pl.contains(&a.label) && !el.contains(&a.label)),
                );
            }
            out
        }
    }
}

/// Generator of names guaranteed absent from a set of derivations.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    tokens: HashSet<Token>,
    labels: HashSet<Label>,
    next: usize,
}

impl Fresh {
    pub fn new() -> Self {
        Fresh::default()
    }

    pub fn avoiding(d: &Derivation) -> Self {
        let mut f = Fresh::new();
        f.avoid(d);
        f
    }

    pub fn avoid(&mut self, d: &Derivation) {
        self.tokens.extend(d.tokens());
        self.labels.extend(d.labels());
    }

    pub fn avoid_position(&mut self, p: &Position) {
        self.tokens.extend(p.tokens().iter().cloned());
    }

    pub fn avoid_token(&mut self, t: &Token) {
        self.tokens.insert(t.clone());
    }

    pub fn token(&mut self) -> Token {
        loop {
            self.next += 1;
            let t = Token::new(&format!("_{}", self.next));
            if self.tokens.insert(t.clone()) {
                return t;
            }
        }
    }

    pub fn label(&mut self) -> Label {
        loop {
            self.next += 1;
            let l = Label::new(&format!("_h{}", self.next));
            if self.labels.insert(l.clone()) {
                return l;
            }
        }
    }
}
