//! Exhaustive bounded search for closed normal derivations of `⊥^α`.
//!
//! Derivations are built bottom-up by node count. Hypotheses are identified by
//! content (one label per p-formula or E-formula) and every discharging rule
//! discharges all open hypotheses of the matching content; any closed
//! derivation with partial discharges has a maximal-discharge twin with the
//! same tree and conclusion, so no conclusion is lost. A discharged hypothesis
//! always sits strictly inside a formula of the derivation, so hypothesis
//! formulas have degree at most `max_degree - 1`.

use std::collections::HashMap;

use crate::kernel::{check, Derivation, Judgment, Label, Logic, Rule, System};
use crate::syntax::{concat, Formula, PFormula, Position, Token};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConsistencyBounds {
    /// Total nodes, leaves included.
    pub max_nodes: usize,
    /// Bound on the degree of every formula occurring in the derivation.
    pub max_degree: usize,
    /// Bound on the length of every position occurring in the derivation.
    pub max_position_len: usize,
}

impl Default for ConsistencyBounds {
    fn default() -> Self {
        ConsistencyBounds {
            max_nodes: 5,
            max_degree: 2,
            max_position_len: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub logic: Logic,
    /// Closed normal derivations found, by node count (index 0 unused).
    pub closed_by_size: Vec<usize>,
    /// All derivations generated (open or closed), by node count.
    pub generated_by_size: Vec<usize>,
    /// Closed derivations concluding `⊥^α`; empty when consistency holds.
    pub bottom: Vec<Derivation>,
    /// Closed derivations that failed the full checker (an enumerator bug).
    pub rejected: Vec<Derivation>,
}

impl ConsistencyReport {
    pub fn closed(&self) -> usize {
        self.closed_by_size.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.bottom.is_empty() && self.rejected.is_empty()
    }
}

#[derive(Clone)]
struct Item {
    d: Derivation,
    /// Sorted content ids of open hypotheses.
    open: Vec<usize>,
}

struct Enumerator {
    logic: Logic,
    bounds: ConsistencyBounds,
    token: Token,
    contents: Vec<Judgment>,
    ids: HashMap<Judgment, usize>,
    formulas: Vec<Formula>,
    positions: Vec<Position>,
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn label_of(id: usize) -> Label {
    Label::new(&format!("a{id}"))
}

/// Normal derivations never use an introduction, nor an OrE/DiaE conclusion,
/// as the major premise of an elimination.
fn usable_major(d: &Derivation) -> bool {
    !d.kind().is_intro() && !d.kind().has_minor_segments()
}

impl Enumerator {
    fn new(logic: Logic, bounds: ConsistencyBounds) -> Self {
        let atoms = [Formula::atom("p"), Formula::Bottom];
        let mut formulas: Vec<Formula> = atoms.to_vec();
        for _ in 1..bounds.max_degree {
            let prev = formulas.clone();
            let mut next = prev.clone();
            for a in &prev {
                next.push(Formula::boxed(a.clone()));
                next.push(Formula::dia(a.clone()));
                for b in &prev {
                    next.push(Formula::and(a.clone(), b.clone()));
                    next.push(Formula::or(a.clone(), b.clone()));
                    next.push(Formula::imp(a.clone(), b.clone()));
                }
            }
            next.sort_by_key(|f| f.to_string());
            next.dedup();
            formulas = next;
        }
        let token = Token::new("x");
        let positions = (0..=bounds.max_position_len)
            .map(|n| Position::from_tokens(vec![token.clone(); n]))
            .collect();
        Enumerator {
            logic,
            bounds,
            token,
            contents: Vec::new(),
            ids: HashMap::new(),
            formulas,
            positions,
        }
    }

    fn id(&mut self, j: Judgment) -> usize {
        if let Some(&i) = self.ids.get(&j) {
            return i;
        }
        self.contents.push(j.clone());
        self.ids.insert(j, self.contents.len() - 1);
        self.contents.len() - 1
    }

    fn partial(&self) -> bool {
        self.logic.is_partial()
    }

    fn beta_ok(&self, len: usize) -> bool {
        self.logic.check_beta(len, false).is_ok()
    }

    fn pos_ok(&self, p: &Position) -> bool {
        p.len() <= self.bounds.max_position_len
    }

    fn deg_ok(&self, f: &Formula) -> bool {
        f.degree() <= self.bounds.max_degree
    }

    /// Lower bound on the nodes still needed to discharge `open`.
    fn closing_cost(&self, open: &[usize]) -> usize {
        let e = open
            .iter()
            .filter(|&&i| matches!(self.contents[i], Judgment::E(_)))
            .count();
        let p = open.len() - e;
        e.max(p.div_ceil(2))
    }

    fn keep(&self, size: usize, item: &Item) -> bool {
        let ok_conclusion = match item.d.conclusion() {
            Some(Judgment::P(pf)) => self.deg_ok(&pf.formula) && self.pos_ok(&pf.position),
            Some(Judgment::E(e)) => self.pos_ok(&e.position),
            None => false,
        };
        ok_conclusion && size + self.closing_cost(&item.open) <= self.bounds.max_nodes
    }

    /// Removes the open ids whose content is in `discharged`, returning the
    /// labels actually discharged.
    fn discharge(&self, open: &[usize], discharged: &[Judgment]) -> (Vec<usize>, Vec<Label>, Vec<Label>) {
        let mut rest = Vec::new();
        let mut pl = Vec::new();
        let mut el = Vec::new();
        for &i in open {
            if discharged.contains(&self.contents[i]) {
                match self.contents[i] {
                    Judgment::P(_) => pl.push(label_of(i)),
                    Judgment::E(_) => el.push(label_of(i)),
                }
            } else {
                rest.push(i);
            }
        }
        (rest, pl, el)
    }

    fn fresh_for(&self, ax: &Position, open: &[usize]) -> bool {
        open.iter().all(|&i| !ax.is_prefix_of(self.contents[i].position()))
    }

    fn leaves(&mut self) -> Vec<Item> {
        let mut out = Vec::new();
        let hyp_degree = self.bounds.max_degree.saturating_sub(1);
        let formulas: Vec<Formula> = self.formulas.iter().filter(|f| f.degree() <= hyp_degree).cloned().collect();
        for f in formulas {
            for pos in self.positions.clone() {
                let pf = f.clone().at(pos);
                let i = self.id(Judgment::P(pf.clone()));
                out.push(Item {
                    d: Derivation::hyp_p(label_of(i), pf),
                    open: vec![i],
                });
            }
        }
        if self.partial() {
            for pos in self.positions.clone() {
                if pos.is_empty() {
                    continue;
                }
                let i = self.id(Judgment::exists(pos.clone()));
                out.push(Item {
                    d: Derivation::new(
                        Rule::EHyp {
                            label: label_of(i),
                            position: pos,
                        },
                        vec![],
                    ),
                    open: vec![i],
                });
            }
        }
        out
    }

    fn unary(&self, a: &Item, out: &mut Vec<Item>) {
        let Some(pf) = a.d.pformula().cloned() else {
            return;
        };
        let PFormula { formula, position } = pf.clone();
        let push = |out: &mut Vec<Item>, d: Derivation, open: Vec<usize>| out.push(Item { d, open });
        match &formula {
            Formula::And(..) if usable_major(&a.d) => {
                push(out, Derivation::and_e1(a.d.clone()), a.open.clone());
                push(out, Derivation::and_e2(a.d.clone()), a.open.clone());
            }
            Formula::Box(_) if usable_major(&a.d) && !self.partial() => {
                for beta in &self.positions {
                    if self.beta_ok(beta.len()) && self.pos_ok(&concat(&position, beta)) {
                        push(out, Derivation::box_e(a.d.clone(), beta.clone(), None), a.open.clone());
                    }
                }
            }
            Formula::Bottom => {
                for c in [Formula::atom("p"), Formula::Bottom] {
                    for pos in &self.positions {
                        if c.is_bottom() && *pos == position {
                            continue;
                        }
                        push(out, Derivation::bot_i(a.d.clone(), c.clone().at(pos.clone())), a.open.clone());
                    }
                }
            }
            _ => {}
        }
        if formula.degree() < self.bounds.max_degree {
            for other in &self.formulas {
                if other.degree() < self.bounds.max_degree {
                    push(out, Derivation::or_i1(a.d.clone(), other.clone()), a.open.clone());
                    push(out, Derivation::or_i2(other.clone(), a.d.clone()), a.open.clone());
                    let assumed = other.clone().at(position.clone());
                    let (rest, pl, _) = self.discharge(&a.open, &[Judgment::P(assumed)]);
                    push(
                        out,
                        Derivation::new(
                            Rule::ImpI {
                                discharge: pl,
                                antecedent: other.clone(),
                            },
                            vec![a.d.clone()],
                        ),
                        rest,
                    );
                }
            }
            if position.last() == Some(&self.token) {
                let e = Judgment::exists(position.clone());
                let (rest, _, el) = self.discharge(&a.open, &[e]);
                if self.fresh_for(&position, &rest) {
                    push(
                        out,
                        Derivation::new(
                            Rule::BoxI {
                                token: self.token.clone(),
                                e_discharge: el,
                            },
                            vec![a.d.clone()],
                        ),
                        rest,
                    );
                }
            }
            if !self.partial() {
                for k in 0..=position.len() {
                    if self.beta_ok(k) {
                        let beta = Position::from_tokens(position.tokens()[position.len() - k..].to_vec());
                        push(out, Derivation::dia_i(beta, a.d.clone(), None), a.open.clone());
                    }
                }
            }
        }
    }

    fn binary(&self, a: &Item, b: &Item, out: &mut Vec<Item>) {
        let Some(pa) = a.d.pformula() else {
            // `a` is an E-leaf; it only ever serves as a second premise.
            return;
        };
        let open = || union(&a.open, &b.open);
        if let Some(Judgment::P(pb)) = b.d.conclusion() {
            let max = self.bounds.max_degree;
            if pb.position == pa.position && pa.formula.degree() < max && pb.formula.degree() < max {
                out.push(Item {
                    d: Derivation::and_i(a.d.clone(), b.d.clone()),
                    open: open(),
                });
            }
        }
        if !usable_major(&a.d) {
            return;
        }
        match (&pa.formula, b.d.conclusion()) {
            (Formula::Imp(ante, _), Some(Judgment::P(pb))) => {
                if pb.formula == **ante && pb.position == pa.position {
                    out.push(Item {
                        d: Derivation::imp_e(a.d.clone(), b.d.clone()),
                        open: open(),
                    });
                }
            }
            (Formula::Box(_), Some(Judgment::E(e))) if self.partial() => {
                if let Some(beta) = e.position.strip_prefix(&pa.position) {
                    if self.beta_ok(beta.len()) {
                        out.push(Item {
                            d: Derivation::box_e(a.d.clone(), beta, Some(b.d.clone())),
                            open: open(),
                        });
                    }
                }
            }
            (Formula::Dia(inner), Some(Judgment::P(pb))) => {
                let ax = pa.position.child(&self.token);
                if ax.is_prefix_of(&pb.position) {
                    return;
                }
                let mut gone = vec![Judgment::P((**inner).clone().at(ax.clone()))];
                if self.partial() {
                    gone.push(Judgment::exists(ax.clone()));
                }
                let (rest, pl, el) = self.discharge(&b.open, &gone);
                if !self.fresh_for(&ax, &rest) {
                    return;
                }
                out.push(Item {
                    d: Derivation::new(
                        Rule::DiaE {
                            token: self.token.clone(),
                            discharge: pl,
                            e_discharge: el,
                        },
                        vec![a.d.clone(), b.d.clone()],
                    ),
                    open: union(&a.open, &rest),
                });
            }
            _ => {}
        }
    }

    /// Partial-logic DiaI: premise `a` with E-premise `b`.
    fn dia_i_partial(&self, a: &Item, b: &Item, out: &mut Vec<Item>) {
        let (Some(pa), Some(Judgment::E(e))) = (a.d.pformula(), b.d.conclusion()) else {
            return;
        };
        if e.position != pa.position || pa.formula.degree() >= self.bounds.max_degree {
            return;
        }
        for k in 0..=pa.position.len() {
            if self.beta_ok(k) {
                let beta = Position::from_tokens(pa.position.tokens()[pa.position.len() - k..].to_vec());
                out.push(Item {
                    d: Derivation::dia_i(beta, a.d.clone(), Some(b.d.clone())),
                    open: union(&a.open, &b.open),
                });
            }
        }
    }

    fn ternary(&self, a: &Item, b: &Item, c: &Item, out: &mut Vec<Item>) {
        let Some(pa) = a.d.pformula() else { return };
        let Formula::Or(l, r) = &pa.formula else { return };
        if !usable_major(&a.d) || b.d.conclusion() != c.d.conclusion() || b.d.pformula().is_none() {
            return;
        }
        let (rb, lb, _) = self.discharge(&b.open, &[Judgment::P((**l).clone().at(pa.position.clone()))]);
        let (rc, lc, _) = self.discharge(&c.open, &[Judgment::P((**r).clone().at(pa.position.clone()))]);
        out.push(Item {
            d: Derivation::new(Rule::OrE { left: lb, right: lc }, vec![a.d.clone(), b.d.clone(), c.d.clone()]),
            open: union(&a.open, &union(&rb, &rc)),
        });
    }

    fn run(mut self) -> ConsistencyReport {
        let n = self.bounds.max_nodes;
        let mut levels: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        if n >= 1 {
            let leaves = self.leaves();
            levels[1] = leaves.into_iter().filter(|it| self.keep(1, it)).collect();
        }
        for s in 2..=n {
            let mut out = Vec::new();
            for a in &levels[s - 1] {
                self.unary(a, &mut out);
            }
            for i in 1..s - 1 {
                let j = s - 1 - i;
                for a in &levels[i] {
                    for b in &levels[j] {
                        self.binary(a, b, &mut out);
                        if self.partial() && j == 1 {
                            self.dia_i_partial(a, b, &mut out);
                        }
                    }
                }
            }
            for i in 1..s - 1 {
                for j in 1..s - 1 - i {
                    let k = s - 1 - i - j;
                    if k == 0 {
                        continue;
                    }
                    for a in &levels[i] {
                        if !matches!(a.d.pformula().map(|p| &p.formula), Some(Formula::Or(..))) {
                            continue;
                        }
                        for b in &levels[j] {
                            for c in &levels[k] {
                                self.ternary(a, b, c, &mut out);
                            }
                        }
                    }
                }
            }
            levels[s] = out.into_iter().filter(|it| self.keep(s, it)).collect();
        }

        let sys = System::intuitionistic(self.logic);
        let mut report = ConsistencyReport {
            logic: self.logic,
            closed_by_size: vec![0; n + 1],
            generated_by_size: levels.iter().map(Vec::len).collect(),
            bottom: Vec::new(),
            rejected: Vec::new(),
        };
        for (s, level) in levels.iter().enumerate() {
            for it in level.iter().filter(|it| it.open.is_empty()) {
                report.closed_by_size[s] += 1;
                if !check(&it.d, sys).ok {
                    report.rejected.push(it.d.clone());
                }
                if it.d.pformula().is_some_and(|p| p.formula.is_bottom()) {
                    report.bottom.push(it.d.clone());
                }
            }
        }
        report
    }
}

/// Enumerates every closed normal intuitionistic derivation within `bounds`
/// over the atom `p`, `⊥` and the single token `x`.
pub fn bounded_consistency(logic: Logic, bounds: ConsistencyBounds) -> ConsistencyReport {
    Enumerator::new(logic, bounds).run()
}
