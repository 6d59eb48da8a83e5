//! Seeded generator of derivations that check by construction.
//!
//! Nodes are built bottom-up: each candidate step is checked on the spot and
//! replaced by a hypothesis leaf when it fails, so every output checks in the
//! requested system.

#![allow(dead_code)]

use std::collections::HashMap;

use posnd::kernel::{check, Derivation, Judgment, Label, Rule, System};
use posnd::syntax::{concat, Formula, PFormula, Position, Token};
use posnd::{Flavor, Logic};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const POOL: [&str; 2] = ["a", "b"];

pub struct Gen {
    rng: StdRng,
    sys: System,
    labels: HashMap<Judgment, Label>,
    tokens: usize,
}

impl Gen {
    pub fn new(seed: u64, sys: System) -> Self {
        Gen {
            rng: StdRng::seed_from_u64(seed),
            sys,
            labels: HashMap::new(),
            tokens: 0,
        }
    }

    pub fn sys(&self) -> System {
        self.sys
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        let leaf = depth == 0 || self.rng.gen_bool(0.35);
        if leaf {
            return match self.rng.gen_range(0..5) {
                0 => Formula::Bottom,
                1 | 2 => Formula::atom("p"),
                _ => Formula::atom("q"),
            };
        }
        let a = self.formula(depth - 1);
        match self.rng.gen_range(0..6) {
            0 => Formula::and(a, self.formula(depth - 1)),
            1 => Formula::or(a, self.formula(depth - 1)),
            2 => Formula::imp(a, self.formula(depth - 1)),
            3 => Formula::not(a),
            4 => Formula::boxed(a),
            _ => Formula::dia(a),
        }
    }

    pub fn position(&mut self, max_len: usize) -> Position {
        let n = self.rng.gen_range(0..=max_len);
        let names: Vec<&str> = (0..n).map(|_| POOL[self.rng.gen_range(0..POOL.len())]).collect();
        Position::of(&names)
    }

    fn beta_lengths(&self) -> Vec<usize> {
        match self.sys.logic {
            Logic::K | Logic::D => vec![1],
            Logic::T => vec![0, 1],
            Logic::K4 | Logic::D4 => vec![1, 2],
            Logic::S4 => vec![0, 1, 2],
        }
    }

    fn beta(&mut self) -> Position {
        let lens = self.beta_lengths();
        let n = lens[self.rng.gen_range(0..lens.len())];
        let names: Vec<&str> = (0..n).map(|_| POOL[self.rng.gen_range(0..POOL.len())]).collect();
        Position::of(&names)
    }

    fn token(&mut self) -> Token {
        self.tokens += 1;
        Token::new(&format!("t{}", self.tokens))
    }

    /// One label per content, so equal labels always carry equal content.
    pub fn label(&mut self, j: Judgment) -> Label {
        let n = self.labels.len();
        let prefix = if matches!(j, Judgment::E(_)) { "e" } else { "u" };
        self.labels
            .entry(j)
            .or_insert_with(|| Label::new(&format!("{prefix}{n}")))
            .clone()
    }

    pub fn hyp(&mut self, pf: PFormula) -> Derivation {
        let l = self.label(Judgment::P(pf.clone()));
        Derivation::hyp_p(l, pf)
    }

    fn e(&mut self, pos: &Position) -> Option<Derivation> {
        if !self.sys.logic.is_partial() {
            return None;
        }
        let l = self.label(Judgment::exists(pos.clone()));
        Some(Derivation::ehyp(l.name(), pos.clone()))
    }

    fn e_discharge(&mut self, pos: &Position) -> Vec<Label> {
        if self.sys.logic.is_partial() {
            vec![self.label(Judgment::exists(pos.clone()))]
        } else {
            Vec::new()
        }
    }

    fn leaf(&mut self, pos: &Position) -> Derivation {
        let f = self.formula(2);
        self.hyp(f.at(pos.clone()))
    }

    /// A checking derivation of height at most `depth + 1` concluding at `pos`.
    pub fn derivation(&mut self, depth: usize, pos: &Position) -> Derivation {
        if depth == 0 || self.rng.gen_bool(0.15) {
            return self.leaf(pos);
        }
        let candidate = self.step(depth - 1, pos);
        match candidate {
            Some(d) if check(&d, self.sys).ok => d,
            _ => self.leaf(pos),
        }
    }

    fn step(&mut self, d: usize, pos: &Position) -> Option<Derivation> {
        let classical = self.sys.flavor == Flavor::Classical;
        let out = match self.rng.gen_range(0..12) {
            0 => Derivation::and_i(self.derivation(d, pos), self.derivation(d, pos)),
            1 => {
                let a = self.derivation(d, pos);
                match a.pformula().map(|p| &p.formula) {
                    Some(Formula::And(..)) if self.coin() => Derivation::and_e2(a),
                    Some(Formula::And(..)) => Derivation::and_e1(a),
                    _ => Derivation::and_e1(Derivation::and_i(a, self.derivation(d, pos))),
                }
            }
            2 => {
                let a = self.derivation(d, pos);
                let other = self.formula(1);
                if self.coin() {
                    Derivation::or_i1(a, other)
                } else {
                    Derivation::or_i2(other, a)
                }
            }
            3 => {
                let (a, b) = (self.formula(1), self.formula(1));
                let alpha = if self.coin() { pos.clone() } else { self.position(2) };
                let major = self.hyp(Formula::or(a.clone(), b.clone()).at(alpha.clone()));
                let la = self.label(Judgment::P(a.clone().at(alpha.clone())));
                let lb = self.label(Judgment::P(b.clone().at(alpha.clone())));
                let (m1, m2) = if &alpha == pos && self.coin() {
                    let ha = self.hyp(a.clone().at(alpha.clone()));
                    let hb = self.hyp(b.clone().at(alpha));
                    (Derivation::or_i2(b, ha), Derivation::or_i1(hb, a))
                } else {
                    let m = self.derivation(d, pos);
                    (m.clone(), m)
                };
                Derivation::new(Rule::OrE { left: vec![la], right: vec![lb] }, vec![major, m1, m2])
            }
            4 => {
                let m = self.derivation(d, pos);
                let open: Vec<(Label, Formula)> = posnd::kernel::open_assumptions(&m)
                    .into_iter()
                    .filter_map(|a| match a.content {
                        Judgment::P(p) if &p.position == pos => Some((a.label, p.formula)),
                        _ => None,
                    })
                    .collect();
                let (discharge, antecedent) = if !open.is_empty() && self.rng.gen_bool(0.8) {
                    let (l, f) = open[self.rng.gen_range(0..open.len())].clone();
                    (vec![l], f)
                } else {
                    (Vec::new(), self.formula(1))
                };
                Derivation::new(Rule::ImpI { discharge, antecedent }, vec![m])
            }
            5 => {
                let minor = self.derivation(d, pos);
                let a = minor.pformula()?.formula.clone();
                let major = if self.coin() {
                    let b = self.formula(1);
                    self.hyp(Formula::imp(a, b).at(pos.clone()))
                } else {
                    // A redex: →I immediately followed by →E.
                    let la = self.label(Judgment::P(a.clone().at(pos.clone())));
                    let body = self.derivation(d, pos);
                    Derivation::new(Rule::ImpI { discharge: vec![la], antecedent: a }, vec![body])
                };
                Derivation::imp_e(major, minor)
            }
            6 => {
                let gamma = self.position(2);
                let inner = self.derivation(d, &gamma);
                let c = inner.pformula()?.formula.clone();
                let neg = self.hyp(Formula::not(c).at(gamma.clone()));
                let bot = Derivation::imp_e(neg, inner);
                let conclusion = if &gamma != pos && self.coin() {
                    Formula::Bottom
                } else {
                    Formula::atom(if self.coin() { "p" } else { "q" })
                };
                Derivation::bot_i(bot, conclusion.at(pos.clone()))
            }
            7 if classical => {
                let inner = self.derivation(d, pos);
                let x = inner.pformula()?.formula.clone();
                let neg = self.hyp(Formula::not(x.clone()).at(pos.clone()));
                let bot = Derivation::imp_e(neg, inner);
                let c = if self.coin() { x } else { self.formula(2) };
                let discharge = vec![self.label(Judgment::P(Formula::not(c.clone()).at(pos.clone())))];
                Derivation::new(
                    Rule::BotC {
                        discharge,
                        conclusion: c.at(pos.clone()),
                    },
                    vec![bot],
                )
            }
            7 | 8 => {
                let t = self.token();
                let ax = pos.child(&t);
                let m = self.derivation(d, &ax);
                let e_discharge = self.e_discharge(&ax);
                Derivation::new(Rule::BoxI { token: t, e_discharge }, vec![m])
            }
            9 => {
                let lens: Vec<usize> = self.beta_lengths().into_iter().filter(|n| *n <= pos.len()).collect();
                if lens.is_empty() {
                    return None;
                }
                let n = lens[self.rng.gen_range(0..lens.len())];
                let alpha = Position::from_tokens(pos.tokens()[..pos.len() - n].to_vec());
                let beta = Position::from_tokens(pos.tokens()[pos.len() - n..].to_vec());
                let major = match self.derivation(d, &alpha) {
                    m if matches!(m.pformula().map(|p| &p.formula), Some(Formula::Box(_))) => m,
                    _ => {
                        let a = self.formula(1);
                        self.hyp(Formula::boxed(a).at(alpha))
                    }
                };
                let e = self.e(pos);
                Derivation::box_e(major, beta, e)
            }
            10 => {
                let beta = self.beta();
                let target = concat(pos, &beta);
                let premise = self.derivation(d, &target);
                let e = self.e(&target);
                Derivation::dia_i(beta, premise, e)
            }
            _ => {
                let t = self.token();
                let a = self.formula(1);
                let alpha = if self.coin() { pos.clone() } else { self.position(2) };
                let major = match self.derivation(d, &alpha) {
                    m if matches!(m.pformula().map(|p| &p.formula), Some(Formula::Dia(_))) => m,
                    _ => self.hyp(Formula::dia(a.clone()).at(alpha.clone())),
                };
                let Some(Formula::Dia(inner)) = major.pformula().map(|p| p.formula.clone()) else {
                    return None;
                };
                let ax = alpha.child(&t);
                let minor = if &alpha == pos && self.coin() {
                    let h = self.hyp((*inner).clone().at(ax.clone()));
                    let e = self.e(&ax);
                    Derivation::dia_i(Position::from_tokens(vec![t.clone()]), h, e)
                } else {
                    self.derivation(d, pos)
                };
                let discharge = vec![self.label(Judgment::P((*inner).at(ax.clone())))];
                let e_discharge = self.e_discharge(&ax);
                Derivation::new(
                    Rule::DiaE {
                        token: t,
                        discharge,
                        e_discharge,
                    },
                    vec![major, minor],
                )
            }
        };
        Some(out)
    }
}

/// A random system: logic from the seed, flavor as given.
pub fn system(seed: u64, flavor: Flavor) -> System {
    System::new(Logic::ALL[(seed % 6) as usize], flavor)
}

/// A checking derivation of height at most `depth + 1` at a random position.
pub fn derivation(seed: u64, sys: System, depth: usize) -> Derivation {
    let mut g = Gen::new(seed, sys);
    let pos = g.position(1);
    g.derivation(depth, &pos)
}
