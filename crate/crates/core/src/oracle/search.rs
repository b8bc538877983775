//! Bounded search for ranked interpretations.
//!
//! Heights are fixed first, as a non-decreasing convex map over the element
//! indices; every ranked interpretation is isomorphic to one of that shape.
//! Shapes are tried by domain size and then lexicographically.
//!
//! [`search`] hands each shape to a SAT solver. [`for_each_model`] walks the
//! shape by depth-first search instead: atom memberships (element by
//! element) and then role edges (source by source) are assigned false before
//! true, and each partial assignment is evaluated three-valued so that
//! subtrees are cut as soon as a requirement is decided false, or emitted as
//! soon as every requirement is decided true (unassigned bits are then set
//! false).

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::concept::{Axiom, Concept, KnowledgeBase, Signature};
use crate::ranking::RankValue;

use super::interpretation::{FiniteInterpretation, Preferential, RankedInterpretation};
use super::sat;

/// Largest supported domain; elements are tracked in `u64` masks.
pub const MAX_DOMAIN: usize = 64;

/// A condition a searched interpretation must meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Requirement {
    Holds(Axiom),
    Fails(Axiom),
    /// The minimal elements of the concept sit at exactly this height
    /// (infinite: the concept is empty).
    HeightIs(Concept, RankValue),
    /// Some instance of the concept sits strictly below this height
    /// (infinite: the concept is non-empty).
    HeightBelow(Concept, RankValue),
}

impl Requirement {
    fn concepts(&self) -> Vec<&Concept> {
        match self {
            Requirement::Holds(a) | Requirement::Fails(a) => vec![a.lhs(), a.rhs()],
            Requirement::HeightIs(c, _) | Requirement::HeightBelow(c, _) => vec![c],
        }
    }
}

impl RankedInterpretation {
    /// Direct semantic check of one requirement.
    pub fn meets(&self, r: &Requirement) -> bool {
        match r {
            Requirement::Holds(a) => self.satisfies(a),
            Requirement::Fails(a) => !self.satisfies(a),
            Requirement::HeightIs(c, k) => self.height_of_concept(c) == *k,
            Requirement::HeightBelow(c, k) => self.height_of_concept(c) < *k,
        }
    }
}

/// The axioms of `kb` as requirements.
pub fn kb_requirements(kb: &KnowledgeBase) -> Vec<Requirement> {
    kb.axioms().map(Requirement::Holds).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub model: Option<RankedInterpretation>,
    /// Shapes (domain size and height map) handed to the solver.
    pub explored: u64,
}

/// First ranked model of `kb` with at most `max_domain` elements.
pub fn search_model(kb: &KnowledgeBase, max_domain: usize) -> SearchReport {
    search(&kb_requirements(kb), max_domain)
}

/// First ranked model of `kb` with at most `max_domain` elements that
/// violates `q`.
pub fn search_countermodel(kb: &KnowledgeBase, q: &Axiom, max_domain: usize) -> SearchReport {
    let mut reqs = kb_requirements(kb);
    reqs.push(Requirement::Fails(q.clone()));
    search(&reqs, max_domain)
}

/// First model of `reqs` with at most `max_domain` elements, in shape order.
pub fn search(reqs: &[Requirement], max_domain: usize) -> SearchReport {
    check_bound(max_domain);
    let problem = Problem::compile(reqs);
    let mut explored = 0;
    for n in 1..=max_domain {
        for heights in height_maps(n) {
            explored += 1;
            if let Some(m) = sat::solve_shape(&problem, &heights) {
                return SearchReport { model: Some(m), explored };
            }
        }
    }
    SearchReport { model: None, explored }
}

fn check_bound(max_domain: usize) {
    assert!(max_domain <= MAX_DOMAIN, "max_domain {max_domain} exceeds {MAX_DOMAIN}");
}

/// Calls `f` on each model found, in search order, until it breaks.
/// Returns the number of partial assignments visited.
///
/// Models are representatives: once every requirement is decided the
/// remaining bits are fixed false and the rest of that subtree is skipped.
pub fn for_each_model<F>(reqs: &[Requirement], max_domain: usize, mut f: F) -> u64
where
    F: FnMut(&RankedInterpretation) -> ControlFlow<()>,
{
    check_bound(max_domain);
    let problem = Problem::compile(reqs);
    let mut explored = 0;
    for n in 1..=max_domain {
        for heights in height_maps(n) {
            let mut run = Run::new(&problem, n, heights);
            let flow = run.dfs(0, &mut f);
            explored += run.explored;
            if flow.is_break() {
                return explored;
            }
        }
    }
    explored
}

/// Non-decreasing convex height maps over `n` elements, in lexicographic order.
pub fn height_maps(n: usize) -> Vec<Vec<usize>> {
    assert!(n > 0);
    (0..1u64 << (n - 1))
        .map(|steps| {
            let mut h = vec![0; n];
            for i in 1..n {
                // Most significant step first gives lexicographic order.
                let up = (steps >> (n - 1 - i)) & 1;
                h[i] = h[i - 1] + up as usize;
            }
            h
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(super) enum Op {
    Top,
    Bottom,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

#[derive(Debug, Clone, Copy)]
pub(super) enum Req {
    Gci { lhs: usize, rhs: usize, holds: bool },
    Dci { lhs: usize, rhs: usize, holds: bool },
    HeightIs(usize, Option<usize>),
    HeightBelow(usize, Option<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }

    fn decide(is_true: bool, is_false: bool) -> Tri {
        match (is_true, is_false) {
            (true, _) => Tri::True,
            (_, true) => Tri::False,
            _ => Tri::Unknown,
        }
    }
}

pub(super) struct Problem {
    pub(super) atoms: Vec<String>,
    pub(super) roles: Vec<String>,
    /// Children always precede parents.
    pub(super) ops: Vec<Op>,
    pub(super) reqs: Vec<Req>,
}

impl Problem {
    pub(super) fn compile(reqs: &[Requirement]) -> Problem {
        let mut sig = Signature::default();
        for r in reqs {
            for c in r.concepts() {
                c.collect_signature(&mut sig);
            }
        }
        let mut p = Problem {
            atoms: sig.atoms.into_iter().collect(),
            roles: sig.roles.into_iter().collect(),
            ops: Vec::new(),
            reqs: Vec::new(),
        };
        let mut memo = HashMap::new();
        for r in reqs {
            let req = match r {
                Requirement::Holds(a) | Requirement::Fails(a) => {
                    let lhs = p.intern(a.lhs(), &mut memo);
                    let rhs = p.intern(a.rhs(), &mut memo);
                    let holds = matches!(r, Requirement::Holds(_));
                    if a.is_defeasible() {
                        Req::Dci { lhs, rhs, holds }
                    } else {
                        Req::Gci { lhs, rhs, holds }
                    }
                }
                Requirement::HeightIs(c, k) => Req::HeightIs(p.intern(c, &mut memo), finite(*k)),
                Requirement::HeightBelow(c, k) => Req::HeightBelow(p.intern(c, &mut memo), finite(*k)),
            };
            p.reqs.push(req);
        }
        p
    }

    fn intern(&mut self, c: &Concept, memo: &mut HashMap<Op, usize>) -> usize {
        let pos = |names: &[String], s: &str| names.iter().position(|n| n == s).expect("in signature");
        let op = match c {
            Concept::Top => Op::Top,
            Concept::Bottom => Op::Bottom,
            Concept::Atom(a) => Op::Atom(pos(&self.atoms, a)),
            Concept::Not(d) => Op::Not(self.intern(d, memo)),
            Concept::And(l, r) => Op::And(self.intern(l, memo), self.intern(r, memo)),
            Concept::Or(l, r) => Op::Or(self.intern(l, memo), self.intern(r, memo)),
            Concept::Exists(r, d) => {
                let f = self.intern(d, memo);
                Op::Exists(pos(&self.roles, r), f)
            }
            Concept::Forall(r, d) => {
                let f = self.intern(d, memo);
                Op::Forall(pos(&self.roles, r), f)
            }
        };
        *memo.entry(op).or_insert_with(|| {
            self.ops.push(op);
            self.ops.len() - 1
        })
    }
}

fn finite(k: RankValue) -> Option<usize> {
    match k {
        RankValue::Finite(i) => Some(i),
        RankValue::Infinite => None,
    }
}

#[derive(Debug, Clone, Copy)]
enum Var {
    Atom(usize, usize),
    Edge(usize, usize, usize),
}

/// `val` bits are only ever set where `known` is.
#[derive(Debug, Clone, Copy, Default)]
struct Bits {
    known: u64,
    val: u64,
}

struct Run<'p> {
    p: &'p Problem,
    n: usize,
    full: u64,
    heights: Vec<usize>,
    /// `layer[k]`: elements at height k; `below[k]`: elements under height k.
    layer: Vec<u64>,
    below: Vec<u64>,
    atoms: Vec<Bits>,
    edges: Vec<Vec<Bits>>,
    vars: Vec<Var>,
    must: Vec<u64>,
    may: Vec<u64>,
    explored: u64,
}

impl<'p> Run<'p> {
    fn new(p: &'p Problem, n: usize, heights: Vec<usize>) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let layers = heights.iter().max().map_or(0, |h| h + 1);
        let mut layer = vec![0u64; layers];
        for (x, &h) in heights.iter().enumerate() {
            layer[h] |= 1 << x;
        }
        let below = (0..=layers).map(|k| layer[..k].iter().fold(0, |acc, m| acc | m)).collect();
        let mut vars = Vec::new();
        for x in 0..n {
            for a in 0..p.atoms.len() {
                vars.push(Var::Atom(a, x));
            }
        }
        for x in 0..n {
            for r in 0..p.roles.len() {
                for y in 0..n {
                    vars.push(Var::Edge(r, x, y));
                }
            }
        }
        Run {
            p,
            n,
            full,
            heights,
            layer,
            below,
            atoms: vec![Bits::default(); p.atoms.len()],
            edges: vec![vec![Bits::default(); n]; p.roles.len()],
            vars,
            must: vec![0; p.ops.len()],
            may: vec![0; p.ops.len()],
            explored: 0,
        }
    }

    fn bits(&mut self, v: Var) -> (&mut Bits, u64) {
        match v {
            Var::Atom(a, x) => (&mut self.atoms[a], 1 << x),
            Var::Edge(r, x, y) => (&mut self.edges[r][x], 1 << y),
        }
    }

    fn eval(&mut self) {
        let full = self.full;
        for (i, op) in self.p.ops.iter().enumerate() {
            let (m, y) = match *op {
                Op::Top => (full, full),
                Op::Bottom => (0, 0),
                Op::Atom(a) => {
                    let b = self.atoms[a];
                    (b.val, b.val | (full & !b.known))
                }
                Op::Not(c) => (full & !self.may[c], full & !self.must[c]),
                Op::And(l, r) => (self.must[l] & self.must[r], self.may[l] & self.may[r]),
                Op::Or(l, r) => (self.must[l] | self.must[r], self.may[l] | self.may[r]),
                Op::Exists(r, c) => {
                    let (mut m, mut y) = (0, 0);
                    for (x, b) in self.edges[r].iter().enumerate() {
                        let possible = b.val | (full & !b.known);
                        if b.val & self.must[c] != 0 {
                            m |= 1 << x;
                        }
                        if possible & self.may[c] != 0 {
                            y |= 1 << x;
                        }
                    }
                    (m, y)
                }
                Op::Forall(r, c) => {
                    let (mut m, mut y) = (0, 0);
                    for (x, b) in self.edges[r].iter().enumerate() {
                        let possible = b.val | (full & !b.known);
                        if possible & !self.must[c] & full == 0 {
                            m |= 1 << x;
                        }
                        if b.val & !self.may[c] & full == 0 {
                            y |= 1 << x;
                        }
                    }
                    (m, y)
                }
            };
            self.must[i] = m;
            self.may[i] = y;
        }
    }

    fn lowest_height(&self, mask: u64) -> Option<usize> {
        (0..self.n).filter(|&x| mask >> x & 1 == 1).map(|x| self.heights[x]).min()
    }

    fn layer(&self, k: usize) -> u64 {
        self.layer.get(k).copied().unwrap_or(0)
    }

    fn below(&self, k: usize) -> u64 {
        self.below[k.min(self.layer.len())]
    }

    fn check(&self, req: Req) -> Tri {
        let (must, may) = (&self.must, &self.may);
        match req {
            Req::Gci { lhs, rhs, holds } => {
                let t = Tri::decide(may[lhs] & !must[rhs] == 0, must[lhs] & !may[rhs] != 0);
                if holds {
                    t
                } else {
                    t.not()
                }
            }
            Req::Dci { lhs, rhs, holds } => {
                let violated = (0..self.n).any(|x| {
                    let bit = 1u64 << x;
                    must[lhs] & bit != 0 && may[rhs] & bit == 0 && self.below(self.heights[x]) & may[lhs] == 0
                });
                let cap = match self.lowest_height(must[lhs]) {
                    Some(l) => self.below(l + 1),
                    None => self.full,
                };
                let t = Tri::decide(may[lhs] & cap & !must[rhs] == 0, violated);
                if holds {
                    t
                } else {
                    t.not()
                }
            }
            Req::HeightIs(c, None) => Tri::decide(may[c] == 0, must[c] != 0),
            Req::HeightIs(c, Some(k)) => Tri::decide(
                self.below(k) & may[c] == 0 && self.layer(k) & must[c] != 0,
                self.below(k) & must[c] != 0 || self.layer(k) & may[c] == 0,
            ),
            Req::HeightBelow(c, None) => Tri::decide(must[c] != 0, may[c] == 0),
            Req::HeightBelow(c, Some(k)) => Tri::decide(self.below(k) & must[c] != 0, self.below(k) & may[c] == 0),
        }
    }

    fn status(&mut self) -> Tri {
        self.eval();
        let mut all = Tri::True;
        for &r in &self.p.reqs {
            match self.check(r) {
                Tri::False => return Tri::False,
                Tri::Unknown => all = Tri::Unknown,
                Tri::True => {}
            }
        }
        all
    }

    fn build(&self) -> RankedInterpretation {
        let mut base = FiniteInterpretation::new(self.n).expect("n > 0");
        for (a, name) in self.p.atoms.iter().enumerate() {
            let v = self.atoms[a].val;
            base.set_atom(name, (0..self.n).filter(|&x| v >> x & 1 == 1)).expect("in range");
        }
        for (r, name) in self.p.roles.iter().enumerate() {
            base.declare_role(name);
            for x in 0..self.n {
                let v = self.edges[r][x].val;
                for y in (0..self.n).filter(|&y| v >> y & 1 == 1) {
                    base.add_edge(name, x, y).expect("in range");
                }
            }
        }
        RankedInterpretation::new(base, self.heights.clone()).expect("convex by construction")
    }

    fn dfs<F>(&mut self, i: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&RankedInterpretation) -> ControlFlow<()>,
    {
        self.explored += 1;
        match self.status() {
            Tri::False => return ControlFlow::Continue(()),
            Tri::True => return f(&self.build()),
            Tri::Unknown => {}
        }
        let v = self.vars[i];
        let (b, bit) = self.bits(v);
        b.known |= bit;
        self.dfs(i + 1, f)?;
        let (b, bit) = self.bits(v);
        b.val |= bit;
        let flow = self.dfs(i + 1, f);
        let (b, bit) = self.bits(v);
        b.known &= !bit;
        b.val &= !bit;
        flow
    }
}
