//! Propositional encoding of one search shape (domain size and height map).
//!
//! Each atom membership and role edge is a variable; every compiled concept
//! gets one literal per element, defined by full equivalences so that a
//! model of the clauses is exactly an interpretation with its extensions.

use varisat::{ExtendFormula, Lit, Solver};

use super::interpretation::{FiniteInterpretation, RankedInterpretation};
use super::search::{Op, Problem, Req};

struct Encoder<'p> {
    p: &'p Problem,
    n: usize,
    heights: &'p [usize],
    solver: Solver<'static>,
    truth: Lit,
    atoms: Vec<Vec<Lit>>,
    edges: Vec<Vec<Vec<Lit>>>,
    /// `ext[i][x]`: element `x` is an instance of op `i`.
    ext: Vec<Vec<Lit>>,
}

impl<'p> Encoder<'p> {
    fn new(p: &'p Problem, heights: &'p [usize]) -> Self {
        let n = heights.len();
        let mut solver = Solver::new();
        let truth = solver.new_lit();
        solver.add_clause(&[truth]);
        let atoms = (0..p.atoms.len()).map(|_| (0..n).map(|_| solver.new_lit()).collect()).collect();
        let edges =
            (0..p.roles.len()).map(|_| (0..n).map(|_| (0..n).map(|_| solver.new_lit()).collect()).collect()).collect();
        Encoder { p, n, heights, solver, truth, atoms, edges, ext: Vec::new() }
    }

    fn and(&mut self, l: Lit, r: Lit) -> Lit {
        let v = self.solver.new_lit();
        self.solver.add_clause(&[!v, l]);
        self.solver.add_clause(&[!v, r]);
        self.solver.add_clause(&[v, !l, !r]);
        v
    }

    /// `v <-> exists y. edge(x, y) & c(y)`.
    fn exists(&mut self, r: usize, c: &[Lit], x: usize) -> Lit {
        let v = self.solver.new_lit();
        let mut wide = vec![!v];
        for (y, &cy) in c.iter().enumerate() {
            let w = self.and(self.edges[r][x][y], cy);
            self.solver.add_clause(&[!w, v]);
            wide.push(w);
        }
        self.solver.add_clause(&wide);
        v
    }

    fn define_ops(&mut self) {
        for i in 0..self.p.ops.len() {
            let lits: Vec<Lit> = match self.p.ops[i] {
                Op::Top => vec![self.truth; self.n],
                Op::Bottom => vec![!self.truth; self.n],
                Op::Atom(a) => self.atoms[a].clone(),
                Op::Not(c) => self.ext[c].iter().map(|&l| !l).collect(),
                Op::And(l, r) => (0..self.n).map(|x| self.and(self.ext[l][x], self.ext[r][x])).collect(),
                Op::Or(l, r) => (0..self.n).map(|x| !self.and(!self.ext[l][x], !self.ext[r][x])).collect(),
                Op::Exists(r, c) => {
                    let c = self.ext[c].clone();
                    (0..self.n).map(|x| self.exists(r, &c, x)).collect()
                }
                Op::Forall(r, c) => {
                    let c: Vec<Lit> = self.ext[c].iter().map(|&l| !l).collect();
                    (0..self.n).map(|x| !self.exists(r, &c, x)).collect()
                }
            };
            self.ext.push(lits);
        }
    }

    fn lower(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let h = self.heights[x];
        (0..self.n).filter(move |&y| self.heights[y] < h)
    }

    fn at_most(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&y| self.heights[y] < k)
    }

    /// Some element satisfies every literal `lits(x)`.
    fn some(&mut self, lits: impl Fn(&Self, usize) -> Vec<Lit>) {
        let mut wide = Vec::new();
        for x in 0..self.n {
            let w = self.solver.new_lit();
            for l in lits(self, x) {
                self.solver.add_clause(&[!w, l]);
            }
            wide.push(w);
        }
        self.solver.add_clause(&wide);
    }

    fn require(&mut self, req: Req) {
        match req {
            Req::Gci { lhs, rhs, holds: true } => {
                for x in 0..self.n {
                    self.solver.add_clause(&[!self.ext[lhs][x], self.ext[rhs][x]]);
                }
            }
            Req::Gci { lhs, rhs, holds: false } => {
                self.some(|e, x| vec![e.ext[lhs][x], !e.ext[rhs][x]]);
            }
            Req::Dci { lhs, rhs, holds: true } => {
                for x in 0..self.n {
                    let mut clause = vec![!self.ext[lhs][x], self.ext[rhs][x]];
                    clause.extend(self.lower(x).map(|y| self.ext[lhs][y]));
                    self.solver.add_clause(&clause);
                }
            }
            Req::Dci { lhs, rhs, holds: false } => {
                self.some(|e, x| {
                    let mut lits = vec![e.ext[lhs][x], !e.ext[rhs][x]];
                    lits.extend(e.lower(x).map(|y| !e.ext[lhs][y]));
                    lits
                });
            }
            Req::HeightIs(c, None) => {
                for x in 0..self.n {
                    self.solver.add_clause(&[!self.ext[c][x]]);
                }
            }
            Req::HeightIs(c, Some(k)) => {
                for y in self.at_most(k).collect::<Vec<_>>() {
                    self.solver.add_clause(&[!self.ext[c][y]]);
                }
                let at: Vec<Lit> = (0..self.n).filter(|&y| self.heights[y] == k).map(|y| self.ext[c][y]).collect();
                self.solver.add_clause(&at);
            }
            Req::HeightBelow(c, bound) => {
                let k = bound.unwrap_or(usize::MAX);
                let some: Vec<Lit> = self.at_most(k).map(|y| self.ext[c][y]).collect();
                self.solver.add_clause(&some);
            }
        }
    }

    fn build(&self, model: &[Lit]) -> RankedInterpretation {
        let mut value = vec![false; model.len()];
        for l in model {
            value[l.var().index()] = l.is_positive();
        }
        let holds = |l: Lit| value[l.var().index()] == l.is_positive();
        let mut base = FiniteInterpretation::new(self.n).expect("n > 0");
        for (a, name) in self.p.atoms.iter().enumerate() {
            let elems = (0..self.n).filter(|&x| holds(self.atoms[a][x]));
            base.set_atom(name, elems).expect("in range");
        }
        for (r, name) in self.p.roles.iter().enumerate() {
            base.declare_role(name);
            for x in 0..self.n {
                for y in 0..self.n {
                    if holds(self.edges[r][x][y]) {
                        base.add_edge(name, x, y).expect("in range");
                    }
                }
            }
        }
        RankedInterpretation::new(base, self.heights.to_vec()).expect("convex by construction")
    }
}

/// A model of every requirement of `p` with exactly these heights, if any.
pub(super) fn solve_shape(p: &Problem, heights: &[usize]) -> Option<RankedInterpretation> {
    let mut enc = Encoder::new(p, heights);
    enc.define_ops();
    for &r in &p.reqs {
        enc.require(r);
    }
    // The solver reports an error only for proof output or interruption.
    if enc.solver.solve().expect("no proof or interrupt configured") {
        let model = enc.solver.model().expect("sat has a model");
        Some(enc.build(&model))
    } else {
        None
    }
}
