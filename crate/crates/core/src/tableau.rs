//! Classical ALC satisfiability and entailment w.r.t. a general TBox.
//!
//! A standard completion-tree tableau over NNF concepts. Every node carries
//! the internalised TBox `{nnf(¬E ⊔ F) | E ⊑ F ∈ T}`; termination comes from
//! ancestor subset blocking. Rules fire in a fixed order (⊓, ⊔, ∃, ∀) and
//! disjunctions are explored left branch first, so statistics are
//! reproducible.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::concept::{Concept, Gci};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauConfig {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { max_nodes: 100_000, max_depth: 512 }
    }
}

impl TableauConfig {
    pub fn new(max_nodes: usize, max_depth: usize) -> Result<Self, ReasonerError> {
        if max_nodes == 0 || max_depth == 0 {
            return Err(ReasonerError::InvalidConfig);
        }
        Ok(TableauConfig { max_nodes, max_depth })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Nodes,
    Depth,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    /// The search outgrew the configured budget. Not a verdict: re-run with
    /// larger limits.
    #[error("tableau resource limit exceeded: {which:?} > {limit}")]
    ResourceLimit { which: Limit, limit: usize },
    #[error("tableau limits must be positive")]
    InvalidConfig,
}

/// Counters shared by every call made through one reasoner session.
#[derive(Debug, Default)]
pub struct EntailmentStats {
    checks: AtomicU64,
    nodes_expanded: AtomicU64,
}

impl EntailmentStats {
    pub fn checks(&self) -> u64 {
        self.checks.load(Ordering::Relaxed)
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes_expanded.load(Ordering::Relaxed)
    }
}

type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Bottom,
    Atom(Id),
    NegAtom(Id),
    And(Id, Id),
    Or(Id, Id),
    Exists(Id, Id),
    Forall(Id, Id),
}

/// Hash-consed NNF concepts for one tableau run.
#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    names: HashMap<String, Id>,
}

impl Arena {
    fn name(&mut self, s: &str) -> Id {
        if let Some(&id) = self.names.get(s) {
            return id;
        }
        let id = self.names.len() as Id;
        self.names.insert(s.to_string(), id);
        id
    }

    fn node(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    /// Interns `c`, which must already be in NNF.
    fn intern(&mut self, c: &Concept) -> Id {
        let n = match c {
            Concept::Top => Node::Top,
            Concept::Bottom => Node::Bottom,
            Concept::Atom(a) => Node::Atom(self.name(a)),
            Concept::Not(inner) => match &**inner {
                Concept::Atom(a) => Node::NegAtom(self.name(a)),
                _ => unreachable!("intern expects NNF"),
            },
            Concept::And(l, r) => {
                let (l, r) = (self.intern(l), self.intern(r));
                Node::And(l, r)
            }
            Concept::Or(l, r) => {
                let (l, r) = (self.intern(l), self.intern(r));
                Node::Or(l, r)
            }
            Concept::Exists(role, f) => {
                let role = self.name(role);
                Node::Exists(role, self.intern(f))
            }
            Concept::Forall(role, f) => {
                let role = self.name(role);
                Node::Forall(role, self.intern(f))
            }
        };
        self.node(n)
    }
}

type Label = BTreeSet<Id>;

struct Tableau<'a> {
    arena: Arena,
    tbox: Vec<Id>,
    config: TableauConfig,
    stats: &'a EntailmentStats,
    nodes: usize,
    unsat: HashSet<Label>,
}

impl<'a> Tableau<'a> {
    fn new(tbox: &[Gci], config: TableauConfig, stats: &'a EntailmentStats) -> Self {
        let mut arena = Arena::default();
        let mut ids: Vec<Id> = tbox
            .iter()
            .map(|g| {
                let internal = Concept::or(Concept::not(g.lhs.clone()), g.rhs.clone());
                arena.intern(&internal.nnf())
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        Tableau { arena, tbox: ids, config, stats, nodes: 0, unsat: HashSet::new() }
    }

    fn satisfiable(&mut self, c: &Concept) -> Result<bool, ReasonerError> {
        let root = self.arena.intern(&c.nnf());
        let mut label: Label = self.tbox.iter().copied().collect();
        label.insert(root);
        let mut ancestors = Vec::new();
        self.expand_node(label, &mut ancestors)
    }

    /// Decides one completion-tree node: propositional saturation with
    /// left-first backtracking over disjunctions, then successor generation.
    fn expand_node(&mut self, label: Label, ancestors: &mut Vec<Label>) -> Result<bool, ReasonerError> {
        self.nodes += 1;
        self.stats.nodes_expanded.fetch_add(1, Ordering::Relaxed);
        if self.nodes > self.config.max_nodes {
            return Err(ReasonerError::ResourceLimit { which: Limit::Nodes, limit: self.config.max_nodes });
        }
        if ancestors.len() > self.config.max_depth {
            return Err(ReasonerError::ResourceLimit { which: Limit::Depth, limit: self.config.max_depth });
        }

        let mut branches = vec![label];
        while let Some(mut label) = branches.pop() {
            if !self.saturate_and(&mut label) {
                continue;
            }
            if let Some((l, r)) = self.open_disjunction(&label) {
                let mut right = label.clone();
                right.insert(r);
                branches.push(right);
                label.insert(l);
                branches.push(label);
                continue;
            }
            if self.unsat.contains(&label) {
                continue;
            }
            if self.expand_successors(&label, ancestors)? {
                return Ok(true);
            }
            self.unsat.insert(label);
        }
        Ok(false)
    }

    /// Applies the ⊓-rule to a fixpoint. Returns false on a clash.
    fn saturate_and(&self, label: &mut Label) -> bool {
        let mut work: Vec<Id> = label.iter().copied().collect();
        while let Some(id) = work.pop() {
            match self.arena.nodes[id as usize] {
                Node::Bottom => return false,
                Node::Atom(a) => {
                    if let Some(neg) = self.arena.index.get(&Node::NegAtom(a)) {
                        if label.contains(neg) {
                            return false;
                        }
                    }
                }
                Node::NegAtom(a) => {
                    if let Some(pos) = self.arena.index.get(&Node::Atom(a)) {
                        if label.contains(pos) {
                            return false;
                        }
                    }
                }
                Node::And(l, r) => {
                    for part in [l, r] {
                        if label.insert(part) {
                            work.push(part);
                        }
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn open_disjunction(&self, label: &Label) -> Option<(Id, Id)> {
        label.iter().find_map(|&id| match self.arena.nodes[id as usize] {
            Node::Or(l, r) if !label.contains(&l) && !label.contains(&r) => Some((l, r)),
            _ => None,
        })
    }

    fn expand_successors(&mut self, label: &Label, ancestors: &mut Vec<Label>) -> Result<bool, ReasonerError> {
        if ancestors.iter().any(|a| label.is_subset(a)) {
            return Ok(true);
        }
        let demands: Vec<(Id, Id)> = label
            .iter()
            .filter_map(|&id| match self.arena.nodes[id as usize] {
                Node::Exists(role, filler) => Some((role, filler)),
                _ => None,
            })
            .collect();
        for (role, filler) in demands {
            let mut succ: Label = self.tbox.iter().copied().collect();
            succ.insert(filler);
            for &id in label {
                if let Node::Forall(r, f) = self.arena.nodes[id as usize] {
                    if r == role {
                        succ.insert(f);
                    }
                }
            }
            ancestors.push(label.clone());
            let ok = self.expand_node(succ, ancestors);
            ancestors.pop();
            if !ok? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A classical reasoning session: fixed limits plus accumulated statistics.
#[derive(Debug, Default)]
pub struct ClassicalReasoner {
    config: TableauConfig,
    stats: EntailmentStats,
}

impl ClassicalReasoner {
    pub fn new(config: TableauConfig) -> Self {
        ClassicalReasoner { config, stats: EntailmentStats::default() }
    }

    pub fn config(&self) -> TableauConfig {
        self.config
    }

    pub fn stats(&self) -> &EntailmentStats {
        &self.stats
    }

    pub fn is_satisfiable(&self, c: &Concept, tbox: &[Gci]) -> Result<bool, ReasonerError> {
        Tableau::new(tbox, self.config, &self.stats).satisfiable(c)
    }

    /// `tbox ⊨ lhs ⊑ rhs`, decided as unsatisfiability of `lhs ⊓ ¬rhs`.
    pub fn entails(&self, tbox: &[Gci], g: &Gci) -> Result<bool, ReasonerError> {
        self.stats.checks.fetch_add(1, Ordering::Relaxed);
        let probe = Concept::and(g.lhs.clone(), Concept::not(g.rhs.clone()));
        Ok(!self.is_satisfiable(&probe, tbox)?)
    }
}

pub fn is_satisfiable(c: &Concept, tbox: &[Gci], cfg: TableauConfig) -> Result<bool, ReasonerError> {
    ClassicalReasoner::new(cfg).is_satisfiable(c, tbox)
}

pub fn entails(tbox: &[Gci], g: &Gci, cfg: TableauConfig) -> Result<bool, ReasonerError> {
    ClassicalReasoner::new(cfg).entails(tbox, g)
}
