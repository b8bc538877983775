//! The ALC concept language, axioms and defeasible knowledge bases.
//!
//! Everything here is plain immutable data plus purely syntactic
//! transformations: negation normal form, subconcept closure and the
//! materialisation of defeasible inclusions.

use std::collections::BTreeSet;
use std::fmt;

/// An ALC concept expression.
///
/// Conjunction and disjunction are binary; n-ary forms are right-nested
/// folds (see [`conjoin`] and [`disjoin`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Exists(String, Box<Concept>),
    Forall(String, Box<Concept>),
}

impl Concept {
    pub fn atom(name: impl Into<String>) -> Self {
        Concept::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn and(l: Concept, r: Concept) -> Self {
        Concept::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Concept, r: Concept) -> Self {
        Concept::Or(Box::new(l), Box::new(r))
    }

    pub fn exists(role: impl Into<String>, filler: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(filler))
    }

    pub fn forall(role: impl Into<String>, filler: Concept) -> Self {
        Concept::Forall(role.into(), Box::new(filler))
    }

    /// Negation normal form: `Not` is pushed down until it only wraps atoms.
    pub fn nnf(&self) -> Concept {
        nnf(self)
    }

    /// Nesting depth of the expression tree; atoms, `Top` and `Bottom` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atom(_) => 0,
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => 1 + c.depth(),
            Concept::And(l, r) | Concept::Or(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// True when `Not` only wraps atoms.
    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atom(_) => true,
            Concept::Not(c) => matches!(**c, Concept::Atom(_)),
            Concept::And(l, r) | Concept::Or(l, r) => l.is_nnf() && r.is_nnf(),
            Concept::Exists(_, c) | Concept::Forall(_, c) => c.is_nnf(),
        }
    }

    /// Adds the atom and role names occurring in `self` to `sig`.
    pub fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Concept::Top | Concept::Bottom => {}
            Concept::Atom(a) => {
                sig.atoms.insert(a.clone());
            }
            Concept::Not(c) => c.collect_signature(sig),
            Concept::And(l, r) | Concept::Or(l, r) => {
                l.collect_signature(sig);
                r.collect_signature(sig);
            }
            Concept::Exists(role, c) | Concept::Forall(role, c) => {
                sig.roles.insert(role.clone());
                c.collect_signature(sig);
            }
        }
    }

    /// The direct subconcepts of this node.
    pub fn children(&self) -> Vec<&Concept> {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atom(_) => vec![],
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => vec![c],
            Concept::And(l, r) | Concept::Or(l, r) => vec![l, r],
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_concept(self))
    }
}

pub fn nnf(c: &Concept) -> Concept {
    match c {
        Concept::Top | Concept::Bottom | Concept::Atom(_) => c.clone(),
        Concept::And(l, r) => Concept::and(nnf(l), nnf(r)),
        Concept::Or(l, r) => Concept::or(nnf(l), nnf(r)),
        Concept::Exists(role, f) => Concept::exists(role.clone(), nnf(f)),
        Concept::Forall(role, f) => Concept::forall(role.clone(), nnf(f)),
        Concept::Not(inner) => negated_nnf(inner),
    }
}

/// nnf(¬c) without building the intermediate `Not` node.
fn negated_nnf(c: &Concept) -> Concept {
    match c {
        Concept::Top => Concept::Bottom,
        Concept::Bottom => Concept::Top,
        Concept::Atom(_) => Concept::not(c.clone()),
        Concept::Not(inner) => nnf(inner),
        Concept::And(l, r) => Concept::or(negated_nnf(l), negated_nnf(r)),
        Concept::Or(l, r) => Concept::and(negated_nnf(l), negated_nnf(r)),
        Concept::Exists(role, f) => Concept::forall(role.clone(), negated_nnf(f)),
        Concept::Forall(role, f) => Concept::exists(role.clone(), negated_nnf(f)),
    }
}

/// Right-nested conjunction; the empty conjunction is `Top`.
pub fn conjoin<I: IntoIterator<Item = Concept>>(cs: I) -> Concept {
    let items: Vec<Concept> = cs.into_iter().collect();
    items.into_iter().rev().reduce(|acc, c| Concept::and(c, acc)).unwrap_or(Concept::Top)
}

/// Right-nested disjunction; the empty disjunction is `Bottom`.
pub fn disjoin<I: IntoIterator<Item = Concept>>(cs: I) -> Concept {
    let items: Vec<Concept> = cs.into_iter().collect();
    items.into_iter().rev().reduce(|acc, c| Concept::or(c, acc)).unwrap_or(Concept::Bottom)
}

/// Smallest superset of `cs` closed under direct subconcepts and under a
/// single negation of every concept that is not itself a negation.
pub fn subconcept_closure<'a, I>(cs: I) -> BTreeSet<Concept>
where
    I: IntoIterator<Item = &'a Concept>,
{
    let mut out = BTreeSet::new();
    let mut work: Vec<Concept> = cs.into_iter().cloned().collect();
    while let Some(c) = work.pop() {
        if out.contains(&c) {
            continue;
        }
        for child in c.children() {
            work.push(child.clone());
        }
        if !matches!(c, Concept::Not(_)) {
            work.push(Concept::not(c.clone()));
        }
        out.insert(c);
    }
    out
}

/// The classical reading `¬C ⊔ D` of each defeasible inclusion, in input order.
pub fn materialise(d: &[Dci]) -> Vec<Concept> {
    d.iter().map(Dci::materialisation).collect()
}

/// A strict general concept inclusion `lhs ⊑ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gci {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Gci {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Gci { lhs, rhs }
    }
}

/// A defeasible concept inclusion `lhs ⊑~ rhs`: typical `lhs` objects are `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dci {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Dci {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Dci { lhs, rhs }
    }

    pub fn materialisation(&self) -> Concept {
        Concept::or(Concept::not(self.lhs.clone()), self.rhs.clone())
    }

    /// The strict counterpart `lhs ⊑ rhs`.
    pub fn to_gci(&self) -> Gci {
        Gci::new(self.lhs.clone(), self.rhs.clone())
    }
}

/// Either kind of axiom; also the shape of a query.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Strict(Gci),
    Defeasible(Dci),
}

impl Axiom {
    pub fn lhs(&self) -> &Concept {
        match self {
            Axiom::Strict(g) => &g.lhs,
            Axiom::Defeasible(d) => &d.lhs,
        }
    }

    pub fn rhs(&self) -> &Concept {
        match self {
            Axiom::Strict(g) => &g.rhs,
            Axiom::Defeasible(d) => &d.rhs,
        }
    }

    pub fn is_defeasible(&self) -> bool {
        matches!(self, Axiom::Defeasible(_))
    }

    pub fn collect_signature(&self, sig: &mut Signature) {
        self.lhs().collect_signature(sig);
        self.rhs().collect_signature(sig);
    }
}

impl From<Gci> for Axiom {
    fn from(g: Gci) -> Self {
        Axiom::Strict(g)
    }
}

impl From<Dci> for Axiom {
    fn from(d: Dci) -> Self {
        Axiom::Defeasible(d)
    }
}

impl fmt::Display for Gci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [= {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Dci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~[= {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Strict(g) => g.fmt(f),
            Axiom::Defeasible(d) => d.fmt(f),
        }
    }
}

/// Atom and role names used by some set of expressions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub atoms: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

/// A defeasible knowledge base: a TBox of strict inclusions and a DTBox of
/// defeasible ones. Source order is kept for deterministic output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub tbox: Vec<Gci>,
    pub dtbox: Vec<Dci>,
}

impl KnowledgeBase {
    pub fn new(tbox: Vec<Gci>, dtbox: Vec<Dci>) -> Self {
        KnowledgeBase { tbox, dtbox }
    }

    pub fn is_empty(&self) -> bool {
        self.tbox.is_empty() && self.dtbox.is_empty()
    }

    pub fn axioms(&self) -> impl Iterator<Item = Axiom> + '_ {
        self.tbox.iter().cloned().map(Axiom::Strict).chain(self.dtbox.iter().cloned().map(Axiom::Defeasible))
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        for a in self.axioms() {
            a.collect_signature(&mut sig);
        }
        sig
    }

    pub fn push(&mut self, axiom: Axiom) {
        match axiom {
            Axiom::Strict(g) => self.tbox.push(g),
            Axiom::Defeasible(d) => self.dtbox.push(d),
        }
    }
}
