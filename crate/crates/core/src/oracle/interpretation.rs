use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::concept::{Axiom, Concept};
use crate::ranking::RankValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretationError {
    #[error("domain must be non-empty")]
    EmptyDomain,
    #[error("element {element} outside domain of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("expected {expected} heights, got {found}")]
    HeightCount { expected: usize, found: usize },
    #[error("heights not convex: {height} used but {missing} is empty")]
    NotConvex { height: usize, missing: usize },
    #[error("order is reflexive at {0}")]
    Reflexive(usize),
    #[error("order is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
}

/// A classical interpretation over the domain `0..domain_size`.
///
/// Names absent from the maps have empty extensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterpretation {
    domain_size: usize,
    atoms: BTreeMap<String, FixedBitSet>,
    /// `roles[r][x]` is the set of `r`-successors of `x`.
    roles: BTreeMap<String, Vec<FixedBitSet>>,
}

impl FiniteInterpretation {
    pub fn new(domain_size: usize) -> Result<Self, InterpretationError> {
        if domain_size == 0 {
            return Err(InterpretationError::EmptyDomain);
        }
        Ok(FiniteInterpretation { domain_size, atoms: BTreeMap::new(), roles: BTreeMap::new() })
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    fn check(&self, x: usize) -> Result<(), InterpretationError> {
        if x < self.domain_size {
            Ok(())
        } else {
            Err(InterpretationError::OutOfRange { element: x, size: self.domain_size })
        }
    }

    /// Sets the extension of an atom, replacing any previous one.
    pub fn set_atom<I>(&mut self, name: &str, elems: I) -> Result<(), InterpretationError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = FixedBitSet::with_capacity(self.domain_size);
        for x in elems {
            self.check(x)?;
            set.insert(x);
        }
        self.atoms.insert(name.to_string(), set);
        Ok(())
    }

    /// Declares a role with no edges, so it shows up in the vocabulary.
    pub fn declare_role(&mut self, name: &str) {
        let n = self.domain_size;
        self.roles.entry(name.to_string()).or_insert_with(|| vec![FixedBitSet::with_capacity(n); n]);
    }

    pub fn add_edge(&mut self, role: &str, x: usize, y: usize) -> Result<(), InterpretationError> {
        self.check(x)?;
        self.check(y)?;
        self.declare_role(role);
        self.roles.get_mut(role).expect("declared")[x].insert(y);
        Ok(())
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(String::as_str)
    }

    pub fn role_names(&self) -> impl Iterator<Item = &str> {
        self.roles.keys().map(String::as_str)
    }

    pub fn atom(&self, name: &str) -> FixedBitSet {
        self.atoms.get(name).cloned().unwrap_or_else(|| FixedBitSet::with_capacity(self.domain_size))
    }

    pub fn successors(&self, role: &str, x: usize) -> Option<&FixedBitSet> {
        self.roles.get(role).map(|s| &s[x])
    }

    pub fn edges(&self, role: &str) -> Vec<(usize, usize)> {
        match self.roles.get(role) {
            None => Vec::new(),
            Some(succ) => succ.iter().enumerate().flat_map(|(x, ys)| ys.ones().map(move |y| (x, y))).collect(),
        }
    }

    pub fn full(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.domain_size);
        s.insert_range(..);
        s
    }

    /// The set-theoretic extension of `c`.
    pub fn extension(&self, c: &Concept) -> FixedBitSet {
        let n = self.domain_size;
        match c {
            Concept::Top => self.full(),
            Concept::Bottom => FixedBitSet::with_capacity(n),
            Concept::Atom(a) => self.atom(a),
            Concept::Not(d) => {
                let mut s = self.extension(d);
                s.toggle_range(..);
                s
            }
            Concept::And(l, r) => {
                let mut s = self.extension(l);
                s.intersect_with(&self.extension(r));
                s
            }
            Concept::Or(l, r) => {
                let mut s = self.extension(l);
                s.union_with(&self.extension(r));
                s
            }
            Concept::Exists(role, f) => {
                let fe = self.extension(f);
                let mut s = FixedBitSet::with_capacity(n);
                if let Some(succ) = self.roles.get(role) {
                    for (x, ys) in succ.iter().enumerate() {
                        if !ys.is_disjoint(&fe) {
                            s.insert(x);
                        }
                    }
                }
                s
            }
            Concept::Forall(role, f) => {
                let fe = self.extension(f);
                let mut s = self.full();
                if let Some(succ) = self.roles.get(role) {
                    for (x, ys) in succ.iter().enumerate() {
                        if !ys.is_subset(&fe) {
                            s.set(x, false);
                        }
                    }
                }
                s
            }
        }
    }

    /// Classical satisfaction of `C ⊑ D`.
    pub fn satisfies_gci(&self, lhs: &Concept, rhs: &Concept) -> bool {
        self.extension(lhs).is_subset(&self.extension(rhs))
    }
}

/// An interpretation with a preference order on its elements.
pub trait Preferential {
    fn base(&self) -> &FiniteInterpretation;

    /// The minimal elements of `set`.
    fn minimal(&self, set: &FixedBitSet) -> FixedBitSet;

    fn domain_size(&self) -> usize {
        self.base().domain_size()
    }

    fn extension(&self, c: &Concept) -> FixedBitSet {
        self.base().extension(c)
    }

    fn min_elements(&self, c: &Concept) -> FixedBitSet {
        self.minimal(&self.extension(c))
    }

    fn satisfies_dci(&self, lhs: &Concept, rhs: &Concept) -> bool {
        self.min_elements(lhs).is_subset(&self.extension(rhs))
    }

    fn satisfies(&self, a: &Axiom) -> bool {
        match a {
            Axiom::Strict(g) => self.base().satisfies_gci(&g.lhs, &g.rhs),
            Axiom::Defeasible(d) => self.satisfies_dci(&d.lhs, &d.rhs),
        }
    }

    fn satisfies_all<'a, I: IntoIterator<Item = &'a Axiom>>(&self, axioms: I) -> bool
    where
        Self: Sized,
    {
        axioms.into_iter().all(|a| self.satisfies(a))
    }
}

/// A modular interpretation given by a convex height function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedInterpretation {
    base: FiniteInterpretation,
    heights: Vec<usize>,
}

fn check_convex(heights: &[usize]) -> Result<(), InterpretationError> {
    let Some(&top) = heights.iter().max() else {
        return Ok(());
    };
    let mut used = vec![false; top + 1];
    for &h in heights {
        used[h] = true;
    }
    match used.iter().position(|u| !u) {
        Some(missing) => Err(InterpretationError::NotConvex { height: top, missing }),
        None => Ok(()),
    }
}

impl RankedInterpretation {
    pub fn new(base: FiniteInterpretation, heights: Vec<usize>) -> Result<Self, InterpretationError> {
        if heights.len() != base.domain_size() {
            return Err(InterpretationError::HeightCount { expected: base.domain_size(), found: heights.len() });
        }
        check_convex(&heights)?;
        Ok(RankedInterpretation { base, heights })
    }

    /// All elements at height 0.
    pub fn flat(base: FiniteInterpretation) -> Self {
        let heights = vec![0; base.domain_size()];
        RankedInterpretation { base, heights }
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn layer_count(&self) -> usize {
        self.heights.iter().max().map_or(0, |h| h + 1)
    }

    pub fn into_base(self) -> FiniteInterpretation {
        self.base
    }

    /// Layer of the minimal elements of `c`; infinite when `c` is empty.
    pub fn height_of_concept(&self, c: &Concept) -> RankValue {
        self.extension(c).ones().map(|x| self.heights[x]).min().map_or(RankValue::Infinite, RankValue::Finite)
    }

    /// `x ≺ y` iff `height(x) < height(y)`, as a preferential interpretation.
    pub fn to_preferential(&self) -> PreferentialInterpretation {
        let n = self.domain_size();
        let below = (0..n)
            .map(|y| {
                let mut s = FixedBitSet::with_capacity(n);
                for x in 0..n {
                    if self.heights[x] < self.heights[y] {
                        s.insert(x);
                    }
                }
                s
            })
            .collect();
        PreferentialInterpretation { base: self.base.clone(), below }
    }

    /// The order pairs `(x, y)` with `x ≺ y`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.domain_size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.heights[x] < self.heights[y] {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

impl Preferential for RankedInterpretation {
    fn base(&self) -> &FiniteInterpretation {
        &self.base
    }

    fn minimal(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.domain_size());
        if let Some(low) = set.ones().map(|x| self.heights[x]).min() {
            for x in set.ones().filter(|&x| self.heights[x] == low) {
                out.insert(x);
            }
        }
        out
    }
}

/// An interpretation with an arbitrary strict partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferentialInterpretation {
    base: FiniteInterpretation,
    /// `below[y]` holds every `x` with `x ≺ y`.
    below: Vec<FixedBitSet>,
}

impl PreferentialInterpretation {
    /// Builds from order pairs `(x, y)` meaning `x ≺ y`. The pairs must
    /// already be transitively closed.
    pub fn new(base: FiniteInterpretation, order: &[(usize, usize)]) -> Result<Self, InterpretationError> {
        let n = base.domain_size();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &(x, y) in order {
            for e in [x, y] {
                if e >= n {
                    return Err(InterpretationError::OutOfRange { element: e, size: n });
                }
            }
            if x == y {
                return Err(InterpretationError::Reflexive(x));
            }
            below[y].insert(x);
        }
        for y in 0..n {
            for x in below[y].ones() {
                for w in below[x].ones() {
                    if !below[y].contains(w) {
                        return Err(InterpretationError::NotTransitive(w, x, y));
                    }
                }
            }
        }
        Ok(PreferentialInterpretation { base, below })
    }

    pub fn precedes(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        self.below.iter().enumerate().flat_map(|(y, xs)| xs.ones().map(move |x| (x, y))).collect()
    }
}

impl Preferential for PreferentialInterpretation {
    fn base(&self) -> &FiniteInterpretation {
        &self.base
    }

    fn minimal(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.domain_size());
        for x in set.ones() {
            if self.below[x].is_disjoint(set) {
                out.insert(x);
            }
        }
        out
    }
}
