//! Exceptionality ranking and rational closure query answering.
//!
//! Everything here reduces to classical entailment checks against the
//! normalised TBox `T*`, using the materialisations `⊓Ē` of the
//! exceptionality sequence `E₀ ⊇ E₁ ⊇ … ⊇ Eₙ`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::concept::{conjoin, materialise, Axiom, Concept, Dci, Gci, KnowledgeBase};
use crate::tableau::{ClassicalReasoner, ReasonerError, TableauConfig};

/// Rank of a concept or axiom: a layer index, or infinite when nothing of
/// that shape can exist. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankValue {
    Finite(usize),
    Infinite,
}

impl RankValue {
    pub fn is_infinite(self) -> bool {
        self == RankValue::Infinite
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::Finite(i) => write!(f, "{i}"),
            RankValue::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for RankValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RankValue::Finite(i) => s.serialize_u64(*i as u64),
            RankValue::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Entailment checks spent per phase of [`DefeasibleReasoner::compute_ranking`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RankingStats {
    pub ranking_checks: u64,
    pub consistency_checks: u64,
}

/// Output of the ranking procedure; computed once per knowledge base and
/// reused for every query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    /// The normalised TBox: the input TBox plus every promoted DCI as a GCI.
    pub tstar: Vec<Gci>,
    /// DCIs of finite rank, in input order.
    pub dstar: Vec<Dci>,
    /// `E₀ = dstar, E₁, …, Eₙ`, each non-empty and strictly shrinking.
    pub e_seq: Vec<Vec<Dci>>,
    /// `Dⱼ = Eⱼ \ Eⱼ₊₁`.
    pub partition: Vec<Vec<Dci>>,
    /// DCIs found to have infinite rank, in the order they were promoted.
    pub moved_to_tbox: Vec<Dci>,
    /// Whether `T*` has a model, i.e. the knowledge base has a modular model.
    pub consistent: bool,
    pub stats: RankingStats,
}

impl Ranking {
    /// Index of the last rank, `None` when there are no ranked DCIs.
    pub fn max_rank(&self) -> Option<usize> {
        self.e_seq.len().checked_sub(1)
    }

    /// Upper bound on the entailment checks one query may spend.
    pub fn query_budget(&self) -> u64 {
        self.e_seq.len() as u64 + 1
    }

    /// Rank index of a DCI of `dstar`, if present.
    pub fn rank_of_dci(&self, d: &Dci) -> Option<RankValue> {
        if self.moved_to_tbox.contains(d) {
            return Some(RankValue::Infinite);
        }
        self.partition.iter().position(|p| p.contains(d)).map(RankValue::Finite)
    }
}

/// Verdict of a rational closure membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    pub verdict: bool,
    /// The `Eᵢ` that decided the query, or infinite when only `T*` was used.
    pub decided_at: RankValue,
    pub checks_spent: u64,
    /// Set when `T*` is inconsistent, in which case every query holds trivially.
    pub kb_inconsistent: bool,
}

fn materialised(e: &[Dci]) -> Concept {
    conjoin(materialise(e))
}

/// Rational closure reasoning on top of a [`ClassicalReasoner`].
#[derive(Debug, Default)]
pub struct DefeasibleReasoner {
    classical: ClassicalReasoner,
}

impl DefeasibleReasoner {
    pub fn new(config: TableauConfig) -> Self {
        DefeasibleReasoner { classical: ClassicalReasoner::new(config) }
    }

    pub fn classical(&self) -> &ClassicalReasoner {
        &self.classical
    }

    pub fn checks(&self) -> u64 {
        self.classical.stats().checks()
    }

    /// The DCIs `C ⊑~ D` of `dprime` with `tstar ⊨ ⊓Ē' ⊑ ¬C`, in input order.
    pub fn exceptional(&self, tstar: &[Gci], dprime: &[Dci]) -> Result<Vec<Dci>, ReasonerError> {
        if dprime.is_empty() {
            return Ok(Vec::new());
        }
        let conj = materialised(dprime);
        let flags: Vec<bool> = dprime
            .par_iter()
            .map(|d| self.classical.entails(tstar, &Gci::new(conj.clone(), Concept::not(d.lhs.clone()))))
            .collect::<Result<_, _>>()?;
        Ok(dprime.iter().zip(flags).filter(|(_, f)| *f).map(|(d, _)| d.clone()).collect())
    }

    pub fn compute_ranking(&self, kb: &KnowledgeBase) -> Result<Ranking, ReasonerError> {
        let start = self.checks();
        let mut tstar = kb.tbox.clone();
        let mut dstar = kb.dtbox.clone();
        let mut moved = Vec::new();
        let e_seq = loop {
            let mut seq = vec![dstar.clone()];
            let mut next = self.exceptional(&tstar, &dstar)?;
            while next != *seq.last().expect("non-empty") {
                seq.push(next);
                next = self.exceptional(&tstar, seq.last().expect("non-empty"))?;
            }
            // `next` is the fixpoint, i.e. the DCIs of infinite rank.
            let infinite = seq.pop().expect("fixpoint present");
            if infinite.is_empty() {
                break seq;
            }
            tstar.extend(infinite.iter().map(Dci::to_gci));
            dstar.retain(|d| !infinite.contains(d));
            moved.extend(infinite);
        };
        let ranking_checks = self.checks() - start;

        let partition = e_seq
            .iter()
            .enumerate()
            .map(|(j, ej)| match e_seq.get(j + 1) {
                Some(next) => ej.iter().filter(|d| !next.contains(d)).cloned().collect(),
                None => ej.clone(),
            })
            .collect();

        let before = self.checks();
        let inconsistent = self.classical.entails(&tstar, &Gci::new(Concept::Top, Concept::Bottom))?;
        let consistency_checks = self.checks() - before;

        Ok(Ranking {
            tstar,
            dstar,
            e_seq,
            partition,
            moved_to_tbox: moved,
            consistent: !inconsistent,
            stats: RankingStats { ranking_checks, consistency_checks },
        })
    }

    /// Index of the first `Eᵢ` compatible with `c` (`T* ⊭ ⊓Ēᵢ ⊓ c ⊑ ⊥`).
    fn first_compatible(&self, r: &Ranking, c: &Concept) -> Result<RankValue, ReasonerError> {
        for (i, e) in r.e_seq.iter().enumerate() {
            let probe = Gci::new(materialised(e), Concept::not(c.clone()));
            if !self.classical.entails(&r.tstar, &probe)? {
                return Ok(RankValue::Finite(i));
            }
        }
        Ok(RankValue::Infinite)
    }

    /// Rank of a concept: the least `i` with `T* ⊭ ⊓Ēᵢ ⊓ c ⊑ ⊥`.
    ///
    /// A concept incompatible with every `Eᵢ` but satisfiable w.r.t. `T*` sits
    /// just above the last layer and gets rank `e_seq.len()`; only concepts
    /// unsatisfiable w.r.t. `T*` are infinite.
    pub fn concept_rank(&self, r: &Ranking, c: &Concept) -> Result<RankValue, ReasonerError> {
        if let RankValue::Finite(i) = self.first_compatible(r, c)? {
            return Ok(RankValue::Finite(i));
        }
        let empty = self.classical.entails(&r.tstar, &Gci::new(c.clone(), Concept::Bottom))?;
        Ok(if empty { RankValue::Infinite } else { RankValue::Finite(r.e_seq.len()) })
    }

    /// Rank of an axiom: a DCI ranks as its left-hand side, a GCI `C ⊑ D`
    /// as the concept `C ⊓ ¬D`.
    pub fn axiom_rank(&self, r: &Ranking, a: &Axiom) -> Result<RankValue, ReasonerError> {
        match a {
            Axiom::Defeasible(d) => self.concept_rank(r, &d.lhs),
            Axiom::Strict(g) => self.concept_rank(r, &Concept::and(g.lhs.clone(), Concept::not(g.rhs.clone()))),
        }
    }

    /// Rational closure membership by rational deduction.
    pub fn rationally_deducible(&self, r: &Ranking, q: &Axiom) -> Result<QueryResult, ReasonerError> {
        let start = self.checks();
        let (verdict, decided_at) = match q {
            Axiom::Strict(g) => (self.classical.entails(&r.tstar, g)?, RankValue::Infinite),
            Axiom::Defeasible(d) => match self.first_compatible(r, &d.lhs)? {
                RankValue::Finite(i) => {
                    let lhs = Concept::and(materialised(&r.e_seq[i]), d.lhs.clone());
                    let v = self.classical.entails(&r.tstar, &Gci::new(lhs, d.rhs.clone()))?;
                    (v, RankValue::Finite(i))
                }
                RankValue::Infinite => (self.classical.entails(&r.tstar, &d.to_gci())?, RankValue::Infinite),
            },
        };
        Ok(QueryResult { verdict, decided_at, checks_spent: self.checks() - start, kb_inconsistent: !r.consistent })
    }

    /// Rational closure membership by comparing ranks: `C ⊑~ D` holds iff
    /// `rank(C ⊓ D) < rank(C ⊓ ¬D)` or `rank(C)` is infinite; `C ⊑ D` holds
    /// iff `rank(C ⊓ ¬D)` is infinite.
    pub fn in_closure_by_ranks(&self, r: &Ranking, q: &Axiom) -> Result<bool, ReasonerError> {
        let (c, d) = (q.lhs().clone(), q.rhs().clone());
        let counter = self.concept_rank(r, &Concept::and(c.clone(), Concept::not(d.clone())))?;
        match q {
            Axiom::Strict(_) => Ok(counter.is_infinite()),
            Axiom::Defeasible(_) => {
                if self.concept_rank(r, &c)?.is_infinite() {
                    return Ok(true);
                }
                let support = self.concept_rank(r, &Concept::and(c, d))?;
                Ok(support < counter)
            }
        }
    }
}

pub fn exceptional(tstar: &[Gci], dprime: &[Dci]) -> Result<Vec<Dci>, ReasonerError> {
    DefeasibleReasoner::default().exceptional(tstar, dprime)
}

pub fn compute_ranking(kb: &KnowledgeBase) -> Result<Ranking, ReasonerError> {
    DefeasibleReasoner::default().compute_ranking(kb)
}
