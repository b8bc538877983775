use std::fmt;

use fixedbitset::FixedBitSet;

use crate::concept::Concept;

use super::interpretation::RankedInterpretation;
use super::Preferential;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    Cons,
    Ref,
    Lle,
    And,
    Or,
    Rw,
    Cm,
    Rm,
    CmExists,
    CmForall,
    Norm,
    RmExists,
    RmForall,
    /// `C ⊑ D` holds iff `C ⊓ ¬D ⊑~ ⊥` holds.
    ClassicalAsDefeasible,
}

impl Postulate {
    pub const ALL: [Postulate; 14] = [
        Postulate::Cons,
        Postulate::Ref,
        Postulate::Lle,
        Postulate::And,
        Postulate::Or,
        Postulate::Rw,
        Postulate::Cm,
        Postulate::Rm,
        Postulate::CmExists,
        Postulate::CmForall,
        Postulate::Norm,
        Postulate::RmExists,
        Postulate::RmForall,
        Postulate::ClassicalAsDefeasible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::Cons => "Cons",
            Postulate::Ref => "Ref",
            Postulate::Lle => "LLE",
            Postulate::And => "And",
            Postulate::Or => "Or",
            Postulate::Rw => "RW",
            Postulate::Cm => "CM",
            Postulate::Rm => "RM",
            Postulate::CmExists => "CM-exists",
            Postulate::CmForall => "CM-forall",
            Postulate::Norm => "Norm",
            Postulate::RmExists => "RM-exists",
            Postulate::RmForall => "RM-forall",
            Postulate::ClassicalAsDefeasible => "GCI-as-DCI",
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failing instance of a rule: the concepts it was instantiated with
/// (and the role, for the quantifier rules).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub postulate: Postulate,
    pub concepts: Vec<Concept>,
    pub role: Option<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.postulate)?;
        if let Some(r) = &self.role {
            write!(f, " r={r}")?;
        }
        for c in &self.concepts {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

/// Extensions and minima of the sampled concepts, computed once.
struct Table<'a> {
    i: &'a RankedInterpretation,
    ext: Vec<FixedBitSet>,
    min: Vec<FixedBitSet>,
}

impl<'a> Table<'a> {
    fn new(i: &'a RankedInterpretation, samples: &[Concept]) -> Self {
        let ext: Vec<FixedBitSet> = samples.iter().map(|c| i.extension(c)).collect();
        let min = ext.iter().map(|e| i.minimal(e)).collect();
        Table { i, ext, min }
    }

    /// `C ⊑~ D` for sample indices.
    fn twiddle(&self, c: usize, d: usize) -> bool {
        self.min[c].is_subset(&self.ext[d])
    }

    fn dci(&self, c: &Concept, d: &Concept) -> bool {
        self.i.satisfies_dci(c, d)
    }
}

/// Instantiates each selected rule over all tuples of `samples` (and all
/// roles of `i` for the quantifier rules) and returns every instance whose
/// premises hold in `i` while its conclusion does not.
pub fn check_postulates(i: &RankedInterpretation, samples: &[Concept], which: &[Postulate]) -> Vec<Violation> {
    let t = Table::new(i, samples);
    let roles: Vec<String> = i.base().role_names().map(str::to_string).collect();
    let k = samples.len();
    let s = |x: usize| samples[x].clone();
    let mut out = Vec::new();
    let mut fail = |p: Postulate, cs: Vec<Concept>, role: Option<&String>| {
        out.push(Violation { postulate: p, concepts: cs, role: role.cloned() })
    };

    for &p in which {
        match p {
            Postulate::Cons => {
                if t.dci(&Concept::Top, &Concept::Bottom) {
                    fail(p, vec![], None);
                }
            }
            Postulate::Ref => {
                for c in 0..k {
                    if !t.twiddle(c, c) {
                        fail(p, vec![s(c)], None);
                    }
                }
            }
            Postulate::ClassicalAsDefeasible => {
                for c in 0..k {
                    for d in 0..k {
                        let gci = t.ext[c].is_subset(&t.ext[d]);
                        let neg = Concept::and(s(c), Concept::not(s(d)));
                        if gci != t.dci(&neg, &Concept::Bottom) {
                            fail(p, vec![s(c), s(d)], None);
                        }
                    }
                }
            }
            Postulate::Norm => {
                for r in &roles {
                    for c in 0..k {
                        if t.twiddle_bottom(c) && !t.dci(&Concept::exists(r.clone(), s(c)), &Concept::Bottom) {
                            fail(p, vec![s(c)], Some(r));
                        }
                    }
                }
            }
            _ => {
                for c in 0..k {
                    for d in 0..k {
                        for e in 0..k {
                            check_triple(&t, p, c, d, e, samples, &roles, &mut fail);
                        }
                    }
                }
            }
        }
    }
    out
}

impl Table<'_> {
    fn twiddle_bottom(&self, c: usize) -> bool {
        self.min[c].is_clear()
    }
}

#[allow(clippy::too_many_arguments)]
fn check_triple<F>(
    t: &Table<'_>,
    p: Postulate,
    c: usize,
    d: usize,
    e: usize,
    samples: &[Concept],
    roles: &[String],
    fail: &mut F,
) where
    F: FnMut(Postulate, Vec<Concept>, Option<&String>),
{
    let s = |x: usize| samples[x].clone();
    let triple = || vec![s(c), s(d), s(e)];
    match p {
        Postulate::Lle => {
            if t.ext[c] == t.ext[d] && t.twiddle(c, e) && !t.twiddle(d, e) {
                fail(p, triple(), None);
            }
        }
        Postulate::And => {
            if t.twiddle(c, d) && t.twiddle(c, e) && !t.dci(&s(c), &Concept::and(s(d), s(e))) {
                fail(p, triple(), None);
            }
        }
        Postulate::Or => {
            if t.twiddle(c, e) && t.twiddle(d, e) && !t.dci(&Concept::or(s(c), s(d)), &s(e)) {
                fail(p, triple(), None);
            }
        }
        Postulate::Rw => {
            if t.twiddle(c, d) && t.ext[d].is_subset(&t.ext[e]) && !t.twiddle(c, e) {
                fail(p, triple(), None);
            }
        }
        Postulate::Cm => {
            if t.twiddle(c, d) && t.twiddle(c, e) && !t.dci(&Concept::and(s(c), s(d)), &s(e)) {
                fail(p, triple(), None);
            }
        }
        Postulate::Rm => {
            if t.twiddle(c, d) && !t.dci(&s(c), &Concept::not(s(e))) && !t.dci(&Concept::and(s(c), s(e)), &s(d)) {
                fail(p, triple(), None);
            }
        }
        Postulate::CmExists | Postulate::CmForall | Postulate::RmExists | Postulate::RmForall => {
            for r in roles {
                let wrap = |x: Concept| match p {
                    Postulate::CmExists | Postulate::RmExists => Concept::exists(r.clone(), x),
                    _ => Concept::forall(r.clone(), x),
                };
                let qc = wrap(s(c));
                let second = match p {
                    Postulate::CmExists | Postulate::CmForall => t.dci(&qc, &Concept::forall(r.clone(), s(d))),
                    _ => !t.dci(&qc, &Concept::forall(r.clone(), Concept::not(s(d)))),
                };
                if t.dci(&qc, &s(e)) && second && !t.dci(&wrap(Concept::and(s(c), s(d))), &s(e)) {
                    fail(p, triple(), Some(r));
                }
            }
        }
        Postulate::Cons | Postulate::Ref | Postulate::Norm | Postulate::ClassicalAsDefeasible => {}
    }
}
