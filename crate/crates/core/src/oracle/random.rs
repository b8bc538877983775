use rand::Rng;

use crate::concept::Concept;

use super::interpretation::{FiniteInterpretation, RankedInterpretation};

/// Shape of randomly generated interpretations and concepts.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub max_domain: usize,
    pub atoms: Vec<String>,
    pub roles: Vec<String>,
    /// Probability of each atom membership and each edge.
    pub density: f64,
    pub max_depth: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_domain: 4,
            atoms: vec!["A".into(), "B".into(), "C".into()],
            roles: vec!["r".into(), "s".into()],
            density: 0.4,
            max_depth: 2,
        }
    }
}

/// A random ranked interpretation: uniform domain size, independent
/// memberships and edges, and a random convex height map.
pub fn random_ranked<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec) -> RankedInterpretation {
    let n = rng.gen_range(1..=spec.max_domain.max(1));
    let mut base = FiniteInterpretation::new(n).expect("n > 0");
    for a in &spec.atoms {
        let elems: Vec<usize> = (0..n).filter(|_| rng.gen_bool(spec.density)).collect();
        base.set_atom(a, elems).expect("in range");
    }
    for r in &spec.roles {
        base.declare_role(r);
        for x in 0..n {
            for y in 0..n {
                if rng.gen_bool(spec.density) {
                    base.add_edge(r, x, y).expect("in range");
                }
            }
        }
    }
    // Draw raw levels, then compress them to a convex map.
    let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut levels = raw.clone();
    levels.sort_unstable();
    levels.dedup();
    let heights = raw.iter().map(|h| levels.binary_search(h).expect("present")).collect();
    RankedInterpretation::new(base, heights).expect("compressed levels are convex")
}

/// A random concept of depth at most `depth`, choosing uniformly among the
/// constructors still allowed at each level.
pub fn random_concept<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec, depth: usize) -> Concept {
    let leaves = 2 + usize::from(!spec.atoms.is_empty());
    let inner = if depth == 0 { 0 } else { 3 + if spec.roles.is_empty() { 0 } else { 2 } };
    match rng.gen_range(0..leaves + inner) {
        0 => Concept::Top,
        1 => Concept::Bottom,
        2 if leaves == 3 => Concept::atom(spec.atoms[rng.gen_range(0..spec.atoms.len())].clone()),
        k => {
            let sub = |rng: &mut R| random_concept(rng, spec, depth - 1);
            match k - leaves {
                0 => Concept::not(sub(rng)),
                1 => Concept::and(sub(rng), sub(rng)),
                2 => Concept::or(sub(rng), sub(rng)),
                3 => {
                    let r = spec.roles[rng.gen_range(0..spec.roles.len())].clone();
                    Concept::exists(r, sub(rng))
                }
                _ => {
                    let r = spec.roles[rng.gen_range(0..spec.roles.len())].clone();
                    Concept::forall(r, sub(rng))
                }
            }
        }
    }
}
