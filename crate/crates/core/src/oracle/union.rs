use super::interpretation::{FiniteInterpretation, PreferentialInterpretation, RankedInterpretation};
use super::Preferential;

/// Start offset of each component in a union over `sizes`.
pub fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect()
}

fn union_base<'a, I>(parts: I) -> (FiniteInterpretation, Vec<usize>)
where
    I: IntoIterator<Item = &'a FiniteInterpretation>,
{
    let parts: Vec<&FiniteInterpretation> = parts.into_iter().collect();
    assert!(!parts.is_empty(), "union of no interpretations");
    let sizes: Vec<usize> = parts.iter().map(|p| p.domain_size()).collect();
    let offs = offsets(&sizes);
    let total = sizes.iter().sum();
    let mut out = FiniteInterpretation::new(total).expect("components are non-empty");

    let mut atoms: Vec<&str> = parts.iter().flat_map(|p| p.atom_names()).collect();
    atoms.sort_unstable();
    atoms.dedup();
    for a in atoms {
        let elems: Vec<usize> = parts
            .iter()
            .zip(&offs)
            .flat_map(|(p, &o)| p.atom(a).ones().map(move |x| x + o).collect::<Vec<_>>())
            .collect();
        out.set_atom(a, elems).expect("in range");
    }
    for (p, &o) in parts.iter().zip(&offs) {
        for r in p.role_names() {
            out.declare_role(r);
            for (x, y) in p.edges(r) {
                out.add_edge(r, x + o, y + o).expect("in range");
            }
        }
    }
    (out, offs)
}

/// Disjoint union of preferential interpretations. Component `s` occupies
/// `offsets[s]..offsets[s] + size`; orders are only kept within components.
pub fn disjoint_union(parts: &[PreferentialInterpretation]) -> PreferentialInterpretation {
    let (base, offs) = union_base(parts.iter().map(|p| p.base()));
    let order: Vec<(usize, usize)> = parts
        .iter()
        .zip(&offs)
        .flat_map(|(p, &o)| p.order_pairs().into_iter().map(move |(x, y)| (x + o, y + o)))
        .collect();
    PreferentialInterpretation::new(base, &order).expect("componentwise strict order")
}

/// Ranked union: disjoint union where every element keeps its height.
pub fn ranked_union(parts: &[RankedInterpretation]) -> RankedInterpretation {
    let (base, _) = union_base(parts.iter().map(|p| p.base()));
    let heights = parts.iter().flat_map(|p| p.heights().iter().copied()).collect();
    RankedInterpretation::new(base, heights).expect("convex components give a convex union")
}
