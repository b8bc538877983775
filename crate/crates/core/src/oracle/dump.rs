use serde_json::{json, Map, Value};

use super::interpretation::RankedInterpretation;
use super::Preferential;

/// `{"domain": n, "atoms": {"A": [0, 2]}, "roles": {"r": [[0, 1]]}, "heights": [0, 1, 0]}`
pub fn dump_json(i: &RankedInterpretation) -> Value {
    let base = i.base();
    let atoms: Map<String, Value> =
        base.atom_names().map(|a| (a.to_string(), json!(base.atom(a).ones().collect::<Vec<_>>()))).collect();
    let roles: Map<String, Value> = base
        .role_names()
        .map(|r| {
            let edges: Vec<[usize; 2]> = base.edges(r).into_iter().map(|(x, y)| [x, y]).collect();
            (r.to_string(), json!(edges))
        })
        .collect();
    json!({
        "domain": i.domain_size(),
        "atoms": atoms,
        "roles": roles,
        "heights": i.heights(),
    })
}
