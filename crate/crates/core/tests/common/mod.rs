#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rcdl_core::oracle::{random_ranked, RandomSpec, RankedInterpretation};
use rcdl_core::{parse_concept, parse_kb, parse_query, Axiom, Concept, KnowledgeBase};

pub fn c(s: &str) -> Concept {
    parse_concept(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn q(s: &str) -> Axiom {
    parse_query(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn kb(s: &str) -> KnowledgeBase {
    parse_kb(s).unwrap_or_else(|e| panic!("{e}")).kb
}

/// Concepts over atoms A, B, C and roles r, s.
pub fn concept(depth: u32) -> impl Strategy<Value = Concept> {
    let leaf = prop_oneof![
        Just(Concept::Top),
        Just(Concept::Bottom),
        prop::sample::select(vec!["A", "B", "C"]).prop_map(Concept::atom),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        let role = prop::sample::select(vec!["r", "s"]);
        prop_oneof![
            inner.clone().prop_map(Concept::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Concept::or(l, r)),
            (role.clone(), inner.clone()).prop_map(|(r, f)| Concept::exists(r, f)),
            (role, inner).prop_map(|(r, f)| Concept::forall(r, f)),
        ]
    })
}

/// Ranked interpretations over the same vocabulary, drawn from a seed.
pub fn interpretation() -> impl Strategy<Value = RankedInterpretation> {
    any::<u64>().prop_map(seeded)
}

pub fn seeded(seed: u64) -> RankedInterpretation {
    random_ranked(&mut ChaCha8Rng::seed_from_u64(seed), &RandomSpec::default())
}
