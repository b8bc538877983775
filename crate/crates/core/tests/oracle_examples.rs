mod common;

use common::{c, kb, q, seeded};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rcdl_core::corpus;
use rcdl_core::oracle::*;
use rcdl_core::RankValue;

fn ones(set: FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

/// The eleven-element employee/student interpretation.
fn employee_interpretation() -> FiniteInterpretation {
    let mut i = FiniteInterpretation::new(11).unwrap();
    i.set_atom("Employee", [1, 2, 5, 9]).unwrap();
    i.set_atom("Company", [6, 10]).unwrap();
    i.set_atom("Student", [1, 5, 7, 8]).unwrap();
    i.set_atom("EmpStud", [1, 5]).unwrap();
    i.set_atom("Parent", [1, 2, 3]).unwrap();
    i.set_atom("Tax", [4]).unwrap();
    for (r, x, y) in [("pays", 1, 0), ("pays", 5, 4), ("empBy", 9, 10), ("worksFor", 5, 6), ("worksFor", 9, 10)] {
        i.add_edge(r, x, y).unwrap();
    }
    i
}

/// A preference order over the same interpretation, transitively closed.
const PREFERENCE_PAIRS: [(usize, usize); 9] = [(7, 5), (8, 5), (9, 5), (5, 1), (7, 1), (8, 1), (9, 1), (9, 2), (10, 6)];

#[test]
fn employee_extensions() {
    let i = employee_interpretation();
    assert_eq!(ones(i.extension(&c("Parent & Employee"))), vec![1, 2]);
    assert_eq!(ones(i.extension(&c("exists pays.Tax"))), vec![5]);
    assert_eq!(ones(i.extension(&c("top"))), (0..11).collect::<Vec<_>>());
    assert!(ones(i.extension(&c("bot"))).is_empty());
    assert!(i.satisfies_gci(&c("EmpStud"), &c("Student & Employee")));
}

#[test]
fn preference_order_is_not_modular() {
    // x9 is below x2, yet x7 is incomparable to both.
    assert!(matches!(heights_from_order(11, &PREFERENCE_PAIRS), Err(OrderError::NotModular(..))));
}

#[test]
fn preference_student_minimum() {
    // Restricted to the students x1, x5, x7, x8 the order is modular.
    let students = [1, 5, 7, 8];
    let local = |x: usize| students.iter().position(|&s| s == x);
    let pairs: Vec<(usize, usize)> =
        PREFERENCE_PAIRS.iter().filter_map(|&(x, y)| Some((local(x)?, local(y)?))).collect();
    let heights = heights_from_order(4, &pairs).unwrap();
    assert_eq!(heights, vec![2, 1, 0, 0]);
    let lowest = heights.iter().min().unwrap();
    let min: Vec<usize> = (0..4).filter(|&k| heights[k] == *lowest).map(|k| students[k]).collect();
    assert_eq!(min, vec![7, 8]);

    // The full partial order gives the same minimum directly.
    let p = PreferentialInterpretation::new(employee_interpretation(), &PREFERENCE_PAIRS).unwrap();
    assert_eq!(ones(p.min_elements(&c("Student"))), vec![7, 8]);
}

#[test]
fn min_elements_examples() {
    let mut base = FiniteInterpretation::new(3).unwrap();
    base.set_atom("A", [0, 2]).unwrap();
    let i = RankedInterpretation::new(base, vec![2, 1, 0]).unwrap();
    assert_eq!(ones(i.min_elements(&c("A"))), vec![2]);
    assert!(ones(i.min_elements(&c("B"))).is_empty());
}

#[test]
fn height_examples() {
    let mut base = FiniteInterpretation::new(2).unwrap();
    base.set_atom("A", [1]).unwrap();
    let i = RankedInterpretation::new(base, vec![0, 1]).unwrap();
    assert_eq!(i.height_of_concept(&c("top")), RankValue::Finite(0));
    assert_eq!(i.height_of_concept(&c("bot")), RankValue::Infinite);
    assert_eq!(i.height_of_concept(&c("A")), RankValue::Finite(1));
}

#[test]
fn heights_from_order_examples() {
    assert_eq!(heights_from_order(3, &[]).unwrap(), vec![0, 0, 0]);
    assert_eq!(heights_from_order(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), vec![0, 1, 2]);
    assert_eq!(heights_from_order(3, &[(0, 2), (1, 2)]).unwrap(), vec![0, 0, 1]);
}

#[test]
fn search_model_examples() {
    let m = search_model(&corpus::STUDENT.kb(), 3).model.expect("example is consistent");
    assert!(corpus::STUDENT.kb().axioms().all(|a| m.satisfies(&a)));
    assert!(search_model(&kb("top [= bot\n"), 4).model.is_none());
    let m = search_model(&kb(""), 4).model.unwrap();
    assert_eq!((m.domain_size(), m.heights()), (1, &[0][..]));
}

#[test]
fn search_countermodel_examples() {
    let student = corpus::STUDENT.kb();
    let query = q("EmpStud ~[= !exists pays.Tax");
    let m = search_countermodel(&student, &query, 3).model.expect("countermodel");
    assert!(student.axioms().all(|a| m.satisfies(&a)));
    assert!(!m.satisfies(&query));
    // Its minimal employed students pay tax.
    let min = m.min_elements(&c("EmpStud"));
    assert!(min.is_subset(&m.extension(&c("exists pays.Tax"))));

    for bound in 1..=4 {
        assert!(search_countermodel(&kb(""), &q("C ~[= C"), bound).model.is_none());
    }
    assert!(search_countermodel(&kb("A [= B\n"), &q("A [= B"), 4).model.is_none());
}

#[test]
fn dump_format() {
    let mut base = FiniteInterpretation::new(3).unwrap();
    base.set_atom("A", [0, 2]).unwrap();
    base.add_edge("r", 0, 1).unwrap();
    let i = RankedInterpretation::new(base, vec![0, 1, 0]).unwrap();
    let expected: serde_json::Value =
        serde_json::from_str(r#"{"domain": 3, "atoms": {"A":[0,2]}, "roles": {"r":[[0,1]]}, "heights":[0,1,0]}"#)
            .unwrap();
    assert_eq!(dump_json(&i), expected);
}

fn lifted(parts: &[RankedInterpretation], pick: impl Fn(&RankedInterpretation) -> FixedBitSet) -> Vec<usize> {
    let offs = offsets(&parts.iter().map(|p| p.domain_size()).collect::<Vec<_>>());
    parts.iter().zip(offs).flat_map(|(p, o)| pick(p).ones().map(move |x| x + o).collect::<Vec<_>>()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn union_lifts_extensions_and_minimal_heights(
        seeds in prop::collection::vec(any::<u64>(), 1..4),
        cs in prop::collection::vec(common::concept(3), 1..5),
    ) {
        let parts: Vec<RankedInterpretation> = seeds.iter().map(|&s| seeded(s)).collect();
        let ranked = ranked_union(&parts);
        let prefs: Vec<PreferentialInterpretation> =
            parts.iter().map(|p| p.to_preferential()).collect();
        let plain = disjoint_union(&prefs);
        for x in &cs {
            let want = lifted(&parts, |p| p.extension(x));
            prop_assert_eq!(ones(ranked.extension(x)), want.clone());
            prop_assert_eq!(ones(plain.extension(x)), want);
            let min_height = parts.iter().map(|p| p.height_of_concept(x)).min().unwrap();
            prop_assert_eq!(ranked.height_of_concept(x), min_height);
            // Preferential minima lift componentwise as well.
            prop_assert_eq!(ones(plain.min_elements(x)), lifted(&parts, |p| p.min_elements(x)));
        }
    }
}

#[test]
fn unions_of_corpus_models_are_models() {
    for entry in corpus::ALL {
        let k = entry.kb();
        let mut models = Vec::new();
        for_each_model(&kb_requirements(&k), 2, |m| {
            models.push(m.clone());
            if models.len() == 6 {
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        });
        for (a, b) in models.iter().zip(models.iter().rev()) {
            let pair = [a.clone(), b.clone()];
            let u = ranked_union(&pair);
            assert!(k.axioms().all(|ax| u.satisfies(&ax)), "{}", entry.name);
            let p = disjoint_union(&[a.to_preferential(), b.to_preferential()]);
            assert!(k.axioms().all(|ax| p.satisfies(&ax)), "{}", entry.name);
        }
    }
}
