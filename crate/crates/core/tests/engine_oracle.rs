mod common;

use common::{c, kb, q};
use rcdl_core::concept::{conjoin, materialise};
use rcdl_core::corpus;
use rcdl_core::oracle::{search, search_countermodel, Preferential, Requirement};
use rcdl_core::ranking::{compute_ranking, exceptional};
use rcdl_core::*;

fn dci(s: &str) -> Dci {
    match q(s) {
        Axiom::Defeasible(d) => d,
        a => panic!("{a} is not a DCI"),
    }
}

#[test]
fn exceptional_examples() {
    let tstar = vec![Gci::new(c("EmpStud"), c("Student"))];
    let dtbox = corpus::STUDENT.kb().dtbox;
    assert_eq!(
        exceptional(&tstar, &dtbox).unwrap(),
        vec![dci("EmpStud ~[= exists pays.Tax"), dci("EmpStud & Parent ~[= !exists pays.Tax")]
    );
    assert!(exceptional(&tstar, &[]).unwrap().is_empty());
    assert!(exceptional(&[], &[dci("A ~[= B")]).unwrap().is_empty());
}

#[test]
fn single_dci_is_not_exceptional_by_model() {
    // A model of A ~[= B with an A-instance at height 0 refutes top ~[= !A.
    let reqs = vec![Requirement::Holds(q("A ~[= B")), Requirement::HeightIs(c("A"), RankValue::Finite(0))];
    let m = search(&reqs, 1).model.expect("one element suffices");
    assert_eq!(m.domain_size(), 1);
    assert!(!m.satisfies(&q("top ~[= !A")));
}

#[test]
fn conflicting_pair_is_promoted() {
    let k = kb("A ~[= B\nA ~[= !B\n");
    let r = compute_ranking(&k).unwrap();
    assert_eq!(r.moved_to_tbox, k.dtbox);
    assert!(r.dstar.is_empty() && r.e_seq.is_empty() && r.partition.is_empty());
    assert_eq!(r.tstar, vec![Gci::new(c("A"), c("B")), Gci::new(c("A"), c("!B"))]);
    // No ranked model of the pair has an A-instance at any height.
    let mut reqs = oracle::kb_requirements(&k);
    reqs.push(Requirement::HeightBelow(c("A"), RankValue::Infinite));
    assert!(search(&reqs, 4).model.is_none());
}

#[test]
fn worked_query_is_in() {
    // The employed-student query: the conjunct not-EmpStud or exists
    // pays.Tax of the rank-1 materialisation forces the consequent.
    let reasoner = DefeasibleReasoner::default();
    let student = corpus::STUDENT.kb();
    let r = reasoner.compute_ranking(&student).unwrap();
    let query = q("EmpStud ~[= exists pays.Tax");
    let res = reasoner.rationally_deducible(&r, &query).unwrap();
    assert!(res.verdict);
    assert_eq!(res.decided_at, RankValue::Finite(1));

    let e1 = conjoin(materialise(&r.e_seq[1]));
    let classical = ClassicalReasoner::default();
    let with_c = Concept::and(e1.clone(), c("EmpStud"));
    assert!(!classical.entails(&r.tstar, &Gci::new(with_c.clone(), Concept::Bottom)).unwrap());
    assert!(classical.entails(&r.tstar, &Gci::new(with_c, c("exists pays.Tax"))).unwrap());

    // No model with EmpStud at its computed rank violates the query.
    let mut reqs = oracle::kb_requirements(&student);
    reqs.push(Requirement::HeightIs(c("EmpStud"), RankValue::Finite(1)));
    reqs.push(Requirement::Fails(query));
    assert!(search(&reqs, 4).model.is_none());
    assert!(search_countermodel(&student, &q("EmpStud ~[= !exists pays.Tax"), 3).model.is_some());
}

#[test]
fn boss_weakness_is_reproduced() {
    let reasoner = DefeasibleReasoner::default();
    let boss = corpus::BOSS.kb();
    let r = reasoner.compute_ranking(&boss).unwrap();
    let query = q("Worker ~[= exists hasSuperior.Responsible");
    assert!(!reasoner.rationally_deducible(&r, &query).unwrap().verdict);
    // A ranked model at the engine's ranks where the query fails.
    let mut reqs = oracle::kb_requirements(&boss);
    for d in &boss.dtbox {
        let k = reasoner.concept_rank(&r, &d.lhs).unwrap();
        reqs.push(Requirement::HeightIs(d.lhs.clone(), k));
    }
    reqs.push(Requirement::Fails(query));
    let m = search(&reqs, 4).model.expect("witness within bound");
    assert!(reqs.iter().all(|req| m.meets(req)));
}

#[test]
fn supra_classical() {
    let reasoner = DefeasibleReasoner::default();
    let classical = ClassicalReasoner::default();
    for entry in corpus::ALL {
        let r = reasoner.compute_ranking(&entry.kb()).unwrap();
        for query in entry.queries() {
            let g = Gci::new(query.lhs().clone(), query.rhs().clone());
            if classical.entails(&r.tstar, &g).unwrap() {
                let d = Axiom::Defeasible(Dci::new(g.lhs, g.rhs));
                assert!(reasoner.rationally_deducible(&r, &d).unwrap().verdict, "{d}");
            }
        }
    }
}

/// The induced relation on sampled concepts satisfies the rational rules.
#[test]
fn closure_is_rational() {
    let reasoner = DefeasibleReasoner::default();
    let classical = ClassicalReasoner::default();
    for entry in [corpus::STUDENT, corpus::PENGUIN, corpus::NIXON] {
        let k = entry.kb();
        let r = reasoner.compute_ranking(&k).unwrap();
        let atoms: Vec<Concept> = k.signature().atoms.into_iter().map(Concept::atom).collect();
        let mut sample = atoms.clone();
        sample.push(Concept::and(atoms[0].clone(), atoms[1].clone()));
        sample.push(Concept::not(atoms[atoms.len() - 1].clone()));
        let holds = |x: &Concept, y: &Concept| {
            reasoner.rationally_deducible(&r, &Axiom::Defeasible(Dci::new(x.clone(), y.clone()))).unwrap().verdict
        };
        let valid = |x: &Concept, y: &Concept| classical.entails(&[], &Gci::new(x.clone(), y.clone())).unwrap();
        let and = |x: &Concept, y: &Concept| Concept::and(x.clone(), y.clone());

        for x in &sample {
            assert!(holds(x, x), "Ref {x}");
            // Left logical equivalence with the negation normal form.
            let nx = x.nnf();
            for y in &sample {
                assert_eq!(holds(x, y), holds(&nx, y), "LLE {x} {y}");
                for z in &sample {
                    let (xy, xz) = (holds(x, y), holds(x, z));
                    if xy && xz {
                        assert!(holds(x, &and(y, z)), "And {x} {y} {z}");
                        assert!(holds(&and(x, y), z), "CM {x} {y} {z}");
                    }
                    if holds(x, z) && holds(y, z) {
                        assert!(holds(&Concept::or(x.clone(), y.clone()), z), "Or {x} {y} {z}");
                    }
                    if xy && valid(y, z) {
                        assert!(holds(x, z), "RW {x} {y} {z}");
                    }
                    if xz && !holds(x, &Concept::not(y.clone())) {
                        assert!(holds(&and(x, y), z), "RM {x} {y} {z}");
                    }
                }
            }
        }
    }
}

#[test]
fn ranking_is_deterministic() {
    for entry in corpus::ALL {
        let a = compute_ranking(&entry.kb()).unwrap();
        let b = compute_ranking(&entry.kb()).unwrap();
        assert_eq!(a, b, "{}", entry.name);
    }
}

#[test]
fn decisions_do_not_depend_on_node_limit() {
    let small = DefeasibleReasoner::new(TableauConfig::new(100_000, 512).unwrap());
    let large = DefeasibleReasoner::new(TableauConfig::new(1_000_000, 512).unwrap());
    for entry in corpus::ALL {
        let k = entry.kb();
        let (ra, rb) = (small.compute_ranking(&k).unwrap(), large.compute_ranking(&k).unwrap());
        assert_eq!(ra.partition, rb.partition);
        for query in entry.queries() {
            assert_eq!(
                small.rationally_deducible(&ra, &query).unwrap(),
                large.rationally_deducible(&rb, &query).unwrap()
            );
        }
    }
}

#[test]
fn query_results_carry_rank_and_cost() {
    let reasoner = DefeasibleReasoner::default();
    let r = reasoner.compute_ranking(&corpus::STUDENT.kb()).unwrap();
    let res = reasoner.rationally_deducible(&r, &q("EmpStud & Parent ~[= !exists pays.Tax")).unwrap();
    assert!(res.verdict);
    assert_eq!(res.decided_at, RankValue::Finite(2));
    assert!(res.checks_spent >= 1 && res.checks_spent <= r.query_budget());
    assert!(!res.kb_inconsistent);
    assert_eq!(reasoner.concept_rank(&r, &Concept::Bottom).unwrap(), RankValue::Infinite);
}
