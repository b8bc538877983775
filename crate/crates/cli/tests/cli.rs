use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use rcdl_core::corpus;
use rcdl_core::{parse_query, Axiom, DefeasibleReasoner};
use serde_json::Value;
use tempfile::NamedTempFile;

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/corpus/{name}.dkb"))
}

fn temp_kb(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".dkb").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn rcdl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcdl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn axiom_from_json(v: &Value) -> Axiom {
    let op = match v["kind"].as_str().unwrap() {
        "gci" => "[=",
        "dci" => "~[=",
        k => panic!("unknown kind {k}"),
    };
    parse_query(&format!("{} {op} {}", v["lhs"].as_str().unwrap(), v["rhs"].as_str().unwrap())).unwrap()
}

#[test]
fn rank_student_example() {
    let path = corpus_file("student");
    let o = rcdl(&["rank", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("D0:\n    Student ~[= !exists pays.Tax"));
    assert!(text.contains("D1:\n    EmpStud ~[= exists pays.Tax"));
    assert!(text.contains("D2:\n    EmpStud & Parent ~[= !exists pays.Tax"));
    assert!(!text.contains("D3"));

    let v = json(&rcdl(&["rank", "--json", path.to_str().unwrap()]));
    let parts = v["partition"].as_array().unwrap();
    assert_eq!(parts.len(), 3);
    assert!(parts.iter().all(|p| p.as_array().unwrap().len() == 1));
    assert_eq!(v["promoted"], Value::Array(vec![]));
    assert!(v["stats"]["entailment_checks"].as_u64().unwrap() > 0);
}

#[test]
fn rank_json_round_trips_through_the_parser() {
    for entry in corpus::ALL {
        let v = json(&rcdl(&["rank", "--json", corpus_file(entry.name).to_str().unwrap()]));
        let r = DefeasibleReasoner::default().compute_ranking(&entry.kb()).unwrap();
        let tstar: Vec<Axiom> = v["tstar"].as_array().unwrap().iter().map(axiom_from_json).collect();
        let want: Vec<Axiom> = r.tstar.iter().cloned().map(Axiom::from).collect();
        assert_eq!(tstar, want, "{}", entry.name);
        let parts: Vec<Vec<Axiom>> = v["partition"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.as_array().unwrap().iter().map(axiom_from_json).collect())
            .collect();
        let want: Vec<Vec<Axiom>> = r.partition.iter().map(|p| p.iter().cloned().map(Axiom::from).collect()).collect();
        assert_eq!(parts, want, "{}", entry.name);
    }
}

#[test]
fn rank_empty_file() {
    let f = temp_kb("");
    let o = rcdl(&["rank", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("partition:\n  (empty)"));
}

#[test]
fn rank_conflicting_pair_is_promoted() {
    let f = temp_kb("A ~[= B\nA ~[= !B\n");
    let text = stdout(&rcdl(&["rank", f.path().to_str().unwrap()]));
    let promoted = text.split("promoted to TBox").nth(1).expect("section present");
    assert!(promoted.contains("A ~[= B\n") && promoted.contains("A ~[= !B\n"));
    let v = json(&rcdl(&["rank", "--json", f.path().to_str().unwrap()]));
    assert_eq!(v["promoted"].as_array().unwrap().len(), 2);
    assert_eq!(v["partition"], Value::Array(vec![]));
}

#[test]
fn query_examples() {
    let student = corpus_file("student");
    let o = rcdl(&["query", student.to_str().unwrap(), "-q", "EmpStud & Parent ~[= !exists pays.Tax"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("IN rational closure\n"));
    assert!(text.contains("decided at rank 2"));

    let boss = corpus_file("boss");
    let o = rcdl(&["query", boss.to_str().unwrap(), "-q", "Worker ~[= exists hasSuperior.Responsible"]);
    assert!(o.status.success(), "a NOT IN verdict is still success");
    assert!(stdout(&o).starts_with("NOT IN rational closure\n"));

    let o = rcdl(&["query", student.to_str().unwrap(), "-q", "top ~[= top"]);
    assert!(stdout(&o).starts_with("IN rational closure\n"));
}

#[test]
fn query_json_schema() {
    let student = corpus_file("student");
    let v = json(&rcdl(&["query", "--json", student.to_str().unwrap(), "-q", "EmpStud ~[= exists pays.Tax"]));
    assert_eq!(v["verdict"], Value::Bool(true));
    assert_eq!(v["decided_at"], Value::from(1));
    assert!(v["checks"].as_u64().unwrap() >= 1);
    assert_eq!(v["kb_inconsistent"], Value::Bool(false));
    assert_eq!(v.as_object().unwrap().len(), 4);

    // Only T* can decide an unsatisfiable antecedent.
    let v = json(&rcdl(&["query", "--json", student.to_str().unwrap(), "-q", "bot ~[= Student"]));
    assert_eq!(v["decided_at"], Value::from("infinity"));

    let bad = temp_kb("top [= bot\n");
    let v = json(&rcdl(&["query", "--json", bad.path().to_str().unwrap(), "-q", "A ~[= B"]));
    assert_eq!(v["verdict"], Value::Bool(true));
    assert_eq!(v["kb_inconsistent"], Value::Bool(true));
}

#[test]
fn query_verdicts_match_rank_comparison() {
    let reasoner = DefeasibleReasoner::default();
    for entry in corpus::ALL {
        let r = reasoner.compute_ranking(&entry.kb()).unwrap();
        for q in entry.queries {
            let v = json(&rcdl(&["query", "--json", corpus_file(entry.name).to_str().unwrap(), "-q", q]));
            let by_ranks = reasoner.in_closure_by_ranks(&r, &parse_query(q).unwrap()).unwrap();
            assert_eq!(v["verdict"], Value::Bool(by_ranks), "{}: {q}", entry.name);
        }
    }
}

#[test]
fn check_examples() {
    let o = rcdl(&["check", corpus_file("classical_student").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("unsatisfiable concept: EmpStud"));

    let text = stdout(&rcdl(&["check", corpus_file("student").to_str().unwrap()]));
    assert!(text.starts_with("consistent"));
    assert!(text.contains("no DCIs of infinite rank"));

    let empty = temp_kb("");
    assert!(stdout(&rcdl(&["check", empty.path().to_str().unwrap()])).starts_with("consistent"));

    let bad = temp_kb("top [= bot\n");
    let v = json(&rcdl(&["check", "--json", bad.path().to_str().unwrap()]));
    assert_eq!(v["consistent"], Value::Bool(false));
}

#[test]
fn oracle_examples() {
    let student = corpus_file("student");
    let o = rcdl(&["oracle", student.to_str().unwrap(), "--max-domain", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("model found:"));
    assert!(text.contains("one-sided"));

    let bad = temp_kb("top [= bot\n");
    let text = stdout(&rcdl(&["oracle", bad.path().to_str().unwrap()]));
    assert!(text.starts_with("no model within bound 4"));

    let v = json(&rcdl(&[
        "oracle",
        "--json",
        student.to_str().unwrap(),
        "-q",
        "Student ~[= !exists pays.Tax",
        "--max-domain",
        "4",
    ]));
    assert_eq!(v["found"], Value::Bool(false));
    assert_eq!(v["one_sided"], Value::Bool(true));
    assert!(v["shapes_explored"].as_u64().unwrap() > 0);

    let v = json(&rcdl(&["oracle", "--json", student.to_str().unwrap(), "-q", "EmpStud ~[= !exists pays.Tax"]));
    assert_eq!(v["found"], Value::Bool(true));
    assert_eq!(v["model"]["domain"].as_u64().map(|n| n >= 1), Some(true));
}

#[test]
fn oracle_samples_are_seeded() {
    let penguin = corpus_file("penguin");
    let run =
        |seed: &str| json(&rcdl(&["oracle", "--json", penguin.to_str().unwrap(), "--samples", "8", "--seed", seed]));
    let (a, b) = (run("5"), run("5"));
    assert_eq!(a["samples"], b["samples"]);
    assert_eq!(a["samples"].as_array().unwrap().len(), 8);
    assert!(a["samples"].as_array().unwrap().iter().all(|s| s["consistent"] == Value::Bool(true)));
    assert_ne!(a["samples"], run("6")["samples"]);
}

#[test]
fn oracle_bound_is_capped() {
    let student = corpus_file("student");
    let o = rcdl(&["oracle", student.to_str().unwrap(), "--max-domain", "65"]);
    assert!(!o.status.success());
}

#[test]
fn parse_errors_exit_1_with_span() {
    let f = temp_kb("A [= B\nA [= (B\n");
    let o = rcdl(&["rank", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":2:"), "{err}");

    let student = corpus_file("student");
    let o = rcdl(&["query", student.to_str().unwrap(), "-q", "A ~[="]);
    assert_eq!(o.status.code(), Some(1));

    let o = rcdl(&["rank", "/nonexistent/file.dkb"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_limits_exit_2() {
    let student = corpus_file("student");
    let o = rcdl(&["--max-nodes", "1", "rank", student.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("resource limit"));
}
