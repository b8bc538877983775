//! Small knowledge bases with sample queries, shared by tests, benches and
//! the command line examples.

use crate::concept::{Axiom, KnowledgeBase};
use crate::parser::{parse_kb, parse_query};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub queries: &'static [&'static str],
}

impl CorpusEntry {
    pub fn kb(&self) -> KnowledgeBase {
        parse_kb(self.source).expect("corpus parses").kb
    }

    pub fn queries(&self) -> Vec<Axiom> {
        self.queries.iter().map(|q| parse_query(q).expect("corpus query parses")).collect()
    }
}

pub const STUDENT: CorpusEntry = CorpusEntry {
    name: "student",
    source: include_str!("../corpus/student.dkb"),
    queries: &[
        "Student ~[= !exists pays.Tax",
        "EmpStud ~[= exists pays.Tax",
        "EmpStud & Parent ~[= !exists pays.Tax",
        "EmpStud ~[= !exists pays.Tax",
        "EmpStud ~[= !Parent",
        "Student ~[= !EmpStud",
        "Student & Parent ~[= !exists pays.Tax",
        "EmpStud [= Student",
        "top ~[= top",
    ],
};

pub const CLASSICAL_STUDENT: CorpusEntry = CorpusEntry {
    name: "classical_student",
    source: include_str!("../corpus/classical_student.dkb"),
    queries: &["EmpStud [= bot", "Student ~[= !exists pays.Tax", "EmpStud ~[= Parent"],
};

pub const PENGUIN: CorpusEntry = CorpusEntry {
    name: "penguin",
    source: include_str!("../corpus/penguin.dkb"),
    queries: &[
        "Robin ~[= Wings",
        "Penguin ~[= Wings",
        "Penguin ~[= !Flies",
        "Robin ~[= Flies",
        "Bird ~[= !Penguin",
        "Penguin [= Bird",
        "Bird & Flies ~[= Wings",
    ],
};

pub const BOSS: CorpusEntry = CorpusEntry {
    name: "boss",
    source: include_str!("../corpus/boss.dkb"),
    queries: &[
        "Worker ~[= exists hasSuperior.Responsible",
        "Worker ~[= exists hasSuperior.Boss",
        "Boss ~[= Responsible",
        "Worker ~[= !Boss",
        "Boss [= Worker",
    ],
};

pub const CONFLICT: CorpusEntry = CorpusEntry {
    name: "conflict",
    source: include_str!("../corpus/conflict.dkb"),
    queries: &["A [= bot", "A ~[= B", "B ~[= !A", "top ~[= !A"],
};

pub const CASCADE: CorpusEntry = CorpusEntry {
    name: "cascade",
    source: include_str!("../corpus/cascade.dkb"),
    queries: &["B [= bot", "C ~[= D", "C & E ~[= !D", "C & E ~[= D", "C ~[= !E", "top ~[= !B"],
};

pub const TOP_BOT: CorpusEntry = CorpusEntry {
    name: "top_bot",
    source: include_str!("../corpus/top_bot.dkb"),
    queries: &["top ~[= bot", "A ~[= !B"],
};

pub const NIXON: CorpusEntry = CorpusEntry {
    name: "nixon",
    source: include_str!("../corpus/nixon.dkb"),
    queries: &[
        "Quaker & Republican ~[= Pacifist",
        "Quaker & Republican ~[= !Pacifist",
        "Quaker ~[= Pacifist",
        "Quaker & Republican ~[= forall reads.Scripture",
        "Republican ~[= !Quaker",
    ],
};

pub const ALL: [CorpusEntry; 8] = [STUDENT, CLASSICAL_STUDENT, PENGUIN, BOSS, CONFLICT, CASCADE, TOP_BOT, NIXON];

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    ALL.iter().copied().find(|e| e.name == name)
}
