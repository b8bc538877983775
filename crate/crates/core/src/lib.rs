//! Rational closure for defeasible ALC knowledge bases.
//!
//! [`parser`] reads `.dkb` files, [`tableau`] decides classical
//! subsumption, [`ranking`] computes the exceptionality ranking and answers
//! queries against it, and [`oracle`] checks all of that against explicit
//! finite ranked interpretations.

pub mod concept;
pub mod corpus;
pub mod oracle;
pub mod parser;
pub mod ranking;
pub mod tableau;

pub use concept::{Axiom, Concept, Dci, Gci, KnowledgeBase, Signature};
pub use parser::{parse_concept, parse_kb, parse_kb_file, parse_query, ParseError, SourceSpan};
pub use ranking::{DefeasibleReasoner, QueryResult, RankValue, Ranking, RankingStats};
pub use tableau::{ClassicalReasoner, EntailmentStats, Limit, ReasonerError, TableauConfig};
