//! Finite ranked and preferential interpretations, used as an independent
//! semantic check on the reasoners.

mod dump;
mod interpretation;
mod order;
mod postulates;
mod random;
mod sat;
mod search;
mod union;

pub use dump::dump_json;
pub use interpretation::{
    FiniteInterpretation, InterpretationError, Preferential, PreferentialInterpretation, RankedInterpretation,
};
pub use order::{heights_from_order, order_from_heights, OrderError};
pub use postulates::{check_postulates, Postulate, Violation};
pub use random::{random_concept, random_ranked, RandomSpec};
pub use search::{
    for_each_model, height_maps, kb_requirements, search, search_countermodel, search_model, Requirement, SearchReport,
    MAX_DOMAIN,
};
pub use union::{disjoint_union, offsets, ranked_union};
