//! Power-conjugate presentations of finite solvable groups.

mod collect;
mod consistency;
mod group;
mod presentation;

pub(crate) use collect::{conj_tail_index, Collector, DenseTails};
pub(crate) use consistency::evaluate_test;

pub use collect::collect;
pub use consistency::{check_consistency, consistency_tests, ConsistencyViolation, TestKind};
pub use group::{ElementIter, GroupTable, Limits};
pub use presentation::{
    parse_corpus_text, parse_pc_presentation, serialize_pc_presentation, Letter, NormalWord,
    PcBuilder, PcPresentation, WordDisplay,
};
