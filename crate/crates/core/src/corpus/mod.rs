//! Corpus ingestion, per-group probes, and the toral search.

mod entry;
mod report;
mod search;

pub use entry::{digest, load_corpus, load_file, CorpusEntry, GroupId};
pub use report::{
    oracle_report, probe, verdict_report, OracleReport, ProbeOptions, ProbeReport, Stage, StageFailure, Timings,
    VerdictReport, SCHEMA_VERSION,
};
pub use search::{search, CacheRecord, FlaggedGroup, ResultCache, SearchOptions, SearchReport};
