//! Schur multipliers via tailed presentations, plus an independent
//! bar-resolution oracle for small groups.

mod bar;
mod schur;
mod tails;

pub use bar::{h2_bar_oracle, ORACLE_MAX_ORDER};
pub use schur::{commutator_word, lift_class, schur_multiplier, schur_multiplier_in, CoordMap, MultiplierData};
pub use tails::{
    build_tailed_context, consistency_relation_matrix, TailLabel, TailedContext, TailedElement,
    TailedLetter,
};
