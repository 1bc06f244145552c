//! Toral and genus-2 subgroups of the multiplier, the Bogomolov multiplier,
//! and the resulting extension verdicts.

mod genus2;
mod toral;
mod verdict;

pub use genus2::{genus2_subgroup, genus2_subgroup_in, Genus2Result, Genus2Strategy, DEFAULT_SAMPLES};
pub use toral::{bogomolov, toral_subgroup, toral_subgroup_in, Sweep, ToralResult};
pub use verdict::{
    covering_genus, has_spherical_subgroup, verdict, verdict_from, Evidence, Verdict, VerdictKind,
};
