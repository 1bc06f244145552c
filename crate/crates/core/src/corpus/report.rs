//! Per-group probes and their line-delimited reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::entry::CorpusEntry;
use crate::error::{Error, Result};
use crate::multiplier::{h2_bar_oracle, schur_multiplier_in, TailedContext};
use crate::obstruction::{
    covering_genus, genus2_subgroup_in, toral_subgroup_in, verdict_from, Evidence, Genus2Strategy, Sweep,
    VerdictKind,
};
use crate::pc::Limits;
use crate::zlinalg::AbelianStructure;

/// Version of every record this module serializes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stage {
    Multiplier,
    Toral,
    Genus2,
    Involutions,
    Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageFailure {
    pub stage: Stage,
    pub guard_exceeded: bool,
    pub message: String,
}

/// Milliseconds per stage; `None` for stages that did not run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub multiplier_ms: Option<f64>,
    pub toral_ms: Option<f64>,
    pub genus2_ms: Option<f64>,
    pub involutions_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub schema_version: u32,
    pub id: String,
    pub group_order: u64,
    pub multiplier_factors: Option<Vec<u64>>,
    pub toral_order: Option<u64>,
    pub toral_generated: Option<bool>,
    pub genus2_order: Option<u64>,
    pub genus2_generated: Option<bool>,
    pub involution_count: Option<u64>,
    pub spherical_possible: Option<bool>,
    pub verdict_kind: Option<VerdictKind>,
    pub timings: Timings,
    pub seed: u64,
    pub failed_stage: Option<StageFailure>,
}

impl ProbeReport {
    pub fn multiplier_order(&self) -> Option<u64> {
        self.multiplier_factors.as_ref().map(|f| f.iter().product())
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Checks the cross-field invariants of a complete or partial report.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let m = self.multiplier_order();
        let divides = |a: Option<u64>, b: Option<u64>, what: &str| match (a, b) {
            (Some(a), Some(b)) if a == 0 || b % a != 0 => Err(format!("{what}: {a} does not divide {b}")),
            _ => Ok(()),
        };
        divides(self.toral_order, self.genus2_order, "toral | genus2")?;
        divides(self.genus2_order, m, "genus2 | multiplier")?;
        divides(self.toral_order, m, "toral | multiplier")?;
        if let (Some(t), Some(g), Some(m)) = (self.toral_order, self.toral_generated, m) {
            if g != (t == m) {
                return Err("toralGenerated disagrees with the orders".into());
            }
        }
        if let (Some(t), Some(g), Some(m)) = (self.genus2_order, self.genus2_generated, m) {
            if g != (t == m) {
                return Err("genus2Generated disagrees with the orders".into());
            }
        }
        if let (Some(i), Some(s)) = (self.involution_count, self.spherical_possible) {
            if s != (i >= 2) {
                return Err("sphericalPossible disagrees with involutionCount".into());
            }
        }
        if self.group_order % 2 == 1 && self.involution_count.is_some_and(|i| i != 0) {
            return Err("odd order group with involutions".into());
        }
        if let (Some(kind), Some(m), Some(t), Some(i), Some(s)) = (
            self.verdict_kind,
            m,
            self.toral_generated,
            self.involution_count,
            self.spherical_possible,
        ) {
            let ev = Evidence {
                multiplier_order: m,
                toral_generated: t,
                involution_count: i,
                spherical_possible: s,
            };
            if ev.classify() != kind {
                return Err(format!("verdict {kind} does not follow from the evidence"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    pub genus2: bool,
    pub strategy: Genus2Strategy,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            genus2: false,
            strategy: Genus2Strategy::RandomizedThenExhaustive,
            seed: 0,
            limits: Limits::default(),
        }
    }
}

fn ms(t: Instant) -> Option<f64> {
    Some(t.elapsed().as_secs_f64() * 1e3)
}

fn failure(stage: Stage, e: &Error) -> StageFailure {
    StageFailure {
        stage,
        guard_exceeded: matches!(e, Error::GuardExceeded { .. }),
        message: e.to_string(),
    }
}

/// Runs every stage it can; a failing stage ends the probe and is recorded.
pub fn probe(entry: &CorpusEntry, opts: &ProbeOptions) -> ProbeReport {
    let mut r = ProbeReport {
        schema_version: SCHEMA_VERSION,
        id: entry.id.to_string(),
        group_order: entry.order(),
        multiplier_factors: None,
        toral_order: None,
        toral_generated: None,
        genus2_order: None,
        genus2_generated: None,
        involution_count: None,
        spherical_possible: None,
        verdict_kind: None,
        timings: Timings::default(),
        seed: opts.seed,
        failed_stage: None,
    };
    if let Err(f) = run_stages(entry, opts, &mut r) {
        r.failed_stage = Some(f);
    }
    r
}

fn run_stages(entry: &CorpusEntry, opts: &ProbeOptions, r: &mut ProbeReport) -> std::result::Result<(), StageFailure> {
    let p = &entry.presentation;
    let t = Instant::now();
    let (ctx, mult) = TailedContext::new(p)
        .and_then(|ctx| schur_multiplier_in(&ctx).map(|m| (ctx, m)))
        .map_err(|e| failure(Stage::Multiplier, &e))?;
    r.timings.multiplier_ms = ms(t);
    r.multiplier_factors = Some(mult.m.torsion.clone());

    let t = Instant::now();
    let toral =
        toral_subgroup_in(&ctx, &mult, Sweep::EarlyExit, &opts.limits).map_err(|e| failure(Stage::Toral, &e))?;
    r.timings.toral_ms = ms(t);
    r.toral_order = Some(toral.toral_order);
    r.toral_generated = Some(toral.toral_generated);

    if opts.genus2 {
        let t = Instant::now();
        let g2 = genus2_subgroup_in(&ctx, &mult, opts.strategy, opts.seed, &opts.limits)
            .map_err(|e| failure(Stage::Genus2, &e))?;
        r.timings.genus2_ms = ms(t);
        r.genus2_order = Some(g2.genus2_order);
        r.genus2_generated = Some(g2.genus2_generated);
    }

    let t = Instant::now();
    let v = verdict_from(p, &toral, &opts.limits).map_err(|e| failure(Stage::Involutions, &e))?;
    r.timings.involutions_ms = ms(t);
    r.involution_count = Some(v.evidence.involution_count);
    r.spherical_possible = Some(v.evidence.spherical_possible);
    r.verdict_kind = Some(v.kind);
    Ok(())
}

/// Verdict plus, for non-extending groups, the genus of the smallest probed
/// action (free actions with genus-2 quotient).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub schema_version: u32,
    pub id: String,
    pub verdict_kind: VerdictKind,
    pub evidence: Evidence,
    pub probe_genus: Option<u64>,
}

impl VerdictReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let e = &self.evidence;
        let mut s = format!(
            "{} {} multiplierOrder={} toralGenerated={} involutionCount={} sphericalPossible={}",
            self.id, self.verdict_kind, e.multiplier_order, e.toral_generated, e.involution_count, e.spherical_possible
        );
        if let Some(g) = self.probe_genus {
            s.push_str(&format!(" probeGenus={g}"));
        }
        s
    }
}

pub fn verdict_report(entry: &CorpusEntry, limits: &Limits) -> Result<VerdictReport> {
    let v = crate::obstruction::verdict(&entry.presentation, limits)?;
    Ok(VerdictReport {
        schema_version: SCHEMA_VERSION,
        id: entry.id.to_string(),
        verdict_kind: v.kind,
        evidence: v.evidence,
        probe_genus: (v.kind == VerdictKind::NonExtendingExists).then(|| covering_genus(entry.order(), 2)),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleReport {
    pub schema_version: u32,
    pub id: String,
    pub oracle: AbelianStructure,
    pub multiplier: AbelianStructure,
    pub pass: bool,
}

impl OracleReport {
    pub fn to_text(&self) -> String {
        format!(
            "{} oracle={} multiplier={} {}",
            self.id,
            self.oracle,
            self.multiplier,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub fn oracle_report(entry: &CorpusEntry) -> Result<OracleReport> {
    let oracle = h2_bar_oracle(&entry.presentation)?;
    let multiplier = crate::multiplier::schur_multiplier(&entry.presentation)?.m;
    Ok(OracleReport {
        schema_version: SCHEMA_VERSION,
        id: entry.id.to_string(),
        pass: oracle == multiplier,
        oracle,
        multiplier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_pc_presentation;

    fn entry(text: &str) -> CorpusEntry {
        CorpusEntry::new(parse_pc_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn schema_version_comes_first() {
        let r = probe(&entry("group 5.1\ngens 1\norders 5\n"), &ProbeOptions::default());
        assert!(r.to_json_line().starts_with("{\"schemaVersion\":1,"));
        let mut back: ProbeReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert!(back.timings.multiplier_ms.is_some());
        back.timings = r.timings.clone();
        assert_eq!(back, r);
    }

    #[test]
    fn trivial_group_report() {
        let r = probe(&entry("group 1.1 order=1\ngens 0\norders\n"), &ProbeOptions::default());
        assert_eq!(r.multiplier_factors, Some(vec![]));
        assert_eq!((r.toral_order, r.toral_generated), (Some(1), Some(true)));
        assert_eq!(r.verdict_kind, Some(VerdictKind::AllExtendFreely));
        assert!(r.failed_stage.is_none());
        r.validate().unwrap();
    }

    #[test]
    fn guard_marks_the_failed_stage() {
        let opts = ProbeOptions {
            limits: Limits { max_elements: 8, max_pairs: 64 },
            ..ProbeOptions::default()
        };
        let r = probe(&entry("group 9.2\ngens 2\norders 3 3\n"), &opts);
        assert_eq!(r.multiplier_factors, Some(vec![3]));
        let f = r.failed_stage.clone().unwrap();
        assert!(f.guard_exceeded);
        assert_eq!(f.stage, Stage::Toral);
        assert!(r.toral_order.is_none());
        r.validate().unwrap();
    }

    #[test]
    fn validation_catches_bad_reports() {
        let mut r = probe(&entry("group 9.2\ngens 2\norders 3 3\n"), &ProbeOptions { genus2: true, ..Default::default() });
        r.validate().unwrap();
        r.toral_order = Some(2);
        assert!(r.validate().is_err());
    }

    #[test]
    fn oracle_and_verdict_reports() {
        let e = entry("group 27.3\ngens 3\norders 3 3 3\nconj 2 1 = g2*g3\n");
        let o = oracle_report(&e).unwrap();
        assert!(o.pass);
        assert_eq!(o.to_text(), "27.3 oracle=[3,3] multiplier=[3,3] PASS");
        let v = verdict_report(&e, &Limits::default()).unwrap();
        assert_eq!(v.verdict_kind, VerdictKind::AllExtendNonsingularly);
        assert_eq!(v.probe_genus, None);
    }
}
