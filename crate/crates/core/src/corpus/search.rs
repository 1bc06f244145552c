//! Toral search over a corpus with a digest-keyed result cache.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::entry::CorpusEntry;
use super::report::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::multiplier::{schur_multiplier_in, TailedContext};
use crate::obstruction::{toral_subgroup_in, Sweep};
use crate::pc::Limits;

/// One cached toral probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CacheRecord {
    pub schema_version: u32,
    pub digest: String,
    pub multiplier_factors: Vec<u64>,
    pub toral_order: u64,
}

impl CacheRecord {
    pub fn multiplier_order(&self) -> u64 {
        self.multiplier_factors.iter().product()
    }
}

/// Append-only JSON-lines cache. Malformed lines (torn writes, stale
/// schemas) are skipped and counted.
#[derive(Debug, Default)]
pub struct ResultCache {
    path: Option<PathBuf>,
    records: HashMap<String, CacheRecord>,
    pub skipped_lines: usize,
}

impl ResultCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn open(path: &Path) -> Result<Self> {
        let mut cache = ResultCache {
            path: Some(path.to_path_buf()),
            ..Self::default()
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(source) => return Err(Error::Io { path: path.to_path_buf(), source }),
        };
        for line in BufReader::new(file).split(b'\n') {
            let line = line.map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
            if line.iter().all(u8::is_ascii_whitespace) {
                continue;
            }
            match serde_json::from_slice::<CacheRecord>(&line) {
                Ok(r) if r.schema_version == SCHEMA_VERSION => {
                    cache.records.insert(r.digest.clone(), r);
                }
                _ => cache.skipped_lines += 1,
            }
        }
        Ok(cache)
    }

    pub fn get(&self, digest: &str) -> Option<&CacheRecord> {
        self.records.get(digest)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Adds records and appends them to the backing file in one write.
    pub fn extend(&mut self, new: Vec<CacheRecord>) -> Result<()> {
        if new.is_empty() {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let io = |source| Error::Io { path: path.clone(), source };
            let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
            file.lock().map_err(io)?;
            // A torn last line from an earlier writer must not swallow ours.
            let mut buf = String::from("\n");
            for r in &new {
                buf.push_str(&serde_json::to_string(r).expect("record serializes"));
                buf.push('\n');
            }
            file.write_all(buf.as_bytes()).map_err(io)?;
            file.unlock().map_err(io)?;
        }
        for r in new {
            self.records.insert(r.digest.clone(), r);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub min_order: u64,
    pub max_order: u64,
    pub jobs: usize,
    pub limits: Limits,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            min_order: 1,
            max_order: u64::MAX,
            jobs: 1,
            limits: Limits::default(),
        }
    }
}

/// A group whose multiplier is not generated by toral classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FlaggedGroup {
    pub id: String,
    pub order: u64,
    pub index: String,
    pub multiplier_order: u64,
    pub toral_order: u64,
}

impl FlaggedGroup {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// `order index |M| toralOrder`.
    pub fn to_text(&self) -> String {
        format!("{} {} {} {}", self.order, self.index, self.multiplier_order, self.toral_order)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchReport {
    pub flagged: Vec<FlaggedGroup>,
    /// `(id, message)` for groups whose probe hit a guard.
    pub guard_failures: Vec<(String, String)>,
    pub examined: usize,
    pub computed: usize,
    pub cached: usize,
    pub cache_skipped_lines: usize,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.flagged {
            s.push_str(&f.to_text());
            s.push('\n');
        }
        s
    }
}

fn compute(entry: &CorpusEntry, limits: &Limits) -> Result<CacheRecord> {
    let ctx = TailedContext::new(&entry.presentation)?;
    let mult = schur_multiplier_in(&ctx)?;
    let toral = toral_subgroup_in(&ctx, &mult, Sweep::EarlyExit, limits)?;
    Ok(CacheRecord {
        schema_version: SCHEMA_VERSION,
        digest: entry.source_digest.clone(),
        multiplier_factors: mult.m.torsion,
        toral_order: toral.toral_order,
    })
}

/// Toral probe of every entry with order in range; flagged groups come out in
/// corpus order whatever the worker count.
pub fn search(entries: &[CorpusEntry], opts: &SearchOptions, cache: &mut ResultCache) -> Result<SearchReport> {
    let selected: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| (opts.min_order..=opts.max_order).contains(&e.order()))
        .collect();
    let todo: Vec<&CorpusEntry> = selected
        .iter()
        .copied()
        .filter(|e| cache.get(&e.source_digest).is_none())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    let results: Vec<Result<CacheRecord>> =
        pool.install(|| todo.par_iter().map(|e| compute(e, &opts.limits)).collect());

    let mut report = SearchReport {
        examined: selected.len(),
        cache_skipped_lines: cache.skipped_lines,
        ..SearchReport::default()
    };
    let mut fresh = Vec::new();
    let mut failed: HashMap<&str, String> = HashMap::new();
    for (e, r) in todo.iter().zip(results) {
        match r {
            Ok(rec) => fresh.push(rec),
            Err(err @ Error::GuardExceeded { .. }) => {
                failed.insert(e.source_digest.as_str(), err.to_string());
            }
            Err(err) => return Err(err),
        }
    }
    report.computed = fresh.len();
    report.cached = selected.len() - todo.len();
    let mut by_digest: HashMap<String, CacheRecord> =
        fresh.iter().map(|r| (r.digest.clone(), r.clone())).collect();
    cache.extend(fresh)?;

    for e in &selected {
        if let Some(msg) = failed.get(e.source_digest.as_str()) {
            report.guard_failures.push((e.id.to_string(), msg.clone()));
            continue;
        }
        let rec = match by_digest.remove(&e.source_digest) {
            Some(r) => r,
            None => cache.get(&e.source_digest).expect("cached or computed").clone(),
        };
        if rec.toral_order != rec.multiplier_order() {
            report.flagged.push(FlaggedGroup {
                id: e.id.to_string(),
                order: e.order(),
                index: e.id.index().map_or_else(|| e.id.to_string(), |i| i.to_string()),
                multiplier_order: rec.multiplier_order(),
                toral_order: rec.toral_order,
            });
        }
    }
    Ok(report)
}
