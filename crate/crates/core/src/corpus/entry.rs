//! Loading corpus files into checked entries.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pc::{check_consistency, parse_corpus_text, PcPresentation};

/// `<order>.<index>` in small-groups numbering, or a free-form name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Library { order: u64, index: u64 },
    Named(String),
}

impl GroupId {
    pub fn parse(s: &str) -> GroupId {
        if let Some((a, b)) = s.split_once('.') {
            if let (Ok(order), Ok(index)) = (a.parse(), b.parse()) {
                return GroupId::Library { order, index };
            }
        }
        GroupId::Named(s.to_string())
    }

    pub fn index(&self) -> Option<u64> {
        match self {
            GroupId::Library { index, .. } => Some(*index),
            GroupId::Named(_) => None,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Library { order, index } => write!(f, "{order}.{index}"),
            GroupId::Named(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: GroupId,
    pub presentation: PcPresentation,
    /// SHA-256 of the canonical serialization, lowercase hex.
    pub source_digest: String,
}

impl CorpusEntry {
    /// Checks the id against the presentation and computes the digest.
    pub fn new(presentation: PcPresentation) -> Result<Self> {
        let id = GroupId::parse(presentation.name());
        if let GroupId::Library { order, .. } = id {
            if order != presentation.order() {
                return Err(Error::Precondition(format!(
                    "id {id} names order {order} but the presentation has order {}",
                    presentation.order()
                )));
            }
        }
        let violations = check_consistency(&presentation);
        if !violations.is_empty() {
            return Err(Error::Inconsistent {
                name: id.to_string(),
                count: violations.len(),
            });
        }
        Ok(CorpusEntry {
            source_digest: digest(&presentation),
            id,
            presentation,
        })
    }

    pub fn order(&self) -> u64 {
        self.presentation.order()
    }

    fn sort_key(&self) -> (u64, u64, &str) {
        (
            self.order(),
            self.id.index().unwrap_or(u64::MAX),
            self.presentation.name(),
        )
    }
}

impl PartialEq for CorpusEntry {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.source_digest == other.source_digest
    }
}

impl Eq for CorpusEntry {}

impl PartialOrd for CorpusEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CorpusEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

pub fn digest(p: &PcPresentation) -> String {
    hex::encode(Sha256::digest(p.to_corpus_text().as_bytes()))
}

/// Reads one corpus file (any number of stanzas).
pub fn load_file(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus_text(&path.display().to_string(), &text)?
        .into_iter()
        .map(CorpusEntry::new)
        .collect()
}

/// Loads files and directories (their `*.pc` files), sorted by
/// `(order, index)`, rejecting duplicate ids.
pub fn load_corpus<P: AsRef<Path>>(paths: &[P]) -> Result<Vec<CorpusEntry>> {
    let mut files: Vec<PathBuf> = Vec::new();
    for p in paths {
        let p = p.as_ref();
        if p.is_dir() {
            let rd = std::fs::read_dir(p).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            })?;
            let mut found: Vec<PathBuf> = rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "pc"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.to_path_buf());
        }
    }
    let mut out = Vec::new();
    for f in &files {
        out.extend(load_file(f)?);
    }
    let mut seen = BTreeSet::new();
    for e in &out {
        if !seen.insert(e.id.to_string()) {
            return Err(Error::DuplicateId(e.id.to_string()));
        }
    }
    out.sort();
    Ok(out)
}
