use std::path::PathBuf;

use pcmult::corpus::{load_corpus, CorpusEntry};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn groups_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups")
}

/// Every corpus group with order in `lo..=hi`.
#[allow(dead_code)]
pub fn corpus_range(lo: u64, hi: u64) -> Vec<CorpusEntry> {
    let files: Vec<PathBuf> = (lo..=hi)
        .map(|n| corpus_dir().join(format!("order-{n}.pc")))
        .filter(|f| f.exists())
        .collect();
    load_corpus(&files).unwrap()
}

#[allow(dead_code)]
pub fn group(name: &str) -> CorpusEntry {
    let mut v = load_corpus(&[groups_dir().join(name)]).unwrap();
    assert_eq!(v.len(), 1);
    v.pop().unwrap()
}
