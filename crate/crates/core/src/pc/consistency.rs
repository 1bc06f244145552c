//! The standard consistency test family for pc presentations.

use std::fmt;

use serde::Serialize;

use super::collect::{Collector, NoTails, TailSink};
use super::presentation::{Letter, NormalWord, PcPresentation};
use crate::error::Result;

/// One associativity or power test. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TestKind {
    /// `g_k (g_j g_i)` vs `(g_k g_j) g_i`, `k > j > i`.
    Triple { k: usize, j: usize, i: usize },
    /// `g_j^{e_j} g_i` vs `g_j^{e_j-1} (g_j g_i)`, `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `g_j g_i^{e_i}` vs `(g_j g_i) g_i^{e_i-1}`, `j > i`.
    PowerRight { j: usize, i: usize },
    /// `g_i^{e_i} g_i` vs `g_i g_i^{e_i}`.
    SelfPower { i: usize },
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestKind::Triple { k, j, i } => write!(f, "triple({},{},{})", k + 1, j + 1, i + 1),
            TestKind::PowerLeft { j, i } => write!(f, "powerLeft({},{})", j + 1, i + 1),
            TestKind::PowerRight { j, i } => write!(f, "powerRight({},{})", j + 1, i + 1),
            TestKind::SelfPower { i } => write!(f, "selfPower({})", i + 1),
        }
    }
}

/// A test whose two sides collect to different normal words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub test: TestKind,
    pub left: NormalWord,
    pub right: NormalWord,
}

/// All tests for `n` generators in a fixed order: triples by `(k, j, i)`,
/// then power-left, power-right and self-power tests.
pub fn consistency_tests(n: usize) -> Vec<TestKind> {
    let mut out = Vec::new();
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                out.push(TestKind::Triple { k, j, i });
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(TestKind::PowerLeft { j, i });
        }
    }
    for j in 0..n {
        for i in 0..j {
            out.push(TestKind::PowerRight { j, i });
        }
    }
    for i in 0..n {
        out.push(TestKind::SelfPower { i });
    }
    out
}

/// `prefix · (inner)`: the inner word is collected first.
fn bracketed<S: TailSink>(
    col: &mut Collector<'_>,
    n: usize,
    prefix: &[Letter],
    inner: &[Letter],
    sink: &mut S,
) -> Result<NormalWord> {
    let mut w = vec![0; n];
    col.collect_into(&mut w, inner.iter().copied(), sink)?;
    let mut out = vec![0; n];
    col.collect_into(&mut out, prefix.iter().copied(), sink)?;
    let inner = NormalWord(w);
    col.collect_into(&mut out, inner.letters(), sink)?;
    Ok(NormalWord(out))
}

/// Left-to-right collection of the whole word.
fn sequential<S: TailSink>(
    col: &mut Collector<'_>,
    n: usize,
    word: &[Letter],
    sink: &mut S,
) -> Result<NormalWord> {
    let mut out = vec![0; n];
    col.collect_into(&mut out, word.iter().copied(), sink)?;
    Ok(NormalWord(out))
}

/// Collects both sides of `test`, reporting relation uses to the two sinks.
pub(crate) fn evaluate_test<L: TailSink, R: TailSink>(
    p: &PcPresentation,
    col: &mut Collector<'_>,
    test: TestKind,
    left: &mut L,
    right: &mut R,
) -> Result<(NormalWord, NormalWord)> {
    let n = p.len();
    let g = |x: usize, e: i64| Letter::new(x, e);
    let e = |x: usize| p.rel_order(x) as i64;
    Ok(match test {
        TestKind::Triple { k, j, i } => (
            bracketed(col, n, &[g(k, 1)], &[g(j, 1), g(i, 1)], left)?,
            sequential(col, n, &[g(k, 1), g(j, 1), g(i, 1)], right)?,
        ),
        TestKind::PowerLeft { j, i } => (
            sequential(col, n, &[g(j, e(j)), g(i, 1)], left)?,
            bracketed(col, n, &[g(j, e(j) - 1)], &[g(j, 1), g(i, 1)], right)?,
        ),
        TestKind::PowerRight { j, i } => (
            bracketed(col, n, &[g(j, 1)], &[g(i, e(i))], left)?,
            sequential(col, n, &[g(j, 1), g(i, 1), g(i, e(i) - 1)], right)?,
        ),
        TestKind::SelfPower { i } => (
            sequential(col, n, &[g(i, e(i)), g(i, 1)], left)?,
            bracketed(col, n, &[g(i, 1)], &[g(i, e(i))], right)?,
        ),
    })
}

/// Runs every consistency test; an empty result certifies `|G| = ∏ eᵢ`.
pub fn check_consistency(p: &PcPresentation) -> Vec<ConsistencyViolation> {
    let mut col = Collector::new(p);
    consistency_tests(p.len())
        .into_iter()
        .filter_map(|test| {
            let (left, right) = evaluate_test(p, &mut col, test, &mut NoTails, &mut NoTails)
                .expect("untailed collection cannot fail");
            (left != right).then_some(ConsistencyViolation { test, left, right })
        })
        .collect()
}

impl PcPresentation {
    pub fn is_consistent(&self) -> bool {
        check_consistency(self).is_empty()
    }
}
