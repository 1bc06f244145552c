//! The tailed central extension of a pc presentation.
//!
//! Each of the `m = n(n+1)/2` relations gets a free central generator (its
//! tail) appended to the right-hand side. Collecting in this extension is the
//! base collection plus a running count of how often each relation fired.

use crate::error::{Error, Result};
use crate::pc::{
    check_consistency, conj_tail_index, consistency_tests, evaluate_test, Collector, DenseTails, Letter,
    NormalWord, PcPresentation,
};
use crate::zlinalg::IntMatrix;

/// Which relation a tail belongs to (0-based generator indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailLabel {
    /// `gᵢ^eᵢ = …`
    Power(usize),
    /// `gⱼ^gᵢ = …`, `j > i`.
    Conj(usize, usize),
}

/// A letter of the tailed extension: a base generator or a tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailedLetter {
    Gen(Letter),
    Tail { index: usize, exp: i64 },
}

/// Element of the tailed extension: base normal word plus tail vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailedElement {
    pub gen: NormalWord,
    pub tail: Vec<i64>,
}

/// A consistent base presentation with its tail numbering.
///
/// Powers come first (`0..n`), then conjugations in lexicographic `(j, i)`.
#[derive(Clone, Debug)]
pub struct TailedContext {
    base: PcPresentation,
}

impl TailedContext {
    pub fn new(base: &PcPresentation) -> Result<Self> {
        let violations = check_consistency(base);
        if !violations.is_empty() {
            return Err(Error::Inconsistent {
                name: base.name().to_string(),
                count: violations.len(),
            });
        }
        Ok(TailedContext { base: base.clone() })
    }

    pub fn base(&self) -> &PcPresentation {
        &self.base
    }

    pub fn tail_count(&self) -> usize {
        let n = self.base.len();
        n * (n + 1) / 2
    }

    pub fn tail_index(&self, label: TailLabel) -> usize {
        match label {
            TailLabel::Power(i) => i,
            TailLabel::Conj(j, i) => conj_tail_index(self.base.len(), j, i),
        }
    }

    pub fn tail_label(&self, index: usize) -> TailLabel {
        let n = self.base.len();
        if index < n {
            return TailLabel::Power(index);
        }
        let mut r = index - n;
        let mut j = 1;
        while r >= j {
            r -= j;
            j += 1;
        }
        TailLabel::Conj(j, r)
    }

    pub(crate) fn collector(&self) -> Collector<'_> {
        Collector::new(&self.base)
    }

    /// Collects a word over base generators and tails.
    pub fn collect_tailed(&self, word: &[TailedLetter]) -> Result<TailedElement> {
        let n = self.base.len();
        let mut exps = vec![0; n];
        let mut tail = vec![0i64; self.tail_count()];
        let mut col = self.collector();
        let mut run: Vec<Letter> = Vec::new();
        let mut flush = |run: &mut Vec<Letter>, exps: &mut [u32], tail: &mut [i64]| -> Result<()> {
            if !run.is_empty() {
                let mut sink = DenseTails { n, tail };
                col.collect_into(exps, run.drain(..), &mut sink)?;
            }
            Ok(())
        };
        for &l in word {
            match l {
                TailedLetter::Gen(g) => run.push(g),
                TailedLetter::Tail { index, exp } => {
                    if index >= tail.len() {
                        return Err(Error::Precondition(format!("tail index {index} out of range")));
                    }
                    // Tails are central, so their position in the word is irrelevant.
                    tail[index] = tail[index].checked_add(exp).ok_or(Error::Overflow("tail vector"))?;
                }
            }
        }
        flush(&mut run, &mut exps, &mut tail)?;
        Ok(TailedElement {
            gen: NormalWord::from_exponents(exps),
            tail,
        })
    }

    /// Collects a word over base generators only.
    pub fn collect_letters(&self, word: &[Letter]) -> Result<TailedElement> {
        let w: Vec<TailedLetter> = word.iter().map(|&l| TailedLetter::Gen(l)).collect();
        self.collect_tailed(&w)
    }

    /// Tail `τ(u, v)` picked up when collecting the product of the
    /// zero-tail lifts of `u` and `v`; also returns the normal form of `uv`.
    pub(crate) fn product_tail(
        &self,
        col: &mut Collector<'_>,
        u: &[u32],
        v: &NormalWord,
        tail: &mut [i64],
    ) -> Result<Vec<u32>> {
        let mut exps = u.to_vec();
        let mut sink = DenseTails {
            n: self.base.len(),
            tail,
        };
        col.collect_into(&mut exps, v.letters(), &mut sink)?;
        Ok(exps)
    }

    /// Tail of the commutator `[ũ, ṽ]` of zero-tail lifts:
    /// `τ(u,v) − τ(v,u) − τ(vu, [u,v])`, plus the base commutator.
    pub fn lifted_commutator(&self, u: &NormalWord, v: &NormalWord) -> Result<TailedElement> {
        let mut col = self.collector();
        self.lifted_commutator_with(&mut col, u, v)
    }

    pub(crate) fn lifted_commutator_with(
        &self,
        col: &mut Collector<'_>,
        u: &NormalWord,
        v: &NormalWord,
    ) -> Result<TailedElement> {
        let m = self.tail_count();
        let mut t_uv = vec![0i64; m];
        let mut t_vu = vec![0i64; m];
        let uv = self.product_tail(col, u.exps(), v, &mut t_uv)?;
        let vu = self.product_tail(col, v.exps(), u, &mut t_vu)?;
        let mut tail: Vec<i64> = t_uv
            .iter()
            .zip(&t_vu)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow("tail vector")))
            .collect::<Result<_>>()?;
        if uv == vu {
            return Ok(TailedElement {
                gen: self.base.identity(),
                tail,
            });
        }
        let g = self.base.commutator(u, v);
        let mut t_g = vec![0i64; m];
        self.product_tail(col, &vu, &g, &mut t_g)?;
        for (t, x) in tail.iter_mut().zip(&t_g) {
            *t = t.checked_sub(*x).ok_or(Error::Overflow("tail vector"))?;
        }
        Ok(TailedElement { gen: g, tail })
    }
}

/// One row per consistency test: `tail(left) − tail(right)`, zero rows kept.
pub fn consistency_relation_matrix(ctx: &TailedContext) -> Result<IntMatrix> {
    let p = ctx.base();
    let n = p.len();
    let m = ctx.tail_count();
    let mut col = ctx.collector();
    let mut out = IntMatrix::zeros(0, m);
    for test in consistency_tests(n) {
        let mut left = vec![0i64; m];
        let mut right = vec![0i64; m];
        let (l, r) = evaluate_test(
            p,
            &mut col,
            test,
            &mut DenseTails { n, tail: &mut left },
            &mut DenseTails { n, tail: &mut right },
        )?;
        debug_assert_eq!(l, r, "base presentation is consistent");
        out.push_row(left.iter().zip(&right).map(|(a, b)| (a - b).into()).collect());
    }
    Ok(out)
}

/// Convenience wrapper around [`TailedContext::new`].
pub fn build_tailed_context(p: &PcPresentation) -> Result<TailedContext> {
    TailedContext::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_pc_presentation;

    fn ctx(text: &str) -> TailedContext {
        TailedContext::new(&parse_pc_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn tail_counts_and_labels() {
        assert_eq!(ctx("gens 1\norders 5\n").tail_count(), 1);
        let h = ctx("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n");
        assert_eq!(h.tail_count(), 6);
        let labels: Vec<_> = (0..6).map(|r| h.tail_label(r)).collect();
        assert_eq!(
            labels,
            vec![
                TailLabel::Power(0),
                TailLabel::Power(1),
                TailLabel::Power(2),
                TailLabel::Conj(1, 0),
                TailLabel::Conj(2, 0),
                TailLabel::Conj(2, 1),
            ]
        );
        for r in 0..6 {
            assert_eq!(h.tail_index(h.tail_label(r)), r);
        }
        let p243 = ctx("gens 5\norders 3 3 3 3 3\n");
        assert_eq!(p243.tail_count(), 15);
    }

    #[test]
    fn rejects_inconsistent_base() {
        let p = parse_pc_presentation("gens 2\norders 3 3\npow 1 = g2\nconj 2 1 = g2^2\n").unwrap();
        assert!(matches!(TailedContext::new(&p), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn collect_examples() {
        let h = ctx("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n");
        let t = h.collect_tailed(&[TailedLetter::Tail { index: 2, exp: 1 }]).unwrap();
        assert!(t.gen.is_identity());
        assert_eq!(t.tail, vec![0, 0, 1, 0, 0, 0]);

        let c5 = ctx("gens 1\norders 5\n");
        let t = c5.collect_letters(&[Letter::new(0, 5)]).unwrap();
        assert!(t.gen.is_identity());
        assert_eq!(t.tail, vec![1]);

        let t = h.collect_letters(&[Letter::new(1, 1), Letter::new(0, 1)]).unwrap();
        assert_eq!(t.gen.exps(), &[1, 1, 1]);
        assert_eq!(t.tail, vec![0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn cyclic_consistency_rows_vanish() {
        let c5 = ctx("gens 1\norders 5\n");
        let m = consistency_relation_matrix(&c5).unwrap();
        assert_eq!(m.rows(), 1);
        assert!(m.is_zero());
    }
}
