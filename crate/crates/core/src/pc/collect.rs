//! Collection from the left.
//!
//! One engine serves both the group itself and its tailed central
//! extension: every application of a power or conjugation relation is
//! reported to a [`TailSink`], which either ignores it or accumulates the
//! relation's tail.

use super::presentation::{Letter, NormalWord, PcPresentation};
use crate::error::{Error, Result};

/// Receives one event per application of a relation.
pub(crate) trait TailSink {
    /// `gᵢ^eᵢ` was rewritten `count` times (negative for inverse rewrites).
    fn power(&mut self, i: usize, count: i64) -> Result<()>;
    /// `gⱼ^gᵢ` was rewritten `count` times.
    fn conj(&mut self, j: usize, i: usize, count: i64) -> Result<()>;
}

pub(crate) struct NoTails;

impl TailSink for NoTails {
    #[inline]
    fn power(&mut self, _: usize, _: i64) -> Result<()> {
        Ok(())
    }
    #[inline]
    fn conj(&mut self, _: usize, _: usize, _: i64) -> Result<()> {
        Ok(())
    }
}

/// Index of the tail attached to `gⱼ^gᵢ`: powers occupy `0..n`, then the
/// conjugation tails follow in lexicographic `(j, i)` order.
#[inline]
pub(crate) fn conj_tail_index(n: usize, j: usize, i: usize) -> usize {
    n + j * (j - 1) / 2 + i
}

/// Accumulates tails into a dense integer vector with checked arithmetic.
pub(crate) struct DenseTails<'a> {
    pub n: usize,
    pub tail: &'a mut [i64],
}

impl TailSink for DenseTails<'_> {
    #[inline]
    fn power(&mut self, i: usize, count: i64) -> Result<()> {
        let t = &mut self.tail[i];
        *t = t.checked_add(count).ok_or(Error::Overflow("tail vector"))?;
        Ok(())
    }
    #[inline]
    fn conj(&mut self, j: usize, i: usize, count: i64) -> Result<()> {
        let t = &mut self.tail[conj_tail_index(self.n, j, i)];
        *t = t.checked_add(count).ok_or(Error::Overflow("tail vector"))?;
        Ok(())
    }
}

/// Reusable collection state for one presentation.
pub(crate) struct Collector<'p> {
    pres: &'p PcPresentation,
    stack: Vec<(u32, i64)>,
    suffix: Vec<u32>,
}

impl<'p> Collector<'p> {
    pub fn new(pres: &'p PcPresentation) -> Self {
        Collector {
            pres,
            stack: Vec::with_capacity(64),
            suffix: vec![0; pres.len()],
        }
    }

    /// Multiplies the normal word `exps` on the right by the letters, in place.
    pub fn collect_into<S: TailSink>(
        &mut self,
        exps: &mut [u32],
        letters: impl IntoIterator<Item = Letter>,
        sink: &mut S,
    ) -> Result<()> {
        debug_assert!(self.stack.is_empty());
        let mut pending: Vec<Letter> = letters.into_iter().collect();
        // The stack is LIFO; push the word back to front.
        while let Some(l) = pending.pop() {
            if l.exp != 0 {
                if l.gen >= self.pres.len() {
                    return Err(Error::Precondition(format!("generator index {} out of range", l.gen + 1)));
                }
                self.stack.push((l.gen as u32, l.exp));
            }
        }
        let r = self.run(exps, sink);
        self.stack.clear();
        r
    }

    fn push_word(&mut self, w: &NormalWord) {
        for (k, &a) in w.0.iter().enumerate().rev() {
            if a != 0 {
                self.stack.push((k as u32, a as i64));
            }
        }
    }

    fn run<S: TailSink>(&mut self, exps: &mut [u32], sink: &mut S) -> Result<()> {
        let pres = self.pres;
        let n = pres.len();
        while let Some((g, c)) = self.stack.pop() {
            let g = g as usize;
            let e = pres.rel_order(g) as i64;
            if c < 0 {
                // gᵢ⁻¹ = gᵢ^(eᵢ-1) · (gᵢ^eᵢ)⁻¹, with gᵢ^eᵢ its power relation.
                if c < -1 {
                    self.stack.push((g as u32, c + 1));
                }
                for (k, &a) in pres.power_rhs(g).0.iter().enumerate() {
                    if a != 0 {
                        self.stack.push((k as u32, -(a as i64)));
                    }
                }
                sink.power(g, -1)?;
                if e > 1 {
                    self.stack.push((g as u32, e - 1));
                }
                continue;
            }
            let suffix_zero = exps[g + 1..].iter().all(|&a| a == 0);
            if suffix_zero {
                let total = (exps[g] as i64).checked_add(c).ok_or(Error::Overflow("exponent"))?;
                let q = total / e;
                exps[g] = (total % e) as u32;
                if q > 0 {
                    sink.power(g, q)?;
                    let w = pres.power_rhs(g);
                    if !w.is_identity() {
                        for _ in 0..q {
                            self.push_word(w);
                        }
                    }
                }
                continue;
            }
            if c > 1 {
                self.stack.push((g as u32, c - 1));
            }
            let overflow = exps[g] as i64 + 1 == e;
            let commutes = (g + 1..n).all(|k| exps[k] == 0 || pres.conj_is_trivial(k, g));
            if commutes && !overflow {
                exps[g] += 1;
                for (k, &a) in exps.iter().enumerate().skip(g + 1) {
                    if a != 0 {
                        sink.conj(k, g, a as i64)?;
                    }
                }
                continue;
            }
            // prefix·gᵍ^a·S·g = prefix·g^(a+1)·S^g, S^g = ∏ (gₖ^g)^aₖ.
            self.suffix[g + 1..].copy_from_slice(&exps[g + 1..]);
            for a in &mut exps[g + 1..] {
                *a = 0;
            }
            for k in (g + 1..n).rev() {
                let a = self.suffix[k];
                if a == 0 {
                    continue;
                }
                sink.conj(k, g, a as i64)?;
                if pres.conj_is_trivial(k, g) {
                    self.stack.push((k as u32, a as i64));
                } else {
                    let w = pres.conj_rhs(k, g);
                    for _ in 0..a {
                        self.push_word(w);
                    }
                }
            }
            if overflow {
                exps[g] = 0;
                sink.power(g, 1)?;
                let w = pres.power_rhs(g);
                if !w.is_identity() {
                    self.push_word(w);
                }
            } else {
                exps[g] += 1;
            }
        }
        Ok(())
    }
}

/// Normal form of the word `letters` (0-based generator indices).
pub fn collect(p: &PcPresentation, letters: impl IntoIterator<Item = Letter>) -> NormalWord {
    let mut exps = vec![0; p.len()];
    Collector::new(p)
        .collect_into(&mut exps, letters, &mut NoTails)
        .expect("letters must use valid generator indices");
    NormalWord(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::presentation::parse_pc_presentation;

    fn heis() -> PcPresentation {
        parse_pc_presentation("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n").unwrap()
    }

    #[test]
    fn ba_collects_to_abc() {
        let p = heis();
        let w = collect(&p, [Letter::new(1, 1), Letter::new(0, 1)]);
        assert_eq!(w.exps(), &[1, 1, 1]);
    }

    #[test]
    fn empty_word_is_identity() {
        assert!(collect(&heis(), []).is_identity());
    }

    #[test]
    fn cyclic_exponent_reduction() {
        let c5 = parse_pc_presentation("gens 1\norders 5\n").unwrap();
        assert_eq!(collect(&c5, [Letter::new(0, 7)]).exps(), &[2]);
        assert_eq!(collect(&c5, [Letter::new(0, -1)]).exps(), &[4]);
    }

    #[test]
    fn negative_letters_invert() {
        let p = heis();
        // a⁻¹ b⁻¹ a b = [a, b] = c⁻¹ = c²
        let w = collect(
            &p,
            [Letter::new(0, -1), Letter::new(1, -1), Letter::new(0, 1), Letter::new(1, 1)],
        );
        assert_eq!(w.exps(), &[0, 0, 2]);
    }

    #[test]
    fn out_of_range_letter_is_rejected() {
        let p = heis();
        let mut exps = vec![0; 3];
        assert!(Collector::new(&p)
            .collect_into(&mut exps, [Letter::new(3, 1)], &mut NoTails)
            .is_err());
    }
}
