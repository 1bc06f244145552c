//! Element arithmetic and enumeration queries.

use std::collections::BTreeMap;

use super::collect::{Collector, NoTails};
use super::presentation::{Letter, NormalWord, PcPresentation};
use crate::error::{Error, Result};

/// Caps on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order that may be enumerated element by element.
    pub max_elements: u64,
    /// Largest number of ordered pairs that may be enumerated.
    pub max_pairs: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1_000_000,
            max_pairs: 100_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_elements(&self, p: &PcPresentation) -> Result<usize> {
        let order = p.checked_order().unwrap_or(u128::MAX);
        if order > self.max_elements as u128 {
            return Err(Error::guard("element enumeration", order, self.max_elements as u128));
        }
        Ok(order as usize)
    }

    pub(crate) fn check_pairs(&self, p: &PcPresentation) -> Result<usize> {
        let order = self.check_elements(p)?;
        let pairs = (order as u128) * (order as u128);
        if pairs > self.max_pairs as u128 {
            return Err(Error::guard("pair enumeration", pairs, self.max_pairs as u128));
        }
        Ok(order)
    }
}

impl PcPresentation {
    pub fn multiply(&self, u: &NormalWord, v: &NormalWord) -> NormalWord {
        let mut exps = u.0.clone();
        Collector::new(self)
            .collect_into(&mut exps, v.letters(), &mut NoTails)
            .expect("valid normal word");
        NormalWord(exps)
    }

    pub fn inverse(&self, u: &NormalWord) -> NormalWord {
        super::collect::collect(self, u.inverse_letters())
    }

    /// `u^k` for any integer `k`, by binary powering.
    pub fn power(&self, u: &NormalWord, k: i64) -> NormalWord {
        let mut base = if k < 0 { self.inverse(u) } else { u.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(&self, u: &NormalWord, v: &NormalWord) -> NormalWord {
        let letters: Vec<Letter> = u
            .inverse_letters()
            .chain(v.inverse_letters())
            .chain(u.letters())
            .chain(v.letters())
            .collect();
        super::collect::collect(self, letters)
    }

    /// Smallest `k ≥ 1` with `u^k = 1`.
    pub fn element_order(&self, u: &NormalWord) -> u64 {
        // Modulo the deeper terms of the pc series, u has order e/gcd(a, e)
        // where gₗ^a leads u; the corresponding power lies strictly deeper.
        let mut order = 1u64;
        let mut x = u.clone();
        while let Some(lead) = x.leading() {
            let e = self.rel_order(lead) as u64;
            let k = e / num_integer::gcd(e, x.0[lead] as u64);
            order *= k;
            x = self.power(&x, k as i64);
        }
        order
    }

    /// Position of `u` in lexicographic enumeration order.
    pub fn element_index(&self, u: &NormalWord) -> usize {
        u.0.iter()
            .zip(self.rel_orders())
            .fold(0usize, |acc, (&a, &e)| acc * e as usize + a as usize)
    }

    /// Inverse of [`element_index`](Self::element_index).
    pub fn element_at(&self, mut index: usize) -> NormalWord {
        let mut exps = vec![0u32; self.len()];
        for (slot, &e) in exps.iter_mut().zip(self.rel_orders()).rev() {
            *slot = (index % e as usize) as u32;
            index /= e as usize;
        }
        NormalWord(exps)
    }

    /// All `∏ eᵢ` normal words, lexicographically by exponent vector.
    pub fn enumerate_elements(&self, limits: &Limits) -> Result<ElementIter<'_>> {
        let order = limits.check_elements(self)?;
        Ok(ElementIter {
            pres: self,
            next: 0,
            end: order,
        })
    }

    /// Number of elements of order exactly 2.
    pub fn count_involutions(&self, limits: &Limits) -> Result<u64> {
        if self.order() % 2 == 1 {
            limits.check_elements(self)?;
            return Ok(0);
        }
        Ok(self.involutions(limits)?.len() as u64)
    }

    /// All involutions, in enumeration order.
    pub fn involutions(&self, limits: &Limits) -> Result<Vec<NormalWord>> {
        Ok(self
            .enumerate_elements(limits)?
            .filter(|u| !u.is_identity() && self.multiply(u, u).is_identity())
            .collect())
    }

    /// Every ordered pair `(u, v)` with `[u, v] = 1`.
    pub fn commuting_pairs(&self, limits: &Limits) -> Result<Vec<(NormalWord, NormalWord)>> {
        let table = GroupTable::build(self, limits)?;
        let mut out = Vec::new();
        for u in 0..table.order() {
            for v in 0..table.order() {
                if table.mul(u, v) == table.mul(v, u) {
                    out.push((self.element_at(u), self.element_at(v)));
                }
            }
        }
        Ok(out)
    }

    /// Pairs grouped by their commutator value.
    pub fn commutator_fibers(
        &self,
        limits: &Limits,
    ) -> Result<BTreeMap<NormalWord, Vec<(NormalWord, NormalWord)>>> {
        let table = GroupTable::build(self, limits)?;
        let mut fibers: BTreeMap<NormalWord, Vec<(NormalWord, NormalWord)>> = BTreeMap::new();
        for u in 0..table.order() {
            for v in 0..table.order() {
                fibers
                    .entry(self.element_at(table.commutator(u, v)))
                    .or_default()
                    .push((self.element_at(u), self.element_at(v)));
            }
        }
        Ok(fibers)
    }
}

/// Lexicographic stream of normal words.
pub struct ElementIter<'p> {
    pres: &'p PcPresentation,
    next: usize,
    end: usize,
}

impl Iterator for ElementIter<'_> {
    type Item = NormalWord;

    fn next(&mut self) -> Option<NormalWord> {
        if self.next == self.end {
            return None;
        }
        let w = self.pres.element_at(self.next);
        self.next += 1;
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.end - self.next;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for ElementIter<'_> {}

/// Multiplication and inversion tables over element indices.
///
/// Built once per group by collection; the exhaustive sweeps work on these
/// indices instead of re-collecting words.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl GroupTable {
    pub fn build(p: &PcPresentation, limits: &Limits) -> Result<Self> {
        let order = limits.check_pairs(p)?;
        let elems: Vec<NormalWord> = (0..order).map(|i| p.element_at(i)).collect();
        let mut mul = vec![0u32; order * order];
        let mut col = Collector::new(p);
        let mut exps = vec![0u32; p.len()];
        for (a, u) in elems.iter().enumerate() {
            for (b, v) in elems.iter().enumerate() {
                exps.copy_from_slice(&u.0);
                col.collect_into(&mut exps, v.letters(), &mut NoTails)?;
                mul[a * order + b] = p.element_index(&NormalWord(exps.clone())) as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&c| c == 0).expect("identity in every row") as u32;
        }
        Ok(GroupTable { order, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // [a,b] = (ba)⁻¹(ab)
        self.mul(self.inv(self.mul(b, a)), self.mul(a, b))
    }

    /// Indices of the cyclic subgroup generated by `a`.
    pub fn cyclic(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::presentation::parse_pc_presentation;

    fn heis() -> PcPresentation {
        parse_pc_presentation("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n").unwrap()
    }
    fn c5() -> PcPresentation {
        parse_pc_presentation("gens 1\norders 5\n").unwrap()
    }
    fn v4() -> PcPresentation {
        parse_pc_presentation("gens 2\norders 2 2\n").unwrap()
    }
    fn q8() -> PcPresentation {
        parse_pc_presentation("gens 3\norders 2 2 2\npow 1 = g3\npow 2 = g3\nconj 2 1 = g2*g3\n").unwrap()
    }

    #[test]
    fn commutator_of_b_and_a_is_c() {
        let p = heis();
        let c = p.commutator(&p.generator(1), &p.generator(0));
        assert_eq!(c, p.generator(2));
    }

    #[test]
    fn inverse_and_power() {
        let p = heis();
        let u = p.normal_word(vec![1, 2, 1]).unwrap();
        assert!(p.multiply(&u, &p.inverse(&u)).is_identity());
        let c = c5();
        assert!(c.power(&c.generator(0), 5).is_identity());
        assert_eq!(c.power(&c.generator(0), -1).exps(), &[4]);
    }

    #[test]
    fn element_orders() {
        let p = heis();
        assert_eq!(p.element_order(&p.identity()), 1);
        assert_eq!(p.element_order(&p.generator(0)), 3);
        let c = c5();
        assert_eq!(c.element_order(&c.normal_word(vec![2]).unwrap()), 5);
        let q = q8();
        assert_eq!(q.element_order(&q.generator(0)), 4);
        assert_eq!(q.element_order(&q.generator(2)), 2);
        let c6 = parse_pc_presentation("gens 1\norders 6\n").unwrap();
        assert_eq!(c6.element_order(&c6.normal_word(vec![2]).unwrap()), 3);
        assert_eq!(c6.element_order(&c6.normal_word(vec![3]).unwrap()), 2);
    }

    #[test]
    fn enumeration_counts() {
        let l = Limits::default();
        assert_eq!(c5().enumerate_elements(&l).unwrap().count(), 5);
        assert_eq!(heis().enumerate_elements(&l).unwrap().count(), 27);
        let all: Vec<_> = v4().enumerate_elements(&l).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_guard() {
        let l = Limits {
            max_elements: 10,
            max_pairs: 100,
        };
        assert!(matches!(
            heis().enumerate_elements(&l),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(heis().commuting_pairs(&Limits { max_elements: 100, max_pairs: 100 }).is_err());
    }

    #[test]
    fn involution_counts() {
        let l = Limits::default();
        assert_eq!(heis().count_involutions(&l).unwrap(), 0);
        assert_eq!(v4().count_involutions(&l).unwrap(), 3);
        assert_eq!(q8().count_involutions(&l).unwrap(), 1);
    }

    #[test]
    fn commuting_pair_counts() {
        let l = Limits::default();
        assert_eq!(c5().commuting_pairs(&l).unwrap().len(), 25);
        assert_eq!(v4().commuting_pairs(&l).unwrap().len(), 16);
    }

    #[test]
    fn heisenberg_commuting_pairs_match_brute_force() {
        let p = heis();
        let l = Limits::default();
        let elems: Vec<_> = p.enumerate_elements(&l).unwrap().collect();
        let brute = elems
            .iter()
            .flat_map(|u| elems.iter().map(move |v| (u, v)))
            .filter(|(u, v)| p.multiply(u, v) == p.multiply(v, u))
            .count();
        assert_eq!(brute, 297);
        assert_eq!(p.commuting_pairs(&l).unwrap().len(), brute);
    }

    #[test]
    fn fibers() {
        let l = Limits::default();
        let f = c5().commutator_fibers(&l).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f.values().next().unwrap().len(), 25);

        let p = heis();
        let f = p.commutator_fibers(&l).unwrap();
        let keys: Vec<_> = f.keys().cloned().collect();
        assert_eq!(
            keys,
            vec![p.identity(), p.generator(2), p.normal_word(vec![0, 0, 2]).unwrap()]
        );
        assert_eq!(f.values().map(Vec::len).sum::<usize>(), 27 * 27);
        assert_eq!(f[&p.identity()].len(), 297);
    }
}
