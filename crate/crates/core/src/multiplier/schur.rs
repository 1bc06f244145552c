//! The Schur multiplier from the consistency relations among tails.
//!
//! `ℤ^m / ⟨consistency rows⟩ ≅ M(G) ⊕ ℤⁿ`; the torsion part is `M(G)`. The
//! Smith transform `V` of the relation matrix gives coordinates: a tail vector
//! `x` maps to `x·V`, whose first `rank` entries live in `ℤ/dᵢ` and whose
//! remaining entries are free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::tails::{consistency_relation_matrix, TailedContext};
use crate::error::{Error, Result};
use crate::pc::{Letter, PcPresentation};
use crate::zlinalg::{smith_normal_form, AbelianStructure, IntMatrix};

/// Coordinates for `ℤ^m / ⟨consistency rows⟩`.
#[derive(Clone, Debug)]
pub struct CoordMap {
    v: IntMatrix,
    rank: usize,
    /// Columns of `V` with invariant factor > 1, with that factor.
    torsion_cols: Vec<(usize, u64)>,
    /// `row r of V` reduced modulo each torsion factor.
    rows_mod: Vec<Vec<i64>>,
}

impl CoordMap {
    /// Torsion coordinates of a tail vector (entries in `[0, dᵢ)`).
    pub fn torsion_coords(&self, tail: &[i64]) -> Vec<i64> {
        let k = self.torsion_cols.len();
        let mut acc = vec![0i128; k];
        for (x, row) in tail.iter().zip(&self.rows_mod) {
            if *x == 0 {
                continue;
            }
            for c in 0..k {
                acc[c] += *x as i128 * row[c] as i128;
            }
        }
        acc.iter()
            .zip(&self.torsion_cols)
            .map(|(a, &(_, d))| a.rem_euclid(d as i128) as i64)
            .collect()
    }

    /// Exact free coordinates `(x·V)ⱼ`, `j ≥ rank`.
    pub fn free_coords(&self, tail: &[i64]) -> Vec<BigInt> {
        let x: Vec<BigInt> = tail.iter().map(|&t| BigInt::from(t)).collect();
        let y = self.v.left_apply(&x);
        y[self.rank..].to_vec()
    }

    /// True when `tail` lies in the consistency lattice.
    pub fn is_relation(&self, tail: &[i64]) -> bool {
        self.torsion_coords(tail).iter().all(|&c| c == 0)
            && self.free_coords(tail).iter().all(Zero::is_zero)
    }
}

/// `T = ℤ^m / ⟨consistency rows⟩`, `M = torsion(T) = M(G)`, and coordinates.
#[derive(Clone, Debug)]
pub struct MultiplierData {
    pub t: AbelianStructure,
    pub m: AbelianStructure,
    pub coords: CoordMap,
    pub relation_rank: usize,
}

impl MultiplierData {
    pub fn order(&self) -> u64 {
        self.m.torsion_order()
    }
}

/// Computes `M(G)` for a consistent presentation.
pub fn schur_multiplier(p: &PcPresentation) -> Result<MultiplierData> {
    let ctx = TailedContext::new(p)?;
    schur_multiplier_in(&ctx)
}

pub fn schur_multiplier_in(ctx: &TailedContext) -> Result<MultiplierData> {
    let n = ctx.base().len();
    let m = ctx.tail_count();
    let rel = consistency_relation_matrix(ctx)?;
    let snf = smith_normal_form(&rel);
    let diag = snf.diagonal();
    let mut torsion_cols = Vec::new();
    for (c, d) in diag.iter().enumerate() {
        if !d.is_one() {
            torsion_cols.push((c, d.to_u64().ok_or(Error::Overflow("invariant factor"))?));
        }
    }
    let t = AbelianStructure {
        torsion: torsion_cols.iter().map(|&(_, d)| d).collect(),
        free_rank: m - snf.rank,
    };
    assert_eq!(
        t.free_rank, n,
        "tail module of {} has free rank {} instead of the generator count {}",
        ctx.base().name(),
        t.free_rank,
        n
    );
    let rows_mod = (0..m)
        .map(|r| {
            torsion_cols
                .iter()
                .map(|&(c, d)| {
                    snf.v[(r, c)]
                        .mod_floor(&BigInt::from(d))
                        .to_i64()
                        .expect("reduced below a u64 factor")
                })
                .collect()
        })
        .collect();
    Ok(MultiplierData {
        m: t.torsion_part(),
        t,
        relation_rank: snf.rank,
        coords: CoordMap {
            v: snf.v,
            rank: snf.rank,
            torsion_cols,
            rows_mod,
        },
    })
}

/// Class in `M(G)` of a relator word of `G`, in torsion coordinates.
///
/// The word must be trivial in `G` and lie in the derived subgroup of the
/// free group (every generator's exponent sum zero); such relators are exactly
/// the ones whose classes form `M(G)`. Commutator products qualify.
pub fn lift_class(ctx: &TailedContext, mult: &MultiplierData, word: &[Letter]) -> Result<Vec<i64>> {
    let mut sums = vec![0i64; ctx.base().len()];
    for l in word {
        if l.gen >= sums.len() {
            return Err(Error::Precondition(format!("generator index {} out of range", l.gen + 1)));
        }
        sums[l.gen] += l.exp;
    }
    if sums.iter().any(|&s| s != 0) {
        return Err(Error::Precondition(
            "word has nonzero exponent sums, so its class is not in M(G)".into(),
        ));
    }
    let e = ctx.collect_letters(word)?;
    if !e.gen.is_identity() {
        return Err(Error::Precondition(
            "word is not a relator: its image in the group is nontrivial".into(),
        ));
    }
    let free = mult.coords.free_coords(&e.tail);
    assert!(
        free.iter().all(Zero::is_zero),
        "class of a relator has nonzero free coordinates"
    );
    Ok(mult.coords.torsion_coords(&e.tail))
}

/// Letters of `[u, v] = u⁻¹ v⁻¹ u v`.
pub fn commutator_word(u: &crate::pc::NormalWord, v: &crate::pc::NormalWord) -> Vec<Letter> {
    u.inverse_letters()
        .chain(v.inverse_letters())
        .chain(u.letters())
        .chain(v.letters())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{parse_pc_presentation, Limits};
    use crate::zlinalg::subgroup_order_in_torsion;

    fn pres(text: &str) -> PcPresentation {
        parse_pc_presentation(text).unwrap()
    }

    const HEIS: &str = "gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n";
    const C3C3: &str = "gens 2\norders 3 3\n";

    #[test]
    fn cyclic_multiplier_is_trivial() {
        let m = schur_multiplier(&pres("gens 1\norders 5\n")).unwrap();
        assert_eq!(m.order(), 1);
        assert_eq!(m.t.free_rank, 1);
        assert_eq!(m.relation_rank, 0);
    }

    #[test]
    fn elementary_abelian_nine() {
        let m = schur_multiplier(&pres(C3C3)).unwrap();
        assert_eq!(m.m, AbelianStructure::finite(vec![3]));
    }

    #[test]
    fn heisenberg() {
        let m = schur_multiplier(&pres(HEIS)).unwrap();
        assert_eq!(m.m, AbelianStructure::finite(vec![3, 3]));
        assert_eq!(m.relation_rank, 3);
    }

    #[test]
    fn commutator_of_generators_generates() {
        let p = pres(C3C3);
        let ctx = TailedContext::new(&p).unwrap();
        let mult = schur_multiplier_in(&ctx).unwrap();
        let c = lift_class(&ctx, &mult, &commutator_word(&p.generator(0), &p.generator(1))).unwrap();
        assert_eq!(subgroup_order_in_torsion(&mult.m, &[c]).unwrap(), 3);
        let u = p.generator(0);
        assert_eq!(lift_class(&ctx, &mult, &commutator_word(&u, &u)).unwrap(), vec![0]);
    }

    #[test]
    fn relators_of_cyclic_group_vanish() {
        let p = pres("gens 1\norders 5\n");
        let ctx = TailedContext::new(&p).unwrap();
        let mult = schur_multiplier_in(&ctx).unwrap();
        let g = p.generator(0);
        let g2 = p.power(&g, 2);
        let c = lift_class(&ctx, &mult, &commutator_word(&g, &g2)).unwrap();
        assert!(c.is_empty());
        let c = lift_class(&ctx, &mult, &[Letter::new(0, 3), Letter::new(0, -3)]).unwrap();
        assert!(c.is_empty());
        // g⁵ is a relator outside [F, F]; its class is free, not in M(G).
        assert!(lift_class(&ctx, &mult, &[Letter::new(0, 5)]).is_err());
    }

    #[test]
    fn non_relator_is_rejected() {
        let p = pres(HEIS);
        let ctx = TailedContext::new(&p).unwrap();
        let mult = schur_multiplier_in(&ctx).unwrap();
        assert!(matches!(
            lift_class(&ctx, &mult, &[Letter::new(0, 1), Letter::new(1, 1), Letter::new(0, -1), Letter::new(1, -1)]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lifted_commutator_agrees_with_word_collection_modulo_relations() {
        let p = pres(HEIS);
        let ctx = TailedContext::new(&p).unwrap();
        let mult = schur_multiplier_in(&ctx).unwrap();
        let elems: Vec<_> = p.enumerate_elements(&Limits::default()).unwrap().collect();
        for u in &elems {
            for v in &elems {
                let direct = ctx.collect_letters(&commutator_word(u, v)).unwrap();
                let fast = ctx.lifted_commutator(u, v).unwrap();
                assert_eq!(direct.gen, fast.gen);
                let diff: Vec<i64> = direct.tail.iter().zip(&fast.tail).map(|(a, b)| a - b).collect();
                assert!(mult.coords.is_relation(&diff));
            }
        }
    }
}
