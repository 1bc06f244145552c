//! `H₂(G; ℤ)` from the normalized bar resolution.
//!
//! Chains are tuples of non-identity elements; with trivial coefficients
//!
//! ```text
//! ∂₂[a|b]   = [b] − [ab] + [a]
//! ∂₃[a|b|c] = [b|c] − [ab|c] + [a|bc] − [a|b]
//! ```
//!
//! and any tuple containing the identity is zero. Since `C₂ / ker ∂₂` is free,
//! `torsion(H₂) = torsion(C₂ / im ∂₃)`; the free rank is
//! `dim C₂ − rank ∂₃ − rank ∂₂`.
//!
//! `im ∂₃` is huge but very sparse, so unit pivots are eliminated first and
//! only the small remainder goes through a dense Smith normal form.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::pc::{GroupTable, Limits, PcPresentation};
use crate::zlinalg::{elementary_divisors, AbelianStructure, IntMatrix};

/// Largest group order the oracle accepts.
pub const ORACLE_MAX_ORDER: u64 = 32;

type SparseRow = Vec<(u32, i64)>;

/// Second integral homology of `G`, computed without any pc machinery
/// beyond the multiplication table.
pub fn h2_bar_oracle(p: &PcPresentation) -> Result<AbelianStructure> {
    let order = p.checked_order().unwrap_or(u128::MAX);
    if order > ORACLE_MAX_ORDER as u128 {
        return Err(Error::guard("bar-resolution oracle group order", order, ORACLE_MAX_ORDER as u128));
    }
    let table = GroupTable::build(p, &Limits::default())?;
    let g = table.order();
    if g == 1 {
        return Ok(AbelianStructure::trivial());
    }
    let k = g - 1;
    // Non-identity element e ↦ chain index e − 1; identity is element 0.
    let pair = |a: usize, b: usize| -> Option<u32> {
        (a != 0 && b != 0).then(|| ((a - 1) * k + (b - 1)) as u32)
    };

    let mut rows: Vec<SparseRow> = Vec::with_capacity(k * k * k);
    for a in 1..g {
        for b in 1..g {
            let ab = table.mul(a, b);
            for c in 1..g {
                let bc = table.mul(b, c);
                let terms = [
                    (pair(b, c), 1),
                    (pair(ab, c), -1),
                    (pair(a, bc), 1),
                    (pair(a, b), -1),
                ];
                let row = normalize(terms.iter().filter_map(|&(i, s)| i.map(|i| (i, s))));
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let coker = sparse_cokernel(k * k, rows)?;

    let mut d2 = IntMatrix::zeros(0, k);
    for a in 1..g {
        for b in 1..g {
            let mut row = vec![BigInt::from(0); k];
            row[b - 1] += 1;
            let ab = table.mul(a, b);
            if ab != 0 {
                row[ab - 1] -= 1;
            }
            row[a - 1] += 1;
            d2.push_row(row);
        }
    }
    let rank_d2 = elementary_divisors(&d2).len();
    let free_rank = coker
        .free_rank
        .checked_sub(rank_d2)
        .expect("im ∂₂ has rank at most the free rank of C₂ / im ∂₃");
    Ok(AbelianStructure {
        torsion: coker.torsion,
        free_rank,
    })
}

/// Sorts by column, merges duplicates and drops zeros.
fn normalize(terms: impl Iterator<Item = (u32, i64)>) -> SparseRow {
    let mut v: SparseRow = terms.collect();
    v.sort_unstable_by_key(|t| t.0);
    let mut out: SparseRow = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += x,
            _ => out.push((c, x)),
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `dst − q·src` for sorted sparse rows.
fn axpy(dst: &SparseRow, q: i64, src: &SparseRow) -> Result<SparseRow> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i]);
            i += 1;
        } else if take_src {
            let x = src[j].1.checked_mul(-q).ok_or(Error::Overflow("bar elimination"))?;
            out.push((src[j].0, x));
            j += 1;
        } else {
            let x = src[j]
                .1
                .checked_mul(q)
                .and_then(|y| dst[i].1.checked_sub(y))
                .ok_or(Error::Overflow("bar elimination"))?;
            if x != 0 {
                out.push((dst[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Moves row `r` in the column index from the support of `old` to that of `new`.
fn update_support(col_rows: &mut [BTreeSet<usize>], r: usize, old: &SparseRow, new: &SparseRow) {
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < new.len() {
        if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
            col_rows[old[i].0 as usize].remove(&r);
            i += 1;
        } else if i == old.len() || new[j].0 < old[i].0 {
            col_rows[new[j].0 as usize].insert(r);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// Structure of `ℤ^cols / ⟨rows⟩` for sparse integer rows.
fn sparse_cokernel(cols: usize, mut rows: Vec<SparseRow>) -> Result<AbelianStructure> {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].insert(r);
        }
    }
    let mut alive: BTreeSet<usize> = (0..rows.len()).collect();
    let mut eliminated = 0usize;

    // Passes over the rows, shortest first; each row with a unit entry
    // becomes the pivot for its sparsest unit column.
    loop {
        let mut order: Vec<usize> = alive.iter().copied().collect();
        order.sort_by_key(|&r| rows[r].len());
        let before = eliminated;
        for pr in order {
            let pick = rows[pr]
                .iter()
                .filter(|t| t.1.abs() == 1)
                .min_by_key(|t| col_rows[t.0 as usize].len())
                .copied();
            let Some((pc, unit)) = pick else { continue };
            let pc = pc as usize;
            let pivot = std::mem::take(&mut rows[pr]);
            alive.remove(&pr);
            for &(c, _) in &pivot {
                col_rows[c as usize].remove(&pr);
            }
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for r in targets {
                let x = rows[r].iter().find(|t| t.0 as usize == pc).unwrap().1;
                let new = axpy(&rows[r], x * unit, &pivot)?;
                update_support(&mut col_rows, r, &rows[r], &new);
                if new.is_empty() {
                    alive.remove(&r);
                }
                rows[r] = new;
            }
            debug_assert!(col_rows[pc].is_empty());
            eliminated += 1;
        }
        if eliminated == before {
            break;
        }
    }

    let live: Vec<usize> = (0..cols).filter(|&c| !col_rows[c].is_empty()).collect();
    let untouched = cols - eliminated - live.len();
    let pos: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut seen: HashSet<SparseRow> = HashSet::new();
    let mut dense = IntMatrix::zeros(0, live.len());
    for &r in &alive {
        let mut row = rows[r].clone();
        if row[0].1 < 0 {
            for t in &mut row {
                t.1 = -t.1;
            }
        }
        if !seen.insert(row.clone()) {
            continue;
        }
        let mut d = vec![BigInt::from(0); live.len()];
        for (c, x) in row {
            d[pos[&(c as usize)]] = BigInt::from(x);
        }
        dense.push_row(d);
    }
    let divisors = elementary_divisors(&dense);
    let torsion = divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().ok_or(Error::Overflow("invariant factor")))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianStructure {
        torsion,
        free_rank: untouched + live.len() - divisors.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::parse_pc_presentation;
    use crate::zlinalg::abelian_structure;

    fn h2(text: &str) -> AbelianStructure {
        h2_bar_oracle(&parse_pc_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn small_groups() {
        assert!(h2("gens 0\norders\n").is_trivial());
        assert!(h2("gens 1\norders 5\n").is_trivial());
        assert_eq!(h2("gens 2\norders 2 2\n"), AbelianStructure::finite(vec![2]));
        assert!(h2("gens 3\norders 2 2 2\npow 1 = g3\npow 2 = g3\nconj 2 1 = g2*g3\n").is_trivial());
        assert_eq!(
            h2("gens 3\norders 3 3 3\nconj 2 1 = g2*g3\n"),
            AbelianStructure::finite(vec![3, 3])
        );
        assert_eq!(h2("gens 3\norders 2 2 2\n"), AbelianStructure::finite(vec![2, 2, 2]));
    }

    #[test]
    fn guard() {
        let p = parse_pc_presentation("gens 6\norders 2 2 2 2 2 2\n").unwrap();
        assert!(matches!(h2_bar_oracle(&p), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn sparse_cokernel_matches_dense() {
        let rows: Vec<Vec<i64>> = vec![
            vec![1, 2, 0, 0],
            vec![0, 2, 4, 0],
            vec![0, 0, 6, 0],
            vec![3, 0, 0, 0],
        ];
        let sparse = rows
            .iter()
            .map(|r| normalize(r.iter().enumerate().map(|(c, &x)| (c as u32, x))))
            .collect();
        let got = sparse_cokernel(4, sparse).unwrap();
        assert_eq!(got, abelian_structure(&IntMatrix::from_rows(4, rows.iter())).unwrap());
    }
}
