//! Incremental subgroup spans inside a finite abelian group.

use num_integer::Integer;

use super::abelian::AbelianStructure;
use crate::error::{Error, Result};

/// The subgroup generated so far inside `ℤ/d₁ ⊕ … ⊕ ℤ/d_k`, kept as a
/// Hermite basis (upper triangular, positive pivots) of its preimage
/// lattice in `ℤ^k`, which contains every `dᵢ·eᵢ`.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    moduli: Vec<u64>,
    basis: Vec<Vec<i128>>,
}

impl SpanTracker {
    pub fn new(ambient: &AbelianStructure) -> Self {
        let k = ambient.torsion.len();
        let basis = (0..k)
            .map(|i| {
                let mut row = vec![0i128; k];
                row[i] = ambient.torsion[i] as i128;
                row
            })
            .collect();
        SpanTracker {
            moduli: ambient.torsion.clone(),
            basis,
        }
    }

    pub fn ambient_order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Order of the spanned subgroup.
    pub fn order(&self) -> u64 {
        let index: u64 = self.basis.iter().enumerate().map(|(i, r)| r[i] as u64).product();
        self.ambient_order() / index
    }

    pub fn is_everything(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, r)| r[i] == 1)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for i in 0..w.len() {
            let p = self.basis[i][i];
            let q = w[i].div_euclid(p);
            if w[i] - q * p != 0 {
                return false;
            }
            if q != 0 {
                for (x, b) in w.iter_mut().zip(&self.basis[i]).skip(i) {
                    *x -= q * b;
                }
            }
        }
        true
    }

    /// Adds a generator; returns whether the span grew.
    pub fn insert(&mut self, v: &[i64]) -> Result<bool> {
        let k = self.moduli.len();
        if v.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: v.len() });
        }
        if self.contains(v) {
            return Ok(false);
        }
        let mut w: Vec<i128> = v
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &d)| (x as i128).rem_euclid(d as i128))
            .collect();
        for i in 0..k {
            if w[i] == 0 {
                continue;
            }
            let a = self.basis[i][i];
            let b = w[i];
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ra, rb) = (a / g, b / g);
            let row = &self.basis[i];
            let new_row: Vec<i128> = (0..k).map(|j| x * row[j] + y * w[j]).collect();
            let rest: Vec<i128> = (0..k).map(|j| ra * w[j] - rb * row[j]).collect();
            self.basis[i] = new_row;
            w = rest;
            debug_assert_eq!(w[i], 0);
        }
        self.reduce();
        Ok(true)
    }

    /// Keeps entries above each pivot in `[0, pivot)`.
    fn reduce(&mut self) {
        let k = self.moduli.len();
        for i in (0..k).rev() {
            if self.basis[i][i] < 0 {
                for x in &mut self.basis[i] {
                    *x = -*x;
                }
            }
        }
        for j in 0..k {
            let p = self.basis[j][j];
            for i in 0..j {
                let q = self.basis[i][j].div_euclid(p);
                if q != 0 {
                    let pivot_row = self.basis[j].clone();
                    for (x, b) in self.basis[i].iter_mut().zip(pivot_row) {
                        *x -= q * b;
                    }
                }
            }
        }
    }
}
