//! Finitely generated abelian groups by invariant factors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::elementary_divisors;
use crate::error::{Error, Result};

/// `ℤ/d₁ ⊕ … ⊕ ℤ/d_k ⊕ ℤ^free_rank` with `d₁ | … | d_k`, every `dᵢ ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianStructure {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn finite(torsion: Vec<u64>) -> Self {
        AbelianStructure { torsion, free_rank: 0 }
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Only the torsion subgroup.
    pub fn torsion_part(&self) -> Self {
        Self::finite(self.torsion.clone())
    }

    /// The invariant factors as relation rows `diag(d)`.
    pub(crate) fn relation_matrix(&self) -> IntMatrix {
        let k = self.torsion.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &d) in self.torsion.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    fn require_finite(&self) -> Result<()> {
        if self.free_rank != 0 {
            return Err(Error::Precondition("ambient group must be finite".into()));
        }
        Ok(())
    }

    fn stacked(&self, gens: &[Vec<i64>]) -> Result<IntMatrix> {
        self.require_finite()?;
        let k = self.torsion.len();
        if let Some(g) = gens.iter().find(|g| g.len() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: g.len(),
            });
        }
        Ok(self
            .relation_matrix()
            .stack(&IntMatrix::from_rows(k, gens.iter())))
    }

    /// Order of the subgroup generated by `gens` (torsion coordinates).
    pub fn subgroup_order(&self, gens: &[Vec<i64>]) -> Result<u64> {
        let q = abelian_structure(&self.stacked(gens)?)?;
        Ok(self.torsion_order() / q.torsion_order())
    }

    /// `self / ⟨gens⟩`.
    pub fn quotient(&self, gens: &[Vec<i64>]) -> Result<AbelianStructure> {
        abelian_structure(&self.stacked(gens)?)
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))?;
        if self.free_rank > 0 {
            write!(f, "+Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}

/// Structure of `ℤ^cols / rowspace(relations)`.
pub fn abelian_structure(relations: &IntMatrix) -> Result<AbelianStructure> {
    let d = elementary_divisors(relations);
    let free_rank = relations.cols() - d.len();
    let torsion = d
        .iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().ok_or(Error::Overflow("invariant factor")))
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianStructure { torsion, free_rank })
}

/// Order of `⟨gens⟩` inside the finite group `ambient`.
pub fn subgroup_order_in_torsion(ambient: &AbelianStructure, gens: &[Vec<i64>]) -> Result<u64> {
    ambient.subgroup_order(gens)
}

/// Invariant factors of `ambient / ⟨gens⟩`.
pub fn quotient_structure(ambient: &AbelianStructure, gens: &[Vec<i64>]) -> Result<AbelianStructure> {
    ambient.quotient(gens)
}
