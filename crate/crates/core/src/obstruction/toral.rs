//! Toral classes and the Bogomolov multiplier.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multiplier::{schur_multiplier_in, MultiplierData, TailedContext};
use crate::pc::{Limits, PcPresentation};
use crate::zlinalg::{AbelianStructure, SpanTracker};

/// The subgroup `M₀(G) ≤ M(G)` spanned by commutators of commuting pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToralResult {
    pub multiplier_order: u64,
    pub toral_order: u64,
    pub toral_generated: bool,
    /// Classes that grew the span, in torsion coordinates of `M(G)`.
    pub toral_basis: Vec<Vec<i64>>,
    /// False when the sweep stopped early because the span was already `M(G)`.
    pub swept_exhaustively: bool,
}

/// Whether a sweep may stop once the span is everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    EarlyExit,
    Full,
}

pub fn toral_subgroup(p: &PcPresentation, limits: &Limits) -> Result<ToralResult> {
    let ctx = TailedContext::new(p)?;
    let mult = schur_multiplier_in(&ctx)?;
    toral_subgroup_in(&ctx, &mult, Sweep::EarlyExit, limits)
}

/// Sweeps pairs `u < v` (enumeration order) of non-identity commuting
/// elements with `v ∉ ⟨u⟩`; the class of `[ũ, ṽ]` is `τ(u,v) − τ(v,u)`.
pub fn toral_subgroup_in(
    ctx: &TailedContext,
    mult: &MultiplierData,
    sweep: Sweep,
    limits: &Limits,
) -> Result<ToralResult> {
    let p = ctx.base();
    let mut span = SpanTracker::new(&mult.m);
    let mut basis = Vec::new();
    let done = |span: &SpanTracker| sweep == Sweep::EarlyExit && span.is_everything();
    if done(&span) {
        return Ok(finish(mult, span, basis, false));
    }
    let order = limits.check_pairs(p)?;
    let elems: Vec<_> = p.enumerate_elements(limits)?.collect();
    let mut col = ctx.collector();
    let m = ctx.tail_count();
    let mut in_cyclic = vec![false; order];
    let (mut t_uv, mut t_vu) = (vec![0i64; m], vec![0i64; m]);
    for u in 1..order {
        let powers = cyclic_indices(p, &elems[u]);
        for &x in &powers {
            in_cyclic[x] = true;
        }
        for v in u + 1..order {
            if in_cyclic[v] {
                continue;
            }
            t_uv.fill(0);
            t_vu.fill(0);
            let uv = ctx.product_tail(&mut col, elems[u].exps(), &elems[v], &mut t_uv)?;
            let vu = ctx.product_tail(&mut col, elems[v].exps(), &elems[u], &mut t_vu)?;
            if uv != vu {
                continue;
            }
            for (a, b) in t_uv.iter_mut().zip(&t_vu) {
                *a -= b;
            }
            let class = mult.coords.torsion_coords(&t_uv);
            debug_assert!(mult.coords.free_coords(&t_uv).iter().all(num_traits::Zero::is_zero));
            if span.insert(&class)? {
                basis.push(class);
                if done(&span) {
                    return Ok(finish(mult, span, basis, false));
                }
            }
        }
        for &x in &powers {
            in_cyclic[x] = false;
        }
    }
    Ok(finish(mult, span, basis, true))
}

fn finish(mult: &MultiplierData, span: SpanTracker, basis: Vec<Vec<i64>>, exhaustive: bool) -> ToralResult {
    let multiplier_order = mult.order();
    let toral_order = span.order();
    ToralResult {
        multiplier_order,
        toral_order,
        toral_generated: toral_order == multiplier_order,
        toral_basis: basis,
        swept_exhaustively: exhaustive,
    }
}

/// Element indices of `⟨u⟩`.
fn cyclic_indices(p: &PcPresentation, u: &crate::pc::NormalWord) -> Vec<usize> {
    let mut out = vec![0];
    let mut x = u.clone();
    while !x.is_identity() {
        out.push(p.element_index(&x));
        x = p.multiply(&x, u);
    }
    out
}

/// `B₀(G) = M(G) / M₀(G)`, from a full sweep.
pub fn bogomolov(p: &PcPresentation, limits: &Limits) -> Result<AbelianStructure> {
    let ctx = TailedContext::new(p)?;
    let mult = schur_multiplier_in(&ctx)?;
    let toral = toral_subgroup_in(&ctx, &mult, Sweep::Full, limits)?;
    mult.m.quotient(&toral.toral_basis)
}
