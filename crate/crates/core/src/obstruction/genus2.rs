//! Classes of genus-2 surfaces: `[ũ,ṽ]·[w̃,x̃]` with `[u,v]·[w,x] = 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::multiplier::{schur_multiplier_in, MultiplierData, TailedContext};
use crate::pc::{GroupTable, Limits, PcPresentation};
use crate::zlinalg::SpanTracker;

/// Random quadruples tried before the exhaustive sweep.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Genus2Strategy {
    RandomizedThenExhaustive,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus2Result {
    pub genus2_order: u64,
    pub genus2_generated: bool,
    pub swept_exhaustively: bool,
}

pub fn genus2_subgroup(
    p: &PcPresentation,
    strategy: Genus2Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<Genus2Result> {
    let ctx = TailedContext::new(p)?;
    let mult = schur_multiplier_in(&ctx)?;
    genus2_subgroup_in(&ctx, &mult, strategy, seed, limits)
}

/// Writing `c(u,v)` for the class of `[ũ,ṽ]` and `g = [u,v]`, a quadruple
/// contributes `c(u,v) + c(w,x) + τ(g, g⁻¹)`. Over a fiber pair
/// `A_g × A_{g⁻¹}` these sums span the same subgroup as
/// `a₀ + b₀ + τ(g,g⁻¹)` together with all differences `a − a₀` and `b − b₀`,
/// so the exhaustive sweep touches each ordered pair once.
pub fn genus2_subgroup_in(
    ctx: &TailedContext,
    mult: &MultiplierData,
    strategy: Genus2Strategy,
    seed: u64,
    limits: &Limits,
) -> Result<Genus2Result> {
    let mut span = SpanTracker::new(&mult.m);
    let result = |span: &SpanTracker, exhaustive| Genus2Result {
        genus2_order: span.order(),
        genus2_generated: span.is_everything(),
        swept_exhaustively: exhaustive,
    };
    if span.is_everything() {
        return Ok(result(&span, false));
    }
    let p = ctx.base();
    let table = GroupTable::build(p, limits)?;
    let order = table.order();
    let elems: Vec<_> = p.enumerate_elements(limits)?.collect();
    let mut col = ctx.collector();
    let m = ctx.tail_count();

    if strategy == Genus2Strategy::RandomizedThenExhaustive {
        let mut fibers: Vec<Vec<(u32, u32)>> = vec![Vec::new(); order];
        for u in 0..order {
            for v in 0..order {
                fibers[table.commutator(u, v)].push((u as u32, v as u32));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tail = vec![0i64; m];
        for _ in 0..DEFAULT_SAMPLES {
            let (u, v) = (rng.gen_range(0..order), rng.gen_range(0..order));
            let g = table.commutator(u, v);
            let fiber = &fibers[table.inv(g)];
            let (w, x) = fiber[rng.gen_range(0..fiber.len())];
            let a = ctx.lifted_commutator_with(&mut col, &elems[u], &elems[v])?;
            let b = ctx.lifted_commutator_with(&mut col, &elems[w as usize], &elems[x as usize])?;
            tail.fill(0);
            ctx.product_tail(&mut col, a.gen.exps(), &b.gen, &mut tail)?;
            for ((t, x), y) in tail.iter_mut().zip(&a.tail).zip(&b.tail) {
                *t += x + y;
            }
            span.insert(&mult.coords.torsion_coords(&tail))?;
            if span.is_everything() {
                return Ok(result(&span, false));
            }
        }
    }

    // φ(τ(a,b)) for every ordered pair.
    let k = mult.m.torsion.len();
    let moduli: Vec<i64> = mult.m.torsion.iter().map(|&d| d as i64).collect();
    let mut phi = vec![0i64; order * order * k];
    let mut tail = vec![0i64; m];
    for a in 0..order {
        for b in 0..order {
            tail.fill(0);
            ctx.product_tail(&mut col, elems[a].exps(), &elems[b], &mut tail)?;
            let c = mult.coords.torsion_coords(&tail);
            phi[(a * order + b) * k..][..k].copy_from_slice(&c);
        }
    }
    let phi_at = |a: usize, b: usize| &phi[(a * order + b) * k..][..k];

    let mut first: Vec<Option<Vec<i64>>> = vec![None; order];
    let mut class = vec![0i64; k];
    for u in 0..order {
        for v in 0..order {
            let g = table.commutator(u, v);
            let vu = table.mul(v, u);
            for (i, c) in class.iter_mut().enumerate() {
                *c = (phi_at(u, v)[i] - phi_at(v, u)[i] - phi_at(vu, g)[i]).rem_euclid(moduli[i]);
            }
            match &first[g] {
                None => first[g] = Some(class.clone()),
                Some(a0) => {
                    let diff: Vec<i64> = class.iter().zip(a0).map(|(a, b)| a - b).collect();
                    span.insert(&diff)?;
                    if span.is_everything() {
                        return Ok(result(&span, false));
                    }
                }
            }
        }
    }
    for g in 0..order {
        let (Some(a0), Some(b0)) = (&first[g], &first[table.inv(g)]) else {
            continue;
        };
        let t = phi_at(g, table.inv(g));
        let sum: Vec<i64> = (0..k).map(|i| a0[i] + b0[i] + t[i]).collect();
        span.insert(&sum)?;
    }
    Ok(result(&span, true))
}
