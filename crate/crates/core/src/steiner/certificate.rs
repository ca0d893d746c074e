//! Two-sided bounds on `rank U`.
//!
//! Every row difference `W_T - W_T'` of the inclusion matrix annihilates the
//! characteristic vector of every system, so `rank U <= [n k] - rank D`. The
//! lower bound is the exact rank of the columns actually in hand.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::rat;
use crate::linalg::{is_zero, mat_mul, mod_inv, mul_mod, rank_exact, stack, ExactMatrix};
use crate::steiner::design::{cover_sets, sample_steiner, Design};
use crate::steiner::gram::{dimension_formula, gram_matrix, incidence_matrix};
use crate::steiner::params::ParamSet;

/// Limit on `[n t] * [n k]` for the dense inclusion matrix.
pub const INCLUSION_GUARD: usize = 1 << 20;

/// Rows are t-subspaces, columns k-subspaces, entry 1 on containment.
///
/// Works for `t = k` too (a [`ParamSet::new_allow_trivial`] set), where it is
/// the identity.
pub fn inclusion_matrix(params: &ParamSet) -> Result<ExactMatrix> {
    let rows = params.point_space();
    let cols = params.block_space();
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r.saturating_mul(c) <= INCLUSION_GUARD => (r, c),
        _ => return Err(Error::GuardExceeded(format!("{params}: inclusion matrix too large"))),
    };
    let mut w = ExactMatrix::zeros(rows, cols);
    for (x, ts) in cover_sets(params)?.iter().enumerate() {
        for &t in ts {
            w.set(t, x, rat(1));
        }
    }
    Ok(w)
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub blocks: usize,
    pub points: usize,
    pub rank_w: usize,
    /// Rank of the row differences `W_T - W_0`.
    pub rank_d: usize,
    /// The all-ones functional lies in the row space of `W` but not of `D`.
    pub ones_augmentation_ok: bool,
    /// `W chi_B` is all ones for every supplied design.
    pub designs_satisfy_w: bool,
    pub annihilates: bool,
    pub designs_used: usize,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub dimension: String,
    pub meets: bool,
}

/// Bounds on the dimension of the span of all systems, from `W` and the given designs.
pub fn rank_certificate(params: &ParamSet, designs: &[Design]) -> Result<RankCertificate> {
    let w = inclusion_matrix(params)?;
    let (points, blocks) = (w.rows(), w.cols());
    let d = ExactMatrix::from_fn(points.saturating_sub(1), blocks, |i, j| w.get(i + 1, j) - w.get(0, j));
    let rank_w = rank_exact(&w);
    let rank_d = rank_exact(&d);
    let ones = ExactMatrix::from_fn(1, blocks, |_, _| rat(1));
    let rank_aug = rank_exact(&stack(&d, &ones)?);
    let ones_augmentation_ok = rank_d + 1 == rank_w && rank_aug == rank_w;

    let u = incidence_matrix(params, designs)?;
    let wu = mat_mul(&w, &u)?;
    let designs_satisfy_w = wu.entries().iter().all(One::is_one);
    let annihilates = is_zero(&mat_mul(&d, &u)?);
    // rank U = rank UU^T over the rationals; the Gram matrix is smaller for wide U
    let lower_bound = if designs.len() > blocks { rank_exact(&gram_matrix(params, designs)?) } else { rank_exact(&u) };
    let upper_bound = blocks - rank_d;
    let dimension = dimension_formula(params);
    let meets = ones_augmentation_ok
        && designs_satisfy_w
        && annihilates
        && BigInt::from(lower_bound) == dimension
        && BigInt::from(upper_bound) == dimension;
    Ok(RankCertificate {
        blocks,
        points,
        rank_w,
        rank_d,
        ones_augmentation_ok,
        designs_satisfy_w,
        annihilates,
        designs_used: designs.len(),
        lower_bound,
        upper_bound,
        dimension: dimension.to_string(),
        meets,
    })
}

const P: u64 = 2_147_483_647;

/// Incremental row echelon form over `F_P` for 0/1 vectors.
struct ModPBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModPBasis {
    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, ones: &[usize], len: usize) -> bool {
        let mut v = vec![0u64; len];
        for &i in ones {
            v[i] = 1;
        }
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + P - mul_mod(f, *b, P)) % P;
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else { return false };
        let inv = mod_inv(v[pivot], P);
        for a in v.iter_mut() {
            *a = mul_mod(*a, inv, P);
        }
        self.rows.push((pivot, v));
        true
    }
}

#[derive(Clone, Debug)]
pub struct SaturationRun {
    /// Designs whose columns are independent, in discovery order.
    pub independent: Vec<Design>,
    pub sampled: usize,
    pub saturated: bool,
}

/// Samples systems in batches until `target` independent columns are found
/// (rank taken modulo a large prime, itself a lower bound on the rational
/// rank) or `max_batches` batches pass without progress.
pub fn saturate(params: &ParamSet, seed: u64, target: usize, batch: usize, max_batches: usize) -> Result<SaturationRun> {
    let len = params
        .block_space()
        .ok_or_else(|| Error::GuardExceeded(format!("{params}: [n k] does not fit in memory")))?;
    let mut basis = ModPBasis { rows: Vec::new() };
    let mut independent = Vec::new();
    let mut sampled = 0;
    let mut stale = 0;
    let mut round = 0u64;
    while independent.len() < target && stale < max_batches {
        let found = sample_steiner(params, seed.wrapping_add(round), batch)?;
        round += 1;
        sampled += found.designs.len();
        let before = independent.len();
        for d in found.designs {
            if basis.insert(d.blocks(), len) {
                independent.push(d);
                if independent.len() == target {
                    break;
                }
            }
        }
        stale = if independent.len() > before { 0 } else { stale + 1 };
    }
    let saturated = independent.len() >= target;
    Ok(SaturationRun { independent, sampled, saturated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::design::enumerate_steiner;

    #[test]
    fn inclusion_ranks() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let w = inclusion_matrix(&p).unwrap();
        assert_eq!((w.rows(), w.cols()), (15, 35));
        assert_eq!(rank_exact(&w), 15);
        let trivial = ParamSet::new_allow_trivial(2, 2, 4, 2).unwrap();
        let w = inclusion_matrix(&trivial).unwrap();
        assert_eq!(w, ExactMatrix::identity(35));
    }

    #[test]
    fn pg32_bounds() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let all = enumerate_steiner(&p).unwrap();
        let c = rank_certificate(&p, &all).unwrap();
        assert!(c.meets, "{c:?}");
        assert_eq!((c.lower_bound, c.upper_bound), (21, 21));
        let c = rank_certificate(&p, &all[..3]).unwrap();
        assert!(!c.meets);
        assert_eq!(c.lower_bound, 3);
        assert_eq!(c.upper_bound, 21);
    }

    #[test]
    fn pg32_saturation() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let run = saturate(&p, 3, 21, 8, 20).unwrap();
        assert!(run.saturated);
        assert_eq!(rank_certificate(&p, &run.independent).unwrap().lower_bound, 21);
    }
}
