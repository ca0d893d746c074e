use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfspaces::{Elem, GrassmannIndexer, Subspace, SubspaceIter};
use crate::steiner::exact_cover::{ExactCover, SearchOutcome};
use crate::steiner::params::ParamSet;

/// Cap on the number of t-subspaces tracked by [`verify_design`].
pub const COVERAGE_GUARD: usize = 1 << 27;
/// Enumeration limits: `[n t]` and `[n k]`.
pub const ENUM_POINT_GUARD: usize = 200;
pub const ENUM_BLOCK_GUARD: usize = 2000;
/// Enumeration stops with an error past this many solutions.
pub const MAX_SOLUTIONS: usize = 1_000_000;
/// Search nodes per randomized descent in [`sample_steiner`].
pub const SAMPLE_NODE_BUDGET: u64 = 200_000;

/// A block set, as sorted canonical indices into `Gr_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    params: Arc<ParamSet>,
    blocks: Vec<usize>,
}

impl Design {
    pub fn new(params: Arc<ParamSet>, mut blocks: Vec<usize>) -> Self {
        blocks.sort_unstable();
        Design { params, blocks }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn shared_params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, block: usize) -> bool {
        self.blocks.binary_search(&block).is_ok()
    }

    /// The block subspaces, decoded from their indices.
    pub fn subspaces(&self) -> Result<Vec<Subspace>> {
        let idx = GrassmannIndexer::new(self.params.field(), self.params.n(), self.params.k())?;
        self.blocks.iter().map(|&b| idx.subspace_at(b)).collect()
    }
}

/// A t-subspace whose coverage is wrong.
#[derive(Clone, Debug)]
pub struct CoverageWitness {
    pub subspace: Subspace,
    pub index: usize,
    pub coverage: u64,
}

#[derive(Clone, Debug)]
pub struct DesignVerdict {
    pub valid: bool,
    pub block_count: usize,
    pub witness: Option<CoverageWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub index: usize,
    pub coverage: u64,
    pub basis: Vec<Vec<Elem>>,
}

impl From<&CoverageWitness> for WitnessReport {
    fn from(w: &CoverageWitness) -> Self {
        WitnessReport { index: w.index, coverage: w.coverage, basis: w.subspace.basis_rows().map(<[Elem]>::to_vec).collect() }
    }
}

fn check_block(params: &ParamSet, b: &Subspace) -> Result<()> {
    if b.q() as u64 != params.q() || b.ambient_n() != params.n() || b.dim() != params.k() {
        return Err(Error::MalformedBlock(format!(
            "block is a {}-subspace of F_{}^{}, expected a {}-subspace of F_{}^{}",
            b.dim(),
            b.q(),
            b.ambient_n(),
            params.k(),
            params.q(),
            params.n()
        )));
    }
    Ok(())
}

/// Checks that every t-subspace lies in exactly `lambda` of the blocks.
///
/// Repeated blocks count with multiplicity. On failure the witness is the
/// t-subspace of lowest canonical index with the wrong coverage.
pub fn verify_design(blocks: &[Subspace], params: &ParamSet, lambda: u64) -> Result<DesignVerdict> {
    for b in blocks {
        check_block(params, b)?;
    }
    let (t, k, n) = (params.t(), params.k(), params.n());
    let field = params.field();
    let points = params
        .point_space()
        .filter(|&p| p <= COVERAGE_GUARD)
        .ok_or_else(|| Error::GuardExceeded(format!("[{n} {t}]_{} exceeds the coverage guard", params.q())))?;
    let indexer = GrassmannIndexer::new(field, n, t)?;
    let coords: Vec<Subspace> = SubspaceIter::new(field, k, t).collect();
    let mut coverage = vec![0u32; points];
    for b in blocks {
        for c in &coords {
            let sub = b.image(field, c.basis(), t)?;
            let i = indexer.index_of(&sub)?;
            coverage[i] = coverage[i].saturating_add(1);
        }
    }
    let witness = match coverage.iter().position(|&c| c as u64 != lambda) {
        Some(index) => {
            Some(CoverageWitness { subspace: indexer.subspace_at(index)?, index, coverage: coverage[index] as u64 })
        }
        None => None,
    };
    Ok(DesignVerdict { valid: witness.is_none(), block_count: blocks.len(), witness })
}

/// Verifies a [`Design`] against its own parameters with `lambda = 1`.
pub fn verify(design: &Design) -> Result<DesignVerdict> {
    verify_design(&design.subspaces()?, design.params(), 1)
}

/// For each k-subspace in canonical order, the sorted indices of its t-subspaces.
pub fn cover_sets(params: &ParamSet) -> Result<Vec<Vec<usize>>> {
    let (t, k, n) = (params.t(), params.k(), params.n());
    let field = params.field();
    let indexer = GrassmannIndexer::new(field, n, t)?;
    let coords: Vec<Subspace> = SubspaceIter::new(field, k, t).collect();
    SubspaceIter::new(field, n, k)
        .map(|x| {
            let mut cols = coords
                .iter()
                .map(|c| indexer.index_of(&x.image(field, c.basis(), t)?))
                .collect::<Result<Vec<_>>>()?;
            cols.sort_unstable();
            Ok(cols)
        })
        .collect()
}

fn guard_sizes(params: &ParamSet, max_points: usize, max_blocks: usize) -> Result<(usize, usize)> {
    let points = params.point_space().filter(|&p| p <= max_points);
    let blocks = params.block_space().filter(|&b| b <= max_blocks);
    match (points, blocks) {
        (Some(p), Some(b)) => Ok((p, b)),
        _ => Err(Error::GuardExceeded(format!(
            "{params}: enumeration needs [n t] <= {max_points} and [n k] <= {max_blocks}"
        ))),
    }
}

/// All labeled Steiner systems with these parameters, sorted
/// lexicographically by their block index sequences.
pub fn enumerate_steiner(params: &ParamSet) -> Result<Vec<Design>> {
    let (points, _) = guard_sizes(params, ENUM_POINT_GUARD, ENUM_BLOCK_GUARD)?;
    if !params.is_admissible(1) {
        return Ok(Vec::new());
    }
    let sets = cover_sets(params)?;
    let mut dlx = ExactCover::new(points);
    for (i, cols) in sets.iter().enumerate() {
        dlx.add_row(i, cols);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    dlx.search(None, |sol| {
        if found.len() >= MAX_SOLUTIONS {
            overflow = true;
            return false;
        }
        let mut s = sol.to_vec();
        s.sort_unstable();
        found.push(s);
        true
    });
    if overflow {
        return Err(Error::GuardExceeded(format!("{params} has more than {MAX_SOLUTIONS} systems")));
    }
    found.sort_unstable();
    let shared = Arc::new(params.clone());
    Ok(found.into_iter().map(|b| Design::new(Arc::clone(&shared), b)).collect())
}

#[derive(Clone, Debug)]
pub struct SampleResult {
    pub designs: Vec<Design>,
    pub attempts: usize,
    /// Fewer than the requested count were found within the budget.
    pub partial: bool,
}

/// Up to `count` distinct designs from seeded randomized exact-cover descents.
///
/// Each attempt shuffles the candidate blocks and keeps the first cover found
/// within [`SAMPLE_NODE_BUDGET`] nodes. Output is in discovery order.
pub fn sample_steiner(params: &ParamSet, seed: u64, count: usize) -> Result<SampleResult> {
    if count == 0 {
        return Ok(SampleResult { designs: Vec::new(), attempts: 0, partial: false });
    }
    if !params.is_admissible(1) {
        return Err(Error::InvalidParams(format!("{params} is inadmissible")));
    }
    let (points, _) = guard_sizes(params, 1 << 16, 1 << 16)?;
    let sets = cover_sets(params)?;
    let shared = Arc::new(params.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut designs = Vec::new();
    let max_attempts = 20 + 4 * count;
    let mut order: Vec<usize> = (0..sets.len()).collect();
    let mut attempts = 0;
    while designs.len() < count && attempts < max_attempts {
        attempts += 1;
        order.shuffle(&mut rng);
        let mut dlx = ExactCover::new(points);
        for &i in &order {
            dlx.add_row(i, &sets[i]);
        }
        let mut first = None;
        let outcome = dlx.search(Some(SAMPLE_NODE_BUDGET), |sol| {
            first = Some(sol.to_vec());
            false
        });
        if outcome == SearchOutcome::Complete {
            // the search space holds no cover at all
            break;
        }
        if let Some(blocks) = first {
            let d = Design::new(Arc::clone(&shared), blocks);
            if seen.insert(d.blocks.clone()) {
                designs.push(d);
            }
        }
    }
    let partial = designs.len() < count;
    Ok(SampleResult { designs, attempts, partial })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfspaces::enumerate_subspaces;

    #[test]
    fn pg32_spreads() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let all = enumerate_steiner(&p).unwrap();
        assert_eq!(all.len(), 56);
        assert!(all.windows(2).all(|w| w[0].blocks < w[1].blocks));
        for d in &all {
            assert_eq!(d.len(), 5);
            assert!(verify(d).unwrap().valid);
        }
        assert_eq!(enumerate_steiner(&p).unwrap(), all);
    }

    #[test]
    fn inadmissible_is_empty() {
        let p = ParamSet::new(1, 2, 5, 2).unwrap();
        assert!(enumerate_steiner(&p).unwrap().is_empty());
    }

    #[test]
    fn trivial_design_and_failure_witness() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let all_lines = enumerate_subspaces(4, 2, p.field());
        assert!(verify_design(&all_lines, &p, 7).unwrap().valid);

        let spread = enumerate_steiner(&p).unwrap().remove(0);
        let mut blocks = spread.subspaces().unwrap();
        let replacement = all_lines.iter().find(|l| !blocks.contains(l)).unwrap().clone();
        blocks[0] = replacement;
        let v = verify_design(&blocks, &p, 1).unwrap();
        assert!(!v.valid);
        let w = v.witness.unwrap();
        assert_ne!(w.coverage, 1);
        assert_eq!(w.subspace.dim(), 1);
    }

    #[test]
    fn wrong_dimension_is_malformed() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let planes = enumerate_subspaces(4, 3, p.field());
        assert!(matches!(verify_design(&planes, &p, 1), Err(Error::MalformedBlock(_))));
    }

    #[test]
    fn sampling_is_seeded_and_valid() {
        let p = ParamSet::new(1, 2, 4, 2).unwrap();
        let a = sample_steiner(&p, 1, 5).unwrap();
        assert_eq!(a.designs.len(), 5);
        assert!(!a.partial);
        for d in &a.designs {
            assert!(verify(d).unwrap().valid);
        }
        let b = sample_steiner(&p, 1, 5).unwrap();
        assert_eq!(a.designs, b.designs);
        assert!(sample_steiner(&p, 1, 0).unwrap().designs.is_empty());
    }
}
