//! The incidence matrix `U` of a family of designs, its Gram matrix `UU^T`
//! and the closed forms that describe it.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{
    choose2, gauss_binom, q_int, q_pow, rat, serialize_fraction, serialize_fractions, sign, ExactRational,
};
use crate::gfspaces::{Elem, Subspace};
use crate::grassmann::{eigenspace_multiplicity, eisfeld_eigenvalue, SchemeInstance};
use crate::linalg::{rank_exact, ExactMatrix};
use crate::steiner::design::Design;
use crate::steiner::params::ParamSet;

fn check_family(params: &ParamSet, designs: &[Design]) -> Result<usize> {
    if let Some(d) = designs.iter().find(|d| d.params() != params) {
        return Err(Error::InvalidParams(format!("design for {} mixed into a family for {params}", d.params())));
    }
    params
        .block_space()
        .ok_or_else(|| Error::GuardExceeded(format!("{params}: [n k] does not fit in memory")))
}

/// 0/1 matrix with rows indexed by k-subspaces and one column per design.
pub fn incidence_matrix(params: &ParamSet, designs: &[Design]) -> Result<ExactMatrix> {
    let rows = check_family(params, designs)?;
    let mut u = ExactMatrix::zeros(rows, designs.len());
    for (j, d) in designs.iter().enumerate() {
        for &b in d.blocks() {
            u.set(b, j, ExactRational::one());
        }
    }
    Ok(u)
}

/// `UU^T` as integers: entry `(x, y)` counts the designs holding both blocks.
pub fn gram_counts(params: &ParamSet, designs: &[Design]) -> Result<Vec<u64>> {
    let size = check_family(params, designs)?;
    let mut g = vec![0u64; size * size];
    for d in designs {
        for &x in d.blocks() {
            for &y in d.blocks() {
                g[x * size + y] += 1;
            }
        }
    }
    Ok(g)
}

pub fn gram_matrix(params: &ParamSet, designs: &[Design]) -> Result<ExactMatrix> {
    let size = check_family(params, designs)?;
    let g = gram_counts(params, designs)?;
    Ok(ExactMatrix::from_fn(size, size, |x, y| rat(g[x * size + y] as i64)))
}

/// `N [n t] / ([n k][k t])`: how many of `N` systems contain a given block.
pub fn kappa_formula(n_designs: u64, params: &ParamSet) -> ExactRational {
    let (t, k, n, q) = (params.t() as i64, params.k() as i64, params.n() as i64, params.q());
    rat(n_designs as i64) * gauss_binom(n, t, q) / (gauss_binom(n, k, q) * gauss_binom(k, t, q))
}

/// In one system, the number of blocks `Y != X` with `X ∩ Y` equal to a
/// fixed `i`-subspace of the block `X`.
pub fn intersect_count(params: &ParamSet, i: usize) -> ExactRational {
    let (t, k, n, q) = (params.t() as i64, params.k() as i64, params.n() as i64, params.q());
    let i = i as i64;
    let inner: ExactRational = (i..=t)
        .map(|j| {
            rat(sign(j - i))
                * gauss_binom(k - i, j - i, q)
                * gauss_binom(n - j, k - j, q)
                * q_pow(q, choose2(j - i))
        })
        .sum();
    inner / gauss_binom(n - t, k - t, q)
        + rat(sign(t + 1 - i)) * gauss_binom(k - i - 1, t - i, q) * q_pow(q, choose2(t + 1 - i))
}

/// How many of `N` systems contain two fixed blocks meeting in dimension `i`.
/// Zero for `i >= t`.
pub fn kappa_i_formula(n_designs: u64, i: usize, params: &ParamSet) -> ExactRational {
    if i >= params.t() {
        return ExactRational::zero();
    }
    let (t, k, n, q) = (params.t() as i64, params.k() as i64, params.n() as i64, params.q());
    let ii = i as i64;
    let den = gauss_binom(n - t, k - t, q) * gauss_binom(n - k, k - ii, q) * q_pow(q, (k - ii) * (k - ii));
    rat(n_designs as i64) / den * intersect_count(params, i)
}

/// Closed-form eigenvalue `mu_r` of `UU^T` on the `r`-th eigenspace of the scheme.
pub fn mu_eigenvalue(params: &ParamSet, r: usize, kappa: &ExactRational) -> Result<ExactRational> {
    if r > params.k() {
        return Err(Error::IndexOutOfRange { index: r, max: params.k() });
    }
    let (t, k, n, q) = (params.t() as i64, params.k() as i64, params.n() as i64, params.q());
    let one = ExactRational::one();
    if r == 0 {
        let sum: ExactRational =
            (0..t).map(|i| q_pow(q, n - i) * gauss_binom(n, i, q) / gauss_binom(k - 1, i, q)).sum();
        return Ok(kappa * (one - q_int(k - n, q) / q_int(k, q) * sum));
    }
    let r = r as i64;
    let sum: ExactRational = (0..t)
        .map(|i| rat(sign(i)) * q_pow(q, choose2(i)) * gauss_binom(k - i - 1, r - i - 1, q) * gauss_binom(n - r, i, q))
        .sum();
    let factor = rat(sign(r)) * q_pow(q, choose2(r) - k * r + k) / gauss_binom(n - k - 1, r - 1, q);
    Ok(kappa * (one + factor * sum))
}

/// `mu_r` assembled from the Gram decomposition,
/// `kappa + sum_i kappa_i nu_r^{(k-i)}`, with both coefficients at `N = 1`.
pub fn mu_via_scheme(params: &ParamSet, r: usize) -> ExactRational {
    let (k, n, q) = (params.k() as i64, params.n() as i64, params.q());
    let mut acc = kappa_formula(1, params);
    for i in 0..=params.t() {
        let c = kappa_i_formula(1, i, params);
        if !c.is_zero() {
            acc += c * eisfeld_eigenvalue(n, k, q, k - i as i64, r as i64);
        }
    }
    acc
}

/// `[n k] - [n t] + 1`.
pub fn dimension_formula(params: &ParamSet) -> BigInt {
    let (t, k, n, q) = (params.t() as i64, params.k() as i64, params.n() as i64, params.q());
    (gauss_binom(n, k, q) - gauss_binom(n, t, q) + rat(1)).to_integer()
}

/// `kappa` and `kappa_i` for a family of `N` systems; `kappa_i` is indexed
/// by the intersection dimension `0..=t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramCoefficients {
    pub n_designs: u64,
    #[serde(serialize_with = "serialize_fraction")]
    pub kappa: ExactRational,
    #[serde(serialize_with = "serialize_fractions")]
    pub kappa_i: Vec<ExactRational>,
}

impl GramCoefficients {
    pub fn closed_form(n_designs: u64, params: &ParamSet) -> Self {
        GramCoefficients {
            n_designs,
            kappa: kappa_formula(n_designs, params),
            kappa_i: (0..=params.t()).map(|i| kappa_i_formula(n_designs, i, params)).collect(),
        }
    }
}

/// Coefficients read off `UU^T`, with a flag telling whether each was
/// constant on its relation.
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalGram {
    pub coefficients: GramCoefficients,
    /// Every entry on each relation of the scheme takes a single value.
    pub constant: bool,
    /// Relations with intersection dimension in `t..k` never occur.
    pub high_relations_zero: bool,
}

/// Reads `kappa` (diagonal) and `kappa_i` (pairs meeting in dimension `i`)
/// off the Gram counts of the family.
pub fn empirical_coefficients(params: &ParamSet, designs: &[Design], scheme: &SchemeInstance) -> Result<EmpiricalGram> {
    let size = scheme.len();
    if scheme.n() != params.n() || scheme.k() != params.k() || scheme.q() != params.q() {
        return Err(Error::DimensionMismatch(format!("scheme does not belong to {params}")));
    }
    let g = gram_counts(params, designs)?;
    let k = params.k();
    let mut values: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); k + 1];
    for x in 0..size {
        for y in 0..size {
            values[k - scheme.relation(x, y)].insert(g[x * size + y]);
        }
    }
    let constant = values.iter().all(|v| v.len() <= 1);
    let first = |dim: usize| values[dim].iter().next().copied().unwrap_or(0);
    let high_relations_zero = (params.t()..k).all(|d| values[d].iter().all(|&v| v == 0));
    Ok(EmpiricalGram {
        coefficients: GramCoefficients {
            n_designs: designs.len() as u64,
            kappa: rat(first(k) as i64),
            kappa_i: (0..=params.t()).map(|d| rat(first(d) as i64)).collect(),
        },
        constant,
        high_relations_zero,
    })
}

/// `UU^T == kappa I + sum_{i=0}^{t} kappa_i A_{k-i}`, entrywise.
pub fn gram_check(u: &ExactMatrix, coeffs: &GramCoefficients, scheme: &SchemeInstance) -> Result<bool> {
    let size = scheme.len();
    if u.rows() != size || coeffs.n_designs as usize != u.cols() {
        return Err(Error::DimensionMismatch(format!(
            "U is {}x{}, scheme has {size} points and coefficients count {} designs",
            u.rows(),
            u.cols(),
            coeffs.n_designs
        )));
    }
    let k = scheme.k();
    let zero = ExactRational::zero();
    for x in 0..size {
        for y in x..size {
            let dot: ExactRational = u.row(x).iter().zip(u.row(y)).map(|(a, b)| a * b).sum();
            let dim = k - scheme.relation(x, y);
            let expected = if dim == k { &coeffs.kappa } else { coeffs.kappa_i.get(dim).unwrap_or(&zero) };
            if &dot != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct MuCheck {
    pub r: usize,
    #[serde(serialize_with = "serialize_fraction")]
    pub mu: ExactRational,
    #[serde(serialize_with = "serialize_fraction")]
    pub multiplicity: ExactRational,
    /// Total multiplicity of all `r'` with `mu_{r'} = mu_r`.
    #[serde(serialize_with = "serialize_fraction")]
    pub grouped_multiplicity: ExactRational,
    pub rank: usize,
    pub rank_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<MuCheck>,
    #[serde(serialize_with = "serialize_fraction")]
    pub trace: ExactRational,
    /// `trace(UU^T) = sum mult_r mu_r = [n k] kappa`.
    pub trace_ok: bool,
    pub passed: bool,
}

/// Checks the closed-form `mu_r` against the Gram matrix: the rank of
/// `UU^T - mu_r I` and the trace.
pub fn spectral_check(params: &ParamSet, gram: &ExactMatrix, kappa: &ExactRational) -> Result<SpectralReport> {
    let size = gram.rows();
    if params.block_space() != Some(size) || gram.cols() != size {
        return Err(Error::DimensionMismatch(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
    }
    let (k, n, q) = (params.k(), params.n() as i64, params.q());
    let rmax = k.min(params.n() - k);
    let mus = (0..=rmax).map(|r| mu_eigenvalue(params, r, kappa)).collect::<Result<Vec<_>>>()?;
    let mults: Vec<ExactRational> = (0..=rmax).map(|r| eigenspace_multiplicity(n, r as i64, q)).collect();
    let mut eigenvalues = Vec::new();
    for r in 0..=rmax {
        let grouped: ExactRational = (0..=rmax).filter(|&s| mus[s] == mus[r]).map(|s| mults[s].clone()).sum();
        let rank = rank_exact(&gram.shift_diagonal(&mus[r])?);
        let rank_ok = rat(rank as i64) == rat(size as i64) - &grouped;
        eigenvalues.push(MuCheck {
            r,
            mu: mus[r].clone(),
            multiplicity: mults[r].clone(),
            grouped_multiplicity: grouped,
            rank,
            rank_ok,
        });
    }
    let trace = gram.trace();
    let from_spectrum: ExactRational = mus.iter().zip(&mults).map(|(m, c)| m * c).sum();
    let trace_ok = trace == from_spectrum && trace == rat(size as i64) * kappa;
    let passed = trace_ok && eigenvalues.iter().all(|e| e.rank_ok);
    Ok(SpectralReport { eigenvalues, trace, trace_ok, passed })
}

/// The intersection subspace, from the `q^dim` vectors of `x`.
fn meet(params: &ParamSet, x: &Subspace, y: &Subspace) -> Result<Subspace> {
    let field = params.field();
    let (k, n, q) = (x.dim(), x.ambient_n(), field.q() as Elem);
    let mut coeffs = vec![0 as Elem; k];
    let mut rows = Vec::new();
    loop {
        let v = field.mat_mul(&coeffs, x.basis(), 1, k, n);
        if y.contains_vector(field, &v) {
            rows.extend_from_slice(&v);
        }
        let mut pos = 0;
        while pos < k {
            coeffs[pos] += 1;
            if coeffs[pos] < q {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    Subspace::span(field, n, &rows)
}

/// Per-design intersection counts, compared with [`intersect_count`].
#[derive(Clone, Debug, Serialize)]
pub struct IntersectCheck {
    pub designs_checked: usize,
    #[serde(serialize_with = "serialize_fractions")]
    pub expected: Vec<ExactRational>,
    /// Distinct counts seen for each `i`, over all blocks and `i`-subspaces.
    pub observed: Vec<Vec<u64>>,
    /// `sum_i [k i] intersect_count(i) = block_count - 1`.
    pub partition_ok: bool,
    pub passed: bool,
}

/// For every block `X` of every design and every `i`-subspace `I` of `X`
/// with `i < t`, counts the other blocks meeting `X` exactly in `I`.
pub fn check_intersect_counts(params: &ParamSet, designs: &[Design]) -> Result<IntersectCheck> {
    check_family(params, designs)?;
    let (t, k, q) = (params.t(), params.k() as i64, params.q());
    let expected: Vec<ExactRational> = (0..t).map(|i| intersect_count(params, i)).collect();
    let mut observed: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); t];
    let mut pair_dims_ok = true;
    for d in designs {
        let blocks = d.subspaces()?;
        for (a, x) in blocks.iter().enumerate() {
            let mut counts: Vec<HashMap<Subspace, u64>> = vec![HashMap::new(); t];
            for (b, y) in blocks.iter().enumerate() {
                if a == b {
                    continue;
                }
                let m = meet(params, x, y)?;
                if m.dim() >= t {
                    pair_dims_ok = false;
                    continue;
                }
                *counts[m.dim()].entry(m).or_insert(0) += 1;
            }
            for (i, c) in counts.iter().enumerate() {
                let total = gauss_binom(k, i as i64, q);
                // i-subspaces of X that no other block meets exactly
                if rat(c.len() as i64) < total {
                    observed[i].insert(0);
                }
                observed[i].extend(c.values().copied());
            }
        }
    }
    let block_count = params.block_count();
    let partition: ExactRational =
        expected.iter().enumerate().map(|(i, e)| gauss_binom(k, i as i64, q) * e).sum();
    let partition_ok = partition == block_count - rat(1);
    let observed: Vec<Vec<u64>> = observed.into_iter().map(|s| s.into_iter().collect()).collect();
    let matches = designs.is_empty()
        || observed.iter().zip(&expected).all(|(o, e)| o.len() == 1 && rat(o[0] as i64) == *e);
    Ok(IntersectCheck {
        designs_checked: designs.len(),
        expected,
        observed,
        partition_ok,
        passed: pair_dims_ok && partition_ok && matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steiner::design::enumerate_steiner;

    fn pg32() -> ParamSet {
        ParamSet::new(1, 2, 4, 2).unwrap()
    }

    #[test]
    fn closed_forms_pg32() {
        let p = pg32();
        assert_eq!(kappa_formula(56, &p), rat(8));
        assert_eq!(kappa_formula(0, &p), rat(0));
        assert_eq!(kappa_i_formula(56, 0, &p), rat(2));
        assert_eq!(kappa_i_formula(56, 1, &p), rat(0));
        assert_eq!(intersect_count(&p, 0), rat(4));
        let mu: Vec<_> = (0..=2).map(|r| mu_eigenvalue(&p, r, &rat(8)).unwrap()).collect();
        assert_eq!(mu, vec![rat(40), rat(0), rat(12)]);
        assert_eq!(dimension_formula(&p), BigInt::from(21));
        assert_eq!(dimension_formula(&ParamSet::new(1, 2, 4, 3).unwrap()), BigInt::from(91));
        assert_eq!(intersect_count(&ParamSet::new(1, 2, 6, 2).unwrap(), 0), rat(20));
    }

    #[test]
    fn mu_matches_scheme_expression() {
        for q in [2, 3] {
            for n in 2..=10 {
                for k in 2..=n / 2 {
                    for t in 1..k {
                        let p = ParamSet::new(t, k, n, q).unwrap();
                        let kappa = kappa_formula(1, &p);
                        for r in 0..=k {
                            assert_eq!(mu_eigenvalue(&p, r, &kappa).unwrap(), mu_via_scheme(&p, r), "{p} r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pg32_pipeline() {
        let p = pg32();
        let designs = enumerate_steiner(&p).unwrap();
        let scheme = SchemeInstance::new(4, 2, p.field().clone()).unwrap();
        let emp = empirical_coefficients(&p, &designs, &scheme).unwrap();
        assert!(emp.constant && emp.high_relations_zero);
        assert_eq!(emp.coefficients, GramCoefficients::closed_form(56, &p));
        let mut u = incidence_matrix(&p, &designs).unwrap();
        assert!(gram_check(&u, &emp.coefficients, &scheme).unwrap());
        let g = gram_matrix(&p, &designs).unwrap();
        let spec = spectral_check(&p, &g, &rat(8)).unwrap();
        assert!(spec.passed);
        assert_eq!(spec.trace, rat(280));
        assert_eq!(rank_exact(&u), 21);
        let ic = check_intersect_counts(&p, &designs).unwrap();
        assert!(ic.passed, "{ic:?}");
        assert_eq!(ic.observed, vec![vec![4]]);

        u.set(0, 0, ExactRational::one() - u.get(0, 0));
        assert!(!gram_check(&u, &emp.coefficients, &scheme).unwrap());
    }

    #[test]
    fn empty_family() {
        let p = pg32();
        let scheme = SchemeInstance::new(4, 2, p.field().clone()).unwrap();
        let u = incidence_matrix(&p, &[]).unwrap();
        assert_eq!((u.rows(), u.cols()), (35, 0));
        assert_eq!(rank_exact(&u), 0);
        assert!(gram_check(&u, &GramCoefficients::closed_form(0, &p), &scheme).unwrap());
    }
}
