//! The Grassmann association scheme on `Gr_{n,k}(F_q)`: relation `i` joins
//! two k-spaces meeting in dimension `k - i`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{choose2, gauss_binom, q_pow, rat, serialize_fraction, sign, ExactRational};
use crate::gfspaces::{enumerate_subspaces, intersection_dim, FieldSpec, Subspace};
use crate::linalg::{rank_exact, ExactMatrix};

/// Largest `[n k]_q` for which dense scheme matrices are built.
pub const SCHEME_GUARD: usize = 2000;

#[derive(Clone, Debug)]
pub struct SchemeInstance {
    n: usize,
    k: usize,
    field: FieldSpec,
    subspaces: Vec<Subspace>,
    /// `relation[x * len + y] = k - dim(X ∩ Y)`.
    relation: Vec<u8>,
}

impl SchemeInstance {
    pub fn new(n: usize, k: usize, field: FieldSpec) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        let size = crate::exactq::gauss_binom_usize(n as u64, k as u64, field.q() as u64);
        if size.is_none_or(|s| s > SCHEME_GUARD) {
            return Err(Error::GuardExceeded(format!(
                "Gr_{{{n},{k}}}(F_{}) has more than {SCHEME_GUARD} points",
                field.q()
            )));
        }
        let subspaces = enumerate_subspaces(n, k, &field);
        let len = subspaces.len();
        let mut relation = vec![0u8; len * len];
        for x in 0..len {
            for y in x..len {
                let rel = (k - intersection_dim(&field, &subspaces[x], &subspaces[y])?) as u8;
                relation[x * len + y] = rel;
                relation[y * len + x] = rel;
            }
        }
        Ok(SchemeInstance { n, k, field, subspaces, relation })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Relation index `k - dim(X ∩ Y)` between two canonical indices.
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.len() + y] as usize
    }

    pub fn adjacency_matrix(&self, i: usize) -> Result<ExactMatrix> {
        if i > self.k {
            return Err(Error::IndexOutOfRange { index: i, max: self.k });
        }
        let (zero, one) = (ExactRational::zero(), ExactRational::one());
        Ok(ExactMatrix::from_fn(self.len(), self.len(), |x, y| {
            if self.relation(x, y) == i {
                one.clone()
            } else {
                zero.clone()
            }
        }))
    }

    /// Valency of relation `i`, counted from the table.
    pub fn valency(&self, i: usize) -> usize {
        if self.is_empty() {
            return 0;
        }
        (0..self.len()).filter(|&y| self.relation(0, y) == i).count()
    }
}

/// The generalized Eberlein polynomial `E_i(n,k;q;x)`.
pub fn eberlein_eigenvalue(n: i64, k: i64, q: u64, i: i64, x: i64) -> ExactRational {
    (0..=i)
        .map(|j| {
            rat(sign(j))
                * gauss_binom(x, j, q)
                * gauss_binom(k - x, i - j, q)
                * gauss_binom(n - k - x, i - j, q)
                * q_pow(q, choose2(j) + (i - j) * (i - j + x))
        })
        .sum()
}

/// Eigenvalue `nu_r^{(i)}` of `A_i` on the `r`-th eigenspace, as a sum over
/// `max(0, r-i) <= j <= min(r, k-i)`.
pub fn eisfeld_eigenvalue(n: i64, k: i64, q: u64, i: i64, r: i64) -> ExactRational {
    let lo = (r - i).max(0);
    let hi = r.min(k - i);
    (lo..=hi)
        .map(|j| {
            rat(sign(r - j))
                * gauss_binom(r, j, q)
                * gauss_binom(n - k + j - r, n - k - i, q)
                * gauss_binom(k - j, i, q)
                * q_pow(q, i * (i + j - r) + choose2(r - j))
        })
        .sum()
}

/// `[n r] - [n r-1]`.
pub fn eigenspace_multiplicity(n: i64, r: i64, q: u64) -> ExactRational {
    gauss_binom(n, r, q) - gauss_binom(n, r - 1, q)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCheck {
    pub r: usize,
    #[serde(serialize_with = "serialize_fraction")]
    pub value: ExactRational,
    pub formulas_agree: bool,
    #[serde(serialize_with = "serialize_fraction")]
    pub multiplicity: ExactRational,
    /// Summed multiplicity of every `r'` whose eigenvalue equals this one.
    #[serde(serialize_with = "serialize_fraction")]
    pub grouped_multiplicity: ExactRational,
    pub rank: usize,
    #[serde(serialize_with = "serialize_fraction")]
    pub expected_rank: ExactRational,
    pub rank_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationSpectrum {
    pub i: usize,
    pub valency: usize,
    pub row_sums_ok: bool,
    pub symmetric: bool,
    #[serde(serialize_with = "serialize_fraction")]
    pub trace_from_spectrum: ExactRational,
    pub trace_ok: bool,
    pub eigenvalues: Vec<EigenCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub points: usize,
    #[serde(serialize_with = "serialize_fraction")]
    pub multiplicity_sum: ExactRational,
    pub multiplicity_sum_ok: bool,
    pub all_ones_ok: bool,
    pub relations: Vec<RelationSpectrum>,
    pub passed: bool,
}

/// Checks the predicted spectrum of every `A_i` by exact ranks of the
/// shifted matrices `A_i - nu I`, grouping eigenvalues that coincide.
pub fn verify_spectrum(s: &SchemeInstance) -> Result<SpectrumReport> {
    let (n, k, q) = (s.n as i64, s.k as i64, s.q());
    let points = s.len();
    let rmax = k.min(n - k);
    let mults: Vec<ExactRational> = (0..=rmax).map(|r| eigenspace_multiplicity(n, r, q)).collect();
    let multiplicity_sum: ExactRational = mults.iter().sum();
    let size = rat(points as i64);
    let mut all_ones = ExactMatrix::zeros(points, points);
    let mut relations = Vec::new();
    for i in 0..=s.k {
        let a = s.adjacency_matrix(i)?;
        all_ones = all_ones.add(&a)?;
        let values: Vec<ExactRational> = (0..=rmax).map(|r| eisfeld_eigenvalue(n, k, q, i as i64, r)).collect();
        let mut eigenvalues = Vec::new();
        for r in 0..=rmax {
            let value = values[r as usize].clone();
            let grouped: ExactRational =
                values.iter().zip(&mults).filter(|(v, _)| **v == value).map(|(_, m)| m.clone()).sum();
            let rank = rank_exact(&a.shift_diagonal(&value)?);
            let expected_rank = &size - &grouped;
            eigenvalues.push(EigenCheck {
                r: r as usize,
                formulas_agree: eberlein_eigenvalue(n, k, q, i as i64, r) == value,
                multiplicity: mults[r as usize].clone(),
                grouped_multiplicity: grouped,
                rank_ok: rat(rank as i64) == expected_rank,
                rank,
                expected_rank,
                value,
            });
        }
        let valency = s.valency(i);
        let row_sums_ok = a.row_sums().iter().all(|x| *x == rat(valency as i64)) && values[0] == rat(valency as i64);
        let trace_from_spectrum: ExactRational = values.iter().zip(&mults).map(|(v, m)| v * m).sum();
        let trace_ok = trace_from_spectrum == a.trace() && (i == 0 || trace_from_spectrum.is_zero());
        relations.push(RelationSpectrum {
            i,
            valency,
            row_sums_ok,
            symmetric: a.is_symmetric(),
            trace_from_spectrum,
            trace_ok,
            eigenvalues,
        });
    }
    let all_ones_ok = all_ones.entries().iter().all(|x| x.is_one());
    let multiplicity_sum_ok = multiplicity_sum == size;
    let passed = multiplicity_sum_ok
        && all_ones_ok
        && relations.iter().all(|rel| {
            rel.row_sums_ok && rel.symmetric && rel.trace_ok && rel.eigenvalues.iter().all(|e| e.formulas_agree && e.rank_ok)
        });
    Ok(SpectrumReport {
        n: s.n,
        k: s.k,
        q,
        points,
        multiplicity_sum,
        multiplicity_sum_ok,
        all_ones_ok,
        relations,
        passed,
    })
}

/// Intersection numbers `p_{ij}^l`, read off one pair in each relation and
/// then confirmed on every pair, so that `A_i A_j = sum_l p_{ij}^l A_l`.
/// `None` if some product leaves the span of the adjacency matrices.
pub fn structure_constants(s: &SchemeInstance) -> Result<Option<Vec<Vec<Vec<u64>>>>> {
    let len = s.len();
    if len > 200 {
        return Err(Error::GuardExceeded(format!("closure check on {len} points")));
    }
    let k = s.k;
    let products = |x: usize, y: usize| {
        let mut counts = vec![vec![0u64; k + 1]; k + 1];
        for z in 0..len {
            counts[s.relation(x, z)][s.relation(z, y)] += 1;
        }
        counts
    };
    let mut per_relation: Vec<Option<Vec<Vec<u64>>>> = vec![None; k + 1];
    for y in 0..len {
        let l = s.relation(0, y);
        if per_relation[l].is_none() {
            per_relation[l] = Some(products(0, y));
        }
    }
    for x in 0..len {
        for y in 0..len {
            if per_relation[s.relation(x, y)].as_ref() != Some(&products(x, y)) {
                return Ok(None);
            }
        }
    }
    // p[i][j][l]; relations absent from the scheme contribute zeros
    let mut p = vec![vec![vec![0u64; k + 1]; k + 1]; k + 1];
    for (l, counts) in per_relation.iter().enumerate() {
        if let Some(counts) = counts {
            for i in 0..=k {
                for j in 0..=k {
                    p[i][j][l] = counts[i][j];
                }
            }
        }
    }
    Ok(Some(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(n: usize, k: usize, q: u64) -> SchemeInstance {
        SchemeInstance::new(n, k, FieldSpec::new(q).unwrap()).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let s = scheme(4, 2, 2);
        assert_eq!(s.adjacency_matrix(0).unwrap(), ExactMatrix::identity(35));
        assert!(s.adjacency_matrix(1).unwrap().row_sums().iter().all(|x| *x == rat(18)));
        assert!(s.adjacency_matrix(2).unwrap().row_sums().iter().all(|x| *x == rat(16)));
        assert!(matches!(s.adjacency_matrix(3), Err(Error::IndexOutOfRange { index: 3, max: 2 })));
    }

    #[test]
    fn eberlein_examples() {
        for x in -2..4 {
            assert_eq!(eberlein_eigenvalue(4, 2, 2, 0, x), rat(1));
        }
        assert_eq!(eberlein_eigenvalue(4, 2, 2, 2, 0), rat(16));
        assert_eq!(eberlein_eigenvalue(4, 2, 2, 2, 1), rat(-4));
        assert_eq!(eberlein_eigenvalue(4, 2, 2, 2, 2), rat(2));
    }

    #[test]
    fn eisfeld_examples() {
        assert_eq!(eisfeld_eigenvalue(4, 2, 2, 1, 0), rat(18));
        assert_eq!(eisfeld_eigenvalue(4, 2, 2, 2, 1), rat(-4));
        for r in 0..=2 {
            assert_eq!(eisfeld_eigenvalue(4, 2, 2, 0, r), rat(1));
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(eigenspace_multiplicity(4, 0, 2), rat(1));
        assert_eq!(eigenspace_multiplicity(4, 1, 2), rat(14));
        assert_eq!(eigenspace_multiplicity(4, 2, 2), rat(20));
    }

    #[test]
    fn spectrum_pg32() {
        let report = verify_spectrum(&scheme(4, 2, 2)).unwrap();
        assert!(report.passed);
        let a2 = &report.relations[2];
        let r2 = &a2.eigenvalues[2];
        assert_eq!(r2.value, rat(2));
        assert_eq!(r2.rank, 15);
        assert!(a2.trace_from_spectrum.is_zero());
        assert_eq!(report.relations[0].eigenvalues[0].rank, 0);
    }

    #[test]
    fn closure_pg32() {
        let s = scheme(4, 2, 2);
        let p = structure_constants(&s).unwrap().expect("closed");
        // A_1 A_1 on the diagonal counts neighbours: valency 18
        assert_eq!(p[1][1][0], 18);
        assert_eq!(p[2][2][0], 16);
        assert_eq!(p[0][2][2], 1);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            SchemeInstance::new(8, 4, FieldSpec::new(2).unwrap()),
            Err(Error::GuardExceeded(_))
        ));
    }
}
