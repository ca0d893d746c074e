//! Dense exact linear algebra over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactq::{fraction_string, ExactRational};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fraction_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![ExactRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ExactRational::one() } else { ExactRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| ExactRational::from_integer(BigInt::from(rows[i][j]))))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ExactRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> ExactRational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn row_sums(&self) -> Vec<ExactRational> {
        (0..self.rows).map(|i| self.row(i).iter().cloned().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<ExactRational> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j).clone()).sum()).collect()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ExactRational, &ExactRational) -> ExactRational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// `self - c * I`.
    pub fn shift_diagonal(&self, c: &ExactRational) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("shift of a non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - c;
            out.set(i, i, v);
        }
        Ok(out)
    }

    /// Entries as `i64` when every entry is a small integer.
    fn small_integers(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|x| {
                if !x.denom().is_one() {
                    return None;
                }
                x.numer().to_i64().filter(|v| v.unsigned_abs() < 1 << 31)
            })
            .collect()
    }
}

/// Exact matrix product.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if let (Some(sa), Some(sb)) = (a.small_integers(), b.small_integers()) {
        if let Some(out) = mul_small(&sa, &sb, a.rows, a.cols, b.cols) {
            return Ok(out);
        }
    }
    Ok(ExactMatrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = ExactRational::zero();
        for l in 0..a.cols {
            let x = a.get(i, l);
            if !x.is_zero() {
                acc += x * b.get(l, j);
            }
        }
        acc
    }))
}

fn mul_small(a: &[i64], b: &[i64], n: usize, inner: usize, m: usize) -> Option<ExactMatrix> {
    let mut out = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let mut acc: i128 = 0;
            for l in 0..inner {
                let x = a[i * inner + l];
                if x != 0 {
                    acc = acc.checked_add(x as i128 * b[l * m + j] as i128)?;
                }
            }
            out.push(ExactRational::from_integer(BigInt::from(acc)));
        }
    }
    Some(ExactMatrix { rows: n, cols: m, entries: out })
}

/// Clears denominators row by row, giving an integer matrix of the same rank.
fn integer_rows(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Each step pivots on the nonzero entry of smallest bit length in the
/// remaining submatrix, ties broken by lowest row and then lowest column.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut a = integer_rows(m);
    let rows = m.rows;
    let mut col_order: Vec<usize> = (0..m.cols).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while rank < rows && rank < m.cols {
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (jpos, &j) in col_order.iter().enumerate().skip(rank) {
                let x = &row[j];
                if x.is_zero() {
                    continue;
                }
                let bits = x.bits();
                if best.is_none_or(|(b, _, _)| bits < b) {
                    best = Some((bits, i, jpos));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(rank, pi);
        col_order.swap(rank, pj);
        let pc = col_order[rank];
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[pc].clone();
        for row in tail.iter_mut() {
            let factor = row[pc].clone();
            for &j in &col_order[rank + 1..] {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[pc] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn reduce_mod(x: &ExactRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64().expect("residue fits");
    if den == 0 {
        return Err(Error::DenominatorNotCoprime(p));
    }
    let num = x.numer().mod_floor(&pb).to_u64().expect("residue fits");
    Ok(mul_mod(num, mod_inv(den, p), p))
}

/// Rank of `m` reduced modulo the prime `p`; a lower bound for [`rank_exact`].
pub fn rank_mod_p(m: &ExactMatrix, p: u64) -> Result<usize> {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| m.row(i).iter().map(|x| reduce_mod(x, p)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pi) = (rank..m.rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, pi);
        let inv = mod_inv(a[rank][c], p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..m.cols {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    Ok(rank)
}

pub fn is_zero(m: &ExactMatrix) -> bool {
    m.entries.iter().all(Zero::is_zero)
}

/// Vertical concatenation.
pub fn stack(top: &ExactMatrix, bottom: &ExactMatrix) -> Result<ExactMatrix> {
    if top.cols != bottom.cols {
        return Err(Error::DimensionMismatch("stacking matrices of different widths".into()));
    }
    let mut entries = top.entries.clone();
    entries.extend(bottom.entries.iter().cloned());
    Ok(ExactMatrix { rows: top.rows + bottom.rows, cols: top.cols, entries })
}

pub fn max_abs_bits(m: &ExactMatrix) -> u64 {
    m.entries.iter().map(|x| x.numer().abs().bits().max(x.denom().bits())).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{rat, rat_frac};

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_times_matrix() {
        let a = m(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(mat_mul(&ExactMatrix::identity(2), &a).unwrap(), a);
    }

    #[test]
    fn one_by_one_fractions() {
        let a = ExactMatrix::new(1, 1, vec![rat_frac(2, 3)]).unwrap();
        let b = ExactMatrix::new(1, 1, vec![rat_frac(3, 2)]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().get(0, 0), &rat(1));
    }

    #[test]
    fn mismatched_product() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(Error::DimensionMismatch(_))));
        assert!(ExactMatrix::new(2, 2, vec![rat(1)]).is_err());
    }

    #[test]
    fn rank_basics() {
        assert_eq!(rank_exact(&ExactMatrix::zeros(4, 3)), 0);
        assert_eq!(rank_exact(&ExactMatrix::identity(6)), 6);
        assert_eq!(rank_exact(&ExactMatrix::zeros(0, 0)), 0);
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank_exact(&a), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let a = ExactMatrix::new(2, 2, vec![rat_frac(1, 2), rat_frac(1, 3), rat(3), rat(2)]).unwrap();
        assert_eq!(rank_exact(&a), 1);
    }

    #[test]
    fn rank_modular() {
        assert_eq!(rank_mod_p(&ExactMatrix::identity(5), 7).unwrap(), 5);
        assert_eq!(rank_mod_p(&m(&[vec![2, 4], vec![1, 2]]), 5).unwrap(), 1);
        // rank 2 over Q, but 3 | det
        let a = m(&[vec![1, 1], vec![1, 4]]);
        assert_eq!(rank_exact(&a), 2);
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 1);
        let half = ExactMatrix::new(1, 1, vec![rat_frac(1, 2)]).unwrap();
        assert!(matches!(rank_mod_p(&half, 2), Err(Error::DenominatorNotCoprime(2))));
        assert_eq!(rank_mod_p(&half, 3).unwrap(), 1);
    }

    #[test]
    fn shifted_diagonal() {
        let a = m(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(rank_exact(&a.shift_diagonal(&rat(3)).unwrap()), 1);
        assert_eq!(rank_exact(&a.shift_diagonal(&rat(1)).unwrap()), 1);
        assert_eq!(rank_exact(&a.shift_diagonal(&rat(2)).unwrap()), 2);
    }
}
