use std::collections::HashMap;

use ethnum::U256;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{binomial, choose2, gauss_binom, gauss_binom_usize, q_int, q_pow, sign, ExactRational};
use crate::gfspaces::field::{Elem, FieldSpec};
use crate::gfspaces::subspace::{enumerate_subspaces, intersection_dim, Subspace, SubspaceIter};

/// Möbius function of the subspace lattice on an interval of length `d`.
pub fn mobius_interval(d: u32, q: u64) -> BigInt {
    let mag = num_traits::pow(BigInt::from(q), choose2(d as i64) as usize);
    if d.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Number of `m`-sets of projective points spanning `F_q^d`, by Möbius inversion.
pub fn spanning_count_formula(m: u64, d: u64, q: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidParams("spanning sets need m >= 1".into()));
    }
    let mut total = BigInt::zero();
    for j in 0..=d as i64 {
        let points = q_int(j, q).to_integer();
        let term = gauss_binom(d as i64, j, q).to_integer()
            * sign(d as i64 - j)
            * q_pow(q, choose2(d as i64 - j)).to_integer()
            * binomial(&points, m);
        total += term;
    }
    Ok(total)
}

/// Number of spanning sets of any size, `sum_j [d j] (-1)^{d-j} q^{C(d-j,2)} (2^{[j]_q} - 1)`.
pub fn spanning_set_total_formula(d: u64, q: u64) -> BigInt {
    let mut total = BigInt::zero();
    for j in 0..=d as i64 {
        let points = q_int(j, q).to_integer();
        let subsets = num_traits::pow(BigInt::from(2), usize::try_from(points).expect("small")) - 1;
        total += gauss_binom(d as i64, j, q).to_integer() * sign(d as i64 - j) * q_pow(q, choose2(d as i64 - j)).to_integer()
            * subsets;
    }
    total
}

const SPAN_STATE_LIMIT: usize = 500_000;

/// Projective points of `F_q^d` as normalized vectors, those living in the
/// last coordinates first so that early spans stay small.
fn projective_points(field: &FieldSpec, d: usize) -> Vec<Vec<Elem>> {
    let mut pts: Vec<Vec<Elem>> = enumerate_subspaces(d, 1, field).into_iter().map(|s| s.basis().to_vec()).collect();
    pts.sort_by_key(|v| std::cmp::Reverse(v.iter().position(|&x| x != 0)));
    pts
}

const MAX_SPAN_DIM: usize = 8;

/// Vector arithmetic needed by the span dynamic program.
trait SpanVectors {
    type V: Copy;
    fn from_elems(&self, v: &[Elem]) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
    fn lead(&self, v: &Self::V) -> usize;
    /// `v - v[col] * row`, for a row whose leading entry 1 sits at `col`.
    fn eliminate(&self, v: &Self::V, row: &Self::V, col: usize) -> Self::V;
    fn normalize(&self, v: &Self::V) -> Self::V;
    fn key(&self, v: &Self::V) -> u128;
    fn radix(&self) -> u128;
}

/// Bit-packed rows over `F_2`; bit `j` is coordinate `j`.
struct Binary;

impl SpanVectors for Binary {
    type V = u16;
    fn from_elems(&self, v: &[Elem]) -> u16 {
        v.iter().enumerate().fold(0, |acc, (j, &x)| acc | (x & 1) << j)
    }
    fn is_zero(&self, v: &u16) -> bool {
        *v == 0
    }
    fn lead(&self, v: &u16) -> usize {
        v.trailing_zeros() as usize
    }
    fn eliminate(&self, v: &u16, row: &u16, col: usize) -> u16 {
        if v >> col & 1 == 1 {
            v ^ row
        } else {
            *v
        }
    }
    fn normalize(&self, v: &u16) -> u16 {
        *v
    }
    fn key(&self, v: &u16) -> u128 {
        *v as u128
    }
    fn radix(&self) -> u128 {
        1 << MAX_SPAN_DIM
    }
}

struct General<'a> {
    field: &'a FieldSpec,
    d: usize,
}

impl SpanVectors for General<'_> {
    type V = [Elem; MAX_SPAN_DIM];
    fn from_elems(&self, v: &[Elem]) -> Self::V {
        std::array::from_fn(|j| v.get(j).copied().unwrap_or(0))
    }
    fn is_zero(&self, v: &Self::V) -> bool {
        v.iter().all(|&x| x == 0)
    }
    fn lead(&self, v: &Self::V) -> usize {
        v.iter().position(|&x| x != 0).unwrap_or(MAX_SPAN_DIM)
    }
    fn eliminate(&self, v: &Self::V, row: &Self::V, col: usize) -> Self::V {
        let c = v[col];
        if c == 0 {
            return *v;
        }
        std::array::from_fn(|j| self.field.sub(v[j], self.field.mul(c, row[j])))
    }
    fn normalize(&self, v: &Self::V) -> Self::V {
        let inv = self.field.inv(v[self.lead(v)]);
        v.map(|x| self.field.mul(x, inv))
    }
    fn key(&self, v: &Self::V) -> u128 {
        v[..self.d].iter().fold(0u128, |acc, &x| acc * self.field.q() as u128 + x as u128)
    }
    fn radix(&self) -> u128 {
        (self.field.q() as u128).pow(self.d as u32)
    }
}

/// RREF basis of a span reached during the dynamic program, plus the number
/// of point subsets of each size that span it.
struct SpanState<V> {
    rows: [V; MAX_SPAN_DIM],
    dim: usize,
    counts: Vec<U256>,
}

fn reduce<S: SpanVectors>(ops: &S, rows: &[S::V], v: &S::V) -> S::V {
    rows.iter().fold(*v, |acc, row| ops.eliminate(&acc, row, ops.lead(row)))
}

/// RREF of `rows + v` where `v` is already reduced against `rows` and nonzero.
fn extend<S: SpanVectors>(ops: &S, rows: &[S::V], v: S::V, zero: S::V) -> ([S::V; MAX_SPAN_DIM], usize) {
    let v = ops.normalize(&v);
    let l = ops.lead(&v);
    let mut out = [zero; MAX_SPAN_DIM];
    let mut k = 0;
    let mut placed = false;
    for row in rows {
        if !placed && ops.lead(row) > l {
            out[k] = v;
            k += 1;
            placed = true;
        }
        out[k] = ops.eliminate(row, &v, l);
        k += 1;
    }
    if !placed {
        out[k] = v;
        k += 1;
    }
    (out, k)
}

fn state_key<S: SpanVectors>(ops: &S, rows: &[S::V]) -> Option<u128> {
    let radix = ops.radix();
    rows.iter().try_fold(rows.len() as u128, |acc, row| acc.checked_mul(radix)?.checked_add(ops.key(row)))
}

/// Exhaustive count of `m`-sets of projective points spanning `F_q^d`.
///
/// Runs over all subsets of points, grouped by the subspace they span so far;
/// every subset is accounted for exactly once. Refuses when `q^d > 2^16` or
/// the subspace lattice is too large to hold.
pub fn spanning_count_bruteforce(m: u64, d: usize, field: &FieldSpec) -> Result<BigInt> {
    Ok(spanning_count_table(d, field)?.get(m as usize).cloned().unwrap_or_default())
}

/// The full table `m -> #spanning m-sets`, index 0 included.
pub fn spanning_count_table(d: usize, field: &FieldSpec) -> Result<Vec<BigInt>> {
    let q = field.q() as u64;
    let too_big = || Error::GuardExceeded(format!("spanning sets of F_{q}^{d}"));
    if (q as f64).powi(d as i32) > 65536.0 || d > MAX_SPAN_DIM {
        return Err(too_big());
    }
    let lattice: Option<usize> = (0..=d as u64).try_fold(0usize, |acc, j| acc.checked_add(gauss_binom_usize(d as u64, j, q)?));
    if lattice.is_none_or(|n| n > SPAN_STATE_LIMIT) {
        return Err(too_big());
    }
    let counts = if q == 2 {
        span_dp(&Binary, field, d, 0)
    } else {
        span_dp(&General { field, d }, field, d, [0; MAX_SPAN_DIM])
    }
    .ok_or_else(too_big)?;
    Ok(counts.iter().map(|c| c.to_string().parse::<BigInt>().expect("decimal")).collect())
}

fn span_dp<S: SpanVectors>(ops: &S, field: &FieldSpec, d: usize, zero: S::V) -> Option<Vec<U256>> {
    let q = field.q() as u64;
    let point_count = |dim: usize| gauss_binom_usize(dim as u64, 1, q).expect("small");
    let mut slots = vec![SpanState { rows: [zero; MAX_SPAN_DIM], dim: 0, counts: vec![U256::ONE] }];
    let mut slot_of: HashMap<u128, usize> = HashMap::from([(0, 0)]);
    let mut moves = Vec::new();
    for p in projective_points(field, d) {
        let p = ops.from_elems(&p);
        moves.clear();
        // subsets already spanning a space through p: adding p keeps the span
        for (i, state) in slots.iter_mut().enumerate() {
            let rest = reduce(ops, &state.rows[..state.dim], &p);
            if ops.is_zero(&rest) {
                for m in (1..state.counts.len()).rev() {
                    let below = state.counts[m - 1];
                    state.counts[m] += below;
                }
            } else {
                moves.push((i, rest));
            }
        }
        // the rest grow by p; sources miss p and targets contain it, so no
        // source is written before it is read
        for &(src, rest) in &moves {
            let (rows, dim) = extend(ops, &slots[src].rows[..slots[src].dim], rest, zero);
            let key = state_key(ops, &rows[..dim])?;
            let dst = *slot_of.entry(key).or_insert_with(|| {
                slots.push(SpanState { rows, dim, counts: vec![U256::ZERO; point_count(dim) + 1] });
                slots.len() - 1
            });
            let (from, to) = if src < dst {
                let (x, y) = slots.split_at_mut(dst);
                (&x[src], &mut y[0])
            } else {
                let (x, y) = slots.split_at_mut(src);
                (&y[0], &mut x[dst])
            };
            for (c, t) in from.counts.iter().zip(&mut to.counts[1..]) {
                *t += *c;
            }
        }
    }
    Some(slots.into_iter().find(|s| s.dim == d).map(|s| s.counts).unwrap_or_default())
}

/// Direct subset enumeration; only for tiny point sets.
pub fn spanning_count_naive(m: u64, d: usize, field: &FieldSpec) -> Result<BigInt> {
    let pts = projective_points(field, d);
    if pts.len() > 20 {
        return Err(Error::GuardExceeded(format!("{} points is too many for subset enumeration", pts.len())));
    }
    let mut count = BigInt::zero();
    for mask in 0u32..1 << pts.len() {
        if mask.count_ones() as u64 != m {
            continue;
        }
        let rows: Vec<Elem> = pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, p)| p.clone()).collect();
        if field.rank(&rows, m as usize, d) == d {
            count += 1;
        }
    }
    Ok(count)
}

/// For a fixed `b`-space `B` and `a`-space `A ⊆ B` in `F_q^n`:
/// `(#{U : U ∩ B = A}, #{U : dim(U ∩ B) = a})` over `u`-spaces `U`.
pub fn count_fixed_intersection(a: u64, b: u64, u: u64, n: u64, q: u64) -> Result<(ExactRational, ExactRational)> {
    if !(a <= b.min(u) && b.max(u) <= n) {
        return Err(Error::InvalidParams(format!("need a <= min(b,u) <= max(b,u) <= n, got a={a} b={b} u={u} n={n}")));
    }
    let (a, b, u, n) = (a as i64, b as i64, u as i64, n as i64);
    let first = q_pow(q, (b - a) * (u - a)) * gauss_binom(n - b, u - a, q);
    let second = q_pow(q, (b - a) * (u - a)) * gauss_binom(b, a, q) * gauss_binom(n - b, u - a, q);
    Ok((first, second))
}

/// The same pair counted over `Gr_{n,u}`, with `B` spanned by the first `b`
/// unit vectors and `A` by the first `a`.
pub fn count_fixed_intersection_bruteforce(a: usize, b: usize, u: usize, n: usize, field: &FieldSpec) -> Result<(u64, u64)> {
    if !(a <= b.min(u) && b.max(u) <= n) {
        return Err(Error::InvalidParams(format!("need a <= min(b,u) <= max(b,u) <= n, got a={a} b={b} u={u} n={n}")));
    }
    let unit_rows = |m: usize| -> Vec<Elem> { (0..m).flat_map(|i| (0..n).map(move |j| (i == j) as Elem)).collect() };
    let big = Subspace::from_basis(field, n, b, &unit_rows(b))?;
    let small = Subspace::from_basis(field, n, a, &unit_rows(a))?;
    let (mut exact, mut by_dim) = (0, 0);
    for space in SubspaceIter::new(field, n, u) {
        if intersection_dim(field, &space, &big)? != a {
            continue;
        }
        by_dim += 1;
        if space.contains(field, &small)? {
            exact += 1;
        }
    }
    Ok((exact, by_dim))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCheck {
    pub dim: usize,
    pub sum: BigInt,
    pub holds: bool,
}

/// Sums `mu(U, W)` over every subspace `U ⊆ W`, found by enumeration, and
/// compares with the Kronecker delta.
pub fn mobius_delta_check(w: &Subspace, field: &FieldSpec) -> Result<MobiusCheck> {
    let d = w.dim();
    if d > 4 || field.q() > 3 {
        return Err(Error::GuardExceeded(format!("Möbius check limited to dim <= 4, q <= 3 (got dim {d}, q {})", field.q())));
    }
    let q = field.q() as u64;
    let mut sum = BigInt::zero();
    for j in 0..=d {
        // subspaces of W are images of subspaces of its coordinate space
        let mut seen = std::collections::HashSet::new();
        for coords in SubspaceIter::new(field, d, j) {
            let sub = w.image(field, coords.basis(), j)?;
            if sub.dim() != j || !w.contains(field, &sub)? {
                return Err(Error::DimensionMismatch("coordinate image left W".into()));
            }
            seen.insert(sub);
        }
        sum += mobius_interval((d - j) as u32, q) * BigInt::from(seen.len());
    }
    let delta = if d == 0 { BigInt::one() } else { BigInt::zero() };
    Ok(MobiusCheck { dim: d, holds: sum == delta, sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_interval(0, 5), BigInt::from(1));
        assert_eq!(mobius_interval(1, 5), BigInt::from(-1));
        assert_eq!(mobius_interval(3, 2), BigInt::from(-8));
    }

    #[test]
    fn spanning_formula_examples() {
        assert_eq!(spanning_count_formula(3, 0, 2).unwrap(), BigInt::zero());
        assert_eq!(spanning_count_formula(1, 1, 7).unwrap(), BigInt::one());
        assert_eq!(spanning_count_formula(2, 2, 2).unwrap(), BigInt::from(3));
        assert!(spanning_count_formula(0, 2, 2).is_err());
    }

    #[test]
    fn spanning_bruteforce_examples() {
        let f2 = f(2);
        assert_eq!(spanning_count_bruteforce(1, 1, &f2).unwrap(), BigInt::one());
        assert_eq!(spanning_count_bruteforce(2, 2, &f2).unwrap(), BigInt::from(3));
        assert_eq!(spanning_count_bruteforce(3, 2, &f2).unwrap(), BigInt::one());
    }

    #[test]
    fn dp_matches_naive() {
        for (q, d) in [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2)] {
            let field = f(q);
            let pts = gauss_binom_usize(d as u64, 1, q).unwrap() as u64;
            for m in 1..=pts {
                assert_eq!(
                    spanning_count_bruteforce(m, d, &field).unwrap(),
                    spanning_count_naive(m, d, &field).unwrap(),
                    "q={q} d={d} m={m}"
                );
            }
        }
    }

    #[test]
    fn spanning_total_remark() {
        let total: BigInt = (1..=3).map(|m| spanning_count_formula(m, 2, 2).unwrap()).sum();
        assert_eq!(total, BigInt::from(4));
        assert_eq!(spanning_set_total_formula(2, 2), BigInt::from(4));
    }

    #[test]
    fn spanning_guard() {
        assert!(matches!(spanning_count_bruteforce(1, 17, &f(2)), Err(Error::GuardExceeded(_))));
        assert!(matches!(spanning_count_bruteforce(1, 9, &f(2)), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn fixed_intersection_examples() {
        assert_eq!(count_fixed_intersection(2, 2, 2, 4, 2).unwrap(), (rat(1), rat(1)));
        assert_eq!(count_fixed_intersection(0, 2, 2, 4, 2).unwrap(), (rat(16), rat(16)));
        assert_eq!(count_fixed_intersection(1, 2, 2, 4, 2).unwrap(), (rat(6), rat(18)));
        assert!(count_fixed_intersection(3, 2, 2, 4, 2).is_err());
        let f2 = f(2);
        assert_eq!(count_fixed_intersection_bruteforce(0, 2, 2, 4, &f2).unwrap(), (16, 16));
        assert_eq!(count_fixed_intersection_bruteforce(1, 2, 2, 4, &f2).unwrap(), (6, 18));
        assert_eq!(count_fixed_intersection_bruteforce(2, 2, 2, 4, &f2).unwrap(), (1, 1));
    }

    #[test]
    fn mobius_delta_examples() {
        let f2 = f(2);
        let zero = Subspace::zero(&f2, 3);
        let c = mobius_delta_check(&zero, &f2).unwrap();
        assert!(c.holds);
        assert_eq!(c.sum, BigInt::one());
        let plane = Subspace::from_basis(&f2, 4, 2, &[1, 0, 1, 0, 0, 1, 1, 1]).unwrap();
        assert!(mobius_delta_check(&plane, &f2).unwrap().holds);
        let f3 = f(3);
        let solid = Subspace::from_basis(&f3, 4, 3, &[1, 0, 0, 2, 0, 1, 0, 1, 0, 0, 1, 1]).unwrap();
        let c = mobius_delta_check(&solid, &f3).unwrap();
        assert!(c.holds && c.sum.is_zero());
        let f5 = f(5);
        assert!(mobius_delta_check(&Subspace::zero(&f5, 2), &f5).is_err());
    }
}
