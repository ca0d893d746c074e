use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gfspaces::field::{Elem, FieldSpec};

/// A subspace of `F_q^n`, stored by its reduced row echelon basis.
///
/// Equality and hashing look only at `(q, n, basis)`; the canonical index is
/// carried along when the subspace came out of an enumeration.
#[derive(Clone, Debug)]
pub struct Subspace {
    q: u32,
    n: usize,
    dim: usize,
    basis: Vec<Elem>,
    index: Option<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.dim == other.dim && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.q.hash(state);
        self.n.hash(state);
        self.basis.hash(state);
    }
}

impl Subspace {
    /// Row space of the given `nrows x n` matrix.
    pub fn span(field: &FieldSpec, n: usize, rows: &[Elem]) -> Result<Self> {
        if n == 0 && !rows.is_empty() || n > 0 && !rows.len().is_multiple_of(n) {
            return Err(Error::DimensionMismatch(format!("{} entries are not rows of length {n}", rows.len())));
        }
        if rows.iter().any(|&x| x as u32 >= field.q()) {
            return Err(Error::MalformedBlock(format!("entry outside 0..{}", field.q())));
        }
        let nrows = if n == 0 { 0 } else { rows.len() / n };
        let mut work = rows.to_vec();
        let dim = field.rref(&mut work, nrows, n).len();
        work.truncate(dim * n);
        Ok(Subspace { q: field.q(), n, dim, basis: work, index: None })
    }

    /// Like [`Subspace::span`] but insists the rows are independent and `dim` of them.
    pub fn from_basis(field: &FieldSpec, n: usize, dim: usize, rows: &[Elem]) -> Result<Self> {
        if rows.len() != dim * n {
            return Err(Error::MalformedBlock(format!("expected a {dim}x{n} matrix, got {} entries", rows.len())));
        }
        let s = Self::span(field, n, rows)?;
        if s.dim != dim {
            return Err(Error::MalformedBlock(format!("rows span a {}-dimensional space, expected {dim}", s.dim)));
        }
        Ok(s)
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Subspace { q: field.q(), n, dim: 0, basis: Vec::new(), index: None }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major RREF basis, `dim x n`.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[Elem]> {
        self.basis.chunks(self.n.max(1)).take(self.dim)
    }

    pub fn index(&self) -> Option<usize> {
        self.index
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis_rows().map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero")).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::AmbientMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.q, self.n, other.q, other.n
            )));
        }
        Ok(())
    }

    fn stacked(&self, other: &Subspace) -> Vec<Elem> {
        let mut m = self.basis.clone();
        m.extend_from_slice(&other.basis);
        m
    }

    /// `self + other`.
    pub fn sum(&self, field: &FieldSpec, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Subspace::span(field, self.n, &self.stacked(other))
    }

    pub fn contains(&self, field: &FieldSpec, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim > self.dim {
            return Ok(false);
        }
        Ok(field.rank(&self.stacked(other), self.dim + other.dim, self.n) == self.dim)
    }

    pub fn contains_vector(&self, field: &FieldSpec, v: &[Elem]) -> bool {
        let mut m = self.basis.clone();
        m.extend_from_slice(v);
        field.rank(&m, self.dim + 1, self.n) == self.dim
    }

    /// The subspace of `self` spanned by the rows of `coords * basis`, where
    /// `coords` is a `r x dim` coordinate matrix.
    pub fn image(&self, field: &FieldSpec, coords: &[Elem], r: usize) -> Result<Subspace> {
        let rows = field.mat_mul(coords, &self.basis, r, self.dim, self.n);
        Subspace::span(field, self.n, &rows)
    }
}

/// `dim(a ∩ b) = dim a + dim b - rank [a; b]`.
pub fn intersection_dim(field: &FieldSpec, a: &Subspace, b: &Subspace) -> Result<usize> {
    a.check_compatible(b)?;
    if a.q != field.q() {
        return Err(Error::AmbientMismatch(format!("subspace over F_{} used with F_{}", a.q, field.q())));
    }
    let r = field.rank(&a.stacked(b), a.dim + b.dim, a.n);
    Ok(a.dim + b.dim - r)
}

/// Pivot sets of size `k` in `0..n`, colexicographic order.
pub(crate) fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).find(|&i| c[i] + 1 < if i + 1 < k { c[i + 1] } else { n }) else {
            return out;
        };
        c[i] += 1;
        for (j, slot) in c.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// Positions of the free (non-pivot) entries of an RREF matrix with the given
/// pivots, in row-major order.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        for col in p + 1..n {
            if !pivots.contains(&col) {
                out.push((row, col));
            }
        }
    }
    out
}

fn pivot_mask(pivots: &[usize]) -> u64 {
    pivots.iter().fold(0u64, |m, &p| m | 1 << p)
}

/// Lazy canonical enumeration of `Gr_{n,k}(F_q)`.
///
/// Order: pivot sets in colexicographic order, then the free entries read
/// row-major as base-q digits, most significant first.
pub struct SubspaceIter<'a> {
    field: &'a FieldSpec,
    n: usize,
    k: usize,
    pivot_sets: std::vec::IntoIter<Vec<usize>>,
    current: Option<(Vec<usize>, Vec<(usize, usize)>, Vec<Elem>)>,
    next_index: usize,
}

impl<'a> SubspaceIter<'a> {
    pub fn new(field: &'a FieldSpec, n: usize, k: usize) -> Self {
        SubspaceIter { field, n, k, pivot_sets: colex_subsets(n, k).into_iter(), current: None, next_index: 0 }
    }

    fn build(&self, pivots: &[usize], free: &[(usize, usize)], digits: &[Elem]) -> Subspace {
        let mut basis = vec![0; self.k * self.n];
        for (row, &p) in pivots.iter().enumerate() {
            basis[row * self.n + p] = 1;
        }
        for (&(row, col), &d) in free.iter().zip(digits) {
            basis[row * self.n + col] = d;
        }
        Subspace { q: self.field.q(), n: self.n, dim: self.k, basis, index: Some(self.next_index) }
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if let Some((pivots, free, digits)) = &self.current {
                let s = self.build(pivots, free, digits);
                self.next_index += 1;
                // odometer: last free position is least significant
                let q = self.field.q() as Elem;
                let (_, _, digits) = self.current.as_mut().unwrap();
                let mut pos = digits.len();
                loop {
                    if pos == 0 {
                        self.current = None;
                        break;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < q {
                        break;
                    }
                    digits[pos] = 0;
                }
                return Some(s);
            }
            let pivots = self.pivot_sets.next()?;
            let free = free_positions(self.n, &pivots);
            let digits = vec![0; free.len()];
            self.current = Some((pivots, free, digits));
        }
    }
}

/// All `k`-dimensional subspaces of `F_q^n` in canonical order, each tagged
/// with its position.
pub fn enumerate_subspaces(n: usize, k: usize, field: &FieldSpec) -> Vec<Subspace> {
    SubspaceIter::new(field, n, k).collect()
}

/// Canonical index of a `k`-subspace of `F_q^n` without enumerating.
#[derive(Clone, Debug)]
pub struct GrassmannIndexer {
    n: usize,
    k: usize,
    q: u32,
    offsets: HashMap<u64, usize>,
    /// `(offset, pivots)` in canonical order, for decoding.
    blocks: Vec<(usize, Vec<usize>)>,
    total: usize,
}

impl GrassmannIndexer {
    pub fn new(field: &FieldSpec, n: usize, k: usize) -> Result<Self> {
        let mut offsets = HashMap::new();
        let mut blocks = Vec::new();
        let mut total: usize = 0;
        for pivots in colex_subsets(n, k) {
            offsets.insert(pivot_mask(&pivots), total);
            blocks.push((total, pivots.clone()));
            let free = free_positions(n, &pivots).len() as u32;
            let block = (field.q() as usize)
                .checked_pow(free)
                .ok_or_else(|| Error::GuardExceeded(format!("Gr_{{{n},{k}}}(F_{}) is too large to index", field.q())))?;
            total = total
                .checked_add(block)
                .ok_or_else(|| Error::GuardExceeded(format!("Gr_{{{n},{k}}}(F_{}) is too large to index", field.q())))?;
        }
        Ok(GrassmannIndexer { n, k, q: field.q(), offsets, blocks, total })
    }

    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn index_of(&self, s: &Subspace) -> Result<usize> {
        if s.n != self.n || s.dim != self.k || s.q != self.q {
            return Err(Error::AmbientMismatch(format!(
                "{}-subspace of F_{}^{} indexed in Gr_{{{},{}}}(F_{})",
                s.dim, s.q, s.n, self.n, self.k, self.q
            )));
        }
        let pivots = s.pivots();
        let offset = self.offsets[&pivot_mask(&pivots)];
        let value = free_positions(self.n, &pivots)
            .iter()
            .fold(0usize, |acc, &(row, col)| acc * self.q as usize + s.basis[row * self.n + col] as usize);
        Ok(offset + value)
    }

    /// The subspace at a canonical index.
    pub fn subspace_at(&self, index: usize) -> Result<Subspace> {
        if index >= self.total {
            return Err(Error::IndexOutOfRange { index, max: self.total.saturating_sub(1) });
        }
        let pos = self.blocks.partition_point(|(offset, _)| *offset <= index) - 1;
        let (offset, pivots) = &self.blocks[pos];
        let free = free_positions(self.n, pivots);
        let mut value = index - offset;
        let mut basis = vec![0; self.k * self.n];
        for (row, &p) in pivots.iter().enumerate() {
            basis[row * self.n + p] = 1;
        }
        for &(row, col) in free.iter().rev() {
            basis[row * self.n + col] = (value % self.q as usize) as Elem;
            value /= self.q as usize;
        }
        Ok(Subspace { q: self.q, n: self.n, dim: self.k, basis, index: Some(index) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::gauss_binom_usize;
    use std::collections::HashSet;

    #[test]
    fn colex_order() {
        assert_eq!(
            colex_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(colex_subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(colex_subsets(2, 3).is_empty());
    }

    #[test]
    fn zero_space_only() {
        let f = FieldSpec::new(3).unwrap();
        let all = enumerate_subspaces(5, 0, &f);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].dim(), 0);
    }

    #[test]
    fn counts_match_brute_force_spans() {
        let f = FieldSpec::new(2).unwrap();
        // every pair of vectors of F_2^4, deduplicated by span
        let mut spans = HashSet::new();
        for a in 0..16u16 {
            for b in 0..16u16 {
                let rows: Vec<Elem> = (0..4).map(|i| (a >> i) & 1).chain((0..4).map(|i| (b >> i) & 1)).collect();
                let s = Subspace::span(&f, 4, &rows).unwrap();
                if s.dim() == 2 {
                    spans.insert(s);
                }
            }
        }
        assert_eq!(spans.len(), 35);
        let listed: HashSet<_> = enumerate_subspaces(4, 2, &f).into_iter().collect();
        assert_eq!(listed, spans);
    }

    #[test]
    fn points_of_pg3_3() {
        let f = FieldSpec::new(3).unwrap();
        assert_eq!(enumerate_subspaces(4, 1, &f).len(), 40);
    }

    #[test]
    fn indexer_agrees_with_enumeration() {
        for q in [2u64, 3, 4] {
            let f = FieldSpec::new(q).unwrap();
            for n in 0..=4 {
                for k in 0..=n {
                    let idx = GrassmannIndexer::new(&f, n, k).unwrap();
                    let all = enumerate_subspaces(n, k, &f);
                    assert_eq!(idx.len(), all.len());
                    assert_eq!(Some(all.len()), gauss_binom_usize(n as u64, k as u64, q));
                    for (i, s) in all.iter().enumerate() {
                        assert_eq!(s.index(), Some(i));
                        assert_eq!(idx.index_of(s).unwrap(), i);
                        assert_eq!(&idx.subspace_at(i).unwrap(), s);
                    }
                }
            }
        }
    }

    #[test]
    fn intersections_in_pg3_2() {
        let f = FieldSpec::new(2).unwrap();
        let lines = enumerate_subspaces(4, 2, &f);
        for x in &lines {
            assert_eq!(intersection_dim(&f, x, x).unwrap(), 2);
            let mut by_dim = [0usize; 3];
            for y in &lines {
                by_dim[intersection_dim(&f, x, y).unwrap()] += 1;
            }
            assert_eq!(by_dim, [16, 18, 1]);
        }
        // two lines through the point e0
        let a = Subspace::from_basis(&f, 4, 2, &[1, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        let b = Subspace::from_basis(&f, 4, 2, &[1, 0, 0, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(intersection_dim(&f, &a, &b).unwrap(), 1);
    }

    #[test]
    fn ambient_mismatch() {
        let f = FieldSpec::new(2).unwrap();
        let a = Subspace::zero(&f, 3);
        let b = Subspace::zero(&f, 4);
        assert!(matches!(intersection_dim(&f, &a, &b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn malformed_basis() {
        let f = FieldSpec::new(2).unwrap();
        assert!(matches!(
            Subspace::from_basis(&f, 3, 2, &[1, 0, 0, 1, 0, 0]),
            Err(Error::MalformedBlock(_))
        ));
        assert!(Subspace::from_basis(&f, 3, 1, &[2, 0, 0]).is_err());
    }
}
