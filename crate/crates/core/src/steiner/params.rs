use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{fraction_string, gauss_binom, gauss_binom_usize, is_integral, rat, ExactRational};
use crate::gfspaces::FieldSpec;

/// The parameters `(t, k, n, q)` of a q-Steiner system, with `1 <= t < k <= n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSet {
    t: usize,
    k: usize,
    n: usize,
    field: FieldSpec,
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{}({}, {}, {})", self.q(), self.t, self.k, self.n)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ParamSet {
    pub fn new(t: usize, k: usize, n: usize, q: u64) -> Result<Self> {
        if !(1 <= t && t < k && k <= n) {
            return Err(Error::InvalidParams(format!("need 1 <= t < k <= n, got t={t} k={k} n={n}")));
        }
        Ok(ParamSet { t, k, n, field: FieldSpec::new(q)? })
    }

    /// Like [`ParamSet::new`] but allowing `t = k`, for trivial designs.
    pub fn new_allow_trivial(t: usize, k: usize, n: usize, q: u64) -> Result<Self> {
        if !(1 <= t && t <= k && k <= n) {
            return Err(Error::InvalidParams(format!("need 1 <= t <= k <= n, got t={t} k={k} n={n}")));
        }
        Ok(ParamSet { t, k, n, field: FieldSpec::new(q)? })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn tkn(&self) -> (i64, i64, i64) {
        (self.t as i64, self.k as i64, self.n as i64)
    }

    /// `lambda * [n-i t-i] / [k-i t-i]`: every `i`-space lies in this many blocks.
    pub fn lambda_i(&self, i: usize, lambda: u64) -> ExactRational {
        let (t, k, n) = self.tkn();
        let i = i as i64;
        rat(lambda as i64) * gauss_binom(n - i, t - i, self.q()) / gauss_binom(k - i, t - i, self.q())
    }

    /// Number of blocks of a Steiner system, `[n t] / [k t]`.
    pub fn block_count(&self) -> ExactRational {
        self.lambda_i(0, 1)
    }

    /// Divisibility conditions: every `lambda_i`, `0 <= i <= t`, is an integer.
    pub fn is_admissible(&self, lambda: u64) -> bool {
        (0..=self.t).all(|i| is_integral(&self.lambda_i(i, lambda)))
    }

    pub fn is_nontrivial_range(&self) -> bool {
        self.n >= 2 * self.k
    }

    /// `[n k]_q`: the number of candidate blocks.
    pub fn block_space(&self) -> Option<usize> {
        gauss_binom_usize(self.n as u64, self.k as u64, self.q())
    }

    /// `[n t]_q`: the number of t-subspaces to cover.
    pub fn point_space(&self) -> Option<usize> {
        gauss_binom_usize(self.n as u64, self.t as u64, self.q())
    }

    /// The conditions every pipeline run insists on.
    pub fn require_pipeline(&self) -> Result<()> {
        if !self.is_admissible(1) {
            let bad = (0..=self.t).find(|&i| !is_integral(&self.lambda_i(i, 1))).unwrap_or(0);
            let (t, k, n) = self.tkn();
            let i = bad as i64;
            return Err(Error::InvalidParams(format!(
                "{self} is inadmissible: [{} {}]_q = {} does not divide [{} {}]_q = {}",
                k - i,
                t - i,
                gauss_binom(k - i, t - i, self.q()),
                n - i,
                t - i,
                gauss_binom(n - i, t - i, self.q()),
            )));
        }
        if !self.is_nontrivial_range() {
            return Err(Error::InvalidParams(format!("{self} needs n >= 2k")));
        }
        Ok(())
    }
}

/// Free-function form of [`ParamSet::lambda_i`].
pub fn lambda_i(params: &ParamSet, i: usize, lambda: u64) -> ExactRational {
    params.lambda_i(i, lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSummary {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    pub q: u64,
    pub admissible: bool,
    pub n_at_least_2k: bool,
    pub lambdas: Vec<String>,
}

impl From<&ParamSet> for ParamSummary {
    fn from(p: &ParamSet) -> Self {
        ParamSummary {
            t: p.t,
            k: p.k,
            n: p.n,
            q: p.q(),
            admissible: p.is_admissible(1),
            n_at_least_2k: p.is_nontrivial_range(),
            lambdas: (0..=p.t).map(|i| fraction_string(&p.lambda_i(i, 1))).collect(),
        }
    }
}
