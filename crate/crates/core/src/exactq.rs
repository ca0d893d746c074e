//! Exact q-analog arithmetic evaluated at a concrete prime power `q`.
//!
//! Every scalar is an [`ExactRational`]; nothing in this crate touches floating
//! point. Gaussian binomials accept any integer upper index, which is what the
//! hypergeometric manipulations downstream need (e.g. `[-1 a]`).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = BigRational;

/// The value `q^exponent`, used for the parameters of basic hypergeometric series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QExponent(pub i64);

impl QExponent {
    pub fn value(self, q: u64) -> ExactRational {
        q_pow(q, self.0)
    }
}

impl From<i64> for QExponent {
    fn from(e: i64) -> Self {
        QExponent(e)
    }
}

/// q-adic valuation: a natural number, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `num/den`, always with an explicit denominator.
pub fn fraction_string(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Result<ExactRational> {
    let bad = || Error::Parse(format!("not a fraction: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(ExactRational::new(n, d))
}

/// serde adapter writing an [`ExactRational`] as a fraction string.
pub fn serialize_fraction<S: Serializer>(x: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_string(x))
}

pub fn serialize_fractions<S: Serializer>(
    xs: &[ExactRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fraction_string))
}

/// Returns `true` when `x` has denominator 1.
pub fn is_integral(x: &ExactRational) -> bool {
    x.denom().is_one()
}

/// Splits `q` into `(p, e)` with `q = p^e`, by trial division.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_ok()
}

/// `q^e` for any integer `e`.
pub fn q_pow(q: u64, e: i64) -> ExactRational {
    let base = BigInt::from(q);
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        ExactRational::from_integer(mag)
    } else {
        ExactRational::new(BigInt::one(), mag)
    }
}

pub fn q_pow_int(q: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// Ordinary binomial coefficient `C(n, k)` for `n >= 0`; zero when `k` is out of range.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `C(x, 2)` for any integer, i.e. `x(x-1)/2`.
pub fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

thread_local! {
    static BINOM_CACHE: RefCell<HashMap<(i64, i64, u64), ExactRational>> = RefCell::new(HashMap::new());
}

/// Gaussian binomial `[n k]_q` for arbitrary integers.
///
/// `k < 0` gives 0 and `k = 0` gives 1; otherwise the k-fold product
/// `prod (q^{n-i} - 1)/(q^{k-i} - 1)`, which is rational when `n < 0`.
pub fn gauss_binom(n: i64, k: i64, q: u64) -> ExactRational {
    debug_assert!(q >= 2);
    if k < 0 {
        return ExactRational::zero();
    }
    if k == 0 {
        return ExactRational::one();
    }
    if n >= 0 && k > n {
        return ExactRational::zero();
    }
    if n.abs() <= 96 && k <= 96 {
        if let Some(v) = BINOM_CACHE.with(|c| c.borrow().get(&(n, k, q)).cloned()) {
            return v;
        }
    }
    let v = gauss_binom_uncached(n, k, q);
    if n.abs() <= 96 && k <= 96 {
        BINOM_CACHE.with(|c| c.borrow_mut().insert((n, k, q), v.clone()));
    }
    v
}

fn gauss_binom_uncached(n: i64, k: i64, q: u64) -> ExactRational {
    if n >= 0 {
        // Integer path: numerator and denominator products, one final division.
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..k {
            num *= q_pow_int(q, (n - i) as u32) - 1;
            den *= q_pow_int(q, (k - i) as u32) - 1;
        }
        let (quot, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero());
        return ExactRational::from_integer(quot);
    }
    let one = ExactRational::one();
    let mut acc = ExactRational::one();
    for i in 0..k {
        acc *= (q_pow(q, n - i) - &one) / (q_pow(q, k - i) - &one);
    }
    acc
}

/// Integer-valued Gaussian binomial for `0 <= k <= n`.
pub fn gauss_binom_u(n: u64, k: u64, q: u64) -> BigUint {
    gauss_binom(n as i64, k as i64, q)
        .to_integer()
        .to_biguint()
        .expect("Gaussian binomial with n >= 0 is a natural number")
}

/// Small Gaussian binomial as a machine integer, `None` on overflow.
pub fn gauss_binom_usize(n: u64, k: u64, q: u64) -> Option<usize> {
    gauss_binom_u(n, k, q).to_usize()
}

/// q-integer `[n]_q = (q^n - 1)/(q - 1)`.
pub fn q_int(n: i64, q: u64) -> ExactRational {
    (q_pow(q, n) - ExactRational::one()) / rat(q as i64 - 1)
}

/// q-Pochhammer symbol `(q^a; q)_n = prod_{i<n} (1 - q^{a+i})`.
pub fn q_pochhammer(a: QExponent, n: u64, q: u64) -> ExactRational {
    let one = ExactRational::one();
    let mut acc = ExactRational::one();
    for i in 0..n as i64 {
        let factor = &one - q_pow(q, a.0 + i);
        if factor.is_zero() {
            return ExactRational::zero();
        }
        acc *= factor;
    }
    acc
}

/// q-adic valuation of an integer: index of the lowest nonzero base-q digit of `|m|`.
pub fn v_q(m: &BigInt, q: u64) -> Valuation {
    if m.is_zero() {
        return Valuation::Infinite;
    }
    let q = BigInt::from(q);
    let mut rest = m.abs();
    let mut v = 0u32;
    loop {
        let (quot, rem) = rest.div_rem(&q);
        if !rem.is_zero() {
            return Valuation::Finite(v);
        }
        rest = quot;
        v += 1;
    }
}

/// [`v_q`] of a rational that must be an integer.
pub fn v_q_rational(m: &ExactRational, q: u64) -> Result<Valuation> {
    if !is_integral(m) {
        return Err(Error::InvalidParams(format!(
            "q-adic valuation needs an integer, got {}",
            fraction_string(m)
        )));
    }
    Ok(v_q(m.numer(), q))
}
