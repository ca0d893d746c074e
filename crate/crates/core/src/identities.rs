//! Exact two-sided evaluation of the q-series identities behind the Gram
//! spectrum. Each check sums both displayed sides term by term and compares.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{
    choose2, fraction_string, gauss_binom, q_int, q_pochhammer, q_pow, rat, rat_frac, serialize_fraction, sign,
    v_q_rational, ExactRational, QExponent, Valuation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub parameters: BTreeMap<String, i64>,
    #[serde(serialize_with = "serialize_fraction")]
    pub lhs: ExactRational,
    #[serde(serialize_with = "serialize_fraction")]
    pub rhs: ExactRational,
    /// Second right-hand side, for identities stated with two.
    #[serde(serialize_with = "serialize_opt_fraction", skip_serializing_if = "Option::is_none")]
    pub rhs_alt: Option<ExactRational>,
    pub equal: bool,
}

fn serialize_opt_fraction<S: serde::Serializer>(x: &Option<ExactRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&fraction_string(x)),
        None => s.serialize_none(),
    }
}

impl IdentityReport {
    fn new(name: &str, params: &[(&str, i64)], lhs: ExactRational, rhs: ExactRational) -> Self {
        let equal = lhs == rhs;
        IdentityReport {
            identity_name: name.to_string(),
            parameters: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            rhs_alt: None,
            equal,
        }
    }

    pub fn parameter_string(&self) -> String {
        self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}

/// Shorthands bound to one `q`.
#[derive(Clone, Copy)]
struct Q(u64);

impl Q {
    fn bin(self, n: i64, k: i64) -> ExactRational {
        gauss_binom(n, k, self.0)
    }
    fn pow(self, e: i64) -> ExactRational {
        q_pow(self.0, e)
    }
    fn poch(self, a: i64, n: i64) -> ExactRational {
        q_pochhammer(QExponent(a), n as u64, self.0)
    }
    fn nonzero(self, n: i64, k: i64, what: &str) -> Result<ExactRational> {
        let v = self.bin(n, k);
        if v.is_zero() {
            return Err(Error::VanishingDenominator(format!("{what}: [{n} {k}]_{} = 0", self.0)));
        }
        Ok(v)
    }
}

fn sgn(e: i64) -> ExactRational {
    rat(sign(e))
}

/// Terminating basic hypergeometric series `3phi2(a1,a2,a3; b1,b2; q, z)`
/// with every parameter a power of `q`.
pub fn eval_3phi2(upper: [QExponent; 3], lower: [QExponent; 2], z: QExponent, q: u64) -> Result<ExactRational> {
    let m = upper.iter().filter(|e| e.0 <= 0).map(|e| -e.0).min().ok_or(Error::NonTerminating)?;
    if let Some(b) = lower.iter().find(|b| b.0 <= 0 && -b.0 < m) {
        return Err(Error::VanishingDenominator(format!(
            "lower parameter q^{} vanishes before the series ends at {m}",
            b.0
        )));
    }
    let mut sum = ExactRational::zero();
    for l in 0..=m as u64 {
        let num: ExactRational = upper.iter().map(|a| q_pochhammer(*a, l, q)).product();
        let den: ExactRational =
            lower.iter().map(|b| q_pochhammer(*b, l, q)).product::<ExactRational>() * q_pochhammer(QExponent(1), l, q);
        sum += num / den * q_pow(q, z.0 * l as i64);
    }
    Ok(sum)
}

/// The `3phi2` transformation with argument `q`.
///
/// Requires `(q^e; q)_n != 0` for every lower parameter `q^e` of either side
/// (`c`, `d` and `cd/ab`), over the whole length `n` of `q^{-n}`.
pub fn check_transf32(n: u64, a: QExponent, b: QExponent, c: QExponent, d: QExponent, q: u64) -> Result<IdentityReport> {
    let ni = n as i64;
    let e = c.0 + d.0 - a.0 - b.0;
    for (name, low) in [("c", c.0), ("d", d.0), ("cd/ab", e)] {
        if low <= 0 && -low < ni {
            return Err(Error::VanishingDenominator(format!("({name};q)_{n} = 0 with {name} = q^{low}")));
        }
    }
    let one = QExponent(1);
    let lhs = eval_3phi2([QExponent(-ni), a, b], [c, d], one, q)?;
    let prefactor = q_pochhammer(QExponent(e), n, q) / q_pochhammer(d, n, q) * q_pow(q, (a.0 + b.0 - c.0) * ni);
    let rhs = prefactor * eval_3phi2([QExponent(-ni), QExponent(c.0 - a.0), QExponent(c.0 - b.0)], [c, QExponent(e)], one, q)?;
    Ok(IdentityReport::new("transf32", &[("n", ni), ("a", a.0), ("b", b.0), ("c", c.0), ("d", d.0), ("q", q as i64)], lhs, rhs))
}

/// Gaussian binomial / Pochhammer relations, each reported only where it is stated to hold.
pub fn check_poch_suite(n: i64, k: i64, q: u64) -> Vec<IdentityReport> {
    let z = Q(q);
    let params = [("n", n), ("k", k), ("q", q as i64)];
    let mut out = Vec::new();
    if 0 <= k && k <= n {
        let rhs = z.poch(1, n) / (z.poch(1, k) * z.poch(1, n - k));
        out.push(IdentityReport::new("qbin_only_poch", &params, z.bin(n, k), rhs));
    }
    if n >= 0 {
        let rhs = z.poch(k + 1, n) / z.poch(1, n);
        out.push(IdentityReport::new("qbin_only_poch_sum", &params, z.bin(n + k, n), rhs));
    }
    if k >= 0 {
        let rhs = z.poch(-n, k) / z.poch(1, k) * sgn(k) * z.pow(k * n - choose2(k));
        out.push(IdentityReport::new("qbin_poch", &params, z.bin(n, k), rhs));
    }
    if 0 <= k && k <= n {
        let rhs = z.poch(1, n) / z.poch(-n, k) * sgn(k) * z.pow(choose2(k) - n * k);
        out.push(IdentityReport::new("poch_diff", &params, z.poch(1, n - k), rhs));
    }
    if n >= 0 && k >= 0 {
        let rhs = z.poch(1, n) * z.poch(n + 1, k);
        out.push(IdentityReport::new("poch_sum", &params, z.poch(1, n + k), rhs));
    }
    if k >= 0 {
        let rhs = sgn(k) * z.pow(k * n - choose2(k)) * z.bin(k - n - 1, k);
        out.push(IdentityReport::new("uppernegation", &params, z.bin(n, k), rhs));
    }
    out
}

pub fn check_q_binomial_theorem(n: u64, x: &ExactRational, y: &ExactRational, q: u64) -> IdentityReport {
    let z = Q(q);
    let n = n as i64;
    let lhs: ExactRational = (0..=n)
        .map(|k| z.bin(n, k) * z.pow(choose2(k)) * num_traits::pow(x.clone(), k as usize) * num_traits::pow(y.clone(), (n - k) as usize))
        .sum();
    let rhs: ExactRational = (0..n).map(|i| x * z.pow(i) + y).product();
    let params = [
        ("n", n),
        ("x_num", i64::try_from(x.numer()).unwrap_or(i64::MAX)),
        ("x_den", i64::try_from(x.denom()).unwrap_or(i64::MAX)),
        ("y_num", i64::try_from(y.numer()).unwrap_or(i64::MAX)),
        ("y_den", i64::try_from(y.denom()).unwrap_or(i64::MAX)),
        ("q", q as i64),
    ];
    IdentityReport::new("q_binomial_theorem", &params, lhs, rhs)
}

/// Both right-hand sides of the three-term expansion of `[x h][y-x p-h]`;
/// the second one is carried in `rhs_alt`.
pub fn check_kurihara(x: i64, y: i64, h: i64, p: i64, q: u64) -> Result<IdentityReport> {
    if !(0 <= h && h <= p) {
        return Err(Error::InvalidParams(format!("need 0 <= h <= p, got h={h} p={p}")));
    }
    let z = Q(q);
    let lhs = z.bin(x, h) * z.bin(y - x, p - h);
    let first: ExactRational = (h..=p)
        .map(|v| sgn(v - h) * z.bin(v, h) * z.bin(y - v, p - v) * z.bin(x, v) * z.pow(-(p - h) * (x - h) + choose2(v - h)))
        .sum();
    let second: ExactRational = (h..=p)
        .map(|v| {
            sgn(v - h) * z.bin(v, h) * z.bin(y - v, p - v) * z.bin(x, v) * z.pow((v - h) * (y - x - p + h) + choose2(v - h + 1))
        })
        .sum();
    let mut report = IdentityReport::new("kurihara", &[("x", x), ("y", y), ("h", h), ("p", p), ("q", q as i64)], lhs, first);
    report.equal = report.lhs == report.rhs && report.lhs == second;
    report.rhs_alt = Some(second);
    Ok(report)
}

pub fn check_lv_wang(x: i64, a: u64, q: u64) -> IdentityReport {
    let z = Q(q);
    let a = a as i64;
    let lhs: ExactRational = (0..=a).map(|v| sgn(v) * z.bin(x, v) * z.pow(choose2(v))).sum();
    let rhs = z.pow(x * a) * z.bin(a - x, a);
    IdentityReport::new("lv_wang", &[("x", x), ("a", a), ("q", q as i64)], lhs, rhs)
}

fn require_r(n: i64, r: i64) -> Result<()> {
    if r > n + 1 {
        return Err(Error::InvalidParams(format!("need r <= n+1, got n={n} r={r}")));
    }
    Ok(())
}

pub fn check_identity1(n: i64, r: i64, k: i64, u: i64, i: i64, q: u64) -> Result<IdentityReport> {
    require_r(n, r)?;
    if u < 0 {
        return Err(Error::InvalidParams(format!("need u >= 0, got {u}")));
    }
    let z = Q(q);
    let mut lhs = ExactRational::zero();
    for s in 0..=u {
        let den = z.nonzero(r - i + s, s, "identity1")?;
        lhs += sgn(s) * z.pow(choose2(u - s)) * z.bin(n - r + 1, u - s) * num_traits::pow(z.bin(k - i + s, s), 2) / den;
    }
    let mut sum = ExactRational::zero();
    for s in 0..=u {
        let den = z.nonzero(r - i + s, s, "identity1")?;
        sum += sgn(s) * z.pow(choose2(u - s) + s * (2 * r - 2 * k + s - 1)) * z.bin(n - 2 * k + i, u - s) * num_traits::pow(z.bin(k - r, s), 2)
            / den;
    }
    let rhs = z.pow(u * (2 * k - i - r + 1)) * sum;
    Ok(IdentityReport::new("identity1", &[("n", n), ("r", r), ("k", k), ("u", u), ("i", i), ("q", q as i64)], lhs, rhs))
}

pub fn check_identity2(n: i64, r: i64, k: i64, i: i64, q: u64) -> Result<IdentityReport> {
    require_r(n, r)?;
    if i < 0 {
        return Err(Error::InvalidParams(format!("need i >= 0, got {i}")));
    }
    let z = Q(q);
    let mut sum = ExactRational::zero();
    for s in 0..=i {
        let den = z.nonzero(n - r - i + s + 1, s, "identity2")?;
        sum += sgn(s) * z.pow(choose2(i - s)) * z.bin(r, i - s) * num_traits::pow(z.bin(k - i + s, s), 2) / den;
    }
    let lhs = z.bin(n - r + 1, i) * sum;
    let mut sum = ExactRational::zero();
    for s in 0..=i {
        let den = z.nonzero(n - 2 * k + s, s, "identity2")?;
        sum += sgn(s) * z.pow(choose2(i - s) + s * (2 * r - 2 * k + s - 1)) * z.bin(r, i - s) * num_traits::pow(z.bin(k - r, s), 2) / den;
    }
    let rhs = z.pow(i * (2 * k - r - i + 1)) * z.bin(n - 2 * k + i, i) * sum;
    Ok(IdentityReport::new("identity2", &[("n", n), ("r", r), ("k", k), ("i", i), ("q", q as i64)], lhs, rhs))
}

fn require_t(t: i64) -> Result<()> {
    if t < 0 {
        return Err(Error::InvalidParams(format!("need t >= 0, got {t}")));
    }
    Ok(())
}

pub fn check_identity3(n: i64, r: i64, k: i64, t: i64, q: u64) -> Result<IdentityReport> {
    require_t(t)?;
    require_r(n, r)?;
    let z = Q(q);
    let mut lhs = ExactRational::zero();
    for i in 0..=t {
        for s in 0..=i {
            let den = z.nonzero(k, i, "identity3")? * z.nonzero(n - 2 * k + s, s, "identity3")?;
            lhs += sgn(s)
                * z.pow(i * (2 * k - t - r + 1) + choose2(s) + s * (2 * r - 2 * k + s - i))
                * z.bin(n - 2 * k + i, i)
                * z.bin(k - i, t - i)
                * z.bin(r, i - s)
                * num_traits::pow(z.bin(k - r, s), 2)
                / den;
        }
    }
    let rhs = z.bin(r, t) * z.bin(n - r + 1, t) / z.nonzero(k, t, "identity3")?;
    Ok(IdentityReport::new("identity3", &[("n", n), ("r", r), ("k", k), ("t", t), ("q", q as i64)], lhs, rhs))
}

pub fn check_threesums1(n: i64, k: i64, r: i64, t: i64, q: u64) -> Result<IdentityReport> {
    require_t(t)?;
    require_r(n, r)?;
    let z = Q(q);
    let mut lhs = ExactRational::zero();
    for i in 0..=t {
        for j in 0..=t - i {
            for s in 0..=i {
                let den = z.nonzero(k, i, "threesums1")?
                    * z.nonzero(k - i - j, t - i - j, "threesums1")?
                    * z.nonzero(n - 2 * k + s, s, "threesums1")?;
                lhs += sgn(i + j + s)
                    * z.pow(-(k - i) * (k - i) + choose2(j) + choose2(s + r - i) + (k - s - r) * (k - s))
                    * z.bin(n - 2 * k + i, i)
                    * z.bin(k - i, j)
                    * z.bin(n - i - j, t - i - j)
                    * z.bin(r, i - s)
                    * num_traits::pow(z.bin(k - r, s), 2)
                    / den;
            }
        }
    }
    let rhs = sgn(t) * z.pow(choose2(r) - k * r + choose2(t + 1)) * z.bin(r - 1, t) * z.bin(n - r, t)
        / z.nonzero(k, t, "threesums1")?;
    Ok(IdentityReport::new("threesums1", &[("n", n), ("k", k), ("r", r), ("t", t), ("q", q as i64)], lhs, rhs))
}

pub fn check_threesums2(n: i64, k: i64, r: i64, t: i64, q: u64) -> Result<IdentityReport> {
    require_t(t)?;
    require_r(n, r)?;
    let z = Q(q);
    let c = |a: i64| -> Result<ExactRational> {
        if a == t {
            return Ok(z.pow(choose2(t + 1)));
        }
        let den = q_int(k - a, q);
        if den.is_zero() {
            return Err(Error::VanishingDenominator(format!("threesums2: [{}]_{q} = 0", k - a)));
        }
        Ok(z.pow(choose2(a + 1) + n - a) * q_int(k - n, q) / den)
    };
    let mut lhs = ExactRational::zero();
    for a in 0..=t {
        lhs += sgn(a) * c(a)? * z.bin(r - 1, a) * z.bin(n - r, a) / z.nonzero(k, a, "threesums2")?;
    }
    let mut rhs = ExactRational::zero();
    for i in 0..=t {
        for j in 0..=t - i {
            for s in 0..=i {
                let den = z.nonzero(k, i, "threesums2")? * z.nonzero(n - 2 * k + s, s, "threesums2")?;
                rhs += sgn(i + j + s)
                    * z.pow(-choose2(r) + k * r - (k - i) * (k - i) + choose2(j) + choose2(s + r - i) + (k - s - r) * (k - s))
                    * z.bin(n - 2 * k + i, i)
                    * z.bin(k - i, j)
                    * z.bin(r, i - s)
                    * num_traits::pow(z.bin(k - r, s), 2)
                    / den;
            }
        }
    }
    Ok(IdentityReport::new("threesums2", &[("n", n), ("k", k), ("r", r), ("t", t), ("q", q as i64)], lhs, rhs))
}

/// The sum that makes `mu_r` vanish. Both sides are reported for every
/// `r >= 1`; they agree on `1 <= r <= t`.
pub fn check_mu_zero_identity(n: i64, k: i64, t: i64, r: i64, q: u64) -> Result<IdentityReport> {
    if r < 1 {
        return Err(Error::InvalidParams(format!("need r >= 1, got {r}")));
    }
    let z = Q(q);
    let lhs: ExactRational =
        (0..t).map(|i| sgn(i) * z.pow(choose2(i)) * z.bin(k - i - 1, r - i - 1) * z.bin(n - r, i)).sum();
    let rhs = sgn(r - 1) * z.pow(k * r - k - choose2(r)) * z.bin(n - k - 1, r - 1);
    Ok(IdentityReport::new("mu_zero", &[("n", n), ("k", k), ("t", t), ("r", r), ("q", q as i64)], lhs, rhs))
}

/// q-adic valuation of the left-hand side of [`check_mu_zero_identity`].
pub fn mu_zero_lhs_valuation(n: i64, k: i64, t: i64, r: i64, q: u64) -> Result<Valuation> {
    v_q_rational(&check_mu_zero_identity(n, k, t, r, q)?.lhs, q)
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedTuple {
    pub identity_name: String,
    pub parameters: BTreeMap<String, i64>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepResult {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<SkippedTuple>,
}

impl SweepResult {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityReport> {
        self.reports.iter().filter(|r| !r.equal)
    }

    pub fn all_equal(&self) -> bool {
        self.failures().next().is_none()
    }

    fn record(&mut self, name: &str, params: &[(&str, i64)], outcome: Result<IdentityReport>) {
        match outcome {
            Ok(r) => self.reports.push(r),
            Err(e) => self.skipped.push(SkippedTuple {
                identity_name: name.to_string(),
                parameters: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                reason: e.to_string(),
            }),
        }
    }

    /// Per-identity `(checked, failed)` counts.
    pub fn summary(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for r in &self.reports {
            let e = out.entry(r.identity_name.clone()).or_default();
            e.0 += 1;
            e.1 += usize::from(!r.equal);
        }
        out
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        #[derive(Serialize)]
        struct Doc<'a> {
            checked: usize,
            failed: usize,
            skipped: usize,
            reports: &'a [IdentityReport],
            skipped_tuples: &'a [SkippedTuple],
        }
        let doc = Doc {
            checked: self.reports.len(),
            failed: self.failures().count(),
            skipped: self.skipped.len(),
            reports: &self.reports,
            skipped_tuples: &self.skipped,
        };
        serde_json::to_writer_pretty(w, &doc)?;
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["identity", "parameters", "lhs", "rhs", "rhs_alt", "equal"])?;
        for r in &self.reports {
            out.write_record([
                r.identity_name.as_str(),
                &r.parameter_string(),
                &fraction_string(&r.lhs),
                &fraction_string(&r.rhs),
                &r.rhs_alt.as_ref().map(fraction_string).unwrap_or_default(),
                if r.equal { "true" } else { "false" },
            ])?;
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }
}

/// Grid for the full sweep. `max_n = 0` selects nothing.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub qs: Vec<u64>,
    pub max_n: i64,
}

/// Every identity over the grid, in a fixed tuple order. Tuples outside an
/// identity's stated range, or hitting a zero denominator, are logged in
/// `skipped` and not counted as failures.
pub fn sweep(config: &SweepConfig) -> SweepResult {
    let mut res = SweepResult::default();
    let max_n = config.max_n;
    if max_n < 1 {
        return res;
    }
    let small = 4.min(max_n);
    let pairs = [(rat(1), rat(1)), (rat(-1), rat(1)), (rat(2), rat(-3)), (rat_frac(1, 2), rat(3)), (rat_frac(-2, 3), rat_frac(5, 7))];
    for &q in &config.qs {
        let qi = q as i64;
        for n in -max_n..=max_n {
            for k in 0..=max_n {
                res.reports.extend(check_poch_suite(n, k, q));
            }
        }
        for n in 0..=max_n as u64 {
            for (x, y) in &pairs {
                res.reports.push(check_q_binomial_theorem(n, x, y, q));
            }
        }
        for n in 0..=small as u64 {
            for a in -2..=3 {
                for b in -2..=3 {
                    for c in -2..=3 {
                        for d in -2..=3 {
                            let p = [("n", n as i64), ("a", a), ("b", b), ("c", c), ("d", d), ("q", qi)];
                            let out = check_transf32(n, QExponent(a), QExponent(b), QExponent(c), QExponent(d), q);
                            res.record("transf32", &p, out);
                        }
                    }
                }
            }
        }
        for x in -3..=max_n {
            for y in -3..=max_n {
                for p in 0..=small {
                    for h in 0..=p {
                        let out = check_kurihara(x, y, h, p, q);
                        res.record("kurihara", &[("x", x), ("y", y), ("h", h), ("p", p), ("q", qi)], out);
                    }
                }
            }
        }
        for x in -max_n..=max_n {
            for a in 0..=small as u64 {
                res.reports.push(check_lv_wang(x, a, q));
            }
        }
        for n in 0..=max_n {
            for k in 0..=n {
                for r in 0..=n + 1 {
                    for i in 0..=small {
                        for u in 0..=small {
                            let p = [("n", n), ("r", r), ("k", k), ("u", u), ("i", i), ("q", qi)];
                            res.record("identity1", &p, check_identity1(n, r, k, u, i, q));
                        }
                        let p = [("n", n), ("r", r), ("k", k), ("i", i), ("q", qi)];
                        res.record("identity2", &p, check_identity2(n, r, k, i, q));
                    }
                    for t in 0..=k {
                        let p = [("n", n), ("r", r), ("k", k), ("t", t), ("q", qi)];
                        res.record("identity3", &p, check_identity3(n, r, k, t, q));
                        res.record("threesums1", &p, check_threesums1(n, k, r, t, q));
                        res.record("threesums2", &p, check_threesums2(n, k, r, t, q));
                    }
                }
                for t in 1..=k {
                    for r in 1..=t {
                        let p = [("n", n), ("k", k), ("t", t), ("r", r), ("q", qi)];
                        res.record("mu_zero", &p, check_mu_zero_identity(n, k, t, r, q));
                    }
                }
            }
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: i64) -> QExponent {
        QExponent(x)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(eval_3phi2([e(0), e(3), e(2)], [e(5), e(4)], e(1), 2).unwrap(), rat(1));
        assert_eq!(eval_3phi2([e(-3), e(0), e(2)], [e(5), e(4)], e(1), 3).unwrap(), rat(1));
        assert!(matches!(eval_3phi2([e(1), e(2), e(3)], [e(5), e(4)], e(1), 2), Err(Error::NonTerminating)));
        assert!(matches!(
            eval_3phi2([e(-3), e(1), e(2)], [e(-1), e(4)], e(1), 2),
            Err(Error::VanishingDenominator(_))
        ));
    }

    #[test]
    fn transf32_examples() {
        let r = check_transf32(0, e(1), e(2), e(3), e(4), 2).unwrap();
        assert!(r.equal && r.lhs == rat(1));
        let r = check_transf32(1, e(1), e(1), e(2), e(2), 2).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, rat_frac(8, 9));
        let r = check_transf32(2, e(1), e(2), e(3), e(4), 3).unwrap();
        assert!(r.equal);
        assert_eq!(r.rhs, rat_frac(155691, 157300));
        assert!(check_transf32(2, e(1), e(1), e(-1), e(2), 2).is_err());
    }

    #[test]
    fn poch_suite_examples() {
        let reports = check_poch_suite(4, 2, 2);
        assert_eq!(reports.len(), 6);
        assert!(reports.iter().all(|r| r.equal));
        assert_eq!(reports[0].lhs, rat(35));
        let diag = check_poch_suite(3, 3, 2);
        let diff = diag.iter().find(|r| r.identity_name == "poch_diff").unwrap();
        assert_eq!(diff.lhs, rat(1));
        let neg = check_poch_suite(-1, 1, 2);
        let up = neg.iter().find(|r| r.identity_name == "uppernegation").unwrap();
        assert!(up.equal);
        assert_eq!(up.lhs, rat_frac(-1, 2));
        assert!(neg.iter().all(|r| r.identity_name != "qbin_only_poch"));
    }

    #[test]
    fn q_binomial_theorem_examples() {
        assert_eq!(check_q_binomial_theorem(0, &rat(3), &rat(5), 2).lhs, rat(1));
        let r = check_q_binomial_theorem(2, &rat(1), &rat(1), 2);
        assert!(r.equal && r.lhs == rat(6));
        let r = check_q_binomial_theorem(3, &rat(-1), &rat(1), 2);
        assert!(r.equal && r.rhs.is_zero());
    }

    #[test]
    fn kurihara_examples() {
        let r = check_kurihara(3, 7, 2, 2, 3).unwrap();
        assert!(r.equal && r.lhs == gauss_binom(3, 2, 3));
        let r = check_kurihara(1, 2, 0, 1, 2).unwrap();
        assert!(r.equal && r.lhs == rat(1) && r.rhs_alt == Some(rat(1)));
        assert!(check_kurihara(2, 5, 1, 2, 3).unwrap().equal);
        assert!(check_kurihara(2, 5, 3, 2, 3).is_err());
    }

    #[test]
    fn lv_wang_examples() {
        assert_eq!(check_lv_wang(5, 0, 3).lhs, rat(1));
        let r = check_lv_wang(1, 1, 2);
        assert!(r.equal && r.lhs.is_zero());
        let r = check_lv_wang(2, 1, 2);
        assert!(r.equal && r.lhs == rat(-2));
    }

    #[test]
    fn numbered_identity_examples() {
        assert!(check_identity1(6, 2, 3, 0, 1, 2).unwrap().equal);
        assert!(check_identity1(6, 2, 3, 1, 1, 2).unwrap().equal);
        assert!(check_identity1(8, 3, 4, 2, 2, 3).unwrap().equal);
        assert!(check_identity2(6, 2, 3, 0, 2).unwrap().equal);
        assert!(check_identity2(6, 2, 3, 1, 2).unwrap().equal);
        assert!(check_identity2(8, 3, 4, 2, 3).unwrap().equal);
        let r = check_identity3(6, 2, 3, 0, 2).unwrap();
        assert!(r.equal && r.lhs == rat(1));
        assert!(check_identity3(6, 2, 3, 1, 2).unwrap().equal);
        assert!(check_identity3(8, 3, 4, 2, 2).unwrap().equal);
        assert!(check_identity1(3, 5, 1, 1, 0, 2).is_err());
    }

    #[test]
    fn threesums_examples() {
        let r = check_threesums1(5, 2, 3, 0, 2).unwrap();
        assert!(r.equal && r.lhs == q_pow(2, choose2(3) - 6));
        assert!(check_threesums1(4, 2, 2, 1, 2).unwrap().equal);
        assert!(check_threesums1(7, 3, 2, 2, 2).unwrap().equal);
        let r0 = check_threesums2(5, 2, 3, 0, 2).unwrap();
        assert!(r0.equal);
        assert_eq!(r0.lhs, rat(1));
        assert!(check_threesums2(4, 2, 2, 1, 2).unwrap().equal);
        assert!(check_threesums2(7, 3, 3, 2, 3).unwrap().equal);
    }

    #[test]
    fn vanishing_denominator_is_reported() {
        // [n-2k+s s] = [-1 0], [0 1] ... n < 2k leaves a zero binomial
        assert!(matches!(check_identity2(3, 1, 2, 1, 2), Err(Error::VanishingDenominator(_))));
    }

    #[test]
    fn mu_zero_examples() {
        let r = check_mu_zero_identity(4, 2, 1, 1, 2).unwrap();
        assert!(r.equal && r.lhs == rat(1));
        assert!(check_mu_zero_identity(6, 2, 1, 1, 3).unwrap().equal);
        let r = check_mu_zero_identity(6, 3, 0, 2, 2).unwrap();
        assert!(r.lhs.is_zero() && !r.equal);
        assert!(!check_mu_zero_identity(8, 3, 1, 2, 2).unwrap().equal);
        assert_eq!(mu_zero_lhs_valuation(8, 3, 2, 3, 2).unwrap(), Valuation::Finite(1));
    }

    #[test]
    fn small_sweep_is_clean() {
        let res = sweep(&SweepConfig { qs: vec![2, 3], max_n: 5 });
        assert!(res.all_equal(), "{:?}", res.failures().next());
        assert!(!res.reports.is_empty() && !res.skipped.is_empty());
        assert!(sweep(&SweepConfig { qs: vec![2], max_n: 0 }).reports.is_empty());
    }

    #[test]
    fn export_formats() {
        let res = sweep(&SweepConfig { qs: vec![2], max_n: 1 });
        let mut buf = Vec::new();
        res.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("identity,parameters,lhs,rhs,rhs_alt,equal"));
        assert!(text.contains("/"));
        let mut buf = Vec::new();
        res.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["failed"], 0);
    }
}
