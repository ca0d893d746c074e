use std::fmt;

use crate::error::{Error, Result};
use crate::exactq::prime_power;

/// A field element, encoded as the integer whose base-p digits are its
/// polynomial coefficients (constant term first).
pub type Elem = u16;

/// A finite field `F_q`.
///
/// Prime fields of order below `2^16` use modular arithmetic directly. The
/// extension fields of order 4, 8 and 9 are fixed by the monic irreducibles
/// `x^2+x+1`, `x^3+x+1` and `x^2+2x+2` and run on precomputed tables.
#[derive(Clone)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    degree: u32,
    /// Monic modulus, coefficients from the constant term up. Empty for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Clone)]
struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "GF({})", self.q)
        } else {
            write!(f, "GF({}^{} mod {:?})", self.p, self.degree, self.modulus)
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            if q >= 1 << 16 {
                return Err(Error::UnsupportedField(q));
            }
            return Ok(FieldSpec { q: q as u32, p: p as u32, degree: 1, modulus: Vec::new(), tables: None });
        }
        let modulus = match q {
            4 => vec![1, 1, 1],
            8 => vec![1, 1, 0, 1],
            9 => vec![2, 2, 1],
            _ => return Err(Error::UnsupportedField(q)),
        };
        let mut field = FieldSpec { q: q as u32, p: p as u32, degree: e, modulus, tables: None };
        field.tables = Some(field.build_tables());
        field.check_axioms()?;
        Ok(field)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut a = a as u32;
        (0..self.degree)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, ds: &[u32]) -> Elem {
        ds.iter().rev().fold(0u32, |acc, &d| acc * self.p + d) as Elem
    }

    fn poly_add(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.degree as usize;
        let mut prod = vec![0u32; 2 * e - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus, highest degree first
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (i, m) in self.modulus.iter().enumerate() {
                let idx = deg - e + i;
                prod[idx] = (prod[idx] + self.p * self.p - c * m % self.p) % self.p;
            }
        }
        self.undigits(&prod[..e])
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.poly_add(a as Elem, b as Elem);
                mul[a * q + b] = self.poly_mul(a as Elem, b as Elem);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as Elem })
            .collect();
        Tables { add, mul, neg, inv }
    }

    /// Irreducibility of the modulus and the field axioms, checked exhaustively.
    fn check_axioms(&self) -> Result<()> {
        let q = self.q as Elem;
        let fail = |_what: &str| Err(Error::UnsupportedField(self.q as u64));
        // degree <= 3: irreducible iff no root in F_p
        for x in 0..self.p {
            let value = self.modulus.iter().rev().fold(0u32, |acc, &c| (acc * x + c) % self.p);
            if value == 0 {
                return fail("modulus has a root");
            }
        }
        for a in 0..q {
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return fail("missing inverse");
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail("not commutative");
                }
                for c in 0..q {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                    {
                        return fail("axiom violated");
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[a as usize * self.q as usize + b as usize],
            None => ((a as u32 + b as u32) % self.q) as Elem,
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => ((self.q - a as u32) % self.q) as Elem,
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[a as usize * self.q as usize + b as usize],
            None => ((a as u32 * b as u32) % self.q) as Elem,
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        match &self.tables {
            Some(t) => t.inv[a as usize],
            None => {
                let p = self.q as u64;
                let mut result = 1u64;
                let mut base = a as u64;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                result as Elem
            }
        }
    }

    /// Brings the `nrows x ncols` row-major matrix to reduced row echelon form
    /// in place, zero rows last. Returns the pivot columns.
    pub fn rref(&self, m: &mut [Elem], nrows: usize, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(pr) = (r..nrows).find(|&i| m[i * ncols + c] != 0) else { continue };
            if pr != r {
                for j in 0..ncols {
                    m.swap(pr * ncols + j, r * ncols + j);
                }
            }
            let inv = self.inv(m[r * ncols + c]);
            for j in c..ncols {
                m[r * ncols + j] = self.mul(m[r * ncols + j], inv);
            }
            for i in 0..nrows {
                if i == r {
                    continue;
                }
                let f = m[i * ncols + c];
                if f == 0 {
                    continue;
                }
                for j in c..ncols {
                    let sub = self.mul(f, m[r * ncols + j]);
                    m[i * ncols + j] = self.sub(m[i * ncols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank of a row-major matrix, without modifying it.
    pub fn rank(&self, m: &[Elem], nrows: usize, ncols: usize) -> usize {
        let mut work = m.to_vec();
        self.rref(&mut work, nrows, ncols).len()
    }

    /// Product of a `r x inner` and an `inner x c` matrix over the field.
    pub fn mat_mul(&self, a: &[Elem], b: &[Elem], r: usize, inner: usize, c: usize) -> Vec<Elem> {
        let mut out = vec![0; r * c];
        for i in 0..r {
            for l in 0..inner {
                let x = a[i * inner + l];
                if x == 0 {
                    continue;
                }
                for j in 0..c {
                    out[i * c + j] = self.add(out[i * c + j], self.mul(x, b[l * c + j]));
                }
            }
        }
        out
    }
}
