//! Exact elements of the cyclotomic field `Q(ζ_N)`, `ζ_N = exp(2πi/N)`.
//!
//! Values are stored as a coefficient vector of length `N` over the power
//! basis `1, x, …, x^{N-1}` of `Q[x]/(x^N − 1)`, evaluated at `x = ζ_N`. The
//! representative is kept canonical by reducing modulo the cyclotomic
//! polynomial `Φ_N`, so only the first `φ(N)` coefficients are ever nonzero and
//! equality is structural. Coefficients share a single positive denominator.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, SigError};
use crate::interval::{cos_table, Interval};

static START_PRECISION: AtomicU32 = AtomicU32::new(64);

/// Starting precision (bits) for certified sign evaluation.
pub fn start_precision() -> u32 {
    START_PRECISION.load(AtomicOrdering::Relaxed)
}

pub fn set_start_precision(bits: u32) {
    START_PRECISION.store(bits.max(8), AtomicOrdering::Relaxed);
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    cache.write().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient, the degree of `Φ_n`.
pub fn totient(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Reduces `coeffs` (any length) modulo `Φ_n` in place; the result occupies
/// the first `φ(n)` slots.
fn reduce_mod_phi(coeffs: &mut Vec<BigInt>, n: u64) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for k in (deg..coeffs.len()).rev() {
        if coeffs[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut coeffs[k]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                coeffs[k - deg + j] -= &c * pj;
            }
        }
    }
    coeffs.truncate(deg);
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    level: u64,
    /// Length `level`; entries past `φ(level)` are zero.
    num: Vec<BigInt>,
    /// Positive, coprime to the content of `num`.
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(level: u64, mut num: Vec<BigInt>, mut den: BigInt) -> CyclotomicNumber {
        reduce_mod_phi(&mut num, level);
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -std::mem::take(c));
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den = &den / &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        num.resize(level as usize, BigInt::zero());
        CyclotomicNumber { level, num, den }
    }

    pub fn zero(level: u64) -> CyclotomicNumber {
        CyclotomicNumber { level, num: vec![BigInt::zero(); level as usize], den: BigInt::one() }
    }

    pub fn from_int(level: u64, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(level, &BigRational::from_integer(n.into()))
    }

    pub fn from_rational(level: u64, q: &BigRational) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); level as usize];
        num[0] = q.numer().clone();
        CyclotomicNumber::from_parts(level, num, q.denom().clone())
    }

    /// `ζ_level^k`.
    pub fn root_of_unity(level: u64, k: i64) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); level as usize];
        num[k.rem_euclid(level as i64) as usize] = BigInt::one();
        CyclotomicNumber::from_parts(level, num, BigInt::one())
    }

    /// Builds `Σ c_k ζ^k` from integer coefficients indexed by exponent mod `level`.
    pub fn from_int_coeffs(level: u64, coeffs: &[i64]) -> CyclotomicNumber {
        let mut num = vec![BigInt::zero(); level as usize];
        for (k, &c) in coeffs.iter().enumerate() {
            num[k % level as usize] += c;
        }
        CyclotomicNumber::from_parts(level, num, BigInt::one())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Canonical rational coefficients, length `level`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Rough bit size; used to pick cheap pivots.
    pub fn cost(&self) -> u64 {
        let nz = self.num.iter().filter(|c| !c.is_zero()).count() as u64;
        nz * 64 + self.num.iter().map(|c| c.bits()).sum::<u64>() + self.den.bits()
    }

    /// Re-expresses the value at a level that is a multiple of the current one.
    pub fn lift(&self, level: u64) -> CyclotomicNumber {
        if level == self.level {
            return self.clone();
        }
        assert!(level.is_multiple_of(self.level), "level {level} is not a multiple of {}", self.level);
        let step = (level / self.level) as usize;
        let mut num = vec![BigInt::zero(); level as usize];
        for (k, c) in self.num.iter().enumerate() {
            num[k * step] = c.clone();
        }
        CyclotomicNumber::from_parts(level, num, self.den.clone())
    }

    fn common_level(a: &CyclotomicNumber, b: &CyclotomicNumber) -> u64 {
        a.level.lcm(&b.level)
    }

    pub fn add(&self, other: &CyclotomicNumber) -> CyclotomicNumber {
        self.linear(other, false)
    }

    pub fn sub(&self, other: &CyclotomicNumber) -> CyclotomicNumber {
        self.linear(other, true)
    }

    fn linear(&self, other: &CyclotomicNumber, negate: bool) -> CyclotomicNumber {
        let level = Self::common_level(self, other);
        if level != self.level || level != other.level {
            return self.lift(level).linear(&other.lift(level), negate);
        }
        let num: Vec<BigInt> = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let (x, y) = (a * &other.den, b * &self.den);
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        CyclotomicNumber::from_parts(level, num, &self.den * &other.den)
    }

    pub fn neg(&self) -> CyclotomicNumber {
        CyclotomicNumber { level: self.level, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &CyclotomicNumber) -> CyclotomicNumber {
        let level = Self::common_level(self, other);
        if level != self.level || level != other.level {
            return self.lift(level).mul(&other.lift(level));
        }
        let deg = totient(level);
        if deg == 0 {
            return CyclotomicNumber::zero(level);
        }
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.num.iter().take(deg).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().take(deg).enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber::from_parts(level, prod, &self.den * &other.den)
    }

    pub fn mul_int(&self, k: i64) -> CyclotomicNumber {
        let k = BigInt::from(k);
        CyclotomicNumber::from_parts(self.level, self.num.iter().map(|c| c * &k).collect(), self.den.clone())
    }

    /// Complex conjugate: `x^k ↦ x^{N−k}`.
    pub fn conj(&self) -> CyclotomicNumber {
        let n = self.level as usize;
        let mut num = vec![BigInt::zero(); n];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[(n - k) % n] = c.clone();
            }
        }
        CyclotomicNumber::from_parts(self.level, num, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<CyclotomicNumber> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(CyclotomicNumber::from_rational(self.level, &q.recip()));
        }
        let phi: Vec<BigRational> =
            cyclotomic_polynomial(self.level).iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let a: Vec<BigRational> = self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect();
        let inv = poly_inverse_mod(&trim(a), &phi);
        let den = inv.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num: Vec<BigInt> = inv.iter().map(|c| (c * &den).to_integer()).collect();
        let mut full = vec![BigInt::zero(); self.level as usize];
        for (k, c) in num.into_iter().enumerate() {
            full[k] = c;
        }
        Some(CyclotomicNumber::from_parts(self.level, full, den))
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.level as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, t)
            })
            .sum()
    }

    /// Enclosure of the real part at working precision `prec`.
    pub fn real_enclosure(&self, prec: u32) -> Interval {
        let table = cos_table(self.level, prec);
        let mut acc = Interval::zero(prec);
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&table[k].scale(c));
            }
        }
        acc
    }

    /// Certified sign of a real element. Zero is decided exactly; nonzero
    /// values are enclosed at doubling precision until the enclosure
    /// excludes zero.
    pub fn sign_real(&self) -> Result<Ordering> {
        self.sign_real_from(start_precision())
    }

    pub fn sign_real_from(&self, start_bits: u32) -> Result<Ordering> {
        if !self.is_real() {
            return Err(SigError::NotReal);
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { Ordering::Greater } else { Ordering::Less });
        }
        let mut prec = start_bits.max(8);
        loop {
            if let Some(s) = self.real_enclosure(prec).sign() {
                return Ok(if s > 0 { Ordering::Greater } else { Ordering::Less });
            }
            prec = prec.saturating_mul(2);
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![BigRational::zero()], trim(r));
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    if db == 0 {
        r[0] = BigRational::zero();
    }
    (trim(q), trim(r))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Inverse of `a` modulo the irreducible `m`, by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let (mut r0, mut r1) = (m.to_vec(), poly_divrem(a, m).1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant since m is irreducible and a ≢ 0.
    let c = r0[0].clone();
    let inv: Vec<BigRational> = s0.iter().map(|x| x / &c).collect();
    poly_divrem(&inv, m).1
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}·ζ"),
                _ => format!("{c}·ζ^{k}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body} [ζ_{}]", self.level)
        } else {
            write!(f, "({body})/{} [ζ_{}]", self.den, self.level)
        }
    }
}
