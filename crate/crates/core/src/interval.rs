//! Fixed-point interval arithmetic over `BigInt`, used to certify the sign
//! of nonzero real cyclotomic numbers.
//!
//! An [`Interval`] at precision `p` is the closed set `[lo·2^-p, hi·2^-p]`.
//! Every operation rounds outward, so the true value is always enclosed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn floor_shr(x: &BigInt, bits: u32) -> BigInt {
    // `>>` on negative BigInt rounds toward -inf.
    x >> bits as usize
}

fn ceil_shr(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits as usize)
}

impl Interval {
    pub fn exact_int(n: i64, prec: u32) -> Interval {
        let v = BigInt::from(n) << prec as usize;
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn zero(prec: u32) -> Interval {
        Interval::exact_int(0, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn add(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        debug_assert_eq!(self.prec, other.prec);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval { lo: floor_shr(min, self.prec), hi: ceil_shr(max, self.prec), prec: self.prec }
    }

    /// Multiplication by an exact integer.
    pub fn scale(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, d: u64) -> Interval {
        assert!(d > 0);
        let d = BigInt::from(d);
        Interval { lo: self.lo.div_floor(&d), hi: -((-&self.hi).div_floor(&d)), prec: self.prec }
    }

    /// Widens by `±ulps·2^-p`.
    pub fn widen(&self, ulps: &BigInt) -> Interval {
        Interval { lo: &self.lo - ulps, hi: &self.hi + ulps, prec: self.prec }
    }

    /// Upper bound of `|x|` in ulps.
    pub fn mag(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.sign().is_none()
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) / 2;
        let shift = self.prec.saturating_sub(60);
        let m = floor_shr(&mid, shift);
        let mf: f64 = m.to_string().parse().unwrap_or(f64::NAN);
        mf / 2f64.powi((self.prec - shift) as i32)
    }
}

/// Enclosure of `atan(1/x)` for an integer `x ≥ 2`.
fn atan_inv(x: u64, prec: u32) -> Interval {
    let one = BigInt::from(1) << prec as usize;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    loop {
        let term = &one / (&power * BigInt::from(2 * n + 1));
        if term.is_zero() {
            break;
        }
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
        n += 1;
    }
    // Each truncated term is off by < 1 ulp; the tail is < 1 ulp.
    let slack = BigInt::from(n + 2);
    Interval { lo: &sum - &slack, hi: sum + slack, prec }
}

/// Enclosure of π by Machin's formula.
pub fn pi(prec: u32) -> Interval {
    let a = atan_inv(5, prec).scale(&BigInt::from(16));
    let b = atan_inv(239, prec).scale(&BigInt::from(4));
    a.sub(&b)
}

/// Enclosure of `cos(x)` for `x` enclosed in `[0, 4]`.
fn cos_taylor(x: &Interval) -> Interval {
    let prec = x.prec;
    let x2 = x.mul(x);
    let mut term = Interval::exact_int(1, prec);
    let mut sum = term.clone();
    let mut n: u64 = 1;
    loop {
        term = term.mul(&x2).div_int((2 * n - 1) * (2 * n)).neg();
        sum = sum.add(&term);
        n += 1;
        // Once x²/((2n+1)(2n+2)) < 1 the series alternates with decreasing
        // terms and the tail is bounded by the next term.
        if n >= 3 && term.mag() <= BigInt::from(1) {
            let next = term.mul(&x2).div_int((2 * n - 1) * (2 * n));
            return sum.widen(&(next.mag() + 1));
        }
    }
}

/// Enclosure of `cos(2πk/n)`.
pub fn cos_2pi_ratio(k: u64, n: u64, prec: u32) -> Interval {
    assert!(n > 0);
    let k = k % n;
    let k = k.min(n - k);
    // angle = 2πk/n ∈ [0, π]
    let angle = pi(prec).scale(&BigInt::from(2 * k)).div_int(n);
    cos_taylor(&angle)
}

type CosTable = Arc<Vec<Interval>>;

/// Cached table `cos(2πk/n)` for `k = 0..n` at working precision `prec`.
pub fn cos_table(n: u64, prec: u32) -> CosTable {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), CosTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(n, prec)) {
        return t.clone();
    }
    let table: CosTable = Arc::new((0..n).map(|k| cos_2pi_ratio(k, n, prec)).collect());
    cache.lock().unwrap().insert((n, prec), table.clone());
    table
}
