//! Exact arithmetic on the rational character torus.
//!
//! A character `ω = (ω_1, …, ω_μ)` is stored through its angles `θ_j ∈ [0, 1)`
//! with `ω_j = exp(2πiθ_j)`. Every operation here is exact.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_len, Result, SigError};

/// `ind(x) = ⌊x⌋ − ⌊−x⌋`.
pub fn ind(x: Rational64) -> i64 {
    x.floor().to_integer() - (-x).floor().to_integer()
}

/// A rational angle in `[0, 1)`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub const ZERO: Angle = Angle(Rational64::new_raw(0, 1));

    /// Builds the angle `num/den` reduced modulo 1.
    pub fn new(num: i64, den: i64) -> Result<Angle> {
        if den == 0 {
            return Err(SigError::Parse(format!("zero denominator in {num}/{den}")));
        }
        Ok(Angle::from_ratio(Rational64::new(num, den)))
    }

    /// Reduces an arbitrary rational modulo 1.
    pub fn from_ratio(x: Rational64) -> Angle {
        Angle(x - x.floor())
    }

    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// `true` when `ω = 1`.
    pub fn is_unit(&self) -> bool {
        self.0.is_zero()
    }

    pub fn conjugate(&self) -> Angle {
        Angle::from_ratio(-self.0)
    }

    /// The angle of `ω^k`.
    pub fn pow(&self, k: i64) -> Angle {
        Angle::from_ratio(self.0 * k)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Angle {
    type Err = SigError;

    fn from_str(s: &str) -> Result<Angle> {
        let s = s.trim();
        let bad = || SigError::Parse(format!("invalid angle {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Angle::new(n, d)
            }
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Angle::new(n, 1)
            }
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.numer(), self.denom()))
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Angle, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the rational character torus `T^μ`. The empty character is the
/// unique point of `T^0`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<Angle>);

impl Character {
    pub fn new(angles: Vec<Angle>) -> Character {
        Character(angles)
    }

    pub fn empty() -> Character {
        Character(Vec::new())
    }

    /// Convenience constructor from `(num, den)` pairs.
    pub fn from_fractions(fracs: &[(i64, i64)]) -> Result<Character> {
        fracs.iter().map(|&(n, d)| Angle::new(n, d)).collect::<Result<Vec<_>>>().map(Character)
    }

    /// The character `(θ, …, θ)` of arity `k`.
    pub fn diagonal(angle: Angle, k: usize) -> Character {
        Character(vec![angle; k])
    }

    /// The unit character `(1, …, 1)`.
    pub fn unit(k: usize) -> Character {
        Character(vec![Angle::ZERO; k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Result<Angle> {
        self.0.get(i).copied().ok_or(SigError::IndexOutOfRange { index: i, len: self.0.len() })
    }

    /// `true` when no coordinate equals 1.
    pub fn is_open(&self) -> bool {
        self.0.iter().all(|a| !a.is_unit())
    }

    /// Indices of the coordinates different from 1.
    pub fn non_unit_colors(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_unit()).collect()
    }

    /// Least common multiple of the angle denominators; the order of the
    /// character in the torus group.
    pub fn level(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, a| acc.lcm(&(a.denom() as u64)))
    }

    pub fn conjugate(&self) -> Character {
        Character(self.0.iter().map(Angle::conjugate).collect())
    }

    pub fn concat(&self, other: &Character) -> Character {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Character(v)
    }

    pub fn delete_color(&self, i: usize) -> Result<Character> {
        if i >= self.0.len() {
            return Err(SigError::IndexOutOfRange { index: i, len: self.0.len() });
        }
        let mut v = self.0.clone();
        v.remove(i);
        Ok(Character(v))
    }

    pub fn insert(&self, at: usize, angle: Angle) -> Result<Character> {
        if at > self.0.len() {
            return Err(SigError::IndexOutOfRange { index: at, len: self.0.len() });
        }
        let mut v = self.0.clone();
        v.insert(at, angle);
        Ok(Character(v))
    }

    pub fn insert_unit(&self, at: usize) -> Result<Character> {
        self.insert(at, Angle::ZERO)
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn select(&self, colors: &[usize]) -> Result<Character> {
        colors.iter().map(|&i| self.get(i)).collect::<Result<Vec<_>>>().map(Character)
    }

    /// Splits into the first `k` coordinates and the rest.
    pub fn split_at(&self, k: usize) -> Result<(Character, Character)> {
        if k > self.0.len() {
            return Err(SigError::IndexOutOfRange { index: k, len: self.0.len() });
        }
        let (a, b) = self.0.split_at(k);
        Ok((Character(a.to_vec()), Character(b.to_vec())))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses `"a/b,c/d,…"`; the empty string is the empty character.
impl FromStr for Character {
    type Err = SigError;

    fn from_str(s: &str) -> Result<Character> {
        if s.trim().is_empty() {
            return Ok(Character::empty());
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(Character)
    }
}

/// Per-color linking numbers `λ = (lk(K, L_1), …, lk(K, L_μ))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkingVector(Vec<i64>);

impl LinkingVector {
    pub fn new(entries: Vec<i64>) -> LinkingVector {
        LinkingVector(entries)
    }

    pub fn ones(k: usize) -> LinkingVector {
        LinkingVector(vec![1; k])
    }

    pub fn constant(value: i64, k: usize) -> LinkingVector {
        LinkingVector(vec![value; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Greatest common divisor of the entries (0 for the zero vector).
    pub fn gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |acc, &x| acc.gcd(&x))
    }

    pub fn concat(&self, other: &LinkingVector) -> LinkingVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        LinkingVector(v)
    }
}

impl From<Vec<i64>> for LinkingVector {
    fn from(v: Vec<i64>) -> Self {
        LinkingVector(v)
    }
}

/// `Σ λ_i Log ω_i` as a rational number, not reduced modulo 1.
pub fn log_sum(omega: &Character, lambda: &LinkingVector) -> Result<Rational64> {
    check_len(lambda.len(), omega.arity())?;
    Ok(omega.angles().iter().zip(lambda.entries()).fold(Rational64::zero(), |acc, (a, &l)| acc + a.value() * l))
}

/// The defect `δ_λ(ω) = ind(Σ λ_i Log ω_i) − Σ λ_i ind(Log ω_i)`.
pub fn defect(lambda: &LinkingVector, omega: &Character) -> Result<i64> {
    let total = log_sum(omega, lambda)?;
    let parts: i64 = omega.angles().iter().zip(lambda.entries()).map(|(a, &l)| l * ind(a.value())).sum();
    Ok(ind(total) - parts)
}

/// The plain defect `δ = δ_{(1,…,1)}`.
pub fn defect_ones(omega: &Character) -> i64 {
    let total = omega.angles().iter().fold(Rational64::zero(), |acc, a| acc + a.value());
    let parts: i64 = omega.angles().iter().map(|a| ind(a.value())).sum();
    ind(total) - parts
}

/// `ω^λ = ∏ ω_i^{λ_i}`.
pub fn char_power(omega: &Character, lambda: &LinkingVector) -> Result<Angle> {
    log_sum(omega, lambda).map(Angle::from_ratio)
}

/// Root-of-unity grid `{k/n : 0 ≤ k < n}` (or `1 ≤ k < n` when `open`).
pub fn grid_angles(n: u64, open: bool) -> Vec<Angle> {
    let start = if open { 1 } else { 0 };
    (start..n as i64).map(|k| Angle::from_ratio(Rational64::new(k, n as i64))).collect()
}

/// All characters of arity `arity` with angles drawn from `angles`, in
/// lexicographic order.
pub fn grid(angles: &[Angle], arity: usize) -> Vec<Character> {
    let mut out = vec![Character::empty()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|c| {
                angles.iter().map(move |a| {
                    let mut v = c.0.clone();
                    v.push(*a);
                    Character(v)
                })
            })
            .collect();
    }
    out
}

pub(crate) fn is_integer(x: Rational64) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn ch(s: &str) -> Character {
        s.parse().unwrap()
    }

    #[test]
    fn ind_values() {
        assert_eq!(ind(r(0, 1)), 0);
        assert_eq!(ind(r(3, 10)), 1);
        assert_eq!(ind(r(1, 1)), 2);
        assert_eq!(ind(r(-3, 10)), -1);
        assert_eq!(ind(r(8, 5)), 3);
    }

    #[test]
    fn angle_canonical() {
        assert_eq!(Angle::new(13, 10).unwrap(), Angle::new(3, 10).unwrap());
        assert_eq!(Angle::new(-3, 10).unwrap(), Angle::new(7, 10).unwrap());
        assert_eq!(Angle::new(2, 4).unwrap().denom(), 2);
        assert!(Angle::new(5, 5).unwrap().is_unit());
        assert!(Angle::new(1, 0).is_err());
    }

    #[test]
    fn log_sum_examples() {
        assert_eq!(log_sum(&ch("3/10,7/10"), &LinkingVector::ones(2)).unwrap(), r(1, 1));
        assert_eq!(log_sum(&ch("3/10"), &vec![2].into()).unwrap(), r(3, 5));
        assert_eq!(log_sum(&Character::empty(), &LinkingVector::default()).unwrap(), r(0, 1));
        assert!(matches!(log_sum(&ch("1/2"), &LinkingVector::ones(2)), Err(SigError::LengthMismatch { .. })));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&LinkingVector::ones(3), &Character::unit(3)).unwrap(), 0);
        assert_eq!(defect(&LinkingVector::ones(2), &ch("3/10,3/10")).unwrap(), -1);
        assert_eq!(defect(&vec![2].into(), &ch("3/10")).unwrap(), -1);
        assert_eq!(defect(&LinkingVector::default(), &Character::empty()).unwrap(), 0);
        assert_eq!(defect_ones(&ch("3/10,3/10")), -1);
    }

    #[test]
    fn char_power_examples() {
        assert!(char_power(&ch("1/2"), &vec![2].into()).unwrap().is_unit());
        assert_eq!(char_power(&ch("1/3,1/3"), &LinkingVector::ones(2)).unwrap(), "2/3".parse().unwrap());
        assert!(char_power(&ch("2/7,2/7"), &vec![1, -1].into()).unwrap().is_unit());
    }

    #[test]
    fn structural_ops() {
        assert_eq!(ch("3/10").conjugate(), ch("7/10"));
        assert_eq!(ch("3/10").insert_unit(0).unwrap(), ch("0,3/10"));
        assert_eq!(ch("0,3/10").delete_color(0).unwrap(), ch("3/10"));
        assert!(ch("0,3/10").delete_color(2).is_err());
        assert!(ch("").insert_unit(1).is_err());
        assert_eq!(ch("1/8,1/12").level(), 24);
    }

    #[test]
    fn serde_round_trip() {
        let c = ch("1/8,0,5/12");
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"["1/8","0/1","5/12"]"#);
        assert_eq!(serde_json::from_str::<Character>(&s).unwrap(), c);
    }

    fn arb_angle() -> impl Strategy<Value = Angle> {
        (0i64..48, 1i64..48).prop_map(|(n, d)| Angle::new(n, d).unwrap())
    }

    fn arb_char(max: usize) -> impl Strategy<Value = Character> {
        prop::collection::vec(arb_angle(), 0..=max).prop_map(Character::new)
    }

    proptest! {
        #[test]
        fn defect_conjugation_antisymmetric(w in arb_char(4), l in prop::collection::vec(-3i64..4, 4)) {
            let lam = LinkingVector::new(l[..w.arity()].to_vec());
            prop_assert_eq!(defect(&lam, &w.conjugate()).unwrap(), -defect(&lam, &w).unwrap());
        }

        #[test]
        fn defect_vanishes_in_low_arity(w in arb_char(1)) {
            let lam = LinkingVector::ones(w.arity());
            prop_assert_eq!(defect(&lam, &w).unwrap(), 0);
        }

        #[test]
        fn angle_serde_round_trip(a in arb_angle()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Angle>(&s).unwrap(), a);
        }

        #[test]
        fn char_power_is_log_sum_mod_one(w in arb_char(4), l in prop::collection::vec(-3i64..4, 4)) {
            let lam = LinkingVector::new(l[..w.arity()].to_vec());
            let s = log_sum(&w, &lam).unwrap();
            let p = char_power(&w, &lam).unwrap();
            prop_assert!(is_integer(s - p.value()));
        }
    }
}
