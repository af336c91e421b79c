//! Signature functions and the splice calculus.
//!
//! A [`SigFn`] is a lazily evaluated map from characters to integers. The
//! combinators here build new signature functions out of old ones; nothing
//! is tabulated ahead of time.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{check_len, Result, SigError};
use crate::torus::{char_power, defect, defect_ones, Angle, Character, LinkingVector};

type EvalFn = dyn Fn(&Character) -> Result<i64> + Send + Sync;
type NullityFn = dyn Fn(&Character) -> Result<usize> + Send + Sync;

/// Where an evaluator is known to be defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The whole torus.
    Full,
    /// Characters with no unit coordinate (and the all-unit character).
    Open,
    /// The open torus together with the listed sets of non-unit colors.
    Slices(Vec<Vec<usize>>),
    /// Built from other signature functions; errors come from the operands.
    Derived,
}

#[derive(Clone)]
pub struct SigFn {
    arity: usize,
    domain: Domain,
    label: String,
    eval: Arc<EvalFn>,
    nullity: Option<Arc<NullityFn>>,
}

impl fmt::Debug for SigFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SigFn")
            .field("arity", &self.arity)
            .field("domain", &self.domain)
            .field("label", &self.label)
            .field("nullity", &self.nullity.is_some())
            .finish()
    }
}

impl SigFn {
    pub fn new<F>(arity: usize, domain: Domain, label: impl Into<String>, eval: F) -> SigFn
    where
        F: Fn(&Character) -> Result<i64> + Send + Sync + 'static,
    {
        SigFn { arity, domain, label: label.into(), eval: Arc::new(eval), nullity: None }
    }

    pub fn with_nullity<F>(mut self, nullity: F) -> SigFn
    where
        F: Fn(&Character) -> Result<usize> + Send + Sync + 'static,
    {
        self.nullity = Some(Arc::new(nullity));
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> SigFn {
        self.label = label.into();
        self
    }

    /// The identically zero function, e.g. the unknot or `H_{1,n}`.
    pub fn zero(arity: usize) -> SigFn {
        SigFn::new(arity, Domain::Full, format!("zero({arity})"), |_| Ok(0))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_nullity(&self) -> bool {
        self.nullity.is_some()
    }

    pub fn evaluate(&self, omega: &Character) -> Result<i64> {
        check_len(self.arity, omega.arity())?;
        if self.domain == Domain::Open && !omega.is_open() && !omega.non_unit_colors().is_empty() {
            return Err(SigError::BoundaryCharacter(format!("{} at ({omega})", self.label)));
        }
        (self.eval)(omega)
    }

    pub fn nullity(&self, omega: &Character) -> Result<usize> {
        check_len(self.arity, omega.arity())?;
        match &self.nullity {
            Some(f) => f(omega),
            None => Err(SigError::NullityUnavailable),
        }
    }
}

/// A signature function of a `(1, μ)`-colored link `K ∪ L` whose color 0 is
/// the distinguished knot `K`, together with `λ = lk(K, L)`.
#[derive(Clone, Debug)]
pub struct DistinguishedSigFn {
    sig: SigFn,
    lambda: LinkingVector,
}

impl DistinguishedSigFn {
    pub fn new(sig: SigFn, lambda: LinkingVector) -> Result<DistinguishedSigFn> {
        check_len(lambda.len() + 1, sig.arity())?;
        Ok(DistinguishedSigFn { sig, lambda })
    }

    pub fn sig(&self) -> &SigFn {
        &self.sig
    }

    pub fn lambda(&self) -> &LinkingVector {
        &self.lambda
    }

    /// `μ`, the number of colors besides `K`.
    pub fn tail_arity(&self) -> usize {
        self.lambda.len()
    }

    fn at(&self, head: Angle, tail: &Character) -> Result<i64> {
        self.sig.evaluate(&tail.insert(0, head)?)
    }
}

/// Splice of `K′ ∪ L′` and `K″ ∪ L″` along `K′` and `K″`.
///
/// `σ_L(ω′, ω″) = σ′(υ″, ω′) + σ″(υ′, ω″) + δ_{λ′}(ω′) δ_{λ″}(ω″)` with
/// `υ* = (ω*)^{λ*}`, provided `(υ′, υ″) ≠ (1, 1)`.
pub fn splice(f1: &DistinguishedSigFn, f2: &DistinguishedSigFn) -> SigFn {
    let (f1, f2) = (f1.clone(), f2.clone());
    let (m1, m2) = (f1.tail_arity(), f2.tail_arity());
    let label = format!("splice({}, {})", f1.sig.label, f2.sig.label);
    SigFn::new(m1 + m2, Domain::Derived, label, move |omega| {
        let (w1, w2) = omega.split_at(m1)?;
        let u1 = char_power(&w1, &f1.lambda)?;
        let u2 = char_power(&w2, &f2.lambda)?;
        if u1.is_unit() && u2.is_unit() {
            return Err(SigError::GuardViolated(format!("υ′ = υ″ = 1 at ({omega})")));
        }
        let correction = defect(&f1.lambda, &w1)? * defect(&f2.lambda, &w2)?;
        Ok(f1.at(u2, &w1)? + f2.at(u1, &w2)? + correction)
    })
}

/// Splice with a knot `K′` (so `L′ = ∅`): `σ_L(ω) = σ_{K′}(ω^{λ″}) + σ_{L″}(ω)`.
/// There is no guard; `σ_{L″}` is read off `f2` at a unit first slot.
pub fn splice_knot(knot: &SigFn, f2: &DistinguishedSigFn) -> Result<SigFn> {
    check_len(1, knot.arity())?;
    let (knot, f2) = (knot.clone(), f2.clone());
    let label = format!("splice_knot({}, {})", knot.label, f2.sig.label);
    Ok(SigFn::new(f2.tail_arity(), Domain::Derived, label, move |omega| {
        let u = char_power(omega, &f2.lambda)?;
        Ok(knot.evaluate(&Character::new(vec![u]))? + f2.at(Angle::ZERO, omega)?)
    }))
}

/// Levine–Tristram signature of the splice of two `(1,1)`-colored links:
/// `σ′(ξ^{λ″}, ξ) + σ″(ξ^{λ′}, ξ) − λ′λ″ + δ_{λ′}(ξ)δ_{λ″}(ξ)`,
/// valid when `ξ^{gcd(λ′,λ″)} ≠ 1`.
pub fn lt_splice(f1: &DistinguishedSigFn, f2: &DistinguishedSigFn, xi: Angle) -> Result<i64> {
    check_len(1, f1.tail_arity())?;
    check_len(1, f2.tail_arity())?;
    let (l1, l2) = (f1.lambda.entries()[0], f2.lambda.entries()[0]);
    if xi.pow(l1.gcd(&l2)).is_unit() {
        return Err(SigError::GuardViolated(format!("ξ^gcd({l1},{l2}) = 1 at ξ = {xi}")));
    }
    let x = Character::new(vec![xi]);
    let correction = defect(&f1.lambda, &x)? * defect(&f2.lambda, &x)?;
    Ok(f1.at(xi.pow(l2), &x)? + f2.at(xi.pow(l1), &x)? - l1 * l2 + correction)
}

/// Replaces `K` by `ν` parallel copies, each with its own color:
/// `σ(ζ, ω) = σ_{K∪L}(π, ω) + δ(ζ) δ_λ(ω)` with `π = ∏ ζ_i`, provided
/// `(υ, π) ≠ (1, 1)`.
pub fn cable_parallel(f: &DistinguishedSigFn, nu: usize) -> Result<SigFn> {
    if nu == 0 {
        return Err(SigError::InvalidParams("cable_parallel needs ν ≥ 1".into()));
    }
    let f = f.clone();
    let label = format!("cable({}, {nu})", f.sig.label);
    Ok(SigFn::new(nu + f.tail_arity(), Domain::Derived, label, move |omega| {
        let (zeta, w) = omega.split_at(nu)?;
        let pi = char_power(&zeta, &LinkingVector::ones(nu))?;
        let u = char_power(&w, &f.lambda)?;
        if u.is_unit() && pi.is_unit() {
            return Err(SigError::GuardViolated(format!("υ = π = 1 at ({omega})")));
        }
        Ok(f.at(pi, &w)? + defect_ones(&zeta) * defect(&f.lambda, &w)?)
    }))
}

/// Merges the last two colors: `σ_{L′}(ω) = σ_L(ω_1, …, ω_μ, ω_μ) − lk(L_μ, L_{μ+1})`.
///
/// When the merged slot is `1` the merged color is deleted outright, so the
/// value is `σ_L(…, 1, 1)` with no linking term.
pub fn merge_colors(f: &SigFn, lk: i64) -> Result<SigFn> {
    if f.arity() < 2 {
        return Err(SigError::InvalidParams("merge_colors needs arity ≥ 2".into()));
    }
    let f = f.clone();
    let mu = f.arity() - 1;
    let label = format!("merge({}, {lk})", f.label);
    Ok(SigFn::new(mu, Domain::Derived, label, move |omega| {
        let last = omega.get(mu - 1)?;
        let value = f.evaluate(&omega.insert(mu, last)?)?;
        Ok(if last.is_unit() { value } else { value - lk })
    }))
}

/// Reorders colors: color `i` of the result is color `perm[i]` of `f`.
pub fn permute(f: &SigFn, perm: &[usize]) -> Result<SigFn> {
    check_len(f.arity(), perm.len())?;
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(SigError::InvalidParams(format!("not a permutation: {perm:?}")));
        }
    }
    let (f, perm) = (f.clone(), perm.to_vec());
    let label = format!("permute({}, {perm:?})", f.label);
    Ok(SigFn::new(f.arity(), Domain::Derived, label, move |omega| {
        let mut angles = vec![Angle::ZERO; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            angles[p] = omega.get(i)?;
        }
        f.evaluate(&Character::new(angles))
    }))
}

/// Satellite with companion `K`, pattern `k` and winding number `q`:
/// `σ_{K*}(ω) = σ_K(ω^q) + σ_k(ω)`.
pub fn satellite(companion: &SigFn, pattern: &SigFn, q: i64) -> Result<SigFn> {
    check_len(1, companion.arity())?;
    check_len(1, pattern.arity())?;
    let (big, small) = (companion.clone(), pattern.clone());
    let label = format!("satellite({}, {}, {q})", big.label, small.label);
    Ok(SigFn::new(1, Domain::Derived, label, move |omega| {
        let w = omega.get(0)?;
        Ok(big.evaluate(&Character::new(vec![w.pow(q)]))? + small.evaluate(omega)?)
    }))
}

/// Levine–Tristram signature from the multivariate one:
/// `σ(ξ) = f(ξ, …, ξ) − Σ_{i<j} λ_ij` for `ξ ≠ 1`, and `0` at `ξ = 1`.
pub fn to_levine_tristram(f: &SigFn, linking: &[Vec<i64>]) -> Result<SigFn> {
    let mu = f.arity();
    check_len(mu, linking.len())?;
    for row in linking {
        check_len(mu, row.len())?;
    }
    let total: i64 = (0..mu).flat_map(|i| (i + 1..mu).map(move |j| (i, j))).map(|(i, j)| linking[i][j]).sum();
    let f = f.clone();
    let label = format!("lt({})", f.label);
    Ok(SigFn::new(1, Domain::Derived, label, move |omega| {
        let xi = omega.get(0)?;
        if xi.is_unit() {
            return Ok(0);
        }
        Ok(f.evaluate(&Character::diagonal(xi, mu))? - total)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[(i64, i64)]) -> Character {
        Character::from_fractions(v).unwrap()
    }

    #[test]
    fn domain_open_rejects_boundary() {
        let f = SigFn::new(2, Domain::Open, "f", |_| Ok(7));
        assert_eq!(f.evaluate(&ch(&[(1, 3), (1, 3)])), Ok(7));
        assert!(matches!(f.evaluate(&ch(&[(0, 1), (1, 3)])), Err(SigError::BoundaryCharacter(_))));
        assert_eq!(f.nullity(&ch(&[(1, 3), (1, 3)])), Err(SigError::NullityUnavailable));
        assert!(matches!(f.evaluate(&ch(&[(1, 3)])), Err(SigError::LengthMismatch { .. })));
    }

    #[test]
    fn permute_moves_slots() {
        let f = SigFn::new(3, Domain::Full, "f", |w| Ok(w.get(0)?.numer()));
        let g = permute(&f, &[2, 0, 1]).unwrap();
        // g(ω) = f(ω_1, ω_2, ω_0)
        assert_eq!(g.evaluate(&ch(&[(1, 7), (2, 7), (3, 7)])), Ok(2));
        assert!(permute(&f, &[0, 0, 1]).is_err());
    }

    #[test]
    fn satellite_cases() {
        let k = SigFn::new(1, Domain::Full, "k", |w| Ok(if w.get(0)?.is_unit() { 0 } else { -2 }));
        let unknot = SigFn::zero(1);
        let s = satellite(&k, &unknot, 0).unwrap();
        assert_eq!(s.evaluate(&ch(&[(1, 2)])), Ok(0));
        let s = satellite(&k, &unknot, 2).unwrap();
        assert_eq!(s.evaluate(&ch(&[(1, 2)])), Ok(0));
        assert_eq!(s.evaluate(&ch(&[(1, 3)])), Ok(-2));
    }
}
