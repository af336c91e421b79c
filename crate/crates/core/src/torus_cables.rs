//! Torus links, cabling, and the reduction of multivariate signatures to a
//! Levine–Tristram signature.

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{check_len, Result, SigError};
use crate::splice::{splice, DistinguishedSigFn, Domain, SigFn};
use crate::torus::{ind, Angle, Character, LinkingVector};

/// Parameters of a `(dp, dq)`-cabling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableParams {
    pub p: i64,
    pub q: i64,
    pub d: usize,
    pub core_kept: bool,
}

impl CableParams {
    pub fn new(p: i64, q: i64, d: usize, core_kept: bool) -> Result<CableParams> {
        if p.gcd(&q) != 1 {
            return Err(SigError::InvalidParams(format!("p = {p} and q = {q} are not coprime")));
        }
        if d == 0 {
            return Err(SigError::InvalidParams("d must be positive".into()));
        }
        Ok(CableParams { p, q, d, core_kept })
    }

    /// Number of colors of the pattern link `V ∪ (U) ∪ dU(p,q)`.
    pub fn pattern_arity(&self) -> usize {
        1 + self.d + usize::from(self.core_kept)
    }

    /// `λ″ = lk(V, ·)`: `(p, …, p)`, preceded by `1` for a kept core.
    pub fn pattern_lambda(&self) -> LinkingVector {
        let mut v = Vec::with_capacity(self.d + 1);
        if self.core_kept {
            v.push(1);
        }
        v.extend(std::iter::repeat_n(self.p, self.d));
        LinkingVector::new(v)
    }
}

/// Levine–Tristram signature of the torus link `U(p, q)` at `exp(2πiθ)` by
/// Hirzebruch's count over `M = {1..p−1} × {1..q−1}`.
pub fn hirzebruch(p: i64, q: i64, theta: Angle) -> Result<i64> {
    if p <= 0 || q <= 0 {
        return Err(SigError::InvalidParams(format!("p = {p}, q = {q} must be positive")));
    }
    if p.gcd(&q) != 1 {
        return Err(SigError::InvalidParams(format!("p = {p} and q = {q} are not coprime")));
    }
    if theta.is_unit() {
        return Ok(0);
    }
    let t = theta.value().min(theta.conjugate().value());
    let (mut a, mut boundary) = (0i64, 0i64);
    for i in 1..p {
        for j in 1..q {
            let s = Rational64::new(i, p) + Rational64::new(j, q);
            let upper = t + Rational64::from_integer(1);
            if s == t || s == upper {
                boundary += 1;
            } else if t < s && s < upper {
                a += 1;
            }
        }
    }
    let b = (p - 1) * (q - 1) - a - boundary;
    Ok(b - a)
}

/// `σ̃_{dp,dq}(v, u) = σ_{dp,dq}(v, u, …, u) − d(d−1)pq/2`.
pub fn tilde_from_multi(sigma_multi: i64, d: usize, p: i64, q: i64) -> i64 {
    let d = d as i64;
    sigma_multi - d * (d - 1) * p * q / 2
}

/// Signature of the pattern link `V ∪ (U) ∪ dU(p, q)`.
#[derive(Clone, Debug)]
pub enum TorusBase {
    /// `pq = 0`: the pattern is a generalized Hopf link with one component
    /// on one side, so its signature vanishes.
    Hopf,
    /// `d = 1`, core removed, evaluated only at `v = 1`, where it is the
    /// Levine–Tristram signature of the torus knot.
    Hirzebruch,
    Custom(SigFn),
}

impl TorusBase {
    pub fn sig_fn(&self, params: &CableParams) -> Result<SigFn> {
        let arity = params.pattern_arity();
        match self {
            TorusBase::Hopf => {
                if params.p * params.q != 0 {
                    return Err(SigError::InvalidParams("the Hopf base needs pq = 0".into()));
                }
                Ok(SigFn::zero(arity))
            }
            TorusBase::Hirzebruch => {
                if params.d != 1 || params.core_kept {
                    return Err(SigError::MissingBaseEvaluator(
                        "Hirzebruch's count covers d = 1 with the core removed".into(),
                    ));
                }
                let (p, q) = (params.p, params.q);
                let label = format!("torus({p},{q})");
                Ok(SigFn::new(2, Domain::Derived, label, move |w| {
                    if !w.get(0)?.is_unit() {
                        return Err(SigError::MissingBaseEvaluator(format!(
                            "torus({p},{q}) is only known at v = 1, got ({w})"
                        )));
                    }
                    // U(p, −q) is the mirror of U(p, q).
                    let s = hirzebruch(p.abs(), q.abs(), w.get(1)?)?;
                    Ok(if p * q < 0 { -s } else { s })
                }))
            }
            TorusBase::Custom(f) => {
                check_len(arity, f.arity())?;
                Ok(f.clone())
            }
        }
    }
}

/// `(dp, dq)`-cabling of `K′ ∪ L′` along `K′`, as the splice with the pattern
/// link `V ∪ dU(p, q)` (or `V ∪ U ∪ dU(p, q)` with the core kept).
pub fn cable_step(f: &DistinguishedSigFn, params: &CableParams, base: &TorusBase) -> Result<SigFn> {
    let pattern = DistinguishedSigFn::new(base.sig_fn(params)?, params.pattern_lambda())?;
    Ok(splice(f, &pattern).with_label(format!(
        "cable_step({}, {},{},{})",
        f.sig().label(),
        params.d,
        params.p,
        params.q
    )))
}

/// Data of the reduction `σ_L(ω) ↔ σ_{L̄}(ξ)` with `ω_i = ξ^{n_i}`,
/// `ξ = exp(2πi/n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateReductionInput {
    n: i64,
    powers: Vec<i64>,
    p: Vec<i64>,
    linking: Vec<Vec<i64>>,
}

impl UnivariateReductionInput {
    pub fn new(n: i64, powers: Vec<i64>, p: Vec<i64>, linking: Vec<Vec<i64>>) -> Result<Self> {
        let mu = powers.len();
        check_len(mu, p.len())?;
        check_len(mu, linking.len())?;
        for row in &linking {
            check_len(mu, row.len())?;
        }
        if n <= 0 || powers.iter().any(|&k| k <= 0 || k >= n) {
            return Err(SigError::InvalidParams(format!("need 0 < n_i < n, got n = {n}, n_i = {powers:?}")));
        }
        for i in 0..mu {
            if linking[i][i] != 0 {
                return Err(SigError::InvalidParams("linking matrix must have zero diagonal".into()));
            }
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(SigError::InvalidParams("linking matrix must be symmetric".into()));
                }
            }
        }
        Ok(UnivariateReductionInput { n, powers, p, linking })
    }

    pub fn arity(&self) -> usize {
        self.powers.len()
    }

    pub fn xi(&self) -> Angle {
        Angle::from_ratio(Rational64::new(1, self.n))
    }

    /// `ω = (ξ^{n_1}, …, ξ^{n_μ})`.
    pub fn character(&self) -> Character {
        Character::new(self.powers.iter().map(|&k| Angle::from_ratio(Rational64::new(k, self.n))).collect())
    }

    /// `λ^w_i = Σ_j n_j λ_ij`.
    pub fn weighted_linking(&self, i: usize) -> Result<i64> {
        let row = self.linking.get(i).ok_or(SigError::IndexOutOfRange { index: i, len: self.arity() })?;
        Ok(row.iter().zip(&self.powers).map(|(l, k)| l * k).sum())
    }

    /// `υ_i = ξ^{λ^w_i}`.
    pub fn upsilon(&self, i: usize) -> Result<Angle> {
        Ok(self.xi().pow(self.weighted_linking(i)?))
    }

    /// `Σ (n_i − 1) ind(λ^w_i / n) + Σ_{i<j} λ_ij`.
    pub fn correction(&self) -> Result<i64> {
        let mut total = 0;
        for i in 0..self.arity() {
            let w = self.weighted_linking(i)?;
            total += (self.powers[i] - 1) * ind(Rational64::new(w, self.n));
            total += self.linking[i][i + 1..].iter().sum::<i64>();
        }
        Ok(total)
    }
}

/// Placeholder type for [`univariate_reduction`] calls without torus terms.
pub type NoTilde = fn(usize, Angle, Angle) -> Result<i64>;

/// `σ_L(ω) = σ_{L̄}(ξ) − Σ σ̃_{n_i, n_i p_i}(υ_i, ξ) + Σ (n_i−1) ind(λ^w_i/n) + Σ_{i<j} λ_ij`.
///
/// `tilde(i, υ_i, ξ)` supplies the torus terms; it is not consulted for
/// colors with `p_i = 0`, where the term vanishes.
pub fn univariate_reduction<F>(input: &UnivariateReductionInput, sigma_bar: i64, tilde: Option<F>) -> Result<i64>
where
    F: Fn(usize, Angle, Angle) -> Result<i64>,
{
    let mut torus_terms = 0;
    for i in 0..input.arity() {
        if input.p[i] == 0 {
            continue;
        }
        let f = tilde
            .as_ref()
            .ok_or_else(|| SigError::MissingBaseEvaluator(format!("σ̃ for color {i} with p = {}", input.p[i])))?;
        torus_terms += f(i, input.upsilon(i)?, input.xi())?;
    }
    Ok(sigma_bar - torus_terms + input.correction()?)
}

/// Shortcut for `p = 0` with `μ ≤ 2` and `|λ_12| ≤ 1`:
/// `σ_L(ω) = σ_{L̄}(ξ) + (n_1 + n_2 − 1) λ_12` (just `σ_{L̄}(ξ)` when `μ = 1`).
pub fn univariate_p0_small(input: &UnivariateReductionInput, sigma_bar: i64) -> Result<i64> {
    if input.p.iter().any(|&x| x != 0) {
        return Err(SigError::InvalidParams("shortcut needs p = 0".into()));
    }
    match input.arity() {
        1 => Ok(sigma_bar),
        2 if input.linking[0][1].abs() <= 1 => {
            Ok(sigma_bar + (input.powers[0] + input.powers[1] - 1) * input.linking[0][1])
        }
        _ => Err(SigError::InvalidParams("shortcut needs μ = 1, or μ = 2 with |λ_12| ≤ 1".into())),
    }
}
