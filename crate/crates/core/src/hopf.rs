//! Generalized Hopf links `H_{m,n}`: closed forms and the explicit Seifert
//! family used to check them.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::c_complex::SeifertFamily;
use crate::error::{check_len, Result, SigError};
use crate::splice::{Domain, SigFn};
use crate::torus::{defect, ind, is_integer, log_sum, Angle, Character, LinkingVector};

/// `H_{m,n}` with orientation vectors `ν ∈ {±1}^m`, `λ ∈ {±1}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfSpec {
    nu: LinkingVector,
    lambda: LinkingVector,
}

impl HopfSpec {
    /// All components positively oriented.
    pub fn new(m: usize, n: usize) -> HopfSpec {
        HopfSpec { nu: LinkingVector::ones(m), lambda: LinkingVector::ones(n) }
    }

    pub fn oriented(nu: LinkingVector, lambda: LinkingVector) -> Result<HopfSpec> {
        if nu.entries().iter().chain(lambda.entries()).any(|&x| x != 1 && x != -1) {
            return Err(SigError::InvalidParams("orientation entries must be ±1".into()));
        }
        Ok(HopfSpec { nu, lambda })
    }

    pub fn m(&self) -> usize {
        self.nu.len()
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn nu(&self) -> &LinkingVector {
        &self.nu
    }

    pub fn lambda(&self) -> &LinkingVector {
        &self.lambda
    }
}

/// `σ_{H_{m,n}}(v, u) = δ_ν(v) δ_λ(u)`, valid on the whole torus.
pub fn hopf_signature(spec: &HopfSpec, v: &Character, u: &Character) -> Result<i64> {
    Ok(defect(&spec.nu, v)? * defect(&spec.lambda, u)?)
}

/// The closed form as a signature function of arity `m + n`.
pub fn hopf_sig_fn(spec: &HopfSpec) -> SigFn {
    let spec = spec.clone();
    let m = spec.m();
    let label = format!("hopf({},{})", spec.m(), spec.n());
    let nullity_spec = spec.clone();
    SigFn::new(spec.m() + spec.n(), Domain::Full, label, move |w| {
        let (v, u) = w.split_at(m)?;
        hopf_signature(&spec, &v, &u)
    })
    .with_nullity(move |w| {
        let (v, u) = w.split_at(m)?;
        hopf_nullity(nullity_spec.m(), nullity_spec.n(), &v, &u)
    })
}

/// Nullity of `H_{m,n}` on the open torus: `m+n−3`, `m−1`, `n−1` or `0`
/// according to which of `Log η`, `Log ζ` are integers.
pub fn hopf_nullity(m: usize, n: usize, eta: &Character, zeta: &Character) -> Result<usize> {
    check_len(m, eta.arity())?;
    check_len(n, zeta.arity())?;
    if !eta.is_open() || !zeta.is_open() {
        return Err(SigError::BoundaryCharacter(format!("({eta}; {zeta}) is not in the open torus")));
    }
    let int_eta = is_integer(log_sum(eta, &LinkingVector::ones(m))?);
    let int_zeta = is_integer(log_sum(zeta, &LinkingVector::ones(n))?);
    Ok(match (int_eta, int_zeta) {
        (true, true) => m + n - 3,
        (false, true) => m - 1,
        (true, false) => n - 1,
        (false, false) => 0,
    })
}

/// `σ_k(x) = ind(k Log x) − k`.
pub fn sigma_k(k: u32, x: Angle) -> i64 {
    if k == 0 {
        return 0;
    }
    ind(x.value() * Rational64::from_integer(k as i64)) - k as i64
}

/// Bicolored Seifert family of `H_{m,n}` on the generators `α_ij`,
/// `(i, j) ∈ Z/m × Z/n`. The nonzero values are
/// `θ^{εδ}(α_ij, α_ij) = −εδ`, `(α_ij, α_{i−ε,j}) = εδ`,
/// `(α_ij, α_{i,j+δ}) = εδ`, `(α_ij, α_{i−ε,j+δ}) = −εδ`, summed where
/// indices collide. The generators are dependent, so `basis` is false.
pub fn hopf_seifert_family(m: usize, n: usize) -> Result<SeifertFamily> {
    if m == 0 || n == 0 {
        return Err(SigError::InvalidParams("hopf_seifert_family needs m, n ≥ 1".into()));
    }
    let g = m * n;
    let idx = |i: i64, j: i64| (i.rem_euclid(m as i64) as usize) * n + j.rem_euclid(n as i64) as usize;
    let mut forms = Vec::with_capacity(4);
    for mask in 0..4usize {
        let e: i64 = if mask & 1 == 1 { -1 } else { 1 };
        let d: i64 = if mask & 2 == 2 { -1 } else { 1 };
        let mut t = vec![vec![0i64; g]; g];
        for i in 0..m as i64 {
            for j in 0..n as i64 {
                let a = idx(i, j);
                t[a][idx(i, j)] -= e * d;
                t[a][idx(i - e, j)] += e * d;
                t[a][idx(i, j + d)] += e * d;
                t[a][idx(i - e, j + d)] -= e * d;
            }
        }
        forms.push(t);
    }
    SeifertFamily::new(2, g, forms, false)
}

/// The same family restricted to `α_ij` with `i < m−1`, `j < n−1`. Row and
/// column sums of every form vanish, so the dropped generators span the
/// radical; what remains is a basis, and its nullity is meaningful.
pub fn hopf_seifert_basis(m: usize, n: usize) -> Result<SeifertFamily> {
    let keep: Vec<usize> =
        (0..m.saturating_sub(1)).flat_map(|i| (0..n.saturating_sub(1)).map(move |j| i * n + j)).collect();
    hopf_seifert_family(m, n)?.restrict(&keep, true)
}

/// `λ(x, y) = i(1 − x̄)(1 − ȳ)(1 − xy)`.
pub fn lambda_xy(x: Complex64, y: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    Complex64::i() * (one - x.conj()) * (one - y.conj()) * (one - x * y)
}

/// The `mn` eigenvalues `λ(η, ξ_m^i) λ(ζ, ξ̄_n^j)` of the assembled form at a
/// bi-diagonal character, ascending.
pub fn hopf_spectrum(m: usize, n: usize, eta: Angle, zeta: Angle) -> Result<Vec<f64>> {
    if eta.is_unit() || zeta.is_unit() {
        return Err(SigError::BoundaryCharacter("η and ζ must differ from 1".into()));
    }
    let root = |t: f64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t);
    let (x, y) = (root(eta.to_f64()), root(zeta.to_f64()));
    let mut out: Vec<f64> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let a = lambda_xy(x, root(i as f64 / m as f64));
            let b = lambda_xy(y, root(j as f64 / n as f64).conj());
            (a * b).re
        })
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[(i64, i64)]) -> Character {
        Character::from_fractions(v).unwrap()
    }

    #[test]
    fn sigma_k_values() {
        assert_eq!(sigma_k(2, Angle::new(1, 2).unwrap()), 0);
        assert_eq!(sigma_k(3, Angle::new(1, 3).unwrap()), -1);
        assert_eq!(sigma_k(0, Angle::new(1, 3).unwrap()), 0);
    }

    #[test]
    fn closed_form_examples() {
        let s = HopfSpec::new(2, 2);
        let half = ch(&[(1, 2), (1, 2)]);
        assert_eq!(hopf_signature(&s, &half, &half), Ok(0));
        let third = ch(&[(1, 3), (1, 3)]);
        assert_eq!(hopf_signature(&s, &third, &third), Ok(1));
        let s = HopfSpec::new(3, 1);
        assert_eq!(hopf_signature(&s, &ch(&[(1, 5), (2, 7), (1, 3)]), &ch(&[(1, 4)])), Ok(0));
    }

    #[test]
    fn nullity_examples() {
        let half = ch(&[(1, 2), (1, 2)]);
        let third = ch(&[(1, 3), (1, 3)]);
        assert_eq!(hopf_nullity(2, 2, &half, &half), Ok(1));
        assert_eq!(hopf_nullity(2, 2, &third, &third), Ok(0));
        assert_eq!(hopf_nullity(2, 2, &half, &third), Ok(1));
        assert!(matches!(hopf_nullity(2, 2, &ch(&[(0, 1), (1, 2)]), &half), Err(SigError::BoundaryCharacter(_))));
    }

    #[test]
    fn degenerate_family_is_zero() {
        let f = hopf_seifert_family(1, 1).unwrap();
        assert!(f.forms().iter().all(|m| m == &vec![vec![0]]));
    }

    #[test]
    fn family_duality() {
        for m in 1..=4 {
            for n in 1..=4 {
                let f = hopf_seifert_family(m, n).unwrap();
                assert!(f.validate().is_empty(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn spectrum_trivial_cases() {
        let half = Angle::new(1, 2).unwrap();
        assert_eq!(hopf_spectrum(1, 1, half, half).unwrap(), vec![0.0]);
        assert!(lambda_xy(Complex64::new(-1.0, 0.0), Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }
}
