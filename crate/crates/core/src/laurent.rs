//! Integer Laurent polynomials in commuting variables `t_1, …, t_μ` and
//! matrices of them, evaluated at characters of the torus.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{check_len, Result, SigError};
use crate::hermitian::HermitianMatrix;
use crate::torus::Character;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    arity: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub exponents: Vec<i32>,
}

impl LaurentPoly {
    pub fn zero(arity: usize) -> LaurentPoly {
        LaurentPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: i64) -> LaurentPoly {
        LaurentPoly::monomial(c, vec![0; arity])
    }

    pub fn monomial(coeff: i64, exponents: Vec<i32>) -> LaurentPoly {
        let mut p = LaurentPoly::zero(exponents.len());
        if coeff != 0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// The variable `t_i`.
    pub fn var(arity: usize, i: usize) -> LaurentPoly {
        let mut e = vec![0; arity];
        e[i] = 1;
        LaurentPoly::monomial(1, e)
    }

    pub fn from_terms(arity: usize, terms: &[Term]) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero(arity);
        for t in terms {
            check_len(arity, t.exponents.len())?;
            p.add_term(t.exponents.clone(), t.coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, exponents: Vec<i32>, coeff: i64) {
        let c = self.terms.entry(exponents).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.terms.iter().map(|(e, &c)| Term { coeff: c, exponents: e.clone() }).collect()
    }

    /// Substitutes `t_i ↦ t_i^{-1}` and keeps the integer coefficients; on the
    /// torus this is complex conjugation.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, &c)| (e.iter().map(|x| -x).collect(), c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        if k == 0 {
            return LaurentPoly::zero(self.arity);
        }
        LaurentPoly { arity: self.arity, terms: self.terms.iter().map(|(e, &c)| (e.clone(), c * k)).collect() }
    }

    /// Value at `t_i = ζ_N^{k_i}` where `θ_i = k_i / N`.
    pub fn evaluate(&self, omega: &Character) -> Result<CyclotomicNumber> {
        check_len(self.arity, omega.arity())?;
        let level = omega.level();
        Ok(self.evaluate_at_level(&exponent_steps(omega, level), level))
    }

    fn evaluate_at_level(&self, steps: &[i64], level: u64) -> CyclotomicNumber {
        let mut coeffs = vec![0i64; level as usize];
        for (e, &c) in &self.terms {
            let k: i64 = e.iter().zip(steps).map(|(&x, &s)| x as i64 * s).sum();
            coeffs[k.rem_euclid(level as i64) as usize] += c;
        }
        CyclotomicNumber::from_int_coeffs(level, &coeffs)
    }
}

fn exponent_steps(omega: &Character, level: u64) -> Vec<i64> {
    omega.angles().iter().map(|a| a.numer() * (level as i64 / a.denom())).collect()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.arity.max(rhs.arity));
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LaurentMatrixRepr", into = "LaurentMatrixRepr")]
pub struct LaurentMatrix {
    variables: Vec<String>,
    entries: Vec<Vec<LaurentPoly>>,
}

#[derive(Serialize, Deserialize)]
struct LaurentMatrixRepr {
    variables: Vec<String>,
    entries: Vec<Vec<Vec<Term>>>,
}

impl TryFrom<LaurentMatrixRepr> for LaurentMatrix {
    type Error = SigError;
    fn try_from(r: LaurentMatrixRepr) -> Result<LaurentMatrix> {
        let arity = r.variables.len();
        let entries = r
            .entries
            .iter()
            .map(|row| row.iter().map(|t| LaurentPoly::from_terms(arity, t)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        LaurentMatrix::new(r.variables, entries)
    }
}

impl From<LaurentMatrix> for LaurentMatrixRepr {
    fn from(m: LaurentMatrix) -> LaurentMatrixRepr {
        LaurentMatrixRepr {
            entries: m.entries.iter().map(|row| row.iter().map(LaurentPoly::terms).collect()).collect(),
            variables: m.variables,
        }
    }
}

impl LaurentMatrix {
    pub fn new(variables: Vec<String>, entries: Vec<Vec<LaurentPoly>>) -> Result<LaurentMatrix> {
        let g = entries.len();
        for row in &entries {
            check_len(g, row.len())?;
            for p in row {
                check_len(variables.len(), p.arity())?;
            }
        }
        Ok(LaurentMatrix { variables, entries })
    }

    /// Variables named `t0, t1, …`.
    pub fn with_default_names(arity: usize, entries: Vec<Vec<LaurentPoly>>) -> Result<LaurentMatrix> {
        LaurentMatrix::new((0..arity).map(|i| format!("t{i}")).collect(), entries)
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    /// Multiplies every entry by `p`.
    pub fn scale_by(&self, p: &LaurentPoly) -> LaurentMatrix {
        LaurentMatrix {
            variables: self.variables.clone(),
            entries: self.entries.iter().map(|row| row.iter().map(|e| e * p).collect()).collect(),
        }
    }

    /// Symbolic Hermitian check: `M_ij = conj(M_ji)` as Laurent polynomials.
    pub fn is_symbolically_hermitian(&self) -> bool {
        let g = self.size();
        (0..g).all(|i| (i..g).all(|j| self.entries[i][j] == self.entries[j][i].conj()))
    }

    /// Substitutes the character; the result is checked Hermitian exactly.
    pub fn evaluate(&self, omega: &Character) -> Result<HermitianMatrix> {
        check_len(self.arity(), omega.arity())?;
        let level = omega.level();
        let steps = exponent_steps(omega, level);
        let rows =
            self.entries.iter().map(|row| row.iter().map(|p| p.evaluate_at_level(&steps, level)).collect()).collect();
        HermitianMatrix::new(rows)
    }
}

/// `π_I = 1 + ∏_{i∈I}(−t_i)`.
pub fn pi_factor(arity: usize, set: &[usize]) -> LaurentPoly {
    let mut e = vec![0; arity];
    for &i in set {
        e[i] = 1;
    }
    let sign = if set.len().is_even() { 1 } else { -1 };
    &LaurentPoly::constant(arity, 1) + &LaurentPoly::monomial(sign, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Angle;

    #[test]
    fn t_plus_t_inverse_at_quarter() {
        let p = &LaurentPoly::var(1, 0) + &LaurentPoly::var(1, 0).conj();
        let m = LaurentMatrix::with_default_names(1, vec![vec![p]]).unwrap();
        let h = m.evaluate(&Character::new(vec![Angle::new(1, 4).unwrap()])).unwrap();
        assert!(h.get(0, 0).is_zero());
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = LaurentMatrix::with_default_names(1, vec![vec![LaurentPoly::var(1, 0)]]).unwrap();
        let err = m.evaluate(&Character::new(vec![Angle::new(1, 4).unwrap()])).unwrap_err();
        assert_eq!(err, SigError::NotHermitian { row: 0, col: 0 });
    }

    #[test]
    fn integer_matrix_unchanged() {
        let c = |k| LaurentPoly::constant(2, k);
        let m = LaurentMatrix::with_default_names(2, vec![vec![c(3), c(0)], vec![c(0), c(-2)]]).unwrap();
        let h = m.evaluate(&Character::from_fractions(&[(1, 5), (2, 7)]).unwrap()).unwrap();
        let r = |i, j| h.get(i, j).as_rational().unwrap().to_integer();
        assert_eq!([r(0, 0), r(0, 1), r(1, 0), r(1, 1)], [3.into(), 0.into(), 0.into(), (-2).into()]);
        assert_eq!(h.signature_nullity(), (0, 0));
    }

    #[test]
    fn json_round_trip() {
        let p = &pi_factor(2, &[0, 1]) * &LaurentPoly::var(2, 1).conj();
        let m = LaurentMatrix::with_default_names(2, vec![vec![p]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"exponents\":[1,0]"));
        let back: LaurentMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
