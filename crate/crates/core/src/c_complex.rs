//! Seifert forms of C-complexes and the Hermitian form `H(ω)`.
//!
//! For a family `θ^ε`, `ε ∈ {±1}^μ`, the form at `ω` in the open torus is
//!
//! ```text
//! H(ω) = ∏_i (1 − ω̄_i) · Σ_ε ( ∏_{i : ε_i = −1} (−ω_i) ) θ^ε
//! ```
//!
//! whose signature and nullity are `σ_L(ω)` and `null_L(ω)`. Characters with
//! unit coordinates are handled by deleting the corresponding colors, which
//! requires explicit data for the sublink.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Result, SigError};
use crate::hermitian::{HermitianMatrix, Inertia};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::splice::{Domain, SigFn};
use crate::torus::Character;

pub type IntMatrix = Vec<Vec<i64>>;

/// The `2^μ` Seifert matrices of a C-complex.
///
/// Forms are indexed by a bit mask: bit `i` set means `ε_i = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct SeifertFamily {
    arity: usize,
    generators: usize,
    forms: Vec<IntMatrix>,
    basis: bool,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    arity: usize,
    generators: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    forms: BTreeMap<String, IntMatrix>,
    #[serde(default = "default_basis")]
    basis: bool,
}

fn default_basis() -> bool {
    true
}

/// `"+-+"` style key for a sign mask.
pub fn sign_key(mask: usize, arity: usize) -> String {
    (0..arity).map(|i| if mask >> i & 1 == 1 { '-' } else { '+' }).collect()
}

/// Parses `"+-"`; the Unicode minus is accepted as well.
pub fn parse_sign_key(key: &str, arity: usize) -> Result<usize> {
    let chars: Vec<char> = key.chars().collect();
    if chars.len() != arity {
        return Err(SigError::InvalidFamily(format!("sign key {key:?} has wrong length")));
    }
    chars.iter().enumerate().try_fold(0usize, |mask, (i, c)| match c {
        '+' => Ok(mask),
        '-' | '−' => Ok(mask | 1 << i),
        _ => Err(SigError::InvalidFamily(format!("bad sign key {key:?}"))),
    })
}

impl TryFrom<FamilyRepr> for SeifertFamily {
    type Error = SigError;
    fn try_from(r: FamilyRepr) -> Result<SeifertFamily> {
        let count = 1usize << r.arity;
        let mut forms: Vec<Option<IntMatrix>> = vec![None; count];
        for (key, m) in r.forms {
            let mask = parse_sign_key(&key, r.arity)?;
            if forms[mask].replace(m).is_some() {
                return Err(SigError::InvalidFamily(format!("duplicate sign key {key:?}")));
            }
        }
        let forms = forms
            .into_iter()
            .enumerate()
            .map(|(mask, m)| match m {
                Some(m) => Ok(m),
                None if r.generators == 0 => Ok(Vec::new()),
                None => Err(SigError::InvalidFamily(format!("missing form {}", sign_key(mask, r.arity)))),
            })
            .collect::<Result<Vec<_>>>()?;
        SeifertFamily::new(r.arity, r.generators, forms, r.basis)
    }
}

impl From<SeifertFamily> for FamilyRepr {
    fn from(f: SeifertFamily) -> FamilyRepr {
        FamilyRepr {
            forms: f
                .forms
                .into_iter()
                .enumerate()
                .filter(|_| f.generators > 0)
                .map(|(mask, m)| (sign_key(mask, f.arity), m))
                .collect(),
            arity: f.arity,
            generators: f.generators,
            basis: f.basis,
        }
    }
}

impl SeifertFamily {
    /// Checks shapes only; see [`SeifertFamily::validate`] for duality.
    pub fn new(arity: usize, generators: usize, forms: Vec<IntMatrix>, basis: bool) -> Result<SeifertFamily> {
        if arity == 0 {
            return Err(SigError::InvalidFamily("arity must be at least 1".into()));
        }
        if arity > 16 {
            return Err(SigError::InvalidFamily(format!("arity {arity} is too large")));
        }
        check_len(1 << arity, forms.len())?;
        for (mask, m) in forms.iter().enumerate() {
            if m.len() != generators || m.iter().any(|r| r.len() != generators) {
                return Err(SigError::InvalidFamily(format!(
                    "form {} is not {generators}×{generators}",
                    sign_key(mask, arity)
                )));
            }
        }
        Ok(SeifertFamily { arity, generators, forms, basis })
    }

    /// The family with no generators (`H(ω)` is the empty matrix).
    pub fn trivial(arity: usize) -> SeifertFamily {
        SeifertFamily { arity, generators: 0, forms: vec![Vec::new(); 1 << arity], basis: true }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn is_basis(&self) -> bool {
        self.basis
    }

    pub fn form(&self, mask: usize) -> &IntMatrix {
        &self.forms[mask]
    }

    pub fn forms(&self) -> &[IntMatrix] {
        &self.forms
    }

    /// Violations of `θ^{−ε} = (θ^ε)ᵀ`; empty when the family is valid.
    pub fn validate(&self) -> Vec<String> {
        let full = (1usize << self.arity) - 1;
        let mut report = Vec::new();
        for mask in 0..=full {
            let (a, b) = (&self.forms[mask], &self.forms[full ^ mask]);
            for i in 0..self.generators {
                for j in 0..self.generators {
                    if a[i][j] != b[j][i] {
                        report.push(format!(
                            "θ^{}[{i}][{j}] = {} but θ^{}[{j}][{i}] = {}",
                            sign_key(mask, self.arity),
                            a[i][j],
                            sign_key(full ^ mask, self.arity),
                            b[j][i]
                        ));
                    }
                }
            }
        }
        report
    }

    /// Restricts every form to the listed generators.
    pub fn restrict(&self, keep: &[usize], basis: bool) -> Result<SeifertFamily> {
        for &k in keep {
            if k >= self.generators {
                return Err(SigError::IndexOutOfRange { index: k, len: self.generators });
            }
        }
        let forms = self
            .forms
            .iter()
            .map(|m| keep.iter().map(|&i| keep.iter().map(|&j| m[i][j]).collect()).collect())
            .collect();
        Ok(SeifertFamily { arity: self.arity, generators: keep.len(), forms, basis })
    }

    /// `Uᵀ θ^ε U` for every `ε`.
    pub fn congruent(&self, u: &[Vec<i64>]) -> Result<SeifertFamily> {
        check_len(self.generators, u.len())?;
        let k = u.first().map_or(0, Vec::len);
        let forms = self
            .forms
            .iter()
            .map(|m| {
                (0..k)
                    .map(|r| {
                        (0..k)
                            .map(|c| {
                                let mut s = 0;
                                for i in 0..self.generators {
                                    for j in 0..self.generators {
                                        s += u[i][r] * m[i][j] * u[j][c];
                                    }
                                }
                                s
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SeifertFamily { arity: self.arity, generators: k, forms, basis: self.basis })
    }

    /// `H` as a matrix of Laurent polynomials in `t_i = ω_i`.
    pub fn to_laurent(&self) -> LaurentMatrix {
        let mu = self.arity;
        let mut prefactor = LaurentPoly::constant(mu, 1);
        for i in 0..mu {
            let mut e = vec![0; mu];
            e[i] = -1;
            prefactor = &prefactor * &(&LaurentPoly::constant(mu, 1) - &LaurentPoly::monomial(1, e));
        }
        let shifts: Vec<LaurentPoly> = (0..1usize << mu)
            .map(|mask| {
                let exps: Vec<i32> = (0..mu).map(|i| (mask >> i & 1) as i32).collect();
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                LaurentPoly::monomial(sign, exps)
            })
            .collect();
        let g = self.generators;
        let entries = (0..g)
            .map(|r| {
                (0..g)
                    .map(|c| {
                        let mut sum = LaurentPoly::zero(mu);
                        for (mask, shift) in shifts.iter().enumerate() {
                            let x = self.forms[mask][r][c];
                            if x != 0 {
                                sum = &sum + &shift.scale(x);
                            }
                        }
                        &sum * &prefactor
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix::with_default_names(mu, entries).expect("shapes checked")
    }

    pub fn assemble(&self, omega: &Character) -> Result<HermitianMatrix> {
        self.assemble_with(&self.to_laurent(), omega)
    }

    fn assemble_with(&self, laurent: &LaurentMatrix, omega: &Character) -> Result<HermitianMatrix> {
        check_len(self.arity, omega.arity())?;
        require_open(omega)?;
        laurent.evaluate(omega)
    }

    pub fn signature(&self, omega: &Character) -> Result<i64> {
        Ok(self.assemble(omega)?.inertia().signature())
    }

    pub fn nullity(&self, omega: &Character) -> Result<usize> {
        if !self.basis {
            return Err(SigError::NullityUnavailable);
        }
        Ok(self.assemble(omega)?.inertia().nullity)
    }
}

fn require_open(omega: &Character) -> Result<()> {
    if omega.is_open() {
        Ok(())
    } else {
        Err(SigError::BoundaryCharacter(format!("({omega}) is not in the open torus")))
    }
}

/// Source of the Hermitian form on the open torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormData {
    Family(SeifertFamily),
    Laurent(LaurentMatrix),
}

/// A colored link given by its form on the open torus, plus the data of
/// sublinks used on characters with unit coordinates.
///
/// Boundary keys list the kept colors (those with coordinate `≠ 1`) in
/// increasing order, e.g. `"1,2"`. A character whose non-unit colors form a
/// key is evaluated on that sublink; otherwise the smallest key containing
/// them is used and the sublink resolves the rest. The all-unit character
/// always evaluates to 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LinkDataRepr", into = "LinkDataRepr")]
pub struct LinkData {
    label: Option<String>,
    form: FormData,
    laurent: LaurentMatrix,
    boundary: BTreeMap<Vec<usize>, LinkData>,
}

#[derive(Serialize, Deserialize)]
struct LinkDataRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(flatten)]
    form: FormData,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    boundary: BTreeMap<String, LinkData>,
}

impl TryFrom<LinkDataRepr> for LinkData {
    type Error = SigError;
    fn try_from(r: LinkDataRepr) -> Result<LinkData> {
        let arity = form_arity(&r.form);
        let mut boundary = BTreeMap::new();
        for (key, sub) in r.boundary {
            boundary.insert(parse_colors(&key, arity)?, sub);
        }
        LinkData::new(r.form, boundary, r.label)
    }
}

impl From<LinkData> for LinkDataRepr {
    fn from(d: LinkData) -> LinkDataRepr {
        LinkDataRepr {
            label: d.label,
            form: d.form,
            boundary: d.boundary.into_iter().map(|(k, v)| (colors_key(&k), v)).collect(),
        }
    }
}

fn form_arity(form: &FormData) -> usize {
    match form {
        FormData::Family(f) => f.arity(),
        FormData::Laurent(m) => m.arity(),
    }
}

pub fn colors_key(colors: &[usize]) -> String {
    colors.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_colors(key: &str, arity: usize) -> Result<Vec<usize>> {
    let colors = key
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| SigError::Parse(format!("bad color list {key:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if colors.windows(2).any(|w| w[0] >= w[1]) || colors.iter().any(|&c| c >= arity) {
        return Err(SigError::InvalidFamily(format!("color list {key:?} must be increasing and below {arity}")));
    }
    Ok(colors)
}

impl LinkData {
    pub fn new(form: FormData, boundary: BTreeMap<Vec<usize>, LinkData>, label: Option<String>) -> Result<LinkData> {
        let laurent = match &form {
            FormData::Family(f) => {
                let report = f.validate();
                if let Some(first) = report.first() {
                    return Err(SigError::InvalidFamily(first.clone()));
                }
                f.to_laurent()
            }
            FormData::Laurent(m) => {
                if !m.is_symbolically_hermitian() {
                    return Err(SigError::InvalidFamily("Laurent matrix is not Hermitian".into()));
                }
                m.clone()
            }
        };
        let arity = laurent.arity();
        for (colors, sub) in &boundary {
            if colors.is_empty() || colors.len() >= arity {
                return Err(SigError::InvalidFamily(format!(
                    "boundary key {:?} must keep between 1 and {} colors",
                    colors_key(colors),
                    arity.saturating_sub(1)
                )));
            }
            if colors.iter().any(|&c| c >= arity) || colors.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SigError::InvalidFamily(format!("bad boundary key {:?}", colors_key(colors))));
            }
            check_len(colors.len(), sub.arity())?;
        }
        Ok(LinkData { label, form, laurent, boundary })
    }

    pub fn from_family(family: SeifertFamily) -> Result<LinkData> {
        LinkData::new(FormData::Family(family), BTreeMap::new(), None)
    }

    pub fn from_laurent(matrix: LaurentMatrix) -> Result<LinkData> {
        LinkData::new(FormData::Laurent(matrix), BTreeMap::new(), None)
    }

    pub fn with_boundary(mut self, colors: Vec<usize>, sub: LinkData) -> Result<LinkData> {
        self.boundary.insert(colors, sub);
        LinkData::new(self.form, self.boundary, self.label)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> LinkData {
        self.label = Some(label.into());
        self
    }

    pub fn arity(&self) -> usize {
        self.laurent.arity()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn form(&self) -> &FormData {
        &self.form
    }

    pub fn laurent(&self) -> &LaurentMatrix {
        &self.laurent
    }

    pub fn boundary(&self) -> &BTreeMap<Vec<usize>, LinkData> {
        &self.boundary
    }

    fn nullity_meaningful(&self) -> bool {
        match &self.form {
            FormData::Family(f) => f.is_basis(),
            FormData::Laurent(_) => true,
        }
    }

    /// `H(ω)` on the open torus.
    pub fn assemble(&self, omega: &Character) -> Result<HermitianMatrix> {
        check_len(self.arity(), omega.arity())?;
        require_open(omega)?;
        self.laurent.evaluate(omega)
    }

    pub fn inertia(&self, omega: &Character) -> Result<Inertia> {
        Ok(self.assemble(omega)?.inertia())
    }

    /// Signature on the whole torus, delegating unit coordinates to the
    /// boundary table.
    pub fn signature(&self, omega: &Character) -> Result<i64> {
        check_len(self.arity(), omega.arity())?;
        let kept = omega.non_unit_colors();
        if kept.is_empty() {
            return Ok(0);
        }
        if kept.len() == self.arity() {
            return Ok(self.inertia(omega)?.signature());
        }
        let (colors, sub) = self
            .boundary
            .iter()
            .filter(|(colors, _)| kept.iter().all(|c| colors.contains(c)))
            .min_by_key(|(colors, _)| colors.len())
            .ok_or_else(|| {
                SigError::BoundaryCharacter(format!(
                    "no sublink data for colors {{{}}} of {}",
                    colors_key(&kept),
                    self.label.as_deref().unwrap_or("link")
                ))
            })?;
        sub.signature(&omega.select(colors)?)
    }

    pub fn nullity(&self, omega: &Character) -> Result<usize> {
        if !self.nullity_meaningful() {
            return Err(SigError::NullityUnavailable);
        }
        Ok(self.inertia(omega)?.nullity)
    }

    pub fn domain(&self) -> Domain {
        if self.boundary.is_empty() {
            Domain::Open
        } else {
            Domain::Slices(self.boundary.keys().cloned().collect())
        }
    }

    pub fn sig_fn(self) -> SigFn {
        let data = Arc::new(self);
        let label = data.label.clone().unwrap_or_else(|| "link".into());
        let (d1, d2) = (data.clone(), data.clone());
        let sig = SigFn::new(data.arity(), data.domain(), label, move |w| d1.signature(w));
        if data.nullity_meaningful() {
            sig.with_nullity(move |w| d2.nullity(w))
        } else {
            sig
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[(i64, i64)]) -> Character {
        Character::from_fractions(v).unwrap()
    }

    #[test]
    fn one_color_at_minus_one() {
        let a = 3;
        let f = SeifertFamily::new(1, 1, vec![vec![vec![a]], vec![vec![a]]], true).unwrap();
        let h = f.assemble(&ch(&[(1, 2)])).unwrap();
        assert_eq!(h.get(0, 0).as_rational().unwrap().to_integer(), (4 * a).into());
    }

    #[test]
    fn empty_family() {
        let f = SeifertFamily::trivial(2);
        assert!(f.validate().is_empty());
        assert_eq!(f.signature(&ch(&[(1, 3), (2, 5)])), Ok(0));
        assert_eq!(f.nullity(&ch(&[(1, 3), (2, 5)])), Ok(0));
        let json = r#"{"arity": 2, "generators": 0}"#;
        let parsed: SeifertFamily = serde_json::from_str(json).unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn duality_violation_reported() {
        let f =
            SeifertFamily::new(1, 2, vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 1], vec![0, 0]]], true).unwrap();
        assert!(!f.validate().is_empty());
        assert!(LinkData::from_family(f).is_err());
    }

    #[test]
    fn boundary_requires_data() {
        let f = SeifertFamily::trivial(2);
        assert!(matches!(f.signature(&ch(&[(0, 1), (1, 3)])), Err(SigError::BoundaryCharacter(_))));
        let link = LinkData::from_family(f.clone()).unwrap();
        assert!(matches!(link.signature(&ch(&[(0, 1), (1, 3)])), Err(SigError::BoundaryCharacter(_))));
        assert_eq!(link.signature(&ch(&[(0, 1), (0, 1)])), Ok(0));
        let link = link.with_boundary(vec![1], LinkData::from_family(SeifertFamily::trivial(1)).unwrap()).unwrap();
        assert_eq!(link.signature(&ch(&[(0, 1), (1, 3)])), Ok(0));
    }

    #[test]
    fn sign_keys() {
        assert_eq!(sign_key(0b10, 2), "+-");
        assert_eq!(parse_sign_key("+−", 2), Ok(0b10));
        assert!(parse_sign_key("+", 2).is_err());
    }

    #[test]
    fn json_round_trip_with_boundary() {
        let trefoil =
            SeifertFamily::new(1, 2, vec![vec![vec![-1, 1], vec![0, -1]], vec![vec![-1, 0], vec![1, -1]]], true)
                .unwrap();
        let link = LinkData::from_family(SeifertFamily::trivial(2))
            .unwrap()
            .with_boundary(vec![0], LinkData::from_family(trefoil).unwrap())
            .unwrap()
            .with_label("test");
        let s = serde_json::to_string(&link).unwrap();
        assert!(s.contains("\"boundary\":{\"0\":"));
        let back: LinkData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, link);
        assert_eq!(back.signature(&ch(&[(1, 2), (0, 1)])), Ok(-2));
    }
}
