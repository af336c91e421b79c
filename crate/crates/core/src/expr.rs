//! JSON expressions describing links built by splicing, cabling and merging.
//!
//! ```json
//! {"splice": [{"hopf": [1, 2]}, [1, 1], {"fixture": "referee-KL2"}, [1, 1]]}
//! ```
//!
//! File leaves are resolved relative to the directory of the expression file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::c_complex::LinkData;
use crate::error::{Result, SigError};
use crate::fixtures::fixture;
use crate::hopf::{hopf_sig_fn, HopfSpec};
use crate::splice::{
    cable_parallel, merge_colors, permute, satellite, splice, splice_knot, to_levine_tristram, DistinguishedSigFn,
    Domain, SigFn,
};
use crate::torus::LinkingVector;
use crate::torus_cables::hirzebruch;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Hopf(usize, usize),
    /// C-complex data: a Seifert family or Laurent matrix, optionally with boundary tables.
    Seifert(PathBuf),
    Laurent(PathBuf),
    Fixture(String),
    Zero(usize),
    /// Levine–Tristram signature of the torus knot `T(p, q)`.
    Torus(i64, i64),
    Splice(Box<Expr>, Lambda, Box<Expr>, Lambda),
    /// `[knot, expr″, λ″]`.
    SpliceKnot(Box<Expr>, Box<Expr>, Lambda),
    Cable(CableArgs),
    Merge(Box<Expr>, i64),
    Satellite(Box<Expr>, Box<Expr>, i64),
    Permute(Box<Expr>, Vec<usize>),
    /// `[expr, linking matrix]`.
    Lt(Box<Expr>, Vec<Vec<i64>>),
}

/// A linking vector written as a bare integer (one entry) or a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lambda {
    One(i64),
    Many(Vec<i64>),
}

impl Lambda {
    pub fn to_vector(&self) -> LinkingVector {
        match self {
            Lambda::One(k) => LinkingVector::new(vec![*k]),
            Lambda::Many(v) => LinkingVector::new(v.clone()),
        }
    }
}

/// `[expr, ν]` takes `λ = (1, …, 1)`; `[expr, λ, ν]` is explicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CableArgs {
    Short(Box<Expr>, usize),
    Full(Box<Expr>, Lambda, usize),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        serde_json::from_str(src).map_err(|e| SigError::Parse(format!("expression: {e}")))
    }

    /// Reads an expression file; returns it with the directory used for file leaves.
    pub fn load(path: &Path) -> Result<(Expr, PathBuf)> {
        let src = std::fs::read_to_string(path).map_err(|e| SigError::Io(format!("{}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Expr::parse(&src)?, dir))
    }

    pub fn build(&self, base: &Path) -> Result<SigFn> {
        Ok(match self {
            Expr::Hopf(m, n) => hopf_sig_fn(&HopfSpec::new(*m, *n)),
            Expr::Seifert(p) | Expr::Laurent(p) => load_link(&base.join(p))?.sig_fn(),
            Expr::Fixture(name) => fixture(name)?.sig_fn(),
            Expr::Zero(k) => SigFn::zero(*k),
            Expr::Torus(p, q) => torus_knot(*p, *q)?,
            Expr::Splice(a, la, b, lb) => {
                let f1 = DistinguishedSigFn::new(a.build(base)?, la.to_vector())?;
                let f2 = DistinguishedSigFn::new(b.build(base)?, lb.to_vector())?;
                splice(&f1, &f2)
            }
            Expr::SpliceKnot(k, b, lb) => {
                splice_knot(&k.build(base)?, &DistinguishedSigFn::new(b.build(base)?, lb.to_vector())?)?
            }
            Expr::Cable(args) => {
                let (e, lambda, nu) = match args {
                    CableArgs::Short(e, nu) => {
                        let f = e.build(base)?;
                        let ones = LinkingVector::ones(f.arity().saturating_sub(1));
                        (f, ones, *nu)
                    }
                    CableArgs::Full(e, l, nu) => (e.build(base)?, l.to_vector(), *nu),
                };
                cable_parallel(&DistinguishedSigFn::new(e, lambda)?, nu)?
            }
            Expr::Merge(e, lk) => merge_colors(&e.build(base)?, *lk)?,
            Expr::Satellite(k, p, q) => satellite(&k.build(base)?, &p.build(base)?, *q)?,
            Expr::Permute(e, perm) => permute(&e.build(base)?, perm)?,
            Expr::Lt(e, lk) => to_levine_tristram(&e.build(base)?, lk)?,
        })
    }
}

/// Reads C-complex link data from a JSON file.
pub fn load_link(path: &Path) -> Result<LinkData> {
    let src = std::fs::read_to_string(path).map_err(|e| SigError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&src).map_err(|e| SigError::Parse(format!("{}: {e}", path.display())))
}

fn torus_knot(p: i64, q: i64) -> Result<SigFn> {
    if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(SigError::InvalidParams(format!("T({p},{q}) is not a torus knot")));
    }
    let mirror = p * q < 0;
    Ok(SigFn::new(1, Domain::Full, format!("torus({p},{q})"), move |w| {
        let s = hirzebruch(p.abs(), q.abs(), w.get(0)?)?;
        Ok(if mirror { -s } else { s })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Character;

    fn eval(src: &str, at: &str) -> Result<i64> {
        Expr::parse(src)?.build(Path::new("."))?.evaluate(&at.parse::<Character>()?)
    }

    #[test]
    fn leaves() {
        assert_eq!(eval(r#"{"hopf": [2, 2]}"#, "1/3,1/3,1/3,1/3"), Ok(1));
        assert_eq!(eval(r#"{"fixture": "referee-L"}"#, "1/8,1/8,1/8"), Ok(4));
        assert_eq!(eval(r#"{"zero": 2}"#, "1/8,1/8"), Ok(0));
        assert_eq!(eval(r#"{"torus": [2, 3]}"#, "1/2"), Ok(-2));
        assert_eq!(eval(r#"{"torus": [2, -3]}"#, "1/2"), Ok(2));
    }

    #[test]
    fn splice_guard() {
        let src = r#"{"splice": [{"hopf": [1, 1]}, 2, {"hopf": [1, 1]}, 2]}"#;
        assert!(matches!(eval(src, "1/2,1/2"), Err(SigError::GuardViolated(_))));
    }

    #[test]
    fn nodes() {
        assert_eq!(eval(r#"{"cable": [{"hopf": [1, 2]}, 2]}"#, "1/3,1/3,1/3,1/3"), Ok(1));
        assert_eq!(eval(r#"{"cable": [{"hopf": [1, 2]}, [1, 1], 2]}"#, "1/3,1/3,1/3,1/3"), Ok(1));
        assert_eq!(eval(r#"{"merge": [{"hopf": [1, 1]}, 1]}"#, "1/3"), Ok(-1));
        assert_eq!(eval(r#"{"satellite": [{"torus": [2, 3]}, {"zero": 1}, 2]}"#, "1/4"), Ok(-2));
        assert_eq!(eval(r#"{"lt": [{"hopf": [1, 1]}, [[0, 1], [1, 0]]]}"#, "1/3"), Ok(-1));
        assert_eq!(eval(r#"{"permute": [{"hopf": [2, 2]}, [2, 0, 3, 1]]}"#, "1/3,1/3,1/3,1/3"), Ok(1));
        assert_eq!(eval(r#"{"splice_knot": [{"torus": [2, 3]}, {"hopf": [1, 1]}, 2]}"#, "1/4"), Ok(-2));
    }

    #[test]
    fn bad_input() {
        assert!(matches!(Expr::parse(r#"{"hopf": 3}"#), Err(SigError::Parse(_))));
        assert!(matches!(Expr::parse(r#"{"nope": 3}"#), Err(SigError::Parse(_))));
        assert!(matches!(eval(r#"{"torus": [2, 4]}"#, "1/2"), Err(SigError::InvalidParams(_))));
        assert!(matches!(
            eval(r#"{"splice": [{"hopf": [1, 2]}, 2, {"hopf": [1, 1]}, 1]}"#, "1/3,1/3"),
            Err(SigError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let src = r#"{"splice":[{"fixture":"referee-KL1"},2,{"fixture":"referee-KL2"},[1,1]]}"#;
        let e = Expr::parse(src).unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), src);
        assert_eq!(eval(src, "1/8,1/8,1/8"), Ok(4));
    }
}
