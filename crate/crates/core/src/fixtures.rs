//! Shipped link data: the (2,4)-torus link, the (4,2)-cable over the unknot
//! with the core retained, and their splice, the (3,6)-torus link.
//!
//! Each form is written with `π_I = 1 + ∏_{i∈I}(−t_i)` and `π̄_I` its
//! conjugate. The JSON files under `fixtures/` are the expanded matrices;
//! the builders below regenerate them from the factored form.

use std::collections::BTreeMap;

use crate::c_complex::{FormData, LinkData, SeifertFamily};
use crate::error::{Result, SigError};
use crate::laurent::{pi_factor, LaurentMatrix, LaurentPoly};

pub const NAMES: [&str; 3] = ["referee-KL1", "referee-KL2", "referee-L"];

const KL1_JSON: &str = include_str!("../fixtures/referee-KL1.json");
const KL2_JSON: &str = include_str!("../fixtures/referee-KL2.json");
const L_JSON: &str = include_str!("../fixtures/referee-L.json");

/// Loads a shipped fixture by name.
pub fn fixture(name: &str) -> Result<LinkData> {
    let src = match name {
        "referee-KL1" | "referee-K'L'" => KL1_JSON,
        "referee-KL2" | "referee-K''L''" => KL2_JSON,
        "referee-L" => L_JSON,
        _ => return Err(SigError::Parse(format!("unknown fixture {name:?}; known: {}", NAMES.join(", ")))),
    };
    serde_json::from_str(src).map_err(|e| SigError::Parse(format!("fixture {name}: {e}")))
}

fn pi(set: &[usize]) -> LaurentPoly {
    pi_factor(3, set)
}

fn pi_bar(set: &[usize]) -> LaurentPoly {
    pi_factor(3, set).conj()
}

fn t(exps: [i32; 3]) -> LaurentPoly {
    LaurentPoly::monomial(1, exps.to_vec())
}

fn unknot() -> LinkData {
    LinkData::from_family(SeifertFamily::trivial(1)).expect("trivial family")
}

fn singles(arity: usize) -> BTreeMap<Vec<usize>, LinkData> {
    (0..arity).map(|i| (vec![i], unknot())).collect()
}

/// `H_{K′∪L′} = −π̄_0 π̄_1 π_{01}`.
pub fn build_kl1() -> LinkData {
    let p = |s: &[usize]| pi_factor(2, s);
    let h = -&(&(&p(&[0]).conj() * &p(&[1]).conj()) * &p(&[0, 1]));
    let m = LaurentMatrix::with_default_names(2, vec![vec![h]]).expect("1×1");
    LinkData::new(FormData::Laurent(m), singles(2), Some("(2,4)-torus link".into())).expect("valid")
}

/// `H_{K″∪L″} = π̄_0 π̄_1 π̄_2 [[−π_0 π_{12}, t_1 t_2 π_0], [π_0, −π_{012}]]`.
pub fn build_kl2() -> LinkData {
    let pre = &(&pi_bar(&[0]) * &pi_bar(&[1])) * &pi_bar(&[2]);
    let rows = vec![vec![-&(&pi(&[0]) * &pi(&[1, 2])), &t([0, 1, 1]) * &pi(&[0])], vec![pi(&[0]), -&pi(&[0, 1, 2])]];
    let m = LaurentMatrix::with_default_names(3, rows).expect("2×2").scale_by(&pre);
    let mut boundary = singles(3);
    let hopf = LinkData::new(FormData::Family(SeifertFamily::trivial(2)), singles(2), Some("Hopf link".into()))
        .expect("valid");
    boundary.insert(vec![0, 1], hopf.clone());
    boundary.insert(vec![0, 2], hopf);
    boundary.insert(vec![1, 2], build_kl1());
    LinkData::new(FormData::Laurent(m), boundary, Some("(4,2)-cable with core".into())).expect("valid")
}

/// The 4×4 form of the (3,6)-torus link.
pub fn build_l() -> LinkData {
    let pre = &(&pi_bar(&[0]) * &pi_bar(&[1])) * &pi_bar(&[2]);
    let z = LaurentPoly::zero(3);
    let rows = vec![
        vec![-&(&pi(&[0]) * &pi(&[1, 2])), &t([0, 1, 1]) * &pi(&[0]), z.clone(), z.clone()],
        vec![pi(&[0]), -&pi(&[0, 1, 2]), &t([1, 0, 1]) * &pi(&[1]), &t([1, 0, 0]) * &pi(&[2])],
        vec![z.clone(), pi(&[1]), -&(&pi(&[1]) * &pi(&[0, 2])), -&(&(&t([1, 0, 0]) * &pi(&[1])) * &pi(&[2]))],
        vec![z, &t([0, 1, 0]) * &pi(&[2]), &pi(&[1]) * &pi(&[2]), -&(&pi(&[2]) * &pi(&[0, 1]))],
    ];
    let m = LaurentMatrix::with_default_names(3, rows).expect("4×4").scale_by(&pre);
    let mut boundary = singles(3);
    for pair in [vec![0, 1], vec![0, 2], vec![1, 2]] {
        boundary.insert(pair, build_kl1());
    }
    LinkData::new(FormData::Laurent(m), boundary, Some("(3,6)-torus link".into())).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_json_matches_factored_form() {
        assert_eq!(fixture("referee-KL1").unwrap(), build_kl1());
        assert_eq!(fixture("referee-KL2").unwrap(), build_kl2());
        assert_eq!(fixture("referee-L").unwrap(), build_l());
        assert!(fixture("nope").is_err());
    }
}

/// JSON with short arrays and objects kept on one line.
pub fn to_compact_json(data: &LinkData) -> String {
    fn write(v: &serde_json::Value, indent: usize, out: &mut String) {
        let flat = v.to_string();
        if flat.len() <= 72 || !(v.is_array() || v.is_object()) {
            out.push_str(&flat.replace(",\"", ", \"").replace("\":", "\": "));
            return;
        }
        let pad = "  ".repeat(indent + 1);
        let (open, close) = if v.is_array() { ('[', ']') } else { ('{', '}') };
        out.push(open);
        out.push('\n');
        let items: Vec<(Option<&String>, &serde_json::Value)> = match v {
            serde_json::Value::Array(a) => a.iter().map(|x| (None, x)).collect(),
            serde_json::Value::Object(o) => o.iter().map(|(k, x)| (Some(k), x)).collect(),
            _ => unreachable!(),
        };
        for (i, (key, item)) in items.iter().enumerate() {
            out.push_str(&pad);
            if let Some(k) = key {
                out.push_str(&format!("{}: ", serde_json::Value::String(k.to_string())));
            }
            write(item, indent + 1, out);
            if i + 1 < items.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str(&"  ".repeat(indent));
        out.push(close);
    }
    let mut out = String::new();
    write(&serde_json::to_value(data).expect("serializable"), 0, &mut out);
    out.push('\n');
    out
}
