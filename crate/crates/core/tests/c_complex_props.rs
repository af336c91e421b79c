use proptest::prelude::*;
use splice_sig::c_complex::{parse_sign_key, FormData, SeifertFamily};
use splice_sig::cyclotomic::CyclotomicNumber;
use splice_sig::fixtures::fixture;
use splice_sig::torus::{Angle, Character};

type IntMatrix = Vec<Vec<i64>>;

fn matrix(g: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, g), g)
}

fn transpose(m: &IntMatrix) -> IntMatrix {
    let g = m.len();
    (0..g).map(|i| (0..g).map(|j| m[j][i]).collect()).collect()
}

/// Random family satisfying `θ^{−ε} = (θ^ε)ᵀ`.
fn family(arity: usize, g: usize) -> impl Strategy<Value = SeifertFamily> {
    let full = (1usize << arity) - 1;
    prop::collection::vec(matrix(g), 1usize << arity).prop_map(move |raw| {
        let mut forms = raw.clone();
        for mask in 0..=full {
            if mask > full ^ mask {
                forms[mask] = transpose(&raw[full ^ mask]);
            }
        }
        SeifertFamily::new(arity, g, forms, true).unwrap()
    })
}

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..12).prop_map(|k| Angle::new(k, 12).unwrap())
}

fn open_char(k: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(angle(), k).prop_map(Character::new)
}

fn unimodular(g: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..g, 0..g, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut u: IntMatrix = (0..g).map(|i| (0..g).map(|j| i64::from(i == j)).collect()).collect();
        for (r, s, k) in ops {
            if r != s {
                for row in u.iter_mut() {
                    row[r] += k * row[s];
                }
            }
        }
        u
    })
}

fn keyed(arity: usize, g: usize, entries: &[(&str, IntMatrix)]) -> SeifertFamily {
    let mut forms = vec![vec![vec![0; g]; g]; 1 << arity];
    for (key, m) in entries {
        forms[parse_sign_key(key, arity).unwrap()] = m.clone();
    }
    SeifertFamily::new(arity, g, forms, true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_invariance((f, w) in (1usize..=3, 1usize..=3).prop_flat_map(|(a, g)| (family(a, g), open_char(a)))) {
        prop_assert_eq!(f.signature(&w).unwrap(), f.signature(&w.conjugate()).unwrap());
        prop_assert_eq!(f.nullity(&w).unwrap(), f.nullity(&w.conjugate()).unwrap());
    }

    #[test]
    fn congruence_invariance(
        (f, u, w) in (1usize..=3, 1usize..=3).prop_flat_map(|(a, g)| (family(a, g), unimodular(g), open_char(a)))
    ) {
        let c = f.congruent(&u).unwrap();
        prop_assert!(c.validate().is_empty());
        prop_assert_eq!(c.signature(&w).unwrap(), f.signature(&w).unwrap());
        prop_assert_eq!(c.nullity(&w).unwrap(), f.nullity(&w).unwrap());
    }

    /// Two colors: `H = (1−ω̄_1)(1−ω̄_2)(θ^{++} − ω_1θ^{−+} − ω_2θ^{+−} + ω_1ω_2θ^{−−})`.
    #[test]
    fn two_color_expansion((f, w) in (1usize..=3).prop_flat_map(|g| (family(2, g), open_char(2)))) {
        let level = 12;
        let root = |a: Angle| CyclotomicNumber::root_of_unity(level, a.numer() * (level as i64 / a.denom()));
        let (w1, w2) = (root(w.get(0).unwrap()), root(w.get(1).unwrap()));
        let one = CyclotomicNumber::from_int(level, 1);
        let pre = one.sub(&w1.conj()).mul(&one.sub(&w2.conj()));
        let coef = [one.clone(), w1.neg(), w2.neg(), w1.mul(&w2)];
        let h = f.assemble(&w).unwrap();
        let g = f.generators();
        for r in 0..g {
            for c in 0..g {
                let mut s = CyclotomicNumber::zero(level);
                for (mask, k) in coef.iter().enumerate() {
                    s = s.add(&k.mul_int(f.form(mask)[r][c]));
                }
                let expected = pre.mul(&s);
                prop_assert!(h.get(r, c).lift(level).sub(&expected).is_zero());
            }
        }
    }
}

#[test]
fn kl1_laurent_is_a_c_complex_form() {
    let fam = keyed(2, 1, &[("++", vec![vec![-1]]), ("--", vec![vec![-1]])]);
    let link = fixture("referee-KL1").unwrap();
    assert_eq!(link.laurent(), &fam.to_laurent());
}

#[test]
fn kl2_laurent_is_a_c_complex_form() {
    let fam = keyed(
        3,
        2,
        &[
            ("+++", vec![vec![-1, 0], vec![1, -1]]),
            ("---", vec![vec![-1, 1], vec![0, -1]]),
            ("-++", vec![vec![-1, 0], vec![1, 0]]),
            ("+--", vec![vec![-1, 1], vec![0, 0]]),
        ],
    );
    assert!(fam.validate().is_empty());
    let link = fixture("referee-KL2").unwrap();
    assert_eq!(link.laurent(), &fam.to_laurent());
}

#[test]
fn fixtures_are_laurent_and_hermitian() {
    for name in splice_sig::fixtures::NAMES {
        let link = fixture(name).unwrap();
        assert!(matches!(link.form(), FormData::Laurent(_)));
        assert!(link.laurent().is_symbolically_hermitian(), "{name}");
    }
}

#[test]
fn trefoil_signature_values() {
    let v = vec![vec![-1, 1], vec![0, -1]];
    let fam = SeifertFamily::new(1, 2, vec![v.clone(), transpose(&v)], true).unwrap();
    let at = |n, d| fam.signature(&Character::new(vec![Angle::new(n, d).unwrap()])).unwrap();
    assert_eq!(at(1, 2), -2);
    assert_eq!(at(1, 12), 0);
    // A simple root of the Alexander polynomial.
    assert_eq!(at(1, 6), -1);
    assert_eq!(fam.nullity(&Character::new(vec![Angle::new(1, 6).unwrap()])).unwrap(), 1);
}

#[test]
fn boundary_characters_are_rejected() {
    let fam = SeifertFamily::trivial(2);
    let w = Character::from_fractions(&[(0, 1), (1, 2)]).unwrap();
    assert!(fam.signature(&w).is_err());
}
