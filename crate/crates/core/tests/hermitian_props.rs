use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use splice_sig::cyclotomic::CyclotomicNumber;
use splice_sig::hermitian::{HermitianMatrix, Inertia};

fn symmetric(g: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, g * (g + 1) / 2).prop_map(move |upper| {
        let mut m = vec![vec![0; g]; g];
        let mut it = upper.into_iter();
        for i in 0..g {
            for j in i..g {
                let x = it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        m
    })
}

/// Characteristic polynomial coefficients `c_0..c_g` of `det(xI − A)` by
/// Faddeev–LeVerrier.
fn char_poly(a: &[Vec<i64>]) -> Vec<BigRational> {
    let g = a.len();
    let a: Vec<Vec<BigRational>> =
        a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut c = vec![BigRational::zero(); g + 1];
    c[g] = BigRational::from_integer(1.into());
    let mut m = vec![vec![BigRational::zero(); g]; g];
    for k in 1..=g {
        // M_k = A M_{k−1} + c_{g−k+1} I
        let mut next = vec![vec![BigRational::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                let mut s = BigRational::zero();
                for l in 0..g {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c[g - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..g {
            for l in 0..g {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c[g - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    c
}

fn sign_changes(coeffs: &[BigRational]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a real symmetric matrix by Descartes' rule, exact since every
/// root is real.
fn descartes(a: &[Vec<i64>]) -> Inertia {
    let c = char_poly(a);
    let nullity = c.iter().take_while(|x| x.is_zero()).count();
    let negated: Vec<BigRational> =
        c.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }).collect();
    Inertia { positive: sign_changes(&c), negative: sign_changes(&negated), nullity }
}

fn unimodular(g: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..g.max(1), 0..g.max(1), -2i64..=2), 0..8).prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| i64::from(i == j)).collect()).collect();
        for (r, s, k) in ops {
            if r != s && r < g && s < g {
                for row in u.iter_mut() {
                    row[r] += k * row[s];
                }
            }
        }
        u
    })
}

/// Random Hermitian matrix over `Q(ζ_level)`.
fn hermitian(g: usize, level: u64) -> impl Strategy<Value = HermitianMatrix> {
    let n = level as usize;
    (prop::collection::vec(-3i64..=3, g), prop::collection::vec(prop::collection::vec(-2i64..=2, n), g * g)).prop_map(
        move |(diag, off)| {
            let mut rows = vec![vec![CyclotomicNumber::zero(level); g]; g];
            for i in 0..g {
                rows[i][i] = CyclotomicNumber::from_int(level, diag[i]);
                for j in i + 1..g {
                    let x = CyclotomicNumber::from_int_coeffs(level, &off[i * g + j]);
                    rows[j][i] = x.conj();
                    rows[i][j] = x;
                }
            }
            HermitianMatrix::new(rows).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn real_inertia_matches_descartes(a in (0usize..=6).prop_flat_map(symmetric)) {
        let h = HermitianMatrix::from_integers(&a).unwrap();
        prop_assert_eq!(h.inertia(), descartes(&a));
    }

    #[test]
    fn counts_add_up(h in (1usize..=5).prop_flat_map(|g| hermitian(g, 8))) {
        let i = h.inertia();
        prop_assert_eq!(i.positive + i.negative + i.nullity, h.size());
        prop_assert!(i.signature().unsigned_abs() as usize + i.nullity <= h.size());
        prop_assert_eq!((i.signature() - h.size() as i64 + i.nullity as i64).rem_euclid(2), 0);
    }

    #[test]
    fn congruence_invariance(
        (a, u) in (1usize..=5).prop_flat_map(|g| (symmetric(g), unimodular(g)))
    ) {
        let h = HermitianMatrix::from_integers(&a).unwrap();
        prop_assert_eq!(h.congruent(&u).unwrap().inertia(), h.inertia());
    }

    #[test]
    fn complex_congruence_invariance(
        (h, u) in (1usize..=4).prop_flat_map(|g| (hermitian(g, 12), unimodular(g)))
    ) {
        prop_assert_eq!(h.congruent(&u).unwrap().inertia(), h.inertia());
    }

    #[test]
    fn agrees_with_numeric_eigenvalues(h in (1usize..=5).prop_flat_map(|g| hermitian(g, 8))) {
        let eig = h.eigenvalues_numeric();
        let i = h.inertia();
        let tol = 1e-8;
        if eig.iter().all(|x| x.abs() > tol || x.abs() < 1e-12) {
            let pos = eig.iter().filter(|&&x| x > tol).count();
            let neg = eig.iter().filter(|&&x| x < -tol).count();
            prop_assert_eq!((pos, neg), (i.positive, i.negative));
        }
    }
}

#[test]
fn descartes_oracle_sanity() {
    let a = vec![vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 0]];
    assert_eq!(descartes(&a), Inertia { positive: 2, negative: 0, nullity: 1 });
    let b = vec![vec![0, 1], vec![1, 0]];
    assert_eq!(descartes(&b), Inertia { positive: 1, negative: 1, nullity: 0 });
}
