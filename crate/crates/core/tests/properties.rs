//! Property suites across modules.

use std::collections::BTreeMap;

use germlab::connectivity::{window_image, window_km, InstDim};
use germlab::icss::{a_mu_betti, bigerm_model, run_icss};
use germlab::linalg::Matrix;
use germlab::monodromy::{jordan_data, random_cyclotomic_matrix, random_invertible};
use germlab::poly::{groebner_basis, Ideal, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const VARS: [&str; 3] = ["x", "y", "z"];

fn ring() -> Ring {
    Ring::new(VARS).unwrap()
}

/// Exponent vectors of total degree `d` in three variables.
fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

fn monomial_text(e: &[u32; 3]) -> String {
    let parts: Vec<String> = VARS
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn homogeneous(d: u32, coeffs: &[i64]) -> Polynomial {
    let terms: Vec<String> = monomials(d)
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(m, c)| format!("({c})*{}", monomial_text(m)))
        .collect();
    let text = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    ring().parse(&text).unwrap()
}

/// A nonzero homogeneous polynomial of degree 1 to 3.
fn hpoly() -> impl Strategy<Value = Polynomial> {
    (
        1u32..=3,
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], 10),
    )
        .prop_map(|(d, c)| homogeneous(d, &c))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn hideal(max_gens: usize) -> impl Strategy<Value = Ideal> {
    prop::collection::vec(hpoly(), 1..=max_gens).prop_map(|g| Ideal::new(&ring(), g).unwrap())
}

/// Membership of a homogeneous `f` in a homogeneous ideal by linear algebra
/// in the degree of `f`.
fn naive_member(ideal: &Ideal, f: &Polynomial) -> bool {
    let r = ring();
    let d = f.total_degree().unwrap();
    let mut columns = Vec::new();
    for g in ideal.generators() {
        let dg = g.total_degree().unwrap();
        if dg > d {
            continue;
        }
        for m in monomials(d - dg) {
            columns.push(&r.parse(&monomial_text(&m)).unwrap() * g);
        }
    }
    let index: BTreeMap<String, usize> = monomials(d)
        .iter()
        .enumerate()
        .map(|(i, m)| (monomial_text(m), i))
        .collect();
    let vector = |p: &Polynomial| -> Vec<germlab::poly::Q> {
        let mut v = vec![germlab::poly::q(0); index.len()];
        for (m, c) in p.terms() {
            let e = m.exponents();
            v[index[&monomial_text(&[e[0], e[1], e[2]])]] = c.clone();
        }
        v
    };
    if columns.is_empty() {
        return f.is_zero();
    }
    let a = Matrix::from_columns(index.len(), &columns.iter().map(&vector).collect::<Vec<_>>());
    let b = Matrix::from_columns(index.len(), &[vector(f)]);
    a.solve(&b).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn groebner_basis_is_stable(i in hideal(3)) {
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let gb = groebner_basis(&i, order).unwrap();
            let again = groebner_basis(&gb, order).unwrap();
            prop_assert_eq!(gb.generators(), again.generators());
            prop_assert!(gb.equals(&i).unwrap());
        }
    }

    #[test]
    fn membership_matches_linear_algebra(i in hideal(3), f in hpoly(), a in hpoly(), b in hpoly()) {
        prop_assert_eq!(i.contains(&f).unwrap(), naive_member(&i, &f));
        let gens = i.generators();
        let combo = &(&a * &gens[0]) + &(&b * gens.last().unwrap());
        prop_assert!(combo.is_zero() || i.contains(&combo).unwrap());
    }

    #[test]
    fn saturation_contains_and_is_idempotent(i in hideal(2), var in 0usize..3) {
        let j = Ideal::parse(&ring(), &[VARS[var]]).unwrap();
        let s = i.saturate(&j).unwrap();
        prop_assert!(s.contains_ideal(&i).unwrap());
        prop_assert!(s.saturate(&j).unwrap().equals(&s).unwrap());
    }

    #[test]
    fn product_dimension_is_the_maximum(i in hideal(2), j in hideal(2)) {
        let di = i.dim_at_origin().unwrap().value();
        let dj = j.dim_at_origin().unwrap().value();
        let dp = i.product(&j).unwrap().dim_at_origin().unwrap().value();
        prop_assert_eq!(dp, di.max(dj));
    }
}

proptest! {
    #[test]
    fn km_windows_are_monotone_and_refined(n in 1usize..40, gap in 2usize..15, d in 0u32..10) {
        let p = n + gap;
        let plain = window_km(n, p, InstDim::Dim(d), false).unwrap();
        let refined = window_km(n, p, InstDim::Dim(d), true).unwrap();
        prop_assert!(refined.is_subset(&plain));
        let wider = window_km(n, p, InstDim::Dim(d + 1), true).unwrap();
        prop_assert!(refined.is_subset(&wider));
        prop_assert!(window_km(n, p, InstDim::Empty, false).unwrap().degrees.is_empty());
        prop_assert!(window_image(n, InstDim::Dim(d)).is_subset(&window_image(n, InstDim::Dim(d + 1))));
    }

    #[test]
    fn jordan_data_of_direct_sums(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cyclotomic_matrix(&mut rng, 4);
        let b = random_cyclotomic_matrix(&mut rng, 4);
        let (ja, jb) = (jordan_data(&a).unwrap(), jordan_data(&b).unwrap());
        let sum = jordan_data(&a.block_diag(&b)).unwrap();
        prop_assert_eq!(&sum, &ja.direct_sum(&jb));
        let union: std::collections::BTreeSet<_> = ja.supp().union(&jb.supp()).copied().collect();
        prop_assert_eq!(sum.supp(), union);
        prop_assert_eq!(sum.max_jordan(), ja.max_jordan().max(jb.max_jordan()));
        prop_assert_eq!(sum.dim(), a.rows() + b.rows());
    }

    #[test]
    fn jordan_data_is_a_conjugation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_cyclotomic_matrix(&mut rng, 6);
        let p = random_invertible(&mut rng, h.rows());
        let conj = &(&p * &h) * &p.inverse().unwrap();
        prop_assert_eq!(jordan_data(&h).unwrap(), jordan_data(&conj).unwrap());
    }

    #[test]
    fn bigerm_cohomology_sits_in_the_image_window(n in 1usize..4, mu in 1usize..4) {
        let ss = run_icss(&bigerm_model(&a_mu_betti(n, mu), None).unwrap()).unwrap();
        let window = window_image(n, InstDim::Dim(0));
        for (l, &b) in ss.total_cohomology.iter().enumerate() {
            if b > 0 {
                prop_assert!(window.contains(l as u32), "degree {} outside {}", l, window);
            }
        }
        prop_assert_eq!(ss.total_cohomology.iter().sum::<usize>(), mu);
        for e in &ss.page(1).unwrap().entries {
            prop_assert!(window.contains((e.i + e.j as i64) as u32));
        }
    }
}
