//! The image computing spectral sequence on equivariant cochain models.

mod complex;
mod fixtures;
mod model;
mod spectral;

pub use complex::{alt_projector, ComplexJson, EquivariantComplex, MatrixJson, MAX_GROUP_ORDER};
pub use fixtures::{
    a_mu_betti, bigerm_absolute, bigerm_model, circle_subdivision_model, transverse_double_point_absolute,
    trivial_family_model, two_column_synthetic,
};
pub use model::{
    AbsoluteColumnJson, AbsoluteFaceJson, AbsoluteModel, AbsoluteModelJson, IcssModel, IcssModelJson, PairColumn,
    PairColumnJson, PairFace, PairFaceJson, TotalJson,
};
pub use spectral::{
    check_augmented_exactness, run_absolute, run_icss, AugmentedExactness, EntryMonodromy, Page, PageDifferential,
    PageEntry, SpectralSequence,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::Matrix;
    use crate::poly::Verdict;

    #[test]
    fn xy_bigerm_pages() {
        let m = bigerm_model(&a_mu_betti(2, 1), None).unwrap();
        let ss = run_icss(&m).unwrap();
        assert_eq!(ss.total_cohomology, vec![0, 0, 1]);
        let e1 = ss.page(1).unwrap();
        assert_eq!(e1.entries, vec![PageEntry { i: 1, j: 1, dim: 1 }]);
        assert_eq!(ss.e_infinity, e1.entries);
        assert_eq!(ss.pages.len(), 3);
    }

    #[test]
    fn cusp_bigerm_and_curve_profile() {
        let ss = run_icss(&bigerm_model(&a_mu_betti(2, 2), None).unwrap()).unwrap();
        assert_eq!(ss.total_cohomology, vec![0, 0, 2]);
        // one variable: mu + 1 points, the alternating part of H^0 of the
        // doubled fibre modulo the constants
        let ss = run_icss(&bigerm_model(&a_mu_betti(1, 2), None).unwrap()).unwrap();
        assert_eq!(ss.total_cohomology, vec![0, 2]);
    }

    #[test]
    fn circle_subdivision_agrees_with_minimal_model() {
        let a = run_icss(&circle_subdivision_model().unwrap()).unwrap();
        let b = run_icss(&bigerm_model(&[1, 1], None).unwrap()).unwrap();
        assert_eq!(a.total_cohomology, b.total_cohomology);
        assert_eq!(a.e_infinity, b.e_infinity);
    }

    #[test]
    fn trivial_family_has_vanishing_pages() {
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        let f =
            EquivariantComplex::with_zero_differential(vec![2, 2], 2, vec![vec![swap.clone()], vec![swap]]).unwrap();
        let ss = run_icss(&trivial_family_model(f).unwrap()).unwrap();
        assert!(ss.pages.iter().all(|p| p.entries.is_empty()));
        assert!(ss.total_cohomology.iter().all(|&b| b == 0));
    }

    #[test]
    fn two_columns_share_a_total_degree() {
        let ss = run_icss(&two_column_synthetic().unwrap()).unwrap();
        assert_eq!(
            ss.e_infinity,
            vec![PageEntry { i: 2, j: 1, dim: 1 }, PageEntry { i: 1, j: 2, dim: 1 }]
        );
        assert_eq!(ss.betti(3), 2);
        assert_eq!(ss.pages.len(), 4);
    }

    #[test]
    fn alternating_h0_of_doubled_fibre() {
        for b0 in 1..4 {
            let swap = {
                let mut m = Matrix::zeros(2 * b0, 2 * b0);
                m.put(0, b0, &Matrix::identity(b0));
                m.put(b0, 0, &Matrix::identity(b0));
                m
            };
            let c = EquivariantComplex::with_zero_differential(vec![2 * b0], 2, vec![vec![swap]]).unwrap();
            assert_eq!(c.alt_projector(0).unwrap().rank(), b0);
        }
    }

    #[test]
    fn page_dimensions_do_not_grow() {
        for m in [two_column_synthetic().unwrap(), bigerm_model(&[1, 0, 3], None).unwrap()] {
            let ss = run_icss(&m).unwrap();
            for w in ss.pages.windows(2) {
                for e in &w[1].entries {
                    assert!(e.dim <= w[0].dim(e.i, e.j));
                }
            }
        }
    }

    #[test]
    fn augmented_exactness_fixtures() {
        let t = transverse_double_point_absolute().unwrap();
        assert_eq!(check_augmented_exactness(&t).unwrap().verdict, Verdict::Holds);
        let neg = check_augmented_exactness(&t.with_zero_faces()).unwrap();
        assert_eq!(neg.verdict, Verdict::Fails);
        assert_eq!(neg.computed, vec![2, 1]);
        let b = bigerm_absolute(&[1, 1]).unwrap();
        let r = check_augmented_exactness(&b).unwrap();
        assert_eq!(r.computed, vec![1, 0, 1]);
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(
            check_augmented_exactness(&b.with_zero_faces()).unwrap().verdict,
            Verdict::Fails
        );
    }

    #[test]
    fn json_round_trips() {
        for m in [
            bigerm_model(&[1, 2], None).unwrap(),
            circle_subdivision_model().unwrap(),
            two_column_synthetic().unwrap(),
        ] {
            let s = serde_json::to_string(&m.to_json()).unwrap();
            let back = IcssModel::from_json_str(&s).unwrap();
            assert_eq!(run_icss(&back).unwrap().e_infinity, run_icss(&m).unwrap().e_infinity);
        }
        let a = bigerm_absolute(&[1, 1]).unwrap();
        let s = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(AbsoluteModel::from_json_str(&s).unwrap().to_json(), a.to_json());
    }

    #[test]
    fn inconsistent_models_are_rejected() {
        let mut j = bigerm_model(&[1, 1], None).unwrap().to_json();
        j.columns[0].fiber.action[0][0] = vec![vec!["1".into(), "1".into()], vec!["0".into(), "1".into()]];
        assert!(matches!(IcssModel::from_json(&j), Err(Error::Model(_))));
        let mut j = bigerm_model(&[1, 1], None).unwrap().to_json();
        j.columns[0].inclusion = Some(vec![vec![vec!["1".into(), "0".into()], vec!["1".into(), "0".into()]]]);
        assert!(IcssModel::from_json(&j).is_err());
        let bad = r#"{"k_max": 2, "columns": []}"#;
        assert!(matches!(IcssModel::from_json_str(bad), Err(Error::Model(_))));
        assert!(matches!(IcssModel::from_json_str("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn monodromy_must_fix_restricted_classes() {
        let h = vec![Matrix::from_i64(&[&[-1]])];
        assert!(bigerm_model(&[1], Some(&h)).is_err());
        let h = vec![Matrix::identity(1), Matrix::from_i64(&[&[0, -1], &[1, -1]])];
        assert!(bigerm_model(&[1, 2], Some(&h)).is_ok());
    }
}
