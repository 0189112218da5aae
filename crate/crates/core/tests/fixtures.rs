//! Bundled fixture files agree with the built-in generators.
//!
//! Run with `GERMLAB_WRITE_FIXTURES=1` to regenerate them.

use std::path::PathBuf;

use germlab::icss::{
    a_mu_betti, bigerm_absolute, bigerm_model, circle_subdivision_model, run_icss, transverse_double_point_absolute,
    trivial_family_model, two_column_synthetic, AbsoluteModel, EquivariantComplex, IcssModel,
};
use germlab::linalg::Matrix;
use serde::Serialize;

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/models")
        .join(name)
}

fn render<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).unwrap();
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}

fn check(name: &str, expected: String) {
    let p = path(name);
    if std::env::var_os("GERMLAB_WRITE_FIXTURES").is_some() {
        std::fs::write(&p, &expected).unwrap();
        return;
    }
    let found = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    assert_eq!(
        found, expected,
        "{name} is stale; regenerate with GERMLAB_WRITE_FIXTURES=1"
    );
}

fn swap() -> Matrix {
    Matrix::from_i64(&[&[0, 1], &[1, 0]])
}

fn pair_models() -> Vec<(&'static str, IcssModel)> {
    let trivial_fiber =
        EquivariantComplex::with_zero_differential(vec![2, 2], 2, vec![vec![swap()], vec![swap()]]).unwrap();
    let phi6 = Matrix::from_i64(&[&[0, -1], &[1, 1]]);
    vec![
        ("bigerm_xy.json", bigerm_model(&a_mu_betti(2, 1), None).unwrap()),
        ("bigerm_cusp.json", bigerm_model(&a_mu_betti(2, 2), None).unwrap()),
        (
            "bigerm_xy_monodromy.json",
            bigerm_model(&a_mu_betti(2, 1), Some(&[Matrix::identity(1), Matrix::identity(1)])).unwrap(),
        ),
        (
            "bigerm_cusp_monodromy.json",
            bigerm_model(&a_mu_betti(2, 2), Some(&[Matrix::identity(1), phi6])).unwrap(),
        ),
        ("circle_subdivision.json", circle_subdivision_model().unwrap()),
        ("trivial_family.json", trivial_family_model(trivial_fiber).unwrap()),
        ("two_column.json", two_column_synthetic().unwrap()),
    ]
}

fn absolute_models() -> Vec<(&'static str, AbsoluteModel)> {
    vec![
        ("bigerm_xy_absolute.json", bigerm_absolute(&a_mu_betti(2, 1)).unwrap()),
        (
            "transverse_double_point_absolute.json",
            transverse_double_point_absolute().unwrap(),
        ),
    ]
}

#[test]
fn model_files_match_generators() {
    for (name, m) in pair_models() {
        check(name, render(&m.to_json()));
    }
    for (name, m) in absolute_models() {
        check(name, render(&m.to_json()));
    }
}

#[test]
fn model_files_round_trip() {
    for (name, m) in pair_models() {
        let text = std::fs::read_to_string(path(name)).unwrap();
        let parsed = IcssModel::from_json_str(&text).unwrap();
        assert_eq!(
            run_icss(&parsed).unwrap().total_cohomology,
            run_icss(&m).unwrap().total_cohomology,
            "{name}"
        );
    }
    for (name, _) in absolute_models() {
        let text = std::fs::read_to_string(path(name)).unwrap();
        AbsoluteModel::from_json_str(&text).unwrap();
    }
}
