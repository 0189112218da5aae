//! Seeded random quasi-unipotent modules for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_cm1, check_cm2, jordan_data, root_of_unity_certificate, Cyclotomics, UPoly};
use crate::error::Result;
use crate::linalg::{span_sum, Matrix, Subquotient};
use crate::poly::Q;

const ORDERS: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

/// Unimodular integer matrix from random elementary operations.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Q::from_integer(rng.gen_range(-2i64..=2).into());
        for col in 0..n {
            let v = p.get(i, col) + &(&c * p.get(j, col));
            p.set(i, col, v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    p.select_columns(&perm)
}

/// Direct sum of companion matrices of `Φ_m^s`, conjugated by a random
/// unimodular matrix.
pub fn random_cyclotomic_matrix(rng: &mut impl Rng, max_dim: usize) -> Matrix {
    let mut cyc = Cyclotomics::default();
    let n = rng.gen_range(1..=max_dim.max(1));
    let mut h = Matrix::zeros(0, 0);
    let mut left = n;
    while left > 0 {
        let choices: Vec<u64> = ORDERS
            .iter()
            .copied()
            .filter(|&m| cyc.get(m).degree() <= left)
            .collect();
        let m = *choices.choose(rng).expect("order 1 always fits");
        let phi = cyc.get(m);
        let s = rng.gen_range(1..=(left / phi.degree()).min(3));
        let mut f = UPoly::one();
        for _ in 0..s {
            f = f.mul(&phi);
        }
        h = h.block_diag(&f.companion());
        left -= phi.degree() * s;
    }
    let p = random_invertible(rng, n);
    let inv = p.inverse().expect("unimodular");
    &(&p * &h) * &inv
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Matrix {
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|_| vec![Q::from_integer(rng.gen_range(-2i64..=2).into())])
        .collect();
    if n == 0 {
        Matrix::zeros(0, 1)
    } else {
        Matrix::from_rows(rows).expect("column vector")
    }
}

/// Basis of the smallest `h`-invariant subspace containing a random vector.
fn cyclic_subspace(rng: &mut impl Rng, h: &Matrix) -> Matrix {
    let n = h.rows();
    let mut w = random_vector(rng, n);
    let mut cols = w.clone();
    for _ in 1..n {
        w = h * &w;
        cols = cols.hstack(&w);
    }
    if n == 0 || cols.is_zero() {
        Matrix::zeros(n, 0)
    } else {
        cols.column_basis()
    }
}

/// Action of `h` on an invariant subspace with basis `u`.
fn restrict(h: &Matrix, u: &Matrix) -> Matrix {
    if u.cols() == 0 {
        return Matrix::zeros(0, 0);
    }
    u.solve(&(h * u)).expect("invariant subspace")
}

/// Quotient map `B → B/W` and the induced automorphism.
fn quotient(h: &Matrix, w: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = h.rows();
    let sq = Subquotient::new(&Matrix::identity(n), w);
    let q = sq.coordinates(&Matrix::identity(n))?;
    let c = sq.induced(h, &sq)?;
    Ok((q, c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Cm1,
    Cm2,
    Conjugation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub kind: SuiteKind,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// Matrices accepted by `jordan_data` whose root-of-unity certificate was checked.
    pub certificates: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.cases && self.failures.is_empty()
    }
}

fn certify(h: &Matrix, certificates: &mut usize, failures: &mut Vec<String>, case: usize) -> Result<()> {
    let j = jordan_data(h)?;
    *certificates += 1;
    if !root_of_unity_certificate(h, &j) {
        failures.push(format!("case {case}: root-of-unity certificate failed"));
    }
    Ok(())
}

/// Runs `cases` seeded random instances of one property.
pub fn random_suite(kind: SuiteKind, seed: u64, cases: usize, max_dim: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut certificates = 0;
    let mut failures = Vec::new();
    for case in 0..cases {
        let h = random_cyclotomic_matrix(&mut rng, max_dim);
        let n = h.rows();
        let ok = match kind {
            SuiteKind::Cm1 => {
                let u = cyclic_subspace(&mut rng, &h);
                let w = span_sum(&u, &cyclic_subspace(&mut rng, &h));
                let w = if w.cols() == 0 {
                    Matrix::zeros(n, 0)
                } else {
                    w.column_basis()
                };
                let a = restrict(&h, &u);
                let (v, c) = quotient(&h, &w)?;
                for m in [&h, &a, &c] {
                    certify(m, &mut certificates, &mut failures, case)?;
                }
                check_cm1(&a, &u, &h, &v, &c)?.holds
            }
            SuiteKind::Cm2 => {
                let i = cyclic_subspace(&mut rng, &h);
                let a = restrict(&h, &i);
                let (q, c) = quotient(&h, &i)?;
                for m in [&h, &a, &c] {
                    certify(m, &mut certificates, &mut failures, case)?;
                }
                check_cm2(&a, &i, &h, &q, &c)?.holds
            }
            SuiteKind::Conjugation => {
                let p = random_invertible(&mut rng, n);
                let conj = &(&p * &h) * &p.inverse().expect("unimodular");
                certify(&h, &mut certificates, &mut failures, case)?;
                certify(&conj, &mut certificates, &mut failures, case)?;
                jordan_data(&h)? == jordan_data(&conj)?
            }
        };
        if ok {
            passed += 1;
        } else {
            failures.push(format!("case {case}: {kind:?} property failed"));
        }
    }
    Ok(SuiteReport {
        kind,
        seed,
        cases,
        passed,
        certificates,
        failures,
    })
}

/// Conjugation invariance of Jordan data on seeded random matrices.
pub fn conjugation_suite(seed: u64, cases: usize, max_dim: usize) -> Result<SuiteReport> {
    random_suite(SuiteKind::Conjugation, seed, cases, max_dim)
}
