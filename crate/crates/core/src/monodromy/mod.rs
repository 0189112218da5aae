//! Jordan data of quasi-unipotent automorphisms and bounds for the monodromy
//! on the cohomology of a disentanglement.

mod bounds;
mod lemmas;
mod propagate;
mod random;
mod upoly;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;

pub use bounds::{monodromy_bounds, IsolatedBound, MonodromyBounds};
pub use lemmas::{check_cm1, check_cm2, Cm1Report, Cm2Report};
pub use propagate::{propagate_icss_monodromy, DegreeMonodromy, EntryJordan};
pub use random::{
    conjugation_suite, random_cyclotomic_matrix, random_invertible, random_suite, SuiteKind, SuiteReport,
};
pub use upoly::{charpoly, cyclotomic_factors, euler_phi, Cyclotomics, UPoly};

/// The primitive `order`-th root of unity `exp(2πi·exponent/order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub order: u64,
    pub exponent: u64,
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            1 => write!(f, "1"),
            2 => write!(f, "-1"),
            m => write!(f, "exp(2πi·{}/{m})", self.exponent),
        }
    }
}

/// One summand `R/(s − λ)^size` with `λ = exp(2πi·exponent/order)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JordanBlock {
    pub order: u64,
    pub exponent: u64,
    pub size: usize,
}

impl JordanBlock {
    pub fn eigenvalue(&self) -> Eigenvalue {
        Eigenvalue {
            order: self.order,
            exponent: self.exponent,
        }
    }
}

/// Torsion module over the Laurent polynomial ring, as a sorted multiset of
/// Jordan blocks over the complex numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JordanModule {
    blocks: Vec<JordanBlock>,
}

impl JordanModule {
    pub fn new(mut blocks: Vec<JordanBlock>) -> Result<Self> {
        for b in &blocks {
            if b.size == 0 || b.order == 0 || b.exponent >= b.order || b.exponent.gcd(&b.order) != 1 {
                return Err(invalid(format!("malformed Jordan block {b:?}")));
            }
        }
        blocks.sort();
        Ok(JordanModule { blocks })
    }

    pub fn zero() -> Self {
        JordanModule::default()
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn supp(&self) -> BTreeSet<Eigenvalue> {
        self.blocks.iter().map(JordanBlock::eigenvalue).collect()
    }

    /// Largest block size; zero for the zero module.
    pub fn max_jordan(&self) -> usize {
        self.blocks.iter().map(|b| b.size).max().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &JordanModule) -> JordanModule {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().copied());
        blocks.sort();
        JordanModule { blocks }
    }

    /// Orders of the eigenvalues.
    pub fn orders(&self) -> BTreeSet<u64> {
        self.blocks.iter().map(|b| b.order).collect()
    }
}

fn nullity(m: &Matrix) -> usize {
    m.cols() - m.rank()
}

/// Jordan data of an automorphism whose characteristic polynomial is a
/// product of cyclotomic polynomials.
pub fn jordan_data(h: &Matrix) -> Result<JordanModule> {
    if !h.is_square() {
        return Err(invalid(format!("monodromy must be square, found {:?}", h.shape())));
    }
    let n = h.rows();
    let mut cyc = Cyclotomics::default();
    let factors = cyclotomic_factors(&charpoly(h), &mut cyc).map_err(|rest| Error::NonCyclotomic(rest.to_string()))?;
    let mut blocks = Vec::new();
    for (m, mult) in factors {
        let phi = euler_phi(m) as usize;
        let nm = cyc.get(m).eval_matrix(h);
        // at_least[j] = number of blocks of size ≥ j per eigenvalue
        let mut kernels = vec![0usize];
        let mut power = Matrix::identity(n);
        for _ in 0..mult {
            power = &power * &nm;
            kernels.push(nullity(&power));
        }
        let at_least: Vec<usize> = (1..=mult).map(|j| (kernels[j] - kernels[j - 1]) / phi).collect();
        for size in 1..=mult {
            let next = at_least.get(size).copied().unwrap_or(0);
            let count = at_least[size - 1] - next;
            for e in (0..m).filter(|e| e.gcd(&m) == 1) {
                for _ in 0..count {
                    blocks.push(JordanBlock {
                        order: m,
                        exponent: e,
                        size,
                    });
                }
            }
        }
    }
    let module = JordanModule::new(blocks)?;
    debug_assert_eq!(module.dim(), n);
    Ok(module)
}

/// Checks `(h^N − I)^n = 0` with `N` the least common multiple of the
/// eigenvalue orders.
pub fn root_of_unity_certificate(h: &Matrix, data: &JordanModule) -> bool {
    let n = h.rows();
    let order = data.orders().into_iter().fold(1u64, |a, b| a.lcm(&b));
    let unipotent = &h.pow(order as u32) - &Matrix::identity(n);
    unipotent.pow(n as u32).is_zero()
}

/// Matrix file: a bare array of rows or `{"degree": i, "matrix": rows}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixFile {
    Bare(Vec<Vec<String>>),
    Tagged {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        matrix: Vec<Vec<String>>,
    },
}

impl MatrixFile {
    pub fn from_json_str(s: &str) -> Result<(Option<usize>, Matrix)> {
        let f: MatrixFile = serde_json::from_str(s)?;
        let (degree, rows) = match f {
            MatrixFile::Bare(r) => (None, r),
            MatrixFile::Tagged { degree, matrix } => (degree, matrix),
        };
        Ok((degree, Matrix::from_strings(&rows, None)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(order: u64, exponent: u64, size: usize) -> JordanBlock {
        JordanBlock { order, exponent, size }
    }

    #[test]
    fn identity_and_unipotent() {
        let id = jordan_data(&Matrix::identity(3)).unwrap();
        assert_eq!(id.blocks(), &[block(1, 0, 1); 3]);
        assert_eq!(id.max_jordan(), 1);
        let j2 = jordan_data(&Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(j2.blocks(), &[block(1, 0, 2)]);
    }

    #[test]
    fn phi6_companion() {
        let h = UPoly::from_i64(&[1, -1, 1]).companion();
        let j = jordan_data(&h).unwrap();
        assert_eq!(j.blocks(), &[block(6, 1, 1), block(6, 5, 1)]);
        assert_eq!(j.max_jordan(), 1);
        assert!(root_of_unity_certificate(&h, &j));
    }

    #[test]
    fn mixed_blocks() {
        // Jordan block of size 2 at −1 next to a rotation of order 4
        let h = Matrix::from_i64(&[&[-1, 1], &[0, -1]]).block_diag(&Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        let j = jordan_data(&h).unwrap();
        assert_eq!(j.blocks(), &[block(2, 1, 2), block(4, 1, 1), block(4, 3, 1)]);
        let s: Vec<String> = j.supp().iter().map(ToString::to_string).collect();
        assert_eq!(s, ["-1", "exp(2πi·1/4)", "exp(2πi·3/4)"]);
    }

    #[test]
    fn supp_and_j_conventions() {
        let m = JordanModule::new(vec![block(1, 0, 2), block(2, 1, 1)]).unwrap();
        assert_eq!(m.supp().len(), 2);
        assert_eq!(m.max_jordan(), 2);
        let z = JordanModule::zero();
        assert!(z.supp().is_empty());
        assert_eq!(z.max_jordan(), 0);
        assert_eq!(m.direct_sum(&z), m);
        assert!(JordanModule::new(vec![block(6, 2, 1)]).is_err());
    }

    #[test]
    fn rejects_non_roots_of_unity() {
        assert!(matches!(
            jordan_data(&Matrix::from_i64(&[&[2]])),
            Err(Error::NonCyclotomic(_))
        ));
        assert!(matches!(
            jordan_data(&Matrix::from_i64(&[&[2, 1], &[1, 1]])),
            Err(Error::NonCyclotomic(_))
        ));
        assert!(jordan_data(&Matrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn matrix_files() {
        let (d, m) = MatrixFile::from_json_str(r#"{"degree": 1, "matrix": [["0","-1"],["1","1"]]}"#).unwrap();
        assert_eq!(d, Some(1));
        assert_eq!(m.shape(), (2, 2));
        let (d, _) = MatrixFile::from_json_str(r#"[["1/2"]]"#).unwrap();
        assert_eq!(d, None);
        assert!(matches!(MatrixFile::from_json_str("[[1]]"), Err(Error::Parse(_))));
    }
}
