//! Dense matrices over the rationals and subspace arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::poly::{format_rational, parse_rational, Q};

/// A dense `rows × cols` matrix of exact rationals, row-major.
///
/// Vectors are columns; a subspace is stored as a matrix whose columns
/// form a basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} {:?}", self.rows, self.cols, self.to_strings())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(invalid("ragged matrix rows"));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer entries (test and fixture helper).
    pub fn from_i64(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("rectangular integer matrix")
    }

    /// Parses rows of rational strings; `shape` fixes the size of empty matrices.
    pub fn from_strings<S: AsRef<str>>(rows: &[Vec<S>], shape: Option<(usize, usize)>) -> Result<Matrix> {
        let parsed: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect())
            .collect::<Result<_>>()?;
        let m = if parsed.is_empty() {
            Matrix::zeros(0, shape.map_or(0, |s| s.1))
        } else {
            Matrix::from_rows(parsed)?
        };
        if let Some((r, c)) = shape {
            if m.rows != r || (m.cols != c && r > 0) {
                return Err(Error::Parse(format!(
                    "expected a {r}x{c} matrix, found {}x{}",
                    m.rows, m.cols
                )));
            }
            if r == 0 {
                return Ok(Matrix::zeros(0, c));
            }
        }
        Ok(m)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        m.put(0, 0, self);
        m.put(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (b, &j) in cols.iter().enumerate() {
                m.set(i, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, as columns.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (b, &f) in free.iter().enumerate() {
            k.set(f, b, Q::one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, b, -r.get(row, f).clone());
            }
        }
        k
    }

    /// A basis of the column space chosen among the columns.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self · x = b` for every column of `b`; `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve shape mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Matrix::identity(self.rows))
            .filter(|inv| (self * inv) == Matrix::identity(self.rows))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + a * b;
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Q::one())
    }
}

/// Sum of two subspaces of the same ambient space.
pub fn span_sum(a: &Matrix, b: &Matrix) -> Matrix {
    a.hstack(b).column_basis()
}

/// Intersection of two subspaces given by column bases.
pub fn intersection(a: &Matrix, b: &Matrix) -> Matrix {
    // a·x = b·y  ⇔  [a | -b] (x, y) = 0
    let k = a.hstack(&-b).kernel();
    let x = k.submatrix(0..a.cols(), 0..k.cols());
    (a * &x).column_basis()
}

/// Columns of `sub` extending a basis of `base` to a basis of `base + sub`.
pub fn complement_in(base: &Matrix, sub: &Matrix) -> Matrix {
    let all = base.hstack(sub);
    let (_, pivots) = all.rref();
    let extra: Vec<usize> = pivots.into_iter().filter(|&p| p >= base.cols()).collect();
    all.select_columns(&extra)
}

/// Whether every column of `v` lies in the span of `basis`.
pub fn contains(basis: &Matrix, v: &Matrix) -> bool {
    v.cols() == 0 || basis.solve(v).is_some()
}

/// A subquotient `Z / B` (with `B ⊆ Z`) presented by complement representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Representatives of a basis of `Z / B`.
    pub reps: Matrix,
    /// Basis of `B`.
    pub denominator: Matrix,
}

impl Subquotient {
    pub fn new(z: &Matrix, b: &Matrix) -> Subquotient {
        let denominator = b.column_basis();
        Subquotient {
            reps: complement_in(&denominator, z),
            denominator,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of the classes of the columns of `v`, which must lie in `Z`.
    pub fn coordinates(&self, v: &Matrix) -> Result<Matrix> {
        let basis = self.reps.hstack(&self.denominator);
        let x = basis
            .solve(v)
            .ok_or_else(|| Error::Model("vector outside the subquotient numerator".into()))?;
        Ok(x.submatrix(0..self.reps.cols(), 0..v.cols()))
    }

    /// Matrix of the map induced by `f` (an endomorphism of the ambient space
    /// preserving both `Z` and `B`) or of `f` into another subquotient.
    pub fn induced(&self, f: &Matrix, target: &Subquotient) -> Result<Matrix> {
        target.coordinates(&(f * &self.reps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    #[test]
    fn rank_kernel_solve() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!((&m * &k).is_zero());
        let b = Matrix::from_i64(&[&[6], &[12], &[2]]);
        let x = m.solve(&b).unwrap();
        assert_eq!(&m * &x, b);
        assert!(m.solve(&Matrix::from_i64(&[&[1], &[0], &[0]])).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_operations() {
        let a = Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(intersection(&a, &b).cols(), 1);
        assert_eq!(span_sum(&a, &b).cols(), 3);
        let c = complement_in(&a, &b);
        assert_eq!(c.cols(), 1);
        assert!(contains(&span_sum(&a, &b), &c));
    }

    #[test]
    fn induced_map_on_quotient() {
        // 2x2 Jordan block acting on Q^2 / <e1>
        let h = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let sq = Subquotient::new(&Matrix::identity(2), &Matrix::from_i64(&[&[1], &[0]]));
        assert_eq!(sq.dim(), 1);
        let ind = sq.induced(&h, &sq).unwrap();
        assert_eq!(ind, Matrix::from_i64(&[&[1]]));
        assert_eq!(ind.trace(), q(1));
    }

    #[test]
    fn string_round_trip() {
        let m = Matrix::from_strings(&[vec!["1/2", "-3"], vec!["0", "4"]], None).unwrap();
        assert_eq!(m.to_strings(), vec![vec!["1/2", "-3"], vec!["0", "4"]]);
        let empty = Matrix::from_strings::<String>(&[], Some((0, 3))).unwrap();
        assert_eq!(empty.shape(), (0, 3));
        assert!(Matrix::from_strings(&[vec!["1"]], Some((2, 2))).is_err());
    }
}
