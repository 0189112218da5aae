//! Finite cochain complexes with a symmetric-group action.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::poly::Q;

/// Row-major rational strings, as stored in model files.
pub type MatrixJson = Vec<Vec<String>>;

pub(crate) fn parse_matrix(m: &MatrixJson, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    Matrix::from_strings(m, Some((rows, cols))).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub(crate) fn matrix_json(m: &Matrix) -> MatrixJson {
    m.to_strings()
}

/// Largest group order for which the alternating projector is expanded.
pub const MAX_GROUP_ORDER: usize = 6;

/// Cochains in degrees `0..dims.len()` with `d^i: C^i → C^{i+1}` and the
/// adjacent transpositions `(1 2), …, (k−1 k)` acting in every degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantComplex {
    dims: Vec<usize>,
    d: Vec<Matrix>,
    k: usize,
    action: Vec<Vec<Matrix>>,
}

/// `{ "dims": [..], "d": [matrices], "action": [[matrices per transposition] per degree] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub d: Vec<MatrixJson>,
    #[serde(default)]
    pub action: Vec<Vec<MatrixJson>>,
}

fn model_err(msg: impl Into<String>) -> Error {
    Error::Model(msg.into())
}

impl EquivariantComplex {
    /// Builds and validates a complex; `d` may omit trailing zero maps.
    pub fn new(dims: Vec<usize>, d: Vec<Matrix>, k: usize, action: Vec<Vec<Matrix>>) -> Result<Self> {
        let c = EquivariantComplex { dims, d, k, action };
        c.validate()?;
        Ok(c)
    }

    /// The complex with zero differential.
    pub fn with_zero_differential(dims: Vec<usize>, k: usize, action: Vec<Vec<Matrix>>) -> Result<Self> {
        let d = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        EquivariantComplex::new(dims, d, k, action)
    }

    /// Trivial action of `S_k` (every transposition acts by the identity).
    pub fn trivial_action(dims: &[usize], k: usize) -> Vec<Vec<Matrix>> {
        dims.iter()
            .map(|&n| (1..k).map(|_| Matrix::identity(n)).collect())
            .collect()
    }

    pub fn from_json(j: &ComplexJson, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("group order must be at least 1"));
        }
        let dims = j.dims.clone();
        if j.d.len() > dims.len().saturating_sub(1) {
            return Err(Error::Parse(format!(
                "{} differentials given for {} degrees",
                j.d.len(),
                dims.len()
            )));
        }
        let d = (0..dims.len().saturating_sub(1))
            .map(|i| match j.d.get(i) {
                Some(m) => parse_matrix(m, dims[i + 1], dims[i], &format!("d^{i}")),
                None => Ok(Matrix::zeros(dims[i + 1], dims[i])),
            })
            .collect::<Result<_>>()?;
        let action = if k == 1 && j.action.iter().all(Vec::is_empty) {
            EquivariantComplex::trivial_action(&dims, 1)
        } else {
            if j.action.len() != dims.len() {
                return Err(Error::Parse(format!(
                    "action lists {} degrees, complex has {}",
                    j.action.len(),
                    dims.len()
                )));
            }
            j.action
                .iter()
                .enumerate()
                .map(|(i, ms)| {
                    if ms.len() != k - 1 {
                        return Err(Error::Parse(format!(
                            "degree {i}: {} transpositions given, S_{k} has {}",
                            ms.len(),
                            k - 1
                        )));
                    }
                    ms.iter()
                        .enumerate()
                        .map(|(t, m)| {
                            parse_matrix(
                                m,
                                dims[i],
                                dims[i],
                                &format!("action ({} {}) in degree {i}", t + 1, t + 2),
                            )
                        })
                        .collect()
                })
                .collect::<Result<_>>()?
        };
        EquivariantComplex::new(dims, d, k, action)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            dims: self.dims.clone(),
            d: self.d.iter().map(matrix_json).collect(),
            action: if self.k == 1 {
                Vec::new()
            } else {
                self.action
                    .iter()
                    .map(|ms| ms.iter().map(matrix_json).collect())
                    .collect()
            },
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of degrees `0..len` carried.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension in degree `i` (zero outside the stored range).
    pub fn dim(&self, i: i64) -> usize {
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// `d^i`, a zero map outside the stored range.
    pub fn d(&self, i: i64) -> Matrix {
        if i >= 0 && (i as usize) < self.d.len() {
            self.d[i as usize].clone()
        } else {
            Matrix::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    /// Action of the transposition `(t+1 t+2)` in degree `i`.
    pub fn action(&self, i: i64, t: usize) -> Matrix {
        if i >= 0 && (i as usize) < self.action.len() {
            self.action[i as usize][t].clone()
        } else {
            Matrix::identity(self.dim(i))
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(model_err("group order must be at least 1"));
        }
        if self.d.len() != self.dims.len().saturating_sub(1) {
            return Err(model_err("one differential per consecutive pair of degrees expected"));
        }
        for (i, m) in self.d.iter().enumerate() {
            if m.shape() != (self.dims[i + 1], self.dims[i]) {
                return Err(model_err(format!("d^{i} has shape {:?}", m.shape())));
            }
        }
        for i in 0..self.d.len().saturating_sub(1) {
            if !(&self.d[i + 1] * &self.d[i]).is_zero() {
                return Err(model_err(format!("d^{} ∘ d^{i} ≠ 0", i + 1)));
            }
        }
        if self.action.len() != self.dims.len() {
            return Err(model_err("action must be given in every degree"));
        }
        for (i, ms) in self.action.iter().enumerate() {
            if ms.len() != self.k - 1 {
                return Err(model_err(format!("degree {i}: expected {} transpositions", self.k - 1)));
            }
            for (t, s) in ms.iter().enumerate() {
                let n = self.dims[i];
                if s.shape() != (n, n) {
                    return Err(model_err(format!(
                        "action ({} {}) in degree {i} has wrong shape",
                        t + 1,
                        t + 2
                    )));
                }
                if !(s * s).is_identity() {
                    return Err(model_err(format!(
                        "transposition ({} {}) does not square to the identity in degree {i}",
                        t + 1,
                        t + 2
                    )));
                }
                if i + 1 < self.dims.len() {
                    let d = &self.d[i];
                    if (&self.action[i + 1][t] * d) != (d * s) {
                        return Err(model_err(format!(
                            "transposition ({} {}) does not commute with d^{i}",
                            t + 1,
                            t + 2
                        )));
                    }
                }
            }
            for a in 0..ms.len() {
                for b in a + 1..ms.len() {
                    let (sa, sb) = (&ms[a], &ms[b]);
                    let ok = if b == a + 1 {
                        (&(sa * sb) * sa) == (&(sb * sa) * sb)
                    } else {
                        (sa * sb) == (sb * sa)
                    };
                    if !ok {
                        return Err(model_err(format!(
                            "Coxeter relation between transpositions {} and {} fails in degree {i}",
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Averaged sign projector `(1/k!) Σ sign(σ) σ` in degree `i`.
    pub fn alt_projector(&self, i: i64) -> Result<Matrix> {
        let gens: Vec<Matrix> = (0..self.k - 1).map(|t| self.action(i, t)).collect();
        alt_projector(&gens, self.k, self.dim(i))
    }

    /// Whether a family of maps `C^i → D^i` is a cochain map.
    pub fn check_chain_map(&self, target: &EquivariantComplex, f: &[Matrix], what: &str) -> Result<()> {
        let len = self.len().max(target.len());
        for i in 0..len as i64 {
            let fi = map_at(f, i, target.dim(i), self.dim(i));
            let fi1 = map_at(f, i + 1, target.dim(i + 1), self.dim(i + 1));
            if (&target.d(i) * &fi) != (&fi1 * &self.d(i)) {
                return Err(model_err(format!("{what} is not a cochain map in degree {i}")));
            }
        }
        Ok(())
    }
}

/// Entry `i` of a degree-indexed family of maps, zero when absent.
pub(crate) fn map_at(f: &[Matrix], i: i64, rows: usize, cols: usize) -> Matrix {
    if i >= 0 && (i as usize) < f.len() {
        f[i as usize].clone()
    } else {
        Matrix::zeros(rows, cols)
    }
}

/// Parses one matrix per degree with the given shapes; missing degrees are zero.
pub(crate) fn parse_maps(
    ms: &[MatrixJson],
    rows: &dyn Fn(i64) -> usize,
    cols: &dyn Fn(i64) -> usize,
    len: usize,
    what: &str,
) -> Result<Vec<Matrix>> {
    if ms.len() > len {
        return Err(Error::Parse(format!("{what}: {} matrices for {len} degrees", ms.len())));
    }
    (0..len as i64)
        .map(|i| match ms.get(i as usize) {
            Some(m) => parse_matrix(m, rows(i), cols(i), &format!("{what} in degree {i}")),
            None => Ok(Matrix::zeros(rows(i), cols(i))),
        })
        .collect()
}

/// Expands `S_k` from images of its adjacent transpositions and returns
/// `(1/k!) Σ sign(σ) ρ(σ)`.
pub fn alt_projector(gens: &[Matrix], k: usize, dim: usize) -> Result<Matrix> {
    if k > MAX_GROUP_ORDER {
        return Err(invalid(format!(
            "group order {k} exceeds the limit {MAX_GROUP_ORDER} for projector expansion"
        )));
    }
    if k <= 1 {
        return Ok(Matrix::identity(dim));
    }
    let mut seen: Vec<Vec<usize>> = vec![(0..k).collect()];
    let mut frontier = vec![((0..k).collect::<Vec<usize>>(), Matrix::identity(dim), 1i64)];
    let mut sum = Matrix::identity(dim);
    while let Some((perm, m, sign)) = frontier.pop() {
        for (t, g) in gens.iter().enumerate() {
            let mut next = perm.clone();
            next.swap(t, t + 1);
            if seen.contains(&next) {
                continue;
            }
            let nm = &m * g;
            let ns = -sign;
            let term = if ns > 0 { nm.clone() } else { -&nm };
            sum = &sum + &term;
            seen.push(next.clone());
            frontier.push((next, nm, ns));
        }
    }
    let order: i64 = (1..=k as i64).product();
    Ok(sum.scale(&Q::new(1.into(), order.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> Matrix {
        Matrix::from_i64(&[&[0, 1], &[1, 0]])
    }

    #[test]
    fn projector_on_two_swapped_points() {
        let p = alt_projector(&[swap2()], 2, 2).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(&p * &p, p);
    }

    #[test]
    fn trivial_action_has_no_alternating_part() {
        for k in 2..=4 {
            let gens: Vec<Matrix> = (1..k).map(|_| Matrix::identity(3)).collect();
            assert!(alt_projector(&gens, k, 3).unwrap().is_zero());
        }
        assert!(alt_projector(&[Matrix::identity(1)], 2, 1).unwrap().is_zero());
    }

    #[test]
    fn regular_representation_of_s3() {
        // permutation action of S_3 on Q^3: the sign character does not occur
        let s1 = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let s2 = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let p = alt_projector(&[s1, s2], 3, 3).unwrap();
        assert!(p.is_zero());
        let neg = -&Matrix::identity(1);
        let p = alt_projector(&[neg.clone(), neg], 3, 1).unwrap();
        assert!(p.is_identity());
        assert!(alt_projector(&[], 7, 1).is_err());
    }

    #[test]
    fn validation_rejects_bad_models() {
        let bad_square =
            EquivariantComplex::with_zero_differential(vec![2], 2, vec![vec![Matrix::from_i64(&[&[1, 1], &[0, 1]])]]);
        assert!(matches!(bad_square, Err(Error::Model(_))));
        let d = Matrix::from_i64(&[&[1, 0]]);
        let noncommuting =
            EquivariantComplex::new(vec![2, 1], vec![d], 2, vec![vec![swap2()], vec![Matrix::identity(1)]]);
        assert!(noncommuting.is_err());
        let not_complex = EquivariantComplex::new(
            vec![1, 1, 1],
            vec![Matrix::identity(1), Matrix::identity(1)],
            1,
            EquivariantComplex::trivial_action(&[1, 1, 1], 1),
        );
        assert!(not_complex.is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = EquivariantComplex::with_zero_differential(vec![2, 2], 2, vec![vec![swap2()], vec![swap2()]]).unwrap();
        let j = c.to_json();
        assert_eq!(EquivariantComplex::from_json(&j, 2).unwrap(), c);
    }
}
