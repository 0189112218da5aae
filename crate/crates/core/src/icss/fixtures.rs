//! Built-in models.

use std::collections::BTreeMap;

use super::complex::EquivariantComplex;
use super::model::{AbsoluteModel, IcssModel, PairColumn, PairFace};
use crate::error::{invalid, Result};
use crate::linalg::Matrix;

/// Betti numbers of the Milnor fibre of an isolated hypersurface singularity
/// in `n` variables with Milnor number `mu`.
pub fn a_mu_betti(n: usize, mu: usize) -> Vec<usize> {
    match n {
        0 => vec![0],
        1 => vec![mu + 1],
        _ => {
            let mut b = vec![0; n];
            b[0] = 1;
            b[n - 1] += mu;
            b
        }
    }
}

/// Swap of two equal blocks of size `b`.
fn block_swap(b: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * b, 2 * b);
    m.put(0, b, &Matrix::identity(b));
    m.put(b, 0, &Matrix::identity(b));
    m
}

/// Pair model of a bigerm: fibre `M ⊔ M` (minimal model with the given Betti
/// numbers, zero differential, swap action) inside two contractible copies.
/// `monodromy[i]` acts on `H^i(M)` and is doubled on `M ⊔ M`.
pub fn bigerm_model(betti: &[usize], monodromy: Option<&[Matrix]>) -> Result<IcssModel> {
    if betti.first().copied().unwrap_or(0) == 0 {
        return Err(invalid("the fibre must be nonempty"));
    }
    let dims: Vec<usize> = betti.iter().map(|b| 2 * b).collect();
    let action = betti.iter().map(|&b| vec![block_swap(b)]).collect();
    let fiber = EquivariantComplex::with_zero_differential(dims, 2, action)?;
    let total = EquivariantComplex::new(vec![2], Vec::new(), 2, vec![vec![block_swap(1)]])?;
    let b0 = betti[0];
    let mut inc0 = Matrix::zeros(2 * b0, 2);
    for r in 0..b0 {
        inc0.put(r, 0, &Matrix::identity(1));
        inc0.put(b0 + r, 1, &Matrix::identity(1));
    }
    let mut inclusion = vec![inc0];
    inclusion.extend(betti.iter().skip(1).map(|&b| Matrix::zeros(2 * b, 0)));
    let monodromy = match monodromy {
        None => None,
        Some(h) => {
            if h.len() > betti.len() {
                return Err(invalid("monodromy given beyond the Betti numbers"));
            }
            Some(
                betti
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        let hi = h.get(i).cloned().unwrap_or_else(|| Matrix::identity(b));
                        if hi.shape() != (b, b) {
                            return Err(invalid(format!("monodromy in degree {i} must be {b}x{b}")));
                        }
                        Ok(hi.block_diag(&hi))
                    })
                    .collect::<Result<_>>()?,
            )
        }
    };
    let col = PairColumn::new(fiber, total, inclusion, monodromy)?;
    IcssModel::new(2, vec![col], BTreeMap::new())
}

/// Two triangulated circles (three vertices and three edges each) exchanged
/// by the swap, inside contractible total spaces.
pub fn circle_subdivision_model() -> Result<IcssModel> {
    let mut d0 = Matrix::zeros(6, 6);
    for copy in 0..2 {
        for e in 0..3 {
            let (a, b) = (3 * copy + e, 3 * copy + (e + 1) % 3);
            d0.put(3 * copy + e, a, &Matrix::from_i64(&[&[-1]]));
            d0.put(3 * copy + e, b, &Matrix::from_i64(&[&[1]]));
        }
    }
    let fiber = EquivariantComplex::new(vec![6, 6], vec![d0], 2, vec![vec![block_swap(3)], vec![block_swap(3)]])?;
    let col = PairColumn::with_cone_total(fiber, None)?;
    IcssModel::new(2, vec![col], BTreeMap::new())
}

/// Family whose fibre is its total space: every page vanishes.
pub fn trivial_family_model(fiber: EquivariantComplex) -> Result<IcssModel> {
    if fiber.k() != 2 {
        return Err(invalid("trivial family expects an S_2 complex"));
    }
    let inclusion = fiber.dims().iter().map(|&d| Matrix::identity(d)).collect();
    let col = PairColumn::new(fiber.clone(), fiber, inclusion, None)?;
    IcssModel::new(2, vec![col], BTreeMap::new())
}

/// Columns `k = 2, 3` carrying sign representations in degrees 2 and 1 with
/// zero face maps; both survive to total degree 3.
pub fn two_column_synthetic() -> Result<IcssModel> {
    let neg = -&Matrix::identity(1);
    let empty = Matrix::zeros(0, 0);
    let f2 = EquivariantComplex::with_zero_differential(
        vec![0, 0, 1],
        2,
        vec![vec![empty.clone()], vec![empty.clone()], vec![neg.clone()]],
    )?;
    let f3 = EquivariantComplex::with_zero_differential(
        vec![0, 1],
        3,
        vec![vec![empty.clone(), empty], vec![neg.clone(), neg]],
    )?;
    let id2 = f2.dims().iter().map(|&d| Matrix::identity(d)).collect();
    let id3 = f3.dims().iter().map(|&d| Matrix::identity(d)).collect();
    let c2 = PairColumn::with_cone_total(f2.clone(), Some(id2))?;
    let c3 = PairColumn::with_cone_total(f3.clone(), Some(id3))?;
    let mut faces = BTreeMap::new();
    for j in 1..=3 {
        let fiber = (0..3).map(|i| Matrix::zeros(f3.dim(i), f2.dim(i))).collect();
        faces.insert(
            (3, j),
            PairFace {
                fiber,
                total: vec![Matrix::zeros(c3.total.dim(0), c2.total.dim(0))],
            },
        );
    }
    IcssModel::new(3, vec![c2, c3], faces)
}

/// Two lines crossing transversally: `D^1` is two points, `D^2` the two
/// ordered preimage pairs of the crossing.
pub fn transverse_double_point_absolute() -> Result<AbsoluteModel> {
    let d1 = EquivariantComplex::with_zero_differential(vec![2], 1, EquivariantComplex::trivial_action(&[2], 1))?;
    let d2 = EquivariantComplex::with_zero_differential(vec![2], 2, vec![vec![block_swap(1)]])?;
    let mut faces = BTreeMap::new();
    faces.insert((2, 1), vec![block_swap(1)]);
    faces.insert((2, 2), vec![Matrix::identity(2)]);
    AbsoluteModel::new(vec![d1, d2], faces, vec![1])
}

/// Image of a stabilised bigerm at a regular parameter: two contractible
/// sheets glued along a fibre `M` with the given Betti numbers.
pub fn bigerm_absolute(betti: &[usize]) -> Result<AbsoluteModel> {
    let b0 = betti.first().copied().unwrap_or(0);
    if b0 == 0 {
        return Err(invalid("the fibre must be nonempty"));
    }
    let d1 = EquivariantComplex::with_zero_differential(vec![2], 1, EquivariantComplex::trivial_action(&[2], 1))?;
    let dims: Vec<usize> = betti.iter().map(|b| 2 * b).collect();
    let action = betti.iter().map(|&b| vec![block_swap(b)]).collect();
    let d2 = EquivariantComplex::with_zero_differential(dims, 2, action)?;
    // ε^{2,1} keeps the second point, ε^{2,2} the first; rows list the
    // components of (branch 1, branch 2) pairs first
    let mut keep_second = Matrix::zeros(2 * b0, 2);
    let mut keep_first = Matrix::zeros(2 * b0, 2);
    for r in 0..b0 {
        keep_second.put(r, 1, &Matrix::identity(1));
        keep_second.put(b0 + r, 0, &Matrix::identity(1));
        keep_first.put(r, 0, &Matrix::identity(1));
        keep_first.put(b0 + r, 1, &Matrix::identity(1));
    }
    let higher: Vec<Matrix> = betti.iter().skip(1).map(|&b| Matrix::zeros(2 * b, 0)).collect();
    let mut f1 = vec![keep_second];
    f1.extend(higher.iter().cloned());
    let mut f2 = vec![keep_first];
    f2.extend(higher);
    let mut faces = BTreeMap::new();
    faces.insert((2, 1), f1);
    faces.insert((2, 2), f2);
    let mut image = vec![1, b0 - 1];
    image.extend(betti.iter().skip(1));
    AbsoluteModel::new(vec![d1, d2], faces, image)
}
