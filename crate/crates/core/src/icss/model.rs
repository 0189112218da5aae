//! Equivariant models of the pairs `(D^k(F), D^k(f))` and of `D^k(f)` alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::complex::{map_at, matrix_json, parse_maps, ComplexJson, EquivariantComplex, MatrixJson};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn model_err(msg: impl Into<String>) -> Error {
    Error::Model(msg.into())
}

/// One column `k` of the pair model: cochains of the fibre `D^k(f)`, of the
/// total space `D^k(F)` and the restriction map between them.
#[derive(Clone, Debug)]
pub struct PairColumn {
    pub k: usize,
    pub fiber: EquivariantComplex,
    pub total: EquivariantComplex,
    /// Restriction `C(total) → C(fiber)`, one matrix per degree.
    pub inclusion: Vec<Matrix>,
    /// Geometric monodromy on the fibre cochains, one matrix per degree.
    pub monodromy: Option<Vec<Matrix>>,
    total_is_cone: bool,
}

/// Pullbacks `(ε^{k,j})^*: C(D^{k-1}) → C(D^k)` on fibre and total space.
#[derive(Clone, Debug)]
pub struct PairFace {
    pub fiber: Vec<Matrix>,
    pub total: Vec<Matrix>,
}

/// The double-complex input for the image computing spectral sequence of a
/// one-parameter stabilisation, columns `k = 2..=k_max` (column 1 vanishes).
#[derive(Clone, Debug)]
pub struct IcssModel {
    pub k_max: usize,
    pub columns: BTreeMap<usize, PairColumn>,
    /// Keyed by `(k, j)` with `1 ≤ j ≤ k`, for `3 ≤ k ≤ k_max`.
    pub faces: BTreeMap<(usize, usize), PairFace>,
}

/// Total space of a column: an explicit complex, or `"cone"` for the
/// contractible case where only `H^0` of the fibre is filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TotalJson {
    Tag(String),
    Complex(ComplexJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairColumnJson {
    pub k: usize,
    pub fiber: ComplexJson,
    pub total: TotalJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inclusion: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFaceJson {
    pub k: usize,
    pub j: usize,
    pub fiber: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<Vec<MatrixJson>>,
}

/// ICSS model file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IcssModelJson {
    pub k_max: usize,
    pub columns: Vec<PairColumnJson>,
    #[serde(default)]
    pub face_maps: Vec<PairFaceJson>,
}

impl PairColumn {
    /// Column with an explicit total space.
    pub fn new(
        fiber: EquivariantComplex,
        total: EquivariantComplex,
        inclusion: Vec<Matrix>,
        monodromy: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let col = PairColumn {
            k: fiber.k(),
            fiber,
            total,
            inclusion,
            monodromy,
            total_is_cone: false,
        };
        col.validate()?;
        Ok(col)
    }

    /// Column whose total space is contractible on each component: its
    /// cochains are `ker d^0` of the fibre, included in degree 0.
    pub fn with_cone_total(fiber: EquivariantComplex, monodromy: Option<Vec<Matrix>>) -> Result<Self> {
        let basis = fiber.d(0).kernel();
        let k = fiber.k();
        let action: Vec<Matrix> = (0..k - 1)
            .map(|t| {
                basis
                    .solve(&(&fiber.action(0, t) * &basis))
                    .ok_or_else(|| model_err("action does not preserve H^0 of the fibre"))
            })
            .collect::<Result<_>>()?;
        let total = EquivariantComplex::new(vec![basis.cols()], Vec::new(), k, vec![action])?;
        let col = PairColumn {
            k,
            fiber,
            total,
            inclusion: vec![basis],
            monodromy,
            total_is_cone: true,
        };
        col.validate()?;
        Ok(col)
    }

    /// Restriction in degree `i`.
    pub fn inclusion(&self, i: i64) -> Matrix {
        map_at(&self.inclusion, i, self.fiber.dim(i), self.total.dim(i))
    }

    /// Monodromy in fibre degree `i` (identity when absent).
    pub fn monodromy(&self, i: i64) -> Matrix {
        match &self.monodromy {
            Some(h) if i >= 0 && (i as usize) < h.len() => h[i as usize].clone(),
            _ => Matrix::identity(self.fiber.dim(i)),
        }
    }

    fn validate(&self) -> Result<()> {
        let k = self.k;
        if self.total.k() != k {
            return Err(model_err(format!("column {k}: fibre and total carry different groups")));
        }
        for (i, m) in self.inclusion.iter().enumerate() {
            let i = i as i64;
            if m.shape() != (self.fiber.dim(i), self.total.dim(i)) {
                return Err(model_err(format!(
                    "column {k}: restriction in degree {i} has wrong shape"
                )));
            }
        }
        self.total
            .check_chain_map(&self.fiber, &self.inclusion, &format!("column {k}: restriction"))?;
        let len = self.fiber.len().max(self.total.len()) as i64;
        for i in 0..len {
            let phi = self.inclusion(i);
            for t in 0..k - 1 {
                if (&self.fiber.action(i, t) * &phi) != (&phi * &self.total.action(i, t)) {
                    return Err(model_err(format!(
                        "column {k}: restriction is not equivariant in degree {i}"
                    )));
                }
            }
        }
        if let Some(h) = &self.monodromy {
            if h.len() > self.fiber.len() {
                return Err(model_err(format!(
                    "column {k}: monodromy given beyond the fibre degrees"
                )));
            }
            for i in 0..self.fiber.len() as i64 {
                let hi = self.monodromy(i);
                let n = self.fiber.dim(i);
                if hi.shape() != (n, n) {
                    return Err(model_err(format!(
                        "column {k}: monodromy in degree {i} has wrong shape"
                    )));
                }
                if hi.inverse().is_none() {
                    return Err(model_err(format!(
                        "column {k}: monodromy in degree {i} is not invertible"
                    )));
                }
                if (&self.monodromy(i + 1) * &self.fiber.d(i)) != (&self.fiber.d(i) * &hi) {
                    return Err(model_err(format!(
                        "column {k}: monodromy does not commute with d in degree {i}"
                    )));
                }
                for t in 0..k - 1 {
                    let s = self.fiber.action(i, t);
                    if (&s * &hi) != (&hi * &s) {
                        return Err(model_err(format!(
                            "column {k}: monodromy does not commute with the group action in degree {i}"
                        )));
                    }
                }
                let phi = self.inclusion(i);
                if (&hi * &phi) != phi {
                    return Err(model_err(format!(
                        "column {k}: monodromy moves classes restricted from the total space in degree {i}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn to_json(&self) -> PairColumnJson {
        PairColumnJson {
            k: self.k,
            fiber: self.fiber.to_json(),
            total: if self.total_is_cone {
                TotalJson::Tag("cone".into())
            } else {
                TotalJson::Complex(self.total.to_json())
            },
            inclusion: if self.total_is_cone {
                None
            } else {
                Some(self.inclusion.iter().map(matrix_json).collect())
            },
            monodromy: self.monodromy.as_ref().map(|h| h.iter().map(matrix_json).collect()),
        }
    }

    /// Mapping cone of the restriction, shifted so that index `c` holds
    /// degree `c − 1`: `Cone^m = C^{m+1}(total) ⊕ C^m(fiber)`.
    pub(crate) fn cone(&self) -> ConeData {
        let top = (self.total.len() as i64 - 2).max(self.fiber.len() as i64 - 1).max(-1);
        let degrees: Vec<i64> = (-1..=top).collect();
        let dims: Vec<usize> = degrees
            .iter()
            .map(|&m| self.total.dim(m + 1) + self.fiber.dim(m))
            .collect();
        let d = degrees
            .iter()
            .take(degrees.len().saturating_sub(1))
            .map(|&m| {
                let (ta, fa) = (self.total.dim(m + 1), self.fiber.dim(m));
                let (tb, fb) = (self.total.dim(m + 2), self.fiber.dim(m + 1));
                let mut out = Matrix::zeros(tb + fb, ta + fa);
                out.put(0, 0, &-&self.total.d(m + 1));
                out.put(tb, 0, &self.inclusion(m + 1));
                out.put(tb, ta, &self.fiber.d(m));
                out
            })
            .collect();
        let action = degrees
            .iter()
            .map(|&m| {
                (0..self.k - 1)
                    .map(|t| self.total.action(m + 1, t).block_diag(&self.fiber.action(m, t)))
                    .collect()
            })
            .collect();
        let monodromy = degrees
            .iter()
            .map(|&m| Matrix::identity(self.total.dim(m + 1)).block_diag(&self.monodromy(m)))
            .collect();
        ConeData {
            low: -1,
            dims,
            d,
            action,
            monodromy,
        }
    }
}

/// A cochain complex starting in degree `low`, with group action and monodromy.
#[derive(Clone, Debug)]
pub(crate) struct ConeData {
    pub low: i64,
    pub dims: Vec<usize>,
    pub d: Vec<Matrix>,
    pub action: Vec<Vec<Matrix>>,
    pub monodromy: Vec<Matrix>,
}

impl ConeData {
    pub fn from_complex(c: &EquivariantComplex) -> ConeData {
        let n = c.len();
        ConeData {
            low: 0,
            dims: c.dims().to_vec(),
            d: (0..n.saturating_sub(1)).map(|i| c.d(i as i64)).collect(),
            action: (0..n)
                .map(|i| (0..c.k() - 1).map(|t| c.action(i as i64, t)).collect())
                .collect(),
            monodromy: c.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn dim(&self, m: i64) -> usize {
        let c = m - self.low;
        if c < 0 {
            0
        } else {
            self.dims.get(c as usize).copied().unwrap_or(0)
        }
    }

    pub fn d(&self, m: i64) -> Matrix {
        let c = m - self.low;
        if c >= 0 && (c as usize) < self.d.len() {
            self.d[c as usize].clone()
        } else {
            Matrix::zeros(self.dim(m + 1), self.dim(m))
        }
    }

    pub fn high(&self) -> i64 {
        self.low + self.dims.len() as i64 - 1
    }

    pub fn alt_projector(&self, m: i64, k: usize) -> Result<Matrix> {
        let c = m - self.low;
        if c < 0 || c as usize >= self.dims.len() {
            return Ok(Matrix::zeros(0, 0));
        }
        super::complex::alt_projector(&self.action[c as usize], k, self.dims[c as usize])
    }

    pub fn monodromy(&self, m: i64) -> Matrix {
        let c = m - self.low;
        if c >= 0 && (c as usize) < self.monodromy.len() {
            self.monodromy[c as usize].clone()
        } else {
            Matrix::identity(self.dim(m))
        }
    }
}

impl PairFace {
    /// Face map on the cone, shifted like [`PairColumn::cone`].
    pub(crate) fn cone_map(&self, src: &PairColumn, dst: &PairColumn, m: i64) -> Matrix {
        let t = map_at(&self.total, m + 1, dst.total.dim(m + 1), src.total.dim(m + 1));
        let f = map_at(&self.fiber, m, dst.fiber.dim(m), src.fiber.dim(m));
        t.block_diag(&f)
    }
}

impl IcssModel {
    pub fn new(k_max: usize, columns: Vec<PairColumn>, faces: BTreeMap<(usize, usize), PairFace>) -> Result<Self> {
        if k_max < 2 {
            return Err(model_err("k_max must be at least 2"));
        }
        let mut cols = BTreeMap::new();
        for c in columns {
            if c.k < 2 || c.k > k_max {
                return Err(model_err(format!("column {} outside 2..={k_max}", c.k)));
            }
            if cols.insert(c.k, c).is_some() {
                return Err(model_err("duplicate column"));
            }
        }
        for k in 2..=k_max {
            if !cols.contains_key(&k) {
                return Err(model_err(format!("column {k} missing")));
            }
        }
        let model = IcssModel {
            k_max,
            columns: cols,
            faces,
        };
        model.validate_faces()?;
        Ok(model)
    }

    pub fn column(&self, k: usize) -> &PairColumn {
        &self.columns[&k]
    }

    fn validate_faces(&self) -> Result<()> {
        for &(k, j) in self.faces.keys() {
            if k < 3 || k > self.k_max || j == 0 || j > k {
                return Err(model_err(format!("face map ε^({k},{j}) outside the model")));
            }
        }
        for k in 3..=self.k_max {
            let (src, dst) = (self.column(k - 1), self.column(k));
            for j in 1..=k {
                let face = self
                    .faces
                    .get(&(k, j))
                    .ok_or_else(|| model_err(format!("face map ε^({k},{j}) missing")))?;
                let what = format!("face map ε^({k},{j})");
                let len = src
                    .fiber
                    .len()
                    .max(dst.fiber.len())
                    .max(src.total.len())
                    .max(dst.total.len());
                for i in 0..len as i64 {
                    let ff = map_at(&face.fiber, i, dst.fiber.dim(i), src.fiber.dim(i));
                    let ft = map_at(&face.total, i, dst.total.dim(i), src.total.dim(i));
                    if ff.shape() != (dst.fiber.dim(i), src.fiber.dim(i))
                        || ft.shape() != (dst.total.dim(i), src.total.dim(i))
                    {
                        return Err(model_err(format!("{what}: wrong shape in degree {i}")));
                    }
                    if (&dst.inclusion(i) * &ft) != (&ff * &src.inclusion(i)) {
                        return Err(model_err(format!(
                            "{what}: does not commute with restriction in degree {i}"
                        )));
                    }
                    if (&dst.monodromy(i) * &ff) != (&ff * &src.monodromy(i)) {
                        return Err(model_err(format!(
                            "{what}: does not commute with monodromy in degree {i}"
                        )));
                    }
                }
                src.fiber
                    .check_chain_map(&dst.fiber, &face.fiber, &format!("{what} on the fibre"))?;
                src.total
                    .check_chain_map(&dst.total, &face.total, &format!("{what} on the total space"))?;
            }
        }
        Ok(())
    }

    pub fn from_json(j: &IcssModelJson) -> Result<Self> {
        let mut columns = Vec::new();
        let mut by_k = BTreeMap::new();
        for c in &j.columns {
            let fiber = EquivariantComplex::from_json(&c.fiber, c.k)?;
            let monodromy = match &c.monodromy {
                Some(ms) => {
                    let f = &fiber;
                    Some(parse_maps(
                        ms,
                        &|i| f.dim(i),
                        &|i| f.dim(i),
                        fiber.len(),
                        &format!("column {} monodromy", c.k),
                    )?)
                }
                None => None,
            };
            let col = match &c.total {
                TotalJson::Tag(t) if t == "cone" => {
                    if c.inclusion.is_some() {
                        return Err(Error::Parse(format!(
                            "column {}: inclusion is derived for a cone total space",
                            c.k
                        )));
                    }
                    PairColumn::with_cone_total(fiber, monodromy)?
                }
                TotalJson::Tag(t) => return Err(Error::Parse(format!("column {}: unknown total space {t:?}", c.k))),
                TotalJson::Complex(tj) => {
                    let total = EquivariantComplex::from_json(tj, c.k)?;
                    let inc = c.inclusion.as_ref().ok_or_else(|| {
                        Error::Parse(format!(
                            "column {}: inclusion required with an explicit total space",
                            c.k
                        ))
                    })?;
                    let (f, t) = (&fiber, &total);
                    let inclusion = parse_maps(
                        inc,
                        &|i| f.dim(i),
                        &|i| t.dim(i),
                        fiber.len().max(total.len()),
                        &format!("column {} inclusion", c.k),
                    )?;
                    PairColumn::new(fiber, total, inclusion, monodromy)?
                }
            };
            by_k.insert(c.k, columns.len());
            columns.push(col);
        }
        let mut faces = BTreeMap::new();
        for f in &j.face_maps {
            let (Some(&si), Some(&di)) = (by_k.get(&(f.k.wrapping_sub(1))), by_k.get(&f.k)) else {
                return Err(model_err(format!(
                    "face map ε^({},{}) between missing columns",
                    f.k, f.j
                )));
            };
            let (src, dst) = (&columns[si], &columns[di]);
            let what = format!("face map ε^({},{})", f.k, f.j);
            let len = src.fiber.len().max(dst.fiber.len());
            let fiber = parse_maps(&f.fiber, &|i| dst.fiber.dim(i), &|i| src.fiber.dim(i), len, &what)?;
            let total = match &f.total {
                Some(t) => {
                    if src.total_is_cone {
                        return Err(Error::Parse(format!(
                            "{what}: total map is derived for cone total spaces"
                        )));
                    }
                    let len = src.total.len().max(dst.total.len());
                    parse_maps(t, &|i| dst.total.dim(i), &|i| src.total.dim(i), len, &what)?
                }
                None if src.total_is_cone && dst.total_is_cone => {
                    let image = &map_at(&fiber, 0, dst.fiber.dim(0), src.fiber.dim(0)) * &src.inclusion(0);
                    vec![dst
                        .inclusion(0)
                        .solve(&image)
                        .ok_or_else(|| model_err(format!("{what}: does not preserve H^0")))?]
                }
                None => {
                    return Err(Error::Parse(format!(
                        "{what}: total map required for explicit total spaces"
                    )))
                }
            };
            if faces.insert((f.k, f.j), PairFace { fiber, total }).is_some() {
                return Err(model_err(format!("{what} given twice")));
            }
        }
        IcssModel::new(j.k_max, columns, faces)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: IcssModelJson = serde_json::from_str(s)?;
        IcssModel::from_json(&j)
    }

    pub fn to_json(&self) -> IcssModelJson {
        IcssModelJson {
            k_max: self.k_max,
            columns: self.columns.values().map(PairColumn::to_json).collect(),
            face_maps: self
                .faces
                .iter()
                .map(|(&(k, j), f)| {
                    let cone = self.column(k - 1).total_is_cone && self.column(k).total_is_cone;
                    PairFaceJson {
                        k,
                        j,
                        fiber: f.fiber.iter().map(matrix_json).collect(),
                        total: if cone {
                            None
                        } else {
                            Some(f.total.iter().map(matrix_json).collect())
                        },
                    }
                })
                .collect(),
        }
    }

    /// Whether any column carries a monodromy.
    pub fn has_monodromy(&self) -> bool {
        self.columns.values().any(|c| c.monodromy.is_some())
    }
}

/// Model of `D^k(f)` alone, columns `k = 1..=k_max`, together with the
/// cohomology of the image it should reproduce.
#[derive(Clone, Debug)]
pub struct AbsoluteModel {
    pub k_max: usize,
    pub columns: BTreeMap<usize, EquivariantComplex>,
    /// Pullbacks `(ε^{k,j})^*` for `2 ≤ k ≤ k_max`.
    pub faces: BTreeMap<(usize, usize), Vec<Matrix>>,
    pub image_cohomology: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsoluteColumnJson {
    pub k: usize,
    pub complex: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsoluteFaceJson {
    pub k: usize,
    pub j: usize,
    pub maps: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsoluteModelJson {
    pub k_max: usize,
    pub columns: Vec<AbsoluteColumnJson>,
    #[serde(default)]
    pub face_maps: Vec<AbsoluteFaceJson>,
    pub image_cohomology: Vec<usize>,
}

impl AbsoluteModel {
    pub fn new(
        columns: Vec<EquivariantComplex>,
        faces: BTreeMap<(usize, usize), Vec<Matrix>>,
        image_cohomology: Vec<usize>,
    ) -> Result<Self> {
        let mut cols = BTreeMap::new();
        for c in columns {
            if cols.insert(c.k(), c).is_some() {
                return Err(model_err("duplicate column"));
            }
        }
        let k_max = cols.keys().copied().max().unwrap_or(0);
        for k in 1..=k_max {
            if !cols.contains_key(&k) {
                return Err(model_err(format!("column {k} missing")));
            }
        }
        for k in 2..=k_max {
            for j in 1..=k {
                let f = faces
                    .get(&(k, j))
                    .ok_or_else(|| model_err(format!("face map ε^({k},{j}) missing")))?;
                cols[&(k - 1)].check_chain_map(&cols[&k], f, &format!("face map ε^({k},{j})"))?;
            }
        }
        for &(k, j) in faces.keys() {
            if k < 2 || k > k_max || j == 0 || j > k {
                return Err(model_err(format!("face map ε^({k},{j}) outside the model")));
            }
        }
        Ok(AbsoluteModel {
            k_max,
            columns: cols,
            faces,
            image_cohomology,
        })
    }

    pub fn from_json(j: &AbsoluteModelJson) -> Result<Self> {
        let columns: Vec<EquivariantComplex> = j
            .columns
            .iter()
            .map(|c| EquivariantComplex::from_json(&c.complex, c.k))
            .collect::<Result<_>>()?;
        let by_k: BTreeMap<usize, &EquivariantComplex> = columns.iter().map(|c| (c.k(), c)).collect();
        let mut faces = BTreeMap::new();
        for f in &j.face_maps {
            let (Some(src), Some(dst)) = (by_k.get(&f.k.wrapping_sub(1)), by_k.get(&f.k)) else {
                return Err(model_err(format!(
                    "face map ε^({},{}) between missing columns",
                    f.k, f.j
                )));
            };
            let what = format!("face map ε^({},{})", f.k, f.j);
            let maps = parse_maps(
                &f.maps,
                &|i| dst.dim(i),
                &|i| src.dim(i),
                src.len().max(dst.len()),
                &what,
            )?;
            faces.insert((f.k, f.j), maps);
        }
        let m = AbsoluteModel::new(columns, faces, j.image_cohomology.clone())?;
        if m.k_max != j.k_max {
            return Err(model_err(format!("k_max {} but columns run to {}", j.k_max, m.k_max)));
        }
        Ok(m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: AbsoluteModelJson = serde_json::from_str(s)?;
        AbsoluteModel::from_json(&j)
    }

    pub fn to_json(&self) -> AbsoluteModelJson {
        AbsoluteModelJson {
            k_max: self.k_max,
            columns: self
                .columns
                .iter()
                .map(|(&k, c)| AbsoluteColumnJson {
                    k,
                    complex: c.to_json(),
                })
                .collect(),
            face_maps: self
                .faces
                .iter()
                .map(|(&(k, j), ms)| AbsoluteFaceJson {
                    k,
                    j,
                    maps: ms.iter().map(matrix_json).collect(),
                })
                .collect(),
            image_cohomology: self.image_cohomology.clone(),
        }
    }

    /// The same model with every face map replaced by zero.
    pub fn with_zero_faces(&self) -> AbsoluteModel {
        let faces = self
            .faces
            .iter()
            .map(|(&(k, j), ms)| {
                let zs = ms.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
                ((k, j), zs)
            })
            .collect();
        AbsoluteModel { faces, ..self.clone() }
    }
}
