//! Alternating double complexes, their total complex and the spectral
//! sequence of the column filtration.

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::map_at;
use super::model::{AbsoluteModel, ConeData, IcssModel};
use crate::error::{Error, Result};
use crate::linalg::{span_sum, Matrix, Subquotient};
use crate::poly::Verdict;

fn model_err(msg: impl Into<String>) -> Error {
    Error::Model(msg.into())
}

/// Matrix of `f` restricted to subspaces with the given bases.
fn restrict(src: &Matrix, dst: &Matrix, f: &Matrix, what: &str) -> Result<Matrix> {
    dst.solve(&(f * src))
        .ok_or_else(|| model_err(format!("{what} does not preserve alternating cochains")))
}

/// Alternating part of one column, in coordinates of a fixed basis.
#[derive(Clone, Debug)]
struct AltColumn {
    p: usize,
    low: i64,
    basis: Vec<Matrix>,
    d: Vec<Matrix>,
    h: Vec<Matrix>,
}

impl AltColumn {
    fn build(p: usize, cone: &ConeData, k: usize) -> Result<Self> {
        let degrees: Vec<i64> = (cone.low..=cone.high()).collect();
        let basis: Vec<Matrix> = degrees
            .iter()
            .map(|&m| Ok(cone.alt_projector(m, k)?.column_basis()))
            .collect::<Result<_>>()?;
        let d = degrees
            .iter()
            .take(degrees.len().saturating_sub(1))
            .enumerate()
            .map(|(c, &m)| restrict(&basis[c], &basis[c + 1], &cone.d(m), "differential"))
            .collect::<Result<_>>()?;
        let h = degrees
            .iter()
            .enumerate()
            .map(|(c, &m)| restrict(&basis[c], &basis[c], &cone.monodromy(m), "monodromy"))
            .collect::<Result<_>>()?;
        Ok(AltColumn {
            p,
            low: cone.low,
            basis,
            d,
            h,
        })
    }

    fn idx(&self, m: i64) -> Option<usize> {
        let c = m - self.low;
        (c >= 0 && (c as usize) < self.basis.len()).then_some(c as usize)
    }

    fn dim(&self, m: i64) -> usize {
        self.idx(m).map_or(0, |c| self.basis[c].cols())
    }

    fn ambient(&self, m: i64) -> usize {
        self.idx(m).map_or(0, |c| self.basis[c].rows())
    }

    fn basis(&self, m: i64) -> Matrix {
        self.idx(m)
            .map_or_else(|| Matrix::zeros(0, 0), |c| self.basis[c].clone())
    }

    fn d(&self, m: i64) -> Matrix {
        match self.idx(m) {
            Some(c) if c < self.d.len() => self.d[c].clone(),
            _ => Matrix::zeros(self.dim(m + 1), self.dim(m)),
        }
    }

    fn h(&self, m: i64) -> Matrix {
        self.idx(m).map_or_else(|| Matrix::zeros(0, 0), |c| self.h[c].clone())
    }

    fn high(&self) -> i64 {
        self.low + self.basis.len() as i64 - 1
    }
}

/// Columns at consecutive positions `p` with horizontal maps between them.
struct DoubleComplex {
    cols: Vec<AltColumn>,
    /// `horiz[c][m]`: column `c` to column `c + 1` in vertical degree `m`.
    horiz: Vec<BTreeMap<i64, Matrix>>,
}

impl DoubleComplex {
    fn build(cols: Vec<AltColumn>, ambient: &dyn Fn(usize, i64) -> Matrix) -> Result<Self> {
        let mut horiz = Vec::new();
        for c in 0..cols.len().saturating_sub(1) {
            let (a, b) = (&cols[c], &cols[c + 1]);
            let mut maps = BTreeMap::new();
            for m in a.low.min(b.low)..=a.high().max(b.high()) {
                if a.dim(m) == 0 {
                    continue;
                }
                let amb = ambient(c, m);
                let what = format!("horizontal map from column {} in degree {m}", a.p);
                let f = if b.dim(m) == 0 {
                    Matrix::zeros(0, a.dim(m))
                } else {
                    restrict(&a.basis(m), &b.basis(m), &amb, &what)?
                };
                maps.insert(m, f);
            }
            horiz.push(maps);
        }
        let dc = DoubleComplex { cols, horiz };
        dc.check()?;
        Ok(dc)
    }

    fn h_map(&self, c: usize, m: i64) -> Matrix {
        self.horiz[c]
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.cols[c + 1].dim(m), self.cols[c].dim(m)))
    }

    fn check(&self) -> Result<()> {
        for c in 0..self.horiz.len() {
            let (a, b) = (&self.cols[c], &self.cols[c + 1]);
            for m in a.low..=a.high() {
                let lhs = &b.d(m) * &self.h_map(c, m);
                let rhs = &self.h_map(c, m + 1) * &a.d(m);
                if lhs != rhs {
                    return Err(model_err(format!(
                        "horizontal map from column {} does not commute with d in degree {m}",
                        a.p
                    )));
                }
                if c + 1 < self.horiz.len() && !(&self.h_map(c + 1, m) * &self.h_map(c, m)).is_zero() {
                    return Err(model_err(format!(
                        "horizontal differential does not square to zero from column {} in degree {m}",
                        a.p
                    )));
                }
            }
        }
        Ok(())
    }

    fn total(&self) -> Filtered {
        let lo = self.cols.iter().map(|c| c.low + c.p as i64).min().unwrap_or(0);
        let hi = self.cols.iter().map(|c| c.high() + c.p as i64).max().unwrap_or(-1);
        let mut blocks = Vec::new();
        for l in lo..=hi + 1 {
            let mut off = 0;
            let mut bs = Vec::new();
            for (c, col) in self.cols.iter().enumerate() {
                let m = l - col.p as i64;
                let size = col.dim(m);
                bs.push(Block {
                    c,
                    p: col.p,
                    m,
                    offset: off,
                    size,
                });
                off += size;
            }
            blocks.push(bs);
        }
        let dims: Vec<usize> = blocks.iter().map(|bs| bs.iter().map(|b| b.size).sum()).collect();
        let mut d = Vec::new();
        let mut h = Vec::new();
        for (li, bs) in blocks.iter().enumerate() {
            let rows = dims.get(li + 1).copied().unwrap_or(0);
            let mut dm = Matrix::zeros(rows, dims[li]);
            let mut hm = Matrix::zeros(dims[li], dims[li]);
            for b in bs {
                if b.size == 0 {
                    continue;
                }
                let col = &self.cols[b.c];
                hm.put(b.offset, b.offset, &col.h(b.m));
                if li + 1 < blocks.len() {
                    let next = &blocks[li + 1];
                    let tv = &next[b.c];
                    if tv.size > 0 {
                        let v = col.d(b.m);
                        let v = if col.p % 2 == 1 { -&v } else { v };
                        dm.put(tv.offset, b.offset, &v);
                    }
                    if b.c + 1 < self.cols.len() {
                        let th = &next[b.c + 1];
                        if th.size > 0 {
                            dm.put(th.offset, b.offset, &self.h_map(b.c, b.m));
                        }
                    }
                }
            }
            d.push(dm);
            h.push(hm);
        }
        Filtered {
            lo,
            blocks,
            dims,
            d,
            h,
            p_min: self.cols.first().map_or(0, |c| c.p),
            p_max: self.cols.last().map_or(0, |c| c.p),
        }
    }
}

#[derive(Clone, Debug)]
struct Block {
    c: usize,
    p: usize,
    m: i64,
    offset: usize,
    size: usize,
}

/// Total complex with its decreasing column filtration.
struct Filtered {
    lo: i64,
    /// Blocks of `Tot^l` for `l = lo..=hi + 1`.
    blocks: Vec<Vec<Block>>,
    dims: Vec<usize>,
    d: Vec<Matrix>,
    h: Vec<Matrix>,
    p_min: usize,
    p_max: usize,
}

impl Filtered {
    fn li(&self, l: i64) -> Option<usize> {
        let i = l - self.lo;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    fn dim(&self, l: i64) -> usize {
        self.li(l).map_or(0, |i| self.dims[i])
    }

    fn d(&self, l: i64) -> Matrix {
        match self.li(l) {
            Some(i) if self.li(l + 1).is_some() => self.d[i].clone(),
            _ => Matrix::zeros(self.dim(l + 1), self.dim(l)),
        }
    }

    fn h(&self, l: i64) -> Matrix {
        self.li(l).map_or_else(|| Matrix::zeros(0, 0), |i| self.h[i].clone())
    }

    /// Unit vectors of the blocks of `Tot^l` in columns `p ≥ s`.
    fn f_basis(&self, s: i64, l: i64) -> Matrix {
        let n = self.dim(l);
        let Some(i) = self.li(l) else {
            return Matrix::zeros(0, 0);
        };
        let idx: Vec<usize> = self.blocks[i]
            .iter()
            .filter(|b| b.p as i64 >= s)
            .flat_map(|b| b.offset..b.offset + b.size)
            .collect();
        Matrix::identity(n).select_columns(&idx)
    }

    /// Rows of `Tot^l` in columns `p < s`.
    fn rows_below(&self, s: i64, l: i64) -> Vec<usize> {
        let Some(i) = self.li(l) else {
            return Vec::new();
        };
        self.blocks[i]
            .iter()
            .filter(|b| (b.p as i64) < s)
            .flat_map(|b| b.offset..b.offset + b.size)
            .collect()
    }

    /// `Z_r^{s,l} = { x ∈ F^s Tot^l : D x ∈ F^{s+r} }`.
    fn z(&self, r: i64, s: i64, l: i64) -> Matrix {
        let fb = self.f_basis(s, l);
        if fb.cols() == 0 {
            return fb;
        }
        let dx = &self.d(l) * &fb;
        let rows = self.rows_below(s + r, l + 1);
        let low = dx.transpose().select_columns(&rows).transpose();
        if low.rows() == 0 {
            return fb;
        }
        &fb * &low.kernel()
    }

    fn page_entry(&self, r: i64, s: i64, l: i64) -> Subquotient {
        let z = self.z(r, s, l);
        let a = self.z(r - 1, s + 1, l);
        let below = self.z(r - 1, s - r + 1, l - 1);
        let b = if below.cols() == 0 {
            Matrix::zeros(self.dim(l), 0)
        } else {
            &self.d(l - 1) * &below
        };
        let z = if z.cols() == 0 {
            Matrix::zeros(self.dim(l), 0)
        } else {
            z
        };
        let a = if a.cols() == 0 {
            Matrix::zeros(self.dim(l), 0)
        } else {
            a
        };
        Subquotient::new(&z, &span_sum(&a, &b))
    }

    fn cohomology(&self, l: i64) -> usize {
        let n = self.dim(l);
        n - self.d(l).rank() - self.d(l - 1).rank()
    }

    fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.lo + self.dims.len() as i64 - 2
    }
}

/// Nonzero entry `E_r^{i,j}`; `j` is the column index `k − 1` and `i` the
/// vertical degree, so the total degree is `i + j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PageEntry {
    pub i: i64,
    pub j: usize,
    pub dim: usize,
}

/// Nonzero differential `d_r: E_r^{i,j} → E_r^{i−r+1, j+r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageDifferential {
    pub from: [i64; 2],
    pub to: [i64; 2],
    pub rank: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub r: usize,
    pub entries: Vec<PageEntry>,
    pub differentials: Vec<PageDifferential>,
}

impl Page {
    pub fn dim(&self, i: i64, j: usize) -> usize {
        self.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.dim)
    }
}

/// Induced monodromy on an `E_∞` entry.
#[derive(Clone, Debug)]
pub struct EntryMonodromy {
    pub i: i64,
    pub j: usize,
    pub matrix: Matrix,
}

/// All pages of a column-filtered alternating double complex.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub pages: Vec<Page>,
    /// First page from which every differential vanishes.
    pub stabilized_at: usize,
    pub e_infinity: Vec<PageEntry>,
    /// Lowest total degree of `total_cohomology`.
    pub lowest_degree: i64,
    /// Betti numbers of the total complex.
    pub total_cohomology: Vec<usize>,
    #[serde(skip)]
    pub e_infinity_monodromy: Vec<EntryMonodromy>,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// `dim E_∞` summed along the antidiagonal of total degree `l`.
    pub fn e_infinity_total(&self, l: i64) -> usize {
        self.e_infinity
            .iter()
            .filter(|e| e.i + e.j as i64 == l)
            .map(|e| e.dim)
            .sum()
    }

    /// Betti number of the total complex in degree `l`.
    pub fn betti(&self, l: i64) -> usize {
        let i = l - self.lowest_degree;
        if i < 0 {
            0
        } else {
            self.total_cohomology.get(i as usize).copied().unwrap_or(0)
        }
    }
}

fn run(fc: &Filtered, min_pages: usize, with_monodromy: bool) -> Result<SpectralSequence> {
    let spread = (fc.p_max - fc.p_min) as i64;
    let r_max = (min_pages as i64).max(spread + 2);
    let degrees: Vec<i64> = fc.degrees().collect();
    let ss: Vec<i64> = (fc.p_min as i64..=fc.p_max as i64).collect();
    let mut pages = Vec::new();
    let mut prev: Option<BTreeMap<(i64, i64), Subquotient>> = None;
    let mut prev_dout: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut prev_din: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut last_nonzero = 0;
    let mut last_entries = BTreeMap::new();
    for r in 1..=r_max {
        let mut entries = BTreeMap::new();
        for &s in &ss {
            for &l in &degrees {
                entries.insert((s, l), fc.page_entry(r, s, l));
            }
        }
        if let Some(old) = &prev {
            for (&(s, l), e) in &entries {
                let before = old[&(s, l)].dim();
                let expect = before - prev_dout.get(&(s, l)).unwrap_or(&0) - prev_din.get(&(s, l)).unwrap_or(&0);
                if e.dim() != expect {
                    return Err(model_err(format!(
                        "page {r}: entry ({}, {s}) has dimension {} but the previous page predicts {expect}",
                        l - s,
                        e.dim()
                    )));
                }
            }
        }
        let mut diffs = Vec::new();
        let mut dmats: BTreeMap<(i64, i64), Matrix> = BTreeMap::new();
        prev_dout.clear();
        prev_din.clear();
        for (&(s, l), e) in &entries {
            let Some(t) = entries.get(&(s + r, l + 1)) else {
                continue;
            };
            if e.dim() == 0 || t.dim() == 0 {
                continue;
            }
            let m = t.coordinates(&(&fc.d(l) * &e.reps))?;
            let rank = m.rank();
            if rank > 0 {
                prev_dout.insert((s, l), rank);
                prev_din.insert((s + r, l + 1), rank);
                diffs.push(PageDifferential {
                    from: [l - s, s],
                    to: [l + 1 - s - r, s + r],
                    rank,
                    matrix: m.to_strings(),
                });
                dmats.insert((s, l), m);
            }
        }
        for (&(s, l), m) in &dmats {
            if let Some(next) = dmats.get(&(s + r, l + 1)) {
                if !(next * m).is_zero() {
                    return Err(model_err(format!("d_{r} ∘ d_{r} ≠ 0 at ({}, {s})", l - s)));
                }
            }
        }
        if !diffs.is_empty() {
            last_nonzero = r;
        }
        let mut listed: Vec<PageEntry> = entries
            .iter()
            .filter(|(_, e)| e.dim() > 0)
            .map(|(&(s, l), e)| PageEntry {
                i: l - s,
                j: s as usize,
                dim: e.dim(),
            })
            .collect();
        listed.sort_by_key(|e| (e.j, e.i));
        pages.push(Page {
            r: r as usize,
            entries: listed,
            differentials: diffs,
        });
        last_entries = entries.clone();
        prev = Some(entries);
    }
    let mut e_infinity: Vec<PageEntry> = pages.last().map(|p| p.entries.clone()).unwrap_or_default();
    e_infinity.sort_by_key(|e| (e.j, e.i));

    let lowest_degree = fc.lo.min(0);
    let top = *degrees.last().unwrap_or(&-1);
    let total_cohomology: Vec<usize> = (lowest_degree..=top).map(|l| fc.cohomology(l)).collect();
    for &l in &degrees {
        let e: usize = e_infinity.iter().filter(|e| e.i + e.j as i64 == l).map(|e| e.dim).sum();
        if e != fc.cohomology(l) {
            return Err(model_err(format!(
                "E_∞ in total degree {l} has dimension {e}, the total complex has {}",
                fc.cohomology(l)
            )));
        }
    }
    let mut e_infinity_monodromy = Vec::new();
    if with_monodromy {
        for (&(s, l), e) in &last_entries {
            if e.dim() > 0 {
                let matrix = e.induced(&fc.h(l), e)?;
                e_infinity_monodromy.push(EntryMonodromy {
                    i: l - s,
                    j: s as usize,
                    matrix,
                });
            }
        }
    }
    Ok(SpectralSequence {
        pages,
        stabilized_at: last_nonzero as usize + 1,
        e_infinity,
        lowest_degree,
        total_cohomology,
        e_infinity_monodromy,
    })
}

fn pair_double_complex(model: &IcssModel) -> Result<DoubleComplex> {
    let cols = model
        .columns
        .values()
        .map(|c| AltColumn::build(c.k - 1, &c.cone(), c.k))
        .collect::<Result<Vec<_>>>()?;
    let ambient = |c: usize, m: i64| -> Matrix {
        let k = cols[c].p + 1;
        let (src, dst) = (model.column(k), model.column(k + 1));
        let mut sum = Matrix::zeros(cols[c + 1].ambient(m), cols[c].ambient(m));
        for j in 1..=k + 1 {
            let f = model.faces[&(k + 1, j)].cone_map(src, dst, m);
            sum = if j % 2 == 0 { &sum + &f } else { &sum - &f };
        }
        sum
    };
    DoubleComplex::build(cols.clone(), &ambient)
}

/// Runs the image computing spectral sequence of a pair model; pages
/// `r = 1..=k_max + 1` are always produced.
pub fn run_icss(model: &IcssModel) -> Result<SpectralSequence> {
    let dc = pair_double_complex(model)?;
    run(&dc.total(), model.k_max + 1, true)
}

fn absolute_double_complex(model: &AbsoluteModel) -> Result<DoubleComplex> {
    let cols = model
        .columns
        .values()
        .map(|c| AltColumn::build(c.k() - 1, &ConeData::from_complex(c), c.k()))
        .collect::<Result<Vec<_>>>()?;
    let ambient = |c: usize, m: i64| -> Matrix {
        let k = cols[c].p + 1;
        let (src, dst) = (&model.columns[&k], &model.columns[&(k + 1)]);
        let mut sum = Matrix::zeros(dst.dim(m), src.dim(m));
        for j in 1..=k + 1 {
            let f = map_at(&model.faces[&(k + 1, j)], m, dst.dim(m), src.dim(m));
            sum = if j % 2 == 0 { &sum + &f } else { &sum - &f };
        }
        sum
    };
    DoubleComplex::build(cols.clone(), &ambient)
}

/// Spectral sequence of the alternating double complex of an absolute model.
pub fn run_absolute(model: &AbsoluteModel) -> Result<SpectralSequence> {
    let dc = absolute_double_complex(model)?;
    run(&dc.total(), model.k_max + 1, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AugmentedExactness {
    pub computed: Vec<usize>,
    pub expected: Vec<usize>,
    pub verdict: Verdict,
}

fn trim(v: &[usize]) -> Vec<usize> {
    let n = v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    v[..n].to_vec()
}

/// Compares the cohomology of the total alternating complex with the
/// supplied cohomology of the image.
pub fn check_augmented_exactness(model: &AbsoluteModel) -> Result<AugmentedExactness> {
    let ss = run_absolute(model)?;
    if ss.lowest_degree < 0
        && ss.total_cohomology[..(-ss.lowest_degree) as usize]
            .iter()
            .any(|&b| b > 0)
    {
        return Err(model_err("cohomology in negative degree"));
    }
    let computed = trim(&ss.total_cohomology[(-ss.lowest_degree) as usize..]);
    let expected = trim(&model.image_cohomology);
    Ok(AugmentedExactness {
        verdict: Verdict::from_bool(computed == expected),
        computed,
        expected,
    })
}
