//! Strict and Gaffney multiple point spaces, dimensional correctness and
//! specialization checks.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::germs::{non_immersive_locus, serialize_ideal, MapGerm, Unfolding};
use crate::poly::{DimAtOrigin, DimMethod, Ideal, Polynomial, Ring, Verdict, Q};

/// Which multiple point space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Closure of tuples of pairwise distinct points with equal image.
    Strict,
    /// Slice at `t = 0` of the strict space of a stable unfolding.
    Gaffney,
}

/// How Gaffney spaces are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Iterated divided differences (corank ≤ 1 germs).
    #[serde(rename = "divided-diff")]
    DividedDifferences,
    /// Strict space of a supplied stable unfolding, sliced at `t = 0`.
    #[serde(rename = "unfolding")]
    Unfolding,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "divided-diff" | "auto-corank1" => Ok(Route::DividedDifferences),
            "unfolding" => Ok(Route::Unfolding),
            _ => Err(Error::Parse(format!("unknown route `{s}`"))),
        }
    }
}

/// Provenance note attached to every result that relies on a user unfolding.
pub const STABILITY_ASSERTED: &str = "stability of the supplied unfolding is asserted, not verified";

/// An ideal presentation of one branch-tuple piece of `𝒟^k` or `D^k`.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplePointSpace {
    pub k: usize,
    pub kind: Kind,
    /// Branch of each point, 1-based and non-decreasing.
    pub branch_tuple: Vec<usize>,
    #[serde(serialize_with = "serialize_ideal")]
    pub ideal: Ideal,
    /// Variables of each of the `k` source copies.
    pub blocks: Vec<Vec<String>>,
    /// Shared parameters (unfoldings only).
    pub params: Vec<String>,
    /// Pairs of copies (1-based) whose swap is a symmetry: same-branch pairs.
    pub swaps: Vec<(usize, usize)>,
    pub dim: DimAtOrigin,
    pub expected_dim: i64,
}

impl MultiplePointSpace {
    /// Empty or of the expected dimension.
    pub fn is_correct(&self) -> bool {
        match self.dim.value() {
            None => true,
            Some(d) => d as i64 == self.expected_dim,
        }
    }

    /// Swaps the variables of two copies in the ideal's generators.
    pub fn swapped(&self, a: usize, b: usize) -> Ideal {
        let ring = self.ideal.ring();
        let mut perm: Vec<usize> = (0..ring.nvars()).collect();
        for (va, vb) in self.blocks[a - 1].iter().zip(&self.blocks[b - 1]) {
            let (i, j) = (ring.index_of(va).unwrap(), ring.index_of(vb).unwrap());
            perm.swap(i, j);
        }
        self.ideal.permute(&perm)
    }
}

/// Branch data with optional shared parameters.
#[derive(Clone, Debug)]
struct MapBranch {
    vars: Vec<String>,
    /// Components in the ring `vars ⊔ params`.
    comps: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
struct MapData {
    n: usize,
    p: usize,
    params: Vec<String>,
    branches: Vec<MapBranch>,
}

impl MapData {
    fn from_germ(g: &MapGerm) -> MapData {
        MapData {
            n: g.n(),
            p: g.p(),
            params: Vec::new(),
            branches: g
                .branches()
                .iter()
                .map(|b| MapBranch {
                    vars: b.vars().to_vec(),
                    comps: b.components().to_vec(),
                })
                .collect(),
        }
    }

    fn from_unfolding(u: &Unfolding) -> MapData {
        let g = u.base();
        MapData {
            n: g.n(),
            p: g.p(),
            params: u.params().to_vec(),
            branches: g
                .branches()
                .iter()
                .zip(u.components())
                .map(|(b, comps)| MapBranch {
                    vars: b.vars().to_vec(),
                    comps: comps.clone(),
                })
                .collect(),
        }
    }

    /// The member `f_t` at the given parameter values.
    fn specialize(&self, values: &[Q]) -> Result<MapData> {
        let mut branches = Vec::new();
        for b in &self.branches {
            let ring = Ring::new(b.vars.iter().cloned())?;
            let assign: Vec<(usize, Q)> = values
                .iter()
                .enumerate()
                .map(|(j, v)| (self.n + j, v.clone()))
                .collect();
            let comps = b
                .comps
                .iter()
                .map(|c| c.evaluate_vars(&assign).embed(&ring))
                .collect::<Result<_>>()?;
            branches.push(MapBranch {
                vars: b.vars.clone(),
                comps,
            });
        }
        Ok(MapData {
            n: self.n,
            p: self.p,
            params: Vec::new(),
            branches,
        })
    }

    fn expected_dim(&self, k: usize) -> i64 {
        let (n, p, r) = (self.n as i64, self.p as i64, self.params.len() as i64);
        let k = k as i64;
        k * n - (k - 1) * p + r
    }

    /// Non-decreasing branch tuples of length `k`, lexicographically.
    fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        fn rec(k: usize, start: usize, nb: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for b in start..nb {
                cur.push(b);
                rec(k, b, nb, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, 0, self.branches.len(), &mut Vec::new(), &mut out);
        out
    }
}

/// The ambient ring of a tuple: copy `i` of variable `v` is `{v}_{i}`.
struct TupleRing {
    ring: Ring,
    blocks: Vec<Vec<String>>,
    tuple: Vec<usize>,
    n: usize,
    nparams: usize,
}

impl TupleRing {
    fn new(map: &MapData, tuple: &[usize]) -> Result<TupleRing> {
        let blocks: Vec<Vec<String>> = tuple
            .iter()
            .enumerate()
            .map(|(i, &b)| map.branches[b].vars.iter().map(|v| format!("{v}_{}", i + 1)).collect())
            .collect();
        let ring = Ring::new(blocks.iter().flatten().cloned().chain(map.params.iter().cloned()))?;
        Ok(TupleRing {
            ring,
            blocks,
            tuple: tuple.to_vec(),
            n: map.n,
            nparams: map.params.len(),
        })
    }

    fn k(&self) -> usize {
        self.tuple.len()
    }

    /// Moves a branch polynomial to copy `i`, with the `y` variable (if
    /// given) taken from copy `y_copy` instead.
    fn place(&self, f: &Polynomial, i: usize, y: Option<(usize, usize)>) -> Polynomial {
        let k = self.k();
        let mut map: Vec<usize> = (0..self.n).map(|v| i * self.n + v).collect();
        if let Some((yv, y_copy)) = y {
            map[yv] = y_copy * self.n + yv;
        }
        map.extend((0..self.nparams).map(|j| k * self.n + j));
        f.reindex(&self.ring, &map)
    }

    fn var(&self, copy: usize, v: usize) -> Polynomial {
        self.ring.gen(copy * self.n + v)
    }

    fn diagonal(&self, i: usize, j: usize) -> Result<Ideal> {
        Ideal::new(
            &self.ring,
            (0..self.n).map(|v| &self.var(i, v) - &self.var(j, v)).collect(),
        )
    }

    fn same_branch_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                if self.tuple[i] == self.tuple[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn finish(&self, map: &MapData, kind: Kind, ideal: Ideal) -> Result<MultiplePointSpace> {
        let dim = ideal.dim_at_origin()?;
        Ok(MultiplePointSpace {
            k: self.k(),
            kind,
            branch_tuple: self.tuple.iter().map(|b| b + 1).collect(),
            blocks: self.blocks.clone(),
            params: map.params.clone(),
            swaps: self
                .same_branch_pairs()
                .into_iter()
                .map(|(i, j)| (i + 1, j + 1))
                .collect(),
            dim,
            expected_dim: map.expected_dim(self.k()),
            ideal,
        })
    }
}

fn strict_tuple(map: &MapData, tuple: &[usize]) -> Result<MultiplePointSpace> {
    let tr = TupleRing::new(map, tuple)?;
    let mut gens = Vec::new();
    for i in 0..tr.k() - 1 {
        let (a, b) = (&map.branches[tuple[i]], &map.branches[tuple[i + 1]]);
        for (fa, fb) in a.comps.iter().zip(&b.comps) {
            gens.push(&tr.place(fa, i, None) - &tr.place(fb, i + 1, None));
        }
    }
    let mut ideal = Ideal::new(&tr.ring, gens)?;
    for (i, j) in tr.same_branch_pairs() {
        ideal = ideal.saturate(&tr.diagonal(i, j)?)?;
    }
    tr.finish(map, Kind::Strict, ideal)
}

/// Components that are coordinates, and the remaining source variable.
struct Prenormal {
    coords: Vec<usize>,
    y: usize,
    /// Components that are not coordinate functions.
    others: Vec<usize>,
}

fn prenormal(map: &MapData, b: usize) -> Result<Prenormal> {
    let br = &map.branches[b];
    let ring = br.comps[0].ring();
    let mut used_vars = Vec::new();
    let mut coord_comps = Vec::new();
    for (a, c) in br.comps.iter().enumerate() {
        if used_vars.len() + 1 >= map.n {
            break;
        }
        if let Some(v) = (0..map.n).find(|&v| *c == ring.gen(v) && !used_vars.contains(&v)) {
            used_vars.push(v);
            coord_comps.push(a);
        }
    }
    if used_vars.len() + 1 != map.n {
        return Err(Error::Unsupported(format!(
            "branch {} is not of the form (x, g(x, y)) with n − 1 coordinate components; \
             supply a stable unfolding",
            b + 1
        )));
    }
    let y = (0..map.n)
        .rev()
        .find(|v| !used_vars.contains(v))
        .expect("one free variable");
    Ok(Prenormal {
        coords: used_vars,
        y,
        others: (0..map.p).filter(|a| !coord_comps.contains(a)).collect(),
    })
}

fn divided_difference_tuple(map: &MapData, tuple: &[usize]) -> Result<MultiplePointSpace> {
    let tr = TupleRing::new(map, tuple)?;
    let mut gens = Vec::new();
    // maximal runs of equal branches
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &b) in tuple.iter().enumerate() {
        match blocks.last_mut() {
            Some(run) if tuple[run[0]] == b => run.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    for run in &blocks {
        let b = tuple[run[0]];
        let pn = prenormal(map, b)?;
        let first = run[0];
        for &i in &run[1..] {
            for &v in &pn.coords {
                gens.push(&tr.var(i, v) - &tr.var(first, v));
            }
        }
        let m = run.len();
        for &a in &pn.others {
            let g = &map.branches[b].comps[a];
            // dd[len][start] = g[y_start, …, y_{start+len}]
            let mut level: Vec<Polynomial> = run.iter().map(|&i| tr.place(g, first, Some((pn.y, i)))).collect();
            if m == 1 {
                continue;
            }
            for len in 1..m {
                let mut next = Vec::with_capacity(m - len);
                for s in 0..m - len {
                    let num = &level[s] - &level[s + 1];
                    let den = &tr.var(run[s], pn.y) - &tr.var(run[s + len], pn.y);
                    let q = num
                        .div_exact(&den)
                        .ok_or_else(|| Error::Invalid("divided difference is not a polynomial".into()))?;
                    next.push(q);
                }
                gens.push(next[0].clone());
                level = next;
            }
        }
    }
    for w in blocks.windows(2) {
        let (i, j) = (w[0][0], w[1][0]);
        let (a, b) = (&map.branches[tuple[i]], &map.branches[tuple[j]]);
        for (fa, fb) in a.comps.iter().zip(&b.comps) {
            gens.push(&tr.place(fa, i, None) - &tr.place(fb, j, None));
        }
    }
    let ideal = Ideal::new(&tr.ring, gens)?;
    tr.finish(map, Kind::Gaffney, ideal)
}

/// Slice of a space over the parameters at the given values, in the copies ring.
fn slice(space: &MultiplePointSpace, values: &[Q]) -> Result<Ideal> {
    let ring = space.ideal.ring();
    let nparams = space.params.len();
    let first_param = ring.nvars() - nparams;
    let assign: Vec<(usize, Q)> = values
        .iter()
        .enumerate()
        .map(|(j, v)| (first_param + j, v.clone()))
        .collect();
    let copies = Ring::new(space.blocks.iter().flatten().cloned())?;
    Ideal::new(
        &copies,
        space
            .ideal
            .evaluate_vars(&assign)
            .generators()
            .iter()
            .map(|g| g.embed(&copies))
            .collect::<Result<_>>()?,
    )
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `𝒟^k(f)`: one space per non-decreasing branch tuple.
pub fn strict_multiple_points(g: &MapGerm, k: usize) -> Result<Vec<MultiplePointSpace>> {
    check_k(k)?;
    let map = MapData::from_germ(g);
    map.tuples(k).iter().map(|t| strict_tuple(&map, t)).collect()
}

/// `𝒟^k(F)` of an unfolding, with parameters shared between the copies.
pub fn strict_multiple_points_unfolding(u: &Unfolding, k: usize) -> Result<Vec<MultiplePointSpace>> {
    check_k(k)?;
    let map = MapData::from_unfolding(u);
    map.tuples(k).iter().map(|t| strict_tuple(&map, t)).collect()
}

/// `D^k(F)` of a corank ≤ 1 unfolding by divided differences.
pub fn gaffney_multiple_points_of_unfolding(u: &Unfolding, k: usize) -> Result<Vec<MultiplePointSpace>> {
    check_k(k)?;
    let map = MapData::from_unfolding(u);
    map.tuples(k)
        .iter()
        .map(|t| divided_difference_tuple(&map, t))
        .collect()
}

/// Gaffney spaces of a germ with the route used and cross-check data.
#[derive(Clone, Debug, Serialize)]
pub struct GaffneyResult {
    pub route: Route,
    pub spaces: Vec<MultiplePointSpace>,
    /// Agreement of the two routes when both are available.
    pub routes_agree: Option<Verdict>,
    pub flags: Vec<String>,
}

impl GaffneyResult {
    pub fn dim(&self) -> DimAtOrigin {
        union_dim(&self.spaces)
    }
}

/// Dimension of a union of pieces: the largest, `Empty` when all are empty.
pub fn union_dim(spaces: &[MultiplePointSpace]) -> DimAtOrigin {
    let method = if spaces.iter().any(|s| s.dim.method() == DimMethod::Global) {
        DimMethod::Global
    } else {
        DimMethod::Local
    };
    match spaces.iter().filter_map(|s| s.dim.value()).max() {
        None => DimAtOrigin::Empty { method },
        Some(dim) => DimAtOrigin::Dim { dim, method },
    }
}

fn unfolding_route(u: &Unfolding, k: usize) -> Result<Vec<MultiplePointSpace>> {
    let zeros = vec![Q::from_integer(0.into()); u.params().len()];
    let map = MapData::from_germ(u.base());
    strict_multiple_points_unfolding(u, k)?
        .into_iter()
        .map(|s| {
            let ideal = slice(&s, &zeros)?;
            let tr = TupleRing::new(&map, &s.branch_tuple.iter().map(|b| b - 1).collect::<Vec<_>>())?;
            let ideal = Ideal::new(&tr.ring, ideal.generators().to_vec())?;
            tr.finish(&map, Kind::Gaffney, ideal)
        })
        .collect()
}

/// `D^k(f)` by divided differences or through a supplied stable unfolding.
///
/// With the divided-difference route and an unfolding at hand, both routes
/// are computed and compared up to radicals.
pub fn gaffney_multiple_points(
    g: &MapGerm,
    k: usize,
    route: Route,
    unfolding: Option<&Unfolding>,
) -> Result<GaffneyResult> {
    check_k(k)?;
    let mut flags = Vec::new();
    match route {
        Route::DividedDifferences => {
            if g.corank() > 1 {
                return Err(Error::Unsupported(format!(
                    "corank {} germ: divided differences need corank ≤ 1; supply a stable unfolding",
                    g.corank()
                )));
            }
            let map = MapData::from_germ(g);
            let spaces: Vec<MultiplePointSpace> = map
                .tuples(k)
                .iter()
                .map(|t| divided_difference_tuple(&map, t))
                .collect::<Result<_>>()?;
            let mut routes_agree = None;
            if let Some(u) = unfolding {
                flags.push(STABILITY_ASSERTED.to_string());
                let other = unfolding_route(u, k)?;
                let mut verdict = Verdict::Holds;
                for (a, b) in spaces.iter().zip(&other) {
                    verdict = verdict.and(a.ideal.radical_eq(&b.ideal)?);
                }
                if verdict == Verdict::Fails {
                    flags.push(
                        "divided differences and the unfolding slice disagree: \
                         the supplied unfolding is not stable or the fixture is wrong"
                            .to_string(),
                    );
                }
                routes_agree = Some(verdict);
            }
            Ok(GaffneyResult {
                route,
                spaces,
                routes_agree,
                flags,
            })
        }
        Route::Unfolding => {
            let u = unfolding.ok_or_else(|| invalid("the unfolding route needs params and unfolded_components"))?;
            flags.push(STABILITY_ASSERTED.to_string());
            Ok(GaffneyResult {
                route,
                spaces: unfolding_route(u, k)?,
                routes_agree: None,
                flags,
            })
        }
    }
}

/// One row of a dimensional-correctness report.
#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub k: usize,
    pub dim: DimAtOrigin,
    pub expected: i64,
    pub correct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimCorrectnessReport {
    pub route: Route,
    pub k_max: usize,
    pub entries: Vec<DimEntry>,
    pub correct: bool,
    pub strict_entries: Vec<DimEntry>,
    pub strict_correct: bool,
    pub flags: Vec<String>,
}

fn entry(k: usize, expected: i64, spaces: &[MultiplePointSpace]) -> DimEntry {
    let dim = union_dim(spaces);
    DimEntry {
        k,
        dim,
        expected,
        correct: dim.value().is_none_or(|d| d as i64 == expected),
    }
}

/// Default `k_max = ⌊p / (p − n)⌋`; beyond it the expected dimension is negative.
pub fn default_k_max(n: usize, p: usize) -> Result<usize> {
    if p <= n {
        return Err(invalid(format!(
            "multiple point analysis needs p > n (n = {n}, p = {p})"
        )));
    }
    Ok(p / (p - n))
}

/// Checks `dim D^k = kn − (k−1)p` (or empty) for `2 ≤ k ≤ k_max`, and the
/// same for the strict spaces.
pub fn is_dimensionally_correct(
    g: &MapGerm,
    k_max: Option<usize>,
    route: Route,
    unfolding: Option<&Unfolding>,
) -> Result<DimCorrectnessReport> {
    let k_max = match k_max {
        Some(k) => k,
        None => default_k_max(g.n(), g.p())?,
    };
    if g.p() <= g.n() {
        return Err(invalid("dimensional correctness needs p > n"));
    }
    let map = MapData::from_germ(g);
    let mut entries = Vec::new();
    let mut strict_entries = Vec::new();
    let mut flags = Vec::new();
    for k in 2..=k_max {
        let res = gaffney_multiple_points(g, k, route, unfolding)?;
        for f in res.flags {
            if !flags.contains(&f) {
                flags.push(f);
            }
        }
        entries.push(entry(k, map.expected_dim(k), &res.spaces));
        strict_entries.push(entry(k, map.expected_dim(k), &strict_multiple_points(g, k)?));
    }
    Ok(DimCorrectnessReport {
        route,
        k_max,
        correct: entries.iter().all(|e| e.correct),
        strict_correct: strict_entries.iter().all(|e| e.correct),
        entries,
        strict_entries,
        flags,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub k: usize,
    pub value: String,
    /// `√(D^k(F) + ⟨t − value⟩) = √D^k(f_value)`.
    pub verdict: Verdict,
    /// The same comparison for the strict spaces.
    pub strict_verdict: Verdict,
}

/// Compares the slice of `D^k(F)` at `t = value` with `D^k(f_value)`.
pub fn check_specialization(u: &Unfolding, k: usize, value: &Q) -> Result<SpecializationReport> {
    check_k(k)?;
    if u.params().len() != 1 {
        return Err(invalid("specialization checks need a one-parameter unfolding"));
    }
    let map = MapData::from_unfolding(u);
    let member = map.specialize(std::slice::from_ref(value))?;
    let mut verdict = Verdict::Holds;
    let mut strict_verdict = Verdict::Holds;
    for t in map.tuples(k) {
        let family = divided_difference_tuple(&map, &t)?;
        let direct = divided_difference_tuple(&member, &t)?;
        let sliced = slice(&family, std::slice::from_ref(value))?;
        verdict = verdict.and(sliced.radical_eq(&direct.ideal.embed(sliced.ring())?)?);

        let family = strict_tuple(&map, &t)?;
        let direct = strict_tuple(&member, &t)?;
        let sliced = slice(&family, std::slice::from_ref(value))?;
        strict_verdict = strict_verdict.and(sliced.radical_eq(&direct.ideal.embed(sliced.ring())?)?);
    }
    Ok(SpecializationReport {
        k,
        value: crate::poly::format_rational(value),
        verdict,
        strict_verdict,
    })
}

/// Source double point locus `D(f)` per branch (for `p = n + 1`).
#[derive(Clone, Debug, Serialize)]
pub struct SourceDoublePoints {
    #[serde(serialize_with = "serialize_ideals")]
    pub branches: Vec<Ideal>,
    pub dims: Vec<DimAtOrigin>,
    pub warnings: Vec<String>,
}

fn serialize_ideals<S: serde::Serializer>(ideals: &[Ideal], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<_> = ideals.iter().map(Ideal::to_json).collect();
    v.serialize(s)
}

/// Projection of `D²(f)` to the first copy, united with the non-immersive
/// locus, on each branch.
pub fn source_double_points(g: &MapGerm) -> Result<SourceDoublePoints> {
    if g.p() != g.n() + 1 {
        return Err(invalid("source double points need p = n + 1"));
    }
    let map = MapData::from_germ(g);
    let mut warnings = Vec::new();
    let use_dd = g.corank() <= 1;
    if !use_dd {
        warnings.push("corank ≥ 2: strict double points used for the projection".to_string());
    }
    let nb = map.branches.len();
    let mut parts: Vec<Vec<Ideal>> = vec![Vec::new(); nb];
    for t in map.tuples(2) {
        let space = if use_dd {
            divided_difference_tuple(&map, &t)?
        } else {
            strict_tuple(&map, &t)?
        };
        let copies = if t[0] == t[1] { vec![0] } else { vec![0, 1] };
        for c in copies {
            let b = t[c];
            let proj = space.ideal.eliminate(&space.blocks[c])?;
            let ring = g.branches()[b].ring();
            let moved = Ideal::new(
                ring,
                proj.generators()
                    .iter()
                    .map(|f| f.reindex(ring, &(0..ring.nvars()).collect::<Vec<_>>()))
                    .collect(),
            )?;
            parts[b].push(moved);
        }
    }
    let mut branches = Vec::new();
    for (b, non_imm) in non_immersive_locus(g)?.into_iter().enumerate() {
        let mut acc = non_imm;
        for part in &parts[b] {
            acc = acc.intersect(part)?;
        }
        if acc.is_zero_ideal() {
            warnings.push(format!(
                "branch {} is not generically one-to-one: D(f) is the whole source",
                b + 1
            ));
        }
        branches.push(acc);
    }
    let dims = branches.iter().map(Ideal::dim_at_origin).collect::<Result<_>>()?;
    Ok(SourceDoublePoints {
        branches,
        dims,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::{bigerm_from_hypersurface, GermFile};

    fn germ(vars: &[&str], comps: &[&str]) -> MapGerm {
        MapGerm::parse(
            &[(
                vars.iter().map(|s| s.to_string()).collect(),
                comps.iter().map(|s| s.to_string()).collect(),
            )],
            None,
        )
        .unwrap()
    }

    fn bigerm(vars: &[&str], g: &str) -> MapGerm {
        let r = Ring::new(vars.iter().copied()).unwrap();
        bigerm_from_hypersurface(&r.parse(g).unwrap()).unwrap()
    }

    fn cusp_family() -> Unfolding {
        GermFile::from_json_str(
            r#"{"n":2,"p":3,"branches":[{"vars":["x","y"],"components":["x","y^2","y^3"]}],
                "params":["t"],"unfolded_components":["x","y^2","y^3 + t*y*(x^2 - t)"]}"#,
        )
        .unwrap()
        .unfolding
        .unwrap()
    }

    #[test]
    fn cuspidal_edge_double_points() {
        let g = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let strict = strict_multiple_points(&g, 2).unwrap();
        assert!(strict[0].dim.is_empty());
        let d2 = gaffney_multiple_points(&g, 2, Route::DividedDifferences, None).unwrap();
        let s = &d2.spaces[0];
        assert_eq!(s.dim.value(), Some(1));
        assert_eq!(s.expected_dim, 1);
        let expected = Ideal::parse(s.ideal.ring(), &["x_2 - x_1", "y_1 + y_2", "y_1^2 + y_1*y_2 + y_2^2"]).unwrap();
        assert!(s.ideal.equals(&expected).unwrap());
        let d3 = gaffney_multiple_points(&g, 3, Route::DividedDifferences, None).unwrap();
        assert!(d3.spaces[0].dim.is_empty());
    }

    #[test]
    fn dimensional_correctness_examples() {
        let edge = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let r = is_dimensionally_correct(&edge, None, Route::DividedDifferences, None).unwrap();
        assert!(r.correct && r.strict_correct);
        let fprime = germ(&["x", "y"], &["x", "y^2", "y^3", "0"]);
        let r = is_dimensionally_correct(&fprime, None, Route::DividedDifferences, None).unwrap();
        assert!(!r.correct);
        assert_eq!((r.entries[0].dim.value(), r.entries[0].expected), (Some(1), 0));
        let triple = germ(&["x", "y"], &["x", "y^3", "y^4"]);
        let r = is_dimensionally_correct(&triple, None, Route::DividedDifferences, None).unwrap();
        assert!(!r.correct);
        assert_eq!(r.entries[1].k, 3);
        assert_eq!(r.entries[1].dim.value(), Some(1));
    }

    #[test]
    fn bigerm_strict_spaces() {
        let b = bigerm(&["x", "y"], "x*y");
        let spaces = strict_multiple_points(&b, 2).unwrap();
        let mixed = spaces.iter().find(|s| s.branch_tuple == vec![1, 2]).unwrap();
        assert_eq!(mixed.dim.value(), Some(1));
        assert_eq!(mixed.expected_dim, 1);
        let tdp = bigerm(&["x", "y"], "x");
        assert!(strict_multiple_points(&tdp, 3)
            .unwrap()
            .iter()
            .all(|s| s.dim.is_empty()));
    }

    #[test]
    fn unfolding_route_and_cross_check() {
        let u = cusp_family();
        let d = gaffney_multiple_points_of_unfolding(&u, 2).unwrap();
        assert_eq!(d[0].dim.value(), Some(2));
        assert_eq!(d[0].expected_dim, 2);
        let g = u.base().clone();
        let res = gaffney_multiple_points(&g, 2, Route::DividedDifferences, Some(&u)).unwrap();
        assert!(res.flags.iter().any(|f| f == STABILITY_ASSERTED));
        assert_eq!(res.routes_agree, Some(Verdict::Holds));
        let via_unfolding = gaffney_multiple_points(&g, 2, Route::Unfolding, Some(&u)).unwrap();
        assert_eq!(via_unfolding.dim().value(), Some(1));
    }

    #[test]
    fn specialization() {
        let u = cusp_family();
        let r = check_specialization(&u, 2, &Q::from_integer(0.into())).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert_eq!(r.strict_verdict, Verdict::Fails);
        let r = check_specialization(&u, 2, &Q::from_integer(1.into())).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }

    #[test]
    fn corank_two_needs_an_unfolding() {
        let g = germ(&["x", "y"], &["x^2", "y^2", "x^3 + y^3 + x*y"]);
        assert!(matches!(
            gaffney_multiple_points(&g, 2, Route::DividedDifferences, None),
            Err(Error::Unsupported(_))
        ));
        assert!(gaffney_multiple_points(&g, 2, Route::Unfolding, None).is_err());
    }

    #[test]
    fn strict_spaces_are_symmetric() {
        let g = germ(&["x", "y"], &["x", "y^3 + x*y", "y^4"]);
        for s in strict_multiple_points(&g, 2).unwrap() {
            for &(a, b) in &s.swaps {
                assert!(s.swapped(a, b).equals(&s.ideal).unwrap());
            }
        }
    }

    #[test]
    fn source_double_point_examples() {
        let b = bigerm(&["x", "y"], "x*y");
        let d = source_double_points(&b).unwrap();
        for (i, ideal) in d.branches.iter().enumerate() {
            let expected = Ideal::parse(ideal.ring(), &[format!("x_{0}*y_{0}", i + 1)]).unwrap();
            assert!(ideal.radical_eq(&expected).unwrap().holds());
        }
        let edge = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let d = source_double_points(&edge).unwrap();
        let y = Ideal::parse(d.branches[0].ring(), &["y"]).unwrap();
        assert!(d.branches[0].radical_eq(&y).unwrap().holds());
        let emb = germ(&["x"], &["x", "0"]);
        assert!(source_double_points(&emb).unwrap().branches[0].is_unit().unwrap());
    }
}
