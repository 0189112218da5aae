//! Map germs, unfoldings and their critical loci, discriminants and images.

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::poly::{minors, DimAtOrigin, Ideal, IdealJson, Polynomial, Ring, Q};

/// One branch of a multi-germ: source variables and `p` components.
#[derive(Clone, Debug)]
pub struct Branch {
    ring: Ring,
    components: Vec<Polynomial>,
}

impl Branch {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Jacobian matrix `∂f_a/∂x_i`, one row per component.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.components
            .iter()
            .map(|f| (0..self.ring.nvars()).map(|i| f.derivative(i)).collect())
            .collect()
    }

    /// Rank of the differential at the origin.
    pub fn rank_at_origin(&self) -> usize {
        let rows: Vec<Vec<Q>> = self
            .jacobian()
            .iter()
            .map(|row| row.iter().map(Polynomial::constant_term).collect())
            .collect();
        Matrix::from_rows(rows).map_or(0, |m| m.rank())
    }
}

/// A polynomial multi-germ `(Cⁿ, S) → (Cᵖ, 0)`.
#[derive(Clone, Debug)]
pub struct MapGerm {
    n: usize,
    p: usize,
    branches: Vec<Branch>,
    target: Ring,
}

/// Default names for target coordinates.
pub fn default_target_vars(p: usize) -> Vec<String> {
    if p <= 4 {
        ["X", "Y", "Z", "W"][..p].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=p).map(|i| format!("Y{i}")).collect()
    }
}

impl MapGerm {
    /// Builds a germ from per-branch variable names and component strings.
    pub fn parse(branches: &[(Vec<String>, Vec<String>)], target_vars: Option<Vec<String>>) -> Result<MapGerm> {
        let parsed = branches
            .iter()
            .map(|(vars, comps)| {
                let ring = Ring::new(vars.iter().cloned())?;
                let components = ring.parse_all(comps)?;
                Ok(Branch { ring, components })
            })
            .collect::<Result<Vec<_>>>()?;
        MapGerm::new(parsed, target_vars)
    }

    pub fn from_polys(branches: Vec<(Ring, Vec<Polynomial>)>, target_vars: Option<Vec<String>>) -> Result<MapGerm> {
        MapGerm::new(
            branches
                .into_iter()
                .map(|(ring, components)| Branch { ring, components })
                .collect(),
            target_vars,
        )
    }

    fn new(branches: Vec<Branch>, target_vars: Option<Vec<String>>) -> Result<MapGerm> {
        let first = branches
            .first()
            .ok_or_else(|| invalid("a germ needs at least one branch"))?;
        let (n, p) = (first.ring.nvars(), first.components.len());
        if p == 0 {
            return Err(invalid("a germ needs at least one component"));
        }
        let mut seen: Vec<&String> = Vec::new();
        for (b, br) in branches.iter().enumerate() {
            if br.ring.nvars() != n || br.components.len() != p {
                return Err(invalid(format!(
                    "branch {} has {} variables and {} components, expected {n} and {p}",
                    b + 1,
                    br.ring.nvars(),
                    br.components.len()
                )));
            }
            if let Some(c) = br.components.iter().find(|c| !c.constant_term().is_zero()) {
                return Err(invalid(format!(
                    "component `{c}` of branch {} does not vanish at the origin",
                    b + 1
                )));
            }
            for v in br.ring.vars() {
                if seen.contains(&v) {
                    return Err(invalid(format!("variable `{v}` is shared between branches")));
                }
                seen.push(v);
            }
        }
        let target_vars = target_vars.unwrap_or_else(|| default_target_vars(p));
        if target_vars.len() != p {
            return Err(invalid(format!(
                "{} target variables given for p = {p}",
                target_vars.len()
            )));
        }
        if let Some(v) = target_vars.iter().find(|v| seen.contains(v)) {
            return Err(invalid(format!(
                "target variable `{v}` clashes with a source variable; set target_vars"
            )));
        }
        Ok(MapGerm {
            n,
            p,
            branches,
            target: Ring::new(target_vars)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// `n` minus the rank of the differential at 0, maximized over branches.
    pub fn corank(&self) -> usize {
        self.branches
            .iter()
            .map(|b| self.n - b.rank_at_origin())
            .max()
            .unwrap_or(0)
    }

    /// Graph ideal `⟨Y_a − f_a⟩` of a branch in source ⊔ target variables.
    fn graph_ideal(&self, b: usize) -> Result<Ideal> {
        let br = &self.branches[b];
        let ring = br.ring.extend(self.target.vars())?;
        let gens = br
            .components
            .iter()
            .enumerate()
            .map(|(a, f)| Ok(&ring.gen(self.n + a) - &f.embed(&ring)?))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Ideal of `f(V(extra_b))` summed over branches (union of images).
    fn push_forward(&self, extra: &[Ideal]) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for (b, e) in extra.iter().enumerate() {
            let graph = self.graph_ideal(b)?;
            let full = graph.sum(&e.embed(graph.ring())?)?;
            let img = full.eliminate(self.target.vars())?;
            let img = Ideal::new(&self.target, img.generators().to_vec())?;
            acc = Some(match acc {
                None => img,
                Some(a) => a.intersect(&img)?,
            });
        }
        Ok(acc.expect("at least one branch"))
    }

    pub fn to_json(&self) -> GermJson {
        GermJson {
            n: self.n,
            p: self.p,
            branches: self
                .branches
                .iter()
                .map(|b| BranchJson {
                    vars: b.ring.vars().to_vec(),
                    components: b.components.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
            params: Vec::new(),
            unfolded_components: None,
            target_vars: (self.target.vars() != default_target_vars(self.p).as_slice())
                .then(|| self.target.vars().to_vec()),
        }
    }
}

/// A parametrized family `F(x, t) = (f_t(x), t)` with `f_0 = f`.
#[derive(Clone, Debug)]
pub struct Unfolding {
    base: MapGerm,
    params: Vec<String>,
    /// Per branch, components in the ring of branch variables plus parameters.
    components: Vec<Vec<Polynomial>>,
}

impl Unfolding {
    pub fn new(base: MapGerm, params: Vec<String>, components: Vec<Vec<Polynomial>>) -> Result<Unfolding> {
        if params.is_empty() {
            return Err(invalid("an unfolding needs at least one parameter"));
        }
        if components.len() != base.branches.len() {
            return Err(invalid("unfolded components must be given for every branch"));
        }
        for (b, (br, comps)) in base.branches.iter().zip(&components).enumerate() {
            let ring = br.ring.extend(&params)?;
            if comps.len() != base.p {
                return Err(invalid(format!(
                    "branch {} has {} unfolded components, expected {}",
                    b + 1,
                    comps.len(),
                    base.p
                )));
            }
            for (c, f) in comps.iter().zip(&br.components) {
                if c.ring() != &ring {
                    return Err(invalid("unfolded component in the wrong ring"));
                }
                let zeroed = c.evaluate_vars(
                    &(base.n..base.n + params.len())
                        .map(|i| (i, Q::from_integer(0.into())))
                        .collect::<Vec<_>>(),
                );
                if zeroed != f.embed(&ring)? {
                    return Err(invalid(format!(
                        "setting the parameters to 0 in `{c}` does not give `{f}`"
                    )));
                }
            }
        }
        if let Some(t) = params.iter().find(|t| base.target.index_of(t).is_some()) {
            return Err(invalid(format!("parameter `{t}` clashes with a target variable")));
        }
        Ok(Unfolding {
            base,
            params,
            components,
        })
    }

    pub fn parse(base: MapGerm, params: Vec<String>, components: &[Vec<String>]) -> Result<Unfolding> {
        let comps = base
            .branches
            .iter()
            .zip(components)
            .map(|(br, cs)| br.ring.extend(&params)?.parse_all(cs))
            .collect::<Result<Vec<_>>>()?;
        if components.len() != base.branches.len() {
            return Err(invalid("unfolded components must be given for every branch"));
        }
        Unfolding::new(base, params, comps)
    }

    pub fn base(&self) -> &MapGerm {
        &self.base
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn components(&self) -> &[Vec<Polynomial>] {
        &self.components
    }

    /// The unfolding as a germ `(x, t) ↦ (f_t(x), t)`.
    pub fn as_germ(&self) -> Result<MapGerm> {
        let mut targets = self.base.target.vars().to_vec();
        for t in &self.params {
            targets.push(format!("{t}_target"));
        }
        let branches = self
            .base
            .branches
            .iter()
            .zip(&self.components)
            .enumerate()
            .map(|(b, (br, comps))| {
                // parameters get per-branch names so branch sources stay disjoint
                let names: Vec<String> = br
                    .ring
                    .vars()
                    .iter()
                    .cloned()
                    .chain(self.params.iter().map(|t| {
                        if self.base.branches.len() == 1 {
                            t.clone()
                        } else {
                            format!("{t}_{}", b + 1)
                        }
                    }))
                    .collect();
                let ring = Ring::new(names)?;
                let mut cs: Vec<Polynomial> = comps
                    .iter()
                    .map(|c| c.reindex(&ring, &(0..ring.nvars()).collect::<Vec<_>>()))
                    .collect();
                for j in 0..self.params.len() {
                    cs.push(ring.gen(self.base.n + j));
                }
                Ok((ring, cs))
            })
            .collect::<Result<Vec<_>>>()?;
        MapGerm::from_polys(branches, Some(targets))
    }

    pub fn to_json(&self) -> GermJson {
        let mut j = self.base.to_json();
        j.params = self.params.clone();
        let comps: Vec<Vec<String>> = self
            .components
            .iter()
            .map(|cs| cs.iter().map(|c| c.to_string()).collect())
            .collect();
        j.unfolded_components = Some(if comps.len() == 1 {
            UnfoldedJson::Single(comps.into_iter().next().unwrap())
        } else {
            UnfoldedJson::PerBranch(comps)
        });
        j
    }
}

/// Germ file: `{ "n", "p", "branches": [{ "vars", "components" }], "params"?,
/// "unfolded_components"?, "target_vars"? }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermJson {
    pub n: usize,
    pub p: usize,
    pub branches: Vec<BranchJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unfolded_components: Option<UnfoldedJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_vars: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchJson {
    pub vars: Vec<String>,
    pub components: Vec<String>,
}

/// Unfolded components: a flat list for mono-germs or one list per branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnfoldedJson {
    Single(Vec<String>),
    PerBranch(Vec<Vec<String>>),
}

/// A parsed germ file.
#[derive(Clone, Debug)]
pub struct GermFile {
    pub germ: MapGerm,
    pub unfolding: Option<Unfolding>,
}

impl GermJson {
    pub fn build(&self) -> Result<GermFile> {
        let germ = MapGerm::parse(
            &self
                .branches
                .iter()
                .map(|b| (b.vars.clone(), b.components.clone()))
                .collect::<Vec<_>>(),
            self.target_vars.clone(),
        )?;
        if germ.n != self.n || germ.p != self.p {
            return Err(invalid(format!(
                "declared (n, p) = ({}, {}) but branches give ({}, {})",
                self.n, self.p, germ.n, germ.p
            )));
        }
        let unfolding = match (&self.unfolded_components, self.params.is_empty()) {
            (None, true) => None,
            (None, false) => return Err(invalid("params given without unfolded_components")),
            (Some(_), true) => return Err(invalid("unfolded_components given without params")),
            (Some(u), false) => {
                let comps = match u {
                    UnfoldedJson::Single(c) => vec![c.clone()],
                    UnfoldedJson::PerBranch(c) => c.clone(),
                };
                Some(Unfolding::parse(germ.clone(), self.params.clone(), &comps)?)
            }
        };
        Ok(GermFile { germ, unfolding })
    }
}

impl GermFile {
    pub fn from_json_str(text: &str) -> Result<GermFile> {
        let j: GermJson = serde_json::from_str(text)?;
        j.build()
    }
}

pub(crate) fn serialize_ideal<S: Serializer>(ideal: &Ideal, s: S) -> std::result::Result<S::Ok, S::Error> {
    ideal.to_json().serialize(s)
}

/// A locus in the target (image or discriminant) with its checks.
#[derive(Clone, Debug, Serialize)]
pub struct LocusReport {
    #[serde(serialize_with = "serialize_ideal")]
    pub ideal: Ideal,
    pub dim_at_origin: DimAtOrigin,
    pub k_finite: bool,
    /// Whether the dimension is `p − 1`; only meaningful when `p ≤ n + 1`.
    pub dim_delta_expected: Option<bool>,
    pub warnings: Vec<String>,
}

impl LocusReport {
    pub fn ideal_json(&self) -> IdealJson {
        self.ideal.to_json()
    }
}

/// Critical locus of each branch: `p × p` minors of the Jacobian, or the
/// zero ideal when `p > n`.
pub fn critical_locus(g: &MapGerm) -> Result<Vec<Ideal>> {
    g.branches
        .iter()
        .map(|b| {
            if g.p > g.n {
                Ok(Ideal::zero(&b.ring))
            } else {
                Ideal::new(&b.ring, minors(&b.ring, &b.jacobian(), g.p))
            }
        })
        .collect()
}

/// Non-immersive locus of each branch: `n × n` minors of the Jacobian.
pub fn non_immersive_locus(g: &MapGerm) -> Result<Vec<Ideal>> {
    g.branches
        .iter()
        .map(|b| {
            if g.p < g.n {
                Ok(Ideal::zero(&b.ring))
            } else {
                Ideal::new(&b.ring, minors(&b.ring, &b.jacobian(), g.n))
            }
        })
        .collect()
}

/// Image of the germ: union of branch images, by elimination.
pub fn image(g: &MapGerm) -> Result<Ideal> {
    let zero: Vec<Ideal> = g.branches.iter().map(|b| Ideal::zero(&b.ring)).collect();
    g.push_forward(&zero)
}

/// Whether `f` restricted to its critical locus is finite over 0.
pub fn is_k_finite(g: &MapGerm) -> Result<bool> {
    for (b, crit) in g.branches.iter().zip(critical_locus(g)?) {
        let fiber = crit.add_generators(b.components.clone())?;
        match fiber.dim_at_origin()?.value() {
            None | Some(0) => {}
            Some(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// Discriminant `f(Σ(f))`, with dimension and expected-dimension flags.
pub fn discriminant(g: &MapGerm) -> Result<LocusReport> {
    let k_finite = is_k_finite(g)?;
    let ideal = g.push_forward(&critical_locus(g)?)?;
    let dim = ideal.dim_at_origin()?;
    let mut warnings = Vec::new();
    if !k_finite {
        warnings.push("germ is not K-finite; the discriminant may be degenerate".to_string());
    }
    let dim_delta_expected = (g.p <= g.n + 1).then(|| dim.value() == Some(g.p - 1));
    Ok(LocusReport {
        ideal,
        dim_at_origin: dim,
        k_finite,
        dim_delta_expected,
        warnings,
    })
}

/// The bi-germ `x ↦ (x, g(x))` on one branch and `x ↦ (x, 0)` on the other.
///
/// Branch variables are the variables of `g` with suffixes `_1` and `_2`.
pub fn bigerm_from_hypersurface(g: &Polynomial) -> Result<MapGerm> {
    if g.is_zero() {
        return Err(invalid("g = 0 makes the two branches coincide"));
    }
    if !g.constant_term().is_zero() {
        return Err(invalid(format!("g = {g} does not vanish at the origin")));
    }
    let ring = g.ring();
    let n = ring.nvars();
    let branch = |suffix: usize, last: Option<&Polynomial>| -> Result<(Ring, Vec<Polynomial>)> {
        let r = Ring::new(ring.vars().iter().map(|v| format!("{v}_{suffix}")))?;
        let mut comps: Vec<Polynomial> = (0..n).map(|i| r.gen(i)).collect();
        comps.push(match last {
            Some(g) => g.reindex(&r, &(0..n).collect::<Vec<_>>()),
            None => Polynomial::zero(&r),
        });
        Ok((r, comps))
    };
    let targets = default_target_vars(n + 1);
    let clash = ring
        .vars()
        .iter()
        .any(|v| targets.contains(&format!("{v}_1")) || targets.contains(&format!("{v}_2")));
    MapGerm::from_polys(
        vec![branch(1, Some(g))?, branch(2, None)?],
        clash.then(|| (1..=n + 1).map(|i| format!("T{i}")).collect()),
    )
}

/// Recovers `g` from a bi-germ in the standard paired form.
pub fn bigerm_source(b: &MapGerm) -> Result<Polynomial> {
    let reject = || invalid("not a bi-germ of the form (x, g(x)) ⊔ (x, 0)");
    if b.branches.len() != 2 || b.p != b.n + 1 {
        return Err(reject());
    }
    let n = b.n;
    for br in &b.branches {
        for i in 0..n {
            if br.components[i] != br.ring.gen(i) {
                return Err(reject());
            }
        }
    }
    if !b.branches[1].components[n].is_zero() || b.branches[0].components[n].is_zero() {
        return Err(reject());
    }
    let names: Vec<String> = b.branches[0]
        .ring
        .vars()
        .iter()
        .map(|v| v.strip_suffix("_1").unwrap_or(v).to_string())
        .collect();
    let ring = Ring::new(names).or_else(|_| Ok::<_, Error>(b.branches[0].ring.clone()))?;
    Ok(b.branches[0].components[n].reindex(&ring, &(0..n).collect::<Vec<_>>()))
}

/// One-parameter stabilization: the second branch becomes `(x, t)`.
pub fn bigerm_stabilization(b: &MapGerm) -> Result<Unfolding> {
    bigerm_source(b)?;
    let t = {
        let mut all: Vec<String> = b
            .branches
            .iter()
            .flat_map(|br| br.ring.vars().iter().cloned())
            .chain(b.target.vars().iter().cloned())
            .collect();
        all.sort();
        Ring::new(all)?.fresh_name("t")
    };
    let params = vec![t];
    let comps = b
        .branches
        .iter()
        .enumerate()
        .map(|(i, br)| {
            let ring = br.ring.extend(&params)?;
            let mut cs: Vec<Polynomial> = br.components.iter().map(|c| c.embed(&ring)).collect::<Result<_>>()?;
            if i == 1 {
                cs[b.n] = ring.gen(b.n);
            }
            Ok(cs)
        })
        .collect::<Result<Vec<_>>>()?;
    Unfolding::new(b.clone(), params, comps)
}

/// Dimension of `Sing V(g) = V(g, ∂g)`, the instability locus of the bi-germ.
pub fn instability_dim_bigerm(b: &MapGerm) -> Result<DimAtOrigin> {
    let g = bigerm_source(b)?;
    let ring = g.ring().clone();
    let mut gens = vec![g.clone()];
    gens.extend((0..ring.nvars()).map(|i| g.derivative(i)));
    Ideal::new(&ring, gens)?.dim_at_origin()
}

/// Milnor number `dim Q[x]/⟨∂g⟩`, if finite.
pub fn milnor_number(g: &Polynomial) -> Result<Option<usize>> {
    let ring = g.ring();
    let jac = Ideal::new(ring, (0..ring.nvars()).map(|i| g.derivative(i)).collect())?;
    Ok(match jac.vspace_dim()? {
        crate::poly::VspaceDim::Finite(m) => Some(m),
        crate::poly::VspaceDim::Infinite => None,
    })
}
