//! Degree windows outside of which vanishing cohomology is zero, and a
//! one-shot germ analyzer choosing the applicable window.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::germs::{bigerm_source, discriminant, instability_dim_bigerm, is_k_finite, MapGerm, Unfolding};
use crate::multiple_points::{is_dimensionally_correct, DimCorrectnessReport, Route};
use crate::poly::DimAtOrigin;

/// Dimension of the instability locus; `Empty` for stable germs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "InstDimRepr", into = "InstDimRepr")]
pub enum InstDim {
    Empty,
    Dim(u32),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum InstDimRepr {
    Dim(u32),
    Empty(EmptyTag),
}

#[derive(Serialize, Deserialize)]
enum EmptyTag {
    #[serde(rename = "empty")]
    Empty,
}

impl From<InstDimRepr> for InstDim {
    fn from(r: InstDimRepr) -> InstDim {
        match r {
            InstDimRepr::Dim(d) => InstDim::Dim(d),
            InstDimRepr::Empty(_) => InstDim::Empty,
        }
    }
}

impl From<InstDim> for InstDimRepr {
    fn from(d: InstDim) -> InstDimRepr {
        match d {
            InstDim::Dim(d) => InstDimRepr::Dim(d),
            InstDim::Empty => InstDimRepr::Empty(EmptyTag::Empty),
        }
    }
}

impl From<DimAtOrigin> for InstDim {
    fn from(d: DimAtOrigin) -> InstDim {
        match d.value() {
            None => InstDim::Empty,
            Some(v) => InstDim::Dim(v as u32),
        }
    }
}

impl fmt::Display for InstDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstDim::Empty => write!(f, "empty"),
            InstDim::Dim(d) => write!(f, "{d}"),
        }
    }
}

impl FromStr for InstDim {
    type Err = Error;
    fn from_str(s: &str) -> Result<InstDim> {
        match s {
            "empty" => Ok(InstDim::Empty),
            _ => s
                .parse()
                .map(InstDim::Dim)
                .map_err(|_| Error::Parse(format!("`{s}` is neither a dimension nor `empty`"))),
        }
    }
}

/// Which vanishing theorem a window comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Discriminant of a germ with `p ≤ n`.
    #[serde(rename = "KMB")]
    Discriminant,
    /// Image of a germ with `p = n + 1`.
    #[serde(rename = "KMA")]
    Image,
    /// Source double points of a germ with `p = n + 1`.
    #[serde(rename = "KMDP")]
    DoublePoints,
    /// Image of a dimensionally correct germ with `p > n + 1`.
    #[serde(rename = "KM")]
    HigherCodimension,
    /// The same with negative first-page degrees removed.
    #[serde(rename = "KM_refined")]
    HigherCodimensionRefined,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Theorem::Discriminant => "KMB",
            Theorem::Image => "KMA",
            Theorem::DoublePoints => "KMDP",
            Theorem::HigherCodimension => "KM",
            Theorem::HigherCodimensionRefined => "KM_refined",
        };
        f.write_str(tag)
    }
}

/// Degrees where reduced cohomology may be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub theorem: Theorem,
    pub degrees: BTreeSet<u32>,
    pub n: usize,
    pub p: Option<usize>,
    pub d: InstDim,
}

impl DegreeWindow {
    pub fn contains(&self, q: u32) -> bool {
        self.degrees.contains(&q)
    }

    pub fn is_subset(&self, other: &DegreeWindow) -> bool {
        self.degrees.is_subset(&other.degrees)
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "{} {{{}}}", self.theorem, items.join(", "))
    }
}

fn interval(lo: i64, hi: i64) -> BTreeSet<u32> {
    (lo.max(0)..=hi).map(|q| q as u32).collect()
}

fn top_down(top: usize, d: InstDim) -> BTreeSet<u32> {
    match d {
        InstDim::Empty => BTreeSet::new(),
        InstDim::Dim(d) => interval(top as i64 - d as i64, top as i64),
    }
}

/// `[max(0, p−1−d), p−1]` for the discriminant, `p ≤ n`.
pub fn window_discriminant(n: usize, p: usize, d: InstDim) -> Result<DegreeWindow> {
    if p > n {
        return Err(invalid(format!("discriminant window needs p ≤ n (n = {n}, p = {p})")));
    }
    if p == 0 {
        return Err(invalid("p must be positive"));
    }
    Ok(DegreeWindow {
        theorem: Theorem::Discriminant,
        degrees: top_down(p - 1, d),
        n,
        p: Some(p),
        d,
    })
}

/// `[max(0, n−d), n]` for the image.
pub fn window_image(n: usize, d: InstDim) -> DegreeWindow {
    DegreeWindow {
        theorem: Theorem::Image,
        degrees: top_down(n, d),
        n,
        p: None,
        d,
    }
}

/// `[max(0, n−1−d), n−1]` for the source double points.
pub fn window_double_points(n: usize, d: InstDim) -> Result<DegreeWindow> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    Ok(DegreeWindow {
        theorem: Theorem::DoublePoints,
        degrees: top_down(n - 1, d),
        n,
        p: None,
        d,
    })
}

/// Top degree `kn − (k−1)(p−1)` of the `k`-th block of the higher-codimension window.
pub fn km_top_degree(n: usize, p: usize, k: usize) -> i64 {
    (k * n) as i64 - (k as i64 - 1) * (p as i64 - 1)
}

/// `{kn − (k−1)(p−1) − s : 2 ≤ k ≤ ⌊p/(p−n)⌋, 0 ≤ s ≤ d}` for `p > n + 1`;
/// the refined window keeps only degrees `≥ k − 1` in each `k`-block.
pub fn window_km(n: usize, p: usize, d: InstDim, refined: bool) -> Result<DegreeWindow> {
    if p <= n + 1 {
        return Err(invalid(format!(
            "the higher-codimension window needs p > n + 1 (n = {n}, p = {p}); use the image window"
        )));
    }
    let mut degrees = BTreeSet::new();
    if let InstDim::Dim(d) = d {
        for k in 2..=p / (p - n) {
            let top = km_top_degree(n, p, k);
            let k = k as i64;
            for s in 0..=d as i64 {
                let q = top - s;
                let floor = if refined { k - 1 } else { 0 };
                if q >= floor {
                    degrees.insert(q as u32);
                }
            }
        }
    }
    Ok(DegreeWindow {
        theorem: if refined {
            Theorem::HigherCodimensionRefined
        } else {
            Theorem::HigherCodimension
        },
        degrees,
        n,
        p: Some(p),
        d,
    })
}

/// How `d` is supplied to [`analyze`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DSpec {
    Given(InstDim),
    /// `dim Sing V(g)` for bi-germs built from a hypersurface `g`.
    AutoBigerm,
}

impl FromStr for DSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<DSpec> {
        match s {
            "auto-bigerm" | "bigerm-auto" => Ok(DSpec::AutoBigerm),
            _ => s.parse().map(DSpec::Given),
        }
    }
}

/// One candidate theorem and its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct WindowResult {
    pub theorem: Theorem,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<DegreeWindow>,
}

impl WindowResult {
    fn ok(w: DegreeWindow) -> WindowResult {
        WindowResult {
            theorem: w.theorem,
            applicable: true,
            reason: None,
            window: Some(w),
        }
    }

    fn refused(theorem: Theorem, reason: impl Into<String>) -> WindowResult {
        WindowResult {
            theorem,
            applicable: false,
            reason: Some(reason.into()),
            window: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub n: usize,
    pub p: usize,
    pub branches: usize,
    pub corank: usize,
    pub k_finite: bool,
    pub d: InstDim,
    pub d_source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant_dim: Option<DimAtOrigin>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensional_correctness: Option<DimCorrectnessReport>,
    pub windows: Vec<WindowResult>,
    pub flags: Vec<String>,
}

impl Analysis {
    pub fn window(&self, theorem: Theorem) -> Option<&DegreeWindow> {
        self.windows
            .iter()
            .find(|w| w.theorem == theorem)
            .and_then(|w| w.window.as_ref())
    }
}

pub const NOT_DIMENSIONALLY_CORRECT: &str = "KM inapplicable: not dimensionally correct";

/// K-finiteness, corank, multiple point dimensions and every applicable window.
pub fn analyze(g: &MapGerm, d: DSpec, k_max: Option<usize>, unfolding: Option<&Unfolding>) -> Result<Analysis> {
    let (n, p) = (g.n(), g.p());
    let mut flags = Vec::new();
    let (d, d_source) = match d {
        DSpec::Given(d) => {
            flags.push("instability dimension d supplied by the user, not verified".to_string());
            (d, "user".to_string())
        }
        DSpec::AutoBigerm => {
            bigerm_source(g)?;
            (instability_dim_bigerm(g)?.into(), "bigerm".to_string())
        }
    };
    let k_finite = is_k_finite(g)?;
    if !k_finite {
        flags.push("germ is not K-finite; the windows assume a finite germ".to_string());
    }
    let discriminant_dim = if p <= n {
        Some(discriminant(g)?.dim_at_origin)
    } else {
        None
    };
    let corank = g.corank();
    let dimensional_correctness = if p > n {
        let route = if corank <= 1 {
            Some(Route::DividedDifferences)
        } else if unfolding.is_some() {
            Some(Route::Unfolding)
        } else {
            flags.push("corank ≥ 2 without an unfolding: multiple point spaces not computed".to_string());
            None
        };
        match route {
            Some(route) => {
                let r = is_dimensionally_correct(g, k_max, route, unfolding)?;
                flags.extend(r.flags.iter().cloned());
                Some(r)
            }
            None => None,
        }
    } else {
        None
    };
    let mut windows = Vec::new();
    if p <= n {
        windows.push(WindowResult::ok(window_discriminant(n, p, d)?));
    } else if p == n + 1 {
        windows.push(WindowResult::ok(window_image(n, d)));
        windows.push(WindowResult::ok(window_double_points(n, d)?));
    } else {
        match &dimensional_correctness {
            Some(r) if r.correct => {
                windows.push(WindowResult::ok(window_km(n, p, d, false)?));
                windows.push(WindowResult::ok(window_km(n, p, d, true)?));
                if g.branches().len() > 1 {
                    flags.push(
                        "multigerm: the monogerm window is reported; symmetric-group \
                         representations may change its shape"
                            .to_string(),
                    );
                }
            }
            Some(_) => {
                for t in [Theorem::HigherCodimension, Theorem::HigherCodimensionRefined] {
                    windows.push(WindowResult::refused(t, NOT_DIMENSIONALLY_CORRECT));
                }
            }
            None => {
                for t in [Theorem::HigherCodimension, Theorem::HigherCodimensionRefined] {
                    windows.push(WindowResult::refused(
                        t,
                        "KM inapplicable: dimensional correctness unknown",
                    ));
                }
            }
        }
    }
    Ok(Analysis {
        n,
        p,
        branches: g.branches().len(),
        corank,
        k_finite,
        d,
        d_source,
        discriminant_dim,
        dimensional_correctness,
        windows,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::bigerm_from_hypersurface;
    use crate::poly::Ring;

    fn set(v: &[u32]) -> BTreeSet<u32> {
        v.iter().copied().collect()
    }

    #[test]
    fn discriminant_windows() {
        assert_eq!(window_discriminant(4, 4, InstDim::Dim(0)).unwrap().degrees, set(&[3]));
        assert_eq!(
            window_discriminant(3, 2, InstDim::Dim(1)).unwrap().degrees,
            set(&[0, 1])
        );
        assert!(window_discriminant(2, 2, InstDim::Empty).unwrap().degrees.is_empty());
        assert!(window_discriminant(2, 3, InstDim::Dim(0)).is_err());
    }

    #[test]
    fn image_and_double_point_windows() {
        assert_eq!(window_image(2, InstDim::Dim(0)).degrees, set(&[2]));
        assert_eq!(window_image(2, InstDim::Dim(1)).degrees, set(&[1, 2]));
        assert!(window_image(2, InstDim::Empty).degrees.is_empty());
        assert_eq!(window_double_points(2, InstDim::Dim(0)).unwrap().degrees, set(&[1]));
        assert_eq!(window_double_points(2, InstDim::Dim(1)).unwrap().degrees, set(&[0, 1]));
        assert!(!window_double_points(5, InstDim::Dim(3)).unwrap().contains(0));
    }

    #[test]
    fn higher_codimension_windows() {
        let refined = window_km(16, 21, InstDim::Dim(2), true).unwrap();
        assert_eq!(refined.degrees, set(&[3, 4, 6, 7, 8, 10, 11, 12]));
        let plain = window_km(16, 21, InstDim::Dim(2), false).unwrap();
        assert_eq!(plain.degrees, set(&[2, 3, 4, 6, 7, 8, 10, 11, 12]));
        assert_eq!(window_km(2, 4, InstDim::Dim(0), true).unwrap().degrees, set(&[1]));
        assert!(window_km(2, 3, InstDim::Dim(0), true).is_err());
    }

    #[test]
    fn inst_dim_serde() {
        assert_eq!(serde_json::to_string(&InstDim::Empty).unwrap(), "\"empty\"");
        assert_eq!(serde_json::to_string(&InstDim::Dim(2)).unwrap(), "2");
        assert_eq!(serde_json::from_str::<InstDim>("3").unwrap(), InstDim::Dim(3));
        assert_eq!(serde_json::from_str::<InstDim>("\"empty\"").unwrap(), InstDim::Empty);
        assert_eq!(
            serde_json::to_string(&Theorem::HigherCodimensionRefined).unwrap(),
            "\"KM_refined\""
        );
    }

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

    #[test]
    fn analyze_examples() {
        let edge = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let a = analyze(&edge, DSpec::Given(InstDim::Dim(1)), None, None).unwrap();
        assert_eq!(a.window(Theorem::Image).unwrap().degrees, set(&[1, 2]));

        let fprime = germ(&["x", "y"], &["x", "y^2", "y^3", "0"]);
        let a = analyze(&fprime, DSpec::Given(InstDim::Dim(1)), None, None).unwrap();
        let km = a
            .windows
            .iter()
            .find(|w| w.theorem == Theorem::HigherCodimension)
            .unwrap();
        assert!(!km.applicable);
        assert_eq!(km.reason.as_deref(), Some(NOT_DIMENSIONALLY_CORRECT));

        let r = Ring::new(["x", "y"]).unwrap();
        let b = bigerm_from_hypersurface(&r.parse("x*y").unwrap()).unwrap();
        let a = analyze(&b, DSpec::AutoBigerm, None, None).unwrap();
        assert_eq!(a.d, InstDim::Dim(0));
        assert_eq!(a.window(Theorem::Image).unwrap().degrees, set(&[2]));
    }
}
