//! Bounds on Jordan blocks of the monodromy of a disentanglement.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Degree that may carry vanishing cohomology when the instability is
/// isolated, with the bound on its Jordan blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatedBound {
    pub k: u64,
    pub degree: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyBounds {
    pub n: u64,
    pub p: u64,
    pub ell: u64,
    /// `ℓ(ℓ+1)/2`.
    pub general_bound: u64,
    /// Present when isolated instability was asserted and `p > n + 1`.
    pub isolated: Option<Vec<IsolatedBound>>,
    /// Whether `ℓ` is among the isolated degrees, when those apply.
    pub ell_is_isolated_degree: Option<bool>,
    pub flags: Vec<String>,
}

pub fn monodromy_bounds(n: u64, p: u64, ell: u64, isolated_instability: bool) -> Result<MonodromyBounds> {
    if p <= n {
        return Err(invalid(format!("monodromy bounds need p > n, got n = {n}, p = {p}")));
    }
    let mut flags = vec!["stable unfolding and corank one asserted, not verified".to_string()];
    let isolated = if isolated_instability && p > n + 1 {
        let k_top = p / (p - n);
        Some(
            (2..=k_top)
                .map(|k| IsolatedBound {
                    k,
                    degree: k * n - (k - 1) * (p - 1),
                    bound: k * n - (k - 1) * p + 1,
                })
                .collect::<Vec<_>>(),
        )
    } else {
        if isolated_instability {
            flags.push("isolated-instability bounds need p > n + 1".to_string());
        }
        None
    };
    let ell_is_isolated_degree = isolated.as_ref().map(|bs| bs.iter().any(|b| b.degree == ell));
    Ok(MonodromyBounds {
        n,
        p,
        ell,
        general_bound: ell * (ell + 1) / 2,
        isolated,
        ell_is_isolated_degree,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_bound() {
        assert_eq!(monodromy_bounds(2, 3, 2, false).unwrap().general_bound, 3);
        assert!(monodromy_bounds(3, 3, 1, false).is_err());
    }

    #[test]
    fn isolated_degrees() {
        let b = monodromy_bounds(2, 4, 1, true).unwrap();
        assert_eq!(
            b.isolated.unwrap(),
            vec![IsolatedBound {
                k: 2,
                degree: 1,
                bound: 1
            }]
        );
        assert_eq!(b.ell_is_isolated_degree, Some(true));
        let b = monodromy_bounds(16, 21, 5, true).unwrap();
        let got: Vec<(u64, u64)> = b.isolated.unwrap().iter().map(|x| (x.degree, x.bound)).collect();
        assert_eq!(got, vec![(12, 12), (8, 7), (4, 2)]);
        assert_eq!(b.ell_is_isolated_degree, Some(false));
        assert!(monodromy_bounds(2, 3, 1, true).unwrap().isolated.is_none());
    }
}
