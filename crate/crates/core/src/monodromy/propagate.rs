//! Monodromy carried through the image computing spectral sequence.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{jordan_data, Eigenvalue, JordanModule};
use crate::error::Result;
use crate::icss::{run_icss, IcssModel};

/// Jordan data of the monodromy induced on one `E_∞` entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryJordan {
    pub i: i64,
    pub j: usize,
    pub jordan: JordanModule,
}

/// What the `E_∞` page says about the monodromy on `H^ℓ` of the image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMonodromy {
    pub degree: i64,
    pub dim: usize,
    pub entries: Vec<EntryJordan>,
    /// Contains the support of the monodromy on `H^ℓ`.
    pub supp: BTreeSet<Eigenvalue>,
    /// Upper bound for the largest Jordan block on `H^ℓ`.
    pub j_bound: usize,
    /// Set when a single entry contributes, so its Jordan data is that of `H^ℓ`.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanModule>,
}

pub fn propagate_icss_monodromy(model: &IcssModel) -> Result<Vec<DegreeMonodromy>> {
    for col in model.columns.values() {
        for i in 0..col.fiber.len() as i64 {
            jordan_data(&col.monodromy(i))?;
        }
    }
    let ss = run_icss(model)?;
    let mut by_degree: BTreeMap<i64, Vec<EntryJordan>> = BTreeMap::new();
    for e in &ss.e_infinity_monodromy {
        by_degree.entry(e.i + e.j as i64).or_default().push(EntryJordan {
            i: e.i,
            j: e.j,
            jordan: jordan_data(&e.matrix)?,
        });
    }
    Ok(by_degree
        .into_iter()
        .map(|(degree, entries)| {
            let supp = entries.iter().flat_map(|e| e.jordan.supp()).collect();
            let j_bound = entries.iter().map(|e| e.jordan.max_jordan()).sum();
            let exact = entries.len() == 1;
            DegreeMonodromy {
                degree,
                dim: entries.iter().map(|e| e.jordan.dim()).sum(),
                jordan: exact.then(|| entries[0].jordan.clone()),
                supp,
                j_bound,
                exact,
                entries,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::icss::{a_mu_betti, bigerm_model, two_column_synthetic};
    use crate::linalg::Matrix;
    use crate::monodromy::JordanBlock;

    #[test]
    fn xy_bigerm_is_exact() {
        let h = vec![Matrix::identity(1), Matrix::identity(1)];
        let m = bigerm_model(&a_mu_betti(2, 1), Some(&h)).unwrap();
        let out = propagate_icss_monodromy(&m).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].degree, 2);
        assert!(out[0].exact);
        assert_eq!(
            out[0].jordan.as_ref().unwrap().blocks(),
            &[JordanBlock {
                order: 1,
                exponent: 0,
                size: 1
            }]
        );
    }

    #[test]
    fn cusp_monodromy_reaches_the_image() {
        // A_2 in two variables: monodromy of order 6 on H^1 of the fibre
        let h = vec![Matrix::identity(1), Matrix::from_i64(&[&[0, -1], &[1, 1]])];
        let m = bigerm_model(&a_mu_betti(2, 2), Some(&h)).unwrap();
        let out = propagate_icss_monodromy(&m).unwrap();
        assert_eq!(out[0].supp.iter().map(|e| e.order).collect::<Vec<_>>(), vec![6, 6]);
        assert_eq!(out[0].j_bound, 1);
    }

    #[test]
    fn two_columns_add_their_bounds() {
        let out = propagate_icss_monodromy(&two_column_synthetic().unwrap()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!((out[0].degree, out[0].j_bound, out[0].exact), (3, 2, false));
        assert!(out[0].jordan.is_none());
    }

    #[test]
    fn non_roots_of_unity_are_rejected() {
        let h = vec![Matrix::identity(1), Matrix::from_i64(&[&[2]])];
        let m = bigerm_model(&[1, 1], Some(&h)).unwrap();
        assert!(matches!(propagate_icss_monodromy(&m), Err(Error::NonCyclotomic(_))));
    }
}
