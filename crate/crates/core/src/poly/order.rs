use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{invalid, Result};

/// Monomial orders exposed to callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Degree-reverse-lex on the first `split` variables, then on the rest.
    /// Eliminates the first block.
    BlockElimination {
        split: usize,
    },
}

impl MonomialOrder {
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match *self {
            MonomialOrder::BlockElimination { split } if split == 0 || split >= nvars => Err(invalid(format!(
                "block split {split} must lie strictly inside 0..{nvars}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Orders used internally; a superset of [`MonomialOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TermOrder {
    DegRevLex,
    Lex,
    Block {
        split: usize,
    },
    /// Total degree, then the larger exponent of the homogenizing variable
    /// `h`, then degree-reverse-lex. Used to compute local leading
    /// monomials from homogenized generators.
    HomogLocal {
        h: usize,
    },
}

impl From<&MonomialOrder> for TermOrder {
    fn from(o: &MonomialOrder) -> Self {
        match *o {
            MonomialOrder::DegRevLex => TermOrder::DegRevLex,
            MonomialOrder::Lex => TermOrder::Lex,
            MonomialOrder::BlockElimination { split } => TermOrder::Block { split },
        }
    }
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex_tail(a, b))
}

impl TermOrder {
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (&a.0[..], &b.0[..]);
        match *self {
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Lex => a.cmp(b),
            TermOrder::Block { split } => {
                degrevlex(&a[..split], &b[..split]).then_with(|| degrevlex(&a[split..], &b[split..]))
            }
            TermOrder::HomogLocal { h } => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db)
                    .then_with(|| a[h].cmp(&b[h]))
                    .then_with(|| revlex_tail(a, b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::DegRevLex;
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::Block { split: 1 };
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
    }

    #[test]
    fn homog_local_prefers_lower_x_degree() {
        let o = TermOrder::HomogLocal { h: 2 };
        // x*h vs x^2 (same total degree): x*h wins
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn split_validation() {
        assert!(MonomialOrder::BlockElimination { split: 0 }.validate(3).is_err());
        assert!(MonomialOrder::BlockElimination { split: 3 }.validate(3).is_err());
        assert!(MonomialOrder::BlockElimination { split: 2 }.validate(3).is_ok());
    }
}
