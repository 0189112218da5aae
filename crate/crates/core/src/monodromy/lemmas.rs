//! Jordan data along complexes and short exact sequences of modules.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{jordan_data, Eigenvalue, JordanModule};
use crate::error::{invalid, Result};
use crate::linalg::{Matrix, Subquotient};

fn square(h: &Matrix, what: &str) -> Result<usize> {
    if !h.is_square() {
        return Err(invalid(format!("{what} must be square")));
    }
    Ok(h.rows())
}

fn equivariant(f: &Matrix, src: &Matrix, dst: &Matrix, what: &str) -> Result<()> {
    if f.shape() != (dst.rows(), src.rows()) {
        return Err(invalid(format!("{what} has shape {:?}", f.shape())));
    }
    if (dst * f) != (f * src) {
        return Err(invalid(format!("{what} does not commute with the automorphisms")));
    }
    Ok(())
}

/// Jordan data of `ker v / im u` inside `B` for `A →u B →v C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cm1Report {
    pub subquotient: JordanModule,
    pub middle: JordanModule,
    pub supp_contained: bool,
    pub j_bounded: bool,
    pub holds: bool,
}

pub fn check_cm1(a: &Matrix, u: &Matrix, b: &Matrix, v: &Matrix, c: &Matrix) -> Result<Cm1Report> {
    square(a, "automorphism of A")?;
    let nb = square(b, "automorphism of B")?;
    square(c, "automorphism of C")?;
    equivariant(u, a, b, "u")?;
    equivariant(v, b, c, "v")?;
    if !(v * u).is_zero() {
        return Err(invalid("v ∘ u ≠ 0"));
    }
    let z = if v.rows() == 0 {
        Matrix::identity(nb)
    } else {
        v.kernel()
    };
    let im = if u.cols() == 0 {
        Matrix::zeros(nb, 0)
    } else {
        u.column_basis()
    };
    let sq = Subquotient::new(&z, &im);
    let induced = sq.induced(b, &sq)?;
    let subquotient = jordan_data(&induced)?;
    let middle = jordan_data(b)?;
    let supp_contained = subquotient.supp().is_subset(&middle.supp());
    let j_bounded = subquotient.max_jordan() <= middle.max_jordan();
    Ok(Cm1Report {
        subquotient,
        middle,
        supp_contained,
        j_bounded,
        holds: supp_contained && j_bounded,
    })
}

/// Jordan data along `0 → A →i B →q C → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cm2Report {
    pub a: JordanModule,
    pub b: JordanModule,
    pub c: JordanModule,
    pub lower: bool,
    pub upper: bool,
    pub supp_union: bool,
    pub holds: bool,
}

pub fn check_cm2(a: &Matrix, i: &Matrix, b: &Matrix, q: &Matrix, c: &Matrix) -> Result<Cm2Report> {
    let na = square(a, "automorphism of A")?;
    let nb = square(b, "automorphism of B")?;
    let nc = square(c, "automorphism of C")?;
    equivariant(i, a, b, "i")?;
    equivariant(q, b, c, "q")?;
    if i.rank() != na || q.rank() != nc || na + nc != nb || !(q * i).is_zero() {
        return Err(invalid("sequence is not short exact"));
    }
    let (ja, jb, jc) = (jordan_data(a)?, jordan_data(b)?, jordan_data(c)?);
    let (xa, xb, xc) = (ja.max_jordan(), jb.max_jordan(), jc.max_jordan());
    let lower = xa.max(xc) <= xb;
    let upper = xb <= xa + xc;
    let union: BTreeSet<Eigenvalue> = ja.supp().union(&jc.supp()).copied().collect();
    let supp_union = union == jb.supp();
    Ok(Cm2Report {
        a: ja,
        b: jb,
        c: jc,
        lower,
        upper,
        supp_union,
        holds: lower && upper && supp_union,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_maps_return_the_middle() {
        let b = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let r = check_cm1(
            &Matrix::identity(0),
            &Matrix::zeros(2, 0),
            &b,
            &Matrix::zeros(0, 2),
            &Matrix::identity(0),
        )
        .unwrap();
        assert_eq!(r.subquotient, r.middle);
        assert!(r.holds);
    }

    #[test]
    fn eigenline_quotient() {
        let b = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let u = Matrix::from_i64(&[&[1], &[0]]);
        let r = check_cm1(&Matrix::identity(1), &u, &b, &Matrix::zeros(0, 2), &Matrix::identity(0)).unwrap();
        assert_eq!(r.subquotient.max_jordan(), 1);
        assert_eq!(r.middle.max_jordan(), 2);
        assert!(r.holds);
    }

    #[test]
    fn extension_of_trivial_modules() {
        let b = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let i = Matrix::from_i64(&[&[1], &[0]]);
        let q = Matrix::from_i64(&[&[0, 1]]);
        let r = check_cm2(&Matrix::identity(1), &i, &b, &q, &Matrix::identity(1)).unwrap();
        assert_eq!((r.a.max_jordan(), r.b.max_jordan(), r.c.max_jordan()), (1, 2, 1));
        assert!(r.holds);
        // split: lower bound tight
        let r = check_cm2(&Matrix::identity(1), &i, &Matrix::identity(2), &q, &Matrix::identity(1)).unwrap();
        assert_eq!(r.b.max_jordan(), 1);
        assert!(r.holds);
    }

    #[test]
    fn rejects_bad_inputs() {
        let b = Matrix::identity(2);
        let u = Matrix::from_i64(&[&[1], &[0]]);
        let v = Matrix::from_i64(&[&[1, 0]]);
        assert!(check_cm1(&Matrix::identity(1), &u, &b, &v, &Matrix::identity(1)).is_err());
        let not_exact = Matrix::from_i64(&[&[1, 0]]);
        assert!(check_cm2(&Matrix::identity(1), &u, &b, &not_exact, &Matrix::identity(1)).is_err());
        let twist = Matrix::from_i64(&[&[-1]]);
        assert!(check_cm2(&twist, &u, &b, &Matrix::from_i64(&[&[0, 1]]), &Matrix::identity(1)).is_err());
    }
}
