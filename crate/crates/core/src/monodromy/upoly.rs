//! Univariate rational polynomials, cyclotomic polynomials and
//! characteristic polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::poly::{format_rational, Q};

/// Dense coefficients, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| Q::from_integer(v.into())).collect())
    }

    pub fn one() -> UPoly {
        UPoly(vec![Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.0[dd].clone();
        if r.len() < d.0.len() {
            return (UPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = &(&acc * a) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(&self) -> Matrix {
        let n = self.degree();
        let lead = &self.0[n];
        let mut m = Matrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, Q::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -&self.0[i] / lead);
        }
        m
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let a = if neg { -c } else { c.clone() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coeff = if a.is_one() && i > 0 {
                String::new()
            } else {
                format_rational(&a)
            };
            let mono = match i {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            };
            let star = if !coeff.is_empty() && !mono.is_empty() { "*" } else { "" };
            write!(f, "{sep}{coeff}{star}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|&e| e.gcd(&m) == 1).count() as u64
}

/// Memoised cyclotomic polynomials `Φ_m = (x^m − 1) / Π_{d | m, d < m} Φ_d`.
#[derive(Default)]
pub struct Cyclotomics(BTreeMap<u64, UPoly>);

impl Cyclotomics {
    pub fn get(&mut self, m: u64) -> UPoly {
        if let Some(p) = self.0.get(&m) {
            return p.clone();
        }
        let mut c = vec![Q::zero(); m as usize + 1];
        c[0] = -Q::one();
        c[m as usize] = Q::one();
        let mut p = UPoly::new(c);
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = p.div_rem(&self.get(d)).0;
            }
        }
        self.0.insert(m, p.clone());
        p
    }
}

/// Characteristic polynomial `det(x I − A)` by Faddeev–LeVerrier.
pub fn charpoly(a: &Matrix) -> UPoly {
    let n = a.rows();
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &Matrix::identity(n).scale(&c[n - k + 1]);
        let t = (a * &m).trace();
        c[n - k] = -t / Q::from_integer((k as i64).into());
    }
    UPoly::new(c)
}

/// Orders `m` and multiplicities with `p = Π Φ_m^{mult}`, or the leftover
/// factor when `p` is not a product of cyclotomic polynomials.
pub fn cyclotomic_factors(p: &UPoly, cyc: &mut Cyclotomics) -> Result<Vec<(u64, usize)>, UPoly> {
    let mut rest = p.clone();
    let deg = p.degree() as u64;
    let mut out = Vec::new();
    let bound = 2 * deg * deg + 2;
    let mut m = 1;
    while rest.degree() > 0 && m <= bound {
        if euler_phi(m) <= rest.degree() as u64 {
            let f = cyc.get(m);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&f);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((m, mult));
            }
        }
        m += 1;
    }
    if rest.degree() > 0 {
        Err(rest)
    } else {
        Ok(out)
    }
}
