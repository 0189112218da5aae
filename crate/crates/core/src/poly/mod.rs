//! Exact multivariate polynomials over the rationals, Gröbner bases and
//! the ideal operations built on them.

mod groebner;
mod ideal;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};

pub use groebner::groebner_basis;
pub use ideal::{DimAtOrigin, DimMethod, Ideal, IdealJson, Verdict, VspaceDim};
pub use order::MonomialOrder;
pub(crate) use order::TermOrder;

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a` or `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("`{s}` has zero denominator")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// An ordered list of variable names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring(Arc<Vec<String>>);

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(invalid(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(invalid(format!("variable `{v}` listed twice")));
            }
        }
        Ok(Ring(Arc::new(vars)))
    }

    pub fn vars(&self) -> &[String] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// A new ring with `extra` appended after the existing variables.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        Ring::new(
            self.0
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }

    /// A variable name not yet used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.index_of(&name).is_some() {
            i += 1;
            name = format!("{base}{i}");
        }
        name
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self
            .index_of(name)
            .ok_or_else(|| invalid(format!("unknown variable `{name}`")))?;
        Ok(self.gen(i))
    }

    pub fn gen(&self, i: usize) -> Polynomial {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        Polynomial::monomial(self, Monomial(e), Q::one())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, text)
    }

    pub fn parse_all<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<Polynomial>> {
        texts.iter().map(|t| self.parse(t.as_ref())).collect()
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.join(","))
    }
}

/// Exponent vector; its length always equals the variable count of the ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// A polynomial with exact rational coefficients in a named ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Q::one())
    }

    pub fn constant(ring: &Ring, c: Q) -> Polynomial {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Q) -> Polynomial {
        assert_eq!(m.0.len(), ring.nvars(), "monomial length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Variables that actually occur.
    pub fn variables_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), c * q(k as i64))
            }),
        )
    }

    /// Substitutes polynomials (in `target`) for every variable of this ring.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        let used = self.variables_used();
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match target.index_of(v) {
                Some(j) => Ok(j),
                None if !used.contains(&i) => Ok(usize::MAX),
                None => Err(invalid(format!("variable `{v}` missing from target ring"))),
            })
            .collect::<Result<_>>()?;
        Ok(self.reindex(target, &map))
    }

    /// Moves variable `i` of this ring to variable `map[i]` of `target`.
    pub fn reindex(&self, target: &Ring, map: &[usize]) -> Polynomial {
        Polynomial {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; target.nvars()];
                    for (i, &k) in m.0.iter().enumerate() {
                        if k > 0 {
                            e[map[i]] += k;
                        }
                    }
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sets the named variables to constants, keeping the ring.
    pub fn evaluate_vars(&self, values: &[(usize, Q)]) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut coeff = c.clone();
            for (i, v) in values {
                let k = e[*i];
                if k > 0 {
                    coeff *= num_traits::pow(v.clone(), k as usize);
                    e[*i] = 0;
                }
            }
            out.add_term(Monomial(e), coeff);
        }
        out
    }

    pub(crate) fn leading(&self, order: &TermOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        let ord = TermOrder::from(order);
        self.leading(&ord).map(|(m, _)| m.clone())
    }

    /// Scales so that the leading coefficient for `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        let ord = TermOrder::from(order);
        match self.leading(&ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with no common factor and a positive
    /// degree-reverse-lex leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        let Some((_, lc)) = self.leading(&TermOrder::DegRevLex) else {
            return self.clone();
        };
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = self.scale(&BigRational::from_integer(den));
        let g = scaled.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let sign = if lc.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        scaled.scale(&BigRational::new(sign, g))
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.ring, divisor.ring, "ring mismatch in division");
        if divisor.is_zero() {
            return None;
        }
        let ord = TermOrder::DegRevLex;
        let (dm, dc) = divisor.leading(&ord).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading(&ord).map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c / &dc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Terms sorted descending in degree-reverse-lex order.
    fn sorted_terms(&self) -> Vec<(&Monomial, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        let ord = TermOrder::DegRevLex;
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in multiplication");
        let mut out = Polynomial::zero(&self.ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(ring, &minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Ideal of `size × size` minors of a polynomial matrix (rows × cols).
pub fn minors(ring: &Ring, m: &[Vec<Polynomial>], size: usize) -> Vec<Polynomial> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for rs in combinations(rows, size) {
        for cs in combinations(cols, size) {
            let sub: Vec<Vec<Polynomial>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            let d = determinant(ring, &sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().copied()).unwrap()
    }

    #[test]
    fn arithmetic_is_exact() {
        let r = ring(&["x", "y"]);
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let s = &x + &y;
        let d = &x - &y;
        assert_eq!(&s * &d, &x.pow(2) - &y.pow(2));
        let half = Polynomial::constant(&r, q_frac(1, 2));
        assert_eq!((&half * &x).to_string(), "1/2*x");
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_division() {
        let r = ring(&["a", "b"]);
        let p = r.parse("a^3 - b^3").unwrap();
        let d = r.parse("a - b").unwrap();
        assert_eq!(p.div_exact(&d).unwrap(), r.parse("a^2 + a*b + b^2").unwrap());
        assert!(r.parse("a^2 + b").unwrap().div_exact(&d).is_none());
    }

    #[test]
    fn jacobian_determinant_of_whitney_cusp() {
        let r = ring(&["x", "y"]);
        let f = [r.parse("x").unwrap(), r.parse("y^3 + x*y").unwrap()];
        let jac: Vec<Vec<Polynomial>> = f.iter().map(|fi| (0..2).map(|j| fi.derivative(j)).collect()).collect();
        assert_eq!(determinant(&r, &jac), r.parse("3*y^2 + x").unwrap());
    }

    #[test]
    fn ring_rejects_bad_names() {
        assert!(Ring::new(["x", "x"]).is_err());
        assert!(Ring::new(["1x"]).is_err());
        assert_eq!(ring(&["t"]).fresh_name("t"), "t1");
    }

    #[test]
    fn display_is_canonical() {
        let r = ring(&["x", "y"]);
        let p = r.parse("27 y^2 + 4*x^3 - 3/2").unwrap();
        assert_eq!(p.to_string(), "4*x^3 + 27*y^2 - 3/2");
    }
}
