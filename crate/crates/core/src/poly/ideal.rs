use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::groebner::{compute, reduce};
use super::{Monomial, MonomialOrder, Polynomial, Ring, TermOrder};
use crate::budget::Budget;
use crate::error::{invalid, Error, Result};

/// Outcome of a decision procedure that may run out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Folds a fallible check: resource exhaustion becomes `Inconclusive`.
    pub fn from_result(r: Result<bool>) -> Result<Verdict> {
        match r {
            Ok(b) => Ok(Verdict::from_bool(b)),
            Err(Error::ResourceLimit(_)) => Ok(Verdict::Inconclusive),
            Err(e) => Err(e),
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::Inconclusive,
        }
    }
}

/// How a dimension at the origin was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimMethod {
    /// From local leading monomials: the dimension of the germ at 0.
    Local,
    /// Global Krull dimension, used when the local computation exceeded
    /// its budget. Equal to the local value for quasi-homogeneous ideals.
    Global,
}

/// Dimension of the germ of `V(I)` at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DimAtOrigin {
    /// The origin is not on `V(I)`.
    Empty {
        method: DimMethod,
    },
    Dim {
        dim: usize,
        method: DimMethod,
    },
}

impl DimAtOrigin {
    pub fn value(&self) -> Option<usize> {
        match self {
            DimAtOrigin::Empty { .. } => None,
            DimAtOrigin::Dim { dim, .. } => Some(*dim),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, DimAtOrigin::Empty { .. })
    }

    pub fn method(&self) -> DimMethod {
        match self {
            DimAtOrigin::Empty { method } | DimAtOrigin::Dim { method, .. } => *method,
        }
    }
}

impl fmt::Display for DimAtOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => write!(f, "empty"),
            Some(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VspaceDim {
    Finite(usize),
    Infinite,
}

/// Serialized ideal: `{ "vars": [...], "gens": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

type BasisCache = Arc<Mutex<Vec<(MonomialOrder, Arc<[Polynomial]>)>>>;

/// A polynomial ideal given by generators, with lazily cached bases.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: BasisCache,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}> in {:?}", gens.join(", "), self.ring)
    }
}

/// Krull dimension of `Q[x]/M` for a monomial ideal `M`; `None` for the unit ideal.
///
/// Equals `n` minus the smallest set of variables meeting every support.
pub(crate) fn monomial_dimension(lms: &[Monomial], nvars: usize) -> Option<usize> {
    if lms.iter().any(Monomial::is_one) {
        return None;
    }
    let supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    fn cover(supports: &[Vec<usize>], chosen: &mut Vec<bool>, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        match supports.iter().find(|s| !s.iter().any(|&v| chosen[v])) {
            None => *best = size,
            Some(s) => {
                for &v in s {
                    chosen[v] = true;
                    cover(supports, chosen, size + 1, best);
                    chosen[v] = false;
                }
            }
        }
    }
    let mut best = nvars;
    cover(&supports, &mut vec![false; nvars], 0, &mut best);
    Some(nvars - best)
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        if let Some(g) = gens.iter().find(|g| g.ring() != ring) {
            return Err(invalid(format!(
                "generator {g} lives in {:?}, not {:?}",
                g.ring(),
                ring
            )));
        }
        Ok(Ideal::from_gens(ring, gens))
    }

    fn from_gens(ring: &Ring, gens: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub(crate) fn with_basis(ring: &Ring, basis: Vec<Polynomial>, order: MonomialOrder) -> Ideal {
        let ideal = Ideal::from_gens(ring, basis.clone());
        ideal
            .cache
            .lock()
            .unwrap()
            .push((order, Arc::from(basis.into_boxed_slice())));
        ideal
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring, gens: &[S]) -> Result<Ideal> {
        Ideal::new(ring, ring.parse_all(gens)?)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, vec![Polynomial::one(ring)])
    }

    pub fn from_json(j: &IdealJson) -> Result<Ideal> {
        let ring = Ring::new(j.vars.iter().cloned())?;
        Ideal::parse(&ring, &j.gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.ring.vars().to_vec(),
            gens: self.gens.iter().map(|g| g.primitive().to_string()).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators of the reduced Gröbner basis as strings (degree-reverse-lex).
    pub fn basis_strings(&self) -> Result<Vec<String>> {
        Ok(self
            .basis(MonomialOrder::DegRevLex)?
            .iter()
            .map(|g| g.primitive().to_string())
            .collect())
    }

    /// Reduced Gröbner basis for `order`, computed once and cached.
    pub fn basis(&self, order: MonomialOrder) -> Result<Arc<[Polynomial]>> {
        if let Some((_, b)) = self.cache.lock().unwrap().iter().find(|(o, _)| *o == order) {
            return Ok(b.clone());
        }
        order.validate(self.ring.nvars())?;
        let b: Arc<[Polynomial]> = compute(&self.gens, TermOrder::from(&order), &Budget::current())?.into();
        self.cache.lock().unwrap().push((order, b.clone()));
        Ok(b)
    }

    /// Normal form modulo the degree-reverse-lex basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let basis = self.basis(MonomialOrder::DegRevLex)?;
        reduce(f, &basis, TermOrder::DegRevLex, &Budget::current())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(invalid("membership test across rings"));
        }
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (not radicals).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.ring == other.ring && self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis(MonomialOrder::DegRevLex)?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        Ok(Ideal::from_gens(
            &self.ring,
            self.gens.iter().chain(&other.gens).cloned().collect(),
        ))
    }

    pub fn add_generators(&self, extra: Vec<Polynomial>) -> Result<Ideal> {
        self.sum(&Ideal::new(&self.ring, extra)?)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    fn check_same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring != other.ring {
            return Err(invalid(format!(
                "ideals live in different rings: {:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    /// The ideal in a larger ring (variables matched by name).
    pub fn embed(&self, target: &Ring) -> Result<Ideal> {
        Ok(Ideal::from_gens(
            target,
            self.gens.iter().map(|g| g.embed(target)).collect::<Result<_>>()?,
        ))
    }

    /// `I ∩ Q[keep]`, computed with a two-block elimination order.
    pub fn eliminate<S: AsRef<str>>(&self, keep: &[S]) -> Result<Ideal> {
        let keep: Vec<&str> = keep.iter().map(AsRef::as_ref).collect();
        for k in &keep {
            if self.ring.index_of(k).is_none() {
                return Err(invalid(format!("cannot keep unknown variable `{k}`")));
            }
        }
        let keep_ring = Ring::new(self.ring.vars().iter().filter(|v| keep.contains(&v.as_str())).cloned())?;
        let elim: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| !keep.contains(&v.as_str()))
            .cloned()
            .collect();
        if elim.is_empty() {
            return Ok(Ideal::from_gens(
                &keep_ring,
                self.basis(MonomialOrder::DegRevLex)?
                    .iter()
                    .map(|g| g.embed(&keep_ring))
                    .collect::<Result<_>>()?,
            ));
        }
        if keep_ring.nvars() == 0 {
            return Ok(if self.is_unit()? {
                Ideal::unit(&keep_ring)
            } else {
                Ideal::zero(&keep_ring)
            });
        }
        let work = Ring::new(elim.iter().chain(keep_ring.vars()).cloned())?;
        let moved = self.embed(&work)?;
        let order = MonomialOrder::BlockElimination { split: elim.len() };
        let basis = moved.basis(order)?;
        let split = elim.len();
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.variables_used().iter().all(|&i| i >= split))
            .map(|g| g.embed(&keep_ring))
            .collect::<Result<_>>()?;
        Ok(Ideal::from_gens(&keep_ring, kept))
    }

    /// Eliminates the given variables, keeping all others.
    pub fn eliminate_vars<S: AsRef<str>>(&self, drop: &[S]) -> Result<Ideal> {
        let drop: Vec<&str> = drop.iter().map(AsRef::as_ref).collect();
        let keep: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| !drop.contains(&v.as_str()))
            .cloned()
            .collect();
        self.eliminate(&keep)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let s_name = self.ring.fresh_name("s");
        let big = self.ring.extend(&[s_name.as_str()])?;
        let s = big.var(&s_name)?;
        let one_minus_s = &Polynomial::one(&big) - &s;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&s * &g.embed(&big)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_s * &g.embed(&big)?);
        }
        let keep: Vec<String> = self.ring.vars().to_vec();
        let out = Ideal::from_gens(&big, gens).eliminate(&keep)?;
        Ideal::new(&self.ring, out.gens.clone())
    }

    /// `I : h^∞` via the Rabinowitsch trick.
    pub fn saturate_by_element(&self, h: &Polynomial) -> Result<Ideal> {
        if h.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if h.is_constant() {
            return Ok(self.clone());
        }
        if self.contains(h)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let z_name = self.ring.fresh_name("z");
        let big = self.ring.extend(&[z_name.as_str()])?;
        let z = big.var(&z_name)?;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&big) - &(&z * &h.embed(&big)?));
        let keep: Vec<String> = self.ring.vars().to_vec();
        let out = Ideal::from_gens(&big, gens).eliminate(&keep)?;
        Ideal::new(&self.ring, out.gens.clone())
    }

    /// `I : J^∞ = ⋂_i I : h_i^∞` over the generators `h_i` of `J`.
    pub fn saturate(&self, by: &Ideal) -> Result<Ideal> {
        self.check_same_ring(by)?;
        let mut acc: Option<Ideal> = None;
        for h in &by.gens {
            if self.contains(h)? {
                continue;
            }
            let part = self.saturate_by_element(h)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Krull dimension of `V(I)`; `None` when `V(I)` is empty.
    pub fn dim(&self) -> Result<Option<usize>> {
        let basis = self.basis(MonomialOrder::DegRevLex)?;
        let lms: Vec<Monomial> = basis
            .iter()
            .filter_map(|g| g.leading_monomial(&MonomialOrder::DegRevLex))
            .collect();
        Ok(monomial_dimension(&lms, self.ring.nvars()))
    }

    /// Local leading monomials at the origin via homogenization: a
    /// homogeneous basis of the homogenized generators for a degree order
    /// that prefers higher powers of the homogenizing variable
    /// dehomogenizes to a standard basis for a local degree order.
    fn local_leading_monomials(&self) -> Result<Vec<Monomial>> {
        let n = self.ring.nvars();
        let h_name = self.ring.fresh_name("h");
        let big = self.ring.extend(&[h_name.as_str()])?;
        let homog: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| {
                let d = g.total_degree().unwrap_or(0);
                Polynomial::from_terms(
                    &big,
                    g.terms().map(|(m, c)| {
                        let mut e = m.exponents().to_vec();
                        e.push(d - m.degree());
                        (Monomial(e), c.clone())
                    }),
                )
            })
            .collect();
        let ord = TermOrder::HomogLocal { h: n };
        let basis = compute(&homog, ord, &Budget::current())?;
        Ok(basis
            .iter()
            .filter_map(|g| g.leading(&ord).map(|(m, _)| Monomial(m.exponents()[..n].to_vec())))
            .collect())
    }

    /// Dimension of the germ of `V(I)` at the origin.
    ///
    /// Falls back to the global dimension (flagged) when the local
    /// computation exceeds its budget.
    pub fn dim_at_origin(&self) -> Result<DimAtOrigin> {
        if self.gens.iter().any(|g| !g.constant_term().is_zero()) && self.gens.len() == 1 {
            return Ok(DimAtOrigin::Empty {
                method: DimMethod::Local,
            });
        }
        match self.local_leading_monomials() {
            Ok(lms) => Ok(match monomial_dimension(&lms, self.ring.nvars()) {
                None => DimAtOrigin::Empty {
                    method: DimMethod::Local,
                },
                Some(dim) => DimAtOrigin::Dim {
                    dim,
                    method: DimMethod::Local,
                },
            }),
            Err(Error::ResourceLimit(_)) => {
                let method = DimMethod::Global;
                let origin_on = self.gens.iter().all(|g| g.constant_term().is_zero());
                Ok(match (origin_on, self.dim()?) {
                    (false, _) | (_, None) => DimAtOrigin::Empty { method },
                    (true, Some(dim)) => DimAtOrigin::Dim { dim, method },
                })
            }
            Err(e) => Err(e),
        }
    }

    /// Dimension of `Q[x]/I` as a rational vector space.
    pub fn vspace_dim(&self) -> Result<VspaceDim> {
        let n = self.ring.nvars();
        let basis = self.basis(MonomialOrder::DegRevLex)?;
        let lms: Vec<Monomial> = basis
            .iter()
            .filter_map(|g| g.leading_monomial(&MonomialOrder::DegRevLex))
            .collect();
        if lms.iter().any(Monomial::is_one) {
            return Ok(VspaceDim::Finite(0));
        }
        let mut bounds = vec![0u32; n];
        for (i, bound) in bounds.iter_mut().enumerate() {
            *bound = match lms
                .iter()
                .filter(|m| m.support().all(|j| j == i))
                .map(|m| m.exponents()[i])
                .min()
            {
                Some(b) => b,
                None => return Ok(VspaceDim::Infinite),
            };
        }
        fn count(i: usize, cur: &mut Vec<u32>, bounds: &[u32], lms: &[Monomial]) -> usize {
            if lms
                .iter()
                .any(|m| m.exponents().iter().zip(cur.iter()).all(|(a, b)| a <= b))
            {
                return 0;
            }
            if i == bounds.len() {
                return 1;
            }
            let mut total = 0;
            for e in 0..bounds[i] {
                cur[i] = e;
                total += count(i + 1, cur, bounds, lms);
            }
            cur[i] = 0;
            total
        }
        Ok(VspaceDim::Finite(count(0, &mut vec![0; n], &bounds, &lms)))
    }

    /// `f ∈ √I`, decided by `1 ∈ I + ⟨1 − z f⟩`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() || self.contains(f)? {
            return Ok(true);
        }
        let z_name = self.ring.fresh_name("z");
        let big = self.ring.extend(&[z_name.as_str()])?;
        let z = big.var(&z_name)?;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.embed(&big)).collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&big) - &(&z * &f.embed(&big)?));
        Ideal::from_gens(&big, gens).is_unit()
    }

    /// `√I = √J`, i.e. equality of zero sets over the algebraic closure.
    pub fn radical_eq(&self, other: &Ideal) -> Result<Verdict> {
        self.check_same_ring(other)?;
        let check = || -> Result<bool> {
            for g in &other.gens {
                if !self.radical_contains(g)? {
                    return Ok(false);
                }
            }
            for g in &self.gens {
                if !other.radical_contains(g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Verdict::from_result(check())
    }

    /// Substitutes constants for some variables, keeping the ring.
    pub fn evaluate_vars(&self, values: &[(usize, super::Q)]) -> Ideal {
        Ideal::from_gens(&self.ring, self.gens.iter().map(|g| g.evaluate_vars(values)).collect())
    }

    /// Applies a permutation of variables (`perm[i]` is the new index of `i`).
    pub fn permute(&self, perm: &[usize]) -> Ideal {
        Ideal::from_gens(
            &self.ring,
            self.gens.iter().map(|g| g.reindex(&self.ring, perm)).collect(),
        )
    }

    /// Whether every generator vanishes at the origin.
    pub fn origin_on_generators(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_zero())
    }

    pub fn is_one_generator(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant() && self.gens[0].constant_term().is_one()
    }
}
