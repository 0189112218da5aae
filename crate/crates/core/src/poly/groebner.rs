//! Buchberger completion with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{Ideal, Monomial, MonomialOrder, Polynomial, Ring, TermOrder, Q};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Terms sorted ascending for the active order; the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    terms: Vec<(Monomial, Q)>,
}

impl SortedPoly {
    pub(crate) fn new(p: &Polynomial, ord: &TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        SortedPoly { terms }
    }

    pub(crate) fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &Q {
        &self.terms.last().expect("nonzero polynomial").1
    }

    fn make_monic(&mut self) {
        let inv = self.lc().recip();
        if !inv.is_one() {
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `self - c * m * g`, merging two ascending term lists.
    fn sub_scaled(&self, c: &Q, m: &Monomial, g: &SortedPoly, ord: &TermOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(t, k)| (t.mul(m), k * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match step {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (t, k) = b.next().unwrap();
                    out.push((t, -k));
                }
                Ordering::Equal => {
                    let (t, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = x - y;
                    if !v.is_zero() {
                        out.push((t.clone(), v));
                    }
                }
            }
        }
        SortedPoly { terms: out }
    }
}

fn check_size(p: &SortedPoly, budget: &Budget) -> Result<()> {
    if p.terms.len() > budget.max_terms {
        return Err(Error::ResourceLimit(format!(
            "intermediate polynomial has {} terms (cap {})",
            p.terms.len(),
            budget.max_terms
        )));
    }
    Ok(())
}

/// Full normal form of `f` with respect to `basis`.
pub(crate) fn normal_form(
    f: &SortedPoly,
    basis: &[&SortedPoly],
    ord: &TermOrder,
    budget: &Budget,
) -> Result<SortedPoly> {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Q)> = Vec::new();
    while let Some((m, c)) = p.terms.last() {
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let qm = g.lm().quotient_of(m);
                let qc = c / g.lc();
                p = p.sub_scaled(&qc, &qm, g, ord);
                check_size(&p, budget)?;
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Ok(SortedPoly { terms: rem })
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, ord: &TermOrder) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l);
    let mg = g.lm().quotient_of(&l);
    let zero = SortedPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&(-f.lc().recip()), &mf, f, ord);
    a.sub_scaled(&g.lc().recip(), &mg, g, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Completion<'a> {
    ord: TermOrder,
    budget: &'a Budget,
    polys: Vec<SortedPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Completion<'a> {
    /// Gebauer–Möller update after adding `polys[h]`.
    fn update(&mut self, h: usize) {
        let hlm = self.polys[h].lm().clone();
        let cands: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, hlm.lcm(self.polys[g].lm()))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = hlm.coprime(self.polys[*g].lm());
            let dominated = cands.iter().enumerate().skip(idx + 1).any(|(_, (_, l2))| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hlm.coprime(self.polys[*g].lm()))
            .map(|(g, lcm)| Pair { i: g, j: h, lcm })
            .collect();
        let polys = &self.polys;
        self.pairs
            .retain(|p| !hlm.divides(&p.lcm) || hlm.lcm(polys[p.i].lm()) == p.lcm || hlm.lcm(polys[p.j].lm()) == p.lcm);
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !hlm.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn add(&mut self, mut p: SortedPoly) -> Result<bool> {
        p.make_monic();
        if p.degree() > self.budget.max_degree {
            return Err(Error::ResourceLimit(format!(
                "polynomial degree {} exceeds cap {}",
                p.degree(),
                self.budget.max_degree
            )));
        }
        let unit = p.lm().is_one();
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.update(h);
        Ok(unit)
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn run(mut self, input: Vec<SortedPoly>) -> Result<Vec<SortedPoly>> {
        let ord = self.ord;
        let mut input: Vec<SortedPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        input.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        for f in input {
            let basis: Vec<&SortedPoly> = self.active.iter().map(|&i| &self.polys[i]).collect();
            let r = normal_form(&f, &basis, &ord, self.budget)?;
            if !r.is_zero() && self.add(r)? {
                return Ok(vec![unit_poly(self.polys.last().unwrap())]);
            }
        }
        let mut processed = 0usize;
        while let Some(pair) = self.next_pair() {
            processed += 1;
            if processed > self.budget.max_pairs {
                return Err(Error::ResourceLimit(format!(
                    "S-pair budget of {} exhausted",
                    self.budget.max_pairs
                )));
            }
            let s = s_polynomial(&self.polys[pair.i], &self.polys[pair.j], &ord);
            let basis: Vec<&SortedPoly> = self.active.iter().map(|&i| &self.polys[i]).collect();
            let r = normal_form(&s, &basis, &ord, self.budget)?;
            if !r.is_zero() && self.add(r)? {
                return Ok(vec![unit_poly(self.polys.last().unwrap())]);
            }
        }
        // interreduce the active set
        let active: Vec<SortedPoly> = self.active.iter().map(|&i| self.polys[i].clone()).collect();
        let mut reduced = Vec::with_capacity(active.len());
        for (k, g) in active.iter().enumerate() {
            let others: Vec<&SortedPoly> = active
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p)
                .collect();
            let lead = g.terms.last().unwrap().clone();
            let tail = SortedPoly {
                terms: g.terms[..g.terms.len() - 1].to_vec(),
            };
            let mut t = normal_form(&tail, &others, &ord, self.budget)?;
            t.terms.push(lead);
            t.make_monic();
            reduced.push(t);
        }
        reduced.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        Ok(reduced)
    }
}

fn unit_poly(p: &SortedPoly) -> SortedPoly {
    SortedPoly {
        terms: vec![(p.lm().clone(), Q::one())],
    }
}

/// Reduced Gröbner basis of `gens` for an internal order.
pub(crate) fn compute(gens: &[Polynomial], ord: TermOrder, budget: &Budget) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let input = gens.iter().map(|g| SortedPoly::new(g, &ord)).collect();
    let c = Completion {
        ord,
        budget,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    Ok(c.run(input)?.iter().map(|p| p.to_poly(&ring)).collect())
}

/// Normal form of `f` modulo a Gröbner basis for `ord`.
pub(crate) fn reduce(f: &Polynomial, basis: &[Polynomial], ord: TermOrder, budget: &Budget) -> Result<Polynomial> {
    let sorted: Vec<SortedPoly> = basis.iter().map(|g| SortedPoly::new(g, &ord)).collect();
    let refs: Vec<&SortedPoly> = sorted.iter().collect();
    Ok(normal_form(&SortedPoly::new(f, &ord), &refs, &ord, budget)?.to_poly(f.ring()))
}

/// Reduced Gröbner basis of `ideal` for `order`, returned as a new ideal
/// whose generators are the basis.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<Ideal> {
    order.validate(ideal.ring().nvars())?;
    let basis = ideal.basis(order)?;
    Ok(Ideal::with_basis(ideal.ring(), basis.to_vec(), order))
}
