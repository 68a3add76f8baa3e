//! Ideals of `F_p[x_1, …, x_n]` via reduced Gröbner bases.
//!
//! Bases come from Buchberger's algorithm with the normal selection strategy
//! (least lcm degree, ties broken by pair indices), the coprime-lead criterion
//! and the chain criterion. Reduced bases are canonical, so membership,
//! containment and equality reduce to normal forms and structural comparison.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::Prime;
use crate::error::{Error, Resource, Result};
use crate::poly::{FpPoly, FpRing, Monomial, MonomialOrder, Polynomial};

/// Terms sorted from largest to smallest monomial, coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    terms: Vec<(Monomial, u64)>,
}

impl SortedPoly {
    fn from_poly(f: &FpPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, u64)> = f.terms().map(|(m, c)| (m.clone(), *c)).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SortedPoly { terms }
    }

    fn to_poly(&self, ring: &Arc<FpRing>) -> FpPoly {
        Polynomial::from_map_unchecked(ring, self.terms.iter().cloned().collect())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lead_coeff(&self) -> u64 {
        self.terms[0].1
    }

    fn make_monic(&mut self, p: Prime) {
        if let Some(&(_, c)) = self.terms.first() {
            if c != 1 {
                let inv = p.inv(c);
                for t in &mut self.terms {
                    t.1 = p.mul(t.1, inv);
                }
            }
        }
    }

    fn scale_exponents(&self, q: u64) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scale(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SortedPoly { terms })
    }
}

/// `a[from..] - c · mono · g`, merged in descending order.
fn sub_scaled(
    a: &[(Monomial, u64)],
    c: u64,
    mono: &Monomial,
    g: &[(Monomial, u64)],
    order: MonomialOrder,
    p: Prime,
) -> Result<Vec<(Monomial, u64)>> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let mut shifted = g.iter().map(|(m, gc)| Ok((m.try_mul(mono)?, p.mul(*gc, c))));
    let mut next_b: Option<(Monomial, u64)> = shifted.next().transpose()?;
    let mut ia = 0;
    loop {
        match (a.get(ia), next_b.take()) {
            (None, None) => break,
            (Some(ta), None) => {
                out.push(ta.clone());
                ia += 1;
            }
            (None, Some(tb)) => {
                out.push((tb.0, p.neg(tb.1)));
                next_b = shifted.next().transpose()?;
            }
            (Some(ta), Some(tb)) => match order.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    ia += 1;
                    next_b = Some(tb);
                }
                Ordering::Less => {
                    out.push((tb.0, p.neg(tb.1)));
                    next_b = shifted.next().transpose()?;
                }
                Ordering::Equal => {
                    let v = p.sub(ta.1, tb.1);
                    if v != 0 {
                        out.push((tb.0, v));
                    }
                    ia += 1;
                    next_b = shifted.next().transpose()?;
                }
            },
        }
    }
    Ok(out)
}

/// Full reduction of `f` by `basis`; divisors are tried in list order and the
/// largest remaining term is always treated first.
fn reduce(f: &SortedPoly, basis: &[&SortedPoly], order: MonomialOrder, p: Prime) -> Result<SortedPoly> {
    let mut rest = f.terms.clone();
    let mut start = 0;
    let mut out = Vec::new();
    while start < rest.len() {
        let (m, c) = &rest[start];
        let divisor = basis.iter().find_map(|g| g.lead().quotient_of(m).map(|q| (*g, q)));
        match divisor {
            Some((g, q)) => {
                let factor = p.mul(*c, p.inv(g.lead_coeff()));
                rest = sub_scaled(&rest[start..], factor, &q, &g.terms, order, p)?;
                start = 0;
            }
            None => {
                out.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Ok(SortedPoly { terms: out })
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, order: MonomialOrder, p: Prime) -> Result<SortedPoly> {
    let lcm = f.lead().lcm(g.lead());
    let uf = f.lead().quotient_of(&lcm).expect("lead divides lcm");
    let ug = g.lead().quotient_of(&lcm).expect("lead divides lcm");
    // Both inputs are monic: S = uf·f - ug·g.
    let left = sub_scaled(&[], p.neg(1), &uf, &f.terms, order, p)?;
    let terms = sub_scaled(&left, 1, &ug, &g.terms, order, p)?;
    Ok(SortedPoly { terms })
}

/// Buchberger's algorithm followed by interreduction. Returns the reduced
/// basis sorted by increasing leading monomial.
fn buchberger(gens: &[FpPoly], order: MonomialOrder, p: Prime, max_pairs: u64) -> Result<Vec<SortedPoly>> {
    let unit = |m: &Monomial| SortedPoly {
        terms: vec![(Monomial::one(m.exponents().len()), 1)],
    };
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    // Normal strategy: least lcm degree first, ties by indices.
    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |basis: &[SortedPoly], pending: &mut HashSet<(usize, usize)>, queue: &mut BinaryHeap<_>| {
        let k = basis.len() - 1;
        for i in 0..k {
            pending.insert((i, k));
            queue.push(Reverse((basis[i].lead().lcm(basis[k].lead()).degree(), i, k)));
        }
    };
    for s in linear_echelon(gens, order, p)? {
        if s.lead().is_one() {
            return Ok(vec![unit(s.lead())]);
        }
        basis.push(s);
        push_pairs(&basis, &mut pending, &mut queue);
    }

    let mut treated = 0u64;
    while let Some(Reverse((_, i, j))) = queue.pop() {
        pending.remove(&(i, j));

        let (li, lj) = (basis[i].lead(), basis[j].lead());
        if li.is_coprime(lj) {
            continue;
        }
        let lcm = li.lcm(lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        treated += 1;
        if treated > max_pairs {
            return Err(Error::resource(
                Resource::Pairs,
                max_pairs,
                "Buchberger pair budget exhausted",
            ));
        }
        let s = s_polynomial(&basis[i], &basis[j], order, p)?;
        let refs: Vec<&SortedPoly> = basis.iter().collect();
        let mut h = reduce(&s, &refs, order, p)?;
        if h.is_zero() {
            continue;
        }
        if h.lead().is_one() {
            return Ok(vec![unit(h.lead())]);
        }
        h.make_monic(p);
        basis.push(h);
        push_pairs(&basis, &mut pending, &mut queue);
    }
    interreduce(basis, order, p)
}

/// Monic generators of the same `F_p`-span with pairwise distinct leading
/// monomials. Frobenius-root decompositions produce many linearly dependent
/// parts; dropping them up front keeps the pair set small.
fn linear_echelon(gens: &[FpPoly], order: MonomialOrder, p: Prime) -> Result<Vec<SortedPoly>> {
    let mut rows: Vec<SortedPoly> = Vec::new();
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut v = SortedPoly::from_poly(g, order);
        while let Some(&k) = v.terms.first().and_then(|(m, _)| pivots.get(m)) {
            let c = v.lead_coeff();
            v.terms = sub_scaled(
                &v.terms,
                c,
                &Monomial::one(v.lead().exponents().len()),
                &rows[k].terms,
                order,
                p,
            )?;
        }
        if !v.is_zero() {
            v.make_monic(p);
            pivots.insert(v.lead().clone(), rows.len());
            rows.push(v);
        }
    }
    Ok(rows)
}

/// Minimalizes and fully reduces a Gröbner basis; output is monic and sorted
/// by increasing leading monomial.
fn interreduce(mut basis: Vec<SortedPoly>, order: MonomialOrder, p: Prime) -> Result<Vec<SortedPoly>> {
    basis.sort_by(|a, b| order.cmp(a.lead(), b.lead()));
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead().divides(g.lead())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (idx, g) in minimal.iter().enumerate() {
        let others: Vec<&SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, h)| h)
            .collect();
        let mut r = reduce(g, &others, order, p)?;
        r.make_monic(p);
        reduced.push(r);
    }
    Ok(reduced)
}

/// A reduced Gröbner basis for one monomial order.
#[derive(Debug)]
pub(crate) struct GroebnerBasis {
    order: MonomialOrder,
    polys: Vec<SortedPoly>,
}

impl GroebnerBasis {
    fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lead().is_one()
    }

    fn normal_form(&self, f: &FpPoly) -> Result<SortedPoly> {
        let refs: Vec<&SortedPoly> = self.polys.iter().collect();
        reduce(&SortedPoly::from_poly(f, self.order), &refs, self.order, f.prime())
    }
}

/// Dimension of `R/I` over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => n.fmt(f),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// A finitely generated ideal of `F_p[x_1, …, x_n]`.
///
/// Reduced Gröbner bases are computed on demand and cached per monomial
/// order. The cache is behind `OnceLock`, so concurrent readers see either no
/// basis or a complete one; an `Ideal` is never mutated after construction.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FpRing>,
    gens: Vec<FpPoly>,
    cache: [OnceLock<Arc<GroebnerBasis>>; 2],
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl Ideal {
    /// Ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Arc<FpRing>, gens: Vec<FpPoly>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                kept.push(g.with_ring(ring)?);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            cache: Default::default(),
        })
    }

    pub fn principal(f: &FpPoly) -> Self {
        Ideal::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn zero(ring: &Arc<FpRing>) -> Self {
        Ideal::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: &Arc<FpRing>) -> Self {
        Ideal::principal(&Polynomial::one(ring))
    }

    /// The maximal ideal `(x_1, …, x_n)` of the origin.
    pub fn maximal(ring: &Arc<FpRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal::new(ring, gens).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<FpRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[FpPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, f: &FpPoly) -> Result<()> {
        if **f.ring() == *self.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub(crate) fn basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        let slot = &self.cache[order.index()];
        if let Some(b) = slot.get() {
            return Ok(b.clone());
        }
        let polys = buchberger(&self.gens, order, self.ring.prime(), self.ring.limits().max_pairs)?;
        let _ = slot.set(Arc::new(GroebnerBasis { order, polys }));
        Ok(slot.get().expect("just set").clone())
    }

    /// The reduced Gröbner basis, sorted by increasing leading monomial.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Vec<FpPoly>> {
        Ok(self.basis(order)?.polys.iter().map(|s| s.to_poly(&self.ring)).collect())
    }

    /// Leading monomials of the reduced basis, in the same order.
    pub fn leading_monomials(&self, order: MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self.basis(order)?.polys.iter().map(|s| s.lead().clone()).collect())
    }

    /// The same ideal with its reduced grevlex basis as generators.
    pub fn reduced(&self) -> Result<Ideal> {
        let basis = self.basis(MonomialOrder::Grevlex)?;
        let ideal = Ideal {
            ring: self.ring.clone(),
            gens: basis.polys.iter().map(|s| s.to_poly(&self.ring)).collect(),
            cache: Default::default(),
        };
        let _ = ideal.cache[MonomialOrder::Grevlex.index()].set(basis);
        Ok(ideal)
    }

    /// Normal form with respect to the reduced basis for `order`.
    pub fn normal_form(&self, f: &FpPoly, order: MonomialOrder) -> Result<FpPoly> {
        self.check_poly(f)?;
        Ok(self.basis(order)?.normal_form(f)?.to_poly(&self.ring))
    }

    pub fn contains(&self, f: &FpPoly) -> Result<bool> {
        self.contains_with(f, MonomialOrder::Grevlex)
    }

    pub fn contains_with(&self, f: &FpPoly, order: MonomialOrder) -> Result<bool> {
        self.check_poly(f)?;
        Ok(self.basis(order)?.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let basis = self.basis(MonomialOrder::Grevlex)?;
        for g in &other.gens {
            if !basis.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced grevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.basis(MonomialOrder::Grevlex)?.polys == other.basis(MonomialOrder::Grevlex)?.polys)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis(MonomialOrder::Grevlex)?.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ideal::new(&self.ring, gens)
    }

    /// `f · I`.
    pub fn mul_poly(&self, f: &FpPoly) -> Result<Ideal> {
        self.check_poly(f)?;
        let gens = self.gens.iter().map(|g| g.try_mul(f)).collect::<Result<_>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I^{[p^e]}`, generated by the `p^e`-th powers of the generators.
    ///
    /// Frobenius carries a reduced Gröbner basis to a reduced Gröbner basis of
    /// the bracket power, so the grevlex basis is seeded from this ideal's.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let q = self.ring.prime().power(e, self.ring.limits().max_pe)?;
        let gens = self.gens.iter().map(|g| g.frobenius_power(e)).collect::<Result<_>>()?;
        let out = Ideal::new(&self.ring, gens)?;
        let basis = self.basis(MonomialOrder::Grevlex)?;
        let polys = basis
            .polys
            .iter()
            .map(|s| s.scale_exponents(q))
            .collect::<Result<Vec<_>>>()?;
        let _ = out.cache[MonomialOrder::Grevlex.index()].set(Arc::new(GroebnerBasis {
            order: MonomialOrder::Grevlex,
            polys,
        }));
        Ok(out)
    }

    /// `dim_k R/I`: the number of standard monomials of the reduced basis.
    pub fn colength(&self, order: MonomialOrder) -> Result<Colength> {
        let leads = self.leading_monomials(order)?;
        count_standard_monomials(&leads, self.ring.nvars(), self.ring.limits().max_terms)
    }
}

/// Counts monomials outside the monomial ideal generated by `leads`.
fn count_standard_monomials(leads: &[Monomial], nvars: usize, cap: u64) -> Result<Colength> {
    if leads.iter().any(Monomial::is_one) {
        return Ok(Colength::Finite(0));
    }
    let mut bounds = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let pure = leads
            .iter()
            .filter(|m| m.exponents().iter().enumerate().all(|(j, &a)| j == i || a == 0))
            .map(|m| m.exponents()[i])
            .min();
        match pure {
            Some(d) => bounds.push(d),
            None => return Ok(Colength::Infinite),
        }
    }
    let volume = bounds.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    if volume > cap as u128 {
        return Err(Error::resource(
            Resource::Terms,
            cap,
            format!("standard-monomial box has {volume} points"),
        ));
    }
    let mut count = 0u64;
    let mut current = vec![0u32; nvars];
    loop {
        let m = Monomial::new(current.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == nvars {
                return Ok(Colength::Finite(count));
            }
            current[i] += 1;
            if current[i] < bounds[i] {
                break;
            }
            current[i] = 0;
            i += 1;
        }
    }
}

/// Remainder of `f` on division by `basis` (any list of nonzero polynomials).
/// Deterministic: divisors are tried in list order, largest term first.
pub fn normal_form(f: &FpPoly, basis: &[FpPoly], order: MonomialOrder) -> Result<FpPoly> {
    let sorted: Vec<SortedPoly> = basis
        .iter()
        .map(|g| {
            if g.is_zero() {
                Err(Error::invalid("division by the zero polynomial"))
            } else if !g.same_ring(f) {
                Err(Error::RingMismatch)
            } else {
                Ok(SortedPoly::from_poly(g, order))
            }
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&SortedPoly> = sorted.iter().collect();
    Ok(reduce(&SortedPoly::from_poly(f, order), &refs, order, f.prime())?.to_poly(f.ring()))
}

pub fn buchberger_reduced_gb(ideal: &Ideal, order: MonomialOrder) -> Result<Vec<FpPoly>> {
    ideal.groebner_basis(order)
}

pub fn ideal_contains_poly(ideal: &Ideal, f: &FpPoly, order: MonomialOrder) -> Result<bool> {
    ideal.contains_with(f, order)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    ideal.bracket_power(e)
}

pub fn colength(ideal: &Ideal, order: MonomialOrder) -> Result<Colength> {
    ideal.colength(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Limits;
    use crate::parse::{parse_polynomial, parse_polynomial_list};
    use crate::poly::PrimeField;
    use proptest::prelude::*;

    fn ring(p: u64) -> Arc<FpRing> {
        FpRing::fp(p, &["x", "y"]).unwrap()
    }

    fn ideal(r: &Arc<FpRing>, s: &str) -> Ideal {
        Ideal::new(r, parse_polynomial_list(r, s).unwrap()).unwrap()
    }

    fn pf(r: &Arc<FpRing>, s: &str) -> FpPoly {
        parse_polynomial(r, s).unwrap()
    }

    fn show(v: &[FpPoly]) -> Vec<String> {
        v.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(7);
        use MonomialOrder::Lex;
        assert!(normal_form(&pf(&r, "x^2"), &[pf(&r, "x")], Lex).unwrap().is_zero());
        assert_eq!(
            normal_form(&pf(&r, "x+y"), &[pf(&r, "x-y")], Lex).unwrap().to_string(),
            "2*y"
        );
        let basis = [pf(&r, "x - y^2"), pf(&r, "y^3 - 1")];
        assert!(normal_form(&pf(&r, "y^4 - y"), &basis, Lex).unwrap().is_zero());
        assert!(normal_form(&pf(&r, "x"), &[Polynomial::zero(&r)], Lex).is_err());
    }

    #[test]
    fn gb_examples() {
        let r = ring(7);
        let i = ideal(&r, "x^2 - y; x*y - 1");
        assert_eq!(
            show(&i.groebner_basis(MonomialOrder::Lex).unwrap()),
            ["y^3 + 6", "6*y^2 + x"]
        );
        assert!(Ideal::zero(&r)
            .groebner_basis(MonomialOrder::Grevlex)
            .unwrap()
            .is_empty());
        let j = ideal(&r, "x; x + y");
        assert_eq!(show(&j.groebner_basis(MonomialOrder::Lex).unwrap()), ["y", "x"]);
        assert!(ideal(&r, "x^2 + 1; x; y").is_unit().unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring(7);
        assert!(ideal(&r, "x; y").contains(&pf(&r, "x + y")).unwrap());
        assert!(!ideal(&r, "x^2").contains(&pf(&r, "x")).unwrap());
        let i = ideal(&r, "x - y^2; y^3 - 1");
        assert!(i.contains_with(&pf(&r, "x*y - 1"), MonomialOrder::Lex).unwrap());
        assert!(i.contains_with(&pf(&r, "x*y - 1"), MonomialOrder::Grevlex).unwrap());
        assert!(!i.contains(&pf(&r, "x - 1")).unwrap());
        assert!(Ideal::zero(&r).contains(&Polynomial::zero(&r)).unwrap());
        assert!(!Ideal::zero(&r).contains(&pf(&r, "1")).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(5);
        assert!(ideal(&r, "x; y").equals(&ideal(&r, "x; x + y")).unwrap());
        assert!(!ideal(&r, "x").equals(&ideal(&r, "x^2")).unwrap());
        assert!(ideal(&r, "x^2; x^2 + y^2").equals(&ideal(&r, "x^2; y^2")).unwrap());
        assert_eq!(ideal(&r, "x").equals(&ideal(&ring(7), "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn bracket_power_examples() {
        let r = ring(2);
        let a = ideal(&r, "x; y").bracket_power(1).unwrap();
        assert_eq!(a.to_string(), "(x^2, y^2)");
        let b = ideal(&r, "x; x + y").bracket_power(1).unwrap();
        assert!(b.equals(&a).unwrap());
        let r5 = ring(5);
        assert!(Ideal::unit(&r5).bracket_power(2).unwrap().is_unit().unwrap());
    }

    #[test]
    fn seeded_bracket_basis_matches_buchberger() {
        let r = ring(3);
        let i = ideal(&r, "x^2 - y; x*y + y^2 + 1; y^3 - x");
        let br = i.bracket_power(1).unwrap();
        let fresh = Ideal::new(&r, br.generators().to_vec()).unwrap();
        assert_eq!(
            br.groebner_basis(MonomialOrder::Grevlex).unwrap(),
            fresh.groebner_basis(MonomialOrder::Grevlex).unwrap()
        );
    }

    #[test]
    fn colength_examples() {
        let r = ring(7);
        assert_eq!(
            ideal(&r, "x^2; y^3").colength(MonomialOrder::Grevlex).unwrap(),
            Colength::Finite(6)
        );
        let i = ideal(&r, "x - y^2; y^3 - 1");
        assert_eq!(i.colength(MonomialOrder::Lex).unwrap(), Colength::Finite(3));
        assert_eq!(i.colength(MonomialOrder::Grevlex).unwrap(), Colength::Finite(3));
        assert_eq!(
            ideal(&r, "x^2 - y").colength(MonomialOrder::Grevlex).unwrap(),
            Colength::Infinite
        );
        assert_eq!(
            Ideal::unit(&r).colength(MonomialOrder::Grevlex).unwrap(),
            Colength::Finite(0)
        );
        assert_eq!(
            Ideal::zero(&r).colength(MonomialOrder::Grevlex).unwrap(),
            Colength::Infinite
        );
    }

    #[test]
    fn pair_cap() {
        let limits = Limits {
            max_pairs: 1,
            ..Limits::default()
        };
        let r = FpRing::with_limits(PrimeField(Prime::new(7).unwrap()), &["x", "y", "z"], limits).unwrap();
        let i = ideal(&r, "x^2 - y*z; y^2 - x*z; z^2 - x*y + x");
        assert!(matches!(
            i.groebner_basis(MonomialOrder::Grevlex),
            Err(Error::ResourceExceeded {
                resource: Resource::Pairs,
                ..
            })
        ));
    }

    #[test]
    fn concurrent_readers_share_one_basis() {
        let r = ring(5);
        let i = Arc::new(ideal(&r, "x^3 - y^2; x*y^2 - x + 1"));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let i = i.clone();
                std::thread::spawn(move || i.groebner_basis(MonomialOrder::Grevlex).unwrap())
            })
            .collect();
        let bases: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(bases.windows(2).all(|w| w[0] == w[1]));
    }

    fn reduced_invariants(basis: &[FpPoly], order: MonomialOrder) {
        for (i, g) in basis.iter().enumerate() {
            let lead = g.terms_by(order)[0];
            assert_eq!(*lead.1, 1, "monic");
            for (j, h) in basis.iter().enumerate() {
                if i == j {
                    continue;
                }
                let hl = h.terms_by(order)[0].0.clone();
                for (m, _) in g.terms() {
                    assert!(!hl.divides(m), "{h} lead divides a term of {g}");
                }
            }
        }
    }

    fn arb_gens(p: u64) -> impl Strategy<Value = Vec<Vec<((u32, u32), u64)>>> {
        prop::collection::vec(prop::collection::vec(((0u32..4, 0u32..4), 1..p), 1..4), 1..4)
    }

    fn build(r: &Arc<FpRing>, gens: &[Vec<((u32, u32), u64)>]) -> Vec<FpPoly> {
        gens.iter()
            .map(|ts| Polynomial::from_terms(r, ts.iter().map(|((a, b), c)| (Monomial::new(vec![*a, *b]), *c))))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn basis_is_reduced_and_canonical(gens in arb_gens(5), perm_seed in 0usize..24) {
            let r = ring(5);
            let g = build(&r, &gens);
            for order in MonomialOrder::ALL {
                let i = Ideal::new(&r, g.clone()).unwrap();
                let basis = i.groebner_basis(order).unwrap();
                reduced_invariants(&basis, order);
                for f in &g {
                    prop_assert!(i.contains_with(f, order).unwrap());
                }
                // Reordered, duplicated and extended by an ideal element: same basis.
                let mut shuffled = g.clone();
                shuffled.rotate_left(perm_seed % g.len());
                shuffled.push(g[0].clone());
                shuffled.push(&g[0] * &pf(&r, "x*y + 2"));
                let j = Ideal::new(&r, shuffled).unwrap();
                prop_assert_eq!(j.groebner_basis(order).unwrap(), basis);
            }
        }

        #[test]
        fn normal_form_is_idempotent(gens in arb_gens(7), f in prop::collection::vec(((0u32..6, 0u32..6), 1u64..7), 0..6)) {
            let r = ring(7);
            let i = Ideal::new(&r, build(&r, &gens)).unwrap();
            let f = build(&r, &[f])[0].clone();
            let nf = i.normal_form(&f, MonomialOrder::Grevlex).unwrap();
            prop_assert_eq!(i.normal_form(&nf, MonomialOrder::Grevlex).unwrap(), nf.clone());
            prop_assert!(i.contains(&(&f - &nf)).unwrap());
        }

        #[test]
        fn bracket_power_is_generator_independent(gens in arb_gens(3), e in 1u32..=2, c in 1u64..3) {
            let r = ring(3);
            let g = build(&r, &gens);
            let i = Ideal::new(&r, g.clone()).unwrap();
            // Row operation plus a redundant element.
            let mut changed = g.clone();
            if changed.len() > 1 {
                changed[0] = &changed[0] + &changed[1].scale(&c);
            }
            changed.push(&g[0] * &pf(&r, "y + 1"));
            let j = Ideal::new(&r, changed).unwrap();
            prop_assert!(i.equals(&j).unwrap());
            let bi = i.bracket_power(e).unwrap();
            let bj = j.bracket_power(e).unwrap();
            prop_assert!(bi.equals(&bj).unwrap());
            // Seeded basis agrees with a fresh Buchberger run.
            let fresh = Ideal::new(&r, bj.generators().to_vec()).unwrap();
            prop_assert_eq!(fresh.groebner_basis(MonomialOrder::Grevlex).unwrap(),
                            bj.groebner_basis(MonomialOrder::Grevlex).unwrap());
        }

        #[test]
        fn colength_of_monomial_ideals(mons in prop::collection::vec((0u32..6, 0u32..6), 1..5), a in 1u32..6, b in 1u32..6) {
            let r = ring(5);
            let mut gens: Vec<FpPoly> = mons.iter().map(|&(i, j)| Polynomial::monomial(&r, Monomial::new(vec![i, j]), 1)).collect();
            gens.push(Polynomial::monomial(&r, Monomial::new(vec![a, 0]), 1));
            gens.push(Polynomial::monomial(&r, Monomial::new(vec![0, b]), 1));
            let expected = (0..a).flat_map(|i| (0..b).map(move |j| (i, j)))
                .filter(|&(i, j)| !mons.iter().any(|&(u, v)| u <= i && v <= j))
                .count() as u64;
            let i = Ideal::new(&r, gens).unwrap();
            prop_assert_eq!(i.colength(MonomialOrder::Grevlex).unwrap(), Colength::Finite(expected));
            prop_assert_eq!(i.colength(MonomialOrder::Lex).unwrap(), Colength::Finite(expected));
        }
    }
}
