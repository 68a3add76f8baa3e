//! Sparse multivariate polynomials over `F_p` or over the integers.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero coefficients,
//! tied to a shared [`PolyRing`] that fixes the coefficient domain, the
//! variable names and the resource caps. Prime-field coefficients are kept as
//! canonical residues `0..p`, so structural equality is equality of
//! polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{base_p_digits_u64, binom_mod_p_u64, binomial, Limits, Prime};
use crate::error::{Error, Resource, Result};

/// A coefficient domain: either a prime field or the integers. Methods take
/// `&self` because the domain (e.g. the prime) is runtime data.
#[allow(clippy::wrong_self_convention)]
pub trait Coefficients: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The image of `C(n, k)`.
    fn binomial(&self, n: u64, k: u64) -> Self::Elem;
    /// `Some(p)` for `F_p`, where every coefficient is its own `p`-th power.
    fn characteristic(&self) -> Option<Prime>;
    /// Sign and magnitude, for rendering.
    fn split_sign(&self, a: &Self::Elem) -> (bool, String);
    fn name(&self) -> String;
}

/// The prime field `F_p`, elements stored as residues `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField(pub Prime);

impl PrimeField {
    pub fn prime(&self) -> Prime {
        self.0
    }
}

impl Coefficients for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(*a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.0.sub(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.0.neg(*a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(*a, *b)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.0.reduce_bigint(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.0.reduce_i64(n)
    }
    fn binomial(&self, n: u64, k: u64) -> u64 {
        binom_mod_p_u64(n, k, self.0)
    }
    fn characteristic(&self) -> Option<Prime> {
        Some(self.0)
    }
    fn split_sign(&self, a: &u64) -> (bool, String) {
        (false, a.to_string())
    }
    fn name(&self) -> String {
        format!("F_{}", self.0)
    }
}

/// The integers, with arbitrary-precision coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Coefficients for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn binomial(&self, n: u64, k: u64) -> BigInt {
        BigInt::from(binomial(n, k))
    }
    fn characteristic(&self) -> Option<Prime> {
        None
    }
    fn split_sign(&self, a: &BigInt) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn name(&self) -> String {
        "Z".to_string()
    }
}

/// Exponent vector of a monomial; its length is the number of ring variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or_else(exponent_overflow)
    }

    /// Product, for exponents already known to be in range.
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale(&self, factor: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|&a| (a as u64).checked_mul(factor).and_then(|v| u32::try_from(v).ok()))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or_else(exponent_overflow)
    }
}

fn exponent_overflow() -> Error {
    Error::resource(Resource::Exponent, u32::MAX as u64, "monomial exponent overflow")
}

/// A monomial order on exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 2] = [MonomialOrder::Lex, MonomialOrder::Grevlex];

    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub(crate) fn index(self) -> usize {
        match self {
            MonomialOrder::Lex => 0,
            MonomialOrder::Grevlex => 1,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
        })
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            _ => Err(Error::invalid(format!("unknown monomial order `{s}`"))),
        }
    }
}

/// Coefficient domain plus ordered variable names.
#[derive(Debug, Clone)]
pub struct PolyRing<C: Coefficients> {
    coeffs: C,
    vars: Vec<String>,
    limits: Limits,
}

/// Rings compare by domain and variables; the caps do not take part.
impl<C: Coefficients> PartialEq for PolyRing<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.vars == other.vars
    }
}

impl<C: Coefficients> Eq for PolyRing<C> {}

pub type FpRing = PolyRing<PrimeField>;
pub type ZRing = PolyRing<Integers>;
pub type FpPoly = Polynomial<PrimeField>;
pub type ZPoly = Polynomial<Integers>;

impl<C: Coefficients> PolyRing<C> {
    pub fn new<S: AsRef<str>>(coeffs: C, vars: &[S]) -> Result<Arc<Self>> {
        Self::with_limits(coeffs, vars, Limits::default())
    }

    pub fn with_limits<S: AsRef<str>>(coeffs: C, vars: &[S], limits: Limits) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` is repeated")));
            }
        }
        if limits.max_terms == 0 || limits.max_pairs == 0 || limits.max_pe == 0 {
            return Err(Error::InvalidRing("resource caps must be positive".into()));
        }
        Ok(Arc::new(PolyRing { coeffs, vars, limits }))
    }

    pub fn coeffs(&self) -> &C {
        &self.coeffs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl FpRing {
    pub fn prime(&self) -> Prime {
        self.coeffs.0
    }

    /// `F_p[vars]` with default caps.
    pub fn fp<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<Self>> {
        PolyRing::new(PrimeField(Prime::new(p)?), vars)
    }
}

impl ZRing {
    pub fn integers<S: AsRef<str>>(vars: &[S]) -> Result<Arc<Self>> {
        PolyRing::new(Integers, vars)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial with coefficients in `C`.
#[derive(Clone)]
pub struct Polynomial<C: Coefficients> {
    ring: Arc<PolyRing<C>>,
    terms: BTreeMap<Monomial, C::Elem>,
}

impl<C: Coefficients> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<C: Coefficients> Eq for Polynomial<C> {}

impl<C: Coefficients> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.ring.coeffs.name(), self)
    }
}

impl<C: Coefficients> Polynomial<C> {
    pub fn zero(ring: &Arc<PolyRing<C>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing<C>>) -> Self {
        Self::constant(ring, ring.coeffs.one())
    }

    pub fn constant(ring: &Arc<PolyRing<C>>, c: C::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing<C>>, c: i64) -> Self {
        Self::constant(ring, ring.coeffs.from_i64(c))
    }

    /// The variable with index `i`.
    pub fn var(ring: &Arc<PolyRing<C>>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.coeffs.one())
    }

    pub fn monomial(ring: &Arc<PolyRing<C>>, m: Monomial, c: C::Elem) -> Self {
        assert_eq!(m.exponents().len(), ring.nvars(), "monomial length");
        let mut terms = BTreeMap::new();
        if !ring.coeffs.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Sums the given terms, dropping any that cancel.
    pub fn from_terms<I>(ring: &Arc<PolyRing<C>>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C::Elem)>,
    {
        let k = &ring.coeffs;
        let mut map: BTreeMap<Monomial, C::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ring.nvars(), "monomial length");
            accumulate(k, &mut map, m, c);
        }
        map.retain(|_, c| !k.is_zero(c));
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub(crate) fn from_map_unchecked(ring: &Arc<PolyRing<C>>, terms: BTreeMap<Monomial, C::Elem>) -> Self {
        debug_assert!(terms.values().all(|c| !ring.coeffs.is_zero(c)));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<C>> {
        &self.ring
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
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

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C::Elem)> {
        self.terms.iter()
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn terms_by(&self, order: MonomialOrder) -> Vec<(&Monomial, &C::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> C::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.coeffs.zero())
    }

    pub fn constant_term(&self) -> C::Elem {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let k = &self.ring.coeffs;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(k, &mut terms, m.clone(), c.clone());
        }
        terms.retain(|_, c| !k.is_zero(c));
        Ok(Self::from_map_unchecked(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let k = &self.ring.coeffs;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect();
        Self::from_map_unchecked(&self.ring, terms)
    }

    pub fn scale(&self, c: &C::Elem) -> Self {
        let k = &self.ring.coeffs;
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), k.mul(a, c)))
            .filter(|(_, a)| !k.is_zero(a))
            .collect();
        Self::from_map_unchecked(&self.ring, terms)
    }

    /// Multiplies by the single term `c · m`.
    pub fn mul_term(&self, c: &C::Elem, m: &Monomial) -> Result<Self> {
        let k = &self.ring.coeffs;
        let mut terms = BTreeMap::new();
        for (mm, a) in &self.terms {
            let v = k.mul(a, c);
            if !k.is_zero(&v) {
                terms.insert(mm.try_mul(m)?, v);
            }
        }
        Ok(Self::from_map_unchecked(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let predicted = predicted_product_terms(self, other);
        let cap = self.ring.limits.max_terms;
        if predicted > cap as u128 {
            return Err(Error::resource(
                Resource::Terms,
                cap,
                format!("product may have up to {predicted} terms"),
            ));
        }
        // Exponent overflow is impossible once the per-variable degree sums fit.
        for i in 0..self.ring.nvars() {
            (self.degree_in(i))
                .checked_add(other.degree_in(i))
                .ok_or_else(exponent_overflow)?;
        }
        let k = &self.ring.coeffs;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, C::Elem> = HashMap::with_capacity(large.terms.len() * 2);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul_unchecked(mb);
                let v = k.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(slot) => *slot = k.add(slot, &v),
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        Ok(Self::from_map_unchecked(&self.ring, terms))
    }

    /// `self^a`. Over `F_p` the exponent is split into base-`p` digits so that
    /// `f^a = Π (f^{d_i})^{p^i}`, each outer power being a cheap exponent scaling.
    pub fn pow(&self, a: u64) -> Result<Self> {
        if a == 0 {
            return Ok(Self::one(&self.ring));
        }
        match self.ring.coeffs.characteristic() {
            Some(p) if a >= p.get() => {
                let mut acc = Self::one(&self.ring);
                let mut scale = 1u64;
                for d in base_p_digits_u64(a, p) {
                    if d > 0 {
                        let part = self.pow_binary(d)?.scale_exponents(scale)?;
                        acc = acc.try_mul(&part)?;
                    }
                    scale = scale.saturating_mul(p.get());
                }
                Ok(acc)
            }
            _ => self.pow_binary(a),
        }
    }

    fn pow_binary(&self, mut a: u64) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while a > 0 {
            if a & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            a >>= 1;
            if a > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies every exponent by `factor`, keeping coefficients. Only a ring
    /// homomorphism image when coefficients are fixed by Frobenius.
    fn scale_exponents(&self, factor: u64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.scale(factor)?, c.clone());
        }
        Ok(Self::from_map_unchecked(&self.ring, terms))
    }

    /// Applies `op` to every term and sums the images.
    pub fn map_terms<F>(&self, mut op: F) -> Self
    where
        F: FnMut(&Monomial, &C::Elem) -> Option<(Monomial, C::Elem)>,
    {
        Self::from_terms(&self.ring, self.terms.iter().filter_map(|(m, c)| op(m, c)))
    }

    /// The same polynomial viewed in another ring with the same variables.
    pub fn with_ring(&self, ring: &Arc<PolyRing<C>>) -> Result<Self> {
        if **ring != *self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Self::from_map_unchecked(ring, self.terms.clone()))
    }
}

fn accumulate<C: Coefficients>(k: &C, map: &mut BTreeMap<Monomial, C::Elem>, m: Monomial, c: C::Elem) {
    match map.get_mut(&m) {
        Some(slot) => *slot = k.add(slot, &c),
        None => {
            map.insert(m, c);
        }
    }
}

/// Upper bound on the number of terms of `f·g`: the smaller of `|f|·|g|` and
/// the number of monomials in the exponent box of the product.
fn predicted_product_terms<C: Coefficients>(f: &Polynomial<C>, g: &Polynomial<C>) -> u128 {
    let pairs = f.terms.len() as u128 * g.terms.len() as u128;
    let mut boxed: u128 = 1;
    for i in 0..f.ring.nvars() {
        let side = f.degree_in(i) as u128 + g.degree_in(i) as u128 + 1;
        boxed = boxed.saturating_mul(side);
    }
    pairs.min(boxed)
}

impl FpPoly {
    pub fn prime(&self) -> Prime {
        self.ring.prime()
    }

    /// `f^{p^e}`: exponents scaled by `p^e`, coefficients unchanged since `c^p = c` in `F_p`.
    pub fn frobenius_power(&self, e: u32) -> Result<Self> {
        let q = self.prime().power(e, self.ring.limits.max_pe)?;
        self.scale_exponents(q)
    }

    /// Multiplies by the inverse of the coefficient of the given monomial.
    pub(crate) fn leading_coefficient_by(&self, order: MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, c)| (m, *c))
    }

    /// The same polynomial with its leading coefficient (under `order`) set to 1.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_coefficient_by(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.prime().inv(c)),
        }
    }
}

impl ZPoly {
    /// Coefficientwise reduction into `F_p[vars]`.
    pub fn reduce_mod_p(&self, p: Prime) -> FpPoly {
        let ring = PolyRing::with_limits(PrimeField(p), &self.ring.vars, self.ring.limits)
            .expect("variables already validated");
        self.reduce_into(&ring).expect("same variables")
    }

    /// Coefficientwise reduction into an existing `F_p` ring with the same variables.
    pub fn reduce_into(&self, ring: &Arc<FpRing>) -> Result<FpPoly> {
        if ring.vars != self.ring.vars {
            return Err(Error::RingMismatch);
        }
        let p = ring.prime();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), p.reduce_bigint(c)))
            .filter(|(_, c)| *c != 0)
            .collect();
        Ok(Polynomial::from_map_unchecked(ring, terms))
    }
}

impl<C: Coefficients> fmt::Display for Polynomial<C> {
    /// Terms from largest to smallest in grevlex, e.g. `x^2*y + 4*y^3 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let k = &self.ring.coeffs;
        for (idx, (m, c)) in self.terms_by(MonomialOrder::Grevlex).into_iter().enumerate() {
            let (negative, magnitude) = k.split_sign(c);
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = render_monomial(m, &self.ring.vars);
            match (magnitude == "1", mono.is_empty()) {
                (_, true) => f.write_str(&magnitude)?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "{magnitude}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, v) in m.exponents().iter().zip(vars) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl<C: Coefficients> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl<C: Coefficients> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

/// Panics on ring mismatch or when a resource cap is exceeded; library code
/// uses [`Polynomial::try_mul`].
impl<C: Coefficients> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("polynomial product failed")
    }
}

impl<C: Coefficients> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.negate()
    }
}

/// Coefficient of a natural-number literal, for parsers and generators.
pub(crate) fn coefficient_from_natural<C: Coefficients>(k: &C, n: &BigUint) -> C::Elem {
    k.from_bigint(&BigInt::from(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> Arc<FpRing> {
        FpRing::fp(p, &["x", "y"]).unwrap()
    }

    fn xy<C: Coefficients>(ring: &Arc<PolyRing<C>>) -> (Polynomial<C>, Polynomial<C>) {
        (Polynomial::var(ring, 0), Polynomial::var(ring, 1))
    }

    #[test]
    fn ring_validation() {
        assert!(FpRing::fp(4, &["x"]).is_err());
        assert!(FpRing::fp(5, &[] as &[&str]).is_err());
        assert!(FpRing::fp(5, &["x", "x"]).is_err());
        assert!(FpRing::fp(5, &["1x"]).is_err());
        assert!(FpRing::fp(5, &["alpha", "b_2"]).is_ok());
    }

    #[test]
    fn characteristic_two_addition() {
        let r = fp(2);
        let (x, y) = xy(&r);
        let s = &x + &y;
        assert!((&s + &s).is_zero());
        assert_eq!(&s + &Polynomial::zero(&r), s);
    }

    #[test]
    fn scalar_reduction() {
        let r = fp(5);
        let x = Polynomial::var(&r, 0);
        let two_x = x.scale(&2);
        assert_eq!(two_x.scale(&3), x);
    }

    #[test]
    fn products() {
        let r = fp(2);
        let (x, y) = xy(&r);
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));
        assert_eq!(&s * &Polynomial::one(&r), s);

        let r3 = fp(3);
        let (x, _) = xy(&r3);
        let one = Polynomial::one(&r3);
        let prod = &(&x + &one) * &(&x - &one);
        assert_eq!(prod.to_string(), "x^2 + 2");
    }

    #[test]
    fn power_expansion() {
        let r = fp(5);
        let (x, y) = xy(&r);
        let f = &(&x * &x) + &(&(&y * &y) * &y);
        assert_eq!(f.pow(0).unwrap(), Polynomial::one(&r));
        assert_eq!(
            f.pow(4).unwrap().to_string(),
            "y^12 + 4*x^2*y^9 + x^4*y^6 + 4*x^6*y^3 + x^8"
        );
        let r2 = fp(2);
        let x = Polynomial::var(&r2, 0);
        let x7 = Polynomial::monomial(&r2, Monomial::new(vec![7, 0]), 1);
        assert_eq!(x.pow(7).unwrap(), x7);
    }

    #[test]
    fn frobenius_examples() {
        let r = fp(2);
        let (x, y) = xy(&r);
        assert_eq!((&x + &y).frobenius_power(1).unwrap().to_string(), "x^2 + y^2");
        let r3 = fp(3);
        assert_eq!(Polynomial::var(&r3, 0).frobenius_power(2).unwrap().to_string(), "x^9");
        let r5 = fp(5);
        let f = &Polynomial::var(&r5, 0).scale(&2) + &Polynomial::one(&r5);
        let fr = f.frobenius_power(1).unwrap();
        assert_eq!(fr.to_string(), "2*x^5 + 1");
        assert_eq!(fr, f.pow(5).unwrap());
    }

    #[test]
    fn mod_p_reduction() {
        let z = ZRing::integers(&["x"]).unwrap();
        let x = Polynomial::var(&z, 0);
        let c = |n| Polynomial::from_i64(&z, n);
        let p = |n| Prime::new(n).unwrap();
        assert!((&x.scale(&6.into()) + &c(3)).reduce_mod_p(p(3)).is_zero());
        assert_eq!(x.negate().reduce_mod_p(p(5)).to_string(), "4*x");
        let f = &(&x * &x).scale(&15.into()) + &c(7);
        assert_eq!(f.reduce_mod_p(p(7)).to_string(), "x^2");
    }

    #[test]
    fn integer_rendering() {
        let z = ZRing::integers(&["x", "y"]).unwrap();
        let (x, y) = xy(&z);
        let f = &(&x * &x).negate() + &y.scale(&BigInt::from(-3));
        assert_eq!(f.to_string(), "-x^2 - 3*y");
        assert_eq!(Polynomial::from_i64(&z, -4).to_string(), "-4");
    }

    #[test]
    fn grevlex_rendering_order() {
        let r = fp(5);
        let (x, y) = xy(&r);
        let f = &(&(&x * &x) * &y) + &(&(&(&y * &y) * &y).scale(&4) + &Polynomial::one(&r));
        assert_eq!(f.to_string(), "x^2*y + 4*y^3 + 1");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&fp(5), 0);
        let b = Polynomial::var(&fp(7), 0);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
        // Structurally equal rings interoperate.
        assert!(a.try_add(&Polynomial::var(&fp(5), 1)).is_ok());
    }

    #[test]
    fn term_cap() {
        let limits = Limits {
            max_terms: 50,
            ..Limits::default()
        };
        let r = PolyRing::with_limits(PrimeField(Prime::new(101).unwrap()), &["x", "y", "z"], limits).unwrap();
        let f = Polynomial::from_terms(
            &r,
            (0..3).map(|i| (Monomial::var(3, i), 1)).chain([(Monomial::one(3), 1)]),
        );
        assert!(matches!(
            f.pow(10),
            Err(Error::ResourceExceeded {
                resource: Resource::Terms,
                ..
            })
        ));
    }

    #[test]
    fn monomial_orders() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        use MonomialOrder::*;
        assert_eq!(Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(Grevlex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Less);
        assert_eq!(Grevlex.cmp(&m(&[2, 1]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(Grevlex.cmp(&m(&[1, 1, 0]), &m(&[2, 0, 0])), Ordering::Less);
    }

    fn arb_fp_poly(ring: Arc<FpRing>) -> impl Strategy<Value = FpPoly> {
        let p = ring.prime().get();
        prop::collection::vec(((0u32..5, 0u32..5), 0..p), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(&ring, ts.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), c)))
        })
    }

    fn arb_z_poly(ring: Arc<ZRing>) -> impl Strategy<Value = ZPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -20i64..20), 0..6).prop_map(move |ts| {
            Polynomial::from_terms(
                &ring,
                ts.into_iter()
                    .map(|((a, b), c)| (Monomial::new(vec![a, b]), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_fp(f in arb_fp_poly(fp(7)), g in arb_fp_poly(fp(7)), h in arb_fp_poly(fp(7))) {
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn frobenius_matches_power(f in arb_fp_poly(fp(3)), e in 0u32..3) {
            let q = 3u64.pow(e);
            prop_assert_eq!(f.frobenius_power(e).unwrap(), f.pow(q).unwrap());
        }

        #[test]
        fn digit_power_matches_repeated_product(f in arb_fp_poly(fp(2)), a in 0u64..12) {
            let mut acc = Polynomial::one(f.ring());
            for _ in 0..a {
                acc = &acc * &f;
            }
            prop_assert_eq!(f.pow(a).unwrap(), acc);
        }

        #[test]
        fn reduction_is_a_homomorphism(f in arb_z_poly(ZRing::integers(&["x", "y"]).unwrap()),
                                       g in arb_z_poly(ZRing::integers(&["x", "y"]).unwrap()),
                                       q in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let p = Prime::new(q).unwrap();
            prop_assert_eq!((&f * &g).reduce_mod_p(p), &f.reduce_mod_p(p) * &g.reduce_mod_p(p));
            prop_assert_eq!((&f + &g).reduce_mod_p(p), &f.reduce_mod_p(p) + &g.reduce_mod_p(p));
        }
    }
}
