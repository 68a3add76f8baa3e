//! Frobenius roots `I_e(·)` over `F_p`.
//!
//! Every `f` decomposes uniquely as `f = Σ_a g_a^{p^e} x^a` over exponent
//! vectors `a` with entries below `p^e`. Since each coefficient of `F_p` is its
//! own `p^e`-th root, `g_a` is read off term by term, and `I_e(f)` is the ideal
//! generated by the `g_a`: the smallest ideal whose `p^e`-th bracket power
//! contains `f`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::poly::{FpPoly, Monomial, Polynomial};

/// `f = Σ_a parts[a]^{p^e} · x^a`.
#[derive(Debug, Clone)]
pub struct RootDecomposition {
    pub e: u32,
    pub parts: BTreeMap<Monomial, FpPoly>,
}

impl RootDecomposition {
    /// Reassembles the decomposed polynomial.
    pub fn reconstruct(&self, like: &FpPoly) -> Result<FpPoly> {
        let mut acc = Polynomial::zero(like.ring());
        for (a, g) in &self.parts {
            acc = acc.try_add(&g.frobenius_power(self.e)?.mul_term(&1, a)?)?;
        }
        Ok(acc)
    }
}

pub fn pe_decompose(f: &FpPoly, e: u32) -> Result<RootDecomposition> {
    let q = f.prime().power(e, f.ring().limits().max_pe)? as u32;
    let mut buckets: BTreeMap<Monomial, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (quot, rem): (Vec<u32>, Vec<u32>) = m.exponents().iter().map(|&b| (b / q, b % q)).unzip();
        buckets
            .entry(Monomial::new(rem))
            .or_default()
            .push((Monomial::new(quot), *c));
    }
    let parts = buckets
        .into_iter()
        .map(|(a, ts)| (a, Polynomial::from_terms(f.ring(), ts)))
        .collect();
    Ok(RootDecomposition { e, parts })
}

/// `I_e(f)`, returned with its reduced grevlex basis as generators.
pub fn frobenius_root_poly(f: &FpPoly, e: u32) -> Result<Ideal> {
    let parts = pe_decompose(f, e)?.parts.into_values().collect();
    Ideal::new(f.ring(), parts)?.reduced()
}

/// How [`frobenius_root_power_with`] computes `I_e(f^a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootStrategy {
    /// Peel off one base-`p` digit of `a` per level; `f^a` is never expanded.
    #[default]
    DigitRecursion,
    /// Expand `f^a` and decompose it directly.
    DirectExpansion,
}

/// `I_e(f^a)` by the digit recursion.
pub fn frobenius_root_power(f: &FpPoly, a: u64, e: u32) -> Result<Ideal> {
    frobenius_root_power_with(f, a, e, RootStrategy::DigitRecursion)
}

pub fn frobenius_root_power_with(f: &FpPoly, a: u64, e: u32, strategy: RootStrategy) -> Result<Ideal> {
    match strategy {
        RootStrategy::DirectExpansion => frobenius_root_poly(&f.pow(a)?, e),
        RootStrategy::DigitRecursion => root_of_power_times(f, a, e, &Ideal::unit(f.ring())),
    }
}

/// `I_e(f^b · K)` for an ideal `K`.
///
/// With `b = p·b' + r` and `0 <= r < p`, `I_1(f^b g) = f^{b'} I_1(f^r g)`, and
/// `I_e = I_{e-1} ∘ I_1`, so each level consumes one digit of `b`.
fn root_of_power_times(f: &FpPoly, b: u64, e: u32, k: &Ideal) -> Result<Ideal> {
    let ring = f.ring();
    let p = f.prime().get();
    // Validates p^e against the cap even when the loop below exits early.
    f.prime().power(e, ring.limits().max_pe)?;
    let mut gens: Vec<FpPoly> = k.generators().to_vec();
    let mut b = b;
    for _ in 0..e {
        if gens.is_empty() {
            return Ok(Ideal::zero(ring));
        }
        let r = b % p;
        b /= p;
        let fr = f.pow(r)?;
        let mut parts = Vec::new();
        for g in &gens {
            parts.extend(pe_decompose(&fr.try_mul(g)?, 1)?.parts.into_values());
        }
        let level = Ideal::new(ring, parts)?.reduced()?;
        gens = level.generators().to_vec();
    }
    let fb = f.pow(b)?;
    let gens = gens.iter().map(|g| g.try_mul(&fb)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)?.reduced()
}

/// `I_e(J)` for a non-principal `J`: the sum of the roots of its generators.
pub fn frobenius_root_ideal(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let mut parts = Vec::new();
    for g in ideal.generators() {
        parts.extend(pe_decompose(g, e)?.parts.into_values());
    }
    Ideal::new(ideal.ring(), parts)?.reduced()
}
