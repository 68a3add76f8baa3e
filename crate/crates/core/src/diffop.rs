//! Divided-power differential operators `D_{m,i}`.
//!
//! `D_{m,i}` is linear over the coefficients and the other variables and sends
//! `x_i^l` to `C(l, m) x_i^{l-m}`. The binomial is taken directly in the
//! coefficient domain, which keeps the operator defined over `F_p` where
//! `1/m!` is not. The residual functions return the difference of the two
//! sides of an identity, so a failure comes with its witness.

use crate::error::{Error, Result};
use crate::poly::{Coefficients, FpPoly, Monomial, Polynomial};

/// The operator `D_{m,i}`; `var` is a 0-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DividedPowerOp {
    pub order: u64,
    pub var: usize,
}

impl DividedPowerOp {
    pub fn new(order: u64, var: usize) -> Self {
        DividedPowerOp { order, var }
    }
}

fn check_var<C: Coefficients>(f: &Polynomial<C>, i: usize) -> Result<()> {
    if i < f.ring().nvars() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "variable index {i} out of range for {} variables",
            f.ring().nvars()
        )))
    }
}

pub fn divided_power<C: Coefficients>(f: &Polynomial<C>, op: DividedPowerOp) -> Result<Polynomial<C>> {
    check_var(f, op.var)?;
    if op.order == 0 {
        return Ok(f.clone());
    }
    let k = f.ring().coeffs().clone();
    Ok(f.map_terms(|m, c| {
        let a = m.exponents()[op.var] as u64;
        if a < op.order {
            return None;
        }
        let b = k.binomial(a, op.order);
        if k.is_zero(&b) {
            return None;
        }
        let mut exps = m.exponents().to_vec();
        exps[op.var] = (a - op.order) as u32;
        Some((Monomial::new(exps), k.mul(c, &b)))
    }))
}

pub fn partial_derivative<C: Coefficients>(f: &Polynomial<C>, i: usize) -> Result<Polynomial<C>> {
    divided_power(f, DividedPowerOp::new(1, i))
}

/// `D_{m,i}(fg) - Σ_{l=0}^{m} D_{l,i}(f) D_{m-l,i}(g)`.
pub fn leibniz_residual<C: Coefficients>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    m: u64,
    i: usize,
) -> Result<Polynomial<C>> {
    let lhs = divided_power(&f.try_mul(g)?, DividedPowerOp::new(m, i))?;
    let mut rhs = Polynomial::zero(f.ring());
    for l in 0..=m {
        let a = divided_power(f, DividedPowerOp::new(l, i))?;
        if a.is_zero() {
            continue;
        }
        let b = divided_power(g, DividedPowerOp::new(m - l, i))?;
        rhs = rhs.try_add(&a.try_mul(&b)?)?;
    }
    lhs.try_sub(&rhs)
}

/// `Σ_{l=0}^{m} (l - 1) D_{l,i}(f) D_{m-l,i}(f^{m-1})`, which vanishes for every
/// `f` and every `m >= 1`.
pub fn key_identity_residual<C: Coefficients>(f: &Polynomial<C>, m: u64, i: usize) -> Result<Polynomial<C>> {
    if m == 0 {
        return Err(Error::invalid("the operator order m must be at least 1"));
    }
    check_var(f, i)?;
    let k = f.ring().coeffs().clone();
    let power = f.pow(m - 1)?;
    let mut acc = Polynomial::zero(f.ring());
    for l in 0..=m {
        let weight = k.from_i64(l as i64 - 1);
        if k.is_zero(&weight) {
            continue;
        }
        let a = divided_power(f, DividedPowerOp::new(l, i))?;
        if a.is_zero() {
            continue;
        }
        let b = divided_power(&power, DividedPowerOp::new(m - l, i))?;
        acc = acc.try_add(&a.try_mul(&b)?.scale(&weight))?;
    }
    Ok(acc)
}

/// `D_{m,i}(D_{n,i}(f)) - C(m+n, m) D_{m+n,i}(f)`.
pub fn composition_residual<C: Coefficients>(f: &Polynomial<C>, m: u64, n: u64, i: usize) -> Result<Polynomial<C>> {
    let k = f.ring().coeffs().clone();
    let lhs = divided_power(&divided_power(f, DividedPowerOp::new(n, i))?, DividedPowerOp::new(m, i))?;
    let rhs = divided_power(f, DividedPowerOp::new(m + n, i))?.scale(&k.binomial(m + n, m));
    lhs.try_sub(&rhs)
}

/// `(f, ∂f/∂x_1, …, ∂f/∂x_n)`, unnormalized.
pub fn jacobian_generators<C: Coefficients>(f: &Polynomial<C>) -> Result<Vec<Polynomial<C>>> {
    if f.is_zero() {
        return Err(Error::invalid(
            "the Jacobian ideal of the zero polynomial is not defined here",
        ));
    }
    let mut gens = vec![f.clone()];
    for i in 0..f.ring().nvars() {
        gens.push(partial_derivative(f, i)?);
    }
    Ok(gens)
}

/// `D_{p^e,i}(f^{p^e}) - (∂f/∂x_i)^{p^e}` over `F_p`.
pub fn frobenius_derivative_residual(f: &FpPoly, e: u32, i: usize) -> Result<FpPoly> {
    let q = f.prime().power(e, f.ring().limits().max_pe)?;
    let lhs = divided_power(&f.frobenius_power(e)?, DividedPowerOp::new(q, i))?;
    let rhs = partial_derivative(f, i)?.frobenius_power(e)?;
    lhs.try_sub(&rhs)
}

/// `D_{m,i}(g^{p^e} f) - g^{p^e} D_{m,i}(f)` for `m < p^e`, the linearity of
/// low-order operators over the subring of `p^e`-th powers.
pub fn linearity_residual(f: &FpPoly, g: &FpPoly, m: u64, e: u32, i: usize) -> Result<FpPoly> {
    let q = f.prime().power(e, f.ring().limits().max_pe)?;
    if m >= q {
        return Err(Error::invalid(format!("operator order {m} is not below p^e = {q}")));
    }
    let gq = g.frobenius_power(e)?;
    let lhs = divided_power(&gq.try_mul(f)?, DividedPowerOp::new(m, i))?;
    let rhs = gq.try_mul(&divided_power(f, DividedPowerOp::new(m, i))?)?;
    lhs.try_sub(&rhs)
}
