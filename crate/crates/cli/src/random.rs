//! Seeded random polynomials for the property suites.

use std::sync::Arc;

use fjump_core::{Coefficients, Monomial, PolyRing, Polynomial};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest absolute value of an integer coefficient.
pub const INTEGER_COEFFICIENT_BOUND: i64 = 9;

/// The generator behind every randomized run.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monomials of total degree at most `degree` in `nvars` variables, in a fixed order.
pub fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Between 1 and `term_bound` distinct monomials of degree at most
/// `degree_bound`, chosen uniformly, with uniformly random nonzero
/// coefficients. Zero only when `term_bound == 0`.
pub fn random_polynomial<C, R>(
    rng: &mut R,
    ring: &Arc<PolyRing<C>>,
    degree_bound: u32,
    term_bound: usize,
) -> Polynomial<C>
where
    C: Coefficients,
    R: Rng + ?Sized,
{
    if term_bound == 0 {
        return Polynomial::zero(ring);
    }
    let monos = monomials_up_to(ring.nvars(), degree_bound);
    let count = rng.random_range(1..=term_bound.min(monos.len()));
    let k = ring.coeffs();
    let terms: Vec<_> = index::sample(rng, monos.len(), count)
        .into_iter()
        .map(|idx| {
            let c = match k.characteristic() {
                Some(p) => rng.random_range(1..p.get()) as i64,
                None => {
                    let c = rng.random_range(1..=INTEGER_COEFFICIENT_BOUND);
                    if rng.random_bool(0.5) {
                        -c
                    } else {
                        c
                    }
                }
            };
            (monos[idx].clone(), k.from_i64(c))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}
