//! Exact integer, rational and mod-p combinatorial arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Resource, Result};

pub use num_bigint::BigUint as Natural;

/// Exact fraction with a positive denominator in lowest terms.
pub type Rational = num_rational::BigRational;

/// Primes are kept below 2^31 so that a product of two residues fits in a `u64`.
const PRIME_BOUND: u64 = 1 << 31;

/// A verified prime `p`, the characteristic of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= PRIME_BOUND || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Residue of `a` in `0..p`.
    #[inline]
    pub fn reduce_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    pub fn reduce_bigint(self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        a.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero mod {}", self.0);
        self.pow(a, self.0 - 2)
    }

    /// `p^e`, refusing results above `max_pe`.
    pub fn power(self, e: u32, max_pe: u64) -> Result<u64> {
        let q = BigUint::from(self.0).pow(e);
        match q.to_u64() {
            Some(q) if q <= max_pe => Ok(q),
            _ => Err(Error::resource(
                Resource::Exponent,
                max_pe,
                format!("{}^{} is too large", self.0, e),
            )),
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Prime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("`{s}` is not a natural number")))?;
        Prime::new(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Configured caps that turn runaway computations into [`Error::ResourceExceeded`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_terms: u64,
    pub max_pairs: u64,
    pub max_pe: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 1 << 22,
            max_pairs: 1 << 20,
            max_pe: 1 << 20,
        }
    }
}

/// Base-`p` digits of `a`, least significant first. Empty for zero.
pub fn base_p_digits(a: &Natural, p: Prime) -> Vec<u64> {
    let base = BigUint::from(p.get());
    let mut digits = Vec::new();
    let mut rest = a.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&base);
        digits.push(r.to_u64().expect("digit below p"));
        rest = q;
    }
    digits
}

/// Same as [`base_p_digits`] for machine-sized input.
pub fn base_p_digits_u64(mut a: u64, p: Prime) -> Vec<u64> {
    let mut digits = Vec::new();
    while a > 0 {
        digits.push(a % p.get());
        a /= p.get();
    }
    digits
}

/// `C(n, k) mod p` by Lucas' theorem: the product of digitwise binomials.
pub fn binom_mod_p(n: &Natural, k: &Natural, p: Prime) -> u64 {
    if k > n {
        return 0;
    }
    let nd = base_p_digits(n, p);
    let kd = base_p_digits(k, p);
    lucas_product(&nd, &kd, p)
}

pub fn binom_mod_p_u64(n: u64, k: u64, p: Prime) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1 % p.get();
    let (mut n, mut k) = (n, k);
    while k > 0 {
        let (ni, ki) = (n % p.get(), k % p.get());
        if ki > ni {
            return 0;
        }
        acc = p.mul(acc, small_binom_mod(ni, ki, p));
        n /= p.get();
        k /= p.get();
    }
    acc
}

fn lucas_product(nd: &[u64], kd: &[u64], p: Prime) -> u64 {
    let mut acc = 1 % p.get();
    for (i, &ki) in kd.iter().enumerate() {
        let ni = nd.get(i).copied().unwrap_or(0);
        if ki > ni {
            return 0;
        }
        acc = p.mul(acc, small_binom_mod(ni, ki, p));
    }
    acc
}

/// `C(n, k) mod p` for `k <= n < p`, where the factorials are invertible.
fn small_binom_mod(n: u64, k: u64, p: Prime) -> u64 {
    let k = k.min(n - k);
    let mut num = 1 % p.get();
    let mut den = 1 % p.get();
    for j in 0..k {
        num = p.mul(num, (n - j) % p.get());
        den = p.mul(den, (j + 1) % p.get());
    }
    p.mul(num, p.inv(den))
}

/// Exact `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `⌈t · p^e⌉` computed exactly.
pub fn ceil_scale(t: &Rational, p: Prime, e: u32) -> Result<Natural> {
    if t.is_negative() {
        return Err(Error::invalid(format!("exponent {} is negative", format_rational(t))));
    }
    let scaled = t * BigInt::from(BigUint::from(p.get()).pow(e));
    Ok(scaled.ceil().to_integer().to_biguint().expect("nonnegative"))
}

/// `num/den`, always with an explicit denominator.
pub fn format_rational(t: &Rational) -> String {
    format!("{}/{}", t.numer(), t.denom())
}

/// Accepts `a/b` or a bare integer, with an optional leading minus.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("`{s}` is not a rational number"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// The simplest fraction (least denominator, then least numerator) in the
/// half-open interval `(lo, hi]`, found by Stern–Brocot descent. Gives up once
/// the mediant denominator exceeds `max_den`.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational, max_den: u64) -> Option<Rational> {
    if lo >= hi || hi.is_negative() {
        return None;
    }
    if lo.is_negative() {
        return Some(Rational::zero());
    }
    let contains = |x: &Rational| lo < x && x <= hi;
    // Left and right ancestors as (numerator, denominator); right starts at 1/0.
    // Every step grows the mediant denominator except right moves while the
    // right ancestor is 1/0, and those stop once the mediant exceeds `hi`.
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::zero());
    let max_den = BigInt::from(max_den);
    loop {
        let (mn, md) = (&ln + &rn, &ld + &rd);
        if md > max_den {
            return None;
        }
        let m = Rational::new(mn.clone(), md.clone());
        if contains(&m) {
            return Some(m);
        }
        if &m <= lo {
            (ln, ld) = (mn, md);
        } else {
            (rn, rd) = (mn, md);
        }
    }
}

/// All fractions in `(lo, hi]` with denominator at most `max_den`, ordered by
/// denominator and then numerator.
pub fn fractions_in_interval(lo: &Rational, hi: &Rational, max_den: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    for d in 1..=max_den {
        let dd = BigInt::from(d);
        // smallest n with n/d > lo
        let lo_scaled = lo * Rational::from_integer(dd.clone());
        let mut n = lo_scaled.floor().to_integer() + BigInt::one();
        loop {
            let x = Rational::new(n.clone(), dd.clone());
            if &x > hi {
                break;
            }
            if x.denom() == &dd {
                out.push(x);
            }
            n += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(7919).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert!("5".parse::<Prime>().is_ok());
        assert!("x".parse::<Prime>().is_err());
    }

    #[test]
    fn digits() {
        assert_eq!(base_p_digits(&11u32.into(), p(2)), vec![1, 1, 0, 1]);
        assert!(base_p_digits(&0u32.into(), p(5)).is_empty());
        assert_eq!(base_p_digits(&5u32.into(), p(5)), vec![0, 1]);
        assert_eq!(base_p_digits_u64(11, p(2)), vec![1, 1, 0, 1]);
    }

    #[test]
    fn lucas_examples() {
        let n = |v: u32| Natural::from(v);
        assert_eq!(binom_mod_p(&n(6), &n(2), p(2)), 1);
        assert_eq!(binom_mod_p(&n(6), &n(3), p(3)), 2);
        assert_eq!(binom_mod_p(&n(17), &n(0), p(7)), 1);
        assert_eq!(binom_mod_p(&n(3), &n(5), p(7)), 0);
        assert_eq!(binom_mod_p_u64(6, 3, p(3)), 2);
    }

    #[test]
    fn ceil_scale_examples() {
        assert_eq!(ceil_scale(&r(5, 6), p(7), 1).unwrap(), Natural::from(6u32));
        assert_eq!(ceil_scale(&r(1, 1), p(3), 4).unwrap(), Natural::from(81u32));
        assert_eq!(ceil_scale(&r(4, 5), p(5), 2).unwrap(), Natural::from(20u32));
        assert!(ceil_scale(&r(-1, 2), p(5), 1).is_err());
    }

    #[test]
    fn prime_power_guard() {
        assert_eq!(p(5).power(2, 1 << 20).unwrap(), 25);
        assert!(matches!(
            p(2).power(21, 1 << 20),
            Err(Error::ResourceExceeded {
                resource: Resource::Exponent,
                ..
            })
        ));
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&r(1, 1)), "1/1");
        assert_eq!(format_rational(&r(10, 12)), "5/6");
        assert_eq!(parse_rational("4/5").unwrap(), r(4, 5));
        assert_eq!(parse_rational(" 3 ").unwrap(), r(3, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn simplest_examples() {
        assert_eq!(simplest_in_interval(&r(3, 5), &r(4, 5), 64), Some(r(2, 3)));
        assert_eq!(simplest_in_interval(&r(99, 125), &r(100, 125), 64), Some(r(4, 5)));
        assert_eq!(simplest_in_interval(&r(12, 25), &r(13, 25), 64), Some(r(1, 2)));
        assert_eq!(simplest_in_interval(&r(24, 25), &r(1, 1), 64), Some(r(1, 1)));
        assert_eq!(simplest_in_interval(&r(0, 1), &r(1, 1000), 64), None);
        assert_eq!(simplest_in_interval(&r(0, 1), &r(1, 1000), 1000), Some(r(1, 1000)));
        assert_eq!(simplest_in_interval(&r(1, 2), &r(1, 2), 64), None);
    }

    /// Exact binomial through factorials, independent of Lucas.
    fn factorial_binom(n: u64, k: u64) -> Natural {
        if k > n {
            return Natural::zero();
        }
        let fact = |m: u64| (1..=m).fold(Natural::one(), |acc, j| acc * j);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn lucas_matches_exact_binomials() {
        for &q in &[2u64, 3, 5, 7] {
            for n in 0..=200u64 {
                for k in 0..=n + 1 {
                    let exact = (factorial_binom(n, k) % q).to_u64().unwrap();
                    assert_eq!(binom_mod_p_u64(n, k, p(q)), exact, "C({n},{k}) mod {q}");
                }
            }
        }
        assert_eq!(binomial(200, 100), factorial_binom(200, 100));
    }

    #[test]
    fn ceil_scale_bounds() {
        for &q in &[2u64, 3, 5] {
            let prime = p(q);
            let mut e = 0;
            while q.pow(e) <= 3125 {
                for b in 1..=64i64 {
                    for a in 0..=2 * b {
                        let t = r(a, b);
                        let c = BigInt::from(ceil_scale(&t, prime, e).unwrap());
                        let scaled = &t * Rational::from_integer(BigInt::from(q.pow(e)));
                        assert!(Rational::from_integer(&c - 1) < scaled);
                        assert!(scaled <= Rational::from_integer(c));
                    }
                }
                e += 1;
            }
        }
    }

    /// Brute-force simplest fraction by scanning denominators.
    fn brute_simplest(lo: &Rational, hi: &Rational, max_den: u64) -> Option<Rational> {
        fractions_in_interval(lo, hi, max_den).into_iter().next()
    }

    proptest! {
        #[test]
        fn digits_round_trip(a in 0u64..1_000_000, q in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
            let d = base_p_digits(&Natural::from(a), p(q));
            prop_assert!(d.iter().all(|&x| x < q));
            prop_assert!(d.last().is_none_or(|&x| x != 0));
            let back = d.iter().rev().fold(0u64, |acc, &x| acc * q + x);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn stern_brocot_matches_scan(a in 0i64..200, w in 1i64..40, d in 1i64..200) {
            let lo = r(a, d);
            let hi = r(a + w, d);
            prop_assert_eq!(simplest_in_interval(&lo, &hi, 64), brute_simplest(&lo, &hi, 64));
        }
    }
}
