//! Test ideals `τ(f^t)`, ν-invariants, F-pure thresholds and F-jumping
//! coefficients of a principal ideal, plus the checks relating them to the
//! Jacobian ideal.
//!
//! For a principal ideal, `τ(f^{a/p^e}) = I_e(f^a)`, so at a fixed level `e`
//! the chain `a ↦ I_e(f^a)`, `a = 0..=p^e`, is descending and each strict drop
//! between `a-1` and `a` locates at least one jumping coefficient in
//! `((a-1)/p^e, a/p^e]`. Jumping coefficients off the `p`-adic grid are
//! reported as such intervals together with a small-denominator candidate.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{ceil_scale, fractions_in_interval, simplest_in_interval, Rational};
use crate::diffop::jacobian_generators;
use crate::error::{Error, Resource, Result};
use crate::frobenius::frobenius_root_power;
use crate::groebner::{Colength, Ideal};
use crate::poly::{FpPoly, Monomial, MonomialOrder, Polynomial};

/// Default largest denominator searched for candidates.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 64;
/// Default number of consecutive equal levels that certifies a test ideal.
pub const DEFAULT_STABLE_LEVELS: u32 = 2;

/// Half-open rational interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    /// `((a-1)/q, a/q]`.
    pub fn grid(a: u64, q: u64) -> Self {
        let r = |n: u64| Rational::new(BigInt::from(n), BigInt::from(q));
        Interval::new(r(a - 1), r(a))
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo < t && t <= &self.hi
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

fn rational(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn require_nonzero(f: &FpPoly) -> Result<()> {
    if f.is_zero() {
        Err(Error::invalid("the polynomial must be nonzero"))
    } else {
        Ok(())
    }
}

fn require_nonunit(f: &FpPoly) -> Result<()> {
    require_nonzero(f)?;
    if f.is_constant() {
        Err(Error::invalid("the polynomial must not be a unit"))
    } else {
        Ok(())
    }
}

/// `max { r : f^r ∉ J^{[p^e]} }`.
#[derive(Debug, Clone)]
pub struct NuValue {
    pub f: FpPoly,
    pub e: u32,
    pub ideal: Ideal,
    pub value: u64,
}

/// ν for the given level. `ideal = None` means the maximal ideal of the
/// origin, which is decided from the support of truncated powers of `f`.
pub fn nu_value(f: &FpPoly, e: u32, ideal: Option<&Ideal>) -> Result<NuValue> {
    let values = nu_sequence(f, e, ideal)?;
    Ok(NuValue {
        f: f.clone(),
        e,
        ideal: ideal.cloned().unwrap_or_else(|| Ideal::maximal(f.ring())),
        value: values[e as usize],
    })
}

/// `ν(p^0), ν(p^1), …, ν(p^{e_max})`.
///
/// Uses `p·ν(p^{e-1}) <= ν(p^e) < p·(ν(p^{e-1}) + 1)`, which follows from
/// flatness of Frobenius, so each level needs at most `p` membership tests.
pub fn nu_sequence(f: &FpPoly, e_max: u32, ideal: Option<&Ideal>) -> Result<Vec<u64>> {
    require_nonunit(f)?;
    f.prime().power(e_max, f.ring().limits().max_pe)?;
    match ideal {
        None => nu_sequence_maximal(f, e_max),
        Some(j) => nu_sequence_general(f, e_max, j),
    }
}

fn nu_sequence_maximal(f: &FpPoly, e_max: u32) -> Result<Vec<u64>> {
    if f.constant_term() != 0 {
        return Err(Error::invalid(format!(
            "{f} does not vanish at the origin; translate coordinates so the point of interest is 0"
        )));
    }
    let p = f.prime().get();
    let mut nus = vec![0u64];
    // f^{ν} truncated to exponents below the current p^e.
    let mut power = Polynomial::one(f.ring());
    let mut q = 1u64;
    for _ in 1..=e_max {
        q *= p;
        let mut r = p * nus.last().unwrap();
        power = power.frobenius_power(1)?;
        loop {
            let next = truncated_product(&power, f, q)?;
            if next.is_zero() {
                break;
            }
            power = next;
            r += 1;
        }
        nus.push(r);
    }
    Ok(nus)
}

/// `g·f` with every term having an exponent `>= q` dropped, i.e. the product
/// modulo `(x_1^q, …, x_n^q)`.
fn truncated_product(g: &FpPoly, f: &FpPoly, q: u64) -> Result<FpPoly> {
    let p = f.prime();
    let mut acc: HashMap<Monomial, u64> = HashMap::new();
    for (mg, cg) in g.terms() {
        for (mf, cf) in f.terms() {
            let m = mg.try_mul(mf)?;
            if m.exponents().iter().any(|&a| a as u64 >= q) {
                continue;
            }
            let slot = acc.entry(m).or_insert(0);
            *slot = p.add(*slot, p.mul(*cg, *cf));
        }
    }
    if acc.len() as u64 > f.ring().limits().max_terms {
        return Err(Error::resource(
            Resource::Terms,
            f.ring().limits().max_terms,
            "truncated power",
        ));
    }
    Ok(Polynomial::from_terms(f.ring(), acc))
}

fn nu_sequence_general(f: &FpPoly, e_max: u32, j: &Ideal) -> Result<Vec<u64>> {
    if j.is_unit()? {
        return Err(Error::invalid("the base ideal must be proper"));
    }
    let p = f.prime().get();
    let cap = f.ring().limits().max_pe;
    // ν(1): the last r with f^r ∉ J; bounded only when f lies in the radical.
    let mut nu0 = 0u64;
    let mut power = f.clone();
    while !j.contains(&power)? {
        nu0 += 1;
        if nu0 > cap {
            return Err(Error::resource(
                Resource::Exponent,
                cap,
                "no power of f lies in the base ideal",
            ));
        }
        power = power.try_mul(f)?;
    }
    let mut nus = vec![nu0];
    for e in 1..=e_max {
        let prev = *nus.last().unwrap();
        // f^lo ∉ J^{[p^e]} and f^hi ∈ J^{[p^e]}.
        let (mut lo, mut hi) = (p * prev, p * (prev + 1));
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if j.contains_ideal(&frobenius_root_power(f, mid, e)?)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        nus.push(lo);
    }
    Ok(nus)
}

/// `τ(f^t)` approximated by `I_e(f^{⌈t p^e⌉})` for increasing `e`.
#[derive(Debug, Clone)]
pub struct TestIdealResult {
    pub t: Rational,
    pub e_used: u32,
    pub ideal: Ideal,
    /// The ideal was unchanged over the required number of consecutive levels.
    pub certified: bool,
    /// `I_e(f^{⌈t p^e⌉})` for `e = 1..=e_used`; ascending.
    pub levels: Vec<Ideal>,
}

pub fn test_ideal(f: &FpPoly, t: &Rational, e_max: u32) -> Result<TestIdealResult> {
    test_ideal_with(f, t, e_max, DEFAULT_STABLE_LEVELS)
}

pub fn test_ideal_with(f: &FpPoly, t: &Rational, e_max: u32, stable_levels: u32) -> Result<TestIdealResult> {
    require_nonzero(f)?;
    let p = f.prime();
    if t.is_zero() {
        return Ok(TestIdealResult {
            t: t.clone(),
            e_used: 0,
            ideal: Ideal::unit(f.ring()),
            certified: true,
            levels: Vec::new(),
        });
    }
    let mut levels: Vec<Ideal> = Vec::new();
    let mut run = 0u32;
    let mut certified = false;
    for e in 1..=e_max {
        p.power(e, f.ring().limits().max_pe)?;
        let a = ceil_scale(t, p, e)?;
        let a = a
            .to_u64()
            .ok_or_else(|| Error::resource(Resource::Exponent, f.ring().limits().max_pe, "power of f"))?;
        let ideal = frobenius_root_power(f, a, e)?;
        run = match levels.last() {
            Some(prev) if prev.equals(&ideal)? => run + 1,
            _ => 1,
        };
        levels.push(ideal);
        if run >= stable_levels.max(1) {
            certified = true;
            break;
        }
    }
    let ideal = levels
        .last()
        .cloned()
        .ok_or_else(|| Error::invalid("e_max must be at least 1"))?;
    Ok(TestIdealResult {
        t: t.clone(),
        e_used: levels.len() as u32,
        ideal,
        certified,
        levels,
    })
}

/// `τ(f^{1 - 1/p^e}) = I_e(f^{p^e - 1})`.
pub fn tau_one_minus(f: &FpPoly, e: u32) -> Result<Ideal> {
    require_nonzero(f)?;
    let q = f.prime().power(e, f.ring().limits().max_pe)?;
    frobenius_root_power(f, q - 1, e)
}

/// Nested bounds on the F-pure threshold at the origin.
#[derive(Debug, Clone)]
pub struct FptEstimate {
    /// `ν(p^e)` for `e = 1..=e_max`.
    pub nus: Vec<u64>,
    /// `(ν/p^e, (ν+1)/p^e]` for `e = 1..=e_max`; each contains the next.
    pub intervals: Vec<Interval>,
    pub candidate: Option<Rational>,
}

pub fn fpt_estimate(f: &FpPoly, e_max: u32, max_den: u64) -> Result<FptEstimate> {
    if e_max == 0 {
        return Err(Error::invalid("e_max must be at least 1"));
    }
    let all = nu_sequence(f, e_max, None)?;
    let p = f.prime().get();
    let mut intervals = Vec::new();
    let mut q = 1u64;
    for &nu in &all[1..] {
        q *= p;
        intervals.push(Interval::new(rational(nu, q), rational(nu + 1, q)));
    }
    let last = intervals.last().expect("e_max >= 1");
    let candidate =
        simplest_in_interval(&last.lo, &last.hi, max_den).filter(|c| intervals.iter().all(|iv| iv.contains(c)));
    Ok(FptEstimate {
        nus: all[1..].to_vec(),
        intervals,
        candidate,
    })
}

/// Options for [`jumping_numbers_with`].
#[derive(Debug, Clone, Copy)]
pub struct JumpOptions {
    pub max_den: u64,
    pub stable_levels: u32,
    /// Levels beyond `e_max` allowed when certifying a candidate.
    pub extra_levels: u32,
}

impl Default for JumpOptions {
    fn default() -> Self {
        JumpOptions {
            max_den: DEFAULT_MAX_DENOMINATOR,
            stable_levels: DEFAULT_STABLE_LEVELS,
            extra_levels: 2,
        }
    }
}

/// One strict drop of the level chain.
#[derive(Debug, Clone)]
pub struct Jump {
    pub interval: Interval,
    pub candidate: Option<Rational>,
    pub certified: bool,
    pub ideal_before: Ideal,
    pub ideal_after: Ideal,
}

#[derive(Debug, Clone)]
pub struct JumpReport {
    pub e_max: u32,
    pub jumps: Vec<Jump>,
    pub count: usize,
    /// Number of distinct ideals in the chain `I_{e_max}(f^a)`, `a = 0..=p^{e_max}`.
    pub distinct_ideals: usize,
}

pub fn jumping_numbers(f: &FpPoly, e_max: u32) -> Result<JumpReport> {
    jumping_numbers_with(f, e_max, JumpOptions::default())
}

/// Memoized `I_e(f^a)`.
struct ChainCache<'a> {
    f: &'a FpPoly,
    ideals: HashMap<(u32, u64), Ideal>,
}

impl<'a> ChainCache<'a> {
    fn get(&mut self, e: u32, a: u64) -> Result<Ideal> {
        if let Some(i) = self.ideals.get(&(e, a)) {
            return Ok(i.clone());
        }
        let i = frobenius_root_power(self.f, a, e)?;
        self.ideals.insert((e, a), i.clone());
        Ok(i)
    }

    /// Whether the level-`e` chain drops between `a-1` and `a`.
    fn drops_at(&mut self, e: u32, a: u64) -> Result<bool> {
        let before = self.get(e, a - 1)?;
        let after = self.get(e, a)?;
        Ok(!before.equals(&after)?)
    }
}

pub fn jumping_numbers_with(f: &FpPoly, e_max: u32, opts: JumpOptions) -> Result<JumpReport> {
    require_nonunit(f)?;
    if e_max == 0 {
        return Err(Error::invalid("e_max must be at least 1"));
    }
    let p = f.prime();
    let q = p.power(e_max, f.ring().limits().max_pe)?;
    p.power(e_max + opts.extra_levels, f.ring().limits().max_pe)?;
    let mut cache = ChainCache {
        f,
        ideals: HashMap::new(),
    };

    let mut jumps = Vec::new();
    let mut previous = cache.get(e_max, 0)?;
    for a in 1..=q {
        let current = cache.get(e_max, a)?;
        if !previous.equals(&current)? {
            jumps.push((a, previous.clone(), current.clone()));
        }
        previous = current;
    }

    let mut out = Vec::with_capacity(jumps.len());
    for (a, before, after) in jumps {
        let interval = Interval::grid(a, q);
        let candidate = pick_candidate(&mut cache, &interval, e_max, opts.max_den)?;
        let certified = match &candidate {
            Some(c) => certify(f, c, &interval.lo, e_max + opts.extra_levels, opts.stable_levels)?,
            None => false,
        };
        out.push(Jump {
            interval,
            candidate,
            certified,
            ideal_before: before,
            ideal_after: after,
        });
    }
    let count = out.len();
    Ok(JumpReport {
        e_max,
        jumps: out,
        count,
        distinct_ideals: count + 1,
    })
}

/// The first fraction of `(lo, hi]` (by denominator, then numerator) that also
/// falls in a dropping interval at the two coarser levels.
fn pick_candidate(cache: &mut ChainCache, interval: &Interval, e_max: u32, max_den: u64) -> Result<Option<Rational>> {
    let p = cache.f.prime();
    'candidates: for c in fractions_in_interval(&interval.lo, &interval.hi, max_den) {
        for e in e_max.saturating_sub(2).max(1)..e_max {
            let a = ceil_scale(&c, p, e)?.to_u64().expect("a <= p^e");
            if !cache.drops_at(e, a)? {
                continue 'candidates;
            }
        }
        return Ok(Some(c));
    }
    Ok(None)
}

fn certify(f: &FpPoly, c: &Rational, lo: &Rational, e_limit: u32, stable: u32) -> Result<bool> {
    let at = test_ideal_with(f, c, e_limit, stable)?;
    let below = test_ideal_with(f, lo, e_limit, stable)?;
    Ok(at.certified && below.certified && !at.ideal.equals(&below.ideal)?)
}

/// Outcome of checking `Jac(f) ⊆ τ(f^{1-1/p^e})`.
#[derive(Debug, Clone)]
pub struct MainTheoremCheck {
    pub holds: bool,
    pub tau: Ideal,
    /// Generators of the Jacobian ideal outside `tau`, with their normal forms.
    pub witnesses: Vec<(FpPoly, FpPoly)>,
}

pub fn verify_main_theorem(f: &FpPoly, e: u32) -> Result<MainTheoremCheck> {
    let tau = tau_one_minus(f, e)?;
    let mut witnesses = Vec::new();
    for g in jacobian_generators(f)? {
        let nf = tau.normal_form(&g, MonomialOrder::Grevlex)?;
        if !nf.is_zero() {
            witnesses.push((g, nf));
        }
    }
    Ok(MainTheoremCheck {
        holds: witnesses.is_empty(),
        tau,
        witnesses,
    })
}

/// Outcome of comparing the number of jumps in `(0, 1]` with `dim_k R/Jac(f) + 1`.
#[derive(Debug, Clone)]
pub struct CorollaryCheck {
    pub colength: Colength,
    pub isolated: bool,
    pub bound: Option<u64>,
    pub observed: Option<u64>,
    pub holds: bool,
}

pub fn verify_corollary_bound(f: &FpPoly, e_max: u32) -> Result<CorollaryCheck> {
    require_nonunit(f)?;
    let jac = Ideal::new(f.ring(), jacobian_generators(f)?)?;
    let colength = jac.colength(MonomialOrder::Grevlex)?;
    let Colength::Finite(dim) = colength else {
        return Ok(CorollaryCheck {
            colength,
            isolated: false,
            bound: None,
            observed: None,
            holds: true,
        });
    };
    let report = jumping_numbers(f, e_max)?;
    let observed = (report.distinct_ideals - 1) as u64;
    let bound = dim + 1;
    Ok(CorollaryCheck {
        colength,
        isolated: true,
        bound: Some(bound),
        observed: Some(observed),
        holds: observed <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::FpRing;
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<FpRing> {
        FpRing::fp(p, vars).unwrap()
    }

    fn pf(r: &Arc<FpRing>, s: &str) -> FpPoly {
        parse_polynomial(r, s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn nu_examples() {
        for p in [2u64, 3, 5] {
            let r = ring(p, &["x"]);
            let x = pf(&r, "x");
            for e in 0..=3 {
                assert_eq!(nu_value(&x, e, None).unwrap().value, p.pow(e) - 1);
                let j = Ideal::principal(&x);
                assert_eq!(nu_value(&x, e, Some(&j)).unwrap().value, p.pow(e) - 1);
            }
        }
        let r5 = ring(5, &["x"]);
        assert_eq!(nu_value(&pf(&r5, "x^2"), 1, None).unwrap().value, 2);
        let r = ring(5, &["x", "y"]);
        let f = pf(&r, "x^2 + y^3");
        assert_eq!(nu_value(&f, 1, None).unwrap().value, 3);
        assert_eq!(nu_value(&f, 1, Some(&Ideal::maximal(&r))).unwrap().value, 3);
    }

    #[test]
    fn nu_rejections() {
        let r = ring(5, &["x", "y"]);
        assert!(nu_value(&Polynomial::zero(&r), 1, None).is_err());
        assert!(nu_value(&pf(&r, "3"), 1, None).is_err());
        assert!(nu_value(&pf(&r, "x + 1"), 1, None).is_err());
        assert!(nu_value(&pf(&r, "x"), 1, Some(&Ideal::unit(&r))).is_err());
        // f outside the radical of J never lands in a bracket power.
        let tiny = FpRing::with_limits(
            crate::poly::PrimeField(crate::arith::Prime::new(5).unwrap()),
            &["x", "y"],
            crate::arith::Limits {
                max_pe: 30,
                ..Default::default()
            },
        )
        .unwrap();
        let j = Ideal::principal(&pf(&tiny, "y"));
        assert!(nu_value(&pf(&tiny, "x"), 1, Some(&j)).is_err());
    }

    #[test]
    fn nu_in_radical_but_not_ideal() {
        let r = ring(3, &["x"]);
        let j = Ideal::principal(&pf(&r, "x^2"));
        // x^r ∉ (x^{2·3^e}) iff r < 2·3^e.
        for e in 0..=3 {
            assert_eq!(nu_value(&pf(&r, "x"), e, Some(&j)).unwrap().value, 2 * 3u64.pow(e) - 1);
        }
    }

    #[test]
    fn test_ideal_examples() {
        let r = ring(5, &["x", "y"]);
        let f = pf(&r, "x^2 + y^3");
        let zero = test_ideal(&f, &q(0, 1), 3).unwrap();
        assert!(zero.certified && zero.ideal.is_unit().unwrap());
        let t = test_ideal(&f, &q(4, 5), 4).unwrap();
        assert!(t.ideal.equals(&Ideal::maximal(&r)).unwrap());
        assert!(t.certified);
        for p in [2u64, 3, 5, 7] {
            let rx = ring(p, &["x"]);
            let half = test_ideal(&pf(&rx, "x"), &q(1, 2), 3).unwrap();
            assert!(half.ideal.is_unit().unwrap() && half.certified);
        }
        assert!(test_ideal(&f, &q(-1, 2), 3).is_err());
        assert!(test_ideal(&Polynomial::zero(&r), &q(1, 2), 3).is_err());
    }

    #[test]
    fn test_ideal_levels_ascend() {
        let r = ring(3, &["x", "y"]);
        let f = pf(&r, "x^2*y + x*y^2 + x^4 + y^4");
        let res = test_ideal_with(&f, &q(5, 7), 4, 10).unwrap();
        for w in res.levels.windows(2) {
            assert!(w[1].contains_ideal(&w[0]).unwrap());
        }
    }

    #[test]
    fn tau_one_minus_examples() {
        for p in [2u64, 3, 5] {
            let r = ring(p, &["x", "y"]);
            for e in 1..=2 {
                assert!(tau_one_minus(&pf(&r, "x"), e).unwrap().is_unit().unwrap());
                assert!(tau_one_minus(&pf(&r, "1"), e).unwrap().is_unit().unwrap());
            }
        }
        let r = ring(5, &["x", "y"]);
        assert!(tau_one_minus(&pf(&r, "x^2 + y^3"), 1)
            .unwrap()
            .equals(&Ideal::maximal(&r))
            .unwrap());
    }

    #[test]
    fn fpt_examples() {
        let r5 = ring(5, &["x", "y"]);
        let est = fpt_estimate(&pf(&r5, "x^2 + y^3"), 3, 64).unwrap();
        assert_eq!(est.intervals[0], Interval::new(q(3, 5), q(4, 5)));
        assert_eq!(est.candidate, Some(q(4, 5)));
        let r7 = ring(7, &["x", "y"]);
        let est = fpt_estimate(&pf(&r7, "x^2 + y^3"), 3, 64).unwrap();
        assert_eq!(est.candidate, Some(q(5, 6)));
        for w in est.intervals.windows(2) {
            assert!(w[0].encloses(&w[1]));
        }
        assert!(fpt_estimate(&pf(&r7, "x + 1"), 2, 64).is_err());
    }

    #[test]
    fn jump_examples() {
        let r = ring(3, &["x"]);
        let rep = jumping_numbers(&pf(&r, "x"), 2).unwrap();
        assert_eq!(rep.count, 1);
        let j = &rep.jumps[0];
        assert_eq!(j.candidate, Some(q(1, 1)));
        assert!(j.ideal_before.is_unit().unwrap());
        assert_eq!(j.ideal_after.to_string(), "(x)");
        assert!(j.certified);

        let r5 = ring(5, &["x"]);
        let rep = jumping_numbers(&pf(&r5, "x^2"), 2).unwrap();
        let cands: Vec<_> = rep.jumps.iter().map(|j| j.candidate.clone().unwrap()).collect();
        assert_eq!(cands, [q(1, 2), q(1, 1)]);
        assert_eq!(rep.jumps[0].interval, Interval::new(q(12, 25), q(13, 25)));
        assert!(rep.jumps.iter().all(|j| j.certified));

        let r5 = ring(5, &["x", "y"]);
        let rep = jumping_numbers(&pf(&r5, "x^2 + y^3"), 2).unwrap();
        let cands: Vec<_> = rep.jumps.iter().map(|j| j.candidate.clone().unwrap()).collect();
        assert_eq!(cands, [q(4, 5), q(1, 1)]);
        assert_eq!(rep.count, 2);
        for j in &rep.jumps {
            assert!(j.ideal_before.contains_ideal(&j.ideal_after).unwrap());
            assert!(!j.ideal_after.contains_ideal(&j.ideal_before).unwrap());
        }
    }

    #[test]
    fn main_theorem_examples() {
        let r = ring(5, &["x", "y"]);
        let chk = verify_main_theorem(&pf(&r, "x^2 + y^3"), 1).unwrap();
        assert!(chk.holds && chk.witnesses.is_empty());
        assert!(chk.tau.equals(&Ideal::maximal(&r)).unwrap());
        assert!(verify_main_theorem(&pf(&r, "x"), 2).unwrap().holds);
    }

    #[test]
    fn corollary_examples() {
        let r = ring(5, &["x", "y"]);
        let chk = verify_corollary_bound(&pf(&r, "x^2 + y^3"), 2).unwrap();
        assert_eq!(chk.colength, Colength::Finite(2));
        assert_eq!((chk.bound, chk.observed, chk.holds), (Some(3), Some(2), true));

        let r3 = ring(3, &["x"]);
        let chk = verify_corollary_bound(&pf(&r3, "x^2"), 1).unwrap();
        assert_eq!((chk.bound, chk.observed, chk.holds), (Some(2), Some(2), true));

        let r2 = ring(2, &["x", "y"]);
        let chk = verify_corollary_bound(&pf(&r2, "x*y"), 2).unwrap();
        assert_eq!(chk.bound, Some(2));
        assert!(chk.holds && chk.observed.unwrap() <= 2);

        // x^2 in two variables has a non-isolated singular locus.
        let chk = verify_corollary_bound(&pf(&r, "x^2"), 1).unwrap();
        assert!(!chk.isolated && chk.holds);
    }
}
