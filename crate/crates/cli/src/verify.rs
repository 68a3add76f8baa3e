//! Seeded verification drivers. Random inputs are drawn sequentially from one
//! stream, then evaluated on the worker pool; results keep input order.

use std::time::Instant;

use fjump_core::diffop::{
    composition_residual, frobenius_derivative_residual, key_identity_residual, leibniz_residual, linearity_residual,
};
use fjump_core::jumping::{verify_corollary_bound, verify_main_theorem};
use fjump_core::{Coefficients, Colength, Ideal, Polynomial, Result as CoreResult};
use rand::Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::corpus::CorpusEntry;
use crate::random::{random_polynomial, seeded_rng};
use crate::report::Record;
use crate::{obj, CliError};

/// Operator orders `p^e` up to this bound are always among the identity trials.
pub const PRIME_POWER_BOUND: u64 = 25;

/// Shape of the random polynomials.
#[derive(Debug, Clone, Copy)]
pub struct RandomParams {
    pub degree: u32,
    pub terms: usize,
    /// Largest operator order; each check has its own default.
    pub max_order: Option<u64>,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            degree: 6,
            terms: 4,
            max_order: None,
        }
    }
}

/// Order-preserving map on a pool of `jobs` threads (`0` = pool default).
pub fn par_map<T, U, F>(jobs: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    if jobs == 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

/// Runs `f`, stamping its records with the elapsed time when timing is on.
pub(crate) fn timed<F>(cfg: &RunConfig, f: F) -> Result<Vec<Record>, CliError>
where
    F: FnOnce() -> CoreResult<Vec<Record>>,
{
    let start = Instant::now();
    let mut records = f()?;
    if cfg.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut records {
            r.timing_ms = Some(ms);
        }
    }
    Ok(records)
}

fn flatten(results: Vec<Result<Vec<Record>, CliError>>) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn residual_check<C: Coefficients>(
    name: &str,
    params: Map<String, Value>,
    residual: Polynomial<C>,
    call: String,
) -> Record {
    Record::check(
        name,
        residual.is_zero(),
        params,
        obj! { "residual" => residual.to_string(), "call" => call },
    )
}

struct IdentityTrial<A: Coefficients, B: Coefficients> {
    k: u64,
    m: u64,
    i: usize,
    fz: Polynomial<A>,
    fp: Polynomial<B>,
}

/// `Σ (l-1) D_l(f) D_{m-l}(f^{m-1}) = 0` over `Z` and over `F_p`.
pub fn verify_identity(cfg: &RunConfig, rp: &RandomParams) -> Result<Vec<Record>, CliError> {
    let p = cfg.prime()?.get();
    let (zr, fr) = (cfg.z_ring()?, cfg.fp_ring()?);
    let n = fr.nvars();
    let max_order = rp.max_order.unwrap_or(12).max(1);
    let forced: Vec<u64> = std::iter::successors(Some(p), |q| Some(q * p))
        .take_while(|&q| q <= PRIME_POWER_BOUND)
        .collect();
    let mut rng = seeded_rng(cfg.seed);
    let trials: Vec<_> = (0..cfg.trials)
        .map(|k| {
            let m = forced
                .get(k as usize)
                .copied()
                .unwrap_or_else(|| rng.random_range(1..=max_order));
            let i = rng.random_range(0..n);
            let fz = random_polynomial(&mut rng, &zr, rp.degree, rp.terms);
            let fp = random_polynomial(&mut rng, &fr, rp.degree, rp.terms);
            IdentityTrial { k, m, i, fz, fp }
        })
        .collect();
    flatten(par_map(cfg.jobs, &trials, |t| {
        timed(cfg, || {
            let call = format!("key_identity_residual(f, {}, {})", t.m, t.i);
            let params = |domain: &str, f: String| {
                obj! { "trial" => t.k, "domain" => domain, "f" => f, "m" => t.m, "i" => t.i }
            };
            Ok(vec![
                residual_check(
                    "identity",
                    params("Z", t.fz.to_string()),
                    key_identity_residual(&t.fz, t.m, t.i)?,
                    call.clone(),
                ),
                residual_check(
                    "identity",
                    params(&format!("F_{p}"), t.fp.to_string()),
                    key_identity_residual(&t.fp, t.m, t.i)?,
                    call,
                ),
            ])
        })
    }))
}

struct PairTrial<A: Coefficients, B: Coefficients> {
    k: u64,
    m: u64,
    a: u64,
    b: u64,
    i: usize,
    z: (Polynomial<A>, Polynomial<A>),
    fp: (Polynomial<B>, Polynomial<B>),
}

/// Leibniz rule and composition law over `Z` and over `F_p`.
pub fn verify_leibniz(cfg: &RunConfig, rp: &RandomParams) -> Result<Vec<Record>, CliError> {
    let p = cfg.prime()?.get();
    let (zr, fr) = (cfg.z_ring()?, cfg.fp_ring()?);
    let n = fr.nvars();
    let max_order = rp.max_order.unwrap_or(8);
    let mut rng = seeded_rng(cfg.seed);
    let trials: Vec<_> = (0..cfg.trials)
        .map(|k| {
            let m = rng.random_range(0..=max_order);
            let a = rng.random_range(0..=max_order);
            let b = rng.random_range(0..=max_order - a);
            let i = rng.random_range(0..n);
            let mut draw_z = || random_polynomial(&mut rng, &zr, rp.degree, rp.terms);
            let z = (draw_z(), draw_z());
            let mut draw_p = || random_polynomial(&mut rng, &fr, rp.degree, rp.terms);
            let fp = (draw_p(), draw_p());
            PairTrial { k, m, a, b, i, z, fp }
        })
        .collect();
    #[allow(clippy::too_many_arguments)]
    fn records<C: Coefficients>(
        t_k: u64,
        domain: &str,
        f: &Polynomial<C>,
        g: &Polynomial<C>,
        m: u64,
        a: u64,
        b: u64,
        i: usize,
    ) -> CoreResult<Vec<Record>> {
        Ok(vec![
            residual_check(
                "leibniz",
                obj! { "trial" => t_k, "domain" => domain, "f" => f.to_string(), "g" => g.to_string(), "m" => m, "i" => i },
                leibniz_residual(f, g, m, i)?,
                format!("leibniz_residual(f, g, {m}, {i})"),
            ),
            residual_check(
                "composition",
                obj! { "trial" => t_k, "domain" => domain, "f" => f.to_string(), "m" => a, "n" => b, "i" => i },
                composition_residual(f, a, b, i)?,
                format!("composition_residual(f, {a}, {b}, {i})"),
            ),
        ])
    }
    flatten(par_map(cfg.jobs, &trials, |t| {
        timed(cfg, || {
            let mut out = records(t.k, "Z", &t.z.0, &t.z.1, t.m, t.a, t.b, t.i)?;
            out.extend(records(t.k, &format!("F_{p}"), &t.fp.0, &t.fp.1, t.m, t.a, t.b, t.i)?);
            Ok(out)
        })
    }))
}

/// `D_{p^e}(f^{p^e}) = (∂f)^{p^e}` over `F_p`, for `e = 1..=e_max`.
pub fn verify_lemma31(cfg: &RunConfig, rp: &RandomParams) -> Result<Vec<Record>, CliError> {
    let p = cfg.prime()?;
    let fr = cfg.fp_ring()?;
    let n = fr.nvars();
    let e_max = cfg.e_max.max(1);
    let mut rng = seeded_rng(cfg.seed);
    let trials: Vec<_> = (0..cfg.trials)
        .map(|k| {
            let e = rng.random_range(1..=e_max);
            let i = rng.random_range(0..n);
            (k, e, i, random_polynomial(&mut rng, &fr, rp.degree, rp.terms))
        })
        .collect();
    flatten(par_map(cfg.jobs, &trials, |(k, e, i, f)| {
        timed(cfg, || {
            Ok(vec![residual_check(
                "lemma31",
                obj! { "trial" => k, "domain" => format!("F_{p}"), "f" => f.to_string(), "e" => e, "i" => i },
                frobenius_derivative_residual(f, *e, *i)?,
                format!("frobenius_derivative_residual(f, {e}, {i})"),
            )])
        })
    }))
}

/// `D_m(g^{p^e} f) = g^{p^e} D_m(f)` for `m < p^e`, over `F_p`.
pub fn verify_linearity(cfg: &RunConfig, rp: &RandomParams) -> Result<Vec<Record>, CliError> {
    let p = cfg.prime()?;
    let fr = cfg.fp_ring()?;
    let n = fr.nvars();
    let e_max = cfg.e_max.max(1);
    let limit = fr.limits().max_pe;
    let mut rng = seeded_rng(cfg.seed);
    let mut trials = Vec::new();
    for k in 0..cfg.trials {
        let e = rng.random_range(1..=e_max);
        let q = p.power(e, limit)?;
        let m = rng.random_range(0..q.min(rp.max_order.map_or(u64::MAX, |c| c + 1)));
        let i = rng.random_range(0..n);
        let f = random_polynomial(&mut rng, &fr, rp.degree, rp.terms);
        let g = random_polynomial(&mut rng, &fr, rp.degree, rp.terms);
        trials.push((k, e, m, i, f, g));
    }
    flatten(par_map(cfg.jobs, &trials, |(k, e, m, i, f, g)| {
        timed(cfg, || {
            Ok(vec![residual_check(
                "linearity",
                obj! {
                    "trial" => k, "domain" => format!("F_{p}"), "f" => f.to_string(),
                    "g" => g.to_string(), "m" => m, "e" => e, "i" => i,
                },
                linearity_residual(f, g, *m, *e, *i)?,
                format!("linearity_residual(f, g, {m}, {e}, {i})"),
            )])
        })
    }))
}

pub(crate) fn entry_params(entry: &CorpusEntry) -> Map<String, Value> {
    let mut m = obj! {
        "p" => entry.prime.get(),
        "vars" => entry.ring.vars().join(","),
        "f" => entry.f.to_string(),
    };
    if entry.line > 0 {
        m.insert("line".into(), Value::from(entry.line));
    }
    m
}

pub(crate) fn generators(ideal: &Ideal) -> Vec<String> {
    ideal.generators().iter().map(|g| g.to_string()).collect()
}

/// `Jac(f) ⊆ I_e(f^{p^e - 1})` for every entry and `e = 1..=e_max`.
pub fn verify_main(cfg: &RunConfig, entries: &[CorpusEntry]) -> Result<Vec<Record>, CliError> {
    let cells: Vec<(&CorpusEntry, u32)> = entries
        .iter()
        .flat_map(|en| (1..=cfg.e_max.max(1)).map(move |e| (en, e)))
        .collect();
    flatten(par_map(cfg.jobs, &cells, |(entry, e)| {
        timed(cfg, || {
            let chk = verify_main_theorem(&entry.f, *e)?;
            let mut params = entry_params(entry);
            params.insert("e".into(), Value::from(*e));
            let witness = obj! {
                "tau" => generators(&chk.tau),
                "outside" => chk.witnesses.iter().map(|(g, nf)| obj! {
                    "generator" => g.to_string(), "normal_form" => nf.to_string()
                }).collect::<Vec<_>>(),
                "call" => format!("verify_main_theorem(f, {e})"),
            };
            Ok(vec![
                Record::check("main", chk.holds, params, witness).with_value(obj! { "tau" => generators(&chk.tau) })
            ])
        })
    }))
}

/// Distinct test ideals on `(0, 1]` at level `e_max` against `dim R/Jac(f) + 1`.
pub fn verify_corollary(cfg: &RunConfig, entries: &[CorpusEntry]) -> Result<Vec<Record>, CliError> {
    flatten(par_map(cfg.jobs, entries, |entry| {
        timed(cfg, || {
            let chk = verify_corollary_bound(&entry.f, cfg.e_max.max(1))?;
            let mut params = entry_params(entry);
            params.insert("e_max".into(), Value::from(cfg.e_max.max(1)));
            let colength = match chk.colength {
                Colength::Finite(d) => Value::from(d),
                Colength::Infinite => Value::from("infinite"),
            };
            let value = obj! {
                "colength" => colength,
                "isolated" => chk.isolated,
                "bound" => chk.bound,
                "observed" => chk.observed,
            };
            let witness = obj! {
                "bound" => chk.bound,
                "observed" => chk.observed,
                "call" => format!("verify_corollary_bound(f, {})", cfg.e_max.max(1)),
            };
            Ok(vec![
                Record::check("corollary", chk.holds, params, witness).with_value(value)
            ])
        })
    }))
}
