//! The computational subcommands, one record per input polynomial.

use fjump_core::arith::{format_rational, Rational};
use fjump_core::diffop::jacobian_generators;
use fjump_core::frobenius::{frobenius_root_power_with, RootStrategy};
use fjump_core::jumping::{fpt_estimate, jumping_numbers_with, test_ideal, Interval, JumpOptions};
use fjump_core::{Colength, FpPoly, FpRing, Ideal, MonomialOrder};
use serde_json::Value;
use std::sync::Arc;

use crate::config::RunConfig;
use crate::corpus::CorpusEntry;
use crate::obj;
use crate::report::{Record, Status};
use crate::verify::{entry_params, generators, par_map, timed};
use crate::CliError;

fn each<F>(cfg: &RunConfig, entries: &[CorpusEntry], f: F) -> Result<Vec<Record>, CliError>
where
    F: Fn(&CorpusEntry) -> fjump_core::Result<Record> + Sync + Send,
{
    let mut out = Vec::new();
    for r in par_map(cfg.jobs, entries, |en| timed(cfg, || Ok(vec![f(en)?]))) {
        out.extend(r?);
    }
    Ok(out)
}

fn interval_json(iv: &Interval) -> Value {
    Value::Object(obj! { "lo" => format_rational(&iv.lo), "hi" => format_rational(&iv.hi) })
}

fn rational_json(t: &Option<Rational>) -> Value {
    t.as_ref().map_or(Value::Null, |t| Value::from(format_rational(t)))
}

pub fn froot(
    cfg: &RunConfig,
    entries: &[CorpusEntry],
    e: u32,
    power: u64,
    direct: bool,
) -> Result<Vec<Record>, CliError> {
    let strategy = if direct {
        RootStrategy::DirectExpansion
    } else {
        RootStrategy::DigitRecursion
    };
    each(cfg, entries, |en| {
        let ideal = frobenius_root_power_with(&en.f, power, e, strategy)?;
        let mut params = entry_params(en);
        params.insert("e".into(), e.into());
        params.insert("power".into(), power.into());
        Ok(Record::new("froot", Status::Ok, params).with_value(obj! { "generators" => generators(&ideal) }))
    })
}

pub fn tau(cfg: &RunConfig, entries: &[CorpusEntry], t: &Rational) -> Result<Vec<Record>, CliError> {
    each(cfg, entries, |en| {
        let res = test_ideal(&en.f, t, cfg.e_max)?;
        let mut params = entry_params(en);
        params.insert("t".into(), format_rational(t).into());
        params.insert("e_max".into(), cfg.e_max.into());
        Ok(Record::new("tau", Status::Ok, params).with_value(obj! {
            "generators" => generators(&res.ideal),
            "e_used" => res.e_used,
            "certified" => res.certified,
        }))
    })
}

pub fn fpt(cfg: &RunConfig, entries: &[CorpusEntry], d_max: u64) -> Result<Vec<Record>, CliError> {
    each(cfg, entries, |en| {
        let est = fpt_estimate(&en.f, cfg.e_max, d_max)?;
        let mut params = entry_params(en);
        params.insert("e_max".into(), cfg.e_max.into());
        params.insert("d_max".into(), d_max.into());
        Ok(Record::new("fpt", Status::Ok, params).with_value(obj! {
            "nu" => est.nus,
            "intervals" => est.intervals.iter().map(interval_json).collect::<Vec<_>>(),
            "candidate" => rational_json(&est.candidate),
        }))
    })
}

pub fn jumps(cfg: &RunConfig, entries: &[CorpusEntry], d_max: u64) -> Result<Vec<Record>, CliError> {
    let opts = JumpOptions {
        max_den: d_max,
        ..JumpOptions::default()
    };
    each(cfg, entries, |en| {
        let rep = jumping_numbers_with(&en.f, cfg.e_max, opts)?;
        let mut params = entry_params(en);
        params.insert("e_max".into(), cfg.e_max.into());
        params.insert("d_max".into(), d_max.into());
        let jumps: Vec<Value> = rep
            .jumps
            .iter()
            .map(|j| {
                Value::Object(obj! {
                    "interval" => interval_json(&j.interval),
                    "candidate" => rational_json(&j.candidate),
                    "certified" => j.certified,
                    "ideal_before" => generators(&j.ideal_before),
                    "ideal_after" => generators(&j.ideal_after),
                })
            })
            .collect();
        Ok(Record::new("jumps", Status::Ok, params).with_value(obj! { "count" => rep.count, "jumps" => jumps }))
    })
}

pub fn jacobian(cfg: &RunConfig, entries: &[CorpusEntry], with_colength: bool) -> Result<Vec<Record>, CliError> {
    each(cfg, entries, |en| {
        let gens = jacobian_generators(&en.f)?;
        let mut value = obj! { "generators" => gens.iter().map(FpPoly::to_string).collect::<Vec<_>>() };
        if with_colength {
            let colength = match Ideal::new(&en.ring, gens)?.colength(cfg.order)? {
                Colength::Finite(d) => Value::from(d),
                Colength::Infinite => Value::from("infinite"),
            };
            value.insert("colength".into(), colength);
        }
        Ok(Record::new("jacobian", Status::Ok, entry_params(en)).with_value(value))
    })
}

pub fn gb(
    cfg: &RunConfig,
    ring: &Arc<FpRing>,
    gens: Vec<FpPoly>,
    order: MonomialOrder,
) -> Result<Vec<Record>, CliError> {
    timed(cfg, || {
        let params = obj! {
            "p" => ring.prime().get(),
            "vars" => ring.vars().join(","),
            "generators" => gens.iter().map(FpPoly::to_string).collect::<Vec<_>>(),
            "order" => order.to_string(),
        };
        let basis = Ideal::new(ring, gens)?.groebner_basis(order)?;
        Ok(vec![Record::new("gb", Status::Ok, params).with_value(obj! {
            "basis" => basis.iter().map(FpPoly::to_string).collect::<Vec<_>>(),
        })])
    })
}
