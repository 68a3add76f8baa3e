//! Benchmark bodies, registered by `benches/main.rs`.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{BenchmarkId, Criterion};
use fjump_core::frobenius::{frobenius_root_power, frobenius_root_power_with, RootStrategy};
use fjump_core::jumping::{fpt_estimate, jumping_numbers};
use fjump_core::{parse_polynomial, parse_polynomial_list, FpPoly, FpRing, Ideal, MonomialOrder};

fn ring(p: u64) -> Arc<FpRing> {
    FpRing::fp(p, &["x", "y", "z"]).unwrap()
}

fn poly(r: &Arc<FpRing>, s: &str) -> FpPoly {
    parse_polynomial(r, s).unwrap()
}

pub fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    let r = ring(32003);
    let cases = [
        ("cyclic3", "x + y + z; x*y + y*z + z*x; x*y*z - 1"),
        (
            "katsura2",
            "x + 2*y + 2*z - 1; x^2 + 2*y^2 + 2*z^2 - x; 2*x*y + 2*y*z - y",
        ),
        (
            "jacobian",
            "x^2*y + x*y^2 + x^4 + y^4 + z^3; 2*x*y + y^2 + 4*x^3; x^2 + 2*x*y + 4*y^3; 3*z^2",
        ),
    ];
    for (name, gens) in cases {
        let gens = parse_polynomial_list(&r, gens).unwrap();
        for order in MonomialOrder::ALL {
            g.bench_with_input(BenchmarkId::new(name, order), &gens, |b, gens| {
                // A fresh ideal each iteration so the basis cache does not help.
                b.iter(|| Ideal::new(&r, gens.clone()).unwrap().groebner_basis(order).unwrap())
            });
        }
    }
    g.finish();
}

pub fn frobenius(c: &mut Criterion) {
    let mut g = c.benchmark_group("frobenius_root_power");
    let r = ring(5);
    let f = poly(&r, "x^2*y + x*y^2 + x^4 + y^4 + z^3");
    for (a, e) in [(24u64, 2u32), (124, 3), (311, 4)] {
        g.bench_with_input(
            BenchmarkId::new("digits", format!("a={a},e={e}")),
            &(a, e),
            |b, &(a, e)| b.iter(|| frobenius_root_power(black_box(&f), a, e).unwrap()),
        );
    }
    g.bench_function("direct/a=24,e=2", |b| {
        b.iter(|| frobenius_root_power_with(black_box(&f), 24, 2, RootStrategy::DirectExpansion).unwrap())
    });
    g.finish();
}

pub fn jumping(c: &mut Criterion) {
    let mut g = c.benchmark_group("jumping");
    g.sample_size(10);
    for p in [5u64, 7] {
        let r = FpRing::fp(p, &["x", "y"]).unwrap();
        let f = poly(&r, "x^2*y + x*y^2 + x^4 + y^4");
        g.bench_with_input(BenchmarkId::new("jumps_e2", p), &f, |b, f| {
            b.iter(|| jumping_numbers(f, 2).unwrap())
        });
        let cusp = poly(&r, "x^2 + y^3");
        g.bench_with_input(BenchmarkId::new("fpt_e4", p), &cusp, |b, f| {
            b.iter(|| fpt_estimate(f, 4, 64).unwrap())
        });
    }
    g.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    groebner(c);
    frobenius(c);
    jumping(c);
}
