use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use devlat::adjust::monotone_adjustment;
use devlat::corpus::{random_enumeration, rng};
use devlat::deviation::{random_deviation, search_deviation, SearchConstraints};
use devlat::lattice::lattice_from_downsets;
use devlat::poset::FinitePoset;
use devlat::semilinear::{complement, lower_shadow_set, upper_shadow_set};
use devlat::vlat::{ideal_leq, parse_term};

fn antichain(n: usize) -> FinitePoset {
    FinitePoset::generated_by_ids((0..n).map(|i| format!("p{i}")).collect(), &[] as &[(&str, &str)]).unwrap()
}

fn search(c: &mut Criterion) {
    let d = lattice_from_downsets(&antichain(3));
    c.bench_function("search_deviation/boolean8", |b| {
        b.iter(|| search_deviation(black_box(&d), SearchConstraints::default()).unwrap())
    });
    let monotone = SearchConstraints { require_monotone: true, require_cevian: false };
    c.bench_function("search_deviation/boolean8_monotone", |b| {
        b.iter(|| search_deviation(black_box(&d), monotone).unwrap())
    });
}

fn adjust(c: &mut Criterion) {
    let d = lattice_from_downsets(&antichain(3));
    let mut r = rng(1);
    let table = random_deviation(&d, &mut r).unwrap().expect("boolean lattices are completely normal");
    let e = random_enumeration(&mut r, d.len());
    c.bench_function("monotone_adjustment/boolean8", |b| {
        b.iter(|| monotone_adjustment(d.carrier(), black_box(&d), black_box(&table), &e).unwrap())
    });
}

fn semilinear(c: &mut Criterion) {
    let mut r = rng(2);
    let sets: Vec<_> = (0..8).map(|_| devlat::corpus::random_set(&mut r, 3)).collect();
    let x: BTreeSet<usize> = [0, 2].into();
    c.bench_function("complement/dim3", |b| b.iter(|| sets.iter().map(|s| complement(s).unwrap()).count()));
    c.bench_function("upper_shadow/dim3", |b| b.iter(|| sets.iter().map(|s| upper_shadow_set(s, &x).unwrap()).count()));
    c.bench_function("lower_shadow/dim3", |b| b.iter(|| sets.iter().map(|s| lower_shadow_set(s, &x).unwrap()).count()));
}

fn ideals(c: &mut Criterion) {
    let g = parse_term("(g0 - 2*g1)^+ /\\ |g2|", 3).unwrap();
    let h = parse_term("|g0| \\/ (g2 - g1)^+", 3).unwrap();
    c.bench_function("ideal_leq/n3", |b| b.iter(|| ideal_leq(black_box(&g), black_box(&h), 3, None).unwrap()));
}

criterion_group!(benches, search, adjust, semilinear, ideals);
criterion_main!(benches);
