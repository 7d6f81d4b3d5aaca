//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use devlat::adjust::monotone_adjustment;
use devlat::corpus::{self, rng};
use devlat::deviation::{check_deviation, deviation_properties, random_deviation, search_deviation, DeviationTable, SearchConstraints};
use devlat::lattice::{fixtures, is_completely_normal, is_root_system, lattice_from_downsets, prime_ideal_poset};
use devlat::poset::{
    is_separability_witness, satisfies_order_bound, witness_from_amalgam, witness_from_order,
};
use devlat::semilinear::{rat, upper_shadow_set, Inclusion, Rational, SemilinearSet, SetOps};
use devlat::vlat::{
    check_cevian_triple, cevian_dev, ideal_join, ideal_leq, ideal_meet, ideal_zero, noiso_probe, pseudocomplement_probe,
    IdealOrder, ProbeOutcome,
};
use devlat::FiniteDistributiveLattice;
use rand::Rng;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn corpus_lattices() -> Vec<FiniteDistributiveLattice> {
    corpus::posets_up_to_iso(4).iter().map(lattice_from_downsets).collect()
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    o.check(is_completely_normal(&fixtures::square()).is_ok(), || "2x2 reported not completely normal".into());
    for n in 1..=6 {
        o.check(is_completely_normal(&fixtures::chain(n)).is_ok(), || format!("chain of {n} reported not completely normal"));
    }
    let l = fixtures::five_ncn();
    match is_completely_normal(&l) {
        Ok(()) => o.failures.push("five-element lattice reported completely normal".into()),
        Err((a, b)) => {
            let pair = (l.id(a), l.id(b));
            o.check(pair == ("a", "b"), || format!("counterexample {pair:?}, expected (a, b)"));
        }
    }
    o.detail = "2x2, chains 1..6, five-element lattice".into();
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let lattices = corpus_lattices();
    let mut cn = 0;
    for l in &lattices {
        let a = is_completely_normal(l).is_ok();
        let b = is_root_system(&prime_ideal_poset(l).poset).is_ok();
        cn += usize::from(a);
        o.check(a == b, || format!("disagreement on a lattice of {} elements", l.len()));
    }
    o.detail = format!("{} lattices, {cn} completely normal", lattices.len());
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    let lattices = corpus_lattices();
    for l in &lattices {
        let cn = is_completely_normal(l).is_ok();
        match search_deviation(l, SearchConstraints::default()) {
            Ok(found) => {
                if let Some(t) = &found {
                    o.check(check_deviation(l, t).is_ok(), || "search returned a non-deviation".into());
                }
                o.check(found.is_some() == cn, || format!("search {} on a lattice with cn = {cn}", found.is_some()));
            }
            Err(e) => o.failures.push(format!("search error: {e}")),
        }
    }
    o.detail = format!("{} lattices", lattices.len());
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(4);
    let mut runs = 0;
    for l in corpus_lattices().iter().filter(|l| is_completely_normal(l).is_ok()) {
        for _ in 0..50 {
            let d = random_deviation(l, &mut r).unwrap().expect("completely normal");
            let e = corpus::random_enumeration(&mut r, l.len());
            let res = monotone_adjustment(l.carrier(), l, &d, &e).unwrap();
            let ok = check_deviation(l, &res.d_prime).is_ok() && deviation_properties(l, &res.d_prime).is_monotone();
            o.check(ok, || format!("adjusted table fails on a lattice of {} elements", l.len()));
            runs += 1;
        }
    }
    o.detail = format!("{runs} adjustments");
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(5);
    let hosts: Vec<FiniteDistributiveLattice> = corpus::posets_up_to_iso(3).iter().map(lattice_from_downsets).collect();
    for i in 0..500 {
        let n = r.random_range(1..=6);
        let m = corpus::random_poset(&mut r, n, 0.4);
        let d = &hosts[r.random_range(0..hosts.len())];
        let e = corpus::random_enumeration(&mut r, n);

        let f = corpus::random_isotone_map(&mut r, &m, d);
        let raw = corpus::random_map_over(&mut r, n, d, &f);
        let t = DeviationTable::map(n, d, raw).unwrap();
        let dp = monotone_adjustment(&m, d, &t, &e).unwrap().d_prime;
        let kept = (0..n).all(|a| (0..n).all(|b| d.leq(f[a], d.join(f[b], dp.get(a, b)))));
        o.check(kept, || format!("instance {i}: f-inequality lost"));

        let raw = corpus::random_disjoint_map(&mut r, n, d);
        let t = DeviationTable::map(n, d, raw).unwrap();
        let dp = monotone_adjustment(&m, d, &t, &e).unwrap().d_prime;
        let kept = (0..n).all(|a| (0..n).all(|b| d.meet(dp.get(a, b), dp.get(b, a)) == d.bottom()));
        o.check(kept, || format!("instance {i}: disjointness lost"));
    }
    o.detail = "500 instances, both properties each".into();
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(6);
    for i in 0..200 {
        let n = r.random_range(1..=30);
        let density = r.random_range(0.05..0.6);
        let p = corpus::random_poset(&mut r, n, density);
        let e = corpus::random_enumeration(&mut r, n);
        let w = witness_from_order(&p, &e).unwrap();
        o.check(is_separability_witness(&p, &w).is_ok(), || format!("poset {i}: not a witness"));
        o.check(satisfies_order_bound(&w, &e).is_ok(), || format!("poset {i}: order bound fails"));
    }
    for i in 0..100 {
        let carrier = r.random_range(2..=12);
        let index = r.random_range(1..=4);
        let spec = corpus::random_amalgam_spec(&mut r, carrier, index);
        let blocks: Vec<_> = (0..spec.index.len())
            .map(|p| {
                let b = spec.block(p);
                let e = corpus::random_enumeration(&mut r, b.poset.len());
                witness_from_order(&b.poset, &e).unwrap()
            })
            .collect();
        let nu: Vec<usize> = (0..spec.carrier.len())
            .map(|x| (0..spec.index.len()).find(|&p| spec.member(p).contains(&x)).expect("covering family"))
            .collect();
        let w = witness_from_amalgam(&spec, &blocks, &nu).unwrap();
        o.check(is_separability_witness(&spec.carrier, &w).is_ok(), || format!("amalgam {i}: not a witness"));
    }
    o.detail = "200 posets, 100 amalgams".into();
    o
}

struct ShadowCase {
    u: SemilinearSet,
    upper: SemilinearSet,
    lower: SemilinearSet,
    others: Vec<SemilinearSet>,
}

fn shadow_corpus() -> (Vec<ShadowCase>, Vec<String>) {
    let ops = SetOps::default();
    let mut r = rng(7);
    let mut cases = Vec::new();
    let mut errors = Vec::new();
    for i in 0..200 {
        let dim = r.random_range(1..=3);
        let x: BTreeSet<usize> = (0..dim).filter(|_| r.random_bool(0.5)).collect();
        let xs: Vec<usize> = x.iter().copied().collect();
        let u = corpus::random_set(&mut r, dim);
        let others: Vec<SemilinearSet> = (0..20).map(|_| corpus::random_set_over(&mut r, dim, &xs)).collect();
        let res = (|| -> devlat::Result<Vec<String>> {
            let upper = upper_shadow_set(&u, &x)?;
            let lower = ops.lower_shadow_set(&u, &x)?;
            let mut bad = Vec::new();
            if !ops.includes(&u, &lower)?.holds() {
                bad.push(format!("set {i}: lower shadow not inside U"));
            }
            if !ops.includes(&upper, &u)?.holds() {
                bad.push(format!("set {i}: U not inside upper shadow"));
            }
            if !ops.equivalent(&upper_shadow_set(&upper, &x)?, &upper)? {
                bad.push(format!("set {i}: upper shadow not idempotent"));
            }
            if !ops.equivalent(&ops.lower_shadow_set(&lower, &x)?, &lower)? {
                bad.push(format!("set {i}: lower shadow not idempotent"));
            }
            for (j, v) in others.iter().enumerate() {
                if ops.includes(v, &u)?.holds() && !ops.includes(v, &upper)?.holds() {
                    bad.push(format!("set {i}: over-X superset {j} misses the upper shadow"));
                }
                if ops.includes(&u, v)?.holds() && !ops.includes(&lower, v)?.holds() {
                    bad.push(format!("set {i}: over-X subset {j} escapes the lower shadow"));
                }
            }
            cases.push(ShadowCase { u: u.clone(), upper, lower, others });
            Ok(bad)
        })();
        match res {
            Ok(bad) => errors.extend(bad),
            Err(e) => errors.push(format!("set {i}: {e}")),
        }
    }
    (cases, errors)
}

fn c7(errors: &[String], cases: usize) -> Outcome {
    let mut o = Outcome::new();
    o.failures.extend(errors.iter().cloned());
    o.detail = format!("{cases} sets, 20 over-X sets each");
    o
}

fn sample_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut r = rng(seed);
    let mut pts: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..dim {
        pts = pts
            .into_iter()
            .flat_map(|p| (-6..=6).map(move |k| [p.clone(), vec![Rational::new(k.into(), 2.into())]].concat()))
            .collect();
    }
    while pts.len() < count {
        let den = r.random_range(1..=6);
        pts.push(corpus::random_point(&mut r, dim, 4, den));
    }
    pts.truncate(count);
    pts
}

fn c8(cases: &[ShadowCase]) -> Outcome {
    let ops = SetOps::default();
    let samples: Vec<Vec<Vec<Rational>>> = (0..=3).map(|d| sample_points(d, 10_000, 80 + d as u64)).collect();
    let mut verdicts = 0usize;
    let failures: Vec<String> = std::thread::scope(|scope| {
        let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
        let chunk = cases.len().div_ceil(workers).max(1);
        let handles: Vec<_> = cases
            .chunks(chunk)
            .enumerate()
            .map(|(ci, part)| {
                let samples = &samples;
                scope.spawn(move || {
                    let mut bad = Vec::new();
                    let mut count = 0usize;
                    for (k, c) in part.iter().enumerate() {
                        let i = ci * chunk + k;
                        let pts = &samples[c.u.dim()];
                        for (name, s) in [("U", &c.u), ("upper", &c.upper), ("lower", &c.lower)] {
                            count += 1;
                            match s.witness() {
                                Some(w) => {
                                    if !s.contains(&w) {
                                        bad.push(format!("set {i} {name}: emptiness witness outside the set"));
                                    }
                                }
                                None => {
                                    if pts.iter().any(|p| s.contains(p)) {
                                        bad.push(format!("set {i} {name}: declared empty but sampled"));
                                    }
                                }
                            }
                        }
                        let pairs = [(&c.upper, &c.u), (&c.u, &c.lower), (&c.u, &c.others[0]), (&c.others[1], &c.u)];
                        for (j, (s, t)) in pairs.into_iter().enumerate() {
                            count += 1;
                            match ops.includes(s, t) {
                                Ok(Inclusion::Holds) => {
                                    if pts.iter().any(|p| t.contains(p) && !s.contains(p)) {
                                        bad.push(format!("set {i} pair {j}: inclusion contradicted by sampling"));
                                    }
                                }
                                Ok(Inclusion::Fails(w)) => {
                                    if !(t.contains(&w) && !s.contains(&w)) {
                                        bad.push(format!("set {i} pair {j}: witness does not re-evaluate"));
                                    }
                                }
                                Err(e) => bad.push(format!("set {i} pair {j}: {e}")),
                            }
                        }
                    }
                    (bad, count)
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| {
                let (bad, count) = h.join().expect("worker");
                verdicts += count;
                bad
            })
            .collect()
    });
    let mut o = Outcome::new();
    o.failures = failures;
    o.detail = format!("{verdicts} verdicts against 10^4 points each");
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(9);
    for i in 0..200 {
        let n = r.random_range(1..=3);
        let [g, h, k] = [(); 3].map(|_| corpus::random_term(&mut r, n, 3));
        match check_cevian_triple(&g, &h, &k, n, None) {
            Ok(v) => o.check(v.holds(), || format!("triple {i} ({g}; {h}; {k}) not Cevian: {v:?}")),
            Err(e) => o.failures.push(format!("triple {i}: {e}")),
        }
    }
    for i in 0..200 {
        let n = r.random_range(1..=3);
        let a = corpus::random_term(&mut r, n, 3).abs();
        let b = corpus::random_term(&mut r, n, 3).abs();
        let cover = ideal_leq(&a, &ideal_join(&b, &cevian_dev(&a, &b)), n, None);
        let disjoint = ideal_zero(&ideal_meet(&cevian_dev(&a, &b), &cevian_dev(&b, &a)), n, None);
        match (cover, disjoint) {
            (Ok(c), Ok(d)) => {
                o.check(c.holds(), || format!("pair {i}: first axiom fails for {a}, {b}"));
                o.check(d.holds(), || format!("pair {i}: second axiom fails for {a}, {b}"));
            }
            (Err(e), _) | (_, Err(e)) => o.failures.push(format!("pair {i}: {e}")),
        }
    }
    o.detail = "200 triples, 200 pairs".into();
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    let rep = noiso_probe(3, 1, 2).unwrap();
    let a = &rep.antitone;
    o.check(a.lhs.to_string() == "(4*g0 - g1)^+" && a.rhs.to_string() == "(2*g0 - g1)^+", || {
        format!("anchor terms {} and {}", a.lhs, a.rhs)
    });
    o.check(matches!(a.decision, IdealOrder::NotLeq { .. }), || "anchor inclusion decided true".into());
    o.check(a.witness == vec![Rational::new(1.into(), 2.into()), rat(1)], || "anchor witness is not (1/2, 1)".into());
    o.check(a.witness_verified, || "anchor witness does not verify".into());
    let mut grid = 0;
    for k in 1..=6u32 {
        for m in 1..=4u32 {
            for n in 1..=4u32 {
                if (1u64 << (k - 1)) <= u64::from(m * n) {
                    continue;
                }
                grid += 1;
                let rep = noiso_probe(k, m, n).unwrap();
                o.check(rep.reproduced, || format!("(k, m, n) = ({k}, {m}, {n}) not reproduced"));
            }
        }
    }
    o.detail = format!("anchor plus {grid} admissible grid points");
    o
}

fn c11() -> Outcome {
    let mut o = Outcome::new();
    let mut r = rng(11);
    let probes: Vec<_> = (0..100).map(|_| corpus::random_term(&mut r, 3, 3)).collect();
    let mut holds = 0;
    for c in [Rational::new(1.into(), 2.into()), rat(1), rat(2)] {
        for alpha in 1..3 {
            match pseudocomplement_probe(3, alpha, &c, &probes) {
                Ok(rep) => {
                    holds += rep
                        .entries
                        .iter()
                        .flat_map(|e| [&e.against_lower, &e.against_upper])
                        .filter(|x| **x == ProbeOutcome::Holds)
                        .count();
                    for e in rep.entries.iter().filter(|e| e.against_lower.is_counterexample() || e.against_upper.is_counterexample()) {
                        o.failures.push(format!("c = {c}, alpha = {alpha}: counterexample at probe {}: {e:?}", e.probe));
                    }
                }
                Err(e) => o.failures.push(format!("c = {c}, alpha = {alpha}: {e}")),
            }
        }
    }
    o.detail = format!("n = 3, 3 values of c, alpha in 1..3, 100 probes, {holds} non-vacuous implications");
    o
}

fn report(n: usize, title: &str, budget: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = run();
    let took = start.elapsed();
    let in_time = budget.is_none_or(|b| took <= b);
    let pass = o.failures.is_empty() && in_time;
    let budget_note = budget.map(|b| format!(" / budget {:.0?}", b)).unwrap_or_default();
    println!(
        "criterion {n:>2} {} {title}: {} [{:.2?}{budget_note}]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        took
    );
    for f in o.failures.iter().take(10) {
        println!("      {f}");
    }
    if o.failures.len() > 10 {
        println!("      ... {} more", o.failures.len() - 10);
    }
    if !in_time {
        println!("      over the time budget");
    }
    pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= report(1, "complete-normality fixtures", Some(secs(1)), c1);
    ok &= report(2, "Monteiro cross-validation", Some(secs(30)), c2);
    ok &= report(3, "deviation exists iff completely normal", None, c3);
    ok &= report(4, "monotone adjustment of random deviations", Some(secs(300)), c4);
    ok &= report(5, "f-inequality and disjointness preserved", None, c5);
    ok &= report(6, "witness construction", Some(secs(60)), c6);

    let mut cases = Vec::new();
    ok &= report(7, "shadow laws", Some(secs(300)), || {
        let (c, errors) = shadow_corpus();
        cases = c;
        c7(&errors, cases.len())
    });
    ok &= report(8, "decision kernel against sampling", None, || c8(&cases));
    ok &= report(9, "Cevian triples and ideal deviation axioms", None, c9);
    ok &= report(10, "ladder anchor and admissible grid", Some(secs(60)), c10);
    ok &= report(11, "pseudocomplement probe", None, c11);
    if ok {
        println!("all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("some criteria fail");
        ExitCode::FAILURE
    }
}
