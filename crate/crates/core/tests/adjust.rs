mod common;

use devlat::adjust::{monotone_adjustment, monotone_adjustment_with, Strategy as Sweep};
use devlat::corpus::{self, rng};
use devlat::deviation::{check_deviation, deviation_properties, monotone_failure, random_deviation, DeviationTable};
use devlat::lattice::{is_completely_normal, lattice_from_downsets};
use devlat::poset::{Enumeration, FinitePoset};
use devlat::FiniteDistributiveLattice;
use proptest::prelude::*;
use rand::Rng;

struct Instance {
    m: FinitePoset,
    host: FiniteDistributiveLattice,
    d: DeviationTable,
    e: Enumeration,
}

fn instance(seed: u64, max_m: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.random_range(0..=max_m);
    let m = corpus::random_poset(&mut r, n, 0.4);
    let k = r.random_range(0..=3);
    let base = corpus::random_poset(&mut r, k, 0.5);
    let host = lattice_from_downsets(&base);
    let raw = (0..n * n).map(|_| r.random_range(0..host.len())).collect();
    let d = DeviationTable::map(n, &host, raw).unwrap();
    let e = corpus::random_enumeration(&mut r, n);
    Instance { m, host, d, e }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn output_is_monotone(seed in any::<u64>()) {
        let i = instance(seed, 6);
        let out = monotone_adjustment(&i.m, &i.host, &i.d, &i.e).unwrap();
        prop_assert_eq!(monotone_failure(&i.host, &i.m, &out.d_prime), None);
    }

    #[test]
    fn adjusting_twice_changes_nothing(seed in any::<u64>()) {
        let i = instance(seed, 6);
        let once = monotone_adjustment(&i.m, &i.host, &i.d, &i.e).unwrap().d_prime;
        let twice = monotone_adjustment(&i.m, &i.host, &once, &i.e).unwrap().d_prime;
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn finitary_bounds_agree_with_the_sweep(seed in any::<u64>()) {
        let i = instance(seed, 6);
        let full = monotone_adjustment_with(&i.m, &i.host, &i.d, &i.e, Sweep::FullSweep).unwrap();
        let fin = monotone_adjustment_with(&i.m, &i.host, &i.d, &i.e, Sweep::Finitary).unwrap();
        prop_assert_eq!(full.d_prime, fin.d_prime);
    }

    #[test]
    fn trace_reproduces_every_value(seed in any::<u64>()) {
        let i = instance(seed, 5);
        let out = monotone_adjustment(&i.m, &i.host, &i.d, &i.e).unwrap();
        let n = i.m.len();
        prop_assert_eq!(out.trace.len(), n * n);
        for t in &out.trace {
            let (a, b) = t.pair;
            prop_assert_eq!(t.value, out.d_prime.get(a, b));
            prop_assert_eq!(t.value, i.host.join(t.meet_part, t.join_part));
            let meet = t.meetands.iter().fold(i.d.get(a, b), |acc, &(x, y)| i.host.meet(acc, out.d_prime.get(x, y)));
            prop_assert_eq!(t.meet_part, meet);
            let join = t.joinands.iter().fold(i.host.bottom(), |acc, &(x, y)| i.host.join(acc, out.d_prime.get(x, y)));
            prop_assert_eq!(t.join_part, join);
        }
    }

    #[test]
    fn deviations_stay_deviations(p in common::poset(4), seed in any::<u64>()) {
        let l = lattice_from_downsets(&p);
        prop_assume!(is_completely_normal(&l).is_ok());
        let mut r = rng(seed);
        let d = random_deviation(&l, &mut r).unwrap().unwrap();
        let e = corpus::random_enumeration(&mut r, l.len());
        let out = monotone_adjustment(l.carrier(), &l, &d, &e).unwrap().d_prime;
        prop_assert_eq!(check_deviation(&l, &out), Ok(()));
        prop_assert!(deviation_properties(&l, &out).is_monotone());
    }
}

#[test]
fn monotone_input_stays_a_monotone_deviation() {
    let l = devlat::lattice::fixtures::chain4();
    let d = DeviationTable::from_fn(&l, |x, y| if l.leq(x, y) { l.bottom() } else { l.top() }).unwrap();
    assert!(deviation_properties(&l, &d).is_monotone());
    let out = monotone_adjustment(l.carrier(), &l, &d, &Enumeration::identity(4)).unwrap().d_prime;
    assert_eq!(check_deviation(&l, &out), Ok(()));
    assert!(deviation_properties(&l, &out).is_monotone());
}

#[test]
fn mismatched_sizes_are_input_errors() {
    let l = devlat::lattice::fixtures::chain4();
    let d = DeviationTable::from_fn(&l, |_, _| 0).unwrap();
    let err = monotone_adjustment(l.carrier(), &l, &d, &Enumeration::identity(3)).unwrap_err();
    assert!(err.is_input_error());
}
