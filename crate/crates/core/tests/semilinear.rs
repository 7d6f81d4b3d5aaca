mod common;

use std::collections::BTreeSet;

use devlat::corpus::{self, rng};
use devlat::semilinear::{
    complement, eliminate, includes, interpolant, rat, upper_shadow_set, Atom, Inclusion, LinearForm, Rational,
    SemilinearSet, SetOps,
};
use devlat::Error;
use proptest::prelude::*;
use rand::Rng;

fn points(dim: usize, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut r = rng(seed);
    let mut pts = common::grid(dim, 2, 2);
    while pts.len() < count {
        let den = r.random_range(1..=4);
        pts.push(corpus::random_point(&mut r, dim, 4, den));
    }
    pts
}

fn vars(dim: usize, mask: u8) -> BTreeSet<usize> {
    (0..dim).filter(|i| mask >> i & 1 == 1).collect()
}

/// `S` with the coordinates outside `keep` fixed to those of `z`.
fn fibre(s: &SemilinearSet, keep: &BTreeSet<usize>, z: &[Rational]) -> SemilinearSet {
    let dim = s.dim();
    let atoms = keep
        .iter()
        .map(|&i| {
            let mut f = LinearForm::var(dim, i);
            f.constant = -z[i].clone();
            Atom::eq(f)
        })
        .collect();
    s.intersect(&SemilinearSet::from_atoms(dim, atoms).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn double_complement_agrees_pointwise(seed in any::<u64>(), dim in 1usize..=3) {
        let s = corpus::random_set(&mut rng(seed), dim);
        let cc = complement(&complement(&s).unwrap()).unwrap();
        let c = complement(&s).unwrap();
        for p in points(dim, seed, 2000) {
            prop_assert_eq!(s.contains(&p), cc.contains(&p));
            prop_assert_ne!(s.contains(&p), c.contains(&p));
        }
    }

    #[test]
    fn inclusion_verdicts_survive_sampling(seed in any::<u64>(), dim in 1usize..=3) {
        let mut r = rng(seed);
        let s = corpus::random_set(&mut r, dim);
        let t = corpus::random_set(&mut r, dim).intersect(&corpus::random_set(&mut r, dim)).union(&s.intersect(&corpus::random_set(&mut r, dim)));
        match includes(&s, &t).unwrap() {
            Inclusion::Holds => {
                for p in points(dim, seed, 2000) {
                    prop_assert!(!t.contains(&p) || s.contains(&p));
                }
            }
            Inclusion::Fails(w) => prop_assert!(t.contains(&w) && !s.contains(&w)),
        }
    }

    #[test]
    fn elimination_matches_the_grid(seed in any::<u64>(), dim in 1usize..=3, mask in any::<u8>()) {
        let s = corpus::random_set(&mut rng(seed), dim);
        let gone = vars(dim, mask);
        let keep: BTreeSet<usize> = (0..dim).filter(|i| !gone.contains(i)).collect();
        let e = eliminate(&s, &gone).unwrap();
        let grid = common::grid(dim, 4, 4);
        for p in grid.iter().filter(|p| s.contains(p)) {
            prop_assert!(e.contains(p));
            let mut q = p.clone();
            for &v in &gone {
                q[v] = rat(17);
            }
            prop_assert!(e.contains(&q));
        }
        for p in grid.iter().step_by(7).filter(|p| e.contains(p)) {
            let w = fibre(&s, &keep, p).witness();
            prop_assert!(w.is_some(), "no preimage for {:?}", p);
            let w = w.unwrap();
            prop_assert!(s.contains(&w));
            prop_assert!(keep.iter().all(|&i| w[i] == p[i]));
        }
    }

    #[test]
    fn interpolants_sit_between(seed in any::<u64>(), xm in any::<u8>(), ym in any::<u8>()) {
        let dim = 3;
        let mut r = rng(seed);
        let (x, y) = (vars(dim, xm), vars(dim, ym));
        let xs: Vec<usize> = x.iter().copied().collect();
        let ys: Vec<usize> = y.iter().copied().collect();
        let u = corpus::random_set_over(&mut r, dim, &xs);
        let v = upper_shadow_set(&u, &y).unwrap().union(&corpus::random_set_over(&mut r, dim, &ys));
        let ops = SetOps::default();
        match interpolant(&u, &x, &v, &y) {
            Ok(w) => {
                let xy: BTreeSet<usize> = x.intersection(&y).copied().collect();
                prop_assert!(ops.includes(&w, &u).unwrap().holds());
                prop_assert!(ops.includes(&v, &w).unwrap().holds());
                prop_assert!(ops.equivalent(&upper_shadow_set(&w, &xy).unwrap(), &w).unwrap());
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn shadow_sandwich_and_idempotence(seed in any::<u64>(), dim in 1usize..=3, mask in any::<u8>()) {
        let u = corpus::random_set(&mut rng(seed), dim);
        let x = vars(dim, mask);
        let ops = SetOps::default();
        let up = upper_shadow_set(&u, &x).unwrap();
        let low = ops.lower_shadow_set(&u, &x).unwrap();
        prop_assert!(ops.includes(&up, &u).unwrap().holds());
        prop_assert!(ops.includes(&u, &low).unwrap().holds());
        prop_assert!(ops.equivalent(&upper_shadow_set(&up, &x).unwrap(), &up).unwrap());
        prop_assert!(ops.equivalent(&ops.lower_shadow_set(&low, &x).unwrap(), &low).unwrap());
    }
}

#[test]
fn ceiling_fails_loudly() {
    let mut r = rng(1);
    let big = (0..6).fold(SemilinearSet::empty(3), |acc, _| acc.union(&corpus::random_set(&mut r, 3)));
    assert!(matches!(SetOps::new(4).complement(&big), Err(Error::ResourceLimit { .. })));
}
