#![allow(dead_code)]

use devlat::corpus::{self, rng};
use devlat::lattice::lattice_from_downsets;
use devlat::poset::{Enumeration, FinitePoset};
use devlat::semilinear::{ratio, Rational};
use devlat::FiniteDistributiveLattice;
use proptest::prelude::*;

/// A poset on `0..=max_n` elements from a random relation on a shuffled
/// carrier.
pub fn poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max_n, any::<u64>(), 0.0f64..0.7).prop_map(|(n, seed, density)| corpus::random_poset(&mut rng(seed), n, density))
}

pub fn poset_with_enumeration(max_n: usize) -> impl Strategy<Value = (FinitePoset, Enumeration)> {
    poset(max_n).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(p, order)| (p, Enumeration::new(order).unwrap()))
    })
}

/// Posets on at most `max_n` elements, one per isomorphism class, built by
/// adding a new maximal element above each down-set in turn. Independent of
/// the corpus enumeration of labeled relations.
pub fn posets_by_extension(max_n: usize, max_downsets: usize) -> Vec<FinitePoset> {
    let mut level = vec![FinitePoset::antichain(0)];
    let mut all = level.clone();
    for _ in 0..max_n {
        let mut next: Vec<FinitePoset> = Vec::new();
        let mut keys = std::collections::BTreeSet::new();
        for p in &level {
            let n = p.len();
            for below in p.down_sets() {
                let ids: Vec<String> = (0..=n).map(|i| format!("j{i}")).collect();
                let mut pairs: Vec<(usize, usize)> = p.covers();
                pairs.extend(below.iter().map(|&x| (x, n)));
                let q = FinitePoset::generated(ids, &pairs).unwrap();
                if q.down_sets().len() > max_downsets {
                    continue;
                }
                if keys.insert(iso_key(&q)) {
                    next.push(q);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

pub fn iso_key(p: &FinitePoset) -> Vec<bool> {
    let n = p.len();
    let mut best: Option<Vec<bool>> = None;
    permutations(n, &mut Vec::new(), &mut |perm| {
        let key: Vec<bool> = (0..n * n).map(|k| p.leq(perm[k / n], perm[k % n])).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap_or_default()
}

fn permutations(n: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if prefix.len() == n {
        f(prefix);
        return;
    }
    for x in 0..n {
        if !prefix.contains(&x) {
            prefix.push(x);
            permutations(n, prefix, f);
            prefix.pop();
        }
    }
}

/// Every distributive lattice with at most `max_size` elements, up to
/// isomorphism, as down-set lattices.
pub fn distributive_lattices(max_size: usize) -> Vec<FiniteDistributiveLattice> {
    posets_by_extension(max_size.saturating_sub(1), max_size).iter().map(lattice_from_downsets).collect()
}

/// The box `[-r, r]ⁿ` on a grid of step `1/den`.
pub fn grid(dim: usize, r: i64, den: i64) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rational>| (-r * den..=r * den).map(move |k| [p.clone(), vec![ratio(k, den)]].concat()))
            .collect();
    }
    out
}
