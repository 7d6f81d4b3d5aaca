//! Seeded generators for test and benchmark corpora. Every generator takes
//! the RNG by reference, so a fixed seed fixes the whole corpus.

use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::FiniteDistributiveLattice;
use crate::poset::{check_strong_amalgam, ElemSet, Enumeration, FinitePoset, StrongAmalgamSpec};
use crate::semilinear::{rat, ratio, Atom, Cell, LinearForm, Rational, Rel, SemilinearSet};
use crate::vlat::VLTerm;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Each pair `i < j` is related with probability `density`, then closed.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    FinitePoset::generated(ids(n), &pairs).expect("an acyclic relation closes to a partial order")
}

pub fn random_enumeration<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Enumeration {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Enumeration::new(order).expect("a permutation")
}

/// Every partial order on `n` labeled elements.
pub fn labeled_posets(n: usize) -> Vec<FinitePoset> {
    let strict: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << strict.len() {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (k, &(a, b)) in strict.iter().enumerate() {
            if mask >> k & 1 == 1 {
                leq[a * n + b] = true;
            }
        }
        if let Ok(p) = FinitePoset::from_relation(ids(n), leq) {
            out.push(p);
        }
    }
    out
}

fn canonical_key(p: &FinitePoset) -> Vec<bool> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let key: Vec<bool> = (0..n * n).map(|k| p.leq(perm[k / n], perm[k % n])).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One poset per isomorphism class, on `0 ..= max_n` elements.
pub fn posets_up_to_iso(max_n: usize) -> Vec<FinitePoset> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let mut seen = BTreeSet::new();
        for p in labeled_posets(n) {
            if seen.insert(canonical_key(&p)) {
                out.push(p);
            }
        }
    }
    out
}

/// An isotone map `M → D`, built along a linear extension by choosing each
/// value above the join of the values below.
pub fn random_isotone_map<R: Rng + ?Sized>(rng: &mut R, m: &FinitePoset, d: &FiniteDistributiveLattice) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by_key(|&x| (0..m.len()).filter(|&y| m.lt(y, x)).count());
    let mut f = vec![d.bottom(); m.len()];
    for x in order {
        let floor = d.join_all((0..m.len()).filter(|&y| m.lt(y, x)).map(|y| f[y]));
        let above: Vec<usize> = (0..d.len()).filter(|&v| d.leq(floor, v)).collect();
        f[x] = *above.choose(rng).expect("the floor itself");
    }
    f
}

/// A random map `M × M → D` with `f(x) ≤ f(y) ∨ d(x, y)` everywhere.
pub fn random_map_over<R: Rng + ?Sized>(rng: &mut R, n: usize, d: &FiniteDistributiveLattice, f: &[usize]) -> Vec<usize> {
    (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            let v = rng.random_range(0..d.len());
            if d.leq(f[x], d.join(f[y], v)) {
                v
            } else {
                d.join(v, f[x])
            }
        })
        .collect()
}

/// A random map `M × M → D` with `d(x, y) ∧ d(y, x) = 0` everywhere.
pub fn random_disjoint_map<R: Rng + ?Sized>(rng: &mut R, n: usize, d: &FiniteDistributiveLattice) -> Vec<usize> {
    let mut t = vec![d.bottom(); n * n];
    for x in 0..n {
        for y in x..n {
            let v = rng.random_range(0..d.len());
            if x == y {
                t[x * n + x] = d.bottom();
                continue;
            }
            let partners: Vec<usize> = (0..d.len()).filter(|&w| d.meet(v, w) == d.bottom()).collect();
            t[x * n + y] = v;
            t[y * n + x] = *partners.choose(rng).expect("bottom is always a partner");
        }
    }
    t
}

/// A random strong amalgam with carrier of `carrier_n` elements. Each
/// element gets a home index, members are `M_p = {x : home(x) ≤ p}`, and
/// generating pairs only join elements with comparable homes; candidates
/// are kept only if every clause checks. Falls back to a chain of nested
/// members, which is always a strong amalgam.
pub fn random_amalgam_spec<R: Rng + ?Sized>(rng: &mut R, carrier_n: usize, index_n: usize) -> StrongAmalgamSpec {
    let index_n = index_n.max(1);
    for _ in 0..200 {
        let ix = random_poset(rng, index_n, 0.4);
        let home: Vec<usize> = (0..carrier_n).map(|_| rng.random_range(0..index_n)).collect();
        let mut pairs = Vec::new();
        for a in 0..carrier_n {
            for b in a + 1..carrier_n {
                if ix.comparable(home[a], home[b]) && rng.random_bool(0.35) {
                    pairs.push((a, b));
                }
            }
        }
        let m = FinitePoset::generated(ids(carrier_n), &pairs).expect("acyclic");
        let family: Vec<ElemSet> = (0..index_n).map(|p| (0..carrier_n).filter(|&x| ix.leq(home[x], p)).collect()).collect();
        let spec = StrongAmalgamSpec::new(m, ix, family).expect("members lie in the carrier");
        if check_strong_amalgam(&spec).is_ok() {
            return spec;
        }
    }
    let m = random_poset(rng, carrier_n, 0.35);
    let mut order: Vec<usize> = (0..carrier_n).collect();
    order.shuffle(rng);
    let family = (0..index_n)
        .map(|p| order[..(p + 1) * carrier_n / index_n].iter().copied().collect())
        .collect();
    StrongAmalgamSpec::new(m, FinitePoset::chain(index_n), family).expect("members lie in the carrier")
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, dim: usize, vars: &[usize]) -> LinearForm {
    let mut f = LinearForm::zero(dim);
    for &v in vars {
        f.coeffs[v] = rat(rng.random_range(-3..=3));
    }
    f.constant = rat(rng.random_range(-2..=2));
    f
}

/// A union of 1–3 cells of 1–3 atoms over the coordinates in `vars`, small
/// integer coefficients.
pub fn random_set_over<R: Rng + ?Sized>(rng: &mut R, dim: usize, vars: &[usize]) -> SemilinearSet {
    let cells = (0..rng.random_range(1..=3))
        .map(|_| {
            let atoms = (0..rng.random_range(1..=3))
                .map(|_| {
                    let rel = *[Rel::Gt, Rel::Gt, Rel::Ge, Rel::Ge, Rel::Eq].choose(rng).expect("nonempty");
                    Atom::new(random_form(rng, dim, vars), rel)
                })
                .collect();
            Cell::new(dim, atoms).expect("same dimension")
        })
        .collect();
    SemilinearSet::new(dim, cells).expect("same dimension")
}

pub fn random_set<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> SemilinearSet {
    let vars: Vec<usize> = (0..dim).collect();
    random_set_over(rng, dim, &vars)
}

/// Uniform over the box `[-r, r]ⁿ` on a grid of step `1/den`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, r: i64, den: i64) -> Vec<Rational> {
    (0..dim).map(|_| ratio(rng.random_range(-r * den..=r * den), den)).collect()
}

const SCALARS: [(i64, i64); 6] = [(-2, 1), (-1, 1), (1, 2), (2, 1), (3, 1), (-1, 3)];

/// A term of depth at most `depth` over `n` generators.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> VLTerm {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..6) {
            0 => VLTerm::one(),
            1 => {
                let (a, b) = *SCALARS.choose(rng).expect("nonempty");
                VLTerm::constant(ratio(a, b))
            }
            _ => VLTerm::gen(rng.random_range(0..n.max(1))),
        };
    }
    let a = random_term(rng, n, depth - 1);
    match rng.random_range(0..7) {
        0 => {
            let (p, q) = *SCALARS.choose(rng).expect("nonempty");
            a.scale(ratio(p, q))
        }
        1 => a.pos(),
        2 | 3 => a.add(random_term(rng, n, depth - 1)),
        4 => a.sub(random_term(rng, n, depth - 1)),
        5 => a.join(random_term(rng, n, depth - 1)),
        _ => a.meet(random_term(rng, n, depth - 1)),
    }
}
