//! Deviations on finite lattices: verification, properties and backtracking
//! search.

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteDistributiveLattice;

/// A total binary operation `L × L → L`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeviationTable {
    n: usize,
    d: Vec<usize>,
}

impl DeviationTable {
    /// Wraps a raw table without checking the deviation axioms.
    pub fn raw(lattice: &FiniteDistributiveLattice, d: Vec<usize>) -> Result<Self> {
        Self::map(lattice.len(), lattice, d)
    }

    /// A map `M × M → D` where `M` has `n` elements.
    pub fn map(n: usize, host: &FiniteDistributiveLattice, d: Vec<usize>) -> Result<Self> {
        if d.len() != n * n {
            return Err(Error::input(format!("table has {} entries, expected {}", d.len(), n * n)));
        }
        if let Some(&v) = d.iter().find(|&&v| v >= host.len()) {
            return Err(Error::UnknownElement(v.to_string()));
        }
        Ok(DeviationTable { n, d })
    }

    pub fn from_fn(lattice: &FiniteDistributiveLattice, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = lattice.len();
        let d = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::raw(lattice, d)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.d[x * self.n + y]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// `x ≤ y ∨ d(x, y)`
    Cover,
    /// `d(x, y) ∧ d(y, x) = 0`
    Disjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeviationViolation {
    pub axiom: Axiom,
    pub pair: (usize, usize),
}

/// Checks both deviation axioms. Axiom 1 is swept over all pairs first, then
/// axiom 2; the first failing pair in lexicographic order is reported.
pub fn check_deviation(lattice: &FiniteDistributiveLattice, t: &DeviationTable) -> Result<(), DeviationViolation> {
    let n = lattice.len();
    assert_eq!(t.len(), n, "table built for another lattice");
    for x in 0..n {
        for y in 0..n {
            if !lattice.leq(x, lattice.join(y, t.get(x, y))) {
                return Err(DeviationViolation { axiom: Axiom::Cover, pair: (x, y) });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if lattice.meet(t.get(x, y), t.get(y, x)) != lattice.bottom() {
                return Err(DeviationViolation { axiom: Axiom::Disjoint, pair: (x, y) });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    /// `(x, x', y)` with `x ≤ x'` and `d(x, y) ≰ d(x', y)`.
    pub left_isotone: Option<(usize, usize, usize)>,
    /// `(x, y, y')` with `y ≤ y'` and `d(x, y') ≰ d(x, y)`.
    pub right_antitone: Option<(usize, usize, usize)>,
    /// `(x, y, z)` with `d(x, z) ≰ d(x, y) ∨ d(y, z)`.
    pub cevian: Option<(usize, usize, usize)>,
}

impl PropertyReport {
    pub fn is_left_isotone(&self) -> bool {
        self.left_isotone.is_none()
    }

    pub fn is_right_antitone(&self) -> bool {
        self.right_antitone.is_none()
    }

    pub fn is_monotone(&self) -> bool {
        self.is_left_isotone() && self.is_right_antitone()
    }

    pub fn is_cevian(&self) -> bool {
        self.cevian.is_none()
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

/// Sweeps every quantifier; each counterexample is the first in lexicographic
/// order.
pub fn deviation_properties(lattice: &FiniteDistributiveLattice, t: &DeviationTable) -> PropertyReport {
    let l = lattice;
    let n = l.len();
    PropertyReport {
        left_isotone: triples(n).find(|&(x, x2, y)| l.leq(x, x2) && !l.leq(t.get(x, y), t.get(x2, y))),
        right_antitone: triples(n).find(|&(x, y, y2)| l.leq(y, y2) && !l.leq(t.get(x, y2), t.get(x, y))),
        cevian: triples(n).find(|&(x, y, z)| !l.leq(t.get(x, z), l.join(t.get(x, y), t.get(y, z)))),
    }
}

/// Monotone in the combined sense: `x ≤ x'` and `y' ≤ y` imply
/// `d(x, y) ≤ d(x', y')`. Reports `(x, y, x', y')`.
pub fn monotone_failure(
    host: &FiniteDistributiveLattice,
    order: &crate::poset::FinitePoset,
    t: &DeviationTable,
) -> Option<(usize, usize, usize, usize)> {
    let n = order.len();
    for x in 0..n {
        for y in 0..n {
            for x2 in (0..n).filter(|&x2| order.leq(x, x2)) {
                for y2 in (0..n).filter(|&y2| order.leq(y2, y)) {
                    if !host.leq(t.get(x, y), t.get(x2, y2)) {
                        return Some((x, y, x2, y2));
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct SearchConstraints {
    #[serde(default)]
    pub require_monotone: bool,
    #[serde(default)]
    pub require_cevian: bool,
}

const MAX_SEARCH_LEN: usize = 64;

struct Search<'a> {
    l: &'a FiniteDistributiveLattice,
    n: usize,
    cons: SearchConstraints,
    value: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(l: &'a FiniteDistributiveLattice, cons: SearchConstraints) -> Result<Self> {
        let n = l.len();
        if n > MAX_SEARCH_LEN {
            return Err(Error::ResourceLimit { what: "deviation search lattice size", limit: MAX_SEARCH_LEN });
        }
        Ok(Search { l, n, cons, value: vec![None; n * n] })
    }

    /// Candidate sets `{c : x ≤ y ∨ c}`, then pruned so that every value of
    /// `(x, y)` has a disjoint partner at `(y, x)`.
    fn initial_domains(&self) -> Vec<u64> {
        let (l, n) = (self.l, self.n);
        let mut dom = vec![0u64; n * n];
        for x in 0..n {
            for y in 0..n {
                for c in 0..n {
                    if l.leq(x, l.join(y, c)) {
                        dom[x * n + y] |= 1 << c;
                    }
                }
            }
        }
        loop {
            let mut changed = false;
            for k in 0..n * n {
                let mirror = (k % n) * n + k / n;
                let supported = bits(dom[k])
                    .filter(|&c| bits(dom[mirror]).any(|c2| l.meet(c, c2) == l.bottom()))
                    .fold(0u64, |acc, c| acc | 1 << c);
                if supported != dom[k] {
                    dom[k] = supported;
                    changed = true;
                }
            }
            if !changed {
                return dom;
            }
        }
    }

    fn consistent(&self, x: usize, y: usize, c: usize) -> bool {
        let (l, n) = (self.l, self.n);
        if let Some(m) = self.value[y * n + x] {
            if l.meet(c, m) != l.bottom() {
                return false;
            }
        }
        if x == y && c != l.bottom() {
            return false;
        }
        if self.cons.require_monotone {
            for z in 0..n {
                if let Some(v) = self.value[z * n + y] {
                    if (l.leq(x, z) && !l.leq(c, v)) || (l.leq(z, x) && !l.leq(v, c)) {
                        return false;
                    }
                }
                if let Some(v) = self.value[x * n + z] {
                    if (l.leq(y, z) && !l.leq(v, c)) || (l.leq(z, y) && !l.leq(c, v)) {
                        return false;
                    }
                }
            }
        }
        if self.cons.require_cevian && !self.cevian_ok(x, y, c) {
            return false;
        }
        true
    }

    /// Cevian inequality on every fully decided triple that uses `(x, y) = c`.
    fn cevian_ok(&self, x: usize, y: usize, c: usize) -> bool {
        let (l, n) = (self.l, self.n);
        let get = |a: usize, b: usize| if (a, b) == (x, y) { Some(c) } else { self.value[a * n + b] };
        let holds = |a: usize, b: usize, z: usize| match (get(a, z), get(a, b), get(b, z)) {
            (Some(az), Some(ab), Some(bz)) => l.leq(az, l.join(ab, bz)),
            _ => true,
        };
        // (x, y) can play the role of (a, z), (a, b) or (b, z).
        (0..n).all(|b| holds(x, b, y)) && (0..n).all(|z| holds(x, y, z)) && (0..n).all(|a| holds(a, x, y))
    }

    /// Restricts undecided domains after `(x, y) := c`; false if one empties.
    fn forward(&self, dom: &mut [u64], x: usize, y: usize, c: usize) -> bool {
        let (l, n) = (self.l, self.n);
        let mut restrict = |k: usize, keep: &dyn Fn(usize) -> bool| {
            if self.value[k].is_some() {
                return true;
            }
            dom[k] = bits(dom[k]).filter(|&v| keep(v)).fold(0u64, |acc, v| acc | 1 << v);
            dom[k] != 0
        };
        if !restrict(y * n + x, &|v| l.meet(c, v) == l.bottom()) {
            return false;
        }
        if self.cons.require_monotone {
            for z in 0..n {
                if z != x && l.leq(x, z) && !restrict(z * n + y, &|v| l.leq(c, v)) {
                    return false;
                }
                if z != x && l.leq(z, x) && !restrict(z * n + y, &|v| l.leq(v, c)) {
                    return false;
                }
                if z != y && l.leq(y, z) && !restrict(x * n + z, &|v| l.leq(v, c)) {
                    return false;
                }
                if z != y && l.leq(z, y) && !restrict(x * n + z, &|v| l.leq(c, v)) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, dom: Vec<u64>, k: usize, visit: &mut dyn FnMut(&[Option<usize>]) -> bool) -> bool {
        if k == self.n * self.n {
            return visit(&self.value);
        }
        let (x, y) = (k / self.n, k % self.n);
        for c in bits(dom[k]) {
            if !self.consistent(x, y, c) {
                continue;
            }
            let mut next = dom.clone();
            if !self.forward(&mut next, x, y, c) {
                continue;
            }
            self.value[k] = Some(c);
            let stop = self.run(next, k + 1, visit);
            self.value[k] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn finish(l: &FiniteDistributiveLattice, v: &[Option<usize>]) -> DeviationTable {
    DeviationTable { n: l.len(), d: v.iter().map(|c| c.expect("complete assignment")).collect() }
}

/// Backtracking over pairs in lexicographic order, candidates in index order.
/// Returns the first table in that order satisfying the axioms and the
/// requested properties.
pub fn search_deviation(lattice: &FiniteDistributiveLattice, cons: SearchConstraints) -> Result<Option<DeviationTable>> {
    Ok(enumerate_deviations(lattice, cons, 1)?.pop())
}

/// Up to `limit` distinct deviations, in search order.
pub fn enumerate_deviations(
    lattice: &FiniteDistributiveLattice,
    cons: SearchConstraints,
    limit: usize,
) -> Result<Vec<DeviationTable>> {
    let mut s = Search::new(lattice, cons)?;
    let dom = s.initial_domains();
    let mut out = Vec::new();
    if limit == 0 || dom.contains(&0) {
        return Ok(out);
    }
    s.run(dom, 0, &mut |v| {
        out.push(finish(lattice, v));
        out.len() >= limit
    });
    Ok(out)
}

/// A random deviation: pairs in lexicographic order, each value drawn
/// uniformly from the candidates still consistent with the mirror pair.
/// `None` iff the lattice admits no deviation.
pub fn random_deviation<R: Rng + ?Sized>(lattice: &FiniteDistributiveLattice, rng: &mut R) -> Result<Option<DeviationTable>> {
    let mut s = Search::new(lattice, SearchConstraints::default())?;
    let mut dom = s.initial_domains();
    if dom.contains(&0) {
        return Ok(None);
    }
    let n = s.n;
    for k in 0..n * n {
        let (x, y) = (k / n, k % n);
        let cands: Vec<usize> = bits(dom[k]).filter(|&c| s.consistent(x, y, c)).collect();
        let &c = cands.choose(rng).expect("mirror-consistent domains never empty");
        let ok = s.forward(&mut dom, x, y, c);
        debug_assert!(ok);
        s.value[k] = Some(c);
    }
    Ok(Some(finish(lattice, &s.value)))
}
