//! Finite lattices with zero, Birkhoff down-set lattices, complete normality
//! and prime ideals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{ElemSet, FinitePoset};

/// A finite lattice given by its order, with join and meet tables derived
/// from it.
///
/// Distributivity is checked on construction unless the lattice is built with
/// [`FiniteDistributiveLattice::from_order_unchecked`], which exists so that
/// non-distributive fixtures such as `M₃` can be fed to the checks below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDistributiveLattice {
    carrier: FinitePoset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteDistributiveLattice {
    pub fn from_order(carrier: FinitePoset) -> Result<Self> {
        let l = Self::from_order_unchecked(carrier)?;
        if let Some((x, y, z)) = l.distributivity_failure() {
            return Err(Error::input(format!(
                "not distributive: {} ∧ ({} ∨ {}) differs from its expansion",
                l.id(x),
                l.id(y),
                l.id(z)
            )));
        }
        Ok(l)
    }

    /// Like [`from_order`](Self::from_order) but skips the distributive law.
    pub fn from_order_unchecked(carrier: FinitePoset) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::input("a lattice with zero has at least one element"));
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = bound(&carrier, x, y, true)
                    .ok_or_else(|| Error::input(format!("`{}` and `{}` have no join", carrier.id(x), carrier.id(y))))?;
                meet[x * n + y] = bound(&carrier, x, y, false)
                    .ok_or_else(|| Error::input(format!("`{}` and `{}` have no meet", carrier.id(x), carrier.id(y))))?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| carrier.leq(b, x))).expect("joins exist");
        let top = (0..n).find(|&t| (0..n).all(|x| carrier.leq(x, t))).expect("meets exist");
        Ok(FiniteDistributiveLattice { carrier, join, meet, bottom, top })
    }

    /// Checks that `bottom` names the least element, then builds the lattice.
    pub fn with_bottom(carrier: FinitePoset, bottom: &str) -> Result<Self> {
        let b = carrier.index_of(bottom)?;
        let l = Self::from_order(carrier)?;
        if l.bottom != b {
            return Err(Error::input(format!("`{bottom}` is not the least element")));
        }
        Ok(l)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn carrier(&self) -> &FinitePoset {
        &self.carrier
    }

    pub fn id(&self, x: usize) -> &str {
        self.carrier.id(x)
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.carrier.index_of(id)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.carrier.leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// First triple (in lexicographic order) with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn to_dot(&self, name: &str) -> String {
        self.carrier.to_dot(name)
    }
}

fn bound(p: &FinitePoset, x: usize, y: usize, upper: bool) -> Option<usize> {
    let n = p.len();
    let ok = |z: usize| if upper { p.leq(x, z) && p.leq(y, z) } else { p.leq(z, x) && p.leq(z, y) };
    let cands: Vec<usize> = (0..n).filter(|&z| ok(z)).collect();
    cands
        .iter()
        .copied()
        .find(|&z| cands.iter().all(|&w| if upper { p.leq(z, w) } else { p.leq(w, z) }))
}

/// Writes a set of ids as `{a|b}`; the empty set is `{}`.
pub fn set_id(p: &FinitePoset, s: &ElemSet) -> String {
    let inner: Vec<&str> = s.iter().map(|&x| p.id(x)).collect();
    format!("{{{}}}", inner.join("|"))
}

/// The lattice of down-sets of `j` ordered by inclusion. Elements are listed
/// by size, then lexicographically, and named with [`set_id`].
pub fn lattice_from_downsets(j: &FinitePoset) -> FiniteDistributiveLattice {
    let (lattice, _) = lattice_from_downsets_with_sets(j);
    lattice
}

/// Like [`lattice_from_downsets`], also returning the down-set behind each
/// element.
pub fn lattice_from_downsets_with_sets(j: &FinitePoset) -> (FiniteDistributiveLattice, Vec<ElemSet>) {
    let sets = j.down_sets();
    let n = sets.len();
    let ids = sets.iter().map(|s| set_id(j, s)).collect();
    let mut leq = vec![false; n * n];
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            leq[a * n + b] = sa.is_subset(sb);
        }
    }
    let carrier = FinitePoset::from_relation(ids, leq).expect("inclusion is a partial order");
    let lattice = FiniteDistributiveLattice::from_order_unchecked(carrier).expect("down-sets form a lattice");
    (lattice, sets)
}

/// Checks `x ∧ z = y ∧ z = 0 ⇒ (x ∨ y) ∧ z = 0`; reports the first failing
/// triple.
pub fn is_zero_distributive(d: &FiniteDistributiveLattice) -> Result<(), (usize, usize, usize)> {
    let n = d.len();
    let zero = d.bottom();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if d.meet(x, z) == zero && d.meet(y, z) == zero && d.meet(d.join(x, y), z) != zero {
                    return Err((x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// Some `(x, y)` with `a ∨ b = a ∨ y = x ∨ b` and `x ∧ y = 0`, if any.
pub fn normality_witness(d: &FiniteDistributiveLattice, a: usize, b: usize) -> Option<(usize, usize)> {
    let n = d.len();
    let ab = d.join(a, b);
    let xs: Vec<usize> = (0..n).filter(|&x| d.join(x, b) == ab).collect();
    let ys: Vec<usize> = (0..n).filter(|&y| d.join(a, y) == ab).collect();
    for &x in &xs {
        for &y in &ys {
            if d.meet(x, y) == d.bottom() {
                return Some((x, y));
            }
        }
    }
    None
}

/// Complete normality; on failure, the first pair `(a, b)` in lexicographic
/// order that admits no normality witness.
pub fn is_completely_normal(d: &FiniteDistributiveLattice) -> Result<(), (usize, usize)> {
    for a in 0..d.len() {
        for b in 0..d.len() {
            if normality_witness(d, a, b).is_none() {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// Prime ideals ordered by inclusion. Element `i` of `poset` is `ideals[i]`.
#[derive(Clone, Debug)]
pub struct PrimeIdealPoset {
    pub ideals: Vec<ElemSet>,
    pub poset: FinitePoset,
}

pub fn is_prime_ideal(d: &FiniteDistributiveLattice, s: &ElemSet) -> bool {
    if !s.contains(&d.bottom()) || s.len() == d.len() || !d.carrier().is_down_set(s) {
        return false;
    }
    let closed = s.iter().all(|&x| s.iter().all(|&y| s.contains(&d.join(x, y))));
    let prime = (0..d.len()).all(|x| (0..d.len()).all(|y| !s.contains(&d.meet(x, y)) || s.contains(&x) || s.contains(&y)));
    closed && prime
}

/// All prime ideals of `d`, found by filtering its down-sets.
pub fn prime_ideal_poset(d: &FiniteDistributiveLattice) -> PrimeIdealPoset {
    let ideals: Vec<ElemSet> = d.carrier().down_sets().into_iter().filter(|s| is_prime_ideal(d, s)).collect();
    let k = ideals.len();
    let ids = ideals.iter().map(|s| set_id(d.carrier(), s)).collect();
    let mut leq = vec![false; k * k];
    for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate() {
            leq[i * k + j] = a.is_subset(b);
        }
    }
    let poset = FinitePoset::from_relation(ids, leq).expect("inclusion is a partial order");
    PrimeIdealPoset { ideals, poset }
}

/// Every principal up-set is a chain; on failure, the first `x` whose up-set
/// is not.
pub fn is_root_system(p: &FinitePoset) -> Result<(), usize> {
    for x in 0..p.len() {
        if !p.is_chain(&p.up_closure(&ElemSet::from([x]))) {
            return Err(x);
        }
    }
    Ok(())
}

/// Verdicts of every lattice-level check, in report form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, schemars::JsonSchema)]
pub struct LatticeReport {
    pub elements: usize,
    pub distributive: bool,
    pub zero_distributive: bool,
    pub zero_distributive_counterexample: Option<[String; 3]>,
    pub completely_normal: bool,
    pub completely_normal_counterexample: Option<[String; 2]>,
    pub prime_ideals: Vec<String>,
    pub root_system: bool,
    pub root_system_counterexample: Option<String>,
}

pub fn lattice_report(d: &FiniteDistributiveLattice) -> LatticeReport {
    let id = |x: usize| d.id(x).to_string();
    let zd = is_zero_distributive(d);
    let cn = is_completely_normal(d);
    let primes = prime_ideal_poset(d);
    let rs = is_root_system(&primes.poset);
    LatticeReport {
        elements: d.len(),
        distributive: d.distributivity_failure().is_none(),
        zero_distributive: zd.is_ok(),
        zero_distributive_counterexample: zd.err().map(|(x, y, z)| [id(x), id(y), id(z)]),
        completely_normal: cn.is_ok(),
        completely_normal_counterexample: cn.err().map(|(a, b)| [id(a), id(b)]),
        prime_ideals: primes.poset.ids().to_vec(),
        root_system: rs.is_ok(),
        root_system_counterexample: rs.err().map(|x| primes.poset.id(x).to_string()),
    }
}

/// Small named lattices used by tests, examples and the CLI.
pub mod fixtures {
    use super::*;

    fn ids(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> FiniteDistributiveLattice {
        FiniteDistributiveLattice::from_order(FinitePoset::chain(n)).expect("chains are distributive")
    }

    /// `{0, a, b, 1}` with `a`, `b` incomparable.
    pub fn square() -> FiniteDistributiveLattice {
        let p = FinitePoset::generated_by_ids(ids(&["0", "a", "b", "1"]), &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .expect("valid order");
        FiniteDistributiveLattice::from_order(p).expect("distributive")
    }

    /// `0 < c < a, b < 1`: distributive but not completely normal.
    pub fn five_ncn() -> FiniteDistributiveLattice {
        let p = FinitePoset::generated_by_ids(
            ids(&["0", "c", "a", "b", "1"]),
            &[("0", "c"), ("c", "a"), ("c", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("valid order");
        FiniteDistributiveLattice::from_order(p).expect("distributive")
    }

    /// The diamond `M₃`, not distributive.
    pub fn m3() -> FiniteDistributiveLattice {
        let p = FinitePoset::generated_by_ids(
            ids(&["0", "a", "b", "c", "1"]),
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("valid order");
        FiniteDistributiveLattice::from_order_unchecked(p).expect("M3 is a lattice")
    }

    /// `0 < a < b < 1`.
    pub fn chain4() -> FiniteDistributiveLattice {
        let p = FinitePoset::generated_by_ids(ids(&["0", "a", "b", "1"]), &[("0", "a"), ("a", "b"), ("b", "1")])
            .expect("valid order");
        FiniteDistributiveLattice::from_order(p).expect("chains are distributive")
    }
}
