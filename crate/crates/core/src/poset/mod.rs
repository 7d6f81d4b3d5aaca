//! Finite posets and the separability machinery built on top of them.
//!
//! Elements carry opaque string ids for I/O; every algorithm works on dense
//! indices `0..len()`, in the order the ids were declared.

mod amalgam;
mod shadow;
mod transform;
mod witness;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use amalgam::{check_strong_amalgam, witness_from_amalgam, AmalgamViolation, StrongAmalgamSpec};
pub use shadow::{is_shadow, shadow, Direction};
pub use transform::{witness_transform, WitnessTransform};
pub use witness::{
    is_separability_witness, locally_finite_closure, order_from_witness, prefix_shadows,
    satisfies_order_bound, witness_from_order, BlockOrder, Enumeration, PrefixShadows,
    SeparabilityWitness, SetMap, WitnessViolation,
};

/// A set of element indices. Ordered so that every output is deterministic.
pub type ElemSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    // row-major: leq[x * n + y] <=> x <= y
    leq: Vec<bool>,
}

/// An induced subposet together with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub poset: FinitePoset,
    /// `members[local] = global`, ascending.
    pub members: Vec<usize>,
}

impl SubPoset {
    pub fn local(&self, global: usize) -> Option<usize> {
        self.members.binary_search(&global).ok()
    }

    pub fn to_global(&self, set: &ElemSet) -> ElemSet {
        set.iter().map(|&i| self.members[i]).collect()
    }
}

fn check_ids(ids: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if id.contains(',') {
            return Err(Error::input(format!("element id `{id}` contains a comma")));
        }
        if index.insert(id.clone(), i).is_some() {
            return Err(Error::input(format!("duplicate element id `{id}`")));
        }
    }
    Ok(index)
}

impl FinitePoset {
    /// Builds the poset generated by `pairs`: the reflexive-transitive closure
    /// is taken, then antisymmetry is checked.
    pub fn generated(ids: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let index = check_ids(&ids)?;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::input(format!("pair ({a},{b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let poset = FinitePoset { ids, index, leq };
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    /// Same as [`FinitePoset::generated`] with pairs given by id.
    pub fn generated_by_ids<S: AsRef<str>>(ids: Vec<String>, pairs: &[(S, S)]) -> Result<Self> {
        let index = check_ids(&ids)?;
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.into()));
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::generated(ids, &idx)
    }

    /// Builds a poset from a full relation matrix, which must already be a
    /// partial order (no closure is applied).
    pub fn from_relation(ids: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = ids.len();
        if leq.len() != n * n {
            return Err(Error::input("relation matrix has the wrong size"));
        }
        let index = check_ids(&ids)?;
        let poset = FinitePoset { ids, index, leq };
        for x in 0..n {
            if !poset.leq(x, x) {
                return Err(Error::input(format!("relation not reflexive at `{}`", poset.ids[x])));
            }
        }
        poset.check_antisymmetric()?;
        for x in 0..n {
            for y in 0..n {
                if !poset.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if poset.leq(y, z) && !poset.leq(x, z) {
                        return Err(Error::input(format!(
                            "relation not transitive at ({}, {}, {})",
                            poset.ids[x], poset.ids[y], poset.ids[z]
                        )));
                    }
                }
            }
        }
        Ok(poset)
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in x + 1..n {
                if self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::input(format!(
                        "relation not antisymmetric: `{}` and `{}`",
                        self.ids[x], self.ids[y]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The chain `0 < 1 < ... < n-1`, with ids `"0"`, `"1"`, ...
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::generated((0..n).map(|i| i.to_string()).collect(), &pairs).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::generated((0..n).map(|i| i.to_string()).collect(), &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElemSet> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn ids_of(&self, set: &ElemSet) -> Vec<String> {
        set.iter().map(|&i| self.ids[i].clone()).collect()
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{x}")))
        }
    }

    pub(crate) fn check_set(&self, set: &ElemSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&m) => self.check_element(m),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `A ∩ ↓x`
    pub fn below_in(&self, a: &ElemSet, x: usize) -> ElemSet {
        a.iter().copied().filter(|&y| self.leq(y, x)).collect()
    }

    /// `A ∩ ↑x`
    pub fn above_in(&self, a: &ElemSet, x: usize) -> ElemSet {
        a.iter().copied().filter(|&y| self.leq(x, y)).collect()
    }

    /// `↓A`, the down-closure of a set.
    pub fn down_closure(&self, a: &ElemSet) -> ElemSet {
        (0..self.len()).filter(|&y| a.iter().any(|&x| self.leq(y, x))).collect()
    }

    /// `↑A`, the up-closure of a set.
    pub fn up_closure(&self, a: &ElemSet) -> ElemSet {
        (0..self.len()).filter(|&y| a.iter().any(|&x| self.leq(x, y))).collect()
    }

    pub fn maximal(&self, a: &ElemSet) -> ElemSet {
        a.iter().copied().filter(|&x| !a.iter().any(|&y| self.lt(x, y))).collect()
    }

    pub fn minimal(&self, a: &ElemSet) -> ElemSet {
        a.iter().copied().filter(|&x| !a.iter().any(|&y| self.lt(y, x))).collect()
    }

    pub fn is_chain(&self, a: &ElemSet) -> bool {
        a.iter().all(|&x| a.iter().all(|&y| self.comparable(x, y)))
    }

    pub fn is_down_set(&self, a: &ElemSet) -> bool {
        a.iter().all(|&x| (0..self.len()).all(|y| !self.leq(y, x) || a.contains(&y)))
    }

    /// Order-convex: `x ≤ y ≤ z` with `x, z ∈ A` forces `y ∈ A`.
    pub fn is_convex(&self, a: &ElemSet) -> bool {
        (0..self.len()).filter(|y| !a.contains(y)).all(|y| {
            !(a.iter().any(|&x| self.leq(x, y)) && a.iter().any(|&z| self.leq(y, z)))
        })
    }

    /// The opposite order on the same ids.
    pub fn dual(&self) -> FinitePoset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
            }
        }
        FinitePoset { ids: self.ids.clone(), index: self.index.clone(), leq }
    }

    /// The subposet induced on `subset`, local indices in ascending global order.
    pub fn induced(&self, subset: &ElemSet) -> Result<SubPoset> {
        self.check_set(subset)?;
        let members: Vec<usize> = subset.iter().copied().collect();
        let ids = members.iter().map(|&g| self.ids[g].clone()).collect::<Vec<_>>();
        let k = members.len();
        let mut leq = vec![false; k * k];
        for (i, &gi) in members.iter().enumerate() {
            for (j, &gj) in members.iter().enumerate() {
                leq[i * k + j] = self.leq(gi, gj);
            }
        }
        let index = check_ids(&ids)?;
        Ok(SubPoset { poset: FinitePoset { ids, index, leq }, members })
    }

    /// Cover pairs `(x, y)` with `x ⋖ y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Hasse diagram in Graphviz DOT, edges pointing upwards.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "\\\""));
        let _ = writeln!(s, "  rankdir=BT;");
        for id in &self.ids {
            let _ = writeln!(s, "  \"{}\";", id.replace('"', "\\\""));
        }
        for (x, y) in self.covers() {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\";",
                self.ids[x].replace('"', "\\\""),
                self.ids[y].replace('"', "\\\"")
            );
        }
        s.push_str("}\n");
        s
    }

    /// All down-sets, each exactly once, sorted by size then lexicographically.
    pub fn down_sets(&self) -> Vec<ElemSet> {
        let n = self.len();
        // Process elements in a linear extension so each decision only
        // depends on already-decided predecessors.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.lt(y, x)).count());
        let mut out = Vec::new();
        let mut included = vec![false; n];
        self.down_sets_rec(&order, 0, &mut included, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn down_sets_rec(&self, order: &[usize], k: usize, included: &mut [bool], out: &mut Vec<ElemSet>) {
        if k == order.len() {
            out.push((0..included.len()).filter(|&i| included[i]).collect());
            return;
        }
        let x = order[k];
        self.down_sets_rec(order, k + 1, included, out);
        let preds_in = (0..included.len()).all(|y| !self.lt(y, x) || included[y]);
        if preds_in {
            included[x] = true;
            self.down_sets_rec(order, k + 1, included, out);
            included[x] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn closure_is_applied_on_generation() {
        let p = FinitePoset::chain(4);
        assert!(p.leq(0, 3));
        assert!(!p.leq(3, 0));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn cycles_are_rejected() {
        let err = FinitePoset::generated(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn raw_relation_must_be_transitive() {
        let ids = vec!["a".into(), "b".into(), "c".into()];
        #[rustfmt::skip]
        let leq = vec![
            true, true, false,
            false, true, true,
            false, false, true,
        ];
        assert!(FinitePoset::from_relation(ids, leq).is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        assert!(FinitePoset::generated(vec!["a".into(), "a".into()], &[]).is_err());
    }

    #[test]
    fn down_sets_of_fence() {
        // a <= c >= b
        let p = FinitePoset::generated_by_ids(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a", "c"), ("b", "c")],
        )
        .unwrap();
        let ds = p.down_sets();
        assert_eq!(ds, vec![set(&[]), set(&[0]), set(&[1]), set(&[0, 1]), set(&[0, 1, 2])]);
    }

    #[test]
    fn convexity() {
        let p = FinitePoset::chain(3);
        assert!(p.is_convex(&set(&[0, 1])));
        assert!(!p.is_convex(&set(&[0, 2])));
    }

    #[test]
    fn dot_has_hasse_edges_only() {
        let dot = FinitePoset::chain(3).to_dot("c3");
        assert!(dot.contains("\"0\" -> \"1\""));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }
}
