//! Separability witnesses, their construction from an enumeration and the
//! block enumeration recovered from a witness.

use serde::Serialize;

use super::{ElemSet, FinitePoset};
use crate::error::{Error, Result};

/// A pair of set maps `(A, B)`: `A(z)` is a finite set of upper bounds of
/// `z`, `B(z)` a finite set of lower bounds, and `A(x) ∩ B(y) ≠ ∅` for all
/// `x ≤ y`. Construction only checks totality; the order conditions are
/// checked by [`is_separability_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityWitness {
    upper: Vec<ElemSet>,
    lower: Vec<ElemSet>,
}

impl SeparabilityWitness {
    pub fn new(p: &FinitePoset, upper: Vec<ElemSet>, lower: Vec<ElemSet>) -> Result<Self> {
        if upper.len() != p.len() || lower.len() != p.len() {
            return Err(Error::input("witness maps must be defined on every element"));
        }
        for s in upper.iter().chain(&lower) {
            p.check_set(s)?;
        }
        Ok(SeparabilityWitness { upper, lower })
    }

    /// `A(x) = B(x) = {x}`. Separating only on antichains.
    pub fn identity(n: usize) -> Self {
        let singletons: Vec<ElemSet> = (0..n).map(|x| ElemSet::from([x])).collect();
        SeparabilityWitness { upper: singletons.clone(), lower: singletons }
    }

    /// `A(x) = ↑x`, `B(x) = ↓x`: valid on every finite poset.
    pub fn principal(p: &FinitePoset) -> Self {
        let upper = (0..p.len()).map(|x| p.up_closure(&ElemSet::from([x]))).collect();
        let lower = (0..p.len()).map(|x| p.down_closure(&ElemSet::from([x]))).collect();
        SeparabilityWitness { upper, lower }
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    /// `A(x)`
    pub fn upper(&self, x: usize) -> &ElemSet {
        &self.upper[x]
    }

    /// `B(x)`
    pub fn lower(&self, x: usize) -> &ElemSet {
        &self.lower[x]
    }

    pub fn swapped(&self) -> Self {
        SeparabilityWitness { upper: self.lower.clone(), lower: self.upper.clone() }
    }

    pub(crate) fn from_parts(upper: Vec<ElemSet>, lower: Vec<ElemSet>) -> Self {
        debug_assert_eq!(upper.len(), lower.len());
        SeparabilityWitness { upper, lower }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessViolation {
    /// `member ∈ A(element)` but `element ≰ member`.
    NotUpperBound { element: usize, member: usize },
    /// `member ∈ B(element)` but `member ≰ element`.
    NotLowerBound { element: usize, member: usize },
    /// `x ≤ y` but `A(x) ∩ B(y) = ∅`.
    EmptyIntersection { x: usize, y: usize },
}

/// Checks every clause of the witness definition. Bound clauses are checked
/// first; comparable pairs are then scanned strict pairs first (lexicographic),
/// then the diagonal.
pub fn is_separability_witness(p: &FinitePoset, w: &SeparabilityWitness) -> Result<(), WitnessViolation> {
    assert_eq!(p.len(), w.len(), "witness built for a different poset");
    let n = p.len();
    for z in 0..n {
        if let Some(&m) = w.upper[z].iter().find(|&&m| !p.leq(z, m)) {
            return Err(WitnessViolation::NotUpperBound { element: z, member: m });
        }
        if let Some(&m) = w.lower[z].iter().find(|&&m| !p.leq(m, z)) {
            return Err(WitnessViolation::NotLowerBound { element: z, member: m });
        }
    }
    let strict = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| p.lt(x, y));
    let diagonal = (0..n).map(|x| (x, x));
    for (x, y) in strict.chain(diagonal) {
        if w.upper[x].is_disjoint(&w.lower[y]) {
            return Err(WitnessViolation::EmptyIntersection { x, y });
        }
    }
    Ok(())
}

/// A finite well-ordering: a listing of every element exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl Enumeration {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (k, &x) in order.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(Error::input("enumeration must list every element exactly once"));
            }
            position[x] = k;
        }
        Ok(Enumeration { order, position })
    }

    pub fn identity(n: usize) -> Self {
        Enumeration { order: (0..n).collect(), position: (0..n).collect() }
    }

    /// Parses a comma separated list of ids, e.g. `"0,a,b,1"`.
    pub fn parse(p: &FinitePoset, text: &str) -> Result<Self> {
        let order = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| p.index_of(s))
            .collect::<Result<Vec<_>>>()?;
        if order.len() != p.len() {
            return Err(Error::input(format!(
                "enumeration lists {} elements, poset has {}",
                order.len(),
                p.len()
            )));
        }
        Self::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    /// Rank of `x` in the enumeration.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// `x ⊏ y`
    pub fn before(&self, x: usize, y: usize) -> bool {
        self.position[x] < self.position[y]
    }

    /// The strict prefix `{x : x ⊏ c}`.
    pub fn strict_prefix(&self, c: usize) -> ElemSet {
        self.order[..self.position[c]].iter().copied().collect()
    }
}

/// Minimal upper (`U_c`) and lower (`V_c`) shadows of each element on its own
/// strict prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixShadows {
    pub upper: Vec<ElemSet>,
    pub lower: Vec<ElemSet>,
}

pub fn prefix_shadows(p: &FinitePoset, e: &Enumeration) -> PrefixShadows {
    assert_eq!(p.len(), e.len(), "enumeration built for a different poset");
    let n = p.len();
    let mut upper = vec![ElemSet::new(); n];
    let mut lower = vec![ElemSet::new(); n];
    let mut prefix = ElemSet::new();
    for &c in e.as_slice() {
        upper[c] = p.minimal(&p.above_in(&prefix, c));
        lower[c] = p.maximal(&p.below_in(&prefix, c));
        prefix.insert(c);
    }
    PrefixShadows { upper, lower }
}

/// Builds a witness by recursion along the enumeration:
/// `A(c) = {c} ∪ ⋃_{u ∈ U_c} A(u)` and `B(c) = {c} ∪ ⋃_{v ∈ V_c} B(v)`.
pub fn witness_from_order(p: &FinitePoset, e: &Enumeration) -> Result<SeparabilityWitness> {
    if p.len() != e.len() {
        return Err(Error::input("enumeration does not match the poset"));
    }
    let shadows = prefix_shadows(p, e);
    let n = p.len();
    let mut upper = vec![ElemSet::new(); n];
    let mut lower = vec![ElemSet::new(); n];
    for &c in e.as_slice() {
        let mut a = ElemSet::from([c]);
        for &u in &shadows.upper[c] {
            a.extend(upper[u].iter().copied());
        }
        let mut b = ElemSet::from([c]);
        for &v in &shadows.lower[c] {
            b.extend(lower[v].iter().copied());
        }
        upper[c] = a;
        lower[c] = b;
    }
    Ok(SeparabilityWitness { upper, lower })
}

/// Checks that `x ∈ A(y) ∪ B(y)` implies `x ⊑ y`. Returns the first offending
/// `(x, y)` otherwise.
pub fn satisfies_order_bound(w: &SeparabilityWitness, e: &Enumeration) -> Result<(), (usize, usize)> {
    for y in 0..w.len() {
        for &x in w.upper[y].iter().chain(&w.lower[y]) {
            if e.position(x) > e.position(y) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Enumeration recovered from a witness, block by block.
#[derive(Clone, Debug)]
pub struct BlockOrder {
    pub enumeration: Enumeration,
    pub blocks: Vec<Vec<usize>>,
    /// Minimal shadows of each element on its strict prefix.
    pub shadows: PrefixShadows,
}

/// Partitions the poset into blocks: each block is the closure of the
/// smallest unplaced element under `z ↦ (A(z) ∪ B(z))` minus earlier blocks.
/// Seeds and the order inside a block follow ascending element index.
pub fn order_from_witness(p: &FinitePoset, w: &SeparabilityWitness) -> Result<BlockOrder> {
    if w.len() != p.len() {
        return Err(Error::input("witness does not match the poset"));
    }
    if let Err(v) = is_separability_witness(p, w) {
        return Err(Error::input(format!("not a separability witness: {v:?}")));
    }
    let n = p.len();
    let mut placed = vec![false; n];
    let mut blocks = Vec::new();
    let mut order = Vec::with_capacity(n);
    for seed in 0..n {
        if placed[seed] {
            continue;
        }
        let mut block = ElemSet::from([seed]);
        let mut stack = vec![seed];
        while let Some(z) = stack.pop() {
            for &t in w.upper[z].iter().chain(&w.lower[z]) {
                if !placed[t] && block.insert(t) {
                    stack.push(t);
                }
            }
        }
        for &x in &block {
            placed[x] = true;
        }
        order.extend(block.iter().copied());
        blocks.push(block.into_iter().collect());
    }
    let enumeration = Enumeration::new(order)?;
    let shadows = prefix_shadows(p, &enumeration);
    Ok(BlockOrder { enumeration, blocks, shadows })
}

/// A map from elements to finite element sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    images: Vec<ElemSet>,
}

impl SetMap {
    pub fn new(p: &FinitePoset, images: Vec<ElemSet>) -> Result<Self> {
        if images.len() != p.len() {
            return Err(Error::input("set map must be defined on every element"));
        }
        for s in &images {
            p.check_set(s)?;
        }
        Ok(SetMap { images })
    }

    /// `x ↦ A(x) ∪ B(x)`
    pub fn from_witness(w: &SeparabilityWitness) -> Self {
        let images = (0..w.len()).map(|x| w.upper[x].union(&w.lower[x]).copied().collect()).collect();
        SetMap { images }
    }

    pub fn image(&self, x: usize) -> &ElemSet {
        &self.images[x]
    }
}

/// `⋃_{x ∈ X} C^ω(x)` where `C⁰(x) = {x}` and `Cⁿ⁺¹(x) = ⋃_{y ∈ C(x)} Cⁿ(y)`.
pub fn locally_finite_closure(p: &FinitePoset, c: &SetMap, xs: &ElemSet) -> Result<ElemSet> {
    p.check_set(xs)?;
    if c.images.len() != p.len() {
        return Err(Error::input("set map does not match the poset"));
    }
    let mut out = xs.clone();
    let mut stack: Vec<usize> = xs.iter().copied().collect();
    while let Some(x) = stack.pop() {
        for &y in &c.images[x] {
            if out.insert(y) {
                stack.push(y);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    fn v_poset() -> FinitePoset {
        FinitePoset::generated_by_ids(vec!["a".into(), "b".into(), "c".into()], &[("a", "c"), ("b", "c")]).unwrap()
    }

    #[test]
    fn identity_witness_separates_only_antichains() {
        let p = FinitePoset::antichain(3);
        assert_eq!(is_separability_witness(&p, &SeparabilityWitness::identity(3)), Ok(()));
        let p = FinitePoset::chain(2);
        assert_eq!(
            is_separability_witness(&p, &SeparabilityWitness::identity(2)),
            Err(WitnessViolation::EmptyIntersection { x: 0, y: 1 })
        );
    }

    #[test]
    fn principal_witness_is_valid() {
        for p in [FinitePoset::chain(4), FinitePoset::antichain(3), v_poset()] {
            assert_eq!(is_separability_witness(&p, &SeparabilityWitness::principal(&p)), Ok(()));
        }
    }

    #[test]
    fn empty_upper_set_breaks_the_chain_pair() {
        let p = FinitePoset::chain(2);
        let w = SeparabilityWitness::new(&p, vec![set(&[]), set(&[1])], vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(is_separability_witness(&p, &w), Err(WitnessViolation::EmptyIntersection { x: 0, y: 1 }));
    }

    #[test]
    fn misplaced_bounds_are_reported() {
        let p = FinitePoset::chain(2);
        let w = SeparabilityWitness::new(&p, vec![set(&[0]), set(&[0, 1])], vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(
            is_separability_witness(&p, &w),
            Err(WitnessViolation::NotUpperBound { element: 1, member: 0 })
        );
    }

    #[test]
    fn v_poset_witness_from_order() {
        let p = v_poset();
        let w = witness_from_order(&p, &Enumeration::identity(3)).unwrap();
        assert_eq!(w.upper(2), &set(&[2]));
        assert_eq!(w.lower(2), &set(&[0, 1, 2]));
        assert_eq!(is_separability_witness(&p, &w), Ok(()));
        let sh = prefix_shadows(&p, &Enumeration::identity(3));
        assert!(sh.upper[2].is_empty());
        assert_eq!(sh.lower[2], set(&[0, 1]));
    }

    #[test]
    fn singleton_and_two_chain() {
        let p = FinitePoset::chain(1);
        let w = witness_from_order(&p, &Enumeration::identity(1)).unwrap();
        assert_eq!((w.upper(0), w.lower(0)), (&set(&[0]), &set(&[0])));

        let p = FinitePoset::chain(2);
        let w = witness_from_order(&p, &Enumeration::identity(2)).unwrap();
        assert_eq!(w.upper(0), &set(&[0]));
        assert_eq!(w.lower(0), &set(&[0]));
        assert_eq!(w.upper(1), &set(&[1]));
        assert_eq!(w.lower(1), &set(&[0, 1]));
    }

    #[test]
    fn blocks_of_identity_witness_are_singletons() {
        let p = FinitePoset::antichain(2);
        let bo = order_from_witness(&p, &SeparabilityWitness::identity(2)).unwrap();
        assert_eq!(bo.blocks, vec![vec![0], vec![1]]);
        assert_eq!(bo.enumeration.as_slice(), &[0, 1]);

        let p = FinitePoset::antichain(5);
        let bo = order_from_witness(&p, &SeparabilityWitness::identity(5)).unwrap();
        assert!(bo.blocks.iter().all(|b| b.len() == 1));
    }

    #[test]
    fn chain_block_absorbs_upper_bound() {
        let p = FinitePoset::chain(2);
        let w = SeparabilityWitness::new(&p, vec![set(&[0, 1]), set(&[1])], vec![set(&[0]), set(&[1])]).unwrap();
        let bo = order_from_witness(&p, &w).unwrap();
        assert_eq!(bo.blocks, vec![vec![0, 1]]);
        assert_eq!(bo.enumeration.as_slice(), &[0, 1]);
    }

    #[test]
    fn invalid_witness_is_rejected_by_order_from_witness() {
        let p = FinitePoset::chain(2);
        let w = SeparabilityWitness::new(&p, vec![set(&[]), set(&[1])], vec![set(&[0]), set(&[1])]).unwrap();
        assert!(matches!(order_from_witness(&p, &w), Err(Error::Input(_))));
    }

    #[test]
    fn closures() {
        let p = FinitePoset::chain(3);
        let id = SetMap::new(&p, (0..3).map(|x| set(&[x])).collect()).unwrap();
        assert_eq!(locally_finite_closure(&p, &id, &set(&[0])).unwrap(), set(&[0]));

        let down = SetMap::new(&p, vec![set(&[]), set(&[0]), set(&[1])]).unwrap();
        assert_eq!(locally_finite_closure(&p, &down, &set(&[2])).unwrap(), set(&[0, 1, 2]));

        let v = v_poset();
        let w = witness_from_order(&v, &Enumeration::identity(3)).unwrap();
        let c = SetMap::from_witness(&w);
        assert_eq!(locally_finite_closure(&v, &c, &set(&[2])).unwrap(), set(&[0, 1, 2]));
    }

    #[test]
    fn enumeration_must_be_bijective() {
        assert!(Enumeration::new(vec![0, 0]).is_err());
        assert!(Enumeration::new(vec![1, 2]).is_err());
        let p = FinitePoset::chain(3);
        assert!(Enumeration::parse(&p, "0,1").is_err());
        assert_eq!(Enumeration::parse(&p, "2,0,1").unwrap().position(2), 0);
    }
}
