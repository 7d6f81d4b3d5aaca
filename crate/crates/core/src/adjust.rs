//! Monotone adjustment of a binary map along an enumeration.
//!
//! Unordered pairs `{x, y}` (singletons included) are ordered by `⊴`: first by
//! the later of the two elements in the enumeration, then by the earlier one.
//! Processing pairs in that order, `d'(a, b) = d'∧(a, b) ∨ d'∨(a, b)` with
//!
//! ```text
//! d'∧(a, b) = d(a, b) ∧ ⋀ { d'(x, y) : {x, y} ◁ {a, b}, a ≤ x, y ≤ b }
//! d'∨(a, b) =           ⋁ { d'(x, y) : {x, y} ◁ {a, b}, x ≤ a, b ≤ y }
//! ```
//!
//! An empty meet leaves `d(a, b)` and an empty join is the bottom of the host.

use std::cmp::Ordering;

use serde::Serialize;

use crate::deviation::DeviationTable;
use crate::error::{Error, Result};
use crate::lattice::FiniteDistributiveLattice;
use crate::poset::{prefix_shadows, Enumeration, FinitePoset, PrefixShadows};

/// The order `⊴` on one- and two-element subsets induced by an enumeration.
#[derive(Clone, Debug)]
pub struct PairOrderContext {
    base: Enumeration,
}

impl PairOrderContext {
    pub fn new(base: Enumeration) -> Self {
        PairOrderContext { base }
    }

    pub fn base(&self) -> &Enumeration {
        &self.base
    }

    /// `(position of the ⊑-max, position of the ⊑-min)`.
    pub fn key(&self, s: (usize, usize)) -> Result<(usize, usize)> {
        let n = self.base.len();
        if s.0 >= n || s.1 >= n {
            return Err(Error::UnknownElement(s.0.max(s.1).to_string()));
        }
        let (p, q) = (self.base.position(s.0), self.base.position(s.1));
        Ok((p.max(q), p.min(q)))
    }

    pub fn cmp(&self, s: (usize, usize), t: (usize, usize)) -> Result<Ordering> {
        Ok(self.key(s)?.cmp(&self.key(t)?))
    }

    /// `s ⊴ t`.
    pub fn pair_leq(&self, s: (usize, usize), t: (usize, usize)) -> Result<bool> {
        Ok(self.cmp(s, t)? != Ordering::Greater)
    }

    /// Every unordered pair as `(later, earlier)`, in `⊴`-ascending order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let order = self.base.as_slice();
        let mut out = Vec::with_capacity(order.len() * (order.len() + 1) / 2);
        for (i, &hi) in order.iter().enumerate() {
            for &lo in &order[..=i] {
                out.push((hi, lo));
            }
        }
        out
    }
}

/// How the meetands and joinands of each step are collected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Every decided pair is inspected.
    #[default]
    FullSweep,
    /// Only the pairs picked out by the prefix shadows (see [`finitary_bounds`]).
    Finitary,
}

/// How one ordered pair got its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairTrace {
    pub pair: (usize, usize),
    pub meetands: Vec<(usize, usize)>,
    pub joinands: Vec<(usize, usize)>,
    pub meet_part: usize,
    pub join_part: usize,
    pub value: usize,
}

#[derive(Clone, Debug)]
pub struct AdjustmentResult {
    pub d_prime: DeviationTable,
    pub trace: Vec<PairTrace>,
}

/// The finite index sets `𝒜'` (meetands) and `𝒝'` (joinands) for `d'(a, b)`:
///
/// ```text
/// 𝒜' = { (x, b) : x ∈ U_a } ∪ { (a, y) : y ∈ V_b }
/// 𝒝' = { (x, b) : x ∈ V_a } ∪ { (a, y) : y ∈ U_b }
/// ```
///
/// where `U_z`, `V_z` are the upper and lower shadows of `z` on its strict
/// prefix. Every listed pair must already be decided in `partial`.
pub fn finitary_bounds(
    ctx: &PairOrderContext,
    m: &FinitePoset,
    shadows: &PrefixShadows,
    partial: &[Option<usize>],
    a: usize,
    b: usize,
) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    let n = m.len();
    if ctx.base.len() != n || partial.len() != n * n {
        return Err(Error::input("context, poset and table sizes differ"));
    }
    m.check_element(a)?;
    m.check_element(b)?;
    let meetands: Vec<(usize, usize)> =
        shadows.upper[a].iter().map(|&x| (x, b)).chain(shadows.lower[b].iter().map(|&y| (a, y))).collect();
    let joinands: Vec<(usize, usize)> =
        shadows.lower[a].iter().map(|&x| (x, b)).chain(shadows.upper[b].iter().map(|&y| (a, y))).collect();
    for &(x, y) in meetands.iter().chain(&joinands) {
        if partial[x * n + y].is_none() {
            return Err(Error::contract(format!(
                "d'({}, {}) is needed for ({}, {}) but not decided yet",
                m.id(x),
                m.id(y),
                m.id(a),
                m.id(b)
            )));
        }
    }
    Ok((meetands, joinands))
}

/// Runs the adjustment with the full sweep.
pub fn monotone_adjustment(
    m: &FinitePoset,
    host: &FiniteDistributiveLattice,
    d: &DeviationTable,
    e: &Enumeration,
) -> Result<AdjustmentResult> {
    monotone_adjustment_with(m, host, d, e, Strategy::FullSweep)
}

pub fn monotone_adjustment_with(
    m: &FinitePoset,
    host: &FiniteDistributiveLattice,
    d: &DeviationTable,
    e: &Enumeration,
    strategy: Strategy,
) -> Result<AdjustmentResult> {
    let n = m.len();
    if d.len() != n || e.len() != n {
        return Err(Error::input("map, enumeration and poset sizes differ"));
    }
    if d.as_slice().iter().any(|&v| v >= host.len()) {
        return Err(Error::input("map takes values outside the host lattice"));
    }
    let ctx = PairOrderContext::new(e.clone());
    let shadows = prefix_shadows(m, e);
    let mut value: Vec<Option<usize>> = vec![None; n * n];
    let mut decided: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    let mut trace = Vec::with_capacity(n * n);

    for (hi, lo) in ctx.pairs() {
        let orientations: &[(usize, usize)] = if hi == lo { &[(hi, lo)] } else { &[(hi, lo), (lo, hi)] };
        let mut step = Vec::with_capacity(2);
        for &(a, b) in orientations {
            let (meetands, joinands) = match strategy {
                Strategy::FullSweep => {
                    let meetands = decided.iter().copied().filter(|&(x, y)| m.leq(a, x) && m.leq(y, b)).collect();
                    let joinands = decided.iter().copied().filter(|&(x, y)| m.leq(x, a) && m.leq(b, y)).collect();
                    (meetands, joinands)
                }
                Strategy::Finitary => finitary_bounds(&ctx, m, &shadows, &value, a, b)?,
            };
            let get = |&(x, y): &(usize, usize)| value[x * n + y].expect("decided");
            let meet_part = host.meet(d.get(a, b), host.meet_all(meetands.iter().map(get)));
            let join_part = host.join_all(joinands.iter().map(get));
            let v = host.join(meet_part, join_part);
            step.push(PairTrace { pair: (a, b), meetands, joinands, meet_part, join_part, value: v });
        }
        for t in step {
            value[t.pair.0 * n + t.pair.1] = Some(t.value);
            decided.push(t.pair);
            trace.push(t);
        }
    }

    let d_prime = DeviationTable::map(n, host, value.into_iter().map(|v| v.expect("all pairs processed")).collect())?;
    Ok(AdjustmentResult { d_prime, trace })
}
