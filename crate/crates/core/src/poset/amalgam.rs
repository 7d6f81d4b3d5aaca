use serde::Serialize;

use super::shadow::{is_shadow, shadow, Direction};
use super::{ElemSet, FinitePoset, SeparabilityWitness, SubPoset};
use crate::error::{Error, Result};

/// A covering family `(M_p)_{p ∈ P}` of subsets of a carrier `M`, indexed by
/// a poset `P`.
#[derive(Clone, Debug)]
pub struct StrongAmalgamSpec {
    pub carrier: FinitePoset,
    pub index: FinitePoset,
    family: Vec<ElemSet>,
}

impl StrongAmalgamSpec {
    pub fn new(carrier: FinitePoset, index: FinitePoset, family: Vec<ElemSet>) -> Result<Self> {
        if family.len() != index.len() {
            return Err(Error::input("family must have one member per index element"));
        }
        for (p, m) in family.iter().enumerate() {
            if m.iter().any(|&x| x >= carrier.len()) {
                return Err(Error::input(format!(
                    "family member `{}` is not a subset of the carrier",
                    index.id(p)
                )));
            }
        }
        Ok(StrongAmalgamSpec { carrier, index, family })
    }

    pub fn member(&self, p: usize) -> &ElemSet {
        &self.family[p]
    }

    pub fn block(&self, p: usize) -> SubPoset {
        self.carrier.induced(&self.family[p]).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum AmalgamViolation {
    /// Elements of the carrier covered by no member.
    Union { missing: Vec<usize> },
    /// `p ≤ q` but `element ∈ M_p \ M_q`.
    NotNested { p: usize, q: usize, element: usize },
    /// `x ∈ M_q` has no shadow on `M_p`.
    Shadowing { p: usize, q: usize, x: usize, direction: Direction },
    /// `x ∈ M_p`, `y ∈ M_q`, `x ≤ y`, with no interpolant below both indices.
    Interpolation { p: usize, q: usize, x: usize, y: usize },
}

/// Verifies the three clauses of a strong amalgam and reports the first
/// failure.
pub fn check_strong_amalgam(spec: &StrongAmalgamSpec) -> Result<(), AmalgamViolation> {
    let m = &spec.carrier;
    let ix = &spec.index;

    let mut covered = vec![false; m.len()];
    for member in &spec.family {
        for &x in member {
            covered[x] = true;
        }
    }
    let missing: Vec<usize> = (0..m.len()).filter(|&x| !covered[x]).collect();
    if !missing.is_empty() {
        return Err(AmalgamViolation::Union { missing });
    }

    for p in 0..ix.len() {
        for q in 0..ix.len() {
            if !ix.leq(p, q) {
                continue;
            }
            let (mp, mq) = (&spec.family[p], &spec.family[q]);
            if let Some(&element) = mp.difference(mq).next() {
                return Err(AmalgamViolation::NotNested { p, q, element });
            }
            for &x in mq {
                for direction in [Direction::Lower, Direction::Upper] {
                    let u = shadow(m, mp, x, direction).expect("validated");
                    if !is_shadow(m, mp, x, &u, direction).expect("validated") {
                        return Err(AmalgamViolation::Shadowing { p, q, x, direction });
                    }
                }
            }
        }
    }

    for p in 0..ix.len() {
        for q in 0..ix.len() {
            let below_both: Vec<usize> = (0..ix.len()).filter(|&r| ix.leq(r, p) && ix.leq(r, q)).collect();
            for &x in &spec.family[p] {
                for &y in &spec.family[q] {
                    if !m.leq(x, y) {
                        continue;
                    }
                    let ok = below_both
                        .iter()
                        .any(|&r| spec.family[r].iter().any(|&z| m.leq(x, z) && m.leq(z, y)));
                    if !ok {
                        return Err(AmalgamViolation::Interpolation { p, q, x, y });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Glues per-block witnesses into a witness on the carrier:
/// `A(x) = ⋃ { A_p(u) : p ≤ ν(x), u ∈ U_{x,p} }` and dually for `B`, where
/// `U_{x,p}`/`V_{x,p}` are the minimal upper/lower shadows of `x` on `M_p`.
///
/// `block_witnesses[p]` is a witness on [`StrongAmalgamSpec::block`]`(p)`.
pub fn witness_from_amalgam(
    spec: &StrongAmalgamSpec,
    block_witnesses: &[SeparabilityWitness],
    nu: &[usize],
) -> Result<SeparabilityWitness> {
    if let Err(v) = check_strong_amalgam(spec) {
        return Err(Error::contract(format!("not a strong amalgam: {v:?}")));
    }
    let m = &spec.carrier;
    let ix = &spec.index;
    if block_witnesses.len() != ix.len() {
        return Err(Error::input("need one block witness per index element"));
    }
    if nu.len() != m.len() {
        return Err(Error::input("nu must be defined on every carrier element"));
    }
    let blocks: Vec<SubPoset> = (0..ix.len()).map(|p| spec.block(p)).collect();
    for (p, w) in block_witnesses.iter().enumerate() {
        if w.len() != blocks[p].members.len() {
            return Err(Error::input(format!("block witness for `{}` has the wrong size", ix.id(p))));
        }
    }
    for (x, &p) in nu.iter().enumerate() {
        if p >= ix.len() || !spec.family[p].contains(&x) {
            return Err(Error::input(format!("nu maps `{}` outside its block", m.id(x))));
        }
    }

    let mut upper = vec![ElemSet::new(); m.len()];
    let mut lower = vec![ElemSet::new(); m.len()];
    for x in 0..m.len() {
        for p in (0..ix.len()).filter(|&p| ix.leq(p, nu[x])) {
            let block = &blocks[p];
            let w = &block_witnesses[p];
            let us = shadow(m, &spec.family[p], x, Direction::Upper)?;
            for u in us {
                let local = block.local(u).expect("shadow lies in the block");
                upper[x].extend(block.to_global(w.upper(local)));
            }
            let vs = shadow(m, &spec.family[p], x, Direction::Lower)?;
            for v in vs {
                let local = block.local(v).expect("shadow lies in the block");
                lower[x].extend(block.to_global(w.lower(local)));
            }
        }
    }
    Ok(SeparabilityWitness::from_parts(upper, lower))
}
