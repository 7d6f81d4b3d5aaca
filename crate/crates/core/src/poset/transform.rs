use super::{ElemSet, FinitePoset, SeparabilityWitness};
use crate::error::{Error, Result};

/// Constructions that carry separability witnesses along.
#[derive(Clone, Copy, Debug)]
pub enum WitnessTransform<'a> {
    /// Opposite order; `A` and `B` swap roles.
    Dual { poset: &'a FinitePoset, witness: &'a SeparabilityWitness },
    /// Cartesian product; the pair `(x, y)` gets the id `x*y`.
    Product {
        left: (&'a FinitePoset, &'a SeparabilityWitness),
        right: (&'a FinitePoset, &'a SeparabilityWitness),
    },
    /// Adjoin a new top `top_id`; `A'(x) = A(x) ∪ {⊤}`.
    AddTop { poset: &'a FinitePoset, witness: &'a SeparabilityWitness, top_id: &'a str },
    /// Adjoin a new bottom `bottom_id`; `B'(x) = B(x) ∪ {⊥}`.
    AddBottom { poset: &'a FinitePoset, witness: &'a SeparabilityWitness, bottom_id: &'a str },
    /// Restrict to an order-convex subset; `A'(x) = A(x) ∩ S`.
    ConvexRestrict { poset: &'a FinitePoset, witness: &'a SeparabilityWitness, subset: &'a ElemSet },
}

pub fn witness_transform(t: WitnessTransform<'_>) -> Result<(FinitePoset, SeparabilityWitness)> {
    match t {
        WitnessTransform::Dual { poset, witness } => {
            check(poset, witness)?;
            Ok((poset.dual(), witness.swapped()))
        }
        WitnessTransform::Product { left: (p1, w1), right: (p2, w2) } => {
            check(p1, w1)?;
            check(p2, w2)?;
            let (n1, n2) = (p1.len(), p2.len());
            let pair = |a: usize, b: usize| a * n2 + b;
            let ids = (0..n1)
                .flat_map(|a| (0..n2).map(move |b| (a, b)))
                .map(|(a, b)| format!("{}*{}", p1.id(a), p2.id(b)))
                .collect::<Vec<_>>();
            let n = n1 * n2;
            let mut leq = vec![false; n * n];
            for a in 0..n1 {
                for b in 0..n2 {
                    for c in 0..n1 {
                        for d in 0..n2 {
                            leq[pair(a, b) * n + pair(c, d)] = p1.leq(a, c) && p2.leq(b, d);
                        }
                    }
                }
            }
            let poset = FinitePoset::from_relation(ids, leq)?;
            let cross = |s1: &ElemSet, s2: &ElemSet| -> ElemSet {
                s1.iter().flat_map(|&a| s2.iter().map(move |&b| pair(a, b))).collect()
            };
            let mut upper = Vec::with_capacity(n);
            let mut lower = Vec::with_capacity(n);
            for a in 0..n1 {
                for b in 0..n2 {
                    upper.push(cross(w1.upper(a), w2.upper(b)));
                    lower.push(cross(w1.lower(a), w2.lower(b)));
                }
            }
            Ok((poset, SeparabilityWitness::from_parts(upper, lower)))
        }
        WitnessTransform::AddTop { poset, witness, top_id } => {
            check(poset, witness)?;
            let (ext, new) = extend(poset, top_id, true)?;
            let mut upper: Vec<ElemSet> = (0..poset.len()).map(|x| witness.upper(x).clone()).collect();
            let mut lower: Vec<ElemSet> = (0..poset.len()).map(|x| witness.lower(x).clone()).collect();
            for a in &mut upper {
                a.insert(new);
            }
            upper.push(ElemSet::from([new]));
            lower.push(ElemSet::from([new]));
            Ok((ext, SeparabilityWitness::from_parts(upper, lower)))
        }
        WitnessTransform::AddBottom { poset, witness, bottom_id } => {
            check(poset, witness)?;
            let (ext, new) = extend(poset, bottom_id, false)?;
            let mut upper: Vec<ElemSet> = (0..poset.len()).map(|x| witness.upper(x).clone()).collect();
            let mut lower: Vec<ElemSet> = (0..poset.len()).map(|x| witness.lower(x).clone()).collect();
            for b in &mut lower {
                b.insert(new);
            }
            upper.push(ElemSet::from([new]));
            lower.push(ElemSet::from([new]));
            Ok((ext, SeparabilityWitness::from_parts(upper, lower)))
        }
        WitnessTransform::ConvexRestrict { poset, witness, subset } => {
            check(poset, witness)?;
            poset.check_set(subset)?;
            if !poset.is_convex(subset) {
                return Err(Error::input("subset is not order-convex"));
            }
            let sub = poset.induced(subset)?;
            let restrict = |s: &ElemSet| -> ElemSet { s.iter().filter_map(|&g| sub.local(g)).collect() };
            let upper = sub.members.iter().map(|&g| restrict(witness.upper(g))).collect();
            let lower = sub.members.iter().map(|&g| restrict(witness.lower(g))).collect();
            Ok((sub.poset, SeparabilityWitness::from_parts(upper, lower)))
        }
    }
}

fn check(p: &FinitePoset, w: &SeparabilityWitness) -> Result<()> {
    if p.len() != w.len() {
        return Err(Error::input("witness does not match the poset"));
    }
    Ok(())
}

/// Appends one element above (or below) everything; returns its index.
fn extend(p: &FinitePoset, id: &str, top: bool) -> Result<(FinitePoset, usize)> {
    let n = p.len();
    let mut ids = p.ids().to_vec();
    ids.push(id.to_string());
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                pairs.push((x, y));
            }
        }
        pairs.push(if top { (x, n) } else { (n, x) });
    }
    Ok((FinitePoset::generated(ids, &pairs)?, n))
}
