//! Principal ℓ-ideals compared through zero sets: `⟨g⟩ ≤ ⟨h⟩` iff every
//! zero of `h` (inside the region, if any) is a zero of `g`.

use num::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::piecewise::{cozero_set_with, zero_set_with, DEFAULT_PIECE_LIMIT};
use super::{eval_unchecked, ser_point, VLTerm};
use crate::error::{Error, Result};
use crate::semilinear::{witness_point, Rational, SemilinearSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IdealOrder {
    Leq,
    /// A verified point where `h` vanishes and `g` does not.
    NotLeq {
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
}

impl IdealOrder {
    pub fn holds(&self) -> bool {
        matches!(self, IdealOrder::Leq)
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            IdealOrder::Leq => None,
            IdealOrder::NotLeq { witness } => Some(witness),
        }
    }
}

fn check_region(n: usize, region: Option<&SemilinearSet>) -> Result<()> {
    match region {
        Some(r) if r.dim() != n => Err(Error::input(format!("region of dimension {} for terms over {n} generators", r.dim()))),
        _ => Ok(()),
    }
}

/// Decides `⟨g⟩ ≤ ⟨h⟩` over `ℚⁿ`, or relative to `region`. The
/// representatives are compared through `|g|`, `|h|`, which have the same
/// zero sets as `g`, `h`.
///
/// Decided as emptiness of `zero(h) ∩ cozero(g) ∩ region`, which is the
/// inclusion `zero(h) ∩ region ⊆ zero(g)`.
pub fn ideal_leq(g: &VLTerm, h: &VLTerm, n: usize, region: Option<&SemilinearSet>) -> Result<IdealOrder> {
    ideal_leq_with(g, h, n, region, DEFAULT_PIECE_LIMIT)
}

/// [`ideal_leq`] with an explicit ceiling on linearization pieces.
pub fn ideal_leq_with(
    g: &VLTerm,
    h: &VLTerm,
    n: usize,
    region: Option<&SemilinearSet>,
    piece_limit: usize,
) -> Result<IdealOrder> {
    check_region(n, region)?;
    let zh = zero_set_with(h, n, piece_limit)?;
    let cg = cozero_set_with(g, n, piece_limit)?;
    let whole = SemilinearSet::whole(n);
    let r = region.unwrap_or(&whole);
    for a in zh.cells() {
        for b in cg.cells() {
            let ab = a.and(b);
            for c in r.cells() {
                if let Some(z) = witness_point(&ab.and(c)) {
                    assert!(
                        eval_unchecked(h, &z).is_zero() && !eval_unchecked(g, &z).is_zero() && r.contains(&z),
                        "ideal order witness failed re-evaluation"
                    );
                    return Ok(IdealOrder::NotLeq { witness: z });
                }
            }
        }
    }
    Ok(IdealOrder::Leq)
}

/// Decides `⟨t⟩ = 0`; on failure the witness is a point where `t ≠ 0`.
pub fn ideal_zero(t: &VLTerm, n: usize, region: Option<&SemilinearSet>) -> Result<IdealOrder> {
    ideal_leq(t, &VLTerm::zero(), n, region)
}

/// `|g| ∨ |h|`, generating `⟨g⟩ ∨ ⟨h⟩`.
pub fn ideal_join(g: &VLTerm, h: &VLTerm) -> VLTerm {
    g.clone().abs().join(h.clone().abs())
}

/// `|g| ∧ |h|`, generating `⟨g⟩ ∧ ⟨h⟩`.
pub fn ideal_meet(g: &VLTerm, h: &VLTerm) -> VLTerm {
    g.clone().abs().meet(h.clone().abs())
}

/// `(g − h)⁺`, generating `⟨g⟩ ∖ ⟨h⟩`.
pub fn cevian_dev(g: &VLTerm, h: &VLTerm) -> VLTerm {
    g.clone().sub(h.clone()).pos()
}

/// Decides `⟨g⟩∖⟨k⟩ ≤ (⟨g⟩∖⟨h⟩) ∨ (⟨h⟩∖⟨k⟩)`.
pub fn check_cevian_triple(
    g: &VLTerm,
    h: &VLTerm,
    k: &VLTerm,
    n: usize,
    region: Option<&SemilinearSet>,
) -> Result<IdealOrder> {
    check_cevian_triple_with(g, h, k, n, region, DEFAULT_PIECE_LIMIT)
}

pub fn check_cevian_triple_with(
    g: &VLTerm,
    h: &VLTerm,
    k: &VLTerm,
    n: usize,
    region: Option<&SemilinearSet>,
    piece_limit: usize,
) -> Result<IdealOrder> {
    let lhs = cevian_dev(g, k);
    let rhs = ideal_join(&cevian_dev(g, h), &cevian_dev(h, k));
    ideal_leq_with(&lhs, &rhs, n, region, piece_limit)
}

/// `⟨|t|⟩` in dimension `dim`, optionally relative to a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIdeal {
    representative: VLTerm,
    dim: usize,
    region: Option<SemilinearSet>,
}

impl PrincipalIdeal {
    pub fn new(t: VLTerm, dim: usize, region: Option<SemilinearSet>) -> Result<Self> {
        t.check_dim(dim)?;
        check_region(dim, region.as_ref())?;
        Ok(PrincipalIdeal { representative: t.abs(), dim, region })
    }

    pub fn representative(&self) -> &VLTerm {
        &self.representative
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn region(&self) -> Option<&SemilinearSet> {
        self.region.as_ref()
    }

    fn same_frame(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.region != other.region {
            return Err(Error::input("ideals live over different dimensions or regions"));
        }
        Ok(())
    }

    fn with(&self, t: VLTerm) -> Self {
        PrincipalIdeal { representative: t.abs(), dim: self.dim, region: self.region.clone() }
    }

    pub fn leq(&self, other: &Self) -> Result<IdealOrder> {
        self.same_frame(other)?;
        ideal_leq(&self.representative, &other.representative, self.dim, self.region.as_ref())
    }

    /// Mutual `leq`.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.leq(other)?.holds() && other.leq(self)?.holds())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self.with(ideal_join(&self.representative, &other.representative)))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self.with(ideal_meet(&self.representative, &other.representative)))
    }

    /// `⟨a⟩ ∖ ⟨b⟩ = ⟨(a − b)⁺⟩` on the stored positive representatives.
    pub fn deviation(&self, other: &Self) -> Result<Self> {
        self.same_frame(other)?;
        Ok(self.with(cevian_dev(&self.representative, &other.representative)))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(ideal_zero(&self.representative, self.dim, self.region.as_ref())?.holds())
    }
}

/// Outcome of the sampled multiplier search `|g| ≤ m·|h|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierCheck {
    /// Smallest `m` that works on every sample.
    Found(u32),
    /// A sample where `h = 0` and `g ≠ 0`: no multiplier exists.
    Refuted(Vec<Rational>),
    /// Some sample needs a multiplier above the bound.
    Exceeded,
}

/// Falsification-only cross-check of `⟨g⟩ ≤ ⟨h⟩` on sample points. A
/// `Found` result proves nothing; `Refuted` disproves the inclusion.
pub fn sample_multiplier(g: &VLTerm, h: &VLTerm, points: &[Vec<Rational>], max_m: u32) -> MultiplierCheck {
    let mut need = Rational::zero();
    for p in points {
        let (a, b) = (eval_unchecked(g, p).abs(), eval_unchecked(h, p).abs());
        if b.is_zero() {
            if !a.is_zero() {
                return MultiplierCheck::Refuted(p.clone());
            }
            continue;
        }
        need = need.max(a / b);
    }
    match need.ceil().to_integer().to_u32() {
        Some(m) if m <= max_m => MultiplierCheck::Found(m.max(1)),
        _ => MultiplierCheck::Exceeded,
    }
}
