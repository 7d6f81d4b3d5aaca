//! The region `Ω_n` and finite probes of the uncountable counterexample.
//!
//! `Ω_n = {u ∈ ℚⁿ : 0 ≤ u_α ≤ 1 for all α, u_γ ≤ 2u_β for 0 < γ < β}`.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use super::ideal::{ideal_leq, ideal_meet, ideal_zero, IdealOrder};
use super::piecewise::positive_set;
use super::{eval_unchecked, ser_display, ser_point, VLTerm};
use crate::error::{Error, Result};
use crate::semilinear::{rat, Atom, Cell, LinearForm, Rational, SemilinearSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaRegion {
    n: usize,
    set: SemilinearSet,
}

impl OmegaRegion {
    pub fn new(n: usize) -> Self {
        let mut atoms = Vec::new();
        for a in 0..n {
            atoms.push(Atom::ge(LinearForm::var(n, a)));
            atoms.push(Atom::ge(LinearForm::constant(n, rat(1)).sub(&LinearForm::var(n, a))));
        }
        for beta in 2..n {
            for gamma in 1..beta {
                atoms.push(Atom::ge(LinearForm::var(n, beta).scale(&rat(2)).sub(&LinearForm::var(n, gamma))));
            }
        }
        let set = SemilinearSet::from_cell(Cell::new(n, atoms).expect("same dimension"));
        OmegaRegion { n, set }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> &SemilinearSet {
        &self.set
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        u.len() == self.n && self.set.contains(u)
    }
}

/// `u ∈ Ω_M` for a point given on the index set `M`.
fn partial_violation(u: &BTreeMap<usize, Rational>) -> Option<String> {
    for (a, v) in u {
        if v.is_negative() || *v > Rational::one() {
            return Some(format!("u{a} = {v} lies outside [0, 1]"));
        }
    }
    for (&g, vg) in u.range(1..) {
        for (&b, vb) in u.range(g + 1..) {
            if *vg > rat(2) * vb {
                return Some(format!("u{g} = {vg} exceeds 2·u{b} = {}", rat(2) * vb));
            }
        }
    }
    None
}

/// Completes a point of `Ω_M` to a point of `Ω_n`: coordinate `ξ` copies
/// `u` at the least index of `M` that is `≥ ξ`, or is 1 if there is none.
pub fn omega_extend(u: &BTreeMap<usize, Rational>, n: usize) -> Result<Vec<Rational>> {
    if let Some((&i, _)) = u.range(n..).next() {
        return Err(Error::input(format!("index {i} outside 0..{n}")));
    }
    if let Some(why) = partial_violation(u) {
        return Err(Error::input(format!("point is not in the region: {why}")));
    }
    let v: Vec<Rational> =
        (0..n).map(|xi| u.range(xi..).next().map_or_else(Rational::one, |(_, val)| val.clone())).collect();
    assert!(OmegaRegion::new(n).contains(&v), "extension left the region");
    Ok(v)
}

/// The substitution collapsing generators in blocks: `g_γ ↦ g₀` for
/// `γ < τ₀`, and `g_γ ↦ g_{α_i}` for `τ_i ≤ γ < τ_{i+1}`, with `τ_k = n`.
pub fn ladder_collapse(n: usize, taus: &[usize], alphas: &[usize]) -> Result<Vec<VLTerm>> {
    if taus.is_empty() || taus.len() != alphas.len() {
        return Err(Error::input("need as many block representatives as block starts, at least one"));
    }
    if taus[0] == 0 || taus.windows(2).any(|w| w[0] >= w[1]) || *taus.last().unwrap() >= n {
        return Err(Error::input(format!("block starts must satisfy 0 < τ0 < τ1 < … < {n}")));
    }
    let mut bounds = taus.to_vec();
    bounds.push(n);
    for (i, &a) in alphas.iter().enumerate() {
        if a < bounds[i] || a >= bounds[i + 1] {
            return Err(Error::input(format!("representative {a} outside its block {}..{}", bounds[i], bounds[i + 1])));
        }
    }
    Ok((0..n)
        .map(|g| match (0..taus.len()).rev().find(|&i| g >= taus[i]) {
            None => VLTerm::gen(0),
            Some(i) => VLTerm::gen(alphas[i]),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoViolation {
    Negative {
        generator: usize,
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
    AboveUnit {
        generator: usize,
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
    Doubling {
        gamma: usize,
        beta: usize,
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
}

/// Checks, relative to `Ω_n`, that the images `sigma` satisfy
/// `0 ≤ σ(g_α) ≤ 𝟙` and `σ(g_γ) ≤ 2σ(g_β)` for `0 < γ < β`, the hypotheses
/// under which the substitution extends to an endomorphism fixing `𝟙`.
pub fn endomorphism_violation(sigma: &[VLTerm], n: usize) -> Result<Option<EndoViolation>> {
    for s in sigma {
        s.check_dim(n)?;
    }
    let omega = OmegaRegion::new(n);
    let find = |t: VLTerm| -> Result<Option<Vec<Rational>>> {
        let w = positive_set(&t, n)?.intersect(omega.set()).witness();
        if let Some(z) = &w {
            assert!(eval_unchecked(&t, z).is_positive() && omega.contains(z));
        }
        Ok(w)
    };
    for (a, s) in sigma.iter().enumerate() {
        if let Some(witness) = find(s.clone().neg())? {
            return Ok(Some(EndoViolation::Negative { generator: a, witness }));
        }
        if let Some(witness) = find(s.clone().sub(VLTerm::one()))? {
            return Ok(Some(EndoViolation::AboveUnit { generator: a, witness }));
        }
    }
    for beta in 2..sigma.len() {
        for gamma in 1..beta {
            let t = sigma[gamma].clone().sub(sigma[beta].clone().scale(rat(2)));
            if let Some(witness) = find(t)? {
                return Ok(Some(EndoViolation::Doubling { gamma, beta, witness }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// The hypothesis holds and so does the conclusion.
    Holds,
    /// The hypothesis fails; the witness is an `Ω` point where both
    /// ideals are nonzero.
    Vacuous {
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
    /// The hypothesis holds and the conclusion fails at the witness.
    Counterexample {
        #[serde(serialize_with = "ser_point")]
        witness: Vec<Rational>,
    },
}

impl ProbeOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, ProbeOutcome::Counterexample { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PscomEntry {
    #[serde(serialize_with = "ser_display")]
    pub probe: VLTerm,
    /// `⟨t⟩ ∧ ⟨(p₀ − c·p_α)⁺⟩ = 0 ⇒ ⟨t⟩ ≤ ⟨(c·p_α − p₀)⁺⟩`.
    pub against_lower: ProbeOutcome,
    /// `⟨t⟩ ∧ ⟨(c·p_α − p₀)⁺⟩ = 0 ⇒ ⟨t⟩ ≤ ⟨(p₀ − c·p_α)⁺⟩`.
    pub against_upper: ProbeOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct PscomReport {
    pub n: usize,
    pub alpha: usize,
    #[serde(serialize_with = "ser_display")]
    pub c: Rational,
    #[serde(serialize_with = "ser_display")]
    pub lower: VLTerm,
    #[serde(serialize_with = "ser_display")]
    pub upper: VLTerm,
    /// `⟨lower⟩ ∧ ⟨upper⟩ = 0` relative to `Ω_n`.
    pub disjoint: bool,
    pub entries: Vec<PscomEntry>,
    pub counterexamples: usize,
}

fn implication(t: &VLTerm, hyp: &VLTerm, concl: &VLTerm, n: usize, omega: &SemilinearSet) -> Result<ProbeOutcome> {
    if let IdealOrder::NotLeq { witness } = ideal_zero(&ideal_meet(t, hyp), n, Some(omega))? {
        return Ok(ProbeOutcome::Vacuous { witness });
    }
    Ok(match ideal_leq(t, concl, n, Some(omega))? {
        IdealOrder::Leq => ProbeOutcome::Holds,
        IdealOrder::NotLeq { witness } => ProbeOutcome::Counterexample { witness },
    })
}

/// Tests, relative to `Ω_n`, whether `⟨(p₀ − c·p_α)⁺⟩` and
/// `⟨(c·p_α − p₀)⁺⟩` act as mutual pseudocomplements on each probe.
/// Counterexamples are reported, not raised.
pub fn pseudocomplement_probe(n: usize, alpha: usize, c: &Rational, probes: &[VLTerm]) -> Result<PscomReport> {
    if alpha == 0 || alpha >= n {
        return Err(Error::input(format!("alpha must lie in 1..{n}")));
    }
    if !c.is_positive() {
        return Err(Error::input("c must be positive"));
    }
    for t in probes {
        t.check_dim(n)?;
    }
    let omega = OmegaRegion::new(n);
    let lower = VLTerm::gen(0).sub(VLTerm::gen(alpha).scale(c.clone())).pos();
    let upper = VLTerm::gen(alpha).scale(c.clone()).sub(VLTerm::gen(0)).pos();
    let disjoint = ideal_zero(&ideal_meet(&lower, &upper), n, Some(omega.set()))?.holds();

    let entry = |t: &VLTerm| -> Result<PscomEntry> {
        let s = t.clone().abs();
        Ok(PscomEntry {
            probe: t.clone(),
            against_lower: implication(&s, &lower, &upper, n, omega.set())?,
            against_upper: implication(&s, &upper, &lower, n, omega.set())?,
        })
    };
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get()).min(probes.len().max(1));
    let chunk = probes.len().div_ceil(workers).max(1);
    let entries: Vec<PscomEntry> = std::thread::scope(|scope| {
        let handles: Vec<_> = probes
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(entry).collect::<Result<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("probe worker panicked")).collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    let counterexamples =
        entries.iter().filter(|e| e.against_lower.is_counterexample() || e.against_upper.is_counterexample()).count();
    Ok(PscomReport { n, alpha, c: c.clone(), lower, upper, disjoint, entries, counterexamples })
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderCheck {
    #[serde(serialize_with = "ser_display")]
    pub lhs: VLTerm,
    #[serde(serialize_with = "ser_display")]
    pub rhs: VLTerm,
    /// `⟨lhs⟩ ≤ ⟨rhs⟩` relative to `Ω₂`, as decided.
    pub decision: IdealOrder,
    /// The point named in the argument, `(z₀, z_{α₀})`.
    #[serde(serialize_with = "ser_point")]
    pub witness: Vec<Rational>,
    #[serde(serialize_with = "ser_display")]
    pub lhs_at_witness: Rational,
    #[serde(serialize_with = "ser_display")]
    pub rhs_at_witness: Rational,
    /// The witness lies in `Ω₂`, `rhs` vanishes there and `lhs` does not.
    pub witness_verified: bool,
}

impl LadderCheck {
    fn new(lhs: VLTerm, rhs: VLTerm, witness: Vec<Rational>) -> Result<Self> {
        let omega = OmegaRegion::new(2);
        let decision = ideal_leq(&lhs, &rhs, 2, Some(omega.set()))?;
        let lhs_at_witness = eval_unchecked(&lhs, &witness);
        let rhs_at_witness = eval_unchecked(&rhs, &witness);
        let witness_verified = omega.contains(&witness) && rhs_at_witness.is_zero() && !lhs_at_witness.is_zero();
        Ok(LadderCheck { lhs, rhs, decision, witness, lhs_at_witness, rhs_at_witness, witness_verified })
    }

    /// The inclusion is refuted, both by the decision and by the witness.
    pub fn refuted(&self) -> bool {
        !self.decision.holds() && self.witness_verified
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoisoReport {
    pub k: u32,
    pub m: u32,
    pub n_coeff: u32,
    /// `⟨(2^{k−1}p₀ − m·p_{α₀})⁺⟩ ≤ ⟨(n·p₀ − p_{α₀})⁺⟩`, witness `(1/n, 1)`.
    pub antitone: LadderCheck,
    /// `⟨(p_{α₀} − m·p₀)⁺⟩ ≤ ⟨(n·p_{α₀} − 2^{k−1}p₀)⁺⟩`, witness `(2^{1−k}, 1/n)`.
    pub isotone: LadderCheck,
    pub reproduced: bool,
}

/// The final inequalities of the ladder argument at dimension 2, with `g0`
/// as `p₀` and `g1` as `p_{α₀}`, relative to `Ω₂`. Both must fail.
pub fn noiso_probe(k: u32, m: u32, n_coeff: u32) -> Result<NoisoReport> {
    if k == 0 || m == 0 || n_coeff == 0 {
        return Err(Error::input("k, m and n must be positive"));
    }
    let top = BigInt::one() << (k - 1);
    if top <= BigInt::from(m) * BigInt::from(n_coeff) {
        return Err(Error::input(format!("2^(k-1) = {top} must exceed m·n = {}", u64::from(m) * u64::from(n_coeff))));
    }
    let pow = Rational::from_integer(top.clone());
    let (mq, nq) = (rat(m.into()), rat(n_coeff.into()));
    let (p0, pa) = (VLTerm::gen(0), VLTerm::gen(1));

    let antitone = LadderCheck::new(
        p0.clone().scale(pow.clone()).sub(pa.clone().scale(mq.clone())).pos(),
        p0.clone().scale(nq.clone()).sub(pa.clone()).pos(),
        vec![Rational::one() / &nq, Rational::one()],
    )?;
    let isotone = LadderCheck::new(
        pa.clone().sub(p0.clone().scale(mq)).pos(),
        pa.scale(nq.clone()).sub(p0.scale(pow.clone())).pos(),
        vec![Rational::one() / pow, Rational::one() / nq],
    )?;
    let reproduced = antitone.refuted() && isotone.refuted();
    Ok(NoisoReport { k, m, n_coeff, antitone, isotone, reproduced })
}
