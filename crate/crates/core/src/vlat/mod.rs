//! Vector-lattice terms over finitely many generators and their principal
//! ℓ-ideals.
//!
//! A term over `n` generators is read as a piecewise-linear function on
//! `ℚⁿ`; `𝟙` is the constant function 1. Generator `g0` plays `p₀` and the
//! unit plays `p_{ω₁}` of the uncountable construction; the probes in
//! [`omega`] work relative to the finite region `Ω_n`.

mod ideal;
pub mod omega;
mod parse;
mod piecewise;

use std::fmt;

use num::{One, Signed, Zero};
use serde::Serializer;

use crate::error::{Error, Result};
use crate::semilinear::Rational;

pub use ideal::{
    check_cevian_triple, check_cevian_triple_with, cevian_dev, ideal_join, ideal_leq, ideal_leq_with, ideal_meet,
    ideal_zero, sample_multiplier, IdealOrder, MultiplierCheck, PrincipalIdeal,
};
pub use omega::{
    endomorphism_violation, ladder_collapse, noiso_probe, omega_extend, pseudocomplement_probe, EndoViolation,
    LadderCheck, NoisoReport, OmegaRegion, ProbeOutcome, PscomReport,
};
pub use parse::parse_term;
pub use piecewise::{
    cozero_set, cozero_set_with, linearize, linearize_with, positive_set, zero_set, zero_set_with, PiecewiseForm,
    DEFAULT_PIECE_LIMIT,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VLTerm {
    Gen(usize),
    One,
    Scale(Rational, Box<VLTerm>),
    Add(Box<VLTerm>, Box<VLTerm>),
    Join(Box<VLTerm>, Box<VLTerm>),
    Meet(Box<VLTerm>, Box<VLTerm>),
}

impl VLTerm {
    pub fn gen(i: usize) -> Self {
        VLTerm::Gen(i)
    }

    pub fn one() -> Self {
        VLTerm::One
    }

    pub fn zero() -> Self {
        VLTerm::Scale(Rational::zero(), Box::new(VLTerm::One))
    }

    /// `q·𝟙`.
    pub fn constant(q: Rational) -> Self {
        VLTerm::Scale(q, Box::new(VLTerm::One))
    }

    /// `q·self`; nested scalings are folded.
    pub fn scale(self, q: Rational) -> Self {
        match self {
            VLTerm::Scale(r, t) => VLTerm::Scale(q * r, t),
            t => VLTerm::Scale(q, Box::new(t)),
        }
    }

    pub fn neg(self) -> Self {
        self.scale(-Rational::one())
    }

    pub fn add(self, other: VLTerm) -> Self {
        VLTerm::Add(Box::new(self), Box::new(other))
    }

    pub fn sub(self, other: VLTerm) -> Self {
        self.add(other.neg())
    }

    pub fn join(self, other: VLTerm) -> Self {
        VLTerm::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: VLTerm) -> Self {
        VLTerm::Meet(Box::new(self), Box::new(other))
    }

    /// `self ∨ 0`.
    pub fn pos(self) -> Self {
        self.join(VLTerm::zero())
    }

    /// `self ∨ −self`.
    pub fn abs(self) -> Self {
        let n = self.clone().neg();
        self.join(n)
    }

    /// One more than the largest generator index, 0 for closed terms.
    pub fn arity(&self) -> usize {
        match self {
            VLTerm::Gen(i) => i + 1,
            VLTerm::One => 0,
            VLTerm::Scale(_, t) => t.arity(),
            VLTerm::Add(a, b) | VLTerm::Join(a, b) | VLTerm::Meet(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            VLTerm::Gen(_) | VLTerm::One => 0,
            VLTerm::Scale(_, t) => t.depth(),
            VLTerm::Add(a, b) | VLTerm::Join(a, b) | VLTerm::Meet(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.arity() > n {
            return Err(Error::input(format!("term `{self}` uses g{} but only {n} generators are declared", self.arity() - 1)));
        }
        Ok(())
    }

    fn as_abs(&self) -> Option<&VLTerm> {
        match self {
            VLTerm::Join(a, b) if **b == (**a).clone().neg() => Some(a),
            _ => None,
        }
    }

    fn as_pos(&self) -> Option<&VLTerm> {
        match self {
            VLTerm::Join(a, b) if **b == VLTerm::zero() => Some(a),
            _ => None,
        }
    }
}

/// Value of `t` at `p`, with `∨`, `∧` read as max and min.
pub fn evaluate(t: &VLTerm, p: &[Rational]) -> Result<Rational> {
    t.check_dim(p.len())?;
    Ok(eval_unchecked(t, p))
}

pub(crate) fn eval_unchecked(t: &VLTerm, p: &[Rational]) -> Rational {
    match t {
        VLTerm::Gen(i) => p[*i].clone(),
        VLTerm::One => Rational::one(),
        VLTerm::Scale(q, t) => q * eval_unchecked(t, p),
        VLTerm::Add(a, b) => eval_unchecked(a, p) + eval_unchecked(b, p),
        VLTerm::Join(a, b) => eval_unchecked(a, p).max(eval_unchecked(b, p)),
        VLTerm::Meet(a, b) => eval_unchecked(a, p).min(eval_unchecked(b, p)),
    }
}

/// Replaces each `g_i` by `sigma[i]` and `𝟙` by `unit` (kept when `None`).
pub fn substitute(t: &VLTerm, sigma: &[VLTerm], unit: Option<&VLTerm>) -> Result<VLTerm> {
    if t.arity() > sigma.len() {
        return Err(Error::input(format!("substitution covers {} generators, term needs {}", sigma.len(), t.arity())));
    }
    Ok(subst(t, sigma, unit))
}

fn subst(t: &VLTerm, sigma: &[VLTerm], unit: Option<&VLTerm>) -> VLTerm {
    match t {
        VLTerm::Gen(i) => sigma[*i].clone(),
        VLTerm::One => unit.cloned().unwrap_or(VLTerm::One),
        VLTerm::Scale(q, t) => VLTerm::Scale(q.clone(), Box::new(subst(t, sigma, unit))),
        VLTerm::Add(a, b) => VLTerm::Add(Box::new(subst(a, sigma, unit)), Box::new(subst(b, sigma, unit))),
        VLTerm::Join(a, b) => VLTerm::Join(Box::new(subst(a, sigma, unit)), Box::new(subst(b, sigma, unit))),
        VLTerm::Meet(a, b) => VLTerm::Meet(Box::new(subst(a, sigma, unit)), Box::new(subst(b, sigma, unit))),
    }
}

// precedence: 0 join, 1 meet, 2 sum / leading minus, 3 scaled, 4 postfix, 5 atom
fn level(t: &VLTerm) -> u8 {
    if t.as_abs().is_some() {
        return 5;
    }
    if t.as_pos().is_some() {
        return 4;
    }
    match t {
        VLTerm::Gen(_) | VLTerm::One => 5,
        VLTerm::Scale(q, _) if q.is_negative() => 2,
        VLTerm::Scale(_, _) => 3,
        VLTerm::Add(..) => 2,
        VLTerm::Meet(..) => 1,
        VLTerm::Join(..) => 0,
    }
}

fn write_at(t: &VLTerm, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(t) < min {
        write!(f, "(")?;
        write_term(t, f)?;
        write!(f, ")")
    } else {
        write_term(t, f)
    }
}

fn write_scaled(q: &Rational, t: &VLTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if *t == VLTerm::One {
        return write!(f, "{q}");
    }
    if !q.is_one() {
        write!(f, "{q}*")?;
    }
    write_at(t, 4, f)
}

fn write_term(t: &VLTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(a) = t.as_abs() {
        write!(f, "|")?;
        write_term(a, f)?;
        return write!(f, "|");
    }
    if let Some(a) = t.as_pos() {
        write_at(a, 4, f)?;
        return write!(f, "^+");
    }
    match t {
        VLTerm::Gen(i) => write!(f, "g{i}"),
        VLTerm::One => write!(f, "one"),
        VLTerm::Scale(q, t) if q.is_negative() => {
            write!(f, "-")?;
            write_scaled(&-q, t, f)
        }
        VLTerm::Scale(q, t) if q.is_one() && **t != VLTerm::One => write!(f, "1*").and_then(|_| write_at(t, 4, f)),
        VLTerm::Scale(q, t) => write_scaled(q, t, f),
        VLTerm::Add(a, b) => {
            write_at(a, 2, f)?;
            match &**b {
                VLTerm::Scale(q, t) if q.is_negative() && b.as_pos().is_none() => {
                    write!(f, " - ")?;
                    write_scaled(&-q, t, f)
                }
                _ => {
                    write!(f, " + ")?;
                    write_at(b, 3, f)
                }
            }
        }
        VLTerm::Meet(a, b) => {
            write_at(a, 1, f)?;
            write!(f, " /\\ ")?;
            write_at(b, 2, f)
        }
        VLTerm::Join(a, b) => {
            write_at(a, 0, f)?;
            write!(f, " \\/ ")?;
            write_at(b, 1, f)
        }
    }
}

impl fmt::Display for VLTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f)
    }
}

pub(crate) fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_point<S: Serializer>(p: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|q| q.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semilinear::{rat, ratio};

    fn t(s: &str) -> VLTerm {
        parse_term(s, 3).unwrap()
    }

    #[test]
    fn evaluates_the_documented_examples() {
        assert_eq!(evaluate(&t("g0 \\/ g1"), &[rat(2), rat(3)]).unwrap(), rat(3));
        assert_eq!(evaluate(&t("(g0 - g1)^+"), &[rat(1), rat(4)]).unwrap(), rat(0));
        assert_eq!(evaluate(&t("2*g0 /\\ one"), &[ratio(1, 3), rat(0)]).unwrap(), ratio(2, 3));
    }

    #[test]
    fn evaluation_checks_dimension() {
        let e = evaluate(&t("g2"), &[rat(1)]).unwrap_err();
        assert!(e.is_input_error());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "g0",
            "(g0 - 2*g1)^+ \\/ one",
            "|g0| /\\ |g1|",
            "-1/2",
            "g0 - (g1 - g2)",
            "-g0 \\/ g1 /\\ g2",
            "2*(g0 + g1)^+",
            "(g0 \\/ g1) /\\ g2",
        ] {
            let a = t(s);
            assert_eq!(a.to_string(), s);
            assert_eq!(t(&a.to_string()), a);
        }
    }

    #[test]
    fn substitution_by_zero_is_constant() {
        let a = t("(g0 - g1)^+ \\/ one /\\ g2 + 3");
        let zeros = vec![VLTerm::zero(); 3];
        let s = substitute(&a, &zeros, None).unwrap();
        let v = evaluate(&a, &[rat(0), rat(0), rat(0)]).unwrap();
        for p in [[rat(5), rat(-1), rat(2)], [rat(0), rat(7), ratio(1, 2)]] {
            assert_eq!(evaluate(&s, &p).unwrap(), v);
        }
    }

    #[test]
    fn identity_substitution_is_identity() {
        let a = t("(g0 - g1)^+ /\\ g2");
        let id: Vec<VLTerm> = (0..3).map(VLTerm::gen).collect();
        assert_eq!(substitute(&a, &id, None).unwrap(), a);
        assert!(substitute(&a, &id[..2], None).is_err());
    }
}
