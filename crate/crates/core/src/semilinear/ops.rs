//! Set-level operations: projection, complement, inclusion, shadows.

use std::collections::BTreeSet;

use super::fm::{eliminate_cell, is_empty};
use super::{Atom, Cell, Rational, SemilinearSet};
use crate::error::{Error, Result};

pub const DEFAULT_CELL_LIMIT: usize = 10_000;

/// Outcome of an inclusion test `T ⊆ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    /// A verified point of `T ∖ S`.
    Fails(Vec<Rational>),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

/// Operations that may blow up, bounded by a ceiling on intermediate cells.
#[derive(Clone, Copy, Debug)]
pub struct SetOps {
    pub cell_limit: usize,
}

impl Default for SetOps {
    fn default() -> Self {
        SetOps { cell_limit: DEFAULT_CELL_LIMIT }
    }
}

impl SetOps {
    pub fn new(cell_limit: usize) -> Self {
        SetOps { cell_limit }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cell_limit {
            return Err(Error::ResourceLimit { what: "semilinear cell count", limit: self.cell_limit });
        }
        Ok(())
    }

    /// `acc ∩ ¬cell`, using the disjoint expansion
    /// `¬a₁ ∪ (a₁ ∧ ¬a₂) ∪ (a₁ ∧ a₂ ∧ ¬a₃) ∪ …` and pruning empty cells.
    fn subtract_cell(&self, acc: Vec<Cell>, cell: &Cell) -> Result<Vec<Cell>> {
        let dim = cell.dim();
        let mut pieces: Vec<Cell> = Vec::new();
        let mut prefix: Vec<Atom> = Vec::new();
        for a in cell.atoms() {
            for neg in a.negation() {
                let mut atoms = prefix.clone();
                atoms.push(neg);
                pieces.push(Cell::normalized(dim, atoms));
            }
            prefix.push(a.clone());
        }
        let mut out = Vec::new();
        for c in &acc {
            for p in &pieces {
                let x = c.and(p);
                if !is_empty(&x) {
                    out.push(x);
                    self.check(out.len())?;
                }
            }
        }
        Ok(out)
    }

    /// `base ∖ s`, as a list of nonempty cells.
    fn difference(&self, base: Vec<Cell>, s: &SemilinearSet) -> Result<Vec<Cell>> {
        let mut acc = base;
        for c in s.cells() {
            if acc.is_empty() {
                break;
            }
            acc = self.subtract_cell(acc, c)?;
        }
        Ok(acc)
    }

    /// Pointwise negation, by De Morgan over cells.
    pub fn complement(&self, s: &SemilinearSet) -> Result<SemilinearSet> {
        let cells = self.difference(vec![Cell::whole(s.dim())], s)?;
        SemilinearSet::new(s.dim(), cells)
    }

    /// Decides `t ⊆ s` by emptiness of `t ∩ ¬s`, cell by cell of `t`.
    pub fn includes(&self, s: &SemilinearSet, t: &SemilinearSet) -> Result<Inclusion> {
        check_dims(s, t)?;
        for tc in t.cells() {
            if is_empty(tc) {
                continue;
            }
            let rest = self.difference(vec![tc.clone()], s)?;
            if let Some(p) = rest.iter().find_map(super::witness_point) {
                assert!(t.contains(&p) && !s.contains(&p), "inclusion witness failed re-evaluation");
                return Ok(Inclusion::Fails(p));
            }
        }
        Ok(Inclusion::Holds)
    }

    /// Mutual inclusion.
    pub fn equivalent(&self, s: &SemilinearSet, t: &SemilinearSet) -> Result<bool> {
        Ok(self.includes(s, t)?.holds() && self.includes(t, s)?.holds())
    }

    /// `U_* = ¬ (¬U)^*`: points all of whose `X`-fibres lie in `U`.
    pub fn lower_shadow_set(&self, u: &SemilinearSet, x: &BTreeSet<usize>) -> Result<SemilinearSet> {
        let c = self.complement(u)?;
        self.complement(&upper_shadow_set(&c, x)?)
    }

    /// `W = U^*` over `X ∩ Y`, for `U` definable over `X`, `V` over `Y` and
    /// `U ⊆ V`; checks `U ⊆ W ⊆ V` before returning.
    pub fn interpolant(
        &self,
        u: &SemilinearSet,
        x: &BTreeSet<usize>,
        v: &SemilinearSet,
        y: &BTreeSet<usize>,
    ) -> Result<SemilinearSet> {
        check_dims(u, v)?;
        if let Inclusion::Fails(p) = self.includes(v, u)? {
            return Err(Error::contract(format!("U is not contained in V; witness {}", show(&p))));
        }
        if !self.includes(u, &upper_shadow_set(u, x)?)?.holds() {
            return Err(Error::contract("U is not definable over X"));
        }
        if !self.includes(v, &upper_shadow_set(v, y)?)?.holds() {
            return Err(Error::contract("V is not definable over Y"));
        }
        let xy: BTreeSet<usize> = x.intersection(y).copied().collect();
        let w = upper_shadow_set(u, &xy)?;
        if !self.includes(&w, u)?.holds() || !self.includes(v, &w)?.holds() {
            return Err(Error::contract("interpolant failed its sandwich check"));
        }
        Ok(w)
    }
}

fn check_dims(s: &SemilinearSet, t: &SemilinearSet) -> Result<()> {
    if s.dim() != t.dim() {
        return Err(Error::input(format!("dimension mismatch: {} vs {}", s.dim(), t.dim())));
    }
    Ok(())
}

fn show(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|q| q.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn check_vars(dim: usize, vars: &BTreeSet<usize>) -> Result<()> {
    if let Some(&v) = vars.iter().find(|&&v| v >= dim) {
        return Err(Error::input(format!("variable index {v} out of range for dimension {dim}")));
    }
    Ok(())
}

/// Projection along `vars`, kept in the same ambient dimension: the result
/// leaves the eliminated coordinates unconstrained.
pub fn eliminate(s: &SemilinearSet, vars: &BTreeSet<usize>) -> Result<SemilinearSet> {
    check_vars(s.dim(), vars)?;
    let vs: Vec<usize> = vars.iter().copied().collect();
    let cells = s.cells().iter().map(|c| eliminate_cell(c, &vs)).collect();
    SemilinearSet::new(s.dim(), cells)
}

/// `U^*`: points agreeing on `X` with some point of `U`.
pub fn upper_shadow_set(u: &SemilinearSet, x: &BTreeSet<usize>) -> Result<SemilinearSet> {
    check_vars(u.dim(), x)?;
    let others: BTreeSet<usize> = (0..u.dim()).filter(|i| !x.contains(i)).collect();
    eliminate(u, &others)
}

pub fn complement(s: &SemilinearSet) -> Result<SemilinearSet> {
    SetOps::default().complement(s)
}

/// `t ⊆ s`.
pub fn includes(s: &SemilinearSet, t: &SemilinearSet) -> Result<Inclusion> {
    SetOps::default().includes(s, t)
}

pub fn lower_shadow_set(u: &SemilinearSet, x: &BTreeSet<usize>) -> Result<SemilinearSet> {
    SetOps::default().lower_shadow_set(u, x)
}

pub fn interpolant(
    u: &SemilinearSet,
    x: &BTreeSet<usize>,
    v: &SemilinearSet,
    y: &BTreeSet<usize>,
) -> Result<SemilinearSet> {
    SetOps::default().interpolant(u, x, v, y)
}
