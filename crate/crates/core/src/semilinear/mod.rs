//! Exact semilinear sets over `ℚⁿ`: finite unions of cells, each cell a
//! conjunction of linear atoms `f > 0`, `f ≥ 0` or `f = 0`.
//!
//! Coordinates are 0-based internally. The textual atom format numbers them
//! from 1 (`x1` is coordinate 0).

mod fm;
mod ops;
mod parse;

use std::fmt;

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fm::{eliminate_cell, is_empty, witness_point};
pub use ops::{
    complement, eliminate, includes, interpolant, lower_shadow_set, upper_shadow_set, Inclusion, SetOps,
    DEFAULT_CELL_LIMIT,
};
pub use parse::{parse_atom, parse_rational};

pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ coeffs[i]·x_i + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl LinearForm {
    pub fn zero(dim: usize) -> Self {
        LinearForm { coeffs: vec![Rational::zero(); dim], constant: Rational::zero() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        LinearForm { coeffs: vec![Rational::zero(); dim], constant: c }
    }

    /// The coordinate `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim);
        f.coeffs[i] = Rational::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        debug_assert_eq!(point.len(), self.dim());
        self.coeffs.iter().zip(point).fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn scale(&self, k: &Rational) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|a| a * k).collect(), constant: &self.constant * k }
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rel {
    Gt,
    Ge,
    Eq,
}

impl Rel {
    pub fn holds(self, v: &Rational) -> bool {
        match self {
            Rel::Gt => v.is_positive(),
            Rel::Ge => !v.is_negative(),
            Rel::Eq => v.is_zero(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Gt => ">",
            Rel::Ge => ">=",
            Rel::Eq => "=",
        }
    }
}

/// `form rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub form: LinearForm,
    pub rel: Rel,
}

impl Atom {
    pub fn new(form: LinearForm, rel: Rel) -> Self {
        Atom { form, rel }
    }

    pub fn gt(form: LinearForm) -> Self {
        Atom::new(form, Rel::Gt)
    }

    pub fn ge(form: LinearForm) -> Self {
        Atom::new(form, Rel::Ge)
    }

    pub fn eq(form: LinearForm) -> Self {
        Atom::new(form, Rel::Eq)
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        self.rel.holds(&self.form.eval(point))
    }

    fn falsum(dim: usize) -> Self {
        Atom::gt(LinearForm::zero(dim))
    }

    /// Scales so that the first nonzero coefficient has absolute value 1
    /// (value 1 for equalities). Constant atoms are scaled to `-1`, `0` or `1`.
    fn normalized(&self) -> Atom {
        let pivot = self.form.coeffs.iter().find(|c| !c.is_zero()).cloned();
        let k = match (pivot, self.rel) {
            (Some(p), Rel::Eq) => p.recip(),
            (Some(p), _) => p.abs().recip(),
            (None, _) if self.form.constant.is_zero() => return self.clone(),
            (None, Rel::Eq) => self.form.constant.recip(),
            (None, _) => self.form.constant.abs().recip(),
        };
        Atom::new(self.form.scale(&k), self.rel)
    }

    /// Negation as a disjunction of atoms.
    pub fn negation(&self) -> Vec<Atom> {
        match self.rel {
            Rel::Gt => vec![Atom::ge(self.form.neg())],
            Rel::Ge => vec![Atom::gt(self.form.neg())],
            Rel::Eq => vec![Atom::gt(self.form.clone()), Atom::gt(self.form.neg())],
        }
    }
}

/// A conjunction of atoms. The empty conjunction is the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    dim: usize,
    atoms: Vec<Atom>,
}

impl Cell {
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        if let Some(a) = atoms.iter().find(|a| a.form.dim() != dim) {
            return Err(Error::input(format!("atom of dimension {} in a cell of dimension {dim}", a.form.dim())));
        }
        Ok(Self::normalized(dim, atoms))
    }

    pub fn whole(dim: usize) -> Self {
        Cell { dim, atoms: Vec::new() }
    }

    /// Normalizes, evaluates constant atoms, drops duplicates and atoms
    /// dominated by a tighter parallel one.
    pub(crate) fn normalized(dim: usize, atoms: Vec<Atom>) -> Self {
        let mut out: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            let a = a.normalized();
            if a.form.is_constant() {
                if a.rel.holds(&a.form.constant) {
                    continue;
                }
                return Cell { dim, atoms: vec![Atom::falsum(dim)] };
            }
            out.push(a);
        }
        out.sort();
        out.dedup();
        // Parallel inequalities `f + k ▷ 0`: keep the smallest `k`, strict on ties.
        let mut kept: Vec<Atom> = Vec::with_capacity(out.len());
        for a in out {
            if a.rel != Rel::Eq {
                if let Some(prev) = kept.iter_mut().find(|b| b.rel != Rel::Eq && b.form.coeffs == a.form.coeffs) {
                    let tighter = a.form.constant < prev.form.constant
                        || (a.form.constant == prev.form.constant && a.rel == Rel::Gt);
                    if tighter {
                        *prev = a;
                    }
                    continue;
                }
            }
            kept.push(a);
        }
        kept.sort();
        Cell { dim, atoms: kept }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_trivially_false(&self) -> bool {
        self.atoms.iter().any(|a| a.form.is_constant() && !a.rel.holds(&a.form.constant))
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.atoms.iter().all(|a| a.holds(point))
    }

    pub fn and(&self, other: &Cell) -> Cell {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Self::normalized(self.dim, atoms)
    }

    /// Variables occurring with a nonzero coefficient.
    pub fn support(&self) -> std::collections::BTreeSet<usize> {
        self.atoms.iter().flat_map(|a| a.form.support()).collect()
    }
}

/// A finite union of cells. No cells is the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    dim: usize,
    cells: Vec<Cell>,
}

impl SemilinearSet {
    pub fn new(dim: usize, cells: Vec<Cell>) -> Result<Self> {
        if let Some(c) = cells.iter().find(|c| c.dim != dim) {
            return Err(Error::input(format!("cell of dimension {} in a set of dimension {dim}", c.dim)));
        }
        Ok(SemilinearSet { dim, cells: cells.into_iter().filter(|c| !c.is_trivially_false()).collect() })
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet { dim, cells: Vec::new() }
    }

    pub fn whole(dim: usize) -> Self {
        SemilinearSet { dim, cells: vec![Cell::whole(dim)] }
    }

    pub fn from_cell(cell: Cell) -> Self {
        let dim = cell.dim;
        SemilinearSet::new(dim, vec![cell]).expect("same dimension")
    }

    pub fn from_atoms(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        Ok(Self::from_cell(Cell::new(dim, atoms)?))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(point))
    }

    pub fn union(&self, other: &SemilinearSet) -> SemilinearSet {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        SemilinearSet { dim: self.dim, cells }
    }

    /// Cellwise products, with empty cells pruned.
    pub fn intersect(&self, other: &SemilinearSet) -> SemilinearSet {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let c = a.and(b);
                if !is_empty(&c) {
                    cells.push(c);
                }
            }
        }
        SemilinearSet { dim: self.dim, cells }
    }

    /// Drops cells that are empty.
    pub fn pruned(&self) -> SemilinearSet {
        SemilinearSet { dim: self.dim, cells: self.cells.iter().filter(|c| !is_empty(c)).cloned().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(is_empty)
    }

    /// Some point of the set, verified.
    pub fn witness(&self) -> Option<Vec<Rational>> {
        self.cells.iter().find_map(witness_point)
    }

    /// Variables occurring in some atom.
    pub fn support(&self) -> std::collections::BTreeSet<usize> {
        self.cells.iter().flat_map(|c| c.support()).collect()
    }

    /// Every atom strict with zero constant and no whole-space cell: the
    /// shape of the open cones `⋃⋂ {x : (a | x) > 0}`.
    pub fn is_proper(&self) -> bool {
        self.cells.iter().all(|c| !c.atoms.is_empty() && c.atoms.iter().all(|a| a.rel == Rel::Gt && a.form.constant.is_zero()))
    }

    /// Cells as lists of atom strings, `x1` for coordinate 0.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.cells.iter().map(|c| c.atoms.iter().map(|a| a.to_string()).collect()).collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &Rational, var: Option<usize>| -> fmt::Result {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match var {
                Some(i) if mag.is_one() => write!(f, "x{}", i + 1),
                Some(i) => write!(f, "{mag}*x{}", i + 1),
                None => write!(f, "{mag}"),
            }
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                term(f, c, Some(i))?;
            }
        }
        if !self.constant.is_zero() || self.is_constant() {
            term(f, &self.constant, None)?;
        }
        Ok(())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.form, self.rel.symbol())
    }
}

impl fmt::Display for SemilinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cells.is_empty() {
            return write!(f, "false");
        }
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            if c.atoms.is_empty() {
                write!(f, "true")?;
                continue;
            }
            let parts: Vec<String> = c.atoms.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(" & "))?;
        }
        Ok(())
    }
}

/// Renders a point as strings such as `1/2`.
pub fn point_strings(p: &[Rational]) -> Vec<String> {
    p.iter().map(|q| q.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_scales_and_dedups() {
        let f = LinearForm { coeffs: vec![rat(2), rat(-4)], constant: rat(6) };
        let c = Cell::new(2, vec![Atom::gt(f.clone()), Atom::gt(f.scale(&rat(3)))]).unwrap();
        assert_eq!(c.atoms().len(), 1);
        assert_eq!(c.atoms()[0].form.coeffs, vec![rat(1), rat(-2)]);
    }

    #[test]
    fn dominated_parallel_atoms_are_dropped() {
        let x = LinearForm::var(1, 0);
        let c = Cell::new(1, vec![Atom::ge(x.clone()), Atom::gt(x.sub(&LinearForm::constant(1, rat(1))))]).unwrap();
        assert_eq!(c.atoms().len(), 1);
        assert_eq!(c.atoms()[0].to_string(), "x1 - 1 > 0");
    }

    #[test]
    fn constant_atoms_are_evaluated() {
        let t = Cell::new(2, vec![Atom::ge(LinearForm::constant(2, rat(3)))]).unwrap();
        assert!(t.atoms().is_empty());
        let f = Cell::new(2, vec![Atom::gt(LinearForm::constant(2, rat(0)))]).unwrap();
        assert!(f.is_trivially_false());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        let a = parse_atom("2*x1 - 1/3*x2 + 1 > 0", 2).unwrap();
        let b = parse_atom(&a.to_string(), 2).unwrap();
        assert_eq!(a, b);
    }
}
