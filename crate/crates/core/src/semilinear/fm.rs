//! Fourier–Motzkin elimination on single cells.

use num::{Signed, Zero};

use super::{Atom, Cell, LinearForm, Rational, Rel};

/// Removes `x_j` from a conjunction. An equality mentioning `x_j` is used to
/// substitute it away; otherwise every lower bound is paired with every upper
/// bound, the result being strict when either parent is.
fn eliminate_var(cell: &Cell, j: usize) -> Cell {
    let dim = cell.dim();
    let atoms = cell.atoms();
    if let Some(eq) = atoms.iter().find(|a| a.rel == Rel::Eq && !a.form.coeffs[j].is_zero()) {
        // x_j = -(rest) / c
        let c = eq.form.coeffs[j].clone();
        let out = atoms
            .iter()
            .filter(|a| *a != eq)
            .map(|a| {
                let k = &a.form.coeffs[j] / &c;
                Atom::new(a.form.sub(&eq.form.scale(&k)), a.rel)
            })
            .collect();
        return Cell::normalized(dim, out);
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for a in atoms {
        let c = &a.form.coeffs[j];
        if c.is_zero() {
            out.push(a.clone());
        } else if c.is_positive() {
            lower.push(a);
        } else {
            upper.push(a);
        }
    }
    for l in &lower {
        for u in &upper {
            let (a, b) = (&l.form.coeffs[j], -&u.form.coeffs[j]);
            let form = l.form.scale(&b).add(&u.form.scale(a));
            let rel = if l.rel == Rel::Gt || u.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
            out.push(Atom::new(form, rel));
        }
    }
    Cell::normalized(dim, out)
}

/// Next variable to eliminate among `vars`: one fixed by an equality if
/// possible, else the one producing the fewest new atoms.
fn pick(cell: &Cell, vars: &[usize]) -> Option<usize> {
    let occurs = |j: usize| cell.atoms().iter().any(|a| !a.form.coeffs[j].is_zero());
    if let Some(&j) = vars
        .iter()
        .find(|&&j| cell.atoms().iter().any(|a| a.rel == Rel::Eq && !a.form.coeffs[j].is_zero()))
    {
        return Some(j);
    }
    // ties: highest index first
    vars.iter().copied().filter(|&j| occurs(j)).min_by_key(|&j| {
        let pos = cell.atoms().iter().filter(|a| a.form.coeffs[j].is_positive()).count();
        let neg = cell.atoms().iter().filter(|a| a.form.coeffs[j].is_negative()).count();
        ((pos * neg) as isize - (pos + neg) as isize, std::cmp::Reverse(j))
    })
}

struct Tower {
    steps: Vec<(usize, Cell)>,
    residue: Cell,
}

fn eliminate_tower(cell: &Cell, vars: &[usize]) -> Tower {
    let mut current = cell.clone();
    let mut remaining: Vec<usize> = vars.to_vec();
    let mut steps = Vec::new();
    while !current.is_trivially_false() {
        let Some(j) = pick(&current, &remaining) else { break };
        remaining.retain(|&v| v != j);
        let next = eliminate_var(&current, j);
        steps.push((j, current));
        current = next;
    }
    Tower { steps, residue: current }
}

/// Projects `vars` out of a cell; the result does not mention them.
pub fn eliminate_cell(cell: &Cell, vars: &[usize]) -> Cell {
    eliminate_tower(cell, vars).residue
}

/// No rational point satisfies every atom.
pub fn is_empty(cell: &Cell) -> bool {
    let all: Vec<usize> = (0..cell.dim()).collect();
    let t = eliminate_tower(cell, &all);
    debug_assert!(t.residue.is_trivially_false() || t.residue.atoms().is_empty());
    t.residue.is_trivially_false()
}

/// A point of the cell, or `None` when it is empty. Back-substitutes through
/// the elimination tower preferring 0, then small integers; the point is
/// checked against every atom before it is returned.
pub fn witness_point(cell: &Cell) -> Option<Vec<Rational>> {
    let all: Vec<usize> = (0..cell.dim()).collect();
    let t = eliminate_tower(cell, &all);
    if t.residue.is_trivially_false() {
        return None;
    }
    let mut point = vec![Rational::zero(); cell.dim()];
    for (j, c) in t.steps.iter().rev() {
        point[*j] = choose(c, *j, &point);
    }
    assert!(cell.contains(&point), "back-substitution produced a non-member");
    Some(point)
}

type Bound = (Rational, bool);

fn choose(cell: &Cell, j: usize, point: &[Rational]) -> Rational {
    let mut lo: Option<Bound> = None;
    let mut hi: Option<Bound> = None;
    for a in cell.atoms() {
        let c = &a.form.coeffs[j];
        if c.is_zero() {
            continue;
        }
        let mut rest: LinearForm = a.form.clone();
        rest.coeffs[j] = Rational::zero();
        let bound = -rest.eval(point) / c;
        let strict = a.rel == Rel::Gt;
        match a.rel {
            Rel::Eq => return bound,
            _ if c.is_positive() => tighten(&mut lo, bound, strict, true),
            _ => tighten(&mut hi, bound, strict, false),
        }
    }
    let ok = |v: &Rational| {
        lo.as_ref().is_none_or(|(l, s)| if *s { v > l } else { v >= l })
            && hi.as_ref().is_none_or(|(h, s)| if *s { v < h } else { v <= h })
    };
    let zero = Rational::zero();
    if ok(&zero) {
        return zero;
    }
    if let Some((l, strict)) = &lo {
        let v = if *strict { l.floor() + Rational::from_integer(1.into()) } else { l.ceil() };
        if ok(&v) {
            return v;
        }
    }
    if let Some((h, strict)) = &hi {
        let v = if *strict { h.ceil() - Rational::from_integer(1.into()) } else { h.floor() };
        if ok(&v) {
            return v;
        }
    }
    match (lo, hi) {
        (Some((l, _)), Some((h, _))) if l == h => l,
        (Some((l, _)), Some((h, _))) => (l + h) / Rational::from_integer(2.into()),
        _ => unreachable!("a one-sided bound always admits an integer"),
    }
}

fn tighten(slot: &mut Option<Bound>, v: Rational, strict: bool, lower: bool) {
    let replace = match slot {
        None => true,
        Some((cur, s)) => {
            if lower {
                v > *cur || (v == *cur && strict && !*s)
            } else {
                v < *cur || (v == *cur && strict && !*s)
            }
        }
    };
    if replace {
        *slot = Some((v, strict));
    }
}
