//! Piecewise-linear normal form of a term: a list of cells covering `ℚⁿ`,
//! each carrying the linear form the term agrees with there.

use num::{Signed, Zero};

use super::VLTerm;
use crate::error::{Error, Result};
use crate::semilinear::{is_empty, Atom, Cell, LinearForm, Rational, SemilinearSet};

pub const DEFAULT_PIECE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseForm {
    pub dim: usize,
    pub pieces: Vec<(Cell, LinearForm)>,
}

impl PiecewiseForm {
    fn single(dim: usize, form: LinearForm) -> Self {
        PiecewiseForm { dim, pieces: vec![(Cell::whole(dim), form)] }
    }

    /// The form of the first piece containing `p`.
    pub fn active(&self, p: &[Rational]) -> Option<&LinearForm> {
        self.pieces.iter().find(|(c, _)| c.contains(p)).map(|(_, f)| f)
    }

    pub fn eval(&self, p: &[Rational]) -> Option<Rational> {
        self.active(p).map(|f| f.eval(p))
    }

    /// Union of the cells, for checking coverage.
    pub fn domain(&self) -> SemilinearSet {
        SemilinearSet::new(self.dim, self.pieces.iter().map(|(c, _)| c.clone()).collect()).expect("same dimension")
    }
}

struct Linearizer {
    dim: usize,
    limit: usize,
}

impl Linearizer {
    fn check(&self, n: usize) -> Result<()> {
        if n > self.limit {
            return Err(Error::ResourceLimit { what: "linearization pieces", limit: self.limit });
        }
        Ok(())
    }

    fn run(&self, t: &VLTerm) -> Result<PiecewiseForm> {
        let dim = self.dim;
        Ok(match t {
            VLTerm::Gen(i) => PiecewiseForm::single(dim, LinearForm::var(dim, *i)),
            VLTerm::One => PiecewiseForm::single(dim, LinearForm::constant(dim, Rational::from_integer(1.into()))),
            VLTerm::Scale(q, t) => {
                if q.is_zero() {
                    return Ok(PiecewiseForm::single(dim, LinearForm::zero(dim)));
                }
                let mut p = self.run(t)?;
                for (_, f) in &mut p.pieces {
                    *f = f.scale(q);
                }
                p
            }
            VLTerm::Add(a, b) => {
                let (pa, pb) = (self.run(a)?, self.run(b)?);
                let mut pieces = Vec::new();
                for (ca, fa) in &pa.pieces {
                    for (cb, fb) in &pb.pieces {
                        let c = ca.and(cb);
                        if !is_empty(&c) {
                            pieces.push((c, fa.add(fb)));
                            self.check(pieces.len())?;
                        }
                    }
                }
                PiecewiseForm { dim, pieces }
            }
            VLTerm::Join(a, b) => self.lattice_op(a, b, true)?,
            VLTerm::Meet(a, b) => self.lattice_op(a, b, false)?,
        })
    }

    /// Splits every product cell on `fa − fb ≥ 0` versus `fb − fa > 0`.
    fn lattice_op(&self, a: &VLTerm, b: &VLTerm, join: bool) -> Result<PiecewiseForm> {
        let (pa, pb) = (self.run(a)?, self.run(b)?);
        let mut pieces = Vec::new();
        let push = |c: Cell, f: LinearForm, pieces: &mut Vec<(Cell, LinearForm)>| -> Result<()> {
            if !is_empty(&c) {
                pieces.push((c, f));
                self.check(pieces.len())?;
            }
            Ok(())
        };
        for (ca, fa) in &pa.pieces {
            for (cb, fb) in &pb.pieces {
                let c = ca.and(cb);
                let d = fa.sub(fb);
                let (first, second) = if join { (fa, fb) } else { (fb, fa) };
                if d.is_constant() {
                    let f = if d.constant.is_negative() { second } else { first };
                    push(c, f.clone(), &mut pieces)?;
                    continue;
                }
                let ge = c.and(&Cell::new(self.dim, vec![Atom::ge(d.clone())])?);
                let lt = c.and(&Cell::new(self.dim, vec![Atom::gt(d.neg())])?);
                push(ge, first.clone(), &mut pieces)?;
                push(lt, second.clone(), &mut pieces)?;
            }
        }
        Ok(PiecewiseForm { dim: self.dim, pieces })
    }
}

/// Piecewise normal form in dimension `n`, at the default piece ceiling.
pub fn linearize(t: &VLTerm, n: usize) -> Result<PiecewiseForm> {
    linearize_with(t, n, DEFAULT_PIECE_LIMIT)
}

pub fn linearize_with(t: &VLTerm, n: usize, limit: usize) -> Result<PiecewiseForm> {
    t.check_dim(n)?;
    Linearizer { dim: n, limit }.run(t)
}

fn cells_where(p: &PiecewiseForm, atoms: impl Fn(&LinearForm) -> Vec<Atom>) -> SemilinearSet {
    let mut cells = Vec::new();
    for (c, f) in &p.pieces {
        for a in atoms(f) {
            let x = c.and(&Cell::new(p.dim, vec![a]).expect("same dimension"));
            if !is_empty(&x) {
                cells.push(x);
            }
        }
    }
    SemilinearSet::new(p.dim, cells).expect("same dimension")
}

/// `{u : t(u) = 0}`.
pub fn zero_set(t: &VLTerm, n: usize) -> Result<SemilinearSet> {
    zero_set_with(t, n, DEFAULT_PIECE_LIMIT)
}

pub fn zero_set_with(t: &VLTerm, n: usize, piece_limit: usize) -> Result<SemilinearSet> {
    Ok(cells_where(&linearize_with(t, n, piece_limit)?, |f| vec![Atom::eq(f.clone())]))
}

/// `{u : t(u) ≠ 0}`.
pub fn cozero_set(t: &VLTerm, n: usize) -> Result<SemilinearSet> {
    cozero_set_with(t, n, DEFAULT_PIECE_LIMIT)
}

pub fn cozero_set_with(t: &VLTerm, n: usize, piece_limit: usize) -> Result<SemilinearSet> {
    Ok(cells_where(&linearize_with(t, n, piece_limit)?, |f| vec![Atom::gt(f.clone()), Atom::gt(f.neg())]))
}

/// `{u : t(u) > 0}`.
pub fn positive_set(t: &VLTerm, n: usize) -> Result<SemilinearSet> {
    Ok(cells_where(&linearize(t, n)?, |f| vec![Atom::gt(f.clone())]))
}

#[cfg(test)]
mod tests {
    use super::super::{evaluate, parse_term};
    use super::*;
    use crate::semilinear::{complement, includes, parse_atom, rat, SetOps};

    fn t(s: &str, n: usize) -> VLTerm {
        parse_term(s, n).unwrap()
    }

    fn set(dim: usize, cells: &[&[&str]]) -> SemilinearSet {
        let cells = cells
            .iter()
            .map(|c| Cell::new(dim, c.iter().map(|a| parse_atom(a, dim).unwrap()).collect()).unwrap())
            .collect();
        SemilinearSet::new(dim, cells).unwrap()
    }

    fn grid(n: usize) -> Vec<Vec<Rational>> {
        let vals = [-2, -1, 0, 1, 3];
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|p| vals.iter().map(move |&v| [p.clone(), vec![rat(v)]].concat())).collect();
        }
        out
    }

    #[test]
    fn generator_is_one_piece() {
        let p = linearize(&t("g0", 2), 2).unwrap();
        assert_eq!(p.pieces, vec![(Cell::whole(2), LinearForm::var(2, 0))]);
    }

    #[test]
    fn join_splits_in_two() {
        let p = linearize(&t("g0 \\/ g1", 2), 2).unwrap();
        assert_eq!(p.pieces.len(), 2);
        assert_eq!(p.pieces[0].0, set(2, &[&["x1 - x2 >= 0"]]).cells()[0]);
        assert_eq!(p.pieces[1].0, set(2, &[&["x2 - x1 > 0"]]).cells()[0]);
    }

    #[test]
    fn pieces_cover_and_agree() {
        let a = t("(g0 - g1)^+ /\\ g2", 3);
        let p = linearize(&a, 3).unwrap();
        assert!(p.pieces.len() <= 4);
        assert!(includes(&p.domain(), &SemilinearSet::whole(3)).unwrap().holds());
        for q in grid(3) {
            assert_eq!(p.eval(&q).unwrap(), evaluate(&a, &q).unwrap());
        }
    }

    #[test]
    fn zero_and_cozero_examples() {
        let c = cozero_set(&t("g0", 1), 1).unwrap();
        assert_eq!(c, set(1, &[&["x1 > 0"], &["-x1 > 0"]]));
        let z = zero_set(&t("g0^+", 1), 1).unwrap();
        assert!(SetOps::default().equivalent(&z, &set(1, &[&["-x1 >= 0"]])).unwrap());
        let z = zero_set(&t("g0 \\/ g1", 2), 2).unwrap();
        assert!(!SetOps::default().equivalent(&z, &set(2, &[&["x1 <= 0", "x2 <= 0"]])).unwrap());
        assert!(SetOps::default().equivalent(&z, &set(2, &[&["x1 = 0", "x2 <= 0"], &["x2 = 0", "x1 <= 0"]])).unwrap());
        let z = zero_set(&t("(g0 \\/ g1)^+", 2), 2).unwrap();
        assert!(SetOps::default().equivalent(&z, &set(2, &[&["x1 <= 0", "x2 <= 0"]])).unwrap());
    }

    #[test]
    fn zero_set_is_complement_of_cozero() {
        for s in ["(g0 - g1)^+ /\\ g2", "|g0| \\/ g1 - one", "g0 /\\ g1 /\\ g2"] {
            let a = t(s, 3);
            let z = zero_set(&a, 3).unwrap();
            let c = complement(&cozero_set(&a, 3).unwrap()).unwrap();
            assert!(SetOps::default().equivalent(&z, &c).unwrap(), "{s}");
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let a = t("(g0 \\/ g1) + (g1 \\/ g2) + (g0 \\/ g2)", 3);
        assert!(matches!(linearize_with(&a, 3, 3), Err(Error::ResourceLimit { .. })));
    }
}
