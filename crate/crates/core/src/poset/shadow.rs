use serde::{Deserialize, Serialize};

use super::{ElemSet, FinitePoset};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

/// The smallest shadow of `x` on `a`: `Max(A ∩ ↓x)` for lower shadows and
/// `Min(A ∩ ↑x)` for upper ones.
pub fn shadow(p: &FinitePoset, a: &ElemSet, x: usize, dir: Direction) -> Result<ElemSet> {
    p.check_set(a)?;
    p.check_element(x)?;
    Ok(match dir {
        Direction::Lower => p.maximal(&p.below_in(a, x)),
        Direction::Upper => p.minimal(&p.above_in(a, x)),
    })
}

/// Checks the defining equality of a shadow: `U ⊆ A` and
/// `A ∩ ↓x = A ∩ ↓U` (dually `A ∩ ↑x = A ∩ ↑U`).
pub fn is_shadow(p: &FinitePoset, a: &ElemSet, x: usize, u: &ElemSet, dir: Direction) -> Result<bool> {
    p.check_set(a)?;
    p.check_set(u)?;
    p.check_element(x)?;
    if !u.is_subset(a) {
        return Ok(false);
    }
    let (lhs, closure) = match dir {
        Direction::Lower => (p.below_in(a, x), p.down_closure(u)),
        Direction::Upper => (p.above_in(a, x), p.up_closure(u)),
    };
    let rhs: ElemSet = a.intersection(&closure).copied().collect();
    Ok(lhs == rhs)
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lower" => Ok(Direction::Lower),
            "upper" => Ok(Direction::Upper),
            other => Err(Error::input(format!("unknown direction `{other}`"))),
        }
    }
}
