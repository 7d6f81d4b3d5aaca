pub mod adjust;
pub mod corpus;
pub mod deviation;
pub mod error;
pub mod io;
pub mod lattice;
pub mod poset;
pub mod semilinear;
pub mod vlat;

pub use error::{Error, Result};
pub use lattice::FiniteDistributiveLattice;
pub use poset::{ElemSet, FinitePoset, SeparabilityWitness};
