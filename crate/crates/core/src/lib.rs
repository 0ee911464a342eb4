//! Numerical semigroups, Betti elements and certified codimensions of
//! cuspidal strata of rational curves.

pub mod certify;
pub mod error;
pub mod exec;
pub mod factorization;
pub mod field;
pub mod matroid;
pub mod poly;
pub mod semigroup;
pub mod series;
pub mod stratum;

pub use error::{Error, Result};
pub use exec::Execution;
pub use semigroup::NumericalSemigroup;
pub use stratum::StratumInput;
