//! Intertwining Laplace transformations of linear partial differential
//! operators, computed and verified in exact arithmetic.

pub mod error;
pub mod field;
pub mod classical;
pub mod cli;
pub mod format;
pub mod ilt;
pub mod linalg;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod solver;
pub mod workspace;

pub use error::{Error, Result};
pub use field::{FieldTower, RationalExpr};
pub use operator::{Lpdo, MultiIndex, PrincipalSymbol};
