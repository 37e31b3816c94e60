#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::should_implement_trait, clippy::only_used_in_recursion)]

pub mod change;
pub mod cone_expr;
pub mod io;
pub mod models;
pub mod report;
pub mod sample;
pub mod conic;
pub mod error;
pub mod events;
pub mod files;
pub mod harness;
pub mod hermitian;
pub mod linalg;
pub mod lp;
pub mod polycone;
pub mod psd;
pub mod scalar;
pub mod space;
pub mod subspace;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
