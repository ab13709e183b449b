//! Finite-precision p-adic algebra for Coleman families.
//!
//! The crate models the formal ring `O_K[[U]]` carrying a Coleman family,
//! Wiles pseudo-representations over it and their reconstruction to honest
//! rank-two representations, and the specialization of structure-theorem
//! modules at arithmetic points together with their mu/lambda invariants.

pub mod error;
pub mod family;
pub mod iwasawa;
pub mod padic;
pub mod pseudo;
pub mod series;
pub mod weight;

pub use error::{Error, Result};
pub use padic::{Elem, KElem, RingParams};


/// Exact rationals, used for valuations and slopes.
pub type Rational = num_rational::Ratio<i64>;
pub use series::{BiSeries, Chart, Series, WeierstrassFactorization};
