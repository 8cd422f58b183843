//! Exact q-series engine for modified Hall-Littlewood polynomials, Bailey
//! pairs, affine character formulas and eta-function identities.

pub mod bailey;
pub mod characters;
pub mod error;
pub mod eta;
pub mod partitions;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod report;
pub mod rr;
pub mod suite;
pub mod symfunc;
pub mod tableaux;

pub use error::{Error, Result};
pub use qseries::{QSeries, Q};
