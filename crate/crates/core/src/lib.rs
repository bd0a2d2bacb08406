//! Exact tools for functions on the slice: junta thresholds, polynomial
//! representations and their recovery, exact junta detection, and the
//! extremal non-junta constructions.

pub mod constructions;
pub mod error;
pub mod junta;
pub mod ratpoly;
pub mod recovery;
pub mod slice;
pub mod subset;
pub mod thresholds;

pub use error::{Error, Result};
pub use ratpoly::{parse_rational, Rational, UnivariatePoly};
pub use slice::{MultilinearPoly, SliceDomain, SliceTable};
pub use subset::Subset;
pub use thresholds::{ThresholdRow, ValueSet};
