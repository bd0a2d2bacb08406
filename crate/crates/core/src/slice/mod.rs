//! Functions on the slice `([n] choose k)`: domains, multilinear
//! polynomials, value tables and exact degree.

pub mod degree;
pub mod domain;
pub mod parse;
pub mod poly;
pub mod table;

pub use degree::{is_degree_at_most, slice_degree, slice_degree_by_rank};
pub use domain::{table_limit, SliceDomain, DEFAULT_MAX_POINTS, MAX_TABLE_ENV};
pub use parse::{parse_poly, parse_raw};
pub use poly::{multilinearize, MultilinearPoly, RawPoly};
pub use table::{truth_table, SliceTable};
