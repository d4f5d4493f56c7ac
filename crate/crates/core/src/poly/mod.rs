//! Exact polynomial algebra: sparse trivariate polynomials, univariate
//! polynomials, truncated bivariate power series and Sturm root isolation.

mod multi;
mod series;
mod sturm;
mod uni;

pub use multi::{Monomial, MultiPoly3, Point3};
pub use series::TruncSeries2;
pub use sturm::{sturm_isolate, Isolation, RootInterval, SturmChain};
pub use uni::UniPoly;

use serde::{Deserialize, Serialize};

/// One entry of the polynomial JSON form: `{"e":[..], "c":"p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: String,
}
