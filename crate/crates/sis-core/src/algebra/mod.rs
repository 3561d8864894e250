//! Exact arbitrary-precision arithmetic: rationals, sparse polynomials,
//! cyclotomic products, truncated power series and fractional spectra.

pub mod arith;
pub mod cyclo;
pub mod poly;
pub mod rat;
pub mod series;
pub mod spectrum;

pub use cyclo::{cyclotomic, cyclotomic_at_one, CycloProduct};
pub use poly::Poly;
pub use rat::{rat, ratio, Rat};
pub use series::{multiples_filter, series_of, Series};
pub use spectrum::SpectrumPoly;
