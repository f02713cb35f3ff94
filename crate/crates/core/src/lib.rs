//! Exact certificate engine for slice-area bounds of infinitesimal
//! Newton-Okounkov bodies on abelian threefolds.
//!
//! Every scalar is an exact rational. Slice profiles are piecewise
//! polynomial in the slice coordinate `t` with coefficients polynomial in a
//! single free parameter (the Seshadri constant or an entry time), and every
//! strict inequality is decided by Sturm root counting.

pub mod bounds;
pub mod certificates;
pub mod error;
pub mod exact;
pub mod piecewise;
pub mod slice_model;

pub use error::{Error, Result};
pub use exact::{
    Ends, ParamPolynomial, Polynomial, Rational, RationalInterval, SignVerdict,
};
