//! Exact scalar and polynomial arithmetic with the real-root decision
//! procedures everything else is built on.

mod interval;
mod param;
mod poly;
mod rational;
pub mod sign;
pub mod sturm;

pub use interval::{Ends, RationalInterval};
pub use param::ParamPolynomial;
pub use poly::Polynomial;
pub use rational::{ArithOp, Rational};
pub use sign::{
    nonnegative_on, nonpositive_on, poly_inf_enclosure, poly_sup_enclosure, sign_on_interval,
    SignVerdict, SupEnclosure,
};
pub use sturm::{isolate_roots, sturm_root_count, IsolatedRoot, SturmSequence};

/// `∫_{lower(s)}^{upper(s)} f(s, t) dt` as a polynomial in `s`.
pub fn param_definite_integral(
    f: &ParamPolynomial,
    lower: &Polynomial,
    upper: &Polynomial,
) -> Polynomial {
    f.definite_integral(lower, upper)
}
