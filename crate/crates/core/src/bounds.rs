//! Numeric rules for multiplicity dynamics and the Seshadri/width caps that
//! feed the certificate scenarios.
//!
//! Gates that the underlying estimates state strictly (`>`) return `false`
//! on the boundary.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{nonnegative_on, nonpositive_on, Polynomial, Rational, RationalInterval};

/// Lower bound `m(t) >= base + slope (t - start)` for `t >= start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBound {
    pub start: Polynomial,
    pub base: Polynomial,
    pub slope: Rational,
}

impl LinearBound {
    pub fn new(start: Polynomial, base: Polynomial, slope: Rational) -> Result<Self> {
        if slope < Rational::one() {
            return Err(Error::invalid(format!("multiplicity slope {slope} is below 1")));
        }
        Ok(LinearBound { start, base, slope })
    }

    /// Slope-one bound, the only growth rate the certificates rely on.
    pub fn unit(start: Polynomial, base: Polynomial) -> Self {
        LinearBound { start, base, slope: Rational::one() }
    }
}

/// Hypotheses of the main theorem after normalizing by `p + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricGates {
    pub b_cubed: Rational,
    pub curve_degree_floor: Rational,
    pub surface_degree_floor: Rational,
}

impl GeometricGates {
    pub fn new(b_cubed: Rational, curve_degree_floor: Rational, surface_degree_floor: Rational) -> Result<Self> {
        if !(b_cubed.is_positive() && curve_degree_floor.is_positive() && surface_degree_floor.is_positive()) {
            return Err(Error::invalid("geometric gates must be positive"));
        }
        Ok(GeometricGates { b_cubed, curve_degree_floor, surface_degree_floor })
    }

    /// `B^3 > 59`, `B^2·S > 4`, `B·C > 2`.
    pub fn main_theorem() -> Self {
        GeometricGates {
            b_cubed: Rational::from(59),
            curve_degree_floor: Rational::from(2),
            surface_degree_floor: Rational::from(4),
        }
    }
}

/// `base + (t - start)`; the slope-one floor regardless of the declared slope.
pub fn slope_propagate(b: &LinearBound, t: &Polynomial, params: &RationalInterval) -> Result<Polynomial> {
    let elapsed = t - &b.start;
    if !nonnegative_on(&elapsed, params) {
        return Err(Error::invalid(format!(
            "t = {} precedes the entry time {}",
            t.display_in("s"),
            b.start.display_in("s")
        )));
    }
    Ok(&b.base + &elapsed)
}

/// `m(t) <= t` on `t >= start`, which for a slope-one bound reduces to
/// `base <= start` over the parameter range.
pub fn mult_cap_check(b: &LinearBound, params: &RationalInterval) -> bool {
    nonnegative_on(&(&b.start - &b.base), params)
}

/// First time the bound reaches `threshold`: `start + threshold - base`, or
/// `start` when the bound already exceeds the threshold at entry.
pub fn sum_locus_time(threshold: &Polynomial, b: &LinearBound, params: &RationalInterval) -> Result<Polynomial> {
    let lag = threshold - &b.base;
    if nonnegative_on(&lag, params) {
        Ok(&b.start + &lag)
    } else if nonpositive_on(&lag, params) {
        Ok(b.start.clone())
    } else {
        Err(Error::invalid("threshold crosses the entry multiplicity inside the parameter range"))
    }
}

/// Strict upper bound `t (1 - d) + 3d` on the Seshadri constant, from
/// `d < B·C <= (t - ε)/(t - 3)`.
pub fn adjunction_eps_cap(t: &Polynomial, degree_floor: &Rational) -> Result<Polynomial> {
    if degree_floor < &Rational::one() {
        return Err(Error::invalid("degree floor must be at least 1"));
    }
    let d = degree_floor;
    Ok(&t.scale(&(Rational::one() - d)) + &Polynomial::constant(d * &Rational::from(3)))
}

/// `t c + ε (1 - c) > dim`: the multiplicity after cutting down still beats
/// the dimension, so the LC centre can be shrunk to a point.
pub fn adjunction_success_gate(t: &Rational, c: &Rational, eps: &Rational, dim: u32) -> Result<bool> {
    if !c.is_positive() || c > &Rational::one() {
        return Err(Error::invalid(format!("coefficient c = {c} must lie in (0, 1]")));
    }
    let lhs = t * c + eps * &(Rational::one() - c);
    Ok(lhs > Rational::from(dim as i64))
}

/// The failure region of [`adjunction_success_gate`] in the coefficient:
/// `c <= (dim - ε)/(t - ε)`.
pub fn adjunction_failure_cap(t: &Rational, eps: &Rational, dim: u32) -> Result<Rational> {
    (&Rational::from(dim as i64) - eps).checked_div(&(t - eps))
}

/// `(1 - c)(B·V) > 1`.
pub fn curve_cut_gate(one_minus_c: &Rational, deg_bc: &Rational) -> Result<bool> {
    if !one_minus_c.is_positive() || !deg_bc.is_positive() {
        return Err(Error::invalid("curve cut gate inputs must be positive"));
    }
    Ok(one_minus_c * deg_bc > Rational::one())
}

/// Smallest integer `q >= 1` with `(q ε)^3 >= 27 B^3 / 6`, decided by exact
/// cubing.
pub fn debarre_min_mult(b_cubed: &Rational, eps_cap: &Rational) -> Result<u64> {
    if !b_cubed.is_positive() || !eps_cap.is_positive() {
        return Err(Error::invalid("Debarre bound inputs must be positive"));
    }
    let target = b_cubed * &Rational::frac(27, 6);
    let eps3 = eps_cap.pow(3);
    // Start from a float guess and correct exactly.
    let guess = (target.to_f64() / eps3.to_f64()).cbrt().floor().max(1.0);
    let mut q = BigInt::from(guess.to_u64().unwrap_or(1).max(1));
    let ok = |q: &BigInt| Rational::from_int(q.clone()).pow(3) * &eps3 >= target;
    while q > BigInt::one() && ok(&(&q - 1)) {
        q -= 1;
    }
    while !ok(&q) {
        q += 1;
    }
    q.to_u64().ok_or_else(|| Error::invalid("multiplicity bound out of range"))
}

/// Hodge index on a surface: `(B²·S)(C²) <= (B·C)²`, so `B²·S <= (B·C)² / C²`.
pub fn hodge_surface_cap(deg_bc: &Rational, c_sq_floor: &Rational) -> Result<Rational> {
    if !c_sq_floor.is_positive() {
        return Err(Error::invalid("C^2 floor must be positive"));
    }
    (deg_bc * deg_bc).checked_div(c_sq_floor)
}

/// `max_q (q ε)² / (q² - q + 2)` over integers `q >= 2`, with the maximizing
/// `q`. The ratio `q²/(q² - q + 2)` has derivative sign `q (4 - q)`, so the
/// maximum over integers is at `q = 4` and the scan can stop there.
pub fn hodge_abelian_sup(eps: &Rational) -> (u32, Rational) {
    (2..=8u32)
        .map(|q| {
            let qr = Rational::from(q as i64);
            let deg = &qr * eps;
            let c2 = &(&qr * &qr) - &qr + Rational::from(2);
            (q, hodge_surface_cap(&deg, &c2).expect("positive C^2"))
        })
        .fold((0, Rational::zero()), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// `μ <= q ε / (q - 1)` for a curve of multiplicity `q >= 2` at the origin.
pub fn seshadri_width_cap(q: u32, eps: &Rational) -> Result<Rational> {
    if q < 2 {
        return Err(Error::invalid(format!("q = {q} must be at least 2")));
    }
    let qr = Rational::from(q as i64);
    Ok(&qr * eps / Rational::from(q as i64 - 1))
}

/// `t_S <= q² ε / (q² - q + 2)` for the surface `C + C` on an abelian
/// threefold.
pub fn remark_ts_cap(q: u32, eps: &Rational) -> Result<Rational> {
    if q < 1 {
        return Err(Error::invalid("q must be positive"));
    }
    let qr = Rational::from(q as i64);
    let q2 = &qr * &qr;
    let den = &(&q2 - &qr) + &Rational::from(2);
    Ok(&q2 * eps / den)
}

/// `μ > m` is certified exactly when `m³ < B³`, since the body sits inside
/// the inverted simplex of length `μ` and has volume `B³/6`.
pub fn mu_floor_from_volume(b_cubed: &Rational, m: &Rational) -> Result<bool> {
    if !b_cubed.is_positive() {
        return Err(Error::invalid("B^3 must be positive"));
    }
    Ok(&m.pow(3) < b_cubed)
}
