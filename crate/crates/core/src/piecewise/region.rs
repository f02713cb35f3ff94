//! Nonnegativity of a bivariate polynomial `D(s, t)` over the region
//! `s ∈ I`, `t_from(s) <= t <= t_to(s)`, reduced to univariate sign checks.
//!
//! Reductions are tried in order: constant in `t`, perfect square in `t`,
//! monotonicity in `t` (minimum at one end), concavity in `t` (minimum at an
//! end), and a convex quadratic's polynomial critical curve. When none
//! applies the answer is `Unknown`, unless a grid search finds a witness.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::{isolate_roots, nonnegative_on, ParamPolynomial, Polynomial, Rational, RationalInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ConstantInT,
    PerfectSquare,
    Monotone,
    Endpoints,
    CriticalCurve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: Rational,
    pub t: Rational,
    pub value: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "value {} at s = {}, t = {}", self.value, self.s, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Holds(Method),
    Violated(Witness),
    Unknown,
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::Holds(_))
    }
}

/// The `(s, t)` region between two breakpoint curves.
#[derive(Debug, Clone, Copy)]
pub struct Region<'a> {
    pub params: &'a RationalInterval,
    pub t_from: &'a Polynomial,
    pub t_to: &'a Polynomial,
}

/// Some `x` in the interval with `g(x) < 0`, if one exists.
pub fn negative_witness(g: &Polynomial, interval: &RationalInterval) -> Option<Rational> {
    if nonnegative_on(g, interval) {
        return None;
    }
    let (lo, hi) = (interval.lo(), interval.hi());
    let mut probes = vec![lo.clone(), hi.clone()];
    let mut cuts = vec![lo.clone()];
    for root in isolate_roots(g, lo, hi).unwrap_or_default() {
        let (a, b) = root.bounds();
        cuts.push(a);
        cuts.push(b);
    }
    cuts.push(hi.clone());
    for w in cuts.windows(2) {
        probes.push(w[0].midpoint(&w[1]));
    }
    probes.into_iter().find(|x| g.eval(x).is_negative())
}

/// Decides `d >= 0` on the region.
pub fn region_nonneg(d: &ParamPolynomial, region: Region<'_>) -> Dominance {
    match reduce(d, region, 3) {
        Some(m) => Dominance::Holds(m),
        None => match grid_witness(d, region) {
            Some(w) => Dominance::Violated(w),
            None => Dominance::Unknown,
        },
    }
}

fn reduce(d: &ParamPolynomial, region: Region<'_>, depth: usize) -> Option<Method> {
    let params = region.params;
    let Some(deg) = d.degree_t() else {
        return Some(Method::ConstantInT);
    };
    if deg == 0 {
        return nonnegative_on(&d.coeff(0), params).then_some(Method::ConstantInT);
    }
    if deg == 2 {
        let (c0, c1, c2) = (d.coeff(0), d.coeff(1), d.coeff(2));
        let disc = &(&c1 * &c1) - &(&c2 * &c0).scale(&Rational::from(4));
        if disc.is_zero() && nonnegative_on(&c2, params) {
            return Some(Method::PerfectSquare);
        }
    }
    let at_from = d.at_t(region.t_from);
    let at_to = d.at_t(region.t_to);
    if depth > 0 {
        let dd = d.derivative_t();
        if reduce(&dd, region, depth - 1).is_some() {
            return nonnegative_on(&at_from, params).then_some(Method::Monotone);
        }
        if reduce(&-&dd, region, depth - 1).is_some() {
            return nonnegative_on(&at_to, params).then_some(Method::Monotone);
        }
        // Concave in t: the minimum over each t-range is at one of its ends.
        if deg >= 2 && reduce(&-&dd.derivative_t(), region, depth - 1).is_some() {
            return (nonnegative_on(&at_from, params) && nonnegative_on(&at_to, params))
                .then_some(Method::Endpoints);
        }
    }
    if deg == 2 {
        // Convex quadratic with t-independent curvature: its global minimum in
        // t sits on the polynomial curve t* = -c1 / (2 c2).
        if let Some(c2) = d.coeff(2).as_constant() {
            if c2.is_positive() {
                let (c0, c1) = (d.coeff(0), d.coeff(1));
                let min = &c0 - &(&c1 * &c1).scale(&(Rational::one() / (c2 * Rational::from(4))));
                if nonnegative_on(&min, params) {
                    return Some(Method::CriticalCurve);
                }
            }
        }
    }
    None
}

fn grid_witness(d: &ParamPolynomial, region: Region<'_>) -> Option<Witness> {
    let ends_from = negative_witness(&d.at_t(region.t_from), region.params)
        .map(|s| (region.t_from.eval(&s), s));
    let ends_to = negative_witness(&d.at_t(region.t_to), region.params)
        .map(|s| (region.t_to.eval(&s), s));
    if let Some((t, s)) = ends_from.or(ends_to) {
        let value = d.eval(&s, &t);
        return Some(Witness { s, t, value });
    }
    for s in region.params.grid(16) {
        let (a, b) = (region.t_from.eval(&s), region.t_to.eval(&s));
        if a > b {
            continue;
        }
        let ts = RationalInterval::new(a, b).expect("ordered");
        for t in ts.grid(16) {
            let value = d.eval(&s, &t);
            if value.is_negative() {
                return Some(Witness { s, t, value });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn t() -> ParamPolynomial {
        ParamPolynomial::t()
    }

    fn s() -> ParamPolynomial {
        ParamPolynomial::s()
    }

    fn lin(a: &str, b: &str) -> Polynomial {
        Polynomial::new(vec![q(a), q(b)])
    }

    #[test]
    fn perfect_square_gap() {
        // t^2/2 - (t^2 - (t - s)^2)/2 = (t - s)^2 / 2
        let d = (&t() - &s()).pow(2).scale(&q("1/2"));
        let params = RationalInterval::new(q("2"), q("3")).unwrap();
        let (from, to) = (lin("0", "1"), lin("6", "-1"));
        let region = Region { params: &params, t_from: &from, t_to: &to };
        assert_eq!(region_nonneg(&d, region), Dominance::Holds(Method::PerfectSquare));
    }

    #[test]
    fn constant_piece_under_cap() {
        // t^2/2 - 5 s^2/8 on t in [5s/4, 3s]
        let d = &t().pow(2).scale(&q("1/2")) - &s().pow(2).scale(&q("5/8"));
        let params = RationalInterval::new(q("0"), q("3/2")).unwrap();
        let (from, to) = (lin("0", "5/4"), lin("0", "3"));
        let region = Region { params: &params, t_from: &from, t_to: &to };
        assert!(region_nonneg(&d, region).holds());
    }

    #[test]
    fn violation_has_witness() {
        // t^2/2 - t^2 < 0 for t > 0
        let d = t().pow(2).scale(&q("-1/2"));
        let params = RationalInterval::new(q("1"), q("2")).unwrap();
        let (from, to) = (lin("0", "0"), lin("0", "1"));
        let region = Region { params: &params, t_from: &from, t_to: &to };
        match region_nonneg(&d, region) {
            Dominance::Violated(w) => {
                assert!(w.value.is_negative());
                assert_eq!(d.eval(&w.s, &w.t), w.value);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn convex_quadratic_critical_curve() {
        // (t - s)^2 + 1 - t/10 is convex with positive minimum; not a square,
        // not monotone on [0, 2s].
        let d = &(&(&t() - &s()).pow(2) + &ParamPolynomial::constant(q("1")))
            - &t().scale(&q("1/10"));
        let params = RationalInterval::new(q("1"), q("2")).unwrap();
        let (from, to) = (lin("0", "0"), lin("0", "2"));
        let region = Region { params: &params, t_from: &from, t_to: &to };
        assert_eq!(region_nonneg(&d, region), Dominance::Holds(Method::CriticalCurve));
    }

    #[test]
    fn negative_witness_finds_interior_dip() {
        // (x - 1)^2 - 1/100 dips below zero only near 1.
        let g = &Polynomial::from_ints(&[-1, 1]).pow(2) - &Polynomial::constant(q("1/100"));
        let i = RationalInterval::new(q("0"), q("3")).unwrap();
        let x = negative_witness(&g, &i).unwrap();
        assert!(g.eval(&x).is_negative());
        assert_eq!(negative_witness(&Polynomial::from_ints(&[1]), &i), None);
    }
}
