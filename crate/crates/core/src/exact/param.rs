use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Polynomial, Rational};

/// Polynomial in the slice variable `t` whose coefficients are polynomials in
/// a single parameter `s`. `coeffs[j]` multiplies `t^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPolynomial {
    coeffs: Vec<Polynomial>,
}

impl ParamPolynomial {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        ParamPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ParamPolynomial { coeffs: Vec::new() }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        ParamPolynomial::new(vec![Polynomial::zero(), Polynomial::one()])
    }

    /// The parameter `s`, constant in `t`.
    pub fn s() -> Self {
        ParamPolynomial::from_param(Polynomial::x())
    }

    /// Embeds a polynomial in `s` as a `t`-constant.
    pub fn from_param(p: Polynomial) -> Self {
        ParamPolynomial::new(vec![p])
    }

    pub fn constant(c: Rational) -> Self {
        ParamPolynomial::from_param(Polynomial::constant(c))
    }

    /// `t - p(s)`.
    pub fn t_minus(p: &Polynomial) -> Self {
        &ParamPolynomial::t() - &ParamPolynomial::from_param(p.clone())
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Polynomial {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for zero.
    pub fn degree_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_s(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Polynomial::degree).max()
    }

    /// Returns the `s`-polynomial when the expression does not involve `t`.
    pub fn as_param(&self) -> Option<Polynomial> {
        match self.coeffs.len() {
            0 => Some(Polynomial::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ParamPolynomial::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = ParamPolynomial::constant(Rational::one());
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Fixes `s`, leaving a polynomial in `t`.
    pub fn at_param(&self, s: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|p| p.eval(s)).collect())
    }

    /// Substitutes `t = tp(s)`, leaving a polynomial in `s`.
    pub fn at_t(&self, tp: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * tp) + c;
        }
        acc
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        self.at_param(s).eval(t)
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, p| acc * t + p.eval_f64(s))
    }

    pub fn derivative_t(&self) -> Self {
        ParamPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&Rational::from(j as i64)))
                .collect(),
        )
    }

    /// Antiderivative in `t` with zero constant term.
    pub fn antiderivative_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Polynomial::zero());
        for (j, p) in self.coeffs.iter().enumerate() {
            coeffs.push(p.scale(&Rational::frac(1, j as i64 + 1)));
        }
        ParamPolynomial::new(coeffs)
    }

    /// `∫_{lower(s)}^{upper(s)} f(s, t) dt` as a polynomial in `s`.
    pub fn definite_integral(&self, lower: &Polynomial, upper: &Polynomial) -> Polynomial {
        let anti = self.antiderivative_t();
        &anti.at_t(upper) - &anti.at_t(lower)
    }

    /// Swaps the roles of `t` and `s`: the result has coefficients in `t`
    /// indexed by powers of `s`.
    pub fn transpose(&self) -> Self {
        let ds = self.degree_s().map_or(0, |d| d + 1);
        ParamPolynomial::new(
            (0..ds)
                .map(|i| Polynomial::new(self.coeffs.iter().map(|p| p.coeff(i)).collect()))
                .collect(),
        )
    }

    /// Renders in the scenario expression syntax with the given names.
    pub fn display_with(&self, t_name: &str, s_name: &str) -> String {
        let mut terms: Vec<(Rational, usize, usize)> = Vec::new();
        for (j, p) in self.coeffs.iter().enumerate().rev() {
            for (i, c) in p.coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    terms.push((c.clone(), i, j));
                }
            }
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (c, i, j) in terms {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if mag != Rational::one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [(s_name, i), (t_name, j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t", "s"))
    }
}

impl fmt::Debug for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPolynomial({self})")
    }
}

impl From<Polynomial> for ParamPolynomial {
    fn from(p: Polynomial) -> Self {
        ParamPolynomial::from_param(p)
    }
}

impl Add for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn add(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPolynomial::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn sub(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPolynomial::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl Mul for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn mul(self, rhs: &ParamPolynomial) -> ParamPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ParamPolynomial::zero();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ParamPolynomial::new(out)
    }
}

impl Neg for &ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        ParamPolynomial::new(self.coeffs.iter().map(|p| -p).collect())
    }
}

macro_rules! owned_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait for ParamPolynomial {
            type Output = ParamPolynomial;
            fn $method(self, rhs: ParamPolynomial) -> ParamPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for ParamPolynomial {
    type Output = ParamPolynomial;
    fn neg(self) -> ParamPolynomial {
        -&self
    }
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

    fn c(x: &str) -> ParamPolynomial {
        ParamPolynomial::constant(q(x))
    }

    #[test]
    fn simplex_slice_integral() {
        let cap = t().pow(2).scale(&q("1/2"));
        let vol = cap.definite_integral(&Polynomial::zero(), &Polynomial::x());
        assert_eq!(vol, Polynomial::monomial(q("1/6"), 3));
    }

    #[test]
    fn case_31_middle_piece() {
        // (t^2 - 5(t - s)^2)/2 over [s, 5s/4] -> 7/48 s^3
        let f = (&t().pow(2) - &(&t() - &s()).pow(2).scale(&q("5"))).scale(&q("1/2"));
        let vol = f.definite_integral(&Polynomial::x(), &Polynomial::monomial(q("5/4"), 1));
        assert_eq!(vol, Polynomial::monomial(q("7/48"), 3));
    }

    #[test]
    fn case_32_tail_piece() {
        // ((24+8s)/3 - 3t)^2/2 over [6-s, (24+8s)/9] -> (17s-30)^3/486
        let w = &(&c("8") + &s().scale(&q("8/3"))) - &t().scale(&q("3"));
        let f = w.pow(2).scale(&q("1/2"));
        let lower = Polynomial::from_ints(&[6, -1]);
        let upper = Polynomial::new(vec![q("24/9"), q("8/9")]);
        let vol = f.definite_integral(&lower, &upper);
        let expect = Polynomial::from_ints(&[-30, 17]).pow(3).scale(&q("1/486"));
        assert_eq!(vol, expect);
        assert_eq!(vol.eval(&q("2")), q("32/243"));
    }

    #[test]
    fn substitution_commutes_with_ring_ops() {
        let a = &t().pow(2) - &s().scale(&q("3"));
        let b = &(&t() + &s()).pow(3) + &c("1/7");
        let x = q("-5/3");
        assert_eq!((&a + &b).at_param(&x), &a.at_param(&x) + &b.at_param(&x));
        assert_eq!((&a * &b).at_param(&x), &a.at_param(&x) * &b.at_param(&x));
    }

    #[test]
    fn display_and_transpose() {
        let f = &(&t().pow(2) - &(&t() * &s()).scale(&q("2"))) + &c("-1/2");
        assert_eq!(f.display_with("t", "eps"), "t^2 - 2*eps*t - 1/2");
        assert_eq!(f.transpose().transpose(), f);
        assert_eq!(f.transpose().eval(&q("3"), &q("5")), f.eval(&q("5"), &q("3")));
    }
}
