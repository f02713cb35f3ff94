use nokcert::bounds::*;
use nokcert::exact::{Polynomial, Rational, RationalInterval};
use nokcert::slice_model::{surface_collapse_area, SurfaceEntry};
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn lin(a: &str, b: &str) -> Polynomial {
    Polynomial::new(vec![q(a), q(b)])
}

/// Smallest q with q·eps >= 3·(B³/6)^(1/3), by a float scan.
fn debarre_oracle(b3: f64, eps: f64) -> u64 {
    let target = 3.0 * (b3 / 6.0).cbrt();
    (1..).find(|&k| k as f64 * eps >= target - 1e-12).unwrap()
}

#[test]
fn debarre_values() {
    assert_eq!(debarre_min_mult(&q("59"), &q("3/2")).unwrap(), 5);
    assert_eq!(debarre_min_mult(&q("59"), &q("2")).unwrap(), 4);
    assert_eq!(debarre_oracle(59.0, 1.5), 5);
    assert_eq!(debarre_oracle(59.0, 2.0), 4);
}

#[test]
fn adjunction_caps() {
    let t = Polynomial::x();
    assert_eq!(adjunction_eps_cap(&t, &q("2")).unwrap(), lin("6", "-1"));
    assert_eq!(adjunction_eps_cap(&t, &q("5")).unwrap(), lin("15", "-4"));
}

#[test]
fn collapse_times() {
    let s1 = SurfaceEntry { m: 2, t1: lin("6", "-1"), m0: lin("2", "-1/3") };
    let s2 = SurfaceEntry { m: 2, t1: lin("0", "2"), m0: Polynomial::zero() };
    let both = surface_collapse_area(&[s1.clone(), s2]).unwrap().collapse_time().unwrap();
    assert_eq!(both, lin("24/9", "8/9"));
    assert_eq!(surface_collapse_area(&[s1.clone()]).unwrap().collapse_time().unwrap(), lin("8", "-4/3"));
    assert_eq!(surface_collapse_area(&[s1]).unwrap().collapse_time().unwrap().eval(&q("2")), q("16/3"));
    let cor = SurfaceEntry { m: 2, t1: Polynomial::x(), m0: lin("0", "1/3") };
    assert_eq!(surface_collapse_area(&[cor]).unwrap().collapse_time().unwrap(), lin("0", "4/3"));
}

#[test]
fn hodge_chain() {
    let (arg, sup) = hodge_abelian_sup(&q("3/2"));
    assert_eq!(arg, 4);
    assert_eq!(sup, q("18/7"));
    assert_eq!(q("3/2").pow(2) * q("8/7"), sup);
    assert!(sup < q("4"));
}

#[test]
fn mu_floor() {
    for b3 in ["59", "40"] {
        assert!(mu_floor_from_volume(&q(b3), &q("3")).unwrap());
    }
}

#[test]
fn main_theorem_gates() {
    let g = GeometricGates::main_theorem();
    assert_eq!(g.b_cubed, q("59"));
    assert!(GeometricGates::new(q("0"), q("1"), q("1")).is_err());
}

proptest! {
    #[test]
    fn debarre_is_minimal(b3n in 1i64..500, en in 1i64..60, ed in 1i64..20) {
        let b3 = Rational::from(b3n);
        let eps = Rational::frac(en, ed);
        let k = debarre_min_mult(&b3, &eps).unwrap();
        let target = &b3 * &q("27/6");
        prop_assert!(Rational::from(k as i64).pow(3) * eps.pow(3) >= target);
        if k > 1 {
            prop_assert!(Rational::from(k as i64 - 1).pow(3) * eps.pow(3) < target);
        }
    }

    #[test]
    fn seshadri_width_decreases_in_q(k in 2u32..20, en in 1i64..40, ed in 1i64..10) {
        let eps = Rational::frac(en, ed);
        prop_assert!(seshadri_width_cap(k + 1, &eps).unwrap() < seshadri_width_cap(k, &eps).unwrap());
        prop_assert!(remark_ts_cap(k, &eps).unwrap() < seshadri_width_cap(k, &eps).unwrap());
        let qk = Rational::from(k as i64);
        let chain = hodge_surface_cap(&(&qk * &eps), &(&(&qk * &qk) - &qk)).unwrap() / eps.clone();
        prop_assert_eq!(chain, seshadri_width_cap(k, &eps).unwrap());
    }

    #[test]
    fn propagation_is_monotone(base in 0i64..5, start in 0i64..5, dt in 0i64..20, extra in 1i64..10) {
        let params = RationalInterval::new(q("1"), q("2")).unwrap();
        let b = LinearBound::unit(Polynomial::constant(Rational::from(start)), Polynomial::constant(Rational::from(base)));
        let t1 = Polynomial::constant(Rational::from(start + dt));
        let t2 = Polynomial::constant(Rational::from(start + dt + extra));
        let m1 = slope_propagate(&b, &t1, &params).unwrap().eval(&q("1"));
        let m2 = slope_propagate(&b, &t2, &params).unwrap().eval(&q("1"));
        prop_assert_eq!(&m2 - &m1, Rational::from(extra));
    }

    #[test]
    fn adjunction_gate_monotone_in_t(c in 1i64..=100, tn in 0i64..100) {
        let c = Rational::frac(c, 100);
        let eps = q("1");
        let t = &q("3") + &Rational::frac(tn, 10);
        let bigger = &t + &q("1/10");
        if adjunction_success_gate(&t, &c, &eps, 3).unwrap() {
            prop_assert!(adjunction_success_gate(&bigger, &c, &eps, 3).unwrap());
        }
    }
}
