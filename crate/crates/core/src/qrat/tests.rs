use super::*;

fn half(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

fn q_half() -> Rat {
    half(1, 2)
}

fn c1() -> CParam {
    CParam::Finite(Rat::one())
}

#[test]
fn q_int_small_values() {
    assert!(q_int(0).is_zero());
    assert_eq!(q_int(1), Scalar::one());
    // [2] = q + q^{-1}
    let expected = Scalar::q_pow(1).add(&Scalar::q_pow(-1));
    assert_eq!(q_int(2), expected);
    // antisymmetry
    assert_eq!(q_int(-3), q_int(3).neg());
    for n in 0..=10 {
        assert_eq!(q_int(-n), q_int(n).neg());
    }
}

#[test]
fn q_int_recurrence() {
    // [n+1] = q [n] + q^{-n}, exactly
    for n in -6..=6i64 {
        let lhs = q_int(n + 1);
        let rhs = Scalar::q_pow(1).mul(&q_int(n)).add(&Scalar::q_pow(-n));
        assert_eq!(lhs, rhs, "recurrence fails at n = {}", n);
    }
}

#[test]
fn lambda_n_sq_values() {
    assert!(lambda_n_sq(0).is_zero());
    assert_eq!(lambda_n_sq(1), Scalar::one().sub(&Scalar::q_pow(2)));
    let v = lambda_n_sq(2).eval(&q_half(), &c1()).unwrap();
    assert_eq!(v, 15.0 / 16.0);
}

#[test]
fn eval_examples() {
    assert_eq!(q_int(2).eval(&q_half(), &c1()).unwrap(), 2.5);
    assert_eq!(lambda().eval(&q_half(), &c1()).unwrap(), -1.5);
    // rho = 1 + (q + q^{-1})^2 c
    assert_eq!(rho().eval(&q_half(), &c1()).unwrap(), 7.25);
}

#[test]
fn eval_rejects_c_dependence_at_infinity() {
    assert!(rho().eval(&q_half(), &CParam::Infinite).is_err());
    assert!(q_int(3).eval(&q_half(), &CParam::Infinite).is_ok());
}

#[test]
fn eval_rejects_vanishing_denominator() {
    // 1/(c - 1) at c = 1
    let x = Scalar::one().div(&Scalar::c_var().sub(&Scalar::one()));
    assert!(x.eval(&q_half(), &c1()).is_err());
}

#[test]
fn eval_is_multiplicative() {
    let a = q_int(3).mul(&lambda()).add(&Scalar::c_var());
    let b = rho().sub(&Scalar::q_pow(-2));
    let lhs = a.mul(&b).eval(&q_half(), &c1()).unwrap();
    let rhs = a.eval(&q_half(), &c1()).unwrap() * b.eval(&q_half(), &c1()).unwrap();
    assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
}

#[test]
fn q_int_positive_on_unit_interval() {
    for (p, d) in [(1i64, 2i64), (1, 3), (2, 3), (9, 10), (1, 7)] {
        let q = half(p, d);
        for n in 1..=10 {
            let v = q_int(n).eval(&q, &c1()).unwrap();
            assert!(v > 0.0, "[{}] at q={}/{} not positive", n, p, d);
        }
    }
}

#[test]
fn field_inverse_round_trip() {
    let a = lambda().mul(&Scalar::c_var()).add(&Scalar::rat(3, 7));
    assert!(a.mul(&a.inv()).is_one());
    let b = Scalar::s_pow(-3).sub(&Scalar::c_var().pow(2));
    assert!(b.div(&b).is_one());
}

#[test]
fn canonical_equality() {
    // (q^2 - 1)/(q - 1)-style reduction in s: (s^4-1)/(s^2-1) == s^2+1
    let n = Scalar::q_pow(2).sub(&Scalar::one());
    let d = Scalar::q_pow(1).sub(&Scalar::one());
    assert_eq!(n.div(&d), Scalar::q_pow(1).add(&Scalar::one()));
}

#[test]
fn scalar_display_monomials() {
    assert_eq!(Scalar::q_pow(-2).to_string(), "q^-2");
    assert_eq!(Scalar::s_pow(1).to_string(), "q^(1/2)");
    assert_eq!(Scalar::s_pow(-3).to_string(), "q^(-3/2)");
    assert_eq!(Scalar::rat(-3, 2).mul(&Scalar::c_var()).to_string(), "-3/2*c");
    assert_eq!(Scalar::one().to_string(), "1");
    assert_eq!(q_int(2).to_string(), "(1 + s^4)/(s^2)");
}

#[test]
fn half_int_round_trip() {
    let l: HalfInt = "3/2".parse().unwrap();
    assert_eq!(l.doubled(), 3);
    assert_eq!(l.to_string(), "3/2");
    let m: HalfInt = "2".parse().unwrap();
    assert_eq!(m.doubled(), 4);
    assert!(m.is_integer());
    assert_eq!((l + m).to_string(), "7/2");
    assert_eq!((m - l).doubled(), 1);
    assert!("1/3".parse::<HalfInt>().is_err());
}

#[test]
fn numeric_helpers_match_exact() {
    let q = 0.5;
    for n in -8..=8i64 {
        let exact = q_int(n).eval(&q_half(), &c1()).unwrap();
        assert!((q_int_f(n, q) - exact).abs() < 1e-12);
    }
    assert_eq!(pow_half(0.5, -2), 2.0);
    assert!((pow_half(0.5, 1) - 0.5f64.sqrt()).abs() < 1e-16);
    assert!((lambda_f(0.5) + 1.5).abs() < 1e-15);
    assert!((lambda_n_f(2, 0.5) - (15.0f64 / 16.0).sqrt()).abs() < 1e-15);
}
