//! Exact scalar arithmetic for the coefficient field Q(s, c), where s = q^{1/2},
//! plus q-number utilities, half-integer labels and the numeric evaluation tier.
//!
//! Provides:
//! - [`Scalar`]: canonical rational function in s and c (gcd-reduced, monic denominator)
//! - [`q_int`]: the q-integer [n] = (q^n - q^{-n})/(q - q^{-1}) as a [`Scalar`]
//! - [`lambda_n_sq`]: 1 - q^{2n}, the square of lambda_n
//! - [`lambda`], [`rho`]: the abbreviations q - q^{-1} and 1 + (q + q^{-1})^2 c
//! - [`Scalar::eval`]: numeric evaluation at rational q in (0,1) and c in [0,inf)
//! - [`HalfInt`]: half-integers stored as doubled integers (spin labels l, j)
//! - `*_f` helpers: the same q-quantities directly in f64

mod poly;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use poly::{Poly2, Rat};

/// The deformation parameter c: a nonnegative rational or the infinite sphere.
#[derive(Clone, PartialEq, Debug)]
pub enum CParam {
    Finite(Rat),
    Infinite,
}

impl CParam {
    pub fn finite_f64(&self) -> Option<f64> {
        match self {
            CParam::Finite(r) => r.to_f64(),
            CParam::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, CParam::Infinite)
    }
}

impl fmt::Display for CParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CParam::Finite(r) => write!(f, "{}", r),
            CParam::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for CParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<CParam> {
        if s == "inf" || s == "infinity" {
            return Ok(CParam::Infinite);
        }
        let r = parse_rat(s)?;
        if r.is_negative() {
            return Err(Error::Param(format!("c must be >= 0, got {}", s)));
        }
        Ok(CParam::Finite(r))
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    BigRational::from_str(s).map_err(|e| Error::Parse(format!("bad rational '{}': {}", s, e)))
}

/// Numeric values are plain 64-bit floats; extension to higher precision is a
/// configuration choice deliberately not taken here.
pub type NumericScalar = f64;

/// Exact rational function in s = q^{1/2} and c.
///
/// Canonical form: gcd(num, den) = 1 and the denominator's lex-leading rational
/// coefficient is +1, so equality is plain structural equality.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly2,
    den: Poly2,
}

impl Scalar {
    fn make(num: Poly2, den: Poly2) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar { num: Poly2::zero(), den: Poly2::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lead = den.lead_rat().expect("nonzero denominator").clone();
        let inv = lead.recip();
        num = num.scale(&inv);
        den = den.scale(&inv);
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar { num: Poly2::zero(), den: Poly2::one() }
    }

    pub fn one() -> Scalar {
        Scalar { num: Poly2::one(), den: Poly2::one() }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_rat(r: Rat) -> Scalar {
        Scalar { num: Poly2::constant(r), den: Poly2::one() }
    }

    /// The rational p/q as a scalar.
    pub fn rat(p: i64, q: i64) -> Scalar {
        Scalar::from_rat(Rat::new(p.into(), q.into()))
    }

    /// s^k for any integer k (negative powers go to the denominator).
    pub fn s_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar { num: Poly2::monomial(Rat::one(), k as usize, 0), den: Poly2::one() }
        } else {
            Scalar { num: Poly2::one(), den: Poly2::monomial(Rat::one(), (-k) as usize, 0) }
        }
    }

    /// q^k = s^{2k}.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::s_pow(2 * k)
    }

    /// The parameter c as a scalar.
    pub fn c_var() -> Scalar {
        Scalar { num: Poly2::monomial(Rat::one(), 0, 1), den: Poly2::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    pub fn depends_on_c(&self) -> bool {
        self.num.depends_on_c() || self.den.depends_on_c()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar::make(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        assert!(!other.is_zero(), "division by zero scalar");
        Scalar::make(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Scalar {
        Scalar::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Scalar {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate at s = sqrt(q_value), c = c_value.
    ///
    /// Errors when the denominator vanishes at the sample point, or when the
    /// scalar depends on c while c is the infinity flag.
    pub fn eval(&self, q_value: &Rat, c_value: &CParam) -> Result<NumericScalar> {
        let c = match c_value {
            CParam::Finite(c) => c.clone(),
            CParam::Infinite => {
                if self.depends_on_c() {
                    return Err(Error::Param(
                        "scalar depends on c but c is infinite".into(),
                    ));
                }
                Rat::zero()
            }
        };
        if self.den.vanishes_at(q_value, &c) {
            return Err(Error::Eval(format!(
                "denominator vanishes at q = {}, c = {}",
                q_value, c
            )));
        }
        Ok(self.num.eval_f64(q_value, &c) / self.den.eval_f64(q_value, &c))
    }

    /// A monomial view (rational coefficient, s-exponent, c-exponent), if the
    /// scalar is a single monomial over a monomial.
    fn as_monomial(&self) -> Option<(Rat, i64, i64)> {
        fn mono(p: &Poly2) -> Option<(Rat, i64, i64)> {
            let i = p.deg_s()?;
            let mut found = None;
            // a monomial has exactly one nonzero coefficient, at the lex lead
            let mut count = 0;
            for si in 0..=i {
                let row = p.row(si);
                for (cj, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        count += 1;
                        found = Some((x.clone(), si as i64, cj as i64));
                    }
                }
            }
            if count == 1 {
                found
            } else {
                None
            }
        }
        let (rn, sn, cn) = mono(&self.num)?;
        let (rd, sd, cd) = mono(&self.den)?;
        Some((rn / rd, sn - sd, cn - cd))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some((r, se, ce)) = self.as_monomial() {
            return write!(f, "{}", monomial_string(&r, se, ce));
        }
        if self.den == Poly2::one() {
            write!(f, "{}", poly_string(&self.num))
        } else {
            write!(f, "({})/({})", poly_string(&self.num), poly_string(&self.den))
        }
    }
}

/// Render a polynomial as a sum of `r s^i c^j` terms.
fn poly_string(p: &Poly2) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = vec![];
    for i in 0..=p.deg_s().unwrap() {
        for (j, x) in p.row(i).iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut factors = vec![];
            if !x.is_one() || (i == 0 && j == 0) {
                factors.push(format!("{}", x));
            }
            if i > 0 {
                factors.push(if i == 1 { "s".into() } else { format!("s^{}", i) });
            }
            if j > 0 {
                factors.push(if j == 1 { "c".into() } else { format!("c^{}", j) });
            }
            parts.push(factors.join("*"));
        }
    }
    parts.join(" + ")
}

/// Monomial coefficient renderer used by the element printer: q-powers are
/// shown as `q^k` for integer k and `q^(k/2)` for half-integer exponents.
fn monomial_string(r: &Rat, s_exp: i64, c_exp: i64) -> String {
    let mut factors = vec![];
    let abs = r.abs();
    if !abs.is_one() {
        factors.push(format!("{}", abs));
    }
    if s_exp != 0 {
        if s_exp % 2 == 0 {
            let k = s_exp / 2;
            factors.push(if k == 1 { "q".into() } else { format!("q^{}", k) });
        } else {
            factors.push(format!("q^({}/2)", s_exp));
        }
    }
    if c_exp != 0 {
        factors.push(if c_exp == 1 { "c".into() } else { format!("c^{}", c_exp) });
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    let body = factors.join("*");
    if r.is_negative() {
        format!("-{}", body)
    } else {
        body
    }
}

// ---- q-number utilities ----

/// The q-integer [n] = (q^n - q^{-n})/(q - q^{-1}) as an exact scalar.
pub fn q_int(n: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let num = Scalar::q_pow(n).sub(&Scalar::q_pow(-n));
    num.div(&lambda())
}

/// lambda = q - q^{-1} (negative on (0,1), kept with the paper's sign).
pub fn lambda() -> Scalar {
    Scalar::q_pow(1).sub(&Scalar::q_pow(-1))
}

/// lambda_n^2 = 1 - q^{2n}; square roots are taken only in the numeric tier.
pub fn lambda_n_sq(n: i64) -> Scalar {
    assert!(n >= 0, "lambda_n_sq needs n >= 0");
    Scalar::one().sub(&Scalar::q_pow(2 * n))
}

/// rho = 1 + (q + q^{-1})^2 c.
pub fn rho() -> Scalar {
    let b = Scalar::q_pow(1).add(&Scalar::q_pow(-1));
    Scalar::one().add(&b.mul(&b).mul(&Scalar::c_var()))
}

// ---- numeric tier ----

/// [n] at a concrete q.
pub fn q_int_f(n: i64, q: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    (q.powi(n as i32) - q.powi(-n as i32)) / (q - 1.0 / q)
}

/// q^{d/2} for a doubled exponent d (exact powi on the even branch).
pub fn pow_half(q: f64, doubled: i64) -> f64 {
    if doubled % 2 == 0 {
        q.powi((doubled / 2) as i32)
    } else {
        q.sqrt().powi(doubled as i32)
    }
}

/// lambda_n = (1 - q^{2n})^{1/2}.
pub fn lambda_n_f(n: i64, q: f64) -> f64 {
    (1.0 - q.powi(2 * n as i32)).max(0.0).sqrt()
}

/// lambda = q - q^{-1} at a concrete q.
pub fn lambda_f(q: f64) -> f64 {
    q - 1.0 / q
}

// ---- half-integers ----

/// A half-integer stored as its double, so spin labels stay exact.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub fn from_doubled(doubled: i64) -> HalfInt {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> HalfInt {
        HalfInt { doubled: 2 * n }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn as_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }

    pub fn neg(self) -> HalfInt {
        HalfInt { doubled: -self.doubled }
    }

    /// self + n for an integer n.
    pub fn plus_int(self, n: i64) -> HalfInt {
        HalfInt { doubled: self.doubled + 2 * n }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled + rhs.doubled }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { doubled: self.doubled - rhs.doubled }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<HalfInt> {
        let r = parse_rat(s)?;
        let doubled = r * BigRational::from_integer(2.into());
        if !doubled.is_integer() {
            return Err(Error::Parse(format!("'{}' is not a half-integer", s)));
        }
        doubled
            .to_integer()
            .to_i64()
            .map(HalfInt::from_doubled)
            .ok_or_else(|| Error::Parse(format!("half-integer '{}' out of range", s)))
    }
}

#[cfg(test)]
mod tests;
