//! Dense bivariate polynomials over the rationals in the variables `s` and `c`.
//!
//! These are the raw numerators/denominators behind [`crate::qrat::Scalar`].
//! Degrees stay small (relation coefficients and short products), so a dense
//! representation with classical primitive-PRS gcd is plenty.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// `coeffs[i][j]` is the coefficient of `s^i c^j`.  Trailing zero rows and
/// trailing zeros within each row are trimmed, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Poly2 {
    coeffs: Vec<Vec<Rat>>,
}

fn trim_row(row: &mut Vec<Rat>) {
    while row.last().map_or(false, |x| x.is_zero()) {
        row.pop();
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly2::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        if r.is_zero() {
            Poly2::zero()
        } else {
            Poly2 { coeffs: vec![vec![r]] }
        }
    }

    /// The monomial `r * s^i c^j`.
    pub fn monomial(r: Rat, i: usize, j: usize) -> Self {
        if r.is_zero() {
            return Poly2::zero();
        }
        let mut coeffs = vec![vec![]; i + 1];
        let mut row = vec![Rat::zero(); j + 1];
        row[j] = r;
        coeffs[i] = row;
        Poly2 { coeffs }
    }

    fn from_rows(mut coeffs: Vec<Vec<Rat>>) -> Self {
        for row in coeffs.iter_mut() {
            trim_row(row);
        }
        while coeffs.last().map_or(false, |row| row.is_empty()) {
            coeffs.pop();
        }
        Poly2 { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `s`; zero polynomial reports `None`.
    pub fn deg_s(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn depends_on_c(&self) -> bool {
        self.coeffs.iter().any(|row| row.len() > 1)
    }

    /// The coefficients of `s^i` as a polynomial in `c` (empty slice if absent).
    pub fn row(&self, i: usize) -> &[Rat] {
        self.coeffs.get(i).map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Leading coefficient as a polynomial in `c` (coefficient of the top `s` power).
    fn lead_row(&self) -> &[Rat] {
        self.coeffs.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Rational coefficient of the lex-leading monomial (`s` degree first, then `c` degree).
    pub fn lead_rat(&self) -> Option<&Rat> {
        self.coeffs.last().and_then(|row| row.last())
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).map(|r| r.as_slice()).unwrap_or(&[]);
            let b = other.coeffs.get(i).map(|r| r.as_slice()).unwrap_or(&[]);
            let m = a.len().max(b.len());
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let x = a.get(j).cloned().unwrap_or_else(Rat::zero)
                    + b.get(j).cloned().unwrap_or_else(Rat::zero);
                row.push(x);
            }
            coeffs.push(row);
        }
        Poly2::from_rows(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let ds = self.coeffs.len() + other.coeffs.len() - 1;
        let dc = self.coeffs.iter().map(|r| r.len()).max().unwrap()
            + other.coeffs.iter().map(|r| r.len()).max().unwrap();
        let mut coeffs = vec![vec![Rat::zero(); dc]; ds];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, x1) in r1.iter().enumerate() {
                if x1.is_zero() {
                    continue;
                }
                for (i2, r2) in other.coeffs.iter().enumerate() {
                    for (j2, x2) in r2.iter().enumerate() {
                        if !x2.is_zero() {
                            coeffs[i1 + i2][j1 + j2] += x1 * x2;
                        }
                    }
                }
            }
        }
        Poly2::from_rows(coeffs)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|x| x * r).collect())
                .collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift_s(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![vec![]; k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly2 { coeffs }
    }

    /// Split `P(s,c)` at `s = sqrt(q)` into exact rational even/odd parts:
    /// `P = E(q,c) + sqrt(q) * O(q,c)`.
    pub fn eval_even_odd(&self, q: &Rat, c: &Rat) -> (Rat, Rat) {
        let mut even = Rat::zero();
        let mut odd = Rat::zero();
        let mut q_pow = Rat::one();
        let mut idx = 0usize;
        for pair in self.coeffs.chunks(2) {
            // rows idx (even) and idx+1 (odd) share the factor q^{idx/2}
            let e = eval_row(&pair[0], c);
            even += &q_pow * e;
            if let Some(row) = pair.get(1) {
                let o = eval_row(row, c);
                odd += &q_pow * o;
            }
            q_pow *= q;
            idx += 2;
        }
        let _ = idx;
        (even, odd)
    }

    /// Evaluate at `s = sqrt(q)`, `c` in double precision via the exact split.
    pub fn eval_f64(&self, q: &Rat, c: &Rat) -> f64 {
        let (e, o) = self.eval_even_odd(q, c);
        let sq = q.to_f64().unwrap_or(f64::NAN).sqrt();
        e.to_f64().unwrap_or(f64::NAN) + sq * o.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact zero test at `s = sqrt(q)`, `c` (rational `q > 0`).
    pub fn vanishes_at(&self, q: &Rat, c: &Rat) -> bool {
        let (e, o) = self.eval_even_odd(q, c);
        if e.is_zero() && o.is_zero() {
            return true;
        }
        // e + sqrt(q) o = 0  <=>  e, o opposite signs and e^2 = q o^2
        if e.is_zero() || o.is_zero() || e.signum() == o.signum() {
            return false;
        }
        &e * &e == q * &o * &o
    }
}

fn eval_row(row: &[Rat], c: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for x in row.iter().rev() {
        acc = acc * c + x;
    }
    acc
}

// ---- univariate helpers over Q[c] (dense in c) ----

fn uc_deg(a: &[Rat]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn uc_trim(mut a: Vec<Rat>) -> Vec<Rat> {
    trim_row(&mut a);
    a
}

fn uc_scale(a: &[Rat], r: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * r).collect()
}

fn uc_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    uc_trim(out)
}

fn uc_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let m = a.len().max(b.len());
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        out.push(
            a.get(i).cloned().unwrap_or_else(Rat::zero)
                - b.get(i).cloned().unwrap_or_else(Rat::zero),
        );
    }
    uc_trim(out)
}

/// Remainder of `a / b` over the field Q (b nonzero).
fn uc_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let db = uc_deg(b).expect("division by zero polynomial in c");
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    while uc_deg(&r).map_or(false, |dr| dr >= db) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        let shifted: Vec<Rat> = std::iter::repeat(Rat::zero())
            .take(dr - db)
            .chain(uc_scale(b, &f))
            .collect();
        r = uc_sub(&r, &shifted);
    }
    r
}

/// Exact quotient of `a / b`, panicking if the division is not exact.
fn uc_div_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() {
        return vec![];
    }
    let db = uc_deg(b).expect("division by zero polynomial in c");
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); a.len()];
    while uc_deg(&r).map_or(false, |dr| dr >= db) {
        let dr = r.len() - 1;
        let f = r.last().unwrap() / &lb;
        q[dr - db] = f.clone();
        let shifted: Vec<Rat> = std::iter::repeat(Rat::zero())
            .take(dr - db)
            .chain(uc_scale(b, &f))
            .collect();
        r = uc_sub(&r, &shifted);
    }
    assert!(r.is_empty(), "inexact division in Q[c]");
    uc_trim(q)
}

/// Monic gcd in Q[c].
fn uc_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = uc_trim(a.to_vec());
    let mut b = uc_trim(b.to_vec());
    while !b.is_empty() {
        let r = uc_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let l = a.last().unwrap().clone();
    uc_scale(&a, &l.recip())
}

impl Poly2 {
    /// Content in Q[c]: monic gcd of the `s`-coefficients.
    fn content_c(&self) -> Vec<Rat> {
        let mut g: Vec<Rat> = vec![];
        for row in &self.coeffs {
            if row.is_empty() {
                continue;
            }
            g = uc_gcd(&g, row);
            if uc_deg(&g) == Some(0) {
                break;
            }
        }
        g
    }

    fn divide_rows(&self, d: &[Rat]) -> Poly2 {
        Poly2::from_rows(
            self.coeffs
                .iter()
                .map(|row| {
                    if row.is_empty() {
                        vec![]
                    } else {
                        uc_div_exact(row, d)
                    }
                })
                .collect(),
        )
    }

    fn primitive_part(&self) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let c = self.content_c();
        self.divide_rows(&c)
    }

    /// One pseudo-reduction pass of `self` by `b` viewed in (Q[c])[s].
    fn prem_s(&self, b: &Poly2) -> Poly2 {
        let db = b.deg_s().expect("pseudo division by zero");
        let lb = b.lead_row().to_vec();
        let mut r = self.clone();
        while r.deg_s().map_or(false, |dr| dr >= db) {
            let dr = r.deg_s().unwrap();
            let lr = r.lead_row().to_vec();
            // r := lb*r - lr*s^{dr-db}*b
            let t1 = r.mul_row(&lb);
            let t2 = b.mul_row(&lr).shift_s(dr - db);
            r = t1.sub(&t2);
            if r.deg_s() == Some(dr) {
                // degree must strictly drop; the subtraction cancels the lead
                unreachable!("pseudo remainder failed to reduce degree");
            }
        }
        r
    }

    fn mul_row(&self, row: &[Rat]) -> Poly2 {
        Poly2::from_rows(self.coeffs.iter().map(|r| uc_mul(r, row)).collect())
    }

    /// Gcd in Q[s,c], normalized so the lex-leading rational coefficient is 1.
    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let g = self.gcd_raw(other);
        g.normalize_lead()
    }

    fn gcd_raw(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ca = self.content_c();
        let cb = other.content_c();
        let cg = uc_gcd(&ca, &cb);
        let mut a = self.divide_rows(&ca);
        let mut b = other.divide_rows(&cb);
        if a.deg_s() < b.deg_s() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem_s(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().mul_row(&cg)
    }

    fn normalize_lead(&self) -> Poly2 {
        match self.lead_rat() {
            None => Poly2::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Exact division, panicking on inexactness (used after gcd).
    pub fn div_exact(&self, d: &Poly2) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let dd = d.deg_s().expect("division by zero polynomial");
        let ld = d.lead_row().to_vec();
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some(dr) = r.deg_s() {
            assert!(dr >= dd, "inexact division in Q[s,c]");
            let lq = uc_div_exact(r.lead_row(), &ld);
            let qt = Poly2::from_rows(vec![lq]).shift_s(dr - dd);
            r = r.sub(&qt.mul(d));
            q = q.add(&qt);
            if r.is_zero() {
                break;
            }
            assert!(r.deg_s().unwrap() < dr, "division failed to reduce degree");
        }
        q
    }
}
