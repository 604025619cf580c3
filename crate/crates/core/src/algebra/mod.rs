//! Free *-algebra over [`Scalar`](crate::qrat::Scalar) on the paper's generator
//! alphabets, the catalog of algebra presentations as oriented rewrite systems,
//! normal-form reduction, and empirical local-confluence checking.
//!
//! Words are stored with collapsed powers: adjacent letters with the same base
//! generator merge into a signed exponent, so `K K^-1` cancels on contact and
//! normal monomials carry `K^e` with integer e.

mod confluence;
mod parse;
mod presentation;

use std::collections::BTreeMap;
use std::fmt;

use crate::qrat::Scalar;

pub use confluence::{check_local_confluence, ConfluenceReport, Discrepancy};
pub use parse::element_from_str;
pub use presentation::{make_presentation, PresId, Presentation, Regime, Relation, Rule};

/// Generator symbols used across all presentations.  `BStar`/`XStar` print as
/// `B*`/`X*`; `Ep`, `Fp`, `Kp` are the lowercase generators e, f, k of the
/// primed enveloping algebra.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    A,
    B,
    BStar,
    E,
    F,
    K,
    X,
    XStar,
    Y,
    Ep,
    Fp,
    Kp,
}

impl Gen {
    pub fn symbol(self) -> &'static str {
        match self {
            Gen::A => "A",
            Gen::B => "B",
            Gen::BStar => "B*",
            Gen::E => "E",
            Gen::F => "F",
            Gen::K => "K",
            Gen::X => "X",
            Gen::XStar => "X*",
            Gen::Y => "Y",
            Gen::Ep => "e",
            Gen::Fp => "f",
            Gen::Kp => "k",
        }
    }

    pub fn inverse_symbol(self) -> String {
        format!("{}^-1", self.symbol())
    }

    pub fn from_symbol(s: &str) -> Option<Gen> {
        Some(match s {
            "A" => Gen::A,
            "B" => Gen::B,
            "B*" => Gen::BStar,
            "E" => Gen::E,
            "F" => Gen::F,
            "K" => Gen::K,
            "X" => Gen::X,
            "X*" => Gen::XStar,
            "Y" => Gen::Y,
            "e" => Gen::Ep,
            "f" => Gen::Fp,
            "k" => Gen::Kp,
            _ => return None,
        })
    }
}

/// A generator with a signed exponent.  Non-invertible generators only ever
/// carry positive exponents inside words of a presentation's alphabet.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: Gen, exp: i64) -> Letter {
        Letter { gen, exp }
    }
}

/// A canonical word: no zero exponents, no adjacent letters sharing a base
/// generator (they merge on construction).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

fn push_letter(out: &mut Vec<Letter>, mut l: Letter) {
    if l.exp == 0 {
        return;
    }
    while let Some(last) = out.last() {
        if last.gen == l.gen {
            l.exp += last.exp;
            out.pop();
            if l.exp == 0 {
                return;
            }
        } else {
            break;
        }
    }
    out.push(l);
}

impl Word {
    pub fn empty() -> Word {
        Word(vec![])
    }

    pub fn canon(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out = vec![];
        for l in letters {
            push_letter(&mut out, l);
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::canon(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Total unit-letter length (sum of |exp|).
    pub fn unit_len(&self) -> usize {
        self.0.iter().map(|l| l.exp.unsigned_abs() as usize).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.exp == 1 {
                    l.gen.symbol().to_string()
                } else {
                    format!("{}^{}", l.gen.symbol(), l.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Finite linear combination of words with nonzero [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> AlgebraElement {
        AlgebraElement::from_term(s, Word::empty())
    }

    pub fn from_term(coef: Scalar, word: Word) -> AlgebraElement {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(word, coef);
        }
        AlgebraElement { terms }
    }

    pub fn gen(g: Gen) -> AlgebraElement {
        AlgebraElement::word(&[(g, 1)])
    }

    pub fn word(spec: &[(Gen, i64)]) -> AlgebraElement {
        AlgebraElement::from_term(
            Scalar::one(),
            Word::canon(spec.iter().map(|&(g, e)| Letter::new(g, e))),
        )
    }

    pub fn term(coef: Scalar, spec: &[(Gen, i64)]) -> AlgebraElement {
        AlgebraElement::from_term(
            coef,
            Word::canon(spec.iter().map(|&(g, e)| Letter::new(g, e))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, coef: &Scalar) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(coef);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms() {
            let coef = c.to_string();
            let (sign, coef_abs) = match coef.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coef),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if w.is_empty() {
                write!(f, "{}", coef_abs)?;
            } else if coef_abs == "1" {
                write!(f, "{}", w)?;
            } else {
                write!(f, "{} * {}", coef_abs, w)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::add(self, rhs)
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::mul(self, rhs)
    }
}
