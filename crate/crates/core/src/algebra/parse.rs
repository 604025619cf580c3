//! Textual element syntax for the CLI: whitespace-separated generator names
//! with `^` integer powers and rational/q-power coefficient prefixes, e.g.
//! `q^(1/2) * E A`, `B*^2 K^-1`, `3/4 * A B - c * B A`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qrat::{parse_rat, Scalar};

use super::presentation::Presentation;
use super::{AlgebraElement, Gen};

/// Split at top-level occurrences of `+`/`-` (parenthesis depth 0, not right
/// after `^`), keeping the sign with each piece.
fn split_terms(input: &str) -> Vec<(i8, String)> {
    let mut out = vec![];
    let mut cur = String::new();
    let mut sign = 1i8;
    let mut depth = 0i32;
    for ch in input.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.trim_end().ends_with('^') => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    out
}

/// Exponent as a rational with denominator 1 or 2, returned as (numer, denom).
fn parse_exponent_rat(s: &str) -> Result<(i64, i64)> {
    let r = parse_rat(s)?;
    let to_i64 = |x: &num_bigint::BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::Parse(format!("exponent '{}' out of range", s)))
    };
    if r.denom() == &1.into() {
        Ok((to_i64(r.numer())?, 1))
    } else if r.denom() == &2.into() {
        Ok((to_i64(r.numer())?, 2))
    } else {
        Err(Error::Parse(format!("unsupported exponent '{}'", s)))
    }
}

enum Atom {
    Coeff(Scalar),
    Letter(Gen, i64),
}

fn parse_atom(p: &Presentation, tok: &str) -> Result<Atom> {
    let (base, exp_str) = match tok.find('^') {
        Some(i) => (&tok[..i], Some(tok[i + 1..].trim_matches(|c| c == '(' || c == ')'))),
        None => (tok, None),
    };
    let exp_int = |tok: &str| -> Result<i64> {
        match exp_str {
            None => Ok(1),
            Some(t) => t
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in '{}'", tok))),
        }
    };
    if let Some(g) = Gen::from_symbol(base) {
        if p.contains(g) {
            let e = exp_int(tok)?;
            if e < 0 && !p.is_invertible(g) {
                return Err(Error::Parse(format!(
                    "generator {} is not invertible in presentation {}",
                    g.symbol(),
                    p.id
                )));
            }
            return Ok(Atom::Letter(g, e));
        }
    }
    match base {
        "q" => {
            let (n, d) = match exp_str {
                None => (1, 1),
                Some(t) => parse_exponent_rat(t)?,
            };
            // q^{n/d} with d in {1, 2}: the s-exponent is 2n/d
            let s_exp = if d == 1 { 2 * n } else { n };
            Ok(Atom::Coeff(Scalar::s_pow(s_exp)))
        }
        "s" => Ok(Atom::Coeff(Scalar::s_pow(exp_int(tok)?))),
        "c" => Ok(Atom::Coeff(Scalar::c_var().pow(exp_int(tok)?))),
        _ => {
            if exp_str.is_some() {
                return Err(Error::Parse(format!("unknown token '{}'", tok)));
            }
            Ok(Atom::Coeff(Scalar::from_rat(parse_rat(base)?)))
        }
    }
}

/// Parse an element in the textual syntax against a presentation's alphabet.
///
/// `*` doubles as the multiplication separator and as part of the names `B*`,
/// `X*`; tokens are therefore split on whitespace and a bare `*` is skipped.
pub fn element_from_str(p: &Presentation, input: &str) -> Result<AlgebraElement> {
    if input.trim().is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut out = AlgebraElement::zero();
    for (sign, term) in split_terms(input) {
        let mut coef = if sign < 0 { Scalar::from_int(-1) } else { Scalar::one() };
        let mut letters: Vec<(Gen, i64)> = vec![];
        for tok in term.split_whitespace() {
            if tok == "*" {
                continue;
            }
            match parse_atom(p, tok)? {
                Atom::Coeff(c) => coef = coef.mul(&c),
                Atom::Letter(g, e) => letters.push((g, e)),
            }
        }
        out = out.add(&AlgebraElement::term(coef, &letters));
    }
    Ok(out)
}
