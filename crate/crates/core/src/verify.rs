//! Evaluate defining relations, adjointness, commutants and block
//! decompositions on truncated representations.
//!
//! A basis vector is interior for a relation if every prefix of every word in
//! it keeps the vector inside the truncation: the letters' declared moves are
//! chased through the basis, dropping moves that leave the infinite label set
//! (those carry weight zero by construction) and rejecting the vector as soon
//! as a move crosses a truncation boundary or enters a contaminated column.
//! Residuals are measured column-wise on unit basis vectors.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, Gen, Letter, Presentation, Word};
use crate::error::{Error, Result};
use crate::qrat::HalfInt;
use crate::reps::{build_spin, Basis, Label, Operator, Rep, Step};
use crate::sparse::norm2;

/// Per-relation residual statistics with interior/skipped accounting.
#[derive(Clone, Debug)]
pub struct Report {
    pub relation_id: String,
    pub max_residual: f64,
    pub vectors_checked: usize,
    pub vectors_skipped: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl Report {
    pub fn new(
        relation_id: impl Into<String>,
        tolerance: f64,
        max_residual: f64,
        vectors_checked: usize,
        vectors_skipped: usize,
    ) -> Report {
        Report {
            relation_id: relation_id.into(),
            max_residual,
            vectors_checked,
            vectors_skipped,
            tolerance,
            pass: vectors_checked >= 1 && max_residual <= tolerance,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "relation": self.relation_id,
            "max_residual": self.max_residual,
            "vectors_checked": self.vectors_checked,
            "vectors_skipped": self.vectors_skipped,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.pass)
}

pub fn reports_to_json(reports: &[Report]) -> Value {
    Value::Array(reports.iter().map(|r| r.to_json()).collect())
}

/// The default residual tolerance at unit-vector scale.
pub const DEFAULT_TOL: f64 = 1e-9;

fn letter_name(l: &Letter) -> String {
    if l.exp >= 0 {
        l.gen.symbol().to_string()
    } else {
        l.gen.inverse_symbol()
    }
}

/// Operator table for a presentation: the representation's operators plus
/// inverse diagonals that the presentation needs but the builder did not
/// store.
fn effective_ops<'a>(rep: &'a Rep, p: &Presentation) -> Result<BTreeMap<String, Operator>> {
    let mut ops: BTreeMap<String, Operator> = rep.ops.clone();
    for &g in p.alphabet() {
        if !ops.contains_key(g.symbol()) {
            return Err(Error::Param(format!(
                "representation lacks operator {} required by presentation {}",
                g.symbol(),
                p.id
            )));
        }
        if p.is_invertible(g) && !ops.contains_key(&g.inverse_symbol()) {
            let base = &ops[g.symbol()];
            let inv = base.mat.inverse_diagonal().map_err(|e| {
                Error::Param(format!(
                    "cannot invert {} for presentation {}: {}",
                    g.symbol(),
                    p.id,
                    e
                ))
            })?;
            ops.insert(
                g.inverse_symbol(),
                Operator { mat: inv, moves: vec![(0, 0)], contaminated: BTreeSet::new() },
            );
        }
    }
    let _ = rep;
    Ok(ops)
}

/// Every prefix of `word`, applied to basis vector `start`, stays inside the
/// truncation (letters act right to left).
fn word_interior(
    basis: &Basis,
    ops: &BTreeMap<String, Operator>,
    word: &Word,
    start: usize,
) -> Result<bool> {
    let mut active: BTreeSet<usize> = BTreeSet::from([start]);
    for letter in word.letters().iter().rev() {
        let op = ops
            .get(&letter_name(letter))
            .ok_or_else(|| Error::Param(format!("missing operator {}", letter_name(letter))))?;
        for _ in 0..letter.exp.unsigned_abs() {
            let mut next = BTreeSet::new();
            for &i in &active {
                if op.contaminated.contains(&i) {
                    return Ok(false);
                }
                for &m in &op.moves {
                    match basis.step(basis.label(i), m) {
                        Step::Inside(t) => {
                            next.insert(t);
                        }
                        Step::Truncated => return Ok(false),
                        Step::Vanishes => {}
                    }
                }
            }
            active = next;
            if active.is_empty() {
                return Ok(true);
            }
        }
    }
    Ok(true)
}

/// pi(word) applied to the `start`-th basis vector, by truncated matrices.
fn apply_word(
    dim: usize,
    ops: &BTreeMap<String, Operator>,
    word: &Word,
    start: usize,
) -> Result<Vec<Complex64>> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    v[start] = Complex64::new(1.0, 0.0);
    for letter in word.letters().iter().rev() {
        let op = ops
            .get(&letter_name(letter))
            .ok_or_else(|| Error::Param(format!("missing operator {}", letter_name(letter))))?;
        for _ in 0..letter.exp.unsigned_abs() {
            v = op.mat.apply(&v);
        }
    }
    Ok(v)
}

fn eval_element_on(
    rep: &Rep,
    ops: &BTreeMap<String, Operator>,
    x: &AlgebraElement,
    start: usize,
) -> Result<Vec<Complex64>> {
    let dim = rep.dim();
    let mut acc = vec![Complex64::new(0.0, 0.0); dim];
    for (w, coef) in x.terms() {
        let cf = coef.eval(&rep.params.q, &rep.params.c)?;
        let v = apply_word(dim, ops, w, start)?;
        for (a, b) in acc.iter_mut().zip(v) {
            *a += Complex64::new(cf, 0.0) * b;
        }
    }
    Ok(acc)
}

/// Check every defining relation of `p` on `rep`, one report per relation.
pub fn check_relations(rep: &Rep, p: &Presentation, tol: f64) -> Result<Vec<Report>> {
    let ops = effective_ops(rep, p)?;
    let mut reports = vec![];
    for rel in p.relations() {
        let diff = rel.lhs.sub(&rel.rhs);
        let words: Vec<&Word> = diff.terms().map(|(w, _)| w).collect();
        let mut max_res = 0.0f64;
        let mut checked = 0;
        let mut skipped = 0;
        for idx in 0..rep.dim() {
            let mut interior = true;
            for w in &words {
                if !word_interior(&rep.basis, &ops, w, idx)? {
                    interior = false;
                    break;
                }
            }
            if !interior {
                skipped += 1;
                continue;
            }
            let v = eval_element_on(rep, &ops, &diff, idx)?;
            max_res = max_res.max(norm2(&v));
            checked += 1;
        }
        reports.push(Report::new(rel.id.clone(), tol, max_res, checked, skipped));
    }
    Ok(reports)
}

/// Compare pi(star(g)) with the conjugate transpose of pi(g) for every
/// generator, on rows and columns untouched by the truncation.
pub fn check_star(rep: &Rep, p: &Presentation, tol: f64) -> Result<Vec<Report>> {
    let ops = effective_ops(rep, p)?;
    let mut reports = vec![];
    for &g in p.alphabet() {
        let op = &ops[g.symbol()];
        let adj = op.adjoint(&rep.basis);
        let image = operator_of_element(rep, &ops, p.star_image(g))?;
        let mut excluded: BTreeSet<usize> = adj.contaminated.clone();
        excluded.extend(image.contaminated.iter().copied());
        let mut max_res = 0.0f64;
        for (r, c, v) in adj.mat.iter() {
            if !excluded.contains(&r) && !excluded.contains(&c) {
                max_res = max_res.max((v - image.mat.get(r, c)).norm());
            }
        }
        for (r, c, v) in image.mat.iter() {
            if !excluded.contains(&r) && !excluded.contains(&c) {
                max_res = max_res.max((v - adj.mat.get(r, c)).norm());
            }
        }
        let checked = rep.dim() - excluded.len();
        reports.push(Report::new(
            format!("{}* = {}", g.symbol(), p.star_image(g)),
            tol,
            max_res,
            checked,
            excluded.len(),
        ));
    }
    Ok(reports)
}

fn operator_of_element(
    rep: &Rep,
    ops: &BTreeMap<String, Operator>,
    x: &AlgebraElement,
) -> Result<Operator> {
    let dim = rep.dim();
    let mut acc: Option<Operator> = None;
    for (w, coef) in x.terms() {
        let cf = coef.eval(&rep.params.q, &rep.params.c)?;
        let mut term: Option<Operator> = None;
        for letter in w.letters() {
            let op = ops
                .get(&letter_name(letter))
                .ok_or_else(|| Error::Param(format!("missing operator {}", letter_name(letter))))?;
            for _ in 0..letter.exp.unsigned_abs() {
                term = Some(match term {
                    None => op.clone(),
                    Some(t) => t.compose(op, &rep.basis),
                });
            }
        }
        let term = term
            .unwrap_or_else(|| Operator::identity(dim))
            .scale(Complex64::new(cf, 0.0));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap_or_else(|| {
        let mut z = Operator::identity(dim);
        z.mat = crate::sparse::SpMat::zeros(dim);
        z
    }))
}

/// Interior residuals of all pairwise commutators between two operator sets.
pub fn check_commutant(
    basis: &Basis,
    set_a: &[(&str, &Operator)],
    set_b: &[(&str, &Operator)],
    tol: f64,
) -> Vec<Report> {
    let mut reports = vec![];
    for &(na, a) in set_a {
        for &(nb, b) in set_b {
            let ab = a.compose(b, basis);
            let ba = b.compose(a, basis);
            let comm = ab.sub(&ba);
            let mut max_res = 0.0f64;
            let mut checked = 0;
            let mut skipped = 0;
            for col in 0..basis.len() {
                if comm.contaminated.contains(&col) {
                    skipped += 1;
                    continue;
                }
                let mut unit = vec![Complex64::new(0.0, 0.0); basis.len()];
                unit[col] = Complex64::new(1.0, 0.0);
                max_res = max_res.max(norm2(&comm.mat.apply(&unit)));
                checked += 1;
            }
            reports.push(Report::new(
                format!("[{}, {}]", na, nb),
                tol,
                max_res,
                checked,
                skipped,
            ));
        }
    }
    reports
}

/// Verify that E, F, K of a spin-tower representation are block-diagonal
/// across the l-grading with blocks equal to the spin representations, and
/// that the sphere generators connect adjacent blocks only.
pub fn check_restriction_decomposition(rep: &Rep, l0: HalfInt, tol: f64) -> Result<Report> {
    let mut max_res = 0.0f64;
    let l2_of = |i: usize| match rep.basis.label(i) {
        Label::Spin { l2, .. } => l2,
        _ => unreachable!("restriction check needs a spin tower"),
    };
    // off-block entries of E, F, K; blockwise equality with the spin rep
    let mut l2_max = l0.doubled();
    for i in 0..rep.dim() {
        l2_max = l2_max.max(l2_of(i));
    }
    for name in ["E", "F", "K"] {
        let op = rep.op(name)?;
        for (r, c, v) in op.mat.iter() {
            if l2_of(r) != l2_of(c) {
                max_res = max_res.max(v.norm());
            }
        }
        let mut l2 = l0.doubled();
        while l2 <= l2_max {
            let spin = build_spin(HalfInt::from_doubled(l2), &rep.params.q)?;
            let sop = spin.op(name)?;
            for (r, c, v) in sop.mat.iter() {
                let rr = rep
                    .basis
                    .position(Label::Spin { l2, j2: spin_j2(&spin.basis, r) })
                    .expect("tower contains the block");
                let cc = rep
                    .basis
                    .position(Label::Spin { l2, j2: spin_j2(&spin.basis, c) })
                    .expect("tower contains the block");
                max_res = max_res.max((op.mat.get(rr, cc) - v).norm());
            }
            // entries present in the tower block but absent from the spin rep
            for (r, c, v) in op.mat.iter() {
                if l2_of(r) == l2 && l2_of(c) == l2 {
                    let sj_r = match rep.basis.label(r) {
                        Label::Spin { j2, .. } => j2,
                        _ => unreachable!(),
                    };
                    let sj_c = match rep.basis.label(c) {
                        Label::Spin { j2, .. } => j2,
                        _ => unreachable!(),
                    };
                    let sr = spin.basis.position(Label::Spin { l2, j2: sj_r }).unwrap();
                    let sc = spin.basis.position(Label::Spin { l2, j2: sj_c }).unwrap();
                    max_res = max_res.max((sop.mat.get(sr, sc) - v).norm());
                }
            }
            l2 += 2;
        }
    }
    // x-generators connect adjacent blocks only
    for name in ["x1", "x0", "x-1"] {
        if let Ok(op) = rep.op(name) {
            for (r, c, v) in op.mat.iter() {
                if (l2_of(r) - l2_of(c)).abs() > 2 {
                    max_res = max_res.max(v.norm());
                }
            }
        }
    }
    Ok(Report::new(
        "restriction decomposition",
        tol,
        max_res,
        rep.dim(),
        0,
    ))
}

fn spin_j2(basis: &Basis, idx: usize) -> i64 {
    match basis.label(idx) {
        Label::Spin { j2, .. } => j2,
        _ => unreachable!(),
    }
}

/// Compare direct matrix evaluation of random words with the term-by-term
/// evaluation of their normal forms.  `vectors_checked`/`vectors_skipped`
/// count (word, basis vector) pairs.
pub fn check_morphism(
    rep: &Rep,
    p: &Presentation,
    trials: usize,
    max_len: usize,
    tol: f64,
    seed: u64,
) -> Result<Report> {
    let ops = effective_ops(rep, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbols: Vec<Letter> = vec![];
    for &g in p.alphabet() {
        symbols.push(Letter::new(g, 1));
        if p.is_invertible(g) {
            symbols.push(Letter::new(g, -1));
        }
    }
    let dim = rep.dim();
    let mut max_dev = 0.0f64;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for _ in 0..trials {
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<Letter> =
            (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect();
        let raw = Word::canon(letters.iter().copied());
        let element = AlgebraElement::word(
            &letters.iter().map(|l| (l.gen, l.exp)).collect::<Vec<_>>(),
        );
        let nf = p.normal_form(&element);
        for idx in 0..dim {
            let mut interior = word_interior(&rep.basis, &ops, &raw, idx)?;
            if interior {
                for (w, _) in nf.terms() {
                    if !word_interior(&rep.basis, &ops, w, idx)? {
                        interior = false;
                        break;
                    }
                }
            }
            if !interior {
                skipped += 1;
                continue;
            }
            let direct = apply_word(dim, &ops, &raw, idx)?;
            let via_nf = eval_element_on(rep, &ops, &nf, idx)?;
            let dev: f64 = direct
                .iter()
                .zip(via_nf.iter())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            max_dev = max_dev.max(dev);
            checked += 1;
        }
    }
    Ok(Report::new(
        format!("morphism({} words, len <= {})", trials, max_len),
        tol,
        max_dev,
        checked,
        skipped,
    ))
}

/// The exact-tier gate: every defining relation reduces to zero.
pub fn exact_gate(p: &Presentation) -> bool {
    p.relations()
        .iter()
        .all(|rel| p.normal_form(&rel.lhs.sub(&rel.rhs)).is_zero())
}

#[cfg(test)]
mod tests;
