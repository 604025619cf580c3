//! The catalog of algebra presentations as oriented rewrite systems, and the
//! normal-form reduction engine.
//!
//! Each presentation fixes a total order on its alphabet; rewrite rules have
//! two-letter left-hand sides (an out-of-order adjacent pair, an inverse pair,
//! or the B B* / X* X contractions) and strictly decrease a well-founded word
//! order, so exhaustive leftmost reduction terminates in a unique normal form.
//! Monomials are normal-ordered with the sphere generators left of the
//! enveloping-algebra generators, matching the orientation of the paper's
//! cross relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::qrat::{lambda, Scalar};

use super::{AlgebraElement, Gen, Letter, Word};

/// Presentation identifiers.  `Cross` is the cross product of the sphere with
/// U_q(su2); `CrossHat` adjoins A^-1 (localization); `Yc` is the auxiliary
/// decoupling algebra; `Decoupled` and `CrossHatK` are the two redefinitions of
/// the localized cross products through commuting generator sets.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PresId {
    Uq,
    UqPrime,
    Podles,
    Cross,
    CrossHat,
    Yc,
    Decoupled,
    CrossHatK,
}

impl PresId {
    pub const ALL: [PresId; 8] = [
        PresId::Uq,
        PresId::UqPrime,
        PresId::Podles,
        PresId::Cross,
        PresId::CrossHat,
        PresId::Yc,
        PresId::Decoupled,
        PresId::CrossHatK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresId::Uq => "uq",
            PresId::UqPrime => "uq-prime",
            PresId::Podles => "podles",
            PresId::Cross => "cross",
            PresId::CrossHat => "cross-hat",
            PresId::Yc => "yc",
            PresId::Decoupled => "decoupled",
            PresId::CrossHatK => "cross-hat-k",
        }
    }

    pub fn from_name(s: &str) -> Result<PresId> {
        PresId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Param(format!("unknown presentation '{}'", s)))
    }

    /// Whether the relations depend on the choice of c-regime.
    pub fn regime_sensitive(self) -> bool {
        !matches!(self, PresId::Uq | PresId::UqPrime)
    }
}

impl fmt::Display for PresId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The two families of sphere relations: c in [0, inf) vs c = inf.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Regime {
    CFinite,
    CInfinite,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::CFinite => "c-finite",
            Regime::CInfinite => "c-infinite",
        }
    }
}

/// One oriented rewrite rule.
#[derive(Clone, Debug)]
pub enum Rule {
    /// `g g^-1 -> 1` (and the reversed pair); realized by exponent merging.
    Inverse { gen: Gen, positive_first: bool },
    /// `left^a right^b -> s^(s_exp * a * b) right^b left^a`.
    Commute { left: Gen, right: Gen, s_exp: i64 },
    /// `left^ls right^rs -> rhs` on unit exponents (higher powers peel off).
    Expand {
        left: Gen,
        left_sign: i8,
        right: Gen,
        right_sign: i8,
        rhs: AlgebraElement,
    },
}

/// A defining relation as stated in the source presentation, `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub lhs: AlgebraElement,
    pub rhs: AlgebraElement,
}

impl Relation {
    fn new(id: &str, lhs: AlgebraElement, rhs: AlgebraElement) -> Relation {
        Relation { id: id.to_string(), lhs, rhs }
    }
}

/// Alphabet with a total order, involution table, and oriented rewrite rules
/// encoding one of the paper's algebras.
pub struct Presentation {
    pub id: PresId,
    pub regime: Regime,
    alphabet: Vec<Gen>,
    order: BTreeMap<Gen, usize>,
    invertible: BTreeSet<Gen>,
    star_map: BTreeMap<Gen, AlgebraElement>,
    rules: Vec<Rule>,
    commute: BTreeMap<(Gen, Gen), i64>,
    expand: BTreeMap<(Gen, i8, Gen, i8), AlgebraElement>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn alphabet(&self) -> &[Gen] {
        &self.alphabet
    }

    /// Display symbols including inverse letters for invertible generators.
    pub fn alphabet_symbols(&self) -> Vec<String> {
        let mut out = vec![];
        for &g in &self.alphabet {
            out.push(g.symbol().to_string());
            if self.invertible.contains(&g) {
                out.push(g.inverse_symbol());
            }
        }
        out
    }

    pub fn is_invertible(&self, g: Gen) -> bool {
        self.invertible.contains(&g)
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.order.contains_key(&g)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn star_image(&self, g: Gen) -> &AlgebraElement {
        &self.star_map[&g]
    }

    /// The unique fixed point of exhaustive leftmost rule application.
    pub fn normal_form(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        let mut stack: Vec<(Vec<Letter>, Scalar)> = x
            .terms()
            .map(|(w, c)| (w.letters().to_vec(), c.clone()))
            .collect();
        let mut fuel: u64 = 100_000_000;
        while let Some((w, coef)) = stack.pop() {
            if coef.is_zero() {
                continue;
            }
            fuel = fuel.checked_sub(1).unwrap_or_else(|| {
                panic!("normal_form diverged in presentation {}", self.id)
            });
            match self.first_redex(&w) {
                None => out.add_term(Word::canon(w.iter().copied()), &coef),
                Some((i, redex)) => self.apply_redex(&w, coef, i, redex, &mut stack),
            }
        }
        out
    }

    /// Anti-linear anti-homomorphism: reverse words, conjugate letters through
    /// the involution table (coefficients are real in Q(s, c)).
    pub fn star(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            let mut prod = AlgebraElement::constant(c.clone());
            for l in w.letters().iter().rev() {
                prod = prod.mul(&self.star_letter(*l));
            }
            out = out.add(&prod);
        }
        out
    }

    fn star_letter(&self, l: Letter) -> AlgebraElement {
        let img = &self.star_map[&l.gen];
        if let Some(g) = single_letter(img) {
            return AlgebraElement::word(&[(g, l.exp)]);
        }
        assert!(l.exp >= 1, "word-valued star image with inverse power");
        img.pow(l.exp as u32)
    }

    fn first_redex(&self, w: &[Letter]) -> Option<(usize, Redex)> {
        for i in 0..w.len().saturating_sub(1) {
            let l = w[i];
            let r = w[i + 1];
            if l.gen == r.gen {
                return Some((i, Redex::Merge));
            }
            if let Some(&s_exp) = self.commute.get(&(l.gen, r.gen)) {
                return Some((i, Redex::Commute(s_exp)));
            }
            let key = (l.gen, l.exp.signum() as i8, r.gen, r.exp.signum() as i8);
            if self.expand.contains_key(&key) {
                return Some((i, Redex::Expand(key)));
            }
        }
        None
    }

    fn apply_redex(
        &self,
        w: &[Letter],
        coef: Scalar,
        i: usize,
        redex: Redex,
        stack: &mut Vec<(Vec<Letter>, Scalar)>,
    ) {
        match redex {
            Redex::Merge => {
                let mut out = w[..i].to_vec();
                super::push_letter(&mut out, Letter::new(w[i].gen, w[i].exp + w[i + 1].exp));
                for &l in &w[i + 2..] {
                    super::push_letter(&mut out, l);
                }
                stack.push((out, coef));
            }
            Redex::Commute(s_exp) => {
                let factor = Scalar::s_pow(s_exp * w[i].exp * w[i + 1].exp);
                let mut out = w[..i].to_vec();
                super::push_letter(&mut out, w[i + 1]);
                super::push_letter(&mut out, w[i]);
                for &l in &w[i + 2..] {
                    super::push_letter(&mut out, l);
                }
                stack.push((out, coef.mul(&factor)));
            }
            Redex::Expand(key) => {
                let rhs = &self.expand[&key];
                let (ls, rs) = (key.1 as i64, key.3 as i64);
                for (rw, rc) in rhs.terms() {
                    let mut out = w[..i].to_vec();
                    super::push_letter(&mut out, Letter::new(w[i].gen, w[i].exp - ls));
                    for &l in rw.letters() {
                        super::push_letter(&mut out, l);
                    }
                    super::push_letter(&mut out, Letter::new(w[i + 1].gen, w[i + 1].exp - rs));
                    for &l in &w[i + 2..] {
                        super::push_letter(&mut out, l);
                    }
                    stack.push((out, coef.mul(rc)));
                }
            }
        }
    }

    /// All first-step reduction choices for a raw letter sequence (used by the
    /// confluence checker).
    pub(crate) fn redex_positions(&self, w: &[Letter]) -> Vec<(usize, Redex)> {
        let mut out = vec![];
        for i in 0..w.len().saturating_sub(1) {
            let l = w[i];
            let r = w[i + 1];
            if l.gen == r.gen {
                out.push((i, Redex::Merge));
                continue;
            }
            if let Some(&s_exp) = self.commute.get(&(l.gen, r.gen)) {
                out.push((i, Redex::Commute(s_exp)));
                continue;
            }
            let key = (l.gen, l.exp.signum() as i8, r.gen, r.exp.signum() as i8);
            if self.expand.contains_key(&key) {
                out.push((i, Redex::Expand(key)));
            }
        }
        out
    }

    pub(crate) fn reduce_after_step(
        &self,
        w: &[Letter],
        i: usize,
        redex: Redex,
    ) -> AlgebraElement {
        let mut stack = vec![];
        self.apply_redex(w, Scalar::one(), i, redex, &mut stack);
        let mut acc = AlgebraElement::zero();
        for (letters, coef) in stack {
            let piece =
                AlgebraElement::from_term(coef, Word::canon(letters.iter().copied()));
            acc = acc.add(&self.normal_form(&piece));
        }
        acc
    }
}

#[derive(Copy, Clone, Debug)]
pub(crate) enum Redex {
    Merge,
    Commute(i64),
    Expand((Gen, i8, Gen, i8)),
}

// ---- catalog ----

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn s(k: i64) -> Scalar {
    Scalar::s_pow(k)
}

fn lam_inv() -> Scalar {
    lambda().inv()
}

fn one_plus_q2() -> Scalar {
    Scalar::one().add(&Scalar::q_pow(2))
}

fn el(terms: &[(Scalar, &[(Gen, i64)])]) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (c, spec) in terms {
        out = out.add(&AlgebraElement::term(c.clone(), spec));
    }
    out
}

fn single_letter(x: &AlgebraElement) -> Option<Gen> {
    let mut it = x.terms();
    let (w, c) = it.next()?;
    if it.next().is_some() || !c.is_one() {
        return None;
    }
    match w.letters() {
        [l] if l.exp == 1 => Some(l.gen),
        _ => None,
    }
}

struct Builder {
    id: PresId,
    regime: Regime,
    alphabet: Vec<Gen>,
    invertible: BTreeSet<Gen>,
    star_map: BTreeMap<Gen, AlgebraElement>,
    rules: Vec<Rule>,
    relations: Vec<Relation>,
}

impl Builder {
    fn new(id: PresId, regime: Regime, alphabet: &[Gen]) -> Builder {
        Builder {
            id,
            regime,
            alphabet: alphabet.to_vec(),
            invertible: BTreeSet::new(),
            star_map: BTreeMap::new(),
            rules: vec![],
            relations: vec![],
        }
    }

    fn star(&mut self, g: Gen, img: AlgebraElement) -> &mut Self {
        self.star_map.insert(g, img);
        self
    }

    fn star_gen(&mut self, g: Gen, img: Gen) -> &mut Self {
        self.star(g, AlgebraElement::gen(img))
    }

    fn commute(&mut self, left: Gen, right: Gen, s_exp: i64) -> &mut Self {
        self.rules.push(Rule::Commute { left, right, s_exp });
        self
    }

    fn expand(&mut self, left: (Gen, i8), right: (Gen, i8), rhs: AlgebraElement) -> &mut Self {
        self.rules.push(Rule::Expand {
            left: left.0,
            left_sign: left.1,
            right: right.0,
            right_sign: right.1,
            rhs,
        });
        self
    }

    fn inverse(&mut self, g: Gen) -> &mut Self {
        self.invertible.insert(g);
        self.rules.push(Rule::Inverse { gen: g, positive_first: true });
        self.rules.push(Rule::Inverse { gen: g, positive_first: false });
        self.relations.push(Relation::new(
            &format!("{} {} = 1", g.symbol(), g.inverse_symbol()),
            AlgebraElement::word(&[(g, 1), (g, -1)]),
            AlgebraElement::one(),
        ));
        self.relations.push(Relation::new(
            &format!("{} {} = 1", g.inverse_symbol(), g.symbol()),
            AlgebraElement::word(&[(g, -1), (g, 1)]),
            AlgebraElement::one(),
        ));
        self
    }

    fn relation(&mut self, id: &str, lhs: AlgebraElement, rhs: AlgebraElement) -> &mut Self {
        self.relations.push(Relation::new(id, lhs, rhs));
        self
    }

    fn finish(self) -> Presentation {
        let order = self
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect::<BTreeMap<_, _>>();
        let mut commute = BTreeMap::new();
        let mut expand = BTreeMap::new();
        for rule in &self.rules {
            match rule {
                Rule::Commute { left, right, s_exp } => {
                    commute.insert((*left, *right), *s_exp);
                }
                Rule::Expand { left, left_sign, right, right_sign, rhs } => {
                    expand.insert((*left, *left_sign, *right, *right_sign), rhs.clone());
                }
                Rule::Inverse { .. } => {}
            }
        }
        Presentation {
            id: self.id,
            regime: self.regime,
            alphabet: self.alphabet,
            order,
            invertible: self.invertible,
            star_map: self.star_map,
            rules: self.rules,
            commute,
            expand,
            relations: self.relations,
        }
    }
}

use Gen::*;

/// Sphere rules on B < B* < A, with the regime picking the B*B / BB* targets.
fn sphere_rules(b: &mut Builder, regime: Regime) {
    b.commute(A, B, -4);
    b.commute(A, BStar, 4);
    let (bsb, bbs) = match regime {
        // B*B = A - A^2 + c,  BB* = q^2 A - q^4 A^2 + c
        Regime::CFinite => (
            el(&[
                (Scalar::one(), &[(A, 1)]),
                (Scalar::from_int(-1), &[(A, 2)]),
                (Scalar::c_var(), &[]),
            ]),
            el(&[
                (q(2), &[(A, 1)]),
                (q(4).neg(), &[(A, 2)]),
                (Scalar::c_var(), &[]),
            ]),
        ),
        // B*B = -A^2 + 1,  BB* = -q^4 A^2 + 1
        Regime::CInfinite => (
            el(&[(Scalar::from_int(-1), &[(A, 2)]), (Scalar::one(), &[])]),
            el(&[(q(4).neg(), &[(A, 2)]), (Scalar::one(), &[])]),
        ),
    };
    b.expand((BStar, 1), (B, 1), bsb);
    b.expand((B, 1), (BStar, 1), bbs);
}

fn sphere_relations(b: &mut Builder, regime: Regime) {
    b.relation(
        "AB = q^-2 BA",
        AlgebraElement::word(&[(A, 1), (B, 1)]),
        AlgebraElement::term(q(-2), &[(B, 1), (A, 1)]),
    );
    b.relation(
        "AB* = q^2 B*A",
        AlgebraElement::word(&[(A, 1), (BStar, 1)]),
        AlgebraElement::term(q(2), &[(BStar, 1), (A, 1)]),
    );
    match regime {
        Regime::CFinite => {
            b.relation(
                "B*B = A - A^2 + c",
                AlgebraElement::word(&[(BStar, 1), (B, 1)]),
                el(&[
                    (Scalar::one(), &[(A, 1)]),
                    (Scalar::from_int(-1), &[(A, 2)]),
                    (Scalar::c_var(), &[]),
                ]),
            );
            b.relation(
                "BB* = q^2 A - q^4 A^2 + c",
                AlgebraElement::word(&[(B, 1), (BStar, 1)]),
                el(&[
                    (q(2), &[(A, 1)]),
                    (q(4).neg(), &[(A, 2)]),
                    (Scalar::c_var(), &[]),
                ]),
            );
        }
        Regime::CInfinite => {
            b.relation(
                "B*B = -A^2 + 1",
                AlgebraElement::word(&[(BStar, 1), (B, 1)]),
                el(&[(Scalar::from_int(-1), &[(A, 2)]), (Scalar::one(), &[])]),
            );
            b.relation(
                "BB* = -q^4 A^2 + 1",
                AlgebraElement::word(&[(B, 1), (BStar, 1)]),
                el(&[(q(4).neg(), &[(A, 2)]), (Scalar::one(), &[])]),
            );
        }
    }
}

/// The e/f-style triple (lower = F-like, upper = E-like, diag = K-like):
/// rules diag-commutations plus the EF expansion with the given k-power p in
/// `upper lower - lower upper = lambda^-1 (diag^p - diag^-p)`.
fn u_rules(b: &mut Builder, lower: Gen, diag: Gen, upper: Gen, s_exp: i64, p: i64) {
    b.commute(upper, diag, s_exp);
    b.commute(diag, lower, s_exp);
    b.expand(
        (upper, 1),
        (lower, 1),
        el(&[
            (Scalar::one(), &[(lower, 1), (upper, 1)]),
            (lam_inv(), &[(diag, p)]),
            (lam_inv().neg(), &[(diag, -p)]),
        ]),
    );
    b.inverse(diag);
}

fn uq_relations(b: &mut Builder) {
    b.relation(
        "KE = q EK",
        AlgebraElement::word(&[(K, 1), (E, 1)]),
        AlgebraElement::term(q(1), &[(E, 1), (K, 1)]),
    );
    b.relation(
        "FK = q KF",
        AlgebraElement::word(&[(F, 1), (K, 1)]),
        AlgebraElement::term(q(1), &[(K, 1), (F, 1)]),
    );
    b.relation(
        "EF - FE = lambda^-1 (K^2 - K^-2)",
        AlgebraElement::word(&[(E, 1), (F, 1)])
            .sub(&AlgebraElement::word(&[(F, 1), (E, 1)])),
        el(&[(lam_inv(), &[(K, 2)]), (lam_inv().neg(), &[(K, -2)])]),
    );
}

/// Cross relations of the sphere generators with E, F, K; the c = inf regime
/// drops the two constant-K terms.
fn cross_rules(b: &mut Builder, regime: Regime) {
    b.commute(K, A, 0);
    b.expand(
        (E, 1),
        (A, 1),
        el(&[
            (Scalar::one(), &[(A, 1), (E, 1)]),
            (s(-1), &[(BStar, 1), (K, 1)]),
        ]),
    );
    b.expand(
        (F, 1),
        (A, 1),
        el(&[
            (Scalar::one(), &[(A, 1), (F, 1)]),
            (s(-3).neg(), &[(B, 1), (K, 1)]),
        ]),
    );
    b.commute(K, B, -2);
    let mut eb = el(&[
        (q(1), &[(B, 1), (E, 1)]),
        (s(1).mul(&one_plus_q2()).neg(), &[(A, 1), (K, 1)]),
    ]);
    if regime == Regime::CFinite {
        eb = eb.add(&AlgebraElement::term(s(1), &[(K, 1)]));
    }
    b.expand((E, 1), (B, 1), eb);
    b.commute(F, B, 2);
    b.commute(K, BStar, 2);
    b.commute(E, BStar, -2);
    let mut fbs = el(&[
        (q(-1), &[(BStar, 1), (F, 1)]),
        (s(-1).mul(&one_plus_q2()), &[(A, 1), (K, 1)]),
    ]);
    if regime == Regime::CFinite {
        fbs = fbs.sub(&AlgebraElement::term(s(-1), &[(K, 1)]));
    }
    b.expand((F, 1), (BStar, 1), fbs);
}

fn cross_relations(b: &mut Builder, regime: Regime) {
    b.relation(
        "KA = AK",
        AlgebraElement::word(&[(K, 1), (A, 1)]),
        AlgebraElement::word(&[(A, 1), (K, 1)]),
    );
    b.relation(
        "EA = AE + q^-1/2 B*K",
        AlgebraElement::word(&[(E, 1), (A, 1)]),
        el(&[
            (Scalar::one(), &[(A, 1), (E, 1)]),
            (s(-1), &[(BStar, 1), (K, 1)]),
        ]),
    );
    b.relation(
        "FA = AF - q^-3/2 BK",
        AlgebraElement::word(&[(F, 1), (A, 1)]),
        el(&[
            (Scalar::one(), &[(A, 1), (F, 1)]),
            (s(-3).neg(), &[(B, 1), (K, 1)]),
        ]),
    );
    b.relation(
        "KB = q^-1 BK",
        AlgebraElement::word(&[(K, 1), (B, 1)]),
        AlgebraElement::term(q(-1), &[(B, 1), (K, 1)]),
    );
    let mut eb_rhs = el(&[
        (q(1), &[(B, 1), (E, 1)]),
        (s(1).mul(&one_plus_q2()).neg(), &[(A, 1), (K, 1)]),
    ]);
    if regime == Regime::CFinite {
        eb_rhs = eb_rhs.add(&AlgebraElement::term(s(1), &[(K, 1)]));
    }
    b.relation(
        "EB = qBE - q^1/2(1+q^2)AK [+ q^1/2 K]",
        AlgebraElement::word(&[(E, 1), (B, 1)]),
        eb_rhs,
    );
    b.relation(
        "FB = q BF",
        AlgebraElement::word(&[(F, 1), (B, 1)]),
        AlgebraElement::term(q(1), &[(B, 1), (F, 1)]),
    );
    b.relation(
        "KB* = q B*K",
        AlgebraElement::word(&[(K, 1), (BStar, 1)]),
        AlgebraElement::term(q(1), &[(BStar, 1), (K, 1)]),
    );
    b.relation(
        "EB* = q^-1 B*E",
        AlgebraElement::word(&[(E, 1), (BStar, 1)]),
        AlgebraElement::term(q(-1), &[(BStar, 1), (E, 1)]),
    );
    let mut fbs_rhs = el(&[
        (q(-1), &[(BStar, 1), (F, 1)]),
        (s(-1).mul(&one_plus_q2()), &[(A, 1), (K, 1)]),
    ]);
    if regime == Regime::CFinite {
        fbs_rhs = fbs_rhs.sub(&AlgebraElement::term(s(-1), &[(K, 1)]));
    }
    b.relation(
        "FB* = q^-1 B*F + q^-1/2(1+q^2)AK [- q^-1/2 K]",
        AlgebraElement::word(&[(F, 1), (BStar, 1)]),
        fbs_rhs,
    );
}

/// Y_c rules on X < X* < Y; c-infinite substitutes c -> 1 in the third rule.
fn yc_rules(b: &mut Builder, regime: Regime) {
    b.commute(Y, X, 4);
    b.commute(Y, XStar, -4);
    let cterm = match regime {
        Regime::CFinite => Scalar::c_var(),
        Regime::CInfinite => Scalar::one(),
    };
    let coef = Scalar::one().sub(&q(2));
    b.expand(
        (XStar, 1),
        (X, 1),
        el(&[
            (q(2), &[(X, 1), (XStar, 1)]),
            (coef.clone(), &[(Y, 2)]),
            (coef.mul(&cterm), &[]),
        ]),
    );
}

fn yc_relations(b: &mut Builder, regime: Regime) {
    b.relation(
        "YX = q^2 XY",
        AlgebraElement::word(&[(Y, 1), (X, 1)]),
        AlgebraElement::term(q(2), &[(X, 1), (Y, 1)]),
    );
    b.relation(
        "YX* = q^-2 X*Y",
        AlgebraElement::word(&[(Y, 1), (XStar, 1)]),
        AlgebraElement::term(q(-2), &[(XStar, 1), (Y, 1)]),
    );
    let cterm = match regime {
        Regime::CFinite => Scalar::c_var(),
        Regime::CInfinite => Scalar::one(),
    };
    let coef = Scalar::one().sub(&q(2));
    b.relation(
        "X*X - q^2 XX* = (1-q^2)(Y^2 + c)",
        AlgebraElement::word(&[(XStar, 1), (X, 1)])
            .sub(&AlgebraElement::term(q(2), &[(X, 1), (XStar, 1)])),
        el(&[(coef.clone(), &[(Y, 2)]), (coef.mul(&cterm), &[])]),
    );
}

fn commuting_pairs(b: &mut Builder, left: &[Gen], right: &[Gen]) {
    for &l in left {
        for &r in right {
            b.commute(l, r, 0);
            b.relation(
                &format!("{}{} = {}{}", l.symbol(), r.symbol(), r.symbol(), l.symbol()),
                AlgebraElement::word(&[(l, 1), (r, 1)]),
                AlgebraElement::word(&[(r, 1), (l, 1)]),
            );
        }
    }
}

/// Build one of the catalog presentations.  The regime selects the sphere
/// relation family and the c -> 1 substitution in the decoupled relations; it
/// is ignored by the two enveloping-algebra presentations.
pub fn make_presentation(id: PresId, regime: Regime) -> Presentation {
    match id {
        PresId::Uq => {
            let mut b = Builder::new(id, regime, &[F, K, E]);
            b.star_gen(E, F).star_gen(F, E).star_gen(K, K);
            u_rules(&mut b, F, K, E, -2, 2);
            uq_relations(&mut b);
            b.finish()
        }
        PresId::UqPrime => {
            let mut b = Builder::new(id, regime, &[Fp, Kp, Ep]);
            // e* = k f,  f* = e k^-1,  k* = k
            b.star(Ep, AlgebraElement::word(&[(Kp, 1), (Fp, 1)]));
            b.star(Fp, AlgebraElement::word(&[(Ep, 1), (Kp, -1)]));
            b.star_gen(Kp, Kp);
            u_rules(&mut b, Fp, Kp, Ep, -4, 1);
            b.relation(
                "ke = q^2 ek",
                AlgebraElement::word(&[(Kp, 1), (Ep, 1)]),
                AlgebraElement::term(q(2), &[(Ep, 1), (Kp, 1)]),
            );
            b.relation(
                "kf = q^-2 fk",
                AlgebraElement::word(&[(Kp, 1), (Fp, 1)]),
                AlgebraElement::term(q(-2), &[(Fp, 1), (Kp, 1)]),
            );
            b.relation(
                "ef - fe = lambda^-1 (k - k^-1)",
                AlgebraElement::word(&[(Ep, 1), (Fp, 1)])
                    .sub(&AlgebraElement::word(&[(Fp, 1), (Ep, 1)])),
                el(&[(lam_inv(), &[(Kp, 1)]), (lam_inv().neg(), &[(Kp, -1)])]),
            );
            b.finish()
        }
        PresId::Podles => {
            let mut b = Builder::new(id, regime, &[B, BStar, A]);
            b.star_gen(A, A).star_gen(B, BStar).star_gen(BStar, B);
            sphere_rules(&mut b, regime);
            sphere_relations(&mut b, regime);
            b.finish()
        }
        PresId::Cross => {
            let mut b = Builder::new(id, regime, &[B, BStar, A, F, K, E]);
            b.star_gen(A, A)
                .star_gen(B, BStar)
                .star_gen(BStar, B)
                .star_gen(E, F)
                .star_gen(F, E)
                .star_gen(K, K);
            sphere_rules(&mut b, regime);
            u_rules(&mut b, F, K, E, -2, 2);
            cross_rules(&mut b, regime);
            sphere_relations(&mut b, regime);
            uq_relations(&mut b);
            cross_relations(&mut b, regime);
            b.finish()
        }
        PresId::CrossHat => {
            let mut b = Builder::new(id, regime, &[B, BStar, A, F, K, E]);
            b.star_gen(A, A)
                .star_gen(B, BStar)
                .star_gen(BStar, B)
                .star_gen(E, F)
                .star_gen(F, E)
                .star_gen(K, K);
            sphere_rules(&mut b, regime);
            u_rules(&mut b, F, K, E, -2, 2);
            cross_rules(&mut b, regime);
            b.inverse(A);
            // derived from the left action on A^-1:
            // E A^-1 = A^-1 E - q^-5/2 B* A^-2 K,  F A^-1 = A^-1 F + q^1/2 B A^-2 K
            b.expand(
                (E, 1),
                (A, -1),
                el(&[
                    (Scalar::one(), &[(A, -1), (E, 1)]),
                    (s(-5).neg(), &[(BStar, 1), (A, -2), (K, 1)]),
                ]),
            );
            b.expand(
                (F, 1),
                (A, -1),
                el(&[
                    (Scalar::one(), &[(A, -1), (F, 1)]),
                    (s(1), &[(B, 1), (A, -2), (K, 1)]),
                ]),
            );
            sphere_relations(&mut b, regime);
            uq_relations(&mut b);
            cross_relations(&mut b, regime);
            b.relation(
                "EA^-1 = A^-1E - q^-5/2 B*A^-2K",
                AlgebraElement::word(&[(E, 1), (A, -1)]),
                el(&[
                    (Scalar::one(), &[(A, -1), (E, 1)]),
                    (s(-5).neg(), &[(BStar, 1), (A, -2), (K, 1)]),
                ]),
            );
            b.relation(
                "FA^-1 = A^-1F + q^1/2 BA^-2K",
                AlgebraElement::word(&[(F, 1), (A, -1)]),
                el(&[
                    (Scalar::one(), &[(A, -1), (F, 1)]),
                    (s(1), &[(B, 1), (A, -2), (K, 1)]),
                ]),
            );
            b.relation(
                "KA^-1 = A^-1K",
                AlgebraElement::word(&[(K, 1), (A, -1)]),
                AlgebraElement::word(&[(A, -1), (K, 1)]),
            );
            b.finish()
        }
        PresId::Yc => {
            let mut b = Builder::new(id, regime, &[X, XStar, Y]);
            b.star_gen(X, XStar).star_gen(XStar, X).star_gen(Y, Y);
            yc_rules(&mut b, regime);
            b.inverse(Y);
            yc_relations(&mut b, regime);
            b.finish()
        }
        PresId::Decoupled => {
            let mut b = Builder::new(id, regime, &[B, BStar, A, X, XStar, Y]);
            b.star_gen(A, A)
                .star_gen(B, BStar)
                .star_gen(BStar, B)
                .star_gen(X, XStar)
                .star_gen(XStar, X)
                .star_gen(Y, Y);
            sphere_rules(&mut b, regime);
            yc_rules(&mut b, regime);
            sphere_relations(&mut b, regime);
            yc_relations(&mut b, regime);
            commuting_pairs(&mut b, &[X, XStar, Y], &[B, BStar, A]);
            b.inverse(A);
            b.inverse(Y);
            b.finish()
        }
        PresId::CrossHatK => {
            let mut b = Builder::new(id, regime, &[B, BStar, A, X, XStar, K]);
            b.star_gen(A, A)
                .star_gen(B, BStar)
                .star_gen(BStar, B)
                .star_gen(X, XStar)
                .star_gen(XStar, X)
                .star_gen(K, K);
            sphere_rules(&mut b, regime);
            commuting_pairs(&mut b, &[X, XStar], &[B, BStar, A]);
            // K against the sphere and against X, X*
            b.commute(K, A, 0);
            b.commute(K, B, -2);
            b.commute(K, BStar, 2);
            b.commute(K, X, -2);
            b.commute(K, XStar, 2);
            let cterm = match regime {
                Regime::CFinite => Scalar::c_var(),
                Regime::CInfinite => Scalar::one(),
            };
            let coef = Scalar::one().sub(&q(2));
            b.expand(
                (XStar, 1),
                (X, 1),
                el(&[
                    (q(2), &[(X, 1), (XStar, 1)]),
                    (coef.mul(&q(2)), &[(A, 2), (K, -4)]),
                    (coef.mul(&cterm), &[]),
                ]),
            );
            b.inverse(A);
            b.inverse(K);
            sphere_relations(&mut b, regime);
            b.relation(
                "KA = AK",
                AlgebraElement::word(&[(K, 1), (A, 1)]),
                AlgebraElement::word(&[(A, 1), (K, 1)]),
            );
            b.relation(
                "BK = q KB",
                AlgebraElement::word(&[(B, 1), (K, 1)]),
                AlgebraElement::term(q(1), &[(K, 1), (B, 1)]),
            );
            b.relation(
                "KB* = q B*K",
                AlgebraElement::word(&[(K, 1), (BStar, 1)]),
                AlgebraElement::term(q(1), &[(BStar, 1), (K, 1)]),
            );
            b.relation(
                "X*X - q^2 XX* = (1-q^2)(q^2 K^-4 A^2 + c)",
                AlgebraElement::word(&[(XStar, 1), (X, 1)])
                    .sub(&AlgebraElement::term(q(2), &[(X, 1), (XStar, 1)])),
                el(&[
                    (coef.mul(&q(2)), &[(A, 2), (K, -4)]),
                    (coef.mul(&cterm), &[]),
                ]),
            );
            b.relation(
                "XK = q KX",
                AlgebraElement::word(&[(X, 1), (K, 1)]),
                AlgebraElement::term(q(1), &[(K, 1), (X, 1)]),
            );
            b.relation(
                "KX* = q X*K",
                AlgebraElement::word(&[(K, 1), (XStar, 1)]),
                AlgebraElement::term(q(1), &[(XStar, 1), (K, 1)]),
            );
            b.finish()
        }
    }
}
