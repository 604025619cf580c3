//! Truncated sparse operator representations: the quantum sphere
//! representations, the spin representations of U_q(su2), the weighted-shift
//! representations of the auxiliary algebra Y_c, and the two families of cross
//! product representations, plus the closed-form coefficient tables behind the
//! second family.
//!
//! All matrices are complex and act on an explicitly labeled truncated basis.
//! Each operator declares its grading moves; a move landing outside the
//! infinite label set carries weight zero by construction, while a move past a
//! truncation boundary marks the source column as contaminated.  The checker
//! in [`crate::verify`] uses this bookkeeping to restrict to interior vectors.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::algebra::{PresId, Regime};
use crate::error::{Error, Result};
use crate::qrat::{lambda_f, lambda_n_f, pow_half, q_int_f, CParam, HalfInt, Rat};
use crate::sparse::SpMat;

/// Which of the two inequivalent families (the lower index of the paper's
/// coefficient solutions) a representation belongs to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Param(format!("bad sign '{}'", s))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Sphere representation sector: the two weighted-shift sectors and the
/// one-dimensional kernel sector.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sector {
    Plus,
    Minus,
    Zero,
}

impl Sector {
    pub fn parse(s: &str) -> Result<Sector> {
        match s {
            "+" => Ok(Sector::Plus),
            "-" => Ok(Sector::Minus),
            "0" => Ok(Sector::Zero),
            _ => Err(Error::Param(format!("bad sector '{}'", s))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Plus => "+",
            Sector::Minus => "-",
            Sector::Zero => "0",
        }
    }
}

/// Parameters of a representation build.  `h` and `y0` are scalar stand-ins
/// for the paper's operators H and Y_0; `u_phase` for the unitary u.
#[derive(Clone, Debug)]
pub struct ParamSet {
    pub q: Rat,
    pub c: CParam,
    pub sign: Sign,
    pub l0: HalfInt,
    pub h: f64,
    pub y0: f64,
    pub u_phase: Complex64,
    pub cutoff: usize,
}

impl ParamSet {
    pub fn new(q: Rat, c: CParam) -> Result<ParamSet> {
        let p = ParamSet {
            q,
            c,
            sign: Sign::Plus,
            l0: HalfInt::ZERO,
            h: 1.0,
            y0: 1.0,
            u_phase: Complex64::new(1.0, 0.0),
            cutoff: 8,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let zero = BigRational::from_integer(0.into());
        let one = BigRational::from_integer(1.into());
        if self.q <= zero || self.q >= one {
            return Err(Error::Param(format!("q must lie in (0,1), got {}", self.q)));
        }
        if let CParam::Finite(c) = &self.c {
            if c < &zero {
                return Err(Error::Param(format!("c must be >= 0, got {}", c)));
            }
        }
        if !(self.h > 0.0) {
            return Err(Error::Param(format!("h must be > 0, got {}", self.h)));
        }
        if self.y0 == 0.0 {
            return Err(Error::Param("y0 must be nonzero".into()));
        }
        if (self.u_phase.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Param("u_phase must have unit modulus".into()));
        }
        if self.l0.doubled() < 0 {
            return Err(Error::Param(format!("l0 must be >= 0, got {}", self.l0)));
        }
        if self.cutoff < 1 {
            return Err(Error::Param("cutoff must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_sign(mut self, sign: Sign) -> ParamSet {
        self.sign = sign;
        self
    }

    pub fn with_l0(mut self, l0: HalfInt) -> ParamSet {
        self.l0 = l0;
        self
    }

    pub fn with_h(mut self, h: f64) -> ParamSet {
        self.h = h;
        self
    }

    pub fn with_y0(mut self, y0: f64) -> ParamSet {
        self.y0 = y0;
        self
    }

    pub fn with_u_phase(mut self, u: Complex64) -> ParamSet {
        self.u_phase = u;
        self
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> ParamSet {
        self.cutoff = cutoff;
        self
    }

    pub fn q_f(&self) -> f64 {
        self.q.to_f64().expect("q fits in f64")
    }

    /// c as f64, with the c -> 1 substitution applied for the infinite sphere
    /// where the caller asks for the decoupled-relation value.
    pub fn c_f(&self) -> Option<f64> {
        self.c.finite_f64()
    }
}

/// Basis label: shift level n, grid point (n, j), or spin pair (l, j) stored
/// as doubled half-integers.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Label {
    N(i64),
    Grid { n: i64, j: i64 },
    Spin { l2: i64, j2: i64 },
}

impl Label {
    fn shifted(self, mv: Move) -> Label {
        match self {
            Label::N(n) => Label::N(n + mv.0),
            Label::Grid { n, j } => Label::Grid { n: n + mv.0, j: j + mv.1 },
            Label::Spin { l2, j2 } => Label::Spin { l2: l2 + mv.0, j2: j2 + mv.1 },
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Label::N(n) => json!(n),
            Label::Grid { n, j } => json!([n, j]),
            Label::Spin { l2, j2 } => json!([
                HalfInt::from_doubled(l2).to_string(),
                HalfInt::from_doubled(j2).to_string()
            ]),
        }
    }
}

/// A grading move; components are doubled for spin labels.
pub type Move = (i64, i64);

/// Outcome of moving a basis label: stays inside the truncated basis, leaves
/// through a truncation boundary, or leaves the infinite label set entirely
/// (weight zero by construction).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Inside(usize),
    Truncated,
    Vanishes,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
enum BasisKind {
    /// Shift levels 0..=cutoff.
    Ladder { cutoff: i64 },
    /// Grid (n, j) in [0, cutoff]^2.
    Grid { cutoff: i64 },
    /// Spin tower l0 <= l <= lmax, |j| <= l (doubled).
    SpinTower { l2_min: i64, l2_max: i64 },
    /// One-dimensional space (the kernel sector).
    Single,
}

/// Ordered labeled basis with truncation-aware label moves.
#[derive(Clone, Debug)]
pub struct Basis {
    labels: Vec<Label>,
    index: BTreeMap<Label, usize>,
    kind: BasisKind,
}

impl Basis {
    fn new(labels: Vec<Label>, kind: BasisKind) -> Basis {
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Basis { labels, index, kind }
    }

    fn ladder(cutoff: usize) -> Basis {
        let labels = (0..=cutoff as i64).map(Label::N).collect();
        Basis::new(labels, BasisKind::Ladder { cutoff: cutoff as i64 })
    }

    fn grid(cutoff: usize) -> Basis {
        let mut labels = vec![];
        for n in 0..=cutoff as i64 {
            for j in 0..=cutoff as i64 {
                labels.push(Label::Grid { n, j });
            }
        }
        Basis::new(labels, BasisKind::Grid { cutoff: cutoff as i64 })
    }

    fn spin_tower(l2_min: i64, l2_max: i64) -> Basis {
        let mut labels = vec![];
        let mut l2 = l2_min;
        while l2 <= l2_max {
            let mut j2 = -l2;
            while j2 <= l2 {
                labels.push(Label::Spin { l2, j2 });
                j2 += 2;
            }
            l2 += 2;
        }
        Basis::new(labels, BasisKind::SpinTower { l2_min, l2_max })
    }

    fn single() -> Basis {
        Basis::new(vec![Label::N(0)], BasisKind::Single)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn position(&self, l: Label) -> Option<usize> {
        self.index.get(&l).copied()
    }

    /// Where a move takes a label, with truncation accounting.
    pub fn step(&self, from: Label, mv: Move) -> Step {
        if mv == (0, 0) {
            return Step::Inside(self.index[&from]);
        }
        let to = from.shifted(mv);
        match (self.kind, to) {
            (BasisKind::Single, _) => Step::Vanishes,
            (BasisKind::Ladder { cutoff }, Label::N(n)) => {
                if n < 0 {
                    Step::Vanishes
                } else if n > cutoff {
                    Step::Truncated
                } else {
                    Step::Inside(self.index[&to])
                }
            }
            (BasisKind::Grid { cutoff }, Label::Grid { n, j }) => {
                if n < 0 || j < 0 {
                    Step::Vanishes
                } else if n > cutoff || j > cutoff {
                    Step::Truncated
                } else {
                    Step::Inside(self.index[&to])
                }
            }
            (BasisKind::SpinTower { l2_min, l2_max }, Label::Spin { l2, j2 }) => {
                if l2 < l2_min || j2.abs() > l2 {
                    Step::Vanishes
                } else if l2 > l2_max {
                    Step::Truncated
                } else {
                    Step::Inside(self.index[&to])
                }
            }
            _ => unreachable!("label kind mismatch"),
        }
    }
}

/// A truncated operator together with its declared grading moves and the set
/// of contaminated columns (sources whose images were cut by the truncation).
#[derive(Clone, Debug)]
pub struct Operator {
    pub mat: SpMat,
    pub moves: Vec<Move>,
    pub contaminated: BTreeSet<usize>,
}

fn escape_set(basis: &Basis, moves: &[Move]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (i, &l) in basis.labels().iter().enumerate() {
        if moves.iter().any(|&m| basis.step(l, m) == Step::Truncated) {
            out.insert(i);
        }
    }
    out
}

fn dedup_moves(moves: impl IntoIterator<Item = Move>) -> Vec<Move> {
    let set: BTreeSet<Move> = moves.into_iter().collect();
    set.into_iter().collect()
}

impl Operator {
    pub fn new(mat: SpMat, moves: Vec<Move>, basis: &Basis) -> Operator {
        let moves = dedup_moves(moves);
        let contaminated = escape_set(basis, &moves);
        Operator { mat, moves, contaminated }
    }

    pub fn diagonal(diag: Vec<Complex64>) -> Operator {
        Operator {
            mat: SpMat::from_diagonal(&diag),
            moves: vec![(0, 0)],
            contaminated: BTreeSet::new(),
        }
    }

    pub fn identity(dim: usize) -> Operator {
        Operator {
            mat: SpMat::identity(dim),
            moves: vec![(0, 0)],
            contaminated: BTreeSet::new(),
        }
    }

    pub fn scale(&self, f: Complex64) -> Operator {
        Operator {
            mat: self.mat.scale(f),
            moves: self.moves.clone(),
            contaminated: self.contaminated.clone(),
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator {
            mat: self.mat.add(&other.mat),
            moves: dedup_moves(self.moves.iter().chain(other.moves.iter()).copied()),
            contaminated: self.contaminated.union(&other.contaminated).copied().collect(),
        }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// self composed after `right` (matrix product self * right), with
    /// contamination chained through the moves of `right`.
    pub fn compose(&self, right: &Operator, basis: &Basis) -> Operator {
        let mut contaminated = right.contaminated.clone();
        for (i, &l) in basis.labels().iter().enumerate() {
            if contaminated.contains(&i) {
                continue;
            }
            for &m in &right.moves {
                if let Step::Inside(t) = basis.step(l, m) {
                    if self.contaminated.contains(&t) {
                        contaminated.insert(i);
                        break;
                    }
                }
            }
        }
        let moves = dedup_moves(
            self.moves
                .iter()
                .flat_map(|&a| right.moves.iter().map(move |&b| (a.0 + b.0, a.1 + b.1))),
        );
        Operator { mat: self.mat.matmul(&right.mat), moves, contaminated }
    }

    /// Conjugate transpose, with contamination mirrored through the moves.
    pub fn adjoint(&self, basis: &Basis) -> Operator {
        let neg: Vec<Move> = self.moves.iter().map(|&(a, b)| (-a, -b)).collect();
        let mut contaminated = escape_set(basis, &neg);
        for &c in &self.contaminated {
            for &m in &self.moves {
                if let Step::Inside(t) = basis.step(basis.label(c), m) {
                    contaminated.insert(t);
                }
            }
        }
        Operator { mat: self.mat.adjoint(), moves: neg, contaminated }
    }
}

/// Which builder produced a representation.
#[derive(Clone, Debug)]
pub enum RepKind {
    Podles { sector: Sector },
    Spin { l: HalfInt },
    Yc,
    CrossI,
    CrossII { l_max: HalfInt },
}

impl RepKind {
    pub fn name(&self) -> &'static str {
        match self {
            RepKind::Podles { .. } => "podles",
            RepKind::Spin { .. } => "spin",
            RepKind::Yc => "yc",
            RepKind::CrossI => "cross1",
            RepKind::CrossII { .. } => "cross2",
        }
    }
}

/// A representation: labeled basis, generator matrices, and the parameters
/// that produced it.
pub struct Rep {
    pub presentation_id: PresId,
    pub regime: Regime,
    pub params: ParamSet,
    pub kind: RepKind,
    pub basis: Basis,
    pub ops: BTreeMap<String, Operator>,
}

impl Rep {
    pub fn op(&self, name: &str) -> Result<&Operator> {
        self.ops
            .get(name)
            .ok_or_else(|| Error::Param(format!("representation has no operator '{}'", name)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn insert(&mut self, name: &str, op: Operator) {
        self.ops.insert(name.to_string(), op);
    }
}

fn regime_of(c: &CParam) -> Regime {
    match c {
        CParam::Finite(_) => Regime::CFinite,
        CParam::Infinite => Regime::CInfinite,
    }
}

/// Square root with the radicand policy: tiny negative values (roundoff) clamp
/// to zero, anything below -1e-13 is an error, never silently clamped.
fn checked_sqrt(x: f64, what: &str) -> Result<f64> {
    if x < -1e-13 {
        return Err(Error::Construction(format!(
            "negative radicand {:.3e} in {}",
            x, what
        )));
    }
    Ok(x.max(0.0).sqrt())
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// lambda_{+-} = 1/2 +- (c + 1/4)^{1/2}.
pub fn lambda_pm(c: f64, sign: Sign) -> f64 {
    0.5 + sign.factor() * (c + 0.25).sqrt()
}

/// Sphere shift weight c_{+-}(n) = (c + lam q^{2n} - (lam q^{2n})^2)^{1/2}.
fn sphere_weight(c: f64, lam: f64, q: f64, n: i64) -> Result<f64> {
    let a = lam * q.powi(2 * n as i32);
    checked_sqrt(c + a - a * a, "sphere shift weight")
}

// ---- sphere representations ----

/// Sphere representation on the ladder basis (sectors +/-) or the
/// one-dimensional kernel sector (sector 0).
pub fn build_podles(params: &ParamSet, sector: Sector) -> Result<Rep> {
    params.validate()?;
    let q = params.q_f();
    let regime = regime_of(&params.c);
    let mut rep = Rep {
        presentation_id: PresId::Podles,
        regime,
        params: params.clone(),
        kind: RepKind::Podles { sector },
        basis: Basis::single(),
        ops: BTreeMap::new(),
    };
    if sector == Sector::Zero {
        let b = match &params.c {
            CParam::Finite(c) => {
                let cf = c.to_f64().unwrap();
                params.u_phase * re(cf.sqrt())
            }
            CParam::Infinite => params.u_phase,
        };
        rep.insert("A", Operator::diagonal(vec![re(0.0)]));
        rep.insert("B", Operator::diagonal(vec![b]));
        rep.insert("B*", Operator::diagonal(vec![b.conj()]));
        return Ok(rep);
    }
    let basis = Basis::ladder(params.cutoff);
    let n_of = |i: usize| match basis.label(i) {
        Label::N(n) => n,
        _ => unreachable!(),
    };
    let dim = basis.len();
    let (a_diag, weight): (Vec<f64>, Box<dyn Fn(i64) -> Result<f64>>) = match &params.c {
        CParam::Finite(c) => {
            let cf = c.to_f64().unwrap();
            if cf == 0.0 && sector == Sector::Minus {
                return Err(Error::Param(
                    "the sphere with c = 0 has no minus sector".into(),
                ));
            }
            let lam = lambda_pm(
                cf,
                if sector == Sector::Plus { Sign::Plus } else { Sign::Minus },
            );
            (
                (0..dim).map(|i| lam * q.powi(2 * n_of(i) as i32)).collect(),
                Box::new(move |n| sphere_weight(cf, lam, q, n)),
            )
        }
        CParam::Infinite => {
            let s = if sector == Sector::Plus { 1.0 } else { -1.0 };
            (
                (0..dim).map(|i| s * q.powi(2 * n_of(i) as i32)).collect(),
                Box::new(move |n| checked_sqrt(1.0 - q.powi(4 * n as i32), "1 - q^{4n}")),
            )
        }
    };
    let mut b_mat = SpMat::zeros(dim);
    let mut bs_mat = SpMat::zeros(dim);
    for i in 0..dim {
        let n = n_of(i);
        if n >= 1 {
            b_mat.set(i - 1, i, re(weight(n)?));
        }
        if let Some(up) = basis.position(Label::N(n + 1)) {
            bs_mat.set(up, i, re(weight(n + 1)?));
        }
    }
    rep.basis = basis;
    rep.insert("A", Operator::diagonal(a_diag.into_iter().map(re).collect()));
    let b = Operator::new(b_mat, vec![(-1, 0)], &rep.basis);
    let bs = Operator::new(bs_mat, vec![(1, 0)], &rep.basis);
    rep.insert("B", b);
    rep.insert("B*", bs);
    Ok(rep)
}

// ---- spin representations ----

/// The (2l+1)-dimensional type 1 spin-l representation of U_q(su2).
pub fn build_spin(l: HalfInt, q: &Rat) -> Result<Rep> {
    if l.doubled() < 0 {
        return Err(Error::Param(format!("spin label l must be >= 0, got {}", l)));
    }
    let params = ParamSet::new(q.clone(), CParam::Finite(BigRational::from_integer(0.into())))?;
    let qf = params.q_f();
    let basis = Basis::spin_tower(l.doubled(), l.doubled());
    let dim = basis.len();
    let mut e_mat = SpMat::zeros(dim);
    let mut f_mat = SpMat::zeros(dim);
    let mut k_diag = vec![re(0.0); dim];
    for (i, &label) in basis.labels().iter().enumerate() {
        let Label::Spin { l2, j2 } = label else { unreachable!() };
        k_diag[i] = re(pow_half(qf, j2));
        // E v_j = [l-j]^{1/2} [l+j+1]^{1/2} v_{j+1}
        if let Some(up) = basis.position(Label::Spin { l2, j2: j2 + 2 }) {
            let w = (q_int_f((l2 - j2) / 2, qf) * q_int_f((l2 + j2) / 2 + 1, qf)).sqrt();
            e_mat.set(up, i, re(w));
        }
        // F v_j = [l-j+1]^{1/2} [l+j]^{1/2} v_{j-1}
        if let Some(down) = basis.position(Label::Spin { l2, j2: j2 - 2 }) {
            let w = (q_int_f((l2 - j2) / 2 + 1, qf) * q_int_f((l2 + j2) / 2, qf)).sqrt();
            f_mat.set(down, i, re(w));
        }
    }
    let mut rep = Rep {
        presentation_id: PresId::Uq,
        regime: Regime::CFinite,
        params,
        kind: RepKind::Spin { l },
        basis,
        ops: BTreeMap::new(),
    };
    let e = Operator::new(e_mat, vec![(0, 2)], &rep.basis);
    let f = Operator::new(f_mat, vec![(0, -2)], &rep.basis);
    rep.insert("E", e);
    rep.insert("F", f);
    let k_inv = k_diag.iter().map(|d| d.inv()).collect();
    rep.insert("K", Operator::diagonal(k_diag));
    rep.insert("K^-1", Operator::diagonal(k_inv));
    Ok(rep)
}

// ---- Y_c representations ----

/// Weighted-shift representation of the auxiliary algebra: the isometry part
/// of X acts as the unilateral shift with weights from the Wold analysis.
pub fn build_yc(params: &ParamSet) -> Result<Rep> {
    params.validate()?;
    if params.cutoff < 2 {
        return Err(Error::Param("yc needs cutoff >= 2".into()));
    }
    let q = params.q_f();
    let y0 = params.y0;
    // the infinite sphere substitutes c -> 1 in the decoupled relations
    let c = params.c_f().unwrap_or(1.0);
    let basis = Basis::ladder(params.cutoff);
    let dim = basis.len();
    let mut x_mat = SpMat::zeros(dim);
    let mut xs_mat = SpMat::zeros(dim);
    let mut y_diag = vec![re(0.0); dim];
    for i in 0..dim {
        let Label::N(n) = basis.label(i) else { unreachable!() };
        y_diag[i] = re(q.powi(2 * n as i32) * y0);
        let w_up = lambda_n_f(n + 1, q)
            * checked_sqrt(q.powi(2 * n as i32) * y0 * y0 + c, "X shift weight")?;
        if let Some(up) = basis.position(Label::N(n + 1)) {
            x_mat.set(up, i, re(w_up));
        }
        if n >= 1 {
            let w_down = lambda_n_f(n, q)
                * checked_sqrt(q.powi(2 * (n - 1) as i32) * y0 * y0 + c, "X* shift weight")?;
            xs_mat.set(i - 1, i, re(w_down));
        }
    }
    let mut rep = Rep {
        presentation_id: PresId::Yc,
        regime: regime_of(&params.c),
        params: params.clone(),
        kind: RepKind::Yc,
        basis,
        ops: BTreeMap::new(),
    };
    let x = Operator::new(x_mat, vec![(1, 0)], &rep.basis);
    let xs = Operator::new(xs_mat, vec![(-1, 0)], &rep.basis);
    rep.insert("X", x);
    rep.insert("X*", xs);
    let y_inv = y_diag.iter().map(|d| d.inv()).collect();
    rep.insert("Y", Operator::diagonal(y_diag));
    rep.insert("Y^-1", Operator::diagonal(y_inv));
    Ok(rep)
}

// ---- first family of cross product representations ----

/// The representations (I)_{+-,H} on the (n, j) grid, H realized by the
/// scalar h.  The square-root factors carrying lambda_{+-}^{-1} keep its sign,
/// which is what the defining relations force for the minus sector.
pub fn build_cross_i(params: &ParamSet) -> Result<Rep> {
    params.validate()?;
    let c = match &params.c {
        CParam::Finite(c) => c.to_f64().unwrap(),
        CParam::Infinite => {
            return Err(Error::Param(
                "the first family is built for finite c only".into(),
            ))
        }
    };
    if c == 0.0 && params.sign == Sign::Minus {
        return Err(Error::Param(
            "for c = 0 there is only the plus representation".into(),
        ));
    }
    let q = params.q_f();
    let h = params.h;
    let lam = lambda_pm(c, params.sign);
    let lam_inv = 1.0 / lam;
    let pf = pow_half(q, -1) / lambda_f(q);
    let basis = Basis::grid(params.cutoff);
    let dim = basis.len();
    let mut a_diag = vec![re(0.0); dim];
    let mut k_diag = vec![re(0.0); dim];
    let mut b_mat = SpMat::zeros(dim);
    let mut bs_mat = SpMat::zeros(dim);
    let mut e_mat = SpMat::zeros(dim);
    let mut f_mat = SpMat::zeros(dim);
    for (i, &label) in basis.labels().iter().enumerate() {
        let Label::Grid { n, j } = label else { unreachable!() };
        a_diag[i] = re(lam * q.powi(2 * n as i32));
        k_diag[i] = re(q.powi((n - j) as i32) * h);
        if n >= 1 {
            let w = sphere_weight(c, lam, q, n)?;
            b_mat.set(basis.position(Label::Grid { n: n - 1, j }).unwrap(), i, re(w));
        }
        if let Some(up) = basis.position(Label::Grid { n: n + 1, j }) {
            bs_mat.set(up, i, re(sphere_weight(c, lam, q, n + 1)?));
        }
        // E: (n, j) -> (n, j-1) and (n+1, j)
        if j >= 1 {
            let w = pf
                * q.powi(-n as i32)
                * lambda_n_f(j, q)
                * lam_inv
                * checked_sqrt(q.powi(-2 * j as i32) * c + lam * lam / h.powi(4), "E factor")?
                * h;
            e_mat.set(basis.position(Label::Grid { n, j: j - 1 }).unwrap(), i, re(w));
        }
        if let Some(up) = basis.position(Label::Grid { n: n + 1, j }) {
            let w = -pf
                * q.powi(-j as i32)
                * lam_inv
                * q.powi(-(n + 1) as i32)
                * sphere_weight(c, lam, q, n + 1)?
                * h;
            e_mat.set(up, i, re(w));
        }
        // F: (n, j) -> (n, j+1) and (n-1, j)
        if let Some(up) = basis.position(Label::Grid { n, j: j + 1 }) {
            let w = pf
                * q.powi(-n as i32)
                * lambda_n_f(j + 1, q)
                * lam_inv
                * checked_sqrt(
                    q.powi(-2 * (j + 1) as i32) * c + lam * lam / h.powi(4),
                    "F factor",
                )?
                * h;
            f_mat.set(up, i, re(w));
        }
        if n >= 1 {
            let w = -pf
                * q.powi(-j as i32)
                * lam_inv
                * q.powi(-n as i32)
                * sphere_weight(c, lam, q, n)?
                * h;
            f_mat.set(basis.position(Label::Grid { n: n - 1, j }).unwrap(), i, re(w));
        }
    }
    let mut rep = Rep {
        presentation_id: PresId::Cross,
        regime: Regime::CFinite,
        params: params.clone(),
        kind: RepKind::CrossI,
        basis,
        ops: BTreeMap::new(),
    };
    let a_inv = a_diag.iter().map(|d| d.inv()).collect();
    let k_inv = k_diag.iter().map(|d| d.inv()).collect();
    rep.insert("A", Operator::diagonal(a_diag));
    rep.insert("A^-1", Operator::diagonal(a_inv));
    rep.insert("K", Operator::diagonal(k_diag));
    rep.insert("K^-1", Operator::diagonal(k_inv));
    let b = Operator::new(b_mat, vec![(-1, 0)], &rep.basis);
    let bs = Operator::new(bs_mat, vec![(1, 0)], &rep.basis);
    let e = Operator::new(e_mat, vec![(0, -1), (1, 0)], &rep.basis);
    let f = Operator::new(f_mat, vec![(0, 1), (-1, 0)], &rep.basis);
    rep.insert("B", b);
    rep.insert("B*", bs);
    rep.insert("E", e);
    rep.insert("F", f);
    Ok(rep)
}

// ---- coefficient families of the second approach ----

fn qi(doubled_arg: i64, q: f64) -> f64 {
    // q-integer with an argument given in doubled form; all uses are integral
    debug_assert!(doubled_arg % 2 == 0);
    q_int_f(doubled_arg / 2, q)
}

fn check_l_range(l: HalfInt, p: &ParamSet) -> Result<()> {
    let d = l.doubled() - p.l0.doubled();
    if d < 0 || d % 2 != 0 {
        return Err(Error::Param(format!(
            "l = {} is not in l0 + N for l0 = {}",
            l, p.l0
        )));
    }
    Ok(())
}

/// beta^0(l, l) for the chosen sign: the closed-form solution of the diagonal
/// recurrence, seeded by the quadratic at l = l0.
pub fn coeff_beta0_ll(l: HalfInt, p: &ParamSet) -> Result<f64> {
    check_l_range(l, p)?;
    let q = p.q_f();
    let l2 = l.doubled();
    let l02 = p.l0.doubled();
    let bracket = qi(l2 - l02, q) * qi(l2 + l02 + 2, q);
    let qm2 = q.powi(-2);
    let value = match &p.c {
        CParam::Finite(c) => {
            let cf = c.to_f64().unwrap();
            let (lp, lm) = (lambda_pm(cf, p.sign), lambda_pm(cf, flip(p.sign)));
            qi(2 * l02, q) * (qm2 * lp - lm) - (1.0 - qm2) * bracket
        }
        CParam::Infinite => {
            p.sign.factor() * q.powi(-1) * q_int_f(2, q) * qi(2 * l02, q)
                - (1.0 - qm2) * bracket
        }
    };
    Ok(value / qi(2 * l2 + 4, q))
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

/// alpha^+(l, l) > 0 for the chosen sign.  For the infinite sphere the brace
/// carries [l - l0] (the [l - l0 + 1] in the printed solution is inconsistent
/// with the sphere relations at l = l0; see the relation checker).
pub fn coeff_alpha_plus_ll(l: HalfInt, p: &ParamSet) -> Result<f64> {
    check_l_range(l, p)?;
    let q = p.q_f();
    let l2 = l.doubled();
    let l02 = p.l0.doubled();
    let lam = lambda_f(q);
    let two = q_int_f(2, q);
    let rad = match &p.c {
        CParam::Finite(c) => {
            let cf = c.to_f64().unwrap();
            let brace = -lam / 2.0 * qi(l2 - l02 + 2, q) * qi(l2 + l02 + 2, q)
                + p.sign.factor() * qi(2 * l02, q) * (cf + 0.25).sqrt();
            qi(2 * l2 + 4, q).powi(2) * (cf + 0.25) - brace * brace
        }
        CParam::Infinite => {
            let brace = -lam / two * qi(l2 - l02, q) * qi(l2 + l02 + 2, q)
                + p.sign.factor() * qi(2 * l02, q);
            qi(2 * l2 + 4, q).powi(2) - brace * brace
        }
    };
    if rad <= 0.0 {
        return Err(Error::Construction(format!(
            "alpha^+({l},{l}) radicand {:.3e} <= 0 (l0 = {}, c = {}, sign {})",
            rad,
            p.l0,
            p.c,
            p.sign.name()
        )));
    }
    Ok((two / (qi(2 * l2 + 6, q) * qi(2 * l2 + 4, q)) * rad).sqrt())
}

/// Closed-form coefficient table for all (l, j), assembled from the recurrence
/// solutions seeded by [`coeff_alpha_plus_ll`] and [`coeff_beta0_ll`];
/// out-of-range entries are zero.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub rows: Vec<CoeffRow>,
}

#[derive(Clone, Copy, Debug)]
pub struct CoeffRow {
    pub l: HalfInt,
    pub j: HalfInt,
    pub alpha_plus: f64,
    pub alpha_zero: f64,
    pub alpha_minus: f64,
    pub beta_plus: f64,
    pub beta_zero: f64,
}

impl CoeffTable {
    pub fn get(&self, l: HalfInt, j: HalfInt) -> Option<&CoeffRow> {
        self.rows.iter().find(|r| r.l == l && r.j == j)
    }
}

pub fn coeff_table(p: &ParamSet, l_max: HalfInt) -> Result<CoeffTable> {
    check_l_range(l_max, p)?;
    let q = p.q_f();
    let l02 = p.l0.doubled();
    let mut a_seed: BTreeMap<i64, f64> = BTreeMap::new();
    let mut b_seed: BTreeMap<i64, f64> = BTreeMap::new();
    let mut l2 = l02;
    while l2 <= l_max.doubled() {
        let l = HalfInt::from_doubled(l2);
        a_seed.insert(l2, coeff_alpha_plus_ll(l, p)?);
        b_seed.insert(l2, coeff_beta0_ll(l, p)?);
        l2 += 2;
    }
    let two_sqrt = q_int_f(2, q).sqrt();
    let mut rows = vec![];
    let mut l2 = l02;
    while l2 <= l_max.doubled() {
        let a_ll = a_seed[&l2];
        let b_ll = b_seed[&l2];
        // seeds of the two lower recurrences
        let alpha0_seed = if l2 > 0 {
            -two_sqrt / qi(2 * l2, q).sqrt() * pow_half(q, l2 + 2) * b_ll
        } else {
            0.0
        };
        let alpham_seed = if l2 - 2 >= l02 && l2 >= 2 {
            -pow_half(q, 2 * l2 - 2) * two_sqrt / (qi(2 * l2 - 2, q) * qi(2 * l2, q)).sqrt()
                * a_seed[&(l2 - 2)]
        } else {
            0.0
        };
        let mut j2 = -l2;
        while j2 <= l2 {
            let alpha_plus = pow_half(q, j2 - l2)
                * (qi(l2 + j2 + 2, q) * qi(l2 + j2 + 4, q)).sqrt()
                / (qi(2 * l2 + 2, q) * qi(2 * l2 + 4, q)).sqrt()
                * a_ll;
            let alpha_zero = if j2 <= l2 - 2 {
                pow_half(q, j2 - l2 + 2) * (qi(l2 - j2, q) * qi(l2 + j2 + 2, q)).sqrt()
                    / qi(2 * l2, q).sqrt()
                    * alpha0_seed
            } else {
                0.0
            };
            let alpha_minus = if j2 <= l2 - 4 && l2 - 2 >= l02 {
                pow_half(q, j2 - l2 + 4) * (qi(l2 - j2 - 2, q) * qi(l2 - j2, q)).sqrt()
                    / two_sqrt
                    * alpham_seed
            } else {
                0.0
            };
            let beta_plus = pow_half(q, j2)
                * (qi(l2 - j2 + 2, q) * qi(l2 + j2 + 2, q)).sqrt()
                * two_sqrt
                / (qi(2 * l2 + 2, q) * qi(2 * l2 + 4, q)).sqrt()
                * a_ll;
            let beta_zero = if j2 == l2 {
                b_ll
            } else {
                (1.0 - pow_half(q, l2 + j2 + 2) * qi(l2 - j2, q) * q_int_f(2, q) / qi(2 * l2, q))
                    * b_ll
            };
            rows.push(CoeffRow {
                l: HalfInt::from_doubled(l2),
                j: HalfInt::from_doubled(j2),
                alpha_plus,
                alpha_zero,
                alpha_minus,
                beta_plus,
                beta_zero,
            });
            j2 += 2;
        }
        l2 += 2;
    }
    Ok(CoeffTable { rows })
}

// ---- second family of cross product representations ----

/// The spin-tower representations of the cross product: E, F, K act blockwise
/// by the spin formulas, x_1, x_0, x_{-1} by the final display formulas with
/// the seed coefficients of the chosen sign; A, B, B* via the generator
/// bridge.
pub fn build_cross_ii(params: &ParamSet, l_max: HalfInt) -> Result<Rep> {
    params.validate()?;
    if l_max.doubled() < params.l0.doubled() + 4 {
        return Err(Error::Param(format!(
            "cross2 needs l_max >= l0 + 2 (got l_max = {}, l0 = {})",
            l_max, params.l0
        )));
    }
    check_l_range(l_max, params)?;
    let q = params.q_f();
    let l02 = params.l0.doubled();
    let basis = Basis::spin_tower(l02, l_max.doubled());
    let dim = basis.len();
    let mut a_seed: BTreeMap<i64, f64> = BTreeMap::new();
    let mut b_seed: BTreeMap<i64, f64> = BTreeMap::new();
    {
        let mut l2 = l02;
        while l2 <= l_max.doubled() {
            let l = HalfInt::from_doubled(l2);
            a_seed.insert(l2, coeff_alpha_plus_ll(l, params)?);
            b_seed.insert(l2, coeff_beta0_ll(l, params)?);
            l2 += 2;
        }
    }
    let two = q_int_f(2, q);
    let two_sqrt = two.sqrt();
    let mut x1_mat = SpMat::zeros(dim);
    let mut x0_mat = SpMat::zeros(dim);
    let mut xm1_mat = SpMat::zeros(dim);
    let mut e_mat = SpMat::zeros(dim);
    let mut f_mat = SpMat::zeros(dim);
    let mut k_diag = vec![re(0.0); dim];
    for (i, &label) in basis.labels().iter().enumerate() {
        let Label::Spin { l2, j2 } = label else { unreachable!() };
        let a_ll = a_seed[&l2];
        let b_ll = b_seed[&l2];
        let a_prev = a_seed.get(&(l2 - 2)).copied();
        k_diag[i] = re(pow_half(q, j2));
        if let Some(up) = basis.position(Label::Spin { l2, j2: j2 + 2 }) {
            let w = (qi(l2 - j2, q) * qi(l2 + j2 + 2, q)).sqrt();
            e_mat.set(up, i, re(w));
        }
        if let Some(down) = basis.position(Label::Spin { l2, j2: j2 - 2 }) {
            let w = (qi(l2 - j2 + 2, q) * qi(l2 + j2, q)).sqrt();
            f_mat.set(down, i, re(w));
        }
        // x_1: raises j by 1, moves l by +1, 0, -1
        if let Step::Inside(t) = basis.step(label, (2, 2)) {
            let w = pow_half(q, j2 - l2)
                * (qi(l2 + j2 + 2, q) * qi(l2 + j2 + 4, q)).sqrt()
                / (qi(2 * l2 + 2, q) * qi(2 * l2 + 4, q)).sqrt()
                * a_ll;
            x1_mat.set(t, i, re(w));
        }
        if let Step::Inside(t) = basis.step(label, (0, 2)) {
            let w = -pow_half(q, j2 + 4)
                * (qi(l2 - j2, q) * qi(l2 + j2 + 2, q)).sqrt()
                * two_sqrt
                / qi(2 * l2, q)
                * b_ll;
            x1_mat.set(t, i, re(w));
        }
        if let (Step::Inside(t), Some(ap)) = (basis.step(label, (-2, 2)), a_prev) {
            let w = -pow_half(q, l2 + j2 + 2)
                * (qi(l2 - j2 - 2, q) * qi(l2 - j2, q)).sqrt()
                / (qi(2 * l2 - 2, q) * qi(2 * l2, q)).sqrt()
                * ap;
            x1_mat.set(t, i, re(w));
        }
        // x_0: diagonal in j, moves l by +1, 0, -1
        if let Step::Inside(t) = basis.step(label, (2, 0)) {
            let w = pow_half(q, j2)
                * (qi(l2 - j2 + 2, q) * qi(l2 + j2 + 2, q)).sqrt()
                * two_sqrt
                / (qi(2 * l2 + 2, q) * qi(2 * l2 + 4, q)).sqrt()
                * a_ll;
            x0_mat.set(t, i, re(w));
        }
        {
            let factor = if j2 == l2 {
                1.0
            } else {
                1.0 - pow_half(q, l2 + j2 + 2) * qi(l2 - j2, q) * two / qi(2 * l2, q)
            };
            x0_mat.set(i, i, re(factor * b_ll));
        }
        if let (Step::Inside(t), Some(ap)) = (basis.step(label, (-2, 0)), a_prev) {
            let w = pow_half(q, j2)
                * (qi(l2 - j2, q) * qi(l2 + j2, q)).sqrt()
                * two_sqrt
                / (qi(2 * l2 - 2, q) * qi(2 * l2, q)).sqrt()
                * ap;
            x0_mat.set(t, i, re(w));
        }
        // x_{-1}: lowers j by 1, moves l by +1, 0, -1
        if let Step::Inside(t) = basis.step(label, (2, -2)) {
            let w = pow_half(q, l2 + j2)
                * (qi(l2 - j2 + 2, q) * qi(l2 - j2 + 4, q)).sqrt()
                / (qi(2 * l2 + 2, q) * qi(2 * l2 + 4, q)).sqrt()
                * a_ll;
            xm1_mat.set(t, i, re(w));
        }
        if let Step::Inside(t) = basis.step(label, (0, -2)) {
            let w = pow_half(q, j2)
                * (qi(l2 - j2 + 2, q) * qi(l2 + j2, q)).sqrt()
                * two_sqrt
                / qi(2 * l2, q)
                * b_ll;
            xm1_mat.set(t, i, re(w));
        }
        if let (Step::Inside(t), Some(ap)) = (basis.step(label, (-2, -2)), a_prev) {
            let w = -pow_half(q, j2 - l2 - 2)
                * (qi(l2 + j2 - 2, q) * qi(l2 + j2, q)).sqrt()
                / (qi(2 * l2 - 2, q) * qi(2 * l2, q)).sqrt()
                * ap;
            xm1_mat.set(t, i, re(w));
        }
    }
    let mut rep = Rep {
        presentation_id: PresId::Cross,
        regime: regime_of(&params.c),
        params: params.clone(),
        kind: RepKind::CrossII { l_max },
        basis,
        ops: BTreeMap::new(),
    };
    let x1 = Operator::new(x1_mat, vec![(2, 2), (0, 2), (-2, 2)], &rep.basis);
    let x0 = Operator::new(x0_mat, vec![(2, 0), (0, 0), (-2, 0)], &rep.basis);
    let xm1 = Operator::new(xm1_mat, vec![(2, -2), (0, -2), (-2, -2)], &rep.basis);
    rep.insert("x1", x1);
    rep.insert("x0", x0);
    rep.insert("x-1", xm1);
    let e = Operator::new(e_mat, vec![(0, 2)], &rep.basis);
    let f = Operator::new(f_mat, vec![(0, -2)], &rep.basis);
    rep.insert("E", e);
    rep.insert("F", f);
    let k_inv = k_diag.iter().map(|d| d.inv()).collect();
    rep.insert("K", Operator::diagonal(k_diag));
    rep.insert("K^-1", Operator::diagonal(k_inv));
    let (a, b, bs) = x_to_abb(&rep)?;
    rep.insert("A", a);
    rep.insert("B", b);
    rep.insert("B*", bs);
    Ok(rep)
}

/// Recover A, B, B* from the x-generators: the inverse of the linear bridge
/// x_{-1} = q^{-1}(1+q^2)^{1/2} B, x_1 = -(1+q^2)^{1/2} B*,
/// x_0 = 1 - (1+q^2) A (finite c) resp. x_0 = -(1+q^2) A (infinite c).
pub fn x_to_abb(r: &Rep) -> Result<(Operator, Operator, Operator)> {
    let q = r.params.q_f();
    let opq = 1.0 + q * q;
    let x1 = r.op("x1")?;
    let x0 = r.op("x0")?;
    let xm1 = r.op("x-1")?;
    let a = match r.regime {
        Regime::CFinite => Operator::identity(r.dim())
            .sub(x0)
            .scale(re(1.0 / opq)),
        Regime::CInfinite => x0.scale(re(-1.0 / opq)),
    };
    let b = xm1.scale(re(q / opq.sqrt()));
    let bs = x1.scale(re(-1.0 / opq.sqrt()));
    Ok((a, b, bs))
}

// ---- JSON export ----

fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn rep_to_json(rep: &Rep) -> Value {
    let p = &rep.params;
    let mut params = serde_json::Map::new();
    params.insert("rep".into(), json!(rep.kind.name()));
    params.insert("q".into(), json!(rat_str(&p.q)));
    params.insert("c".into(), json!(p.c.to_string()));
    params.insert("sign".into(), json!(p.sign.name()));
    params.insert("l0".into(), json!(p.l0.to_string()));
    params.insert("h".into(), json!(p.h));
    params.insert("y0".into(), json!(p.y0));
    params.insert("u_phase".into(), json!([p.u_phase.re, p.u_phase.im]));
    params.insert("cutoff".into(), json!(p.cutoff));
    match &rep.kind {
        RepKind::CrossII { l_max } => {
            params.insert("lmax".into(), json!(l_max.to_string()));
        }
        RepKind::Spin { l } => {
            params.insert("l".into(), json!(l.to_string()));
        }
        RepKind::Podles { sector } => {
            params.insert("sector".into(), json!(sector.name()));
        }
        _ => {}
    }
    let basis: Vec<Value> = rep.basis.labels().iter().map(|l| l.to_json()).collect();
    let mut operators = serde_json::Map::new();
    for (name, op) in &rep.ops {
        let triples: Vec<Value> = op
            .mat
            .iter()
            .map(|(r, c, v)| json!([r, c, v.re, v.im]))
            .collect();
        operators.insert(name.clone(), Value::Array(triples));
    }
    json!({
        "params": Value::Object(params),
        "presentation": rep.presentation_id.name(),
        "basis": basis,
        "operators": Value::Object(operators),
    })
}

#[cfg(test)]
mod tests;
