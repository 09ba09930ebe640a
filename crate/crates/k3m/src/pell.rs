//! Pell-type equations.
//!
//! The classical equation `a² − e·b² = t` and the generalized equation
//! `e1·a² − e2·b² = t` are solved exactly.  For a nonsquare `d` the solutions
//! of `x² − d·y² = N` fall into finitely many classes, each of the form
//! `±(x + y√d)·x1ⁿ` where `x1 = a1 + b1√d` is the fundamental unit.  One
//! representative per class is found with the continued-fraction method of
//! Lagrange–Matthews–Mollin (every class of primitive solutions corresponds
//! to a square root of `d` modulo `N/f²`), which stays fast even when the
//! fundamental unit is astronomically large.  The generalized equation is
//! reduced to `x² − e1e2·y² = e1·t` with `x = e1·a`.
//!
//! A *positive* solution has `a > 0` and `b > 0`; the *minimal* solution is the
//! positive solution with the smallest `a`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::exact_sqrt;

/// Errors raised by the Pell solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    /// The equation `a² − d·b² = 1` with `d` a perfect square only has `(±1, 0)`.
    #[error("PerfectSquareInput: {0} is a perfect square")]
    PerfectSquareInput(i64),
    /// The requested stream is empty because the equation has no solution.
    #[error("Unsolvable: {0} has no positive solution")]
    Unsolvable(String),
    /// The composition law is stated away from two degenerate parameter sets.
    #[error("ExcludedDegenerateCase: e1={e1}, e2={e2}, eps={eps}")]
    ExcludedDegenerateCase { e1: i64, e2: i64, eps: i64 },
    /// A supplied pair does not solve the stated equation (or is not minimal
    /// where minimality is required).
    #[error("WrongEquation: {0}")]
    WrongEquation(String),
    /// Type invariants of [`PellEquation`] violated.
    #[error("InvalidEquation: {0}")]
    InvalidEquation(String),
}

/// The equation `e1·a² − e2·b² = t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PellEquation {
    pub e1: i64,
    pub e2: i64,
    pub t: i64,
}

impl PellEquation {
    /// `e1·a² − e2·b² = t`, checking `e1, e2 ≥ 1` and `t ≠ 0`.
    pub fn new(e1: i64, e2: i64, t: i64) -> Result<Self, PellError> {
        if e1 < 1 || e2 < 1 || t == 0 {
            return Err(PellError::InvalidEquation(format!(
                "need e1 ≥ 1, e2 ≥ 1, t ≠ 0 (got e1={e1}, e2={e2}, t={t})"
            )));
        }
        Ok(Self { e1, e2, t })
    }

    /// The classical equation `a² − e·b² = t`.
    pub fn classical(e: i64, t: i64) -> Result<Self, PellError> {
        Self::new(1, e, t)
    }

    /// Whether `(a, b)` solves the equation.
    pub fn is_solution(&self, s: &PellSolution) -> bool {
        BigInt::from(self.e1) * &s.a * &s.a - BigInt::from(self.e2) * &s.b * &s.b == BigInt::from(self.t)
    }
}

impl std::fmt::Display for PellEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e1 == 1 {
            write!(f, "a^2-{}b^2={}", self.e2, self.t)
        } else {
            write!(f, "{}a^2-{}b^2={}", self.e1, self.e2, self.t)
        }
    }
}

/// An integer pair `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub b: BigInt,
}

impl PellSolution {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `a > 0` and `b > 0`.
    pub fn is_positive(&self) -> bool {
        self.a.is_positive() && self.b.is_positive()
    }
}

impl std::fmt::Display for PellSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One class of solutions of `a² − d·b² = t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionClass {
    /// The minimal positive solution of the class.
    pub representative: PellSolution,
    /// Index (in the returned list) of the conjugate class, i.e. the class of
    /// `(a, −b)`; `None` when the class is self-conjugate.
    pub conjugate_of: Option<usize>,
}

/// Which kinds of solutions an equation admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Solvability {
    /// Some solution has `b ≠ 0`.
    pub nontrivial: bool,
    /// Some solution has `b = 0` (possible only when `t/e1` is a square).
    pub trivial: bool,
}

impl Solvability {
    /// Either kind of solution exists.
    pub fn any(&self) -> bool {
        self.nontrivial || self.trivial
    }
}

// ---------------------------------------------------------------------------
// Quadratic integers x + y√d.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Quad {
    x: BigInt,
    y: BigInt,
}

impl Quad {
    fn mul(&self, o: &Quad, d: &BigInt) -> Quad {
        Quad {
            x: &self.x * &o.x + d * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
    fn conj(&self) -> Quad {
        Quad {
            x: self.x.clone(),
            y: -&self.y,
        }
    }
    fn neg(&self) -> Quad {
        Quad {
            x: -&self.x,
            y: -&self.y,
        }
    }
    /// Sign of the real number `x + y√d` (d nonsquare).
    fn signum(&self, d: &BigInt) -> i32 {
        let sx = sign(&self.x);
        let sy = sign(&self.y);
        if sx >= 0 && sy >= 0 {
            return if sx == 0 && sy == 0 { 0 } else { 1 };
        }
        if sx <= 0 && sy <= 0 {
            return -1;
        }
        // Opposite signs: compare x² with d·y².
        let lhs = &self.x * &self.x;
        let rhs = d * &self.y * &self.y;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => 0,
        }
    }
    fn to_solution(&self) -> PellSolution {
        PellSolution::new(self.x.clone(), self.y.clone())
    }
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Fundamental units.

/// Minimal positive solution of `a² − d·b² = ±1` obtained from the continued
/// fraction of √d: the first convergent with norm `±1`.  Returns the pair
/// and the norm.
fn first_unit(d: &BigInt) -> (Quad, i32) {
    let a0 = d.sqrt();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut qq) = (BigInt::zero(), BigInt::one());
    loop {
        let norm = &p * &p - d * &qq * &qq;
        if norm.is_one() {
            return (Quad { x: p, y: qq }, 1);
        }
        if norm == -BigInt::one() {
            return (Quad { x: p, y: qq }, -1);
        }
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &qq + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut qq, q_next);
    }
}

fn fundamental_big(d: &BigInt) -> Quad {
    let (u, n) = first_unit(d);
    if n == 1 {
        u
    } else {
        u.mul(&u, d)
    }
}

fn neg_unit_big(d: &BigInt) -> Option<Quad> {
    let (u, n) = first_unit(d);
    (n == -1).then_some(u)
}

/// Minimal positive solution `(a1, b1)` of `a² − d·b² = 1`.
pub fn fundamental_solution(d: i64) -> Result<PellSolution, PellError> {
    if d <= 0 {
        return Err(PellError::InvalidEquation(format!("d must be positive, got {d}")));
    }
    let db = BigInt::from(d);
    if exact_sqrt(&db).is_some() {
        return Err(PellError::PerfectSquareInput(d));
    }
    Ok(fundamental_big(&db).to_solution())
}

// ---------------------------------------------------------------------------
// Class representatives for x² − d·y² = n (d nonsquare).

fn floor_quadratic(p: &BigInt, q: &BigInt, isqrt_d: &BigInt) -> BigInt {
    // floor((p + √d)/q) for nonsquare d.
    if q.is_positive() {
        (p + isqrt_d).div_floor(q)
    } else {
        -((p + isqrt_d).div_floor(&-q) + BigInt::one())
    }
}

/// One solution per class of `x² − d·y² = n`, possibly with duplicates and in
/// no particular normalization.
fn raw_representatives(d: &BigInt, n: &BigInt) -> Vec<Quad> {
    let mut reps = Vec::new();
    let isqrt_d = d.sqrt();
    let neg_unit = neg_unit_big(d);
    let abs_n = n.abs();
    let mut f = BigInt::one();
    while &f * &f <= abs_n {
        let f2 = &f * &f;
        if (n % &f2).is_zero() {
            let m = n / &f2;
            let am = m.abs();
            // z ranges over (−|m|/2, |m|/2] with z² ≡ d (mod |m|).
            let lo = -(&am - BigInt::one()) / BigInt::from(2);
            let hi = &am / BigInt::from(2);
            let mut z = lo;
            while z <= hi {
                if ((&z * &z - d).mod_floor(&am)).is_zero() {
                    if let Some(sol) = lmm_branch(d, &isqrt_d, &m, &am, &z, neg_unit.as_ref()) {
                        reps.push(Quad {
                            x: &f * sol.x,
                            y: &f * sol.y,
                        });
                    }
                }
                z += 1;
            }
        }
        f += 1;
    }
    reps
}

/// Continued fraction of `(z + √d)/|m|`: the first `Q_i = ±1` with `i ≥ 1`
/// before the expansion repeats yields a primitive solution of
/// `x² − d·y² = ±m`; the sign is fixed with the norm −1 unit when possible.
fn lmm_branch(
    d: &BigInt,
    isqrt_d: &BigInt,
    m: &BigInt,
    am: &BigInt,
    z: &BigInt,
    neg_unit: Option<&Quad>,
) -> Option<Quad> {
    let (p0, q0) = (z.clone(), am.clone());
    let (mut p, mut q) = (p0.clone(), q0.clone());
    let (mut a_prev, mut a_cur) = (BigInt::zero(), BigInt::one()); // A_{i-2}, A_{i-1}
    let (mut b_prev, mut b_cur) = (BigInt::one(), BigInt::zero()); // B_{i-2}, B_{i-1}
    let mut seen: HashSet<(BigInt, BigInt)> = HashSet::new();
    let mut i: u64 = 0;
    loop {
        if i >= 1 && (q.is_one() || q == -BigInt::one()) {
            // G_{i-1} = Q0·A_{i-1} − P0·B_{i-1}, B_{i-1}.
            let g = &q0 * &a_cur - &p0 * &b_cur;
            let cand = Quad { x: g, y: b_cur.clone() };
            let norm = &cand.x * &cand.x - d * &cand.y * &cand.y;
            if &norm == m {
                return Some(cand);
            }
            debug_assert_eq!(norm, -m);
            if norm != -m {
                return None;
            }
            return neg_unit.map(|u| cand.mul(u, d));
        }
        if !seen.insert((p.clone(), q.clone())) {
            return None;
        }
        let a = floor_quadratic(&p, &q, isqrt_d);
        let a_next = &a * &a_cur + &a_prev;
        let b_next = &a * &b_cur + &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
        i += 1;
    }
}

/// Minimal positive element of the class of `alpha` under `±x1ⁿ`.
fn class_minimal_positive(alpha: &Quad, d: &BigInt, unit: &Quad) -> Quad {
    let unit_inv = unit.conj();
    let mut cur = if alpha.signum(d) < 0 {
        alpha.neg()
    } else {
        alpha.clone()
    };
    let is_pos = |q: &Quad| q.x.is_positive() && q.y.is_positive();
    while !is_pos(&cur) {
        cur = cur.mul(unit, d);
    }
    loop {
        let down = cur.mul(&unit_inv, d);
        if is_pos(&down) {
            cur = down;
        } else {
            return cur;
        }
    }
}

/// Whether `alpha/beta` is an integral unit, i.e. both lie in one class of
/// `x² − d·y² = n`.
fn quads_same_class(alpha: &Quad, beta: &Quad, d: &BigInt, n: &BigInt) -> bool {
    let prod = alpha.mul(&beta.conj(), d);
    (&prod.x % n).is_zero() && (&prod.y % n).is_zero()
}

/// Class-minimal positive representatives of `x² − d·y² = n`, sorted by `x`,
/// together with the conjugate links.
fn classes_big(d: &BigInt, n: &BigInt) -> Vec<(Quad, Option<usize>)> {
    let unit = fundamental_big(d);
    let mut reps: Vec<Quad> = Vec::new();
    let mut raw = raw_representatives(d, n);
    let conjugates: Vec<Quad> = raw.iter().map(Quad::conj).collect();
    raw.extend(conjugates);
    for r in raw {
        let c = class_minimal_positive(&r, d, &unit);
        if !reps.iter().any(|s| quads_same_class(s, &c, d, n)) {
            reps.push(c);
        }
    }
    reps.sort_by(|p, q| p.x.cmp(&q.x).then(p.y.cmp(&q.y)));
    let links: Vec<Option<usize>> = reps
        .iter()
        .map(|r| {
            let cj = r.conj();
            let j = reps
                .iter()
                .position(|s| quads_same_class(s, &cj, d, n))
                .expect("the conjugate of a solution is a solution");
            let self_conj = quads_same_class(r, &cj, d, n);
            (!self_conj).then_some(j)
        })
        .collect();
    reps.into_iter().zip(links).collect()
}

/// Solution classes of `a² − d·b² = t` for nonsquare `d`, each represented by
/// its minimal positive solution, sorted by increasing `a`.
pub fn solution_classes(d: i64, t: i64) -> Result<Vec<SolutionClass>, PellError> {
    let db = nonsquare(d)?;
    if t == 0 {
        return Err(PellError::InvalidEquation("t must be nonzero".into()));
    }
    Ok(classes_big(&db, &BigInt::from(t))
        .into_iter()
        .map(|(q, link)| SolutionClass {
            representative: q.to_solution(),
            conjugate_of: link,
        })
        .collect())
}

fn nonsquare(d: i64) -> Result<BigInt, PellError> {
    if d <= 0 {
        return Err(PellError::InvalidEquation(format!("d must be positive, got {d}")));
    }
    let db = BigInt::from(d);
    if exact_sqrt(&db).is_some() {
        return Err(PellError::PerfectSquareInput(d));
    }
    Ok(db)
}

#[derive(PartialEq, Eq)]
struct HeapItem(Quad);

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on (x, y).
        other.0.x.cmp(&self.0.x).then(other.0.y.cmp(&self.0.y))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lazily merged stream of positive solutions of `x² − d·y² = n` in
/// increasing order of `x` (d nonsquare).
struct PositiveStream {
    d: BigInt,
    unit: Quad,
    heap: BinaryHeap<HeapItem>,
}

impl PositiveStream {
    fn new(d: &BigInt, n: &BigInt) -> Self {
        let heap = classes_big(d, n).into_iter().map(|(q, _)| HeapItem(q)).collect();
        Self {
            d: d.clone(),
            unit: fundamental_big(d),
            heap,
        }
    }
}

impl Iterator for PositiveStream {
    type Item = Quad;
    fn next(&mut self) -> Option<Quad> {
        let HeapItem(q) = self.heap.pop()?;
        self.heap.push(HeapItem(q.mul(&self.unit, &self.d)));
        Some(q)
    }
}

/// The first `count` positive solutions of `a² − d·b² = t`, by increasing `a`.
pub fn solutions_in_order(d: i64, t: i64, count: usize) -> Result<Vec<PellSolution>, PellError> {
    let db = nonsquare(d)?;
    if t == 0 {
        return Err(PellError::InvalidEquation("t must be nonzero".into()));
    }
    let mut stream = PositiveStream::new(&db, &BigInt::from(t));
    if stream.heap.is_empty() {
        return Err(PellError::Unsolvable(format!("a^2-{d}b^2={t}")));
    }
    Ok((0..count)
        .map(|_| stream.next().expect("nonempty stream is infinite").to_solution())
        .collect())
}

/// Positive solutions of `a² − d·b² = t` in increasing order of `a`, as an
/// unbounded iterator (empty when the equation is unsolvable).
pub fn positive_solutions(d: i64, t: i64) -> Result<impl Iterator<Item = PellSolution>, PellError> {
    let db = nonsquare(d)?;
    if t == 0 {
        return Err(PellError::InvalidEquation("t must be nonzero".into()));
    }
    Ok(PositiveStream::new(&db, &BigInt::from(t)).map(|q| q.to_solution()))
}

// ---------------------------------------------------------------------------
// Perfect-square discriminants.

/// All positive solutions of `x² − r²·y² = n` (r ≥ 1), sorted by `x`:
/// `(x − r·y)(x + r·y) = n` runs over the factorisations `n = u·v`.
fn square_case_positive(r: &BigInt, n: &BigInt) -> Vec<Quad> {
    let mut out = Vec::new();
    let an = n.abs();
    let two_r = r * BigInt::from(2);
    let mut g = BigInt::one();
    while g <= an {
        if (&an % &g).is_zero() {
            for u in [g.clone(), -g.clone()] {
                let v = n / &u;
                let sum = &u + &v;
                let diff = &v - &u;
                if sum.is_even() && (&diff % &two_r).is_zero() {
                    let x: BigInt = sum / 2;
                    let y = diff / &two_r;
                    if x.is_positive() && y.is_positive() {
                        out.push(Quad { x, y });
                    }
                }
            }
        }
        g += 1;
    }
    out.sort_by(|p, q| p.x.cmp(&q.x).then(p.y.cmp(&q.y)));
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Minimal solutions.

/// Minimal positive solution of `e1·a² − e2·b² = t`, if any.
pub fn min_positive_solution(eq: &PellEquation) -> Option<PellSolution> {
    generalized_min(eq.e1, eq.e2, eq.t)
}

/// Minimal positive solution of `e1·a² − e2·b² = t`: positive solutions of
/// `x² − e1e2·y² = e1·t` whose first coordinate is divisible by `e1` are
/// exactly the images `x = e1·a`, `y = b`.
pub fn generalized_min(e1: i64, e2: i64, t: i64) -> Option<PellSolution> {
    if e1 < 1 || e2 < 1 || t == 0 {
        return None;
    }
    let d = BigInt::from(e1) * BigInt::from(e2);
    let n = BigInt::from(e1) * BigInt::from(t);
    let e1b = BigInt::from(e1);
    let best = if let Some(r) = exact_sqrt(&d) {
        square_case_positive(&r, &n)
            .into_iter()
            .find(|q| (&q.x % &e1b).is_zero())
    } else {
        let unit = fundamental_big(&d);
        classes_big(&d, &n)
            .into_iter()
            .filter_map(|(rep, _)| first_divisible_in_class(&rep, &unit, &d, &e1b))
            .min_by(|p, q| p.x.cmp(&q.x))
    };
    best.map(|q| PellSolution::new(q.x / &e1b, q.y))
}

/// Positive solutions of `e1·a² − e2·b² = t` in increasing order of `a`.
/// The stream is finite when `e1·e2` is a perfect square and otherwise empty
/// or infinite.
pub fn generalized_positive_solutions(e1: i64, e2: i64, t: i64) -> Box<dyn Iterator<Item = PellSolution>> {
    if e1 < 1 || e2 < 1 || t == 0 || generalized_min(e1, e2, t).is_none() {
        return Box::new(std::iter::empty());
    }
    let d = BigInt::from(e1) * BigInt::from(e2);
    let n = BigInt::from(e1) * BigInt::from(t);
    let e1b = BigInt::from(e1);
    let keep = move |q: Quad| (&q.x % &e1b).is_zero().then(|| PellSolution::new(&q.x / &e1b, q.y));
    if let Some(r) = exact_sqrt(&d) {
        Box::new(square_case_positive(&r, &n).into_iter().filter_map(keep))
    } else {
        // Some class meets the divisibility condition, and then does so
        // periodically, so the filtered stream never stalls.
        Box::new(PositiveStream::new(&d, &n).filter_map(keep))
    }
}

/// First element `rep·x1^k` (k ≥ 0) whose `x` is divisible by `modulus`; the
/// residues modulo `modulus` are purely periodic, so the search stops after
/// one period.
fn first_divisible_in_class(rep: &Quad, unit: &Quad, d: &BigInt, modulus: &BigInt) -> Option<Quad> {
    if modulus.is_one() {
        return Some(rep.clone());
    }
    let start = (rep.x.mod_floor(modulus), rep.y.mod_floor(modulus));
    let mut cur = rep.clone();
    loop {
        if (&cur.x % modulus).is_zero() {
            return Some(cur);
        }
        cur = cur.mul(unit, d);
        if (cur.x.mod_floor(modulus), cur.y.mod_floor(modulus)) == start {
            return None;
        }
    }
}

/// Whether `e1·a² − e2·b² = t` has solutions with `b ≠ 0` and/or `b = 0`.
pub fn is_solvable(eq: &PellEquation) -> Solvability {
    let (e1, e2, t) = (eq.e1, eq.e2, eq.t);
    let trivial = t % e1 == 0 && t / e1 > 0 && crate::arith::is_square_i64(t / e1);
    let zero_a = t < 0 && (-t) % e2 == 0 && crate::arith::is_square_i64(-t / e2);
    let nontrivial = zero_a || generalized_min(e1, e2, t).is_some();
    Solvability { nontrivial, trivial }
}

/// Whether the equation has a positive solution (`a, b > 0`).
pub fn has_positive_solution(e1: i64, e2: i64, t: i64) -> bool {
    generalized_min(e1, e2, t).is_some()
}

/// Whether `s1` and `s2`, both solutions of `a² − d·b² = t`, differ by a unit
/// `±x1ⁿ`.
pub fn same_class(d: i64, t: i64, s1: &PellSolution, s2: &PellSolution) -> Result<bool, PellError> {
    let db = nonsquare(d)?;
    let eq = PellEquation::classical(d, t)?;
    for s in [s1, s2] {
        if !eq.is_solution(s) {
            return Err(PellError::WrongEquation(format!("{s} does not solve {eq}")));
        }
    }
    let q1 = Quad {
        x: s1.a.clone(),
        y: s1.b.clone(),
    };
    let q2 = Quad {
        x: s2.a.clone(),
        y: s2.b.clone(),
    };
    Ok(quads_same_class(&q1, &q2, &db, &BigInt::from(t)))
}

/// Composition law: if `(a, b)` is the minimal solution of
/// `e1·a² − e2·b² = ε`, then `(e1·a² + e2·b², 2ab)` is the minimal solution
/// of `a² − e1e2·b² = 1`.
pub fn compose_to_unit(e1: i64, e2: i64, eps: i64, s: &PellSolution) -> Result<PellSolution, PellError> {
    if eps != 1 && eps != -1 {
        return Err(PellError::InvalidEquation(format!("eps must be ±1, got {eps}")));
    }
    if (e1 == 1 && eps == 1) || (e2 == 1 && eps == -1) {
        return Err(PellError::ExcludedDegenerateCase { e1, e2, eps });
    }
    let eq = PellEquation::new(e1, e2, eps)?;
    if !eq.is_solution(s) {
        return Err(PellError::WrongEquation(format!("{s} does not solve {eq}")));
    }
    if generalized_min(e1, e2, eps).as_ref() != Some(s) {
        return Err(PellError::WrongEquation(format!(
            "{s} is not the minimal solution of {eq}"
        )));
    }
    let a2 = &s.a * &s.a;
    let b2 = &s.b * &s.b;
    Ok(PellSolution::new(
        BigInt::from(e1) * a2 + BigInt::from(e2) * b2,
        BigInt::from(2) * &s.a * &s.b,
    ))
}
