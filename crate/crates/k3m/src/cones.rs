//! Nef and movable cones in Picard rank two.
//!
//! For a K3 surface `S` with `Pic(S) = Z·L`, `L² = 2e`, the Picard group of
//! `S^[m]` is `Z·L_m ⊕ Z·δ` with `L_m² = 2e`, `δ² = −2(m−1)`.  Both cones
//! have `L_m` as one extremal ray; the other ray `L_m − μ·δ` is recorded by
//! its slope `μ` (δ-coefficient over L-coefficient).  For fourfolds with
//! `Pic = Z·H ⊕ Z·L`, `diag(2n, −2e')`, the rays are `H ± μ·L`.
//!
//! The walls of the chamber decomposition of the movable cone are reported as
//! the slopes of the rays orthogonal to the wall classes; they lie in
//! `[nef, mov)`, the nef boundary itself being the first wall.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{exact_sqrt, exact_sqrt_i64, render_rational};
use crate::pell::{fundamental_solution, generalized_min, generalized_positive_solutions, PellSolution};

/// Errors raised by cone computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("UnsupportedM: wall lists are available for m ∈ {{2,3,4}} (got {0})")]
    UnsupportedM(i64),
    #[error("BadCongruence: {0}")]
    BadCongruence(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

// ---------------------------------------------------------------------------
// Exact slopes.

/// A nonnegative extremal slope: a rational number or the square root of a
/// positive rational that is not a square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtremalSlope {
    Rational(BigRational),
    SqrtRational(BigRational),
}

impl ExtremalSlope {
    /// `√r`, collapsed to a rational when `r` is a rational square.
    pub fn sqrt_of(r: BigRational) -> Self {
        assert!(!r.is_negative(), "radicand must be nonnegative");
        match (exact_sqrt(r.numer()), exact_sqrt(r.denom())) {
            (Some(p), Some(q)) => ExtremalSlope::Rational(BigRational::new(p, q)),
            _ => ExtremalSlope::SqrtRational(r),
        }
    }

    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        ExtremalSlope::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExtremalSlope::Rational(_))
    }

    /// The square of the slope (exact).
    pub fn squared(&self) -> BigRational {
        match self {
            ExtremalSlope::Rational(r) => r * r,
            ExtremalSlope::SqrtRational(r) => r.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtremalSlope::Rational(r) => Some(r),
            ExtremalSlope::SqrtRational(_) => None,
        }
    }

    /// Exact comparison with a rational of any sign.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        if x.is_negative() {
            return Ordering::Greater;
        }
        self.squared().cmp(&(x * x))
    }
}

impl Ord for ExtremalSlope {
    fn cmp(&self, other: &Self) -> Ordering {
        // Both sides are nonnegative, so squaring preserves the order.
        self.squared().cmp(&other.squared())
    }
}

impl PartialOrd for ExtremalSlope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtremalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalSlope::Rational(r) => write!(f, "{}", render_rational(r)),
            ExtremalSlope::SqrtRational(r) => write!(f, "sqrt({})", render_rational(r)),
        }
    }
}

impl Serialize for ExtremalSlope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn ser_rational_list<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&render_rational(x))?;
    }
    seq.end()
}

/// Wall slopes of a chamber decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Walls {
    Finite {
        #[serde(serialize_with = "ser_rational_list")]
        slopes: Vec<BigRational>,
    },
    /// Infinitely many walls; `prefix` lists those coming from the first
    /// solutions of the governing equation.
    InfinitelyMany {
        #[serde(serialize_with = "ser_rational_list")]
        prefix: Vec<BigRational>,
    },
}

impl Walls {
    pub fn slopes(&self) -> &[BigRational] {
        match self {
            Walls::Finite { slopes } => slopes,
            Walls::InfinitelyMany { prefix } => prefix,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Walls::Finite { slopes } if slopes.is_empty())
    }
}

/// Extremal slopes and walls of a Picard-rank-two manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub mov_slope: ExtremalSlope,
    pub nef_slope: ExtremalSlope,
    pub interior_walls: Walls,
    pub nef_equals_mov: bool,
}

/// The class `c_l·L_m − c_delta·δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DivisorClass {
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub c_l: BigInt,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub c_delta: BigInt,
}

impl DivisorClass {
    pub fn new(c_l: impl Into<BigInt>, c_delta: impl Into<BigInt>) -> Self {
        Self {
            c_l: c_l.into(),
            c_delta: c_delta.into(),
        }
    }

    /// `2e·c_l² − 2(m−1)·c_delta²`.
    pub fn square(&self, e: i64, m: i64) -> BigInt {
        BigInt::from(2 * e) * &self.c_l * &self.c_l - BigInt::from(2 * (m - 1)) * &self.c_delta * &self.c_delta
    }

    /// Slope `c_delta / c_l`.
    pub fn slope(&self) -> BigRational {
        BigRational::new(self.c_delta.clone(), self.c_l.clone())
    }

    pub fn is_primitive(&self) -> bool {
        self.c_l.gcd(&self.c_delta) == BigInt::from(1)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L-{}delta", self.c_l, self.c_delta)
    }
}

fn big_ratio(p: &BigInt, q: &BigInt) -> BigRational {
    BigRational::new(p.clone(), q.clone())
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn check_e(e: i64) -> Result<(), ConeError> {
    if e < 1 {
        return Err(ConeError::InvalidParameter(format!("e must be positive (got {e})")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hilbert squares.

/// Minimal solution of `a² − e·b² = 1`, or `None` when `e` is a square.
pub fn unit_solution(e: i64) -> Option<PellSolution> {
    fundamental_solution(e).ok()
}

/// Minimal solution of `a² − 4e·b² = 5`, if any.
pub fn nef_solution_s2(e: i64) -> Option<PellSolution> {
    generalized_min(1, 4 * e, 5)
}

/// Slope `μ_e` of the other extremal ray of `Mov(S^[2])`.
pub fn mov_slope_s2(e: i64) -> Result<ExtremalSlope, ConeError> {
    check_e(e)?;
    Ok(match unit_solution(e) {
        None => ExtremalSlope::Rational(BigRational::from_integer(int(exact_sqrt_i64(e).expect("square")))),
        Some(s) => ExtremalSlope::Rational(big_ratio(&(int(e) * &s.b), &s.a)),
    })
}

/// Slope `ν_e` of the other extremal ray of `Nef(S^[2])`.
pub fn nef_slope_s2(e: i64) -> Result<ExtremalSlope, ConeError> {
    check_e(e)?;
    match nef_solution_s2(e) {
        None => mov_slope_s2(e),
        Some(s) => Ok(ExtremalSlope::Rational(big_ratio(&(int(2 * e) * &s.b), &s.a))),
    }
}

/// Nef and movable cones of `S^[2]` with their walls.
pub fn walls_s2(e: i64) -> Result<ConeReport, ConeError> {
    let mov = mov_slope_s2(e)?;
    let nef = nef_slope_s2(e)?;
    let Some(s5) = nef_solution_s2(e) else {
        return Ok(ConeReport {
            mov_slope: mov,
            nef_slope: nef,
            interior_walls: Walls::Finite { slopes: vec![] },
            nef_equals_mov: true,
        });
    };
    let (a1, b1) = match unit_solution(e) {
        Some(s) => (s.a, s.b),
        // Only e = 1 is a square with 𝒫_{4e}(5) solvable; use (a1, b1) = (1, 1).
        None => (int(1), int(1)),
    };
    let (a5, b5) = (s5.a, s5.b);
    let mut slopes = vec![big_ratio(&(int(2 * e) * &b5), &a5)];
    if b1.is_even() && e % 5 != 0 {
        let num = int(e) * (&a5 * &b1 - int(2) * &a1 * &b5);
        let den = &a1 * &a5 - int(2 * e) * &b1 * &b5;
        slopes.push(big_ratio(&num, &den));
    }
    slopes.sort();
    Ok(ConeReport {
        mov_slope: mov,
        nef_slope: nef,
        interior_walls: Walls::Finite { slopes },
        nef_equals_mov: false,
    })
}

// ---------------------------------------------------------------------------
// Hilbert powers.

/// Which description of `Mov(S^[m])` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MovCase {
    /// `e(m−1)` is a perfect square; the ray has square 0.
    IsotropicRay,
    /// `(m−1)a² − e·b² = 1` is solvable.
    TwistedEquation,
    /// Otherwise: the congruence-constrained solution of `a² − e(m−1)b² = 1`.
    CongruenceSolution,
}

/// Generator of the other extremal ray of `Mov(S^[m])`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MovRay {
    pub class: DivisorClass,
    pub case: MovCase,
}

impl MovRay {
    pub fn slope(&self) -> ExtremalSlope {
        ExtremalSlope::Rational(self.class.slope())
    }
}

pub fn mov_ray_sm(e: i64, m: i64) -> Result<MovRay, ConeError> {
    check_e(e)?;
    if m < 2 {
        return Err(ConeError::InvalidParameter(format!("m must be at least 2 (got {m})")));
    }
    let p = m - 1;
    if let Some(r) = exact_sqrt_i64(e * p) {
        return Ok(MovRay {
            class: DivisorClass::new(p, r),
            case: MovCase::IsotropicRay,
        });
    }
    if let Some(s) = generalized_min(p, e, 1) {
        return Ok(MovRay {
            class: DivisorClass::new(int(p) * &s.a, int(e) * &s.b),
            case: MovCase::TwistedEquation,
        });
    }
    let s = congruence_unit(e, p);
    Ok(MovRay {
        class: DivisorClass::new(s.a, int(e) * &s.b),
        case: MovCase::CongruenceSolution,
    })
}

/// Minimal positive solution of `a² − e·p·b² = 1` with `a ≡ ±1 mod p`
/// (it exists: the square of any solution qualifies).
pub fn congruence_unit(e: i64, p: i64) -> PellSolution {
    let d = e * p;
    let x1 = fundamental_solution(d).expect("e(m−1) nonsquare");
    let pb = int(p);
    let (mut a, mut b) = (x1.a.clone(), x1.b.clone());
    loop {
        let r = a.mod_floor(&pb);
        if pb == int(1) || r == int(1) || r == &pb - 1 {
            return PellSolution::new(a, b);
        }
        let na = &a * &x1.a + int(d) * &b * &x1.b;
        let nb = &a * &x1.b + &b * &x1.a;
        a = na;
        b = nb;
    }
}

/// The known cases of the other extremal ray of `Nef(S^[m])`, with whether
/// the nef and movable cones coincide.
pub fn nef_ray_sm_special(e: i64, m: i64) -> Result<Option<(DivisorClass, bool)>, ConeError> {
    check_e(e)?;
    if m < 2 {
        return Err(ConeError::InvalidParameter(format!("m must be at least 2 (got {m})")));
    }
    if 2 * m >= e + 3 {
        return Ok(Some((DivisorClass::new(m + e, 2 * e), m == e + 2)));
    }
    if e % (m - 1) == 0 {
        if let Some(b) = exact_sqrt_i64(e / (m - 1)) {
            if b >= 2 {
                return Ok(Some((DivisorClass::new(1, b), true)));
            }
        }
    }
    Ok(None)
}

/// Possible `(κ², div κ)` of primitive wall classes on manifolds of
/// K3^[m]-type, `m ∈ {2, 3, 4}`.
pub fn wall_types(m: i64) -> Result<&'static [(i64, i64)], ConeError> {
    match m {
        2 => Ok(&[(-2, 1), (-10, 2)]),
        3 => Ok(&[(-2, 1), (-4, 2), (-4, 4), (-12, 2), (-36, 4)]),
        4 => Ok(&[(-2, 1), (-6, 2), (-6, 3), (-6, 6), (-14, 2), (-24, 3), (-78, 6)]),
        _ => Err(ConeError::UnsupportedM(m)),
    }
}

/// Walls of `Mov(S^[m])` for `m ∈ {2,3,4}`.  A primitive class
/// `κ = x·L_m − y·δ` with `2e·x² − 2(m−1)·y² = κ²` and divisibility
/// `gcd(x, 2(m−1)y) = s` cuts the wall orthogonal to the ray of slope
/// `e·x / ((m−1)·y)`.  Along the solutions ordered by `y` these slopes
/// increase, so each stream is read until it leaves the movable cone.
pub fn walls_sm(e: i64, m: i64) -> Result<ConeReport, ConeError> {
    let types = wall_types(m)?;
    let p = m - 1;
    let mov_ray = mov_ray_sm(e, m)?;
    let mov = mov_ray.class.slope();
    let mut slopes: Vec<BigRational> = Vec::new();
    for &(k2, s) in types.iter().filter(|t| **t != (-2, 1)) {
        // (m−1)y² − e·x² = −κ²/2, solved as e1·a² − e2·b² = t with (a, b) = (y, x).
        let t = -k2 / 2;
        for sol in generalized_positive_solutions(p, e, t) {
            let (y, x) = (sol.a, sol.b);
            let slope = big_ratio(&(int(e) * &x), &(int(p) * &y));
            if slope >= mov {
                break;
            }
            if x.gcd(&y) != int(1) || x.gcd(&(int(2 * p) * &y)) != int(s) {
                continue;
            }
            slopes.push(slope);
        }
    }
    slopes.sort();
    slopes.dedup();
    let mov_slope = ExtremalSlope::Rational(mov);
    let nef_slope = slopes
        .first()
        .cloned()
        .map_or(mov_slope.clone(), ExtremalSlope::Rational);
    Ok(ConeReport {
        nef_equals_mov: slopes.is_empty(),
        mov_slope,
        nef_slope,
        interior_walls: Walls::Finite { slopes },
    })
}

/// Walls of `Mov(S^[m])` for any `m ≥ 2`, from the Mukai lattice.  With
/// `v = (1, 0, 1−m)` and `p = m−1`, a class `s` of the algebraic Mukai
/// lattice with `s² = 2a ≥ −2` and `k = s·v ∈ [0, p]` cuts the wall
/// orthogonal to `κ = 2pc·L_m + y·δ`, `y = 2pr − k`, where
/// `y² − 4pe·c² = k² − 4pa`.  This enumeration does not use the published
/// lists of wall types and serves as a cross-check for [`walls_sm`].
pub fn walls_sm_mukai(e: i64, m: i64) -> Result<Vec<BigRational>, ConeError> {
    let p = m - 1;
    let mov = mov_ray_sm(e, m)?.class.slope();
    let mut slopes = Vec::new();
    for k in 0..=p {
        let mut a = -1;
        while 4 * p * a < k * k {
            let n = k * k - 4 * p * a;
            for sol in generalized_positive_solutions(1, 4 * p * e, n) {
                let (y, c) = (sol.a, sol.b);
                let slope = big_ratio(&(int(2 * e) * &c), &y);
                if slope >= mov {
                    break;
                }
                let r = y.mod_floor(&int(2 * p));
                if r == int(k).mod_floor(&int(2 * p)) || r == int(-k).mod_floor(&int(2 * p)) {
                    slopes.push(slope);
                }
            }
            a += 1;
        }
    }
    slopes.sort();
    slopes.dedup();
    Ok(slopes)
}

// ---------------------------------------------------------------------------
// Fourfolds with Pic = diag(2n, −2e').

fn check_fourfold(n: i64, e2: i64) -> Result<(), ConeError> {
    if n < 1 || n % 4 != 3 {
        return Err(ConeError::BadCongruence(format!(
            "n must be positive and ≡ −1 mod 4 (got {n})"
        )));
    }
    if e2 < 2 {
        return Err(ConeError::BadCongruence(format!("e' must be at least 2 (got {e2})")));
    }
    Ok(())
}

/// Which of the two chamber structures of a fourfold occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FourfoldCase {
    /// Nef and movable cones agree.
    Equal,
    /// `𝒫_{n,e'}(−1)` unsolvable: irrational movable slopes, infinitely many walls.
    IrrationalMov,
    /// `𝒫_{n,e'}(−1)` solvable: three chambers.
    ThreeChambers,
}

/// The structure of the cones of a fourfold, before walls are listed.
pub fn fourfold_case(n: i64, e2: i64) -> Result<FourfoldCase, ConeError> {
    check_fourfold(n, e2)?;
    Ok(if generalized_min(n, 4 * e2, -5).is_none() {
        FourfoldCase::Equal
    } else if generalized_min(n, e2, -1).is_none() {
        FourfoldCase::IrrationalMov
    } else {
        FourfoldCase::ThreeChambers
    })
}

/// Nef and movable cones of a fourfold of K3^[2]-type with
/// `Pic = Z·H ⊕ Z·L`, `diag(2n, −2e')`, `H` of divisibility 2.  Slopes are
/// L-coefficients over H-coefficients; walls come in `±` pairs.  When there
/// are infinitely many walls, those from the first `prefix` positive
/// solutions of `𝒫_{n,4e'}(−5)` are listed.
pub fn fourfold_cones(n: i64, e2: i64, prefix: usize) -> Result<ConeReport, ConeError> {
    check_fourfold(n, e2)?;
    let mov = match generalized_min(n, e2, -1) {
        None => ExtremalSlope::sqrt_of(BigRational::new(int(n), int(e2))),
        Some(s) => ExtremalSlope::Rational(big_ratio(&(int(n) * &s.a), &(int(e2) * &s.b))),
    };
    let wall_slope = |s: &PellSolution| big_ratio(&(int(n) * &s.a), &(int(2 * e2) * &s.b));
    let Some(s5) = generalized_min(n, 4 * e2, -5) else {
        return Ok(ConeReport {
            nef_slope: mov.clone(),
            mov_slope: mov,
            interior_walls: Walls::Finite { slopes: vec![] },
            nef_equals_mov: true,
        });
    };
    let nu = wall_slope(&s5);
    let symmetric = |pos: Vec<BigRational>| {
        let mut all: Vec<BigRational> = pos.iter().map(|x| -x).chain(pos.iter().cloned()).collect();
        all.sort();
        all
    };
    let walls = if mov.is_rational() {
        Walls::Finite {
            slopes: symmetric(vec![nu.clone()]),
        }
    } else {
        let pos: Vec<BigRational> = generalized_positive_solutions(n, 4 * e2, -5)
            .take(prefix)
            .map(|s| wall_slope(&s))
            .collect();
        Walls::InfinitelyMany { prefix: symmetric(pos) }
    };
    Ok(ConeReport {
        mov_slope: mov,
        nef_slope: ExtremalSlope::Rational(nu),
        interior_walls: walls,
        nef_equals_mov: false,
    })
}

// ---------------------------------------------------------------------------
// Very ampleness.

/// Whether `L^{⊗a}` is `k`-very ample on a K3 surface with `Pic = Z·L`,
/// `L² = 2e`.
pub fn k_very_ample(a: i64, e: i64, k: i64) -> bool {
    (a == 1 && 2 * k <= e) || (a >= 2 && k <= 2 * (a - 1) * e - 2)
}

/// Base-point-freeness and very ampleness of `a·L_m − δ` on `S^[m]`, where
/// `L² = 2e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EmbeddingStatus {
    pub base_point_free: bool,
    pub very_ample: bool,
}

pub fn hilb_embedding_status(a: i64, e: i64, m: i64) -> EmbeddingStatus {
    EmbeddingStatus {
        base_point_free: (a == 1 && 2 * (m - 1) <= e) || (a >= 2 && m <= 2 * (a - 1) * e - 1),
        very_ample: (a == 1 && 2 * m <= e) || (a >= 2 && m <= 2 * (a - 1) * e - 2),
    }
}

/// Sufficient conditions for a general polarized `(X, H)` of K3^[m]-type,
/// `H² = 2n`, divisibility `γ`, to be base-point-free / very ample, with the
/// dimension of the projective space `|H|` maps to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliEmbedding {
    pub base_point_free_if: bool,
    pub very_ample_if: bool,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub ambient_dim: BigInt,
}

pub fn moduli_embedding_status(m: i64, n: i64, gamma: i64) -> Result<ModuliEmbedding, ConeError> {
    if m < 2 || n < 1 {
        return Err(ConeError::InvalidParameter(format!(
            "need m ≥ 2, n ≥ 1 (got m={m}, n={n})"
        )));
    }
    let (bpf, va) = match gamma {
        1 => (n >= m - 1, n >= m + 1),
        2 => (n >= m + 3, n >= m + 5),
        _ => return Err(ConeError::InvalidParameter(format!("γ must be 1 or 2 (got {gamma})"))),
    };
    let ambient = crate::rrinv::h0_polarized(m, n) - 1;
    Ok(ModuliEmbedding {
        base_point_free_if: bpf,
        very_ample_if: va,
        ambient_dim: ambient,
    })
}

/// How `ν_e` compares with `⌊√e⌋`.
pub fn nef_vs_floor_sqrt(e: i64) -> Result<Ordering, ConeError> {
    let nu = nef_slope_s2(e)?;
    let fl = BigInt::from(e).sqrt();
    Ok(nu.cmp_rational(&BigRational::from_integer(fl)))
}
