//! Heegner divisors in the period spaces of polarized manifolds of
//! K3^[m]-type: nonemptiness and irreducible components for `m = 2`, the
//! finite list of divisors missed by the period map, and a brute-force
//! coordinate search that serves as an independent check.
//!
//! Coordinates.  `Λ = N ⊕ M'` with `N = U ⊕ ⟨−2p⟩` (basis `u, v, ℓ`,
//! `p = m − 1`) and `M' = U² ⊕ E8(−1)²` unimodular.  The polarization `h`
//! lies in `N`: `h = u + n·v` for `γ = 1` and `h = 2(u + c·v) + ℓ` with
//! `c = (n + p)/4` for `γ = 2`.  Then `h⊥ = R ⊕ M'` where `R` has basis
//! `(ℓ, u − n·v)` for `γ = 1` and `(p·v + ℓ, −u + c·v)` for `γ = 2`.  A
//! class `κ_* ∈ D(h⊥) = D(R)` is written by its coefficients on the
//! generators of [`DiscGroup`].

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd_i64, is_prime, is_square_mod, ratio, valuation};
use crate::cones::{nef_slope_s2, ExtremalSlope};
use crate::lattice::{polarized_block, Block, DiscGroup, LatticeError, LatticeSpec};
use crate::pell::generalized_positive_solutions;

/// Errors raised by the period-map computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodsError {
    #[error("BadCongruence: {0}")]
    BadCongruence(String),
    #[error("UnsupportedParameters: {0}")]
    UnsupportedParameters(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

impl From<LatticeError> for PeriodsError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::IncompatibleDivisibility(s) => PeriodsError::BadCongruence(s),
            other => PeriodsError::InvalidParameter(other.to_string()),
        }
    }
}

/// One irreducible Heegner divisor: the discriminant `d` of `K⊥`, the square
/// of the primitive generator `κ` of `K ∩ h⊥`, its divisibility `s` in `h⊥`
/// and `±κ_*` (the lexicographically smaller of `κ_*`, `−κ_*`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HeegnerKey {
    pub d: i64,
    #[serde(rename = "kappa2")]
    pub kappa_prim_sq: i64,
    #[serde(rename = "div")]
    pub s: i64,
    pub star: Vec<u64>,
}

/// Numerical data of a wall: `0 ≤ k ≤ p`, `a ≥ −1`,
/// `κ² = 2p(4pa − k²) < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WallConstraint {
    pub k: i64,
    pub a: i64,
    pub kappa_sq: i64,
}

/// Invariants of a primitive vector of `h⊥` found by the coordinate search:
/// square, divisibility in `h⊥`, `±κ_*`, and divisibility in `Λ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RealizedClass {
    #[serde(rename = "kappa2")]
    pub square: i64,
    #[serde(rename = "div")]
    pub s: i64,
    pub star: Vec<u64>,
    pub total_div: i64,
}

// ---------------------------------------------------------------------------
// The model of h⊥.

/// `h⊥` for given `(m, n, γ)` in the coordinates above.
#[derive(Debug, Clone)]
pub struct PolarizedModel {
    pub m: i64,
    pub n: i64,
    pub gamma: i64,
    p: i64,
    gram: Vec<Vec<i64>>,
    /// The basis of `R` in `(u, v, ℓ)` coordinates.
    basis: [[i64; 3]; 2],
    disc: DiscGroup,
    /// Class in `D(R)` of each rational `R`-coordinate vector reduced mod 1.
    classes: BTreeMap<(BigRational, BigRational), Vec<u64>>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl PolarizedModel {
    pub fn new(m: i64, n: i64, gamma: i64) -> Result<Self, PeriodsError> {
        let gram = polarized_block(m, n, gamma)?;
        let p = m - 1;
        let basis = if gamma == 1 {
            [[0, 0, 1], [1, -n, 0]]
        } else {
            [[0, p, 1], [-1, (n + p) / 4, 0]]
        };
        let disc = LatticeSpec::new(vec![Block::Gram(gram.clone())])?.disc_group();
        let classes = disc
            .elements()
            .into_iter()
            .map(|x| {
                let y = disc.element_vector(&x);
                ((frac(&y[0]), frac(&y[1])), x)
            })
            .collect();
        let model = Self {
            m,
            n,
            gamma,
            p,
            gram,
            basis,
            disc,
            classes,
        };
        debug_assert!(model.basis.iter().all(|b| model.pair_n(b, &model.h()) == 0));
        Ok(model)
    }

    /// `|disc(h⊥)|`.
    pub fn disc_order(&self) -> i64 {
        self.disc.order() as i64
    }

    pub fn disc_group(&self) -> &DiscGroup {
        &self.disc
    }

    /// The polarization in `(u, v, ℓ)` coordinates.
    pub fn h(&self) -> [i64; 3] {
        if self.gamma == 1 {
            [1, self.n, 0]
        } else {
            [2, (self.n + self.p) / 2, 1]
        }
    }

    fn pair_n(&self, x: &[i64; 3], y: &[i64; 3]) -> i64 {
        x[0] * y[1] + x[1] * y[0] - 2 * self.p * x[2] * y[2]
    }

    fn r_square(&self, al: i64, be: i64) -> i64 {
        al * al * self.gram[0][0] + 2 * al * be * self.gram[0][1] + be * be * self.gram[1][1]
    }

    fn r_to_n(&self, al: i64, be: i64) -> [i64; 3] {
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = al * self.basis[0][i] + be * self.basis[1][i];
        }
        out
    }

    /// Class of the rational `R`-coordinate vector `(x, y)`.
    fn class_of(&self, x: &BigRational, y: &BigRational) -> Vec<u64> {
        self.classes
            .get(&(frac(x), frac(y)))
            .cloned()
            .expect("vector of the dual lattice")
    }

    /// `±x` normalized to the lexicographically smaller representative.
    pub fn normalize_star(&self, x: &[u64]) -> Vec<u64> {
        let neg: Vec<u64> = x
            .iter()
            .zip(&self.disc.invariant_factors)
            .map(|(&xi, &d)| (d - xi) % d)
            .collect();
        std::cmp::min(x.to_vec(), neg)
    }

    /// Divisibility in `Λ` of a primitive vector of `h⊥` with divisibility
    /// `s` there and class `x`: it equals `s/o` where `o` is the order of
    /// the character `g ↦ b(x, g)` on the image of `Λ` in `D(h⊥)`, i.e. the
    /// common denominator of the pairings of a representative with `u, v, ℓ`.
    pub fn total_divisibility(&self, x: &[u64], s: i64) -> i64 {
        let y = self.disc.element_vector(x);
        let mut yn = vec![BigRational::zero(); 3];
        for (i, c) in yn.iter_mut().enumerate() {
            *c = &y[0] * ratio(self.basis[0][i], 1) + &y[1] * ratio(self.basis[1][i], 1);
        }
        let pairings = [yn[1].clone(), yn[0].clone(), &yn[2] * ratio(-2 * self.p, 1)];
        let o = pairings.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let o: i64 = o.try_into().expect("small denominator");
        debug_assert_eq!(s % o, 0);
        s / o
    }

    fn key(&self, q: i64, s: i64, x: &[u64]) -> HeegnerKey {
        HeegnerKey {
            d: q.abs() * self.disc_order() / (s * s),
            kappa_prim_sq: q,
            s,
            star: self.normalize_star(x),
        }
    }

    /// All Eichler classes `(s, x)` of primitive vectors of square `q`:
    /// `x` of order `s` with `q̄(x) ≡ q/s² mod 2` (`h⊥` contains `U ⊕ U`, so
    /// each such class is realized).
    fn classes_of_square(&self, q: i64) -> Vec<(i64, Vec<u64>)> {
        self.disc
            .elements()
            .into_iter()
            .filter_map(|x| {
                let s = self.disc.element_order(&x) as i64;
                let target = ratio(q, s * s);
                let diff = (&self.disc.element_q(&x) - target) / ratio(2, 1);
                diff.is_integer().then_some((s, x))
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// m = 2.

fn check_m2(n: i64, gamma: i64) -> Result<(), PeriodsError> {
    if n < 1 {
        return Err(PeriodsError::InvalidParameter(format!("n must be positive (got {n})")));
    }
    match gamma {
        1 => Ok(()),
        2 if n % 4 == 3 => Ok(()),
        2 => Err(PeriodsError::BadCongruence(format!(
            "γ = 2 needs n ≡ −1 mod 4 (got n = {n})"
        ))),
        _ => Err(PeriodsError::BadCongruence(format!("γ must be 1 or 2 (got {gamma})"))),
    }
}

/// Whether the Heegner locus of discriminant `d = 2e` in the period space of
/// fourfolds of K3^[2]-type with polarization `(2n, γ)` is nonempty.
pub fn heegner_nonempty_m2(n: i64, gamma: i64, e: i64) -> Result<bool, PeriodsError> {
    check_m2(n, gamma)?;
    if e < 1 {
        return Err(PeriodsError::InvalidParameter(format!("e must be positive (got {e})")));
    }
    Ok(if gamma == 1 {
        is_square_mod(e, 4 * n) || is_square_mod(e - n, 4 * n)
    } else {
        is_square_mod(e, n)
    })
}

fn is_squarefree(n: i64) -> bool {
    crate::arith::factorize(n as u64).iter().all(|&(_, k)| k == 1)
}

/// Key from the class written in the generators used in the proofs:
/// `(A, B) ∈ Z/2n × Z/2` meaning `A·(u − nv)/2n + B·ℓ/2` for `γ = 1`, and
/// `A ∈ Z/n` meaning `A·(w₁ − 2w₂)/n` for `γ = 2`.
fn m2_key(model: &PolarizedModel, q: i64, s: i64, a: i64, b: i64) -> HeegnerKey {
    let (y0, y1) = if model.gamma == 1 {
        (ratio(b, 2), ratio(a, 2 * model.n))
    } else {
        (ratio(a, model.n), ratio(-2 * a, model.n))
    };
    let x = model.class_of(&y0, &y1);
    debug_assert_eq!(model.disc.element_order(&x) as i64, s);
    model.key(q, s, &x)
}

/// Irreducible components of the Heegner locus of discriminant `2e` for
/// `m = 2`, under the hypotheses where they are classified (`n` square-free
/// dividing `e`, or `n` prime); `None` otherwise.  An empty list means the
/// locus is empty.
pub fn heegner_components_m2(n: i64, gamma: i64, e: i64) -> Result<Option<Vec<HeegnerKey>>, PeriodsError> {
    if !heegner_nonempty_m2(n, gamma, e)? {
        return Ok(Some(vec![]));
    }
    let squarefree_case = is_squarefree(n) && e % n == 0;
    let prime_case = is_prime(n as u64);
    if !squarefree_case && !prime_case {
        return Ok(None);
    }
    let model = PolarizedModel::new(2, n, gamma)?;
    let mut keys = BTreeSet::new();
    let m4 = 4 * n;
    let cong = |x: i64, y: i64, md: i64| (x - y).rem_euclid(md) == 0;
    if gamma == 1 {
        if cong(e, 0, m4) {
            keys.insert(m2_key(&model, -e / (2 * n), 1, 0, 0));
        }
        if e % n == 0 {
            let q = -2 * e / n;
            if cong(e, n * n, m4) {
                keys.insert(m2_key(&model, q, 2, n, 0));
            }
            if cong(e, n, m4) {
                keys.insert(m2_key(&model, q, 2, 0, 1));
            }
            if cong(e, n * (n + 1), m4) {
                keys.insert(m2_key(&model, q, 2, n, 1));
            }
        }
        if prime_case {
            for a in 1..2 * n {
                if a % n == 0 {
                    continue;
                }
                if n % 2 == 1 && cong(e, 4 * a * a, m4) && e % 2 == 0 {
                    keys.insert(m2_key(&model, -e * n / 2, n, 2 * a, 0));
                }
                let q = -2 * n * e;
                if a % 2 == 1 && cong(e, a * a, m4) {
                    keys.insert(m2_key(&model, q, 2 * n, a, 0));
                }
                if n % 2 == 1 && cong(e, a * a + n, m4) {
                    keys.insert(m2_key(&model, q, 2 * n, a, 1));
                }
                if n == 2 && a % 2 == 1 && cong(e, a * a + 2, 8) {
                    keys.insert(m2_key(&model, q, 2 * n, a, 1));
                }
            }
        }
    } else if e % n == 0 {
        keys.insert(m2_key(&model, -2 * e / n, 1, 0, 0));
    } else {
        for a in 1..n {
            if cong(e, a * a, n) {
                keys.insert(m2_key(&model, -2 * n * e, n, a, 0));
            }
        }
    }
    Ok(Some(keys.into_iter().collect()))
}

/// All Eichler components of discriminant `d` in `h⊥` (any `m`), from the
/// discriminant group: the classification behind [`heegner_components_m2`].
pub fn heegner_components(m: i64, n: i64, gamma: i64, d: i64) -> Result<Vec<HeegnerKey>, PeriodsError> {
    let model = PolarizedModel::new(m, n, gamma)?;
    let disc = model.disc_order();
    let mut keys = BTreeSet::new();
    for s in 1..=model.disc.exponent() as i64 {
        let num = d * s * s;
        if num % disc != 0 || (num / disc) % 2 != 0 {
            continue;
        }
        let q = -num / disc;
        for (s2, x) in model.classes_of_square(q) {
            if s2 == s {
                keys.insert(model.key(q, s, &x));
            }
        }
    }
    Ok(keys.into_iter().collect())
}

/// Whether `n = 5^{2α+1}·n''` with `n'' ≡ ±1 mod 5`.
pub fn fifth_clause_applies(n: i64) -> bool {
    if n % 5 != 0 {
        return false;
    }
    let v = valuation(5, n);
    let rest = n / 5i64.pow(v);
    v % 2 == 1 && matches!(rest % 5, 1 | 4)
}

/// Whether the components listed for the `2n/5` clause are known to be
/// exactly one (the square-free case); otherwise every residue-compatible
/// class is listed and the multiplicity is not settled.
pub fn fifth_clause_single_component(n: i64) -> bool {
    fifth_clause_applies(n) && is_squarefree(n / 5i64.pow(valuation(5, n)))
}

/// The Heegner divisors missed by the period map for `m = 2`.
pub fn excluded_heegner_m2(n: i64, gamma: i64) -> Result<Vec<HeegnerKey>, PeriodsError> {
    check_m2(n, gamma)?;
    let model = PolarizedModel::new(2, n, gamma)?;
    let mut keys = BTreeSet::new();
    if gamma == 2 {
        keys.insert(m2_key(&model, -2, 1, 0, 0));
        return Ok(keys.into_iter().collect());
    }
    keys.insert(m2_key(&model, -2, 1, 0, 0));
    keys.insert(m2_key(&model, -2, 2, 0, 1));
    match n % 4 {
        1 => {
            keys.insert(m2_key(&model, -2, 2, n, 0));
        }
        0 => {
            keys.insert(m2_key(&model, -2, 2, n, 1));
        }
        _ => {}
    }
    keys.insert(m2_key(&model, -10, 2, 0, 1));
    if fifth_clause_applies(n) {
        let n1 = n / 5;
        // κ = α(u − nv) + βℓ + cw with s = 10 and α, c even (divisibility 2
        // in Λ): κ_* = (2nα/10, 1) = (n'α, 1), so the first coordinate `a`
        // is a multiple of 2n' and a' = a/2 satisfies a'² ≡ −n' mod 5n'.
        for a in (0..2 * n).step_by(2 * n1 as usize) {
            let a1 = a / 2;
            if (a1 * a1 + n1) % (5 * n1) == 0 {
                let x = model.class_of(&ratio(1, 2), &ratio(a, 2 * n));
                if model.disc.element_order(&x) == 10 {
                    keys.insert(model.key(-10, 10, &x));
                }
            }
        }
    }
    Ok(keys.into_iter().collect())
}

// ---------------------------------------------------------------------------
// General m.

/// All `(k, a)` with `0 ≤ k ≤ m − 1`, `a ≥ −1` and `4(m−1)a < k²`.
pub fn wall_constraints(m: i64) -> Result<Vec<WallConstraint>, PeriodsError> {
    if m < 2 {
        return Err(PeriodsError::InvalidParameter(format!(
            "m must be at least 2 (got {m})"
        )));
    }
    let p = m - 1;
    let mut out = Vec::new();
    for k in 0..=p {
        let mut a = -1;
        while 4 * p * a < k * k {
            out.push(WallConstraint {
                k,
                a,
                kappa_sq: 2 * p * (4 * p * a - k * k),
            });
            a += 1;
        }
    }
    Ok(out)
}

fn check_supported(m: i64) -> Result<(), PeriodsError> {
    let p = m - 1;
    if m < 2 || !(p == 1 || is_prime(p as u64)) {
        return Err(PeriodsError::UnsupportedParameters(format!(
            "m − 1 must be 1 or a prime (got m = {m})"
        )));
    }
    Ok(())
}

/// The Heegner divisors `K` containing a class `κ ⊥ h` of square
/// `wc.kappa_sq` whose divisibility in `Λ` is a multiple of `2(m−1)`.
/// `κ = b·κ_prim`, and each Eichler class of `κ_prim` has a determined
/// divisibility in `Λ`.
pub fn realize_orthogonal_classes(
    m: i64,
    n: i64,
    gamma: i64,
    wc: &WallConstraint,
) -> Result<Vec<HeegnerKey>, PeriodsError> {
    check_supported(m)?;
    let model = PolarizedModel::new(m, n, gamma)?;
    Ok(realize_in(&model, wc).into_iter().collect())
}

fn realize_in(model: &PolarizedModel, wc: &WallConstraint) -> BTreeSet<HeegnerKey> {
    let k2 = wc.kappa_sq;
    let mut keys = BTreeSet::new();
    let mut b = 1i64;
    while b * b <= k2.abs() {
        if k2 % (b * b) == 0 && (k2 / (b * b)) % 2 == 0 {
            let q = k2 / (b * b);
            for (s, x) in model.classes_of_square(q) {
                if (b * model.total_divisibility(&x, s)) % (2 * model.p) == 0 {
                    keys.insert(model.key(q, s, &x));
                }
            }
        }
        b += 1;
    }
    keys
}

/// The Heegner divisors whose complement is the image of the period map.
pub fn excluded_heegner(m: i64, n: i64, gamma: i64) -> Result<Vec<HeegnerKey>, PeriodsError> {
    check_supported(m)?;
    let model = PolarizedModel::new(m, n, gamma)?;
    let mut keys = BTreeSet::new();
    for wc in wall_constraints(m)? {
        keys.extend(realize_in(&model, &wc));
    }
    Ok(keys.into_iter().collect())
}

/// The discriminants of [`excluded_heegner`], sorted and deduplicated.
pub fn excluded_discriminants(m: i64, n: i64, gamma: i64) -> Result<Vec<i64>, PeriodsError> {
    let set: BTreeSet<i64> = excluded_heegner(m, n, gamma)?.into_iter().map(|k| k.d).collect();
    Ok(set.into_iter().collect())
}

// ---------------------------------------------------------------------------
// Coordinate search.

/// Invariants of all primitive `κ = α·r₁ + β·r₂ + X·u₃ + Y·v₃ ∈ h⊥` with
/// negative square and coefficients bounded by `bound` in absolute value,
/// where `(r₁, r₂)` is the basis of `R` and `(u₃, v₃)` a hyperbolic plane of
/// `M'`.  Divisibilities are read off from explicit pairings.
pub fn coordinate_oracle(m: i64, n: i64, gamma: i64, bound: i64) -> Result<BTreeSet<RealizedClass>, PeriodsError> {
    let model = PolarizedModel::new(m, n, gamma)?;
    let mut out = BTreeSet::new();
    if bound <= 0 {
        return Ok(out);
    }
    let units = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for al in -bound..=bound {
        for be in -bound..=bound {
            let rn = model.r_to_n(al, be);
            let r_sq = model.r_square(al, be);
            let div_r = gcd_i64(
                al * model.gram[0][0] + be * model.gram[1][0],
                al * model.gram[0][1] + be * model.gram[1][1],
            );
            let div_n = units.iter().fold(0, |g, e| gcd_i64(g, model.pair_n(&rn, e)));
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if gcd_i64(gcd_i64(al, be), gcd_i64(x, y)) != 1 {
                        continue;
                    }
                    let square = r_sq + 2 * x * y;
                    if square >= 0 {
                        continue;
                    }
                    let s = gcd_i64(div_r, gcd_i64(x, y));
                    let class = model.class_of(&ratio(al, s), &ratio(be, s));
                    out.insert(RealizedClass {
                        square,
                        s,
                        star: model.normalize_star(&class),
                        total_div: gcd_i64(div_n, gcd_i64(x, y)),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The Heegner keys the coordinate search finds for one wall.
pub fn oracle_keys_for_wall(
    m: i64,
    n: i64,
    gamma: i64,
    realized: &BTreeSet<RealizedClass>,
    wc: &WallConstraint,
) -> Result<BTreeSet<HeegnerKey>, PeriodsError> {
    let model = PolarizedModel::new(m, n, gamma)?;
    let p = m - 1;
    let mut keys = BTreeSet::new();
    for c in realized {
        if wc.kappa_sq % c.square != 0 {
            continue;
        }
        let b2 = wc.kappa_sq / c.square;
        let b = crate::arith::exact_sqrt_i64(b2);
        if let Some(b) = b {
            if (b * c.total_div) % (2 * p) == 0 {
                keys.insert(model.key(c.square, c.s, &c.star));
            }
        }
    }
    Ok(keys)
}

/// The excluded Heegner keys as found by the coordinate search.
pub fn oracle_excluded(m: i64, n: i64, gamma: i64, bound: i64) -> Result<BTreeSet<HeegnerKey>, PeriodsError> {
    let realized = coordinate_oracle(m, n, gamma, bound)?;
    let mut keys = BTreeSet::new();
    for wc in wall_constraints(m)? {
        keys.extend(oracle_keys_for_wall(m, n, gamma, &realized, &wc)?);
    }
    Ok(keys)
}

// ---------------------------------------------------------------------------
// Hilbert squares inside Heegner divisors.

/// A polarization `b·L₂ − a·δ` of square `2n` and divisibility `γ` on the
/// Hilbert square of a K3 surface of degree `2e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSquarePoint {
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub b: BigInt,
    pub gamma: i64,
}

/// All positive solutions `(a, b)` of `a² − e·b² = −n` with `b` even
/// (`γ = 2`) or odd (`γ = 1`), `gcd(a, b) = 1` and `a/b < ν_e`, where `L₂ −
/// ν_e·δ` spans the second ray of the nef cone.  The list is finite since
/// `a/b` increases towards `√e > ν_e` (or the equation has finitely many
/// solutions when `e` is a square).
pub fn hilbert_square_points(n: i64, e: i64, gamma: i64) -> Result<Vec<HilbertSquarePoint>, PeriodsError> {
    if n < 1 || e < 1 {
        return Err(PeriodsError::InvalidParameter(format!(
            "need n, e ≥ 1 (got n={n}, e={e})"
        )));
    }
    if gamma != 1 && gamma != 2 {
        return Err(PeriodsError::BadCongruence(format!("γ must be 1 or 2 (got {gamma})")));
    }
    let nu = nef_slope_s2(e).map_err(|err| PeriodsError::InvalidParameter(err.to_string()))?;
    let mut out = Vec::new();
    for sol in generalized_positive_solutions(1, e, -n) {
        let r = BigRational::new(sol.a.clone(), sol.b.clone());
        if nu.cmp_rational(&r) != std::cmp::Ordering::Greater {
            break;
        }
        let parity_ok = sol.b.is_even() == (gamma == 2);
        if parity_ok && sol.a.gcd(&sol.b) == BigInt::from(1) {
            out.push(HilbertSquarePoint {
                a: sol.a,
                b: sol.b,
                gamma,
            });
        }
    }
    Ok(out)
}

/// The admissible solution with the smallest `a`, if any.
pub fn hilbert_square_point(n: i64, e: i64, gamma: i64) -> Result<Option<HilbertSquarePoint>, PeriodsError> {
    Ok(hilbert_square_points(n, e, gamma)?.into_iter().next())
}

/// The slope `ν_e` used by [`hilbert_square_points`].
pub fn nu(e: i64) -> Result<ExtremalSlope, PeriodsError> {
    nef_slope_s2(e).map_err(|err| PeriodsError::InvalidParameter(err.to_string()))
}

/// Degrees `2e` of the infinite families of Heegner divisors whose general
/// member is a Hilbert square: `e = a² + n` for `1 ≤ a ≤ a_max` (`γ = 1`,
/// `(n, a) ≠ (1, 2)`), `e = a² + a + (n+1)/4` for `0 ≤ a ≤ a_max` (`γ = 2`,
/// `(n, a) ≠ (3, 1)`).
pub fn nl_family(n: i64, gamma: i64, a_max: i64) -> Result<Vec<i64>, PeriodsError> {
    check_m2(n, gamma)?;
    Ok(if gamma == 1 {
        (1..=a_max).filter(|&a| (n, a) != (1, 2)).map(|a| a * a + n).collect()
    } else {
        (0..=a_max)
            .filter(|&a| (n, a) != (3, 1))
            .map(|a| a * a + a + (n + 1) / 4)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(keys: &[HeegnerKey]) -> Vec<i64> {
        keys.iter().map(|k| k.d).collect()
    }

    #[test]
    fn nonempty_examples() {
        assert!(!heegner_nonempty_m2(1, 1, 3).unwrap());
        assert!(heegner_nonempty_m2(3, 2, 1).unwrap());
        assert!(!heegner_nonempty_m2(3, 2, 2).unwrap());
        assert!(heegner_nonempty_m2(11, 2, 4).unwrap());
        assert!(heegner_nonempty_m2(5, 2, 1).is_err());
    }

    #[test]
    fn component_examples() {
        assert_eq!(heegner_components_m2(1, 1, 1).unwrap().unwrap().len(), 2);
        assert_eq!(heegner_components_m2(3, 2, 3).unwrap().unwrap().len(), 1);
        assert_eq!(heegner_components_m2(2, 1, 2).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn excluded_m2_examples() {
        assert_eq!(ds(&excluded_heegner_m2(1, 1).unwrap()), vec![2, 2, 8, 10]);
        assert_eq!(ds(&excluded_heegner_m2(3, 2).unwrap()), vec![6]);
        assert_eq!(ds(&excluded_heegner_m2(11, 2).unwrap()), vec![22]);
    }

    #[test]
    fn wall_constraint_examples() {
        let w2: Vec<(i64, i64, i64)> = wall_constraints(2)
            .unwrap()
            .iter()
            .map(|w| (w.k, w.a, w.kappa_sq))
            .collect();
        assert_eq!(w2, vec![(0, -1, -8), (1, -1, -10), (1, 0, -2)]);
        let w4: Vec<(i64, i64)> = wall_constraints(4).unwrap().iter().map(|w| (w.k, w.a)).collect();
        for pair in [(0, -1), (2, 0), (2, -1)] {
            assert!(w4.contains(&pair));
        }
    }

    #[test]
    fn period_image_m4() {
        assert_eq!(excluded_discriminants(4, 1, 2).unwrap(), vec![2, 6, 8]);
        let wc = |k, a| WallConstraint {
            k,
            a,
            kappa_sq: 6 * (12 * a - k * k),
        };
        assert_eq!(ds(&realize_orthogonal_classes(4, 1, 2, &wc(0, -1)).unwrap()), vec![6]);
        assert_eq!(ds(&realize_orthogonal_classes(4, 1, 2, &wc(2, 0)).unwrap()), vec![2]);
        let both: BTreeSet<i64> = ds(&realize_orthogonal_classes(4, 1, 2, &wc(2, -1)).unwrap())
            .into_iter()
            .collect();
        assert_eq!(both, BTreeSet::from([2, 8]));
        assert!(matches!(
            excluded_heegner(7, 1, 1),
            Err(PeriodsError::UnsupportedParameters(_))
        ));
    }

    #[test]
    fn hilbert_square_examples() {
        let p = hilbert_square_point(3, 7, 2).unwrap().unwrap();
        assert_eq!((p.a, p.b), (BigInt::from(5), BigInt::from(2)));
        let all: Vec<(BigInt, BigInt)> = hilbert_square_points(3, 13, 2)
            .unwrap()
            .into_iter()
            .map(|p| (p.a, p.b))
            .collect();
        assert_eq!(all, vec![(7.into(), 2.into()), (137.into(), 38.into())]);
        assert!(hilbert_square_point(11, 4, 2).unwrap().is_none());
    }

    #[test]
    fn nl_family_examples() {
        assert_eq!(nl_family(3, 2, 3).unwrap(), vec![1, 7, 13]);
        assert_eq!(nl_family(1, 1, 3).unwrap(), vec![2, 10]);
        assert_eq!(nl_family(7, 2, 0).unwrap(), vec![2]);
        assert!(nl_family(5, 2, 3).is_err());
    }

    #[test]
    fn oracle_trivial_bound() {
        assert!(coordinate_oracle(2, 1, 1, 0).unwrap().is_empty());
    }
}
