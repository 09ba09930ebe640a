//! Biregular and birational automorphism groups in the situations where the
//! Picard lattice has rank one or two and the answer is decided by Pell-type
//! equations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd_i64, is_square_i64, is_square_mod};
use crate::cones::{congruence_unit, ConeError};
use crate::pell::generalized_min;

/// Errors raised by the group decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("BadCongruence: {0}")]
    BadCongruence(String),
    #[error("InconsistentFlags: nef cone with irrational rays inside a movable cone with rational rays")]
    InconsistentFlags,
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

impl From<ConeError> for AutError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::BadCongruence(s) => AutError::BadCongruence(s),
            other => AutError::InvalidParameter(other.to_string()),
        }
    }
}

/// An automorphism group, up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupTag {
    Trivial,
    Z2,
    Z2xZ2,
    InfiniteCyclic,
    /// `Z ⋊ Z/2`.
    InfiniteDihedral,
    /// Not decided; the reason names what is missing.
    Unknown(String),
}

impl GroupTag {
    pub fn is_finite(&self) -> Option<bool> {
        match self {
            GroupTag::Trivial | GroupTag::Z2 | GroupTag::Z2xZ2 => Some(true),
            GroupTag::InfiniteCyclic | GroupTag::InfiniteDihedral => Some(false),
            GroupTag::Unknown(_) => None,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::Trivial => "1",
            GroupTag::Z2 => "Z/2",
            GroupTag::Z2xZ2 => "(Z/2)^2",
            GroupTag::InfiniteCyclic => "Z",
            GroupTag::InfiniteDihedral => "Z x| Z/2",
            GroupTag::Unknown(_) => "?",
        })
    }
}

impl Serialize for GroupTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(Aut, Bir)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPair {
    pub aut: GroupTag,
    pub bir: GroupTag,
}

impl GroupPair {
    fn new(aut: GroupTag, bir: GroupTag) -> Self {
        Self { aut, bir }
    }
}

/// `e1·a² − e2·b² = t` has a positive solution.
fn solvable(e1: i64, e2: i64, t: i64) -> bool {
    generalized_min(e1, e2, t).is_some()
}

/// Automorphisms of a K3 surface with `Pic = Z·L`, `L² = two_e`.
pub fn aut_k3_rank1(two_e: i64) -> Result<GroupTag, AutError> {
    if two_e < 2 || two_e % 2 != 0 {
        return Err(AutError::InvalidParameter(format!(
            "L² must be even and positive (got {two_e})"
        )));
    }
    Ok(if two_e == 2 { GroupTag::Z2 } else { GroupTag::Trivial })
}

fn check_e(e: i64) -> Result<(), AutError> {
    if e < 1 {
        return Err(AutError::InvalidParameter(format!("e must be positive (got {e})")));
    }
    Ok(())
}

/// `Aut(S^[2])` for `Pic(S) = Z·L`, `L² = 2e`.
pub fn aut_s2(e: i64) -> Result<GroupTag, AutError> {
    Ok(bir_s2(e)?.aut)
}

/// `(Aut(S^[2]), Bir(S^[2]))` for `Pic(S) = Z·L`, `L² = 2e`.
pub fn bir_s2(e: i64) -> Result<GroupPair, AutError> {
    check_e(e)?;
    let minus_one = solvable(1, e, -1);
    let five = solvable(1, 4 * e, 5);
    Ok(if e == 1 || (minus_one && !five) {
        GroupPair::new(GroupTag::Z2, GroupTag::Z2)
    } else if e == 5 || (e > 1 && e % 5 != 0 && minus_one && five) {
        GroupPair::new(GroupTag::Trivial, GroupTag::Z2)
    } else {
        GroupPair::new(GroupTag::Trivial, GroupTag::Trivial)
    })
}

/// The four necessary conditions for `Bir(S^[m])` (`e > 1`, `m ≥ 3`) to be
/// nontrivial, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BirConditions {
    /// `e(m−1)` is not a perfect square.
    pub nonsquare: bool,
    /// `gcd(e, m−1) = 1`.
    pub coprime: bool,
    /// `(m−1)a² − e·b² = 1` has no solution.
    pub twisted_unsolvable: bool,
    /// The minimal solution of `a² − e(m−1)b² = 1` with `a ≡ ±1 mod m−1`
    /// has `a ≡ ±1 mod 2e` and `b` even.
    pub unit_congruence: bool,
}

impl BirConditions {
    pub fn all(&self) -> bool {
        self.nonsquare && self.coprime && self.twisted_unsolvable && self.unit_congruence
    }

    fn first_failure(&self) -> Option<&'static str> {
        [
            (self.nonsquare, "e(m-1) is a perfect square"),
            (self.coprime, "gcd(e, m-1) > 1"),
            (self.twisted_unsolvable, "(m-1)a^2 - e b^2 = 1 is solvable"),
            (self.unit_congruence, "unit congruence modulo 2e fails"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, why)| why)
    }
}

fn check_sm(e: i64, m: i64) -> Result<(), AutError> {
    if e < 2 || m < 3 {
        return Err(AutError::InvalidParameter(format!(
            "need e > 1 and m ≥ 3 (got e={e}, m={m})"
        )));
    }
    Ok(())
}

/// Evaluates the necessary conditions, stopping at the first failure (later
/// fields are then reported as `false`).
pub fn bir_sm_conditions(e: i64, m: i64) -> Result<BirConditions, AutError> {
    check_sm(e, m)?;
    let p = m - 1;
    let mut c = BirConditions {
        nonsquare: !is_square_i64(e * p),
        coprime: false,
        twisted_unsolvable: false,
        unit_congruence: false,
    };
    if !c.nonsquare {
        return Ok(c);
    }
    c.coprime = gcd_i64(e, p) == 1;
    if !c.coprime {
        return Ok(c);
    }
    c.twisted_unsolvable = !solvable(p, e, 1);
    if !c.twisted_unsolvable {
        return Ok(c);
    }
    let u = congruence_unit(e, p);
    let r = u.a.mod_floor(&BigInt::from(2 * e));
    c.unit_congruence = (r == BigInt::from(1) || r == BigInt::from(2 * e - 1)) && u.b.is_even();
    Ok(c)
}

/// `Bir(S^[m])` for `Pic(S) = Z·L`, `L² = 2e > 2`, `m ≥ 3`.  Trivial when a
/// necessary condition fails; `Z/2` for the residual-point involution when
/// `m = e` and for the involution of `S^[3]` at `e = 5` built from lines in
/// the quintic del Pezzo threefold; undecided otherwise.
pub fn bir_sm(e: i64, m: i64) -> Result<GroupTag, AutError> {
    check_sm(e, m)?;
    if m == e || (e, m) == (5, 3) {
        return Ok(GroupTag::Z2);
    }
    if m == e + 1 || m == e + 2 || m == e + 3 || m == e - 1 {
        return Ok(GroupTag::Trivial);
    }
    let c = bir_sm_conditions(e, m)?;
    Ok(match c.first_failure() {
        Some(_) => GroupTag::Trivial,
        None => GroupTag::Unknown("necessary conditions hold".into()),
    })
}

/// `(Aut, Bir)` of a fourfold of K3^[2]-type with `Pic = Z·H ⊕ Z·L`,
/// `diag(2n, −2e')`, `H` of divisibility 2 (`n ≡ −1 mod 4`, `e' > 1`).
pub fn fourfold_groups(n: i64, e2: i64) -> Result<GroupPair, AutError> {
    if n < 1 || n % 4 != 3 {
        return Err(AutError::BadCongruence(format!(
            "n must be positive and ≡ −1 mod 4 (got {n})"
        )));
    }
    if e2 < 2 {
        return Err(AutError::BadCongruence(format!("e' must be at least 2 (got {e2})")));
    }
    if solvable(n, e2, -1) || is_square_i64(n * e2) {
        return Ok(GroupPair::new(GroupTag::Trivial, GroupTag::Trivial));
    }
    let infinite = if solvable(n, e2, 1) {
        GroupTag::InfiniteDihedral
    } else {
        GroupTag::InfiniteCyclic
    };
    Ok(if solvable(n, 4 * e2, -5) {
        GroupPair::new(GroupTag::Trivial, infinite)
    } else {
        GroupPair::new(infinite.clone(), infinite)
    })
}

/// `Bir(X)` for a very general member of a component of the moduli space of
/// polarized manifolds of K3^[m]-type of square `2n` and divisibility `γ`.
pub fn very_general_bir(m: i64, n: i64, gamma: i64) -> Result<GroupTag, AutError> {
    if m < 2 || n < 1 || gamma < 1 {
        return Err(AutError::InvalidParameter(format!(
            "need m ≥ 2, n ≥ 1, γ ≥ 1 (got m={m}, n={n}, γ={gamma})"
        )));
    }
    let exceptional = n == 1 || (n == m - 1 && n == gamma && is_square_mod(-1, m - 1));
    Ok(if exceptional { GroupTag::Z2 } else { GroupTag::Trivial })
}

/// The three possible shapes for Picard number 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank2Shape {
    /// All extremal rays rational; `Aut` and `Bir` finite.
    FiniteBoth,
    /// Nef rays rational, movable rays irrational; `Aut` finite, `Bir` infinite.
    FiniteAutInfiniteBir,
    /// Equal cones with irrational rays; `Aut = Bir` infinite.
    EqualInfinite,
}

/// Shape from the rationality of the extremal rays.
pub fn rank2_trichotomy(nef_rational: bool, mov_rational: bool) -> Result<Rank2Shape, AutError> {
    match (nef_rational, mov_rational) {
        (true, true) => Ok(Rank2Shape::FiniteBoth),
        (true, false) => Ok(Rank2Shape::FiniteAutInfiniteBir),
        (false, false) => Ok(Rank2Shape::EqualInfinite),
        (false, true) => Err(AutError::InconsistentFlags),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupTag::*;

    #[test]
    fn k3_rank_one() {
        assert_eq!(aut_k3_rank1(2).unwrap(), Z2);
        assert_eq!(aut_k3_rank1(4).unwrap(), Trivial);
        assert_eq!(aut_k3_rank1(40).unwrap(), Trivial);
        assert!(aut_k3_rank1(3).is_err());
    }

    #[test]
    fn hilbert_square_groups() {
        assert_eq!(aut_s2(2).unwrap(), Z2);
        assert_eq!(aut_s2(5).unwrap(), Trivial);
        assert_eq!(aut_s2(3).unwrap(), Trivial);
        assert_eq!(bir_s2(5).unwrap(), GroupPair::new(Trivial, Z2));
        assert_eq!(bir_s2(13).unwrap(), GroupPair::new(Z2, Z2));
        assert_eq!(bir_s2(7).unwrap(), GroupPair::new(Trivial, Trivial));
        assert_eq!(bir_s2(1).unwrap(), GroupPair::new(Z2, Z2));
    }

    #[test]
    fn higher_hilbert_powers() {
        assert_eq!(bir_sm(5, 5).unwrap(), Z2);
        assert_eq!(bir_sm(4, 5).unwrap(), Trivial);
        assert_eq!(bir_sm(5, 3).unwrap(), Z2);
        assert!(bir_sm_conditions(5, 3).unwrap().all());
        assert!(!bir_sm_conditions(4, 5).unwrap().nonsquare);
    }

    #[test]
    fn fourfold_examples() {
        assert_eq!(
            fourfold_groups(3, 2).unwrap(),
            GroupPair::new(Trivial, InfiniteDihedral)
        );
        assert_eq!(
            fourfold_groups(3, 6).unwrap(),
            GroupPair::new(InfiniteCyclic, InfiniteCyclic)
        );
        assert_eq!(
            fourfold_groups(3, 11).unwrap(),
            GroupPair::new(InfiniteDihedral, InfiniteDihedral)
        );
        assert!(matches!(fourfold_groups(5, 2), Err(AutError::BadCongruence(_))));
    }

    #[test]
    fn very_general() {
        assert_eq!(very_general_bir(2, 1, 1).unwrap(), Z2);
        assert_eq!(very_general_bir(3, 2, 2).unwrap(), Z2);
        assert_eq!(very_general_bir(2, 5, 1).unwrap(), Trivial);
        assert_eq!(very_general_bir(4, 3, 3).unwrap(), Trivial);
        assert_eq!(very_general_bir(6, 5, 5).unwrap(), Z2);
    }

    #[test]
    fn trichotomy() {
        assert_eq!(rank2_trichotomy(true, true).unwrap(), Rank2Shape::FiniteBoth);
        assert_eq!(rank2_trichotomy(true, false).unwrap(), Rank2Shape::FiniteAutInfiniteBir);
        assert_eq!(rank2_trichotomy(false, false).unwrap(), Rank2Shape::EqualInfinite);
        assert_eq!(rank2_trichotomy(false, true), Err(AutError::InconsistentFlags));
    }

    #[test]
    fn display() {
        assert_eq!(InfiniteDihedral.to_string(), "Z x| Z/2");
        assert_eq!(Unknown("x".into()).to_string(), "?");
    }
}
