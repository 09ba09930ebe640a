//! Riemann–Roch polynomials, Fujiki constants and Betti numbers for the two
//! Beauville series: Hilbert powers of K3 surfaces (K3^[m]-type) and
//! generalized Kummer varieties.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, factorial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("OddSquare: the Beauville–Fujiki square {0} must be even")]
    OddSquare(i64),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
}

/// Deformation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    /// Manifolds of K3^[m]-type.
    HilbK3,
    /// Generalized Kummer varieties of dimension `2m`.
    Kummer,
}

/// A line bundle of Beauville–Fujiki square `q` on a `2m`-dimensional
/// manifold of the given series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RiemannRochInput {
    pub series: Series,
    pub m: i64,
    pub q: i64,
}

/// Euler characteristic: `C(q/2 + m + 1, m)` for K3^[m]-type and
/// `(m+1)·C(q/2 + m, m)` for Kummer type, with the binomial extended
/// polynomially to negative upper index.
pub fn chi(input: RiemannRochInput) -> Result<BigInt, RrError> {
    let RiemannRochInput { series, m, q } = input;
    if q % 2 != 0 {
        return Err(RrError::OddSquare(q));
    }
    if m < 1 {
        return Err(RrError::InvalidParameter(format!("m must be positive (got {m})")));
    }
    let k = m as u32;
    Ok(match series {
        Series::HilbK3 => binomial(&BigInt::from(q / 2 + m + 1), k),
        Series::Kummer => BigInt::from(m + 1) * binomial(&BigInt::from(q / 2 + m), k),
    })
}

/// `h⁰(X, H) = C(n+m+1, m)` for an ample `H` of square `2n` on a manifold of
/// K3^[m]-type (higher cohomology vanishes).
pub fn h0_polarized(m: i64, n: i64) -> BigInt {
    chi(RiemannRochInput {
        series: Series::HilbK3,
        m,
        q: 2 * n,
    })
    .expect("even square")
}

/// Fujiki constant `c_X` with `x^{2m} = c_X·q_X(x)^m`.
pub fn fujiki_constant(series: Series, m: i64) -> Result<BigRational, RrError> {
    if m < 1 {
        return Err(RrError::InvalidParameter(format!("m must be positive (got {m})")));
    }
    if m == 1 {
        return Ok(BigRational::one());
    }
    let k = m as u32;
    let base = BigRational::new(factorial(2 * k), factorial(k) * BigInt::from(2).pow(k));
    Ok(match series {
        Series::HilbK3 => base,
        Series::Kummer => base * BigRational::from_integer(BigInt::from(m + 1)),
    })
}

/// `x^{2m} = c_X·q^m`.
pub fn top_self_intersection(series: Series, m: i64, q: i64) -> Result<BigInt, RrError> {
    if q % 2 != 0 {
        return Err(RrError::OddSquare(q));
    }
    let value = fujiki_constant(series, m)? * BigRational::from_integer(BigInt::from(q).pow(m as u32));
    debug_assert!(value.is_integer());
    Ok(value.to_integer())
}

/// Second Betti number (for `m ≥ 2`).
pub fn betti2(series: Series) -> i64 {
    match series {
        Series::HilbK3 => 23,
        Series::Kummer => 7,
    }
}

/// Dimension of the moduli spaces of polarized manifolds: `b₂ − 3`.
pub fn moduli_dimension(series: Series) -> i64 {
    betti2(series) - 3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hilb(m: i64, q: i64) -> BigInt {
        chi(RiemannRochInput {
            series: Series::HilbK3,
            m,
            q,
        })
        .unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(hilb(2, 6), BigInt::from(15));
        assert_eq!(hilb(4, 2), BigInt::from(15));
        assert_eq!(hilb(2, 22), BigInt::from(91));
        assert_eq!(hilb(2, -6), BigInt::from(0));
        let odd = chi(RiemannRochInput {
            series: Series::Kummer,
            m: 2,
            q: 3,
        });
        assert_eq!(odd, Err(RrError::OddSquare(3)));
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_polarized(2, 1), BigInt::from(6));
        assert_eq!(h0_polarized(3, 2), BigInt::from(20));
    }

    #[test]
    fn fujiki_examples() {
        assert_eq!(
            fujiki_constant(Series::HilbK3, 2).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert_eq!(
            fujiki_constant(Series::Kummer, 2).unwrap(),
            BigRational::from_integer(9.into())
        );
        assert_eq!(fujiki_constant(Series::HilbK3, 1).unwrap(), BigRational::one());
        assert_eq!(top_self_intersection(Series::HilbK3, 2, 6).unwrap(), BigInt::from(108));
        assert_eq!(
            top_self_intersection(Series::HilbK3, 12, 2).unwrap(),
            factorial(24) / factorial(12)
        );
        assert_eq!(top_self_intersection(Series::Kummer, 3, 0).unwrap(), BigInt::from(0));
        assert_eq!(betti2(Series::HilbK3), 23);
        assert_eq!(betti2(Series::Kummer), 7);
        assert_eq!(moduli_dimension(Series::HilbK3), 20);
    }
}
