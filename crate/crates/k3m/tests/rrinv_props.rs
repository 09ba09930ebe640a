//! Riemann–Roch polynomials and Fujiki constants.

use k3m::rrinv::{chi, fujiki_constant, h0_polarized, top_self_intersection, RiemannRochInput, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn hilb(m: i64, q: i64) -> BigInt {
    chi(RiemannRochInput {
        series: Series::HilbK3,
        m,
        q,
    })
    .unwrap()
}

fn kummer(m: i64, q: i64) -> BigInt {
    chi(RiemannRochInput {
        series: Series::Kummer,
        m,
        q,
    })
    .unwrap()
}

#[test]
fn spot_values() {
    assert_eq!(hilb(2, 6), BigInt::from(15));
    assert_eq!(hilb(2, 22), BigInt::from(91));
    assert_eq!(hilb(4, 2), BigInt::from(15));
    assert_eq!(hilb(3, 4), BigInt::from(20));
    // K3 surfaces: χ(L) = L²/2 + 2.
    for q in (-20..=20).step_by(2) {
        assert_eq!(hilb(1, q), BigInt::from(q / 2 + 2));
    }
    // Trivial bundle: χ(O) = m + 1 for K3^[m]-type.
    for m in 1..=10 {
        assert_eq!(hilb(m, 0), BigInt::from(m + 1));
    }
}

#[test]
fn strange_duality_symmetry_of_sections() {
    for m in 2..=40 {
        for n in 1..=40 {
            assert_eq!(h0_polarized(m, n), h0_polarized(n + 1, m - 1), "m={m}, n={n}");
        }
    }
}

#[test]
fn odd_squares_are_rejected() {
    assert!(chi(RiemannRochInput {
        series: Series::HilbK3,
        m: 2,
        q: 3
    })
    .is_err());
    assert!(chi(RiemannRochInput {
        series: Series::Kummer,
        m: 2,
        q: 0
    })
    .is_ok());
}

/// `m`-th forward difference of `k ↦ f(2k)` at `k = k0`.
fn mth_difference(f: impl Fn(i64) -> BigInt, m: i64, k0: i64) -> BigRational {
    let mut total = BigInt::zero();
    for j in 0..=m {
        let sign = if (m - j) % 2 == 0 { 1 } else { -1 };
        let binom = (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(m - i) / BigInt::from(i + 1));
        total += BigInt::from(sign) * binom * f(2 * (k0 + j));
    }
    BigRational::from_integer(total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The leading coefficient of χ as a polynomial in `q/2` is
    /// `c_X·2^m/(2m)!`, so its `m`-th difference is `c_X·2^m·m!/(2m)!`.
    /// (For `m = 1` the Fujiki constant is 1 by the surface convention, and
    /// the Kummer polynomial does not describe a surface.)
    #[test]
    fn chi_leading_term_matches_fujiki_constant(m in 1i64..9, k0 in -30i64..30) {
        for (series, f) in [(Series::HilbK3, hilb as fn(i64, i64) -> BigInt), (Series::Kummer, kummer)] {
            if series == Series::Kummer && m == 1 {
                continue;
            }
            let c = fujiki_constant(series, m).unwrap();
            let fact = |k: i64| (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i));
            let want = c * BigRational::new(BigInt::from(2).pow(m as u32) * fact(m), fact(2 * m));
            prop_assert_eq!(mth_difference(|q| f(m, q), m, k0), want);
        }
    }

    #[test]
    fn top_intersection_is_fujiki_times_power(m in 1i64..8, k in -20i64..20) {
        let q = 2 * k;
        let c = fujiki_constant(Series::HilbK3, m).unwrap();
        let want = c * BigRational::from_integer(BigInt::from(q).pow(m as u32));
        prop_assert_eq!(BigRational::from_integer(top_self_intersection(Series::HilbK3, m, q).unwrap()), want);
    }

    #[test]
    fn sections_are_binomials(m in 1i64..30, n in 1i64..30) {
        let want = (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(n + 1 + i) / BigInt::from(i));
        prop_assert_eq!(h0_polarized(m, n), want);
    }
}
