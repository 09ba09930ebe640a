//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns `Some(r)` with `r ≥ 0` and `r² = n` when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Perfect-square test for machine integers.
pub fn is_square_i64(n: i64) -> bool {
    exact_sqrt_i64(n).is_some()
}

/// Integer square root of a nonnegative machine integer when it is exact.
pub fn exact_sqrt_i64(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as u64).sqrt() as i64;
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Nonnegative greatest common divisor of machine integers.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing order.  Intended for the small parameters of this crate.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// The `p`-adic valuation of a nonzero integer.
pub fn valuation(p: i64, mut n: i64) -> u32 {
    assert!(n != 0 && p > 1);
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// Whether `a` is a square modulo `m` (`m ≥ 1`); every residue is a square
/// modulo 1.
pub fn is_square_mod(a: i64, m: i64) -> bool {
    assert!(m >= 1);
    let r = a.rem_euclid(m);
    (0..m).any(|x| (x * x) % m == r)
}

/// All positive divisors of `n ≥ 1`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Builds a rational `p/q` from machine integers.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduces a rational into the half-open interval `[-m/2, m/2)`, i.e. picks
/// the representative of its class modulo `m` used for discriminant-form
/// values (`m = 2` for q̄, `m = 1` for the bilinear form).
pub fn reduce_centered(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let half = &m / BigRational::from_integer(BigInt::from(2));
    let shifted = x + &half;
    let k = (&shifted / &m).floor();
    x - k * m
}

/// Whether two rationals agree modulo the integer `m`.
pub fn congruent_mod(x: &BigRational, y: &BigRational, m: i64) -> bool {
    let diff = (x - y) / BigRational::from_integer(BigInt::from(m));
    diff.is_integer()
}

/// Renders a rational as `p` or `p/q` in lowest terms.
pub fn render_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Binomial coefficient `C(x, k)` extended polynomially to every integer `x`
/// (falling factorial over `k!`).
pub fn binomial(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Serializes an integer as a number when it fits in 128 bits and as a
/// decimal string otherwise.
pub fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => match x.to_i128() {
            Some(v) => s.serialize_i128(v),
            None => s.collect_str(x),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_helpers() {
        assert_eq!(exact_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(exact_sqrt(&BigInt::from(50)), None);
        assert!(is_square_i64(0));
        assert!(!is_square_i64(-4));
    }

    #[test]
    fn factorization_and_divisors() {
        assert_eq!(factorize(30), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(is_prime(47) && !is_prime(1) && !is_prime(49));
    }

    #[test]
    fn binomial_negative_upper_index() {
        assert_eq!(binomial(&BigInt::from(6), 2), BigInt::from(15));
        assert_eq!(binomial(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(1), 2), BigInt::from(0));
    }

    #[test]
    fn centered_reduction() {
        assert_eq!(reduce_centered(&ratio(4, 3), 2), ratio(-2, 3));
        assert_eq!(reduce_centered(&ratio(-1, 2), 2), ratio(-1, 2));
        assert_eq!(reduce_centered(&ratio(1, 1), 2), ratio(-1, 1));
        assert_eq!(reduce_centered(&ratio(1, 2), 1), ratio(-1, 2));
    }
}
