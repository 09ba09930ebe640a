//! Heegner divisors and period images: closed forms, the generic
//! discriminant-group classification and brute-force coordinate search.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use k3m::lattice::{divisibility, LatticeSpec};
use k3m::periods::{
    excluded_heegner, excluded_heegner_m2, heegner_components, heegner_components_m2, heegner_nonempty_m2,
    hilbert_square_points, nl_family, nu, oracle_excluded,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn m2_parameters(n_max: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=n_max).flat_map(|n| {
        let g2 = (n % 4 == 3).then_some((n, 2));
        std::iter::once((n, 1)).chain(g2)
    })
}

#[test]
fn closed_form_period_images_match_generic_classification() {
    for (n, g) in m2_parameters(50) {
        assert_eq!(
            excluded_heegner(2, n, g).unwrap(),
            excluded_heegner_m2(n, g).unwrap(),
            "n={n}, γ={g}"
        );
    }
}

#[test]
fn closed_form_components_match_generic_classification() {
    for (n, g) in m2_parameters(30) {
        for e in 1..=60 {
            let generic = heegner_components(2, n, g, 2 * e).unwrap();
            assert_eq!(
                heegner_nonempty_m2(n, g, e).unwrap(),
                !generic.is_empty(),
                "n={n}, γ={g}, e={e}"
            );
            if let Some(closed) = heegner_components_m2(n, g, e).unwrap() {
                assert_eq!(closed, generic, "n={n}, γ={g}, e={e}");
            }
        }
    }
}

#[test]
fn coordinate_oracle_on_further_parameters() {
    for (m, n, g) in [
        (2, 2, 1),
        (2, 5, 1),
        (2, 7, 2),
        (3, 1, 1),
        (3, 2, 2),
        (4, 5, 2),
        (6, 3, 2),
    ] {
        let lib: BTreeSet<_> = excluded_heegner(m, n, g).unwrap().into_iter().collect();
        let oracle = oracle_excluded(m, n, g, 10).unwrap();
        assert_eq!(lib, oracle, "(m, n, γ) = ({m}, {n}, {g})");
    }
}

/// `b·L − a·δ` in `Λ_{K3^[2]}`, with `L = u₁ + e·v₁` and `δ = ℓ`.
fn hilbert_square_class(e: i64, a: i64, b: i64) -> Vec<i64> {
    let mut v = vec![0; 23];
    v[0] = b;
    v[1] = b * e;
    v[22] = -a;
    v
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("small solution")
}

#[test]
fn hilbert_square_points_have_the_right_class() {
    let lat = LatticeSpec::k3m(2);
    for n in 1..=30 {
        for e in 1..=60 {
            let nu_e = nu(e).unwrap();
            for g in [1, 2] {
                let points = hilbert_square_points(n, e, g).unwrap();
                let mut found = BTreeSet::new();
                for p in &points {
                    assert_eq!(p.gamma, g);
                    let ratio = BigRational::new(p.a.clone(), p.b.clone());
                    assert_eq!(nu_e.cmp_rational(&ratio), Ordering::Greater, "n={n}, e={e}");
                    let (a, b) = (small(&p.a), small(&p.b));
                    let v = lat.vector(hilbert_square_class(e, a, b)).unwrap();
                    assert_eq!(v.square(), 2 * n as i128, "n={n}, e={e}, ({a},{b})");
                    assert_eq!(v.content(), 1);
                    assert_eq!(divisibility(&v).unwrap(), g, "n={n}, e={e}, ({a},{b})");
                    found.insert((a, b));
                }
                // Exhaustive search over b ≤ 400 for primitive classes of
                // square 2n and divisibility γ below the nef slope.
                let mut brute = BTreeSet::new();
                for b in 1..=400i64 {
                    let a2 = e * b * b - n;
                    if a2 <= 0 {
                        continue;
                    }
                    let a = (a2 as f64).sqrt().round() as i64;
                    if a * a != a2 || a.gcd(&b) != 1 {
                        continue;
                    }
                    let v = lat.vector(hilbert_square_class(e, a, b)).unwrap();
                    let below = nu_e.cmp_rational(&BigRational::new(a.into(), b.into())) == Ordering::Greater;
                    if below && divisibility(&v).unwrap() == g {
                        brute.insert((a, b));
                    }
                }
                let found_small: BTreeSet<_> = found.iter().filter(|(_, b)| *b <= 400).cloned().collect();
                assert_eq!(found_small, brute, "n={n}, e={e}, γ={g}");
            }
        }
    }
}

#[test]
fn noether_lefschetz_families_carry_hilbert_squares() {
    for (n, g) in m2_parameters(40) {
        for (i, e) in nl_family(n, g, 15).unwrap().into_iter().enumerate() {
            let points = hilbert_square_points(n, e, g).unwrap();
            let (a, b) = if g == 1 {
                (e - n).sqrt_pair(1)
            } else {
                (4 * e - n).sqrt_pair(2)
            };
            assert!(
                points.iter().any(|p| small(&p.a) == a && small(&p.b) == b),
                "n={n}, γ={g}, family member {i}: e={e} lacks ({a},{b})"
            );
        }
    }
    // The two excluded members fail the nef inequality.
    assert!(hilbert_square_points(1, 5, 1).unwrap().iter().all(|p| small(&p.a) != 2));
    assert!(hilbert_square_points(3, 3, 2).unwrap().iter().all(|p| small(&p.a) != 3));
}

trait SqrtPair {
    /// `(√self, b)` for a perfect square `self`.
    fn sqrt_pair(self, b: i64) -> (i64, i64);
}

impl SqrtPair for i64 {
    fn sqrt_pair(self, b: i64) -> (i64, i64) {
        let a = (self as f64).sqrt().round() as i64;
        assert_eq!(a * a, self);
        (a, b)
    }
}
