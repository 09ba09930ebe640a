//! Discriminant forms, divisibilities and Eichler data against direct
//! enumeration.

use k3m::lattice::{
    disc_group, disc_order, divisibility, exists_primitive_vector, orbit_key, strange_dual_params, Block, DiscGroup,
    LatticeSpec,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Reduces into `[0, 2)`.
fn mod2(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (x / &two).floor();
    x - k * two
}

/// Sorted `(order, q̄ mod 2)` over all elements: an isomorphism invariant
/// of the discriminant form.
fn spectrum(dg: &DiscGroup) -> Vec<(u64, BigRational)> {
    let mut v: Vec<(u64, BigRational)> = dg
        .elements()
        .iter()
        .map(|x| (dg.element_order(x), mod2(&dg.element_q(x))))
        .collect();
    v.sort();
    v
}

/// The same invariant computed directly from a nondegenerate even 2×2 Gram
/// matrix: the classes of `G⁻¹y = adj(G)·y / D` modulo `Z²` for integer
/// `y`, kept as integer numerators modulo `D = |det G|`.
fn brute_spectrum_2x2(g: [[i64; 2]; 2]) -> Vec<(u64, BigRational)> {
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let d = det.abs();
    let sign = det.signum();
    let adj = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]];
    let mut classes = std::collections::BTreeSet::new();
    for y0 in 0..d {
        for y1 in 0..d {
            let x0 = (sign * (adj[0][0] * y0 + adj[0][1] * y1)).rem_euclid(d);
            let x1 = (sign * (adj[1][0] * y0 + adj[1][1] * y1)).rem_euclid(d);
            classes.insert((x0, x1));
        }
    }
    let mut out: Vec<(u64, BigRational)> = classes
        .into_iter()
        .map(|(x0, x1)| {
            let num = x0 * x0 * g[0][0] + 2 * x0 * x1 * g[0][1] + x1 * x1 * g[1][1];
            let order = d / x0.gcd(&x1).gcd(&d);
            (order as u64, mod2(&r(num, d * d)))
        })
        .collect();
    out.sort();
    out
}

fn valid_polarization() -> impl Strategy<Value = (i64, i64, i64)> {
    (2i64..10, 1i64..20, 1i64..=2).prop_filter_map("divisibility 2 needs n + m ≡ 1 mod 4", |(m, n, g)| {
        (g == 1 || (n + m) % 4 == 1).then_some((m, n, g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn diagonal_forms_match_enumeration(a in 1i64..13, b in 1i64..13, sa in any::<bool>(), sb in any::<bool>()) {
        let (t1, t2) = (if sa { 2 * a } else { -2 * a }, if sb { 2 * b } else { -2 * b });
        let lat = LatticeSpec::new(vec![Block::U, Block::I1(t1), Block::I1(t2)]).unwrap();
        prop_assert_eq!(spectrum(&lat.disc_group()), brute_spectrum_2x2([[t1, 0], [0, t2]]));
    }

    #[test]
    fn gram_forms_match_enumeration(a in -8i64..8, b in -8i64..8, c in -8i64..8) {
        let g = [[2 * a, b], [b, 2 * c]];
        let det = 4 * a * c - b * b;
        prop_assume!(det != 0 && det.abs() <= 150);
        let lat = LatticeSpec::new(vec![Block::Gram(vec![g[0].to_vec(), g[1].to_vec()])]).unwrap();
        let dg = lat.disc_group();
        prop_assert_eq!(dg.order() as i64, det.abs());
        prop_assert_eq!(dg.invariant_factors.iter().product::<u64>() as i64, det.abs());
        prop_assert!(dg.invariant_factors.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(spectrum(&dg), brute_spectrum_2x2(g));
    }

    #[test]
    fn polarized_discriminant_orders((m, n, g) in valid_polarization()) {
        let dg = disc_group(m, n, g).unwrap();
        prop_assert_eq!(dg.order() as i64, disc_order(m, n, g).unwrap());
        prop_assert_eq!(dg.order() as i64, 4 * n * (m - 1) / (g * g));
    }

    #[test]
    fn pairing_polarizes_the_quadratic_form((m, n, g) in valid_polarization(), i in 0usize..1000, j in 0usize..1000) {
        let dg = disc_group(m, n, g).unwrap();
        let els = dg.elements();
        let (x, y) = (&els[i % els.len()], &els[j % els.len()]);
        let sum: Vec<u64> = x.iter().zip(y).zip(&dg.invariant_factors).map(|((a, b), d)| (a + b) % d).collect();
        let lhs = dg.element_q(&sum) - dg.element_q(x) - dg.element_q(y);
        let two_b = dg.element_pairing(x, y) * BigInt::from(2);
        prop_assert_eq!(mod2(&lhs), mod2(&two_b));
    }

    #[test]
    fn strange_duality_is_an_isometric_involution((m, n, g) in valid_polarization()) {
        let (m2, n2, g2) = strange_dual_params(m, n, g).unwrap();
        prop_assert_eq!((m2, n2, g2), (n + 1, m - 1, g));
        prop_assert_eq!(strange_dual_params(m2, n2, g2).unwrap(), (m, n, g));
        prop_assert_eq!(spectrum(&disc_group(m, n, g).unwrap()), spectrum(&disc_group(m2, n2, g2).unwrap()));
    }

    #[test]
    fn divisibility_closed_form(
        m in 2i64..12,
        u in proptest::collection::vec(-6i64..6, 6),
        e8 in proptest::collection::vec(-3i64..3, 16),
        l in -6i64..6,
    ) {
        let lat = LatticeSpec::k3m(m);
        let coords: Vec<i64> = u.iter().chain(e8.iter()).copied().chain(std::iter::once(l)).collect();
        let unimodular_content = u.iter().chain(e8.iter()).fold(0i64, |acc, &c| acc.gcd(&c));
        let v = lat.vector(coords).unwrap();
        prop_assume!(v.content() != 0);
        prop_assert_eq!(divisibility(&v).unwrap(), unimodular_content.gcd(&(2 * (m - 1) * l)));
    }

    #[test]
    fn eichler_data_of_primitive_vectors_is_realized(
        m in 2i64..12,
        x in -6i64..6,
        y in -6i64..6,
        l in -6i64..6,
    ) {
        // x·u₁ + y·v₁ + l·ℓ, primitive when gcd(x, y, l) = 1.
        prop_assume!(x.gcd(&y).gcd(&l) == 1);
        let lat = LatticeSpec::k3m(m);
        let mut coords = vec![0; lat.rank()];
        coords[0] = x;
        coords[1] = y;
        coords[22] = l;
        let v = lat.vector(coords).unwrap();
        let key = orbit_key(&v).unwrap();
        prop_assert_eq!(key.square as i128, v.square());
        prop_assert_eq!(key.star_order, divisibility(&v).unwrap());
        let target = mod2(&r(key.square, key.star_order * key.star_order));
        prop_assert_eq!(mod2(&key.star_q), target);
        prop_assert!(exists_primitive_vector(&lat, &key).unwrap());
    }
}

#[test]
fn unimodular_lattices_have_trivial_discriminant() {
    for lat in [LatticeSpec::k3(), LatticeSpec::mukai(), LatticeSpec::m_lattice()] {
        let dg = lat.disc_group();
        assert_eq!(dg.order(), 1);
        assert!(dg.invariant_factors.is_empty());
    }
}

#[test]
fn hilbert_scheme_lattice_discriminant() {
    // D(Λ_{K3^[m]}) = Z/2p generated by ℓ/2p with q̄ = −1/2p, p = m − 1.
    for m in 2..=20 {
        let p = m - 1;
        let dg = LatticeSpec::k3m(m).disc_group();
        assert_eq!(dg.invariant_factors, vec![2 * p as u64]);
        let mut want: Vec<(u64, BigRational)> = (0..2 * p)
            .map(|k| ((2 * p / k.gcd(&(2 * p))) as u64, mod2(&r(-k * k, 2 * p))))
            .collect();
        want.sort();
        assert_eq!(spectrum(&dg), want, "m={m}");
    }
}
