//! Invariants over random inputs.

use elliptic_k3::algebra::{frac, Field, Polynomial, Rational};
use elliptic_k3::checks;
use elliptic_k3::lattice::IntegralLattice;
use elliptic_k3::mordell_weil::Curve;
use elliptic_k3::quotients::{quotient_by_2torsion, quotient_fiber};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..7)
        .prop_map(|c| Polynomial::from_coeffs(c.into_iter().map(|(n, d)| frac(n, d)).collect()))
}

fn gram() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let mut g = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    g[i][j] = if i == j { 2 * v[i * n + i] } else { v[i.min(j) * n + i.max(j)] };
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &b, -&(&b - &a));
    }

    #[test]
    fn division_and_gcd(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        if let (Some(dr), Some(db)) = (r.degree(), b.degree()) {
            prop_assert!(dr < db || r.is_zero());
        }
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), n in -5i64..=5) {
        let x = Rational::from_integer(n.into());
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn lattice_determinants(g in gram(), h in gram(), k in 2i64..=5) {
        let (Ok(l), Ok(m)) = (IntegralLattice::from_i64(&g), IntegralLattice::from_i64(&h)) else { return Ok(()) };
        prop_assert_eq!(l.direct_sum(&m).det(), l.det() * m.det());
        let t = l.twist(k);
        let u = t.untwist(k).unwrap();
        prop_assert_eq!(u.gram(), l.gram());
        let order = l.discriminant_group().order();
        prop_assert_eq!(order, num_traits::Signed::abs(&l.det()));
    }

    #[test]
    fn two_isogeny_round_trip(a in -10i64..=10, b in -10i64..=10) {
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let c = Curve::two_torsion_form(a.clone(), b.clone());
        prop_assume!(!c.discriminant().is_zero());
        let q = quotient_by_2torsion(&a, &b).unwrap();
        let back = quotient_by_2torsion(&q.isogeny.target.a2, &q.isogeny.target.a4).unwrap();
        // The double quotient is the source rescaled by u = 2.
        prop_assert_eq!(back.isogeny.target.a2.clone(), a.scale(4));
        prop_assert_eq!(back.isogeny.target.a4.clone(), b.scale(16));
    }

    #[test]
    fn fiber_rule_preserves_euler_on_free_orbits(d in 1u32..=12, n in 2u32..=7) {
        // The identity component: I_d goes to I_{dn}.
        prop_assert_eq!(quotient_fiber(d, n, 0).unwrap().euler_number(), d * n);
    }
}

#[test]
fn seeded_suites_pass() {
    let r = checks::run_all(7, 100).unwrap();
    for s in &r.suites {
        assert!(s.ok(), "{}: {:?}", s.name, s.failures);
        assert_eq!(s.passed, 100);
    }
}
