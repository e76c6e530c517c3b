//! Quotients by automorphisms of the base: tau -> zeta tau, tau -> 1/tau,
//! and base change back up.

use elliptic_k3::algebra::{int, Polynomial};
use elliptic_k3::quotients::{base_change, quotient_by_sigma_n, quotient_by_varsigma2};
use elliptic_k3::weierstrass::{families, fiber_counts, format_counts, Place};
use elliptic_k3::WeierstrassModel;
use rand::SeedableRng;

fn describe(m: &WeierstrassModel) -> String {
    let at0 = m.classify_fiber(&Place::Finite(Polynomial::t())).unwrap().kind;
    format!("A = {}, B = {}; {}; fiber at 0: {}", m.a(), m.b(), format_counts(&fiber_counts(&m.all_fibers().unwrap())), at0)
}

fn main() {
    for n in 2..=6 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
        let s = families::random_sigma_n(n, 5, &mut rng).unwrap();
        let y = quotient_by_sigma_n(&s.model, n).unwrap();
        println!("n = {n}: {}", describe(&y));
        assert_eq!(base_change(&y, n).unwrap(), s.model);
    }

    let x = families::dihedral4(&int(1), &int(3), &int(2), &int(-5)).unwrap();
    let y = quotient_by_sigma_n(&x, 4).unwrap();
    let z = quotient_by_varsigma2(&y).unwrap();
    println!("dihedral quotient: {}", describe(&z));
}
