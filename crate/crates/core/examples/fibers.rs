//! Singular fibers of a few Weierstrass models over P^1.

use elliptic_k3::algebra::{int, parse_poly};
use elliptic_k3::weierstrass::{families, fiber_counts, format_counts};
use elliptic_k3::WeierstrassModel;

fn show(name: &str, m: &WeierstrassModel) {
    let fibers = m.all_fibers().unwrap();
    println!("{name}: {} [{}]", format_counts(&fiber_counts(&fibers)), m.surface_class());
    for f in &fibers {
        println!("  {:>10}  {:<5} v(A)={:?} v(B)={:?} v(D)={}", f.place.to_string(), f.kind.to_string(), f.v_a, f.v_b, f.v_d);
    }
}

fn main() {
    show("Kummer of E_i x E_i", &families::kummer_ei());
    show("dihedral family (1, 3, 2, -5)", &families::dihedral4(&int(1), &int(3), &int(2), &int(-5)).unwrap());
    let r = WeierstrassModel::new(parse_poly("t^3").unwrap(), parse_poly("t^5 + 1").unwrap()).unwrap();
    show("rational surface", &r);
}
