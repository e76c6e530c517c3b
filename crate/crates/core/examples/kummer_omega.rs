//! The Kummer surface of E_i x E_i, the dihedral action on its lattice, the
//! coinvariant lattice and its two E8(-2) eigenlattices.

use elliptic_k3::k3;

fn main() {
    let a = k3::ambient_report().unwrap();
    println!("H^2: rank {} det {} signature {:?}, group of order {}", a.rank, a.det, a.signature, a.group_order);
    println!("T = {:?}", a.transcendental_gram);

    let o = k3::omega_d4().unwrap();
    let r = k3::omega_report(&o).unwrap();
    println!("Omega: {:?}", r.invariants);
    println!("fixed part rank {} det {}, NS part rank {} det {}", r.fixed_rank, r.fixed_det, r.ns_fixed_rank, r.ns_fixed_det);
    for row in &r.gram {
        println!("  {:?}", row);
    }

    let e = k3::eigenlattice_e8_check(&o).unwrap();
    for l in &e.eigenlattices {
        println!("{}: rank {} det {} norm-4 vectors {} E8(-2): {:?}", l.involution, l.rank, l.det, l.norm4_vectors, l.isometric_to_e8_minus2);
    }
    println!("sum saturates to Omega: {}", e.sum_saturation_equals_omega);
}
