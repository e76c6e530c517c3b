//! Overlattices M_G of sums of root lattices, and which subgroups force the
//! larger group.

use elliptic_k3::k3::{self, MgName, GROUPS};

fn main() {
    for name in [MgName::Z5, MgName::D6] {
        let r = k3::mg_report(name).unwrap();
        println!("{}: index {}, {:?}", r.name, r.index, r.invariants);
        println!("  hyperbolic sum {:?}, det ratio {}", r.hyperbolic_sum, r.det_ratio);
    }
    for (h, _, _) in GROUPS {
        for (g, _, _) in GROUPS {
            let p = k3::pair_report(h, g).unwrap();
            if h != g && p.property {
                println!("{} in {} forces {}", h, g, g);
            }
        }
    }
}
