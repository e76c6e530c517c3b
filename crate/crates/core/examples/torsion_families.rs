//! Tate normal forms: a marked torsion point, its height and its
//! intersection with the zero section.

use elliptic_k3::algebra::parse_ratfun;
use elliptic_k3::mordell_weil::{intersection_with_zero, solve_components, torsion_order};
use elliptic_k3::weierstrass::{families, fiber_counts, format_counts};

fn main() {
    for n in 4..=7 {
        let tn = families::tate_normal(n, &parse_ratfun("t").unwrap()).unwrap();
        let (model, pts) = families::to_short_model(&tn.curve, std::slice::from_ref(&tn.point)).unwrap();
        let fibers = model.all_fibers().unwrap();
        let kinds: Vec<_> = fibers.iter().flat_map(|f| std::iter::repeat_n(f.kind, f.weight())).collect();
        println!(
            "n = {n}: {} [{}], order {:?}, P.O = {}, components {:?}",
            format_counts(&fiber_counts(&fibers)),
            model.surface_class(),
            torsion_order(&model, &pts[0], 12),
            intersection_with_zero(&model, &pts[0]).unwrap(),
            solve_components(model.m(), &kinds, n as u32).unwrap()
        );
    }
}
