//! 2- and 4-isogenies from torsion points, checked against Velu and against
//! multiplication by the degree.

use elliptic_k3::algebra::{int, Field, RationalFunction};
use elliptic_k3::mordell_weil::Curve;
use elliptic_k3::mordell_weil::{random_points, Point};
use elliptic_k3::quotients::{
    composes_to_multiplication, default_scalings, find_normalization, quotient_by_2torsion, quotient_by_4torsion, velu_quotient,
};
use rand::SeedableRng;

fn show<F: Field + std::fmt::Display>(c: &Curve<F>) -> String {
    format!("y^2 = x^3 + ({})x^2 + ({})x + ({})", c.a2, c.a4, c.a6)
}

fn main() {
    let (e, f) = (int(2), int(7));
    let q = quotient_by_4torsion(&e, &f).unwrap();
    println!("source {}", show(&q.isogeny.source));
    println!("target {}", show(&q.isogeny.target));

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let pts = random_points(&q.isogeny.source, 5, 3, &mut rng).unwrap();
    for p in &pts {
        println!("  {}  ->  {}   dual o phi = [4]: {}", p, q.isogeny.apply(p), composes_to_multiplication(&q, p));
    }

    let v = velu_quotient(&q.isogeny.source, &Point::Affine(f.clone(), e.clone() * &f), 4).unwrap();
    println!("Velu target {} ~ explicit via {:?}", show(&v.target), find_normalization(&q.isogeny.target, &v.target, &default_scalings()));

    // Over Q(t): y² = x(x² + t x + 1) by (0, 0).
    let t = RationalFunction::t();
    let two = quotient_by_2torsion(&t, &RationalFunction::one()).unwrap();
    println!("over Q(t): {}  ->  {}", show(&two.isogeny.source), show(&two.isogeny.target));
}
