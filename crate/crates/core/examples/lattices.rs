//! Integral lattices: invariants, discriminant forms, complements, glue and
//! twists.

use elliptic_k3::algebra::frac;
use elliptic_k3::lattice::{intmat, standard, StandardName};
use elliptic_k3::IntegralLattice;

fn lat(name: &str, sign: i64) -> IntegralLattice {
    standard(&name.parse::<StandardName>().unwrap(), sign).unwrap()
}

fn main() {
    let d4 = lat("D4", -1);
    println!("D4(-1): {:?}", d4.invariants(true).unwrap());
    let dg = d4.discriminant_group();
    println!("  discriminant {:?}, q = {:?}", dg.elementary_divisors, dg.q_values.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // E8 as D8 plus a spinor glue vector.
    let d8 = lat("D8", 1);
    let half = frac(1, 2);
    let glue = vec![vec![half.clone(), frac(0, 1), half.clone(), frac(0, 1), half.clone(), frac(0, 1), frac(0, 1), half]];
    let (e8, _, index) = d8.adjoin_glue(&glue).unwrap();
    println!("D8 + glue: index {}, {:?}", index, e8.invariants(true).unwrap());

    let a2a2 = IntegralLattice::direct_sum_all(&[lat("A2", 1), lat("A2", 1)]);
    let (_, c) = a2a2.orthogonal_complement(&intmat::from_i64(&[vec![1, 0, 1, 0]]));
    println!("complement of (1,0,1,0) in A2+A2: {:?}", c.gram_i64());

    let u = IntegralLattice::direct_sum_all(&[lat("U", 1), lat("U(5)", 1)]);
    println!("twist(U+U(5), 2) = {:?}", u.twist(2).gram_i64());
    println!("untwist(U(6)+U(6), 6) = {:?}", lat("U(6)", 1).direct_sum(&lat("U(6)", 1)).untwist(6).map(|l| l.gram_i64()));
}
