//! Height pairing from component data, and the component solver for
//! torsion sections.

use elliptic_k3::mordell_weil::{solve_components, HeightData, SectionHits};
use elliptic_k3::weierstrass::parse_fiber_list;

fn main() {
    let fibers = parse_fiber_list("2I6+2I3+2I2+2I1").unwrap();
    let sols = solve_components(2, &fibers, 6).unwrap();
    println!("6-torsion on 2I6+2I3+2I2+2I1: {:?}", sols);

    let data = HeightData::new(2, fibers.clone());
    let p = SectionHits::new(0, sols[0].clone());
    println!("height of that section: {}", data.height(&p).unwrap());

    // A section meeting O once and the identity components everywhere.
    let q = SectionHits::new(1, vec![0; fibers.len()]);
    println!("<Q,Q> = {}, <P,Q> = {}", data.height(&q).unwrap(), data.pairing(&p, &q, 0).unwrap());

    let five = parse_fiber_list("4I5+4I1").unwrap();
    println!("5-torsion on 4I5+4I1: {:?}", solve_components(2, &five, 5).unwrap());
}
