//! Small rational points on curves over Q, for numeric checks of maps.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use super::{Curve, Point};
use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(sq(q.numer())?, sq(q.denom())?))
}

/// Affine points with `x = n/d²`, `|n| ≤ bound`, `1 ≤ d ≤ dmax`, on a curve with
/// `a1 = a3 = 0`. Each `x` contributes both signs of `y`.
pub fn search_points(curve: &Curve<Rational>, bound: i64, dmax: i64) -> Vec<Point<Rational>> {
    assert!(Field::is_zero(&curve.a1) && Field::is_zero(&curve.a3), "search needs a1 = a3 = 0");
    let mut out = Vec::new();
    for d in 1..=dmax {
        for n in -bound..=bound {
            let x = Rational::new(BigInt::from(n), BigInt::from(d * d));
            if d > 1 && x.denom() != &BigInt::from(d * d) {
                continue;
            }
            let fx = x.square().mul(&x).add(&curve.a2.mul(&x.square())).add(&curve.a4.mul(&x)).add(&curve.a6);
            if let Some(y) = rational_sqrt(&fx) {
                out.push(Point::Affine(x.clone(), y.clone()));
                if !Field::is_zero(&y) {
                    out.push(Point::Affine(x, -y));
                }
            }
        }
    }
    out
}

/// `count` points `kP + T`, with `P` a found point of infinite order, `k` drawn
/// from `±1..=±kmax` and `T` from the found torsion points.
pub fn random_points<R: Rng>(curve: &Curve<Rational>, count: usize, kmax: i64, rng: &mut R) -> Result<Vec<Point<Rational>>> {
    let found = search_points(curve, 60, 4);
    let (mut free, mut torsion): (Vec<_>, Vec<_>) = found.into_iter().partition(|p| curve.order(p, 16).is_none());
    torsion.push(Point::Zero);
    let Some(p) = free.drain(..).next() else {
        return Err(Error::Domain("no point of infinite order found".into()));
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(1..=kmax) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let t = &torsion[rng.gen_range(0..torsion.len())];
        out.push(curve.add(&curve.mul(k, &p), t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use rand::SeedableRng;

    #[test]
    fn finds_points_on_known_curve() {
        // y² = x³ + 17: (−2, ±3), (−1, ±4), (2, ±5), (4, ±9), (8, ±23), (43, ±282), (52, ±375).
        let e = Curve::short(int(0), int(17));
        let pts = search_points(&e, 60, 1);
        assert_eq!(pts.len(), 14);
        assert!(pts.iter().all(|p| e.is_on_curve(p)));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = random_points(&e, 10, 3, &mut rng).unwrap();
        assert!(r.iter().all(|p| e.is_on_curve(p)));
    }
}
