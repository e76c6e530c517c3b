//! Sections of a short Weierstrass fibration and their intersection with
//! the zero section.

use super::{Curve, Point};
use crate::algebra::{factor_squarefree, parse_section, RationalFunction};
use crate::error::{Error, Result};
use crate::weierstrass::WeierstrassModel;

/// A point of the generic fiber; `Point::Zero` is the zero section.
pub type Section = Point<RationalFunction>;

/// Reads `x = ...; y = ...` (or `O` for the zero section) and checks the
/// point lies on the model.
pub fn parse_section_on(model: &WeierstrassModel, text: &str) -> Result<Section> {
    if text.trim() == "O" || text.trim() == "0" {
        return Ok(Point::Zero);
    }
    let (x, y) = parse_section(text)?;
    let p = Point::Affine(x, y);
    if !Curve::from_model(model).is_on_curve(&p) {
        return Err(Error::Domain("point does not satisfy the curve equation".into()));
    }
    Ok(p)
}

/// `P·O`: half the pole order of `x` summed over all places, the place at
/// infinity measured against the weight `2m`.
pub fn intersection_with_zero(model: &WeierstrassModel, p: &Section) -> Result<u32> {
    let x = match p {
        Point::Zero => {
            return Err(Error::InvalidArgument("the zero section has self-intersection -chi".into()))
        }
        Point::Affine(x, _) => x,
    };
    let mut total = 0u32;
    if !x.denom().is_constant() {
        for (q, mult) in factor_squarefree(x.denom())? {
            if mult % 2 == 1 {
                return Err(Error::Domain(format!("odd pole order of x at {}", q)));
            }
            total += (mult / 2 * q.degree().unwrap()) as u32;
        }
    }
    if let Some(v) = x.valuation_at_infinity() {
        let excess = -v - 2 * model.m() as i64;
        if excess > 0 {
            if excess % 2 == 1 {
                return Err(Error::Domain("odd pole order of x at infinity".into()));
            }
            total += (excess / 2) as u32;
        }
    }
    Ok(total)
}

/// `P·Q` for distinct sections, computed as `(P − Q)·O` since translation by
/// `−Q` is an automorphism of the surface.
pub fn intersection(model: &WeierstrassModel, p: &Section, q: &Section) -> Result<u32> {
    let e = Curve::from_model(model);
    let d = e.add(p, &e.neg(q));
    if d.is_zero() {
        return Err(Error::InvalidArgument("P and Q coincide".into()));
    }
    intersection_with_zero(model, &d)
}

/// Least `n ≤ bound` with `nP = O`.
pub fn torsion_order(model: &WeierstrassModel, p: &Section, bound: u32) -> Option<u32> {
    Curve::from_model(model).order(p, bound)
}

/// Default torsion bound: 6 on rational surfaces, 8 otherwise.
pub fn default_torsion_bound(model: &WeierstrassModel) -> u32 {
    if model.m() == 1 {
        6
    } else {
        8
    }
}

pub fn format_section(p: &Section) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn polynomial_section_misses_zero() {
        // y² = x³ − x + t² with P = (0, t).
        let m = WeierstrassModel::new(parse_poly("-1").unwrap(), parse_poly("t^2").unwrap()).unwrap();
        let p = parse_section_on(&m, "x = 0; y = t").unwrap();
        assert_eq!(intersection_with_zero(&m, &p).unwrap(), 0);
        let e = Curve::from_model(&m);
        let q = e.double(&p);
        // 2P has x = (1/4)·(3x²−1)²/y² − 2x = 1/(4t²), pole order 2 at t.
        assert_eq!(intersection_with_zero(&m, &q).unwrap(), 1);
        // 2P − P = P misses O, so 2P and P are disjoint.
        assert_eq!(intersection(&m, &q, &p).unwrap(), 0);
    }

    #[test]
    fn rejects_off_curve() {
        let m = WeierstrassModel::new(parse_poly("-1").unwrap(), parse_poly("t^2").unwrap()).unwrap();
        assert!(parse_section_on(&m, "x = 2; y = t").is_err());
        assert_eq!(parse_section_on(&m, "O").unwrap(), Point::Zero);
    }

    #[test]
    fn torsion_bounds() {
        let m = WeierstrassModel::new(parse_poly("-1").unwrap(), parse_poly("0").unwrap());
        assert!(m.is_ok());
        let m = m.unwrap();
        assert_eq!(default_torsion_bound(&m), 6);
        assert_eq!(torsion_order(&m, &Point::Zero, 6), Some(1));
    }
}
