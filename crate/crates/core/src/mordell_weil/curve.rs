//! Long Weierstrass curves over an arbitrary field and their chord–tangent
//! group law.

use std::fmt;

use crate::algebra::{Field, Polynomial, Rational, RationalFunction};
use crate::weierstrass::WeierstrassModel;

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point<F: Field> {
    Zero,
    Affine(F, F),
}

impl<F: Field> Point<F> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Point::Zero)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Zero => None,
            Point::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Zero => None,
            Point::Affine(_, y) => Some(y),
        }
    }
}

impl<F: Field> Point<F> {
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Point<G> {
        match self {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => Point::Affine(f(x), f(y)),
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Zero => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "x = {}; y = {}", x, y),
        }
    }
}

impl<F: Field> Curve<F> {
    pub fn short(a: F, b: F) -> Self {
        Curve { a1: F::zero(), a2: F::zero(), a3: F::zero(), a4: a, a6: b }
    }

    /// `y² = x³ + a·x² + b·x`.
    pub fn two_torsion_form(a: F, b: F) -> Self {
        Curve { a1: F::zero(), a2: a, a3: F::zero(), a4: b, a6: F::zero() }
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn b_invariants(&self) -> (F, F, F, F) {
        let b2 = self.a1.square().add(&self.a2.scale(4));
        let b4 = self.a4.scale(2).add(&self.a1.mul(&self.a3));
        let b6 = self.a3.square().add(&self.a6.scale(4));
        let b8 = self
            .a1
            .square()
            .mul(&self.a6)
            .add(&self.a2.mul(&self.a6).scale(4))
            .sub(&self.a1.mul(&self.a3).mul(&self.a4))
            .add(&self.a2.mul(&self.a3.square()))
            .sub(&self.a4.square());
        (b2, b4, b6, b8)
    }

    pub fn c_invariants(&self) -> (F, F) {
        let (b2, b4, b6, _) = self.b_invariants();
        let c4 = b2.square().sub(&b4.scale(24));
        let c6 = b2.square().mul(&b2).neg().add(&b2.mul(&b4).scale(36)).sub(&b6.scale(216));
        (c4, c6)
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = self.b_invariants();
        b2.square()
            .mul(&b8)
            .neg()
            .sub(&b4.square().mul(&b4).scale(8))
            .sub(&b6.square().scale(27))
            .add(&b2.mul(&b4).mul(&b6).scale(9))
    }

    pub fn is_on_curve(&self, p: &Point<F>) -> bool {
        match p {
            Point::Zero => true,
            Point::Affine(x, y) => {
                let lhs = y.square().add(&self.a1.mul(x).mul(y)).add(&self.a3.mul(y));
                let rhs = x
                    .square()
                    .mul(x)
                    .add(&self.a2.mul(&x.square()))
                    .add(&self.a4.mul(x))
                    .add(&self.a6);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => {
                Point::Affine(x.clone(), y.neg().sub(&self.a1.mul(x)).sub(&self.a3))
            }
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Zero, _) => return q.clone(),
            (_, Point::Zero) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.scale(2).add(&self.a1.mul(x1)).add(&self.a3);
            if denom.is_zero() || y1 != y2 {
                // Either Q = −P, or P is 2-torsion being doubled.
                return Point::Zero;
            }
            let num = x1.square().scale(3).add(&self.a2.mul(x1).scale(2)).add(&self.a4).sub(&self.a1.mul(y1));
            let nu_num = x1
                .square()
                .mul(x1)
                .neg()
                .add(&self.a4.mul(x1))
                .add(&self.a6.scale(2))
                .sub(&self.a3.mul(y1));
            (num.div(&denom), nu_num.div(&denom))
        } else {
            let dx = x2.sub(x1);
            (y2.sub(y1).div(&dx), y1.mul(x2).sub(&y2.mul(x1)).div(&dx))
        };
        let x3 = lambda.square().add(&self.a1.mul(&lambda)).sub(&self.a2).sub(x1).sub(x2);
        let y3 = lambda.add(&self.a1).mul(&x3).neg().sub(&nu).sub(&self.a3);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Zero;
        let mut pw = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pw);
            }
            k >>= 1;
            if k > 0 {
                pw = self.double(&pw);
            }
        }
        acc
    }

    /// Least `n ≤ bound` with `nP = 0`.
    pub fn order(&self, p: &Point<F>, bound: u32) -> Option<u32> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_zero() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// `x(2P)` from `x(P)` alone; `None` when `2P = O`.
    pub fn double_x(&self, x: &F) -> Option<F> {
        let (b2, b4, b6, b8) = self.b_invariants();
        let x2 = x.square();
        let num = x2.square().sub(&b4.mul(&x2)).sub(&b6.mul(x).scale(2)).sub(&b8);
        let den = x2.mul(x).scale(4).add(&b2.mul(&x2)).add(&b4.mul(x).scale(2)).add(&b6);
        (!den.is_zero()).then(|| num.div(&den))
    }

    /// The same curve with every coefficient sent through `f`.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Curve<G> {
        Curve { a1: f(&self.a1), a2: f(&self.a2), a3: f(&self.a3), a4: f(&self.a4), a6: f(&self.a6) }
    }

    /// Completes the square and the cube: the short curve
    /// `Y² = X³ − 27c4·X − 54c6` with `X = 36x + 3b2`,
    /// `Y = 108(2y + a1x + a3)`.
    pub fn to_short(&self) -> (Curve<F>, ShortMap<F>) {
        let (c4, c6) = self.c_invariants();
        let (b2, _, _, _) = self.b_invariants();
        let short = Curve::short(c4.scale(-27), c6.scale(-54));
        (short, ShortMap { b2, a1: self.a1.clone(), a3: self.a3.clone() })
    }
}

/// The change of variables produced by [`Curve::to_short`].
#[derive(Clone, Debug, PartialEq)]
pub struct ShortMap<F: Field> {
    b2: F,
    a1: F,
    a3: F,
}

impl<F: Field> ShortMap<F> {
    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => Point::Affine(
                x.scale(36).add(&self.b2.scale(3)),
                y.scale(2).add(&self.a1.mul(x)).add(&self.a3).scale(108),
            ),
        }
    }
}

impl Curve<RationalFunction> {
    pub fn from_model(m: &WeierstrassModel) -> Self {
        Curve::short(m.a_rf(), m.b_rf())
    }

    /// Specialization at `t = t0`; `None` at a pole of a coefficient.
    pub fn specialize(&self, t0: &Rational) -> Option<Curve<Rational>> {
        Some(Curve {
            a1: self.a1.eval(t0)?,
            a2: self.a2.eval(t0)?,
            a3: self.a3.eval(t0)?,
            a4: self.a4.eval(t0)?,
            a6: self.a6.eval(t0)?,
        })
    }
}

pub fn specialize_point(p: &Point<RationalFunction>, t0: &Rational) -> Option<Point<Rational>> {
    match p {
        Point::Zero => Some(Point::Zero),
        Point::Affine(x, y) => Some(Point::Affine(x.eval(t0)?, y.eval(t0)?)),
    }
}

/// Applies `(x, y) ↦ (u²x, u³y)`.
pub fn rescale<F: Field>(p: &Point<F>, u: &F) -> Point<F> {
    match p {
        Point::Zero => Point::Zero,
        Point::Affine(x, y) => {
            let u2 = u.square();
            Point::Affine(x.mul(&u2), y.mul(&u2).mul(u))
        }
    }
}

/// Polynomial coefficients of a short curve over Q(t), if it has them.
pub fn short_polys(c: &Curve<RationalFunction>) -> Option<(Polynomial, Polynomial)> {
    if !c.is_short() {
        return None;
    }
    Some((c.a4.as_polynomial()?.clone(), c.a6.as_polynomial()?.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn group_law_on_rational_curve() {
        // y² = x³ + 17 has (−2, 3) and (2, 5).
        let e = Curve::short(int(0), int(17));
        let p = Point::Affine(int(-2), int(3));
        let q = Point::Affine(int(2), int(5));
        assert!(e.is_on_curve(&p) && e.is_on_curve(&q));
        let s = e.add(&p, &q);
        assert!(e.is_on_curve(&s));
        assert_eq!(e.add(&p, &e.neg(&p)), Point::Zero);
        assert_eq!(e.add(&p, &Point::Zero), p);
        assert_eq!(e.add(&e.add(&p, &q), &p), e.add(&p, &e.add(&q, &p)));
    }

    #[test]
    fn four_torsion_point() {
        // y² = x(x² + (e²−2f)x + f²) with e = 1, f = 1.
        let e = Curve::two_torsion_form(int(-1), int(1));
        let q = Point::Affine(int(1), int(1));
        assert!(e.is_on_curve(&q));
        assert_eq!(e.order(&q, 8), Some(4));
        assert_eq!(e.order(&Point::Affine(int(0), int(0)), 8), Some(2));
    }

    #[test]
    fn short_form_preserves_points() {
        let e = Curve { a1: int(1), a2: int(-1), a3: int(1), a4: int(0), a6: int(0) };
        let (s, map) = e.to_short();
        let p = Point::Affine(int(0), int(0));
        assert!(e.is_on_curve(&p));
        let sp = map.apply(&p);
        assert!(s.is_on_curve(&sp));
        assert_eq!(s.order(&sp, 10), e.order(&p, 10));
    }
}
