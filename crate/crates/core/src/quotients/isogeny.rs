//! Isogenies with rational cyclic kernels: the classical 2-isogeny, the
//! 4-isogeny through an intermediate 2-isogeny, and Vélu's formulas.

use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};
use crate::mordell_weil::{Curve, Point};

/// A rational map between curves, built from a few primitive pieces.
#[derive(Clone, Debug, PartialEq)]
pub enum IsogenyMap<F: Field> {
    /// On `y² = x(x² + ax + b)`: `(x, y) ↦ (y²/x², y(x² − b)/x²)`.
    Two { b: F },
    /// On `y² = x(x² + ax + b)`: `(x, y) ↦ (y²/4x², y(x² − b)/8x²)`, the
    /// map back along a 2-isogeny.
    TwoDual { b: F },
    /// `(x, y) ↦ (x + c, y)`.
    Shift(F),
    /// `(x, y) ↦ (x, −y)`, the negation on a curve with `a1 = a3 = 0`.
    Negate,
    /// Vélu's map for the kernel representatives in `terms`.
    Velu { a1: F, a3: F, terms: Vec<VeluTerm<F>> },
    /// Left to right composition.
    Chain(Vec<IsogenyMap<F>>),
}

/// Data attached to one kernel point `Q` in Vélu's formulas.
#[derive(Clone, Debug, PartialEq)]
pub struct VeluTerm<F: Field> {
    pub x: F,
    pub y: F,
    pub gx: F,
    pub gy: F,
    pub v: F,
    pub u: F,
}

impl<F: Field> IsogenyMap<F> {
    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        let (x, y) = match p {
            Point::Zero => return Point::Zero,
            Point::Affine(x, y) => (x, y),
        };
        match self {
            IsogenyMap::Two { b } | IsogenyMap::TwoDual { b } => {
                if x.is_zero() {
                    return Point::Zero;
                }
                let x2 = x.square();
                let (cx, cy) = if matches!(self, IsogenyMap::Two { .. }) { (1, 1) } else { (4, 8) };
                Point::Affine(
                    y.square().div(&x2.scale(cx)),
                    y.mul(&x2.sub(b)).div(&x2.scale(cy)),
                )
            }
            IsogenyMap::Shift(c) => Point::Affine(x.add(c), y.clone()),
            IsogenyMap::Negate => Point::Affine(x.clone(), y.neg()),
            IsogenyMap::Velu { a1, a3, terms } => {
                if terms.iter().any(|q| &q.x == x) {
                    return Point::Zero;
                }
                let mut bx = x.clone();
                let mut by = y.clone();
                for q in terms {
                    let d = x.sub(&q.x);
                    let d2 = d.square();
                    let d3 = d2.mul(&d);
                    bx = bx.add(&q.v.div(&d)).add(&q.u.div(&d2));
                    let t1 = q.u.mul(&y.scale(2).add(&a1.mul(x)).add(a3)).div(&d3);
                    let t2 = q.v.mul(&a1.mul(&d).add(y).sub(&q.y)).div(&d2);
                    let t3 = a1.mul(&q.u).sub(&q.gx.mul(&q.gy)).div(&d2);
                    by = by.sub(&t1).sub(&t2).sub(&t3);
                }
                Point::Affine(bx, by)
            }
            IsogenyMap::Chain(maps) => maps.iter().fold(p.clone(), |acc, m| m.apply(&acc)),
        }
    }

    pub fn map_coeffs<G: Field>(&self, f: &impl Fn(&F) -> G) -> IsogenyMap<G> {
        match self {
            IsogenyMap::Two { b } => IsogenyMap::Two { b: f(b) },
            IsogenyMap::TwoDual { b } => IsogenyMap::TwoDual { b: f(b) },
            IsogenyMap::Shift(c) => IsogenyMap::Shift(f(c)),
            IsogenyMap::Negate => IsogenyMap::Negate,
            IsogenyMap::Velu { a1, a3, terms } => IsogenyMap::Velu {
                a1: f(a1),
                a3: f(a3),
                terms: terms
                    .iter()
                    .map(|q| VeluTerm { x: f(&q.x), y: f(&q.y), gx: f(&q.gx), gy: f(&q.gy), v: f(&q.v), u: f(&q.u) })
                    .collect(),
            },
            IsogenyMap::Chain(ms) => IsogenyMap::Chain(ms.iter().map(|m| m.map_coeffs(f)).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Isogeny<F: Field> {
    pub source: Curve<F>,
    pub target: Curve<F>,
    pub degree: u32,
    pub map: IsogenyMap<F>,
}

impl<F: Field> Isogeny<F> {
    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        self.map.apply(p)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Isogeny<G> {
        Isogeny {
            source: self.source.map_coeffs(&f),
            target: self.target.map_coeffs(&f),
            degree: self.degree,
            map: self.map.map_coeffs(&f),
        }
    }
}

/// The curve, the isogeny out of it, and the isogeny back.
#[derive(Clone, Debug)]
pub struct TorsionQuotient<F: Field> {
    pub isogeny: Isogeny<F>,
    pub dual: Isogeny<F>,
    /// A rational point of order `deg` on the target generating the dual's
    /// kernel, when one exists over the base field.
    pub image_point: Option<Point<F>>,
}

fn two_form<F: Field>(a: &F, b: &F) -> Result<Curve<F>> {
    let c = Curve::two_torsion_form(a.clone(), b.clone());
    if c.discriminant().is_zero() {
        return Err(Error::Singular);
    }
    Ok(c)
}

/// Quotient of `y² = x(x² + ax + b)` by `(0, 0)`: the curve
/// `y² = x(x² − 2a·x + (a² − 4b))`.
pub fn quotient_by_2torsion<F: Field>(a: &F, b: &F) -> Result<TorsionQuotient<F>> {
    let source = two_form(a, b)?;
    let a2 = a.scale(-2);
    let b2 = a.square().sub(&b.scale(4));
    let target = two_form(&a2, &b2)?;
    Ok(TorsionQuotient {
        isogeny: Isogeny { source: source.clone(), target: target.clone(), degree: 2, map: IsogenyMap::Two { b: b.clone() } },
        dual: Isogeny { source: target, target: source, degree: 2, map: IsogenyMap::TwoDual { b: b2 } },
        image_point: Some(Point::Affine(F::zero(), F::zero())),
    })
}

/// Quotient of `y² = x(x² + (e² − 2f)x + f²)` by the 4-torsion point
/// `(f, ef)`: first by `(0, 0)`, then by the image `(e², 0)` moved to the
/// origin. The target is `y² = x(x² − 2(e² + 4f)x + (e² − 4f)²)`, and the
/// map is normalized by a final sign so it equals
/// [`four_isogeny_closed_form`].
pub fn quotient_by_4torsion<F: Field>(e: &F, f: &F) -> Result<TorsionQuotient<F>> {
    let e2 = e.square();
    let a = e2.sub(&f.scale(2));
    let b = f.square();
    let first = quotient_by_2torsion(&a, &b)?;
    // y² = x(x − e²)(x − e² + 4f) becomes y² = x(x² + (e² + 4f)x + 4e²f).
    let a_mid = e2.add(&f.scale(4));
    let b_mid = e2.mul(f).scale(4);
    let second = quotient_by_2torsion(&a_mid, &b_mid)?;
    let map = IsogenyMap::Chain(vec![
        first.isogeny.map.clone(),
        IsogenyMap::Shift(e2.neg()),
        second.isogeny.map.clone(),
        IsogenyMap::Negate,
    ]);
    let dual = IsogenyMap::Chain(vec![IsogenyMap::Negate, second.dual.map.clone(), IsogenyMap::Shift(e2), first.dual.map.clone()]);
    let source = first.isogeny.source.clone();
    let target = second.isogeny.target.clone();
    // (g, ±2i·e·g) with g = 4f − e².
    let image_point = e.is_zero().then(|| Point::Affine(f.scale(4), F::zero()));
    Ok(TorsionQuotient {
        isogeny: Isogeny { source: source.clone(), target: target.clone(), degree: 4, map },
        dual: Isogeny { source: target, target: source, degree: 4, map: dual },
        image_point,
    })
}

/// `x(dual(φ(P))) = x([deg] P)`.
pub fn composes_to_multiplication<F: Field>(q: &TorsionQuotient<F>, p: &Point<F>) -> bool {
    let there = q.dual.apply(&q.isogeny.apply(p));
    let direct = q.isogeny.source.mul(q.isogeny.degree as i64, p);
    there.x() == direct.x()
}

/// The closed form of the 4-isogeny:
/// `x ↦ (f + x)²y²/((f − x)²x²)`,
/// `y ↦ y(f + x)((f − x)⁴ − 4e²f x²)/(x²(f − x)³)`.
pub fn four_isogeny_closed_form<F: Field>(e: &F, f: &F, p: &Point<F>) -> Point<F> {
    let (x, y) = match p {
        Point::Zero => return Point::Zero,
        Point::Affine(x, y) => (x, y),
    };
    if x.is_zero() || x == f {
        return Point::Zero;
    }
    let fpx = f.add(x);
    let fmx = f.sub(x);
    let x2 = x.square();
    let fmx2 = fmx.square();
    let nx = fpx.square().mul(&y.square()).div(&fmx2.mul(&x2));
    let inner = fmx2.square().sub(&e.square().mul(f).mul(&x2).scale(4));
    let ny = y.mul(&fpx).mul(&inner).div(&x2.mul(&fmx2).mul(&fmx));
    Point::Affine(nx, ny)
}

/// On the 4-isogenous curve `y² = x(x² − 2(e² + 4f)x + (e² − 4f)²)`, the
/// point with `x = 4f − e²` doubles to `(0, 0)`; its `y` is `±2i·e·x`, rational
/// only when `e = 0`. Returns that `x` and whether the doubling holds.
pub fn four_torsion_image<F: Field>(e: &F, f: &F) -> Result<(F, bool, Option<Point<F>>)> {
    let q = quotient_by_4torsion(e, f)?;
    let g = f.scale(4).sub(&e.square());
    let doubled = q.isogeny.target.double_x(&g);
    let halves_origin = matches!(&doubled, Some(x) if x.is_zero());
    Ok((g, halves_origin, q.image_point))
}

/// Vélu's isogeny with kernel generated by `kernel`, which must have exact
/// order `n`. The target has the same `a1, a2, a3`.
pub fn velu_quotient<F: Field>(curve: &Curve<F>, kernel: &Point<F>, n: u32) -> Result<Isogeny<F>> {
    if curve.order(kernel, n) != Some(n) {
        return Err(Error::InvalidArgument(format!("kernel generator does not have exact order {}", n)));
    }
    let Curve { a1, a2, a3, a4, a6 } = curve.clone();
    let mut terms = Vec::new();
    let mut q = kernel.clone();
    // Multiples 1..=n/2 represent the kernel modulo ±1.
    for k in 1..=n / 2 {
        if let Point::Affine(xq, yq) = &q {
            let gx = xq.square().scale(3).add(&a2.mul(xq).scale(2)).add(&a4).sub(&a1.mul(yq));
            let gy = yq.scale(-2).sub(&a1.mul(xq)).sub(&a3);
            let two_torsion = 2 * k == n;
            let v = if two_torsion { gx.clone() } else { gx.scale(2).sub(&a1.mul(&gy)) };
            let u = gy.square();
            terms.push(VeluTerm { x: xq.clone(), y: yq.clone(), gx, gy, v, u });
        }
        q = curve.add(&q, kernel);
    }
    let v: F = terms.iter().fold(F::zero(), |s, q| s.add(&q.v));
    let w: F = terms.iter().fold(F::zero(), |s, q| s.add(&q.u).add(&q.x.mul(&q.v)));
    let b2 = a1.square().add(&a2.scale(4));
    let target = Curve {
        a1: a1.clone(),
        a2: a2.clone(),
        a3: a3.clone(),
        a4: a4.sub(&v.scale(5)),
        a6: a6.sub(&b2.mul(&v)).sub(&w.scale(7)),
    };
    if target.discriminant().is_zero() {
        return Err(Error::Singular);
    }
    Ok(Isogeny { source: curve.clone(), target, degree: n, map: IsogenyMap::Velu { a1, a3, terms } })
}

/// `(u, r)` with `x = u²x' + r`, `y = u³y'` taking `c1` to `c2`, for curves
/// with `a1 = a3 = 0`, trying the listed `u`.
pub fn find_normalization<F: Field>(c1: &Curve<F>, c2: &Curve<F>, us: &[Rational]) -> Option<(Rational, F)> {
    if !c1.a1.is_zero() || !c1.a3.is_zero() || !c2.a1.is_zero() || !c2.a3.is_zero() {
        return None;
    }
    for u in us {
        if u == &Rational::from_integer(0.into()) {
            continue;
        }
        let uf = F::from_rational(u);
        let u2 = uf.square();
        let r = u2.mul(&c2.a2).sub(&c1.a2).div(&F::from_int(3));
        let a4 = c1.a4.add(&r.mul(&c1.a2).scale(2)).add(&r.square().scale(3));
        let a6 = c1.a6.add(&r.mul(&c1.a4)).add(&r.square().mul(&c1.a2)).add(&r.square().mul(&r));
        if a4 == u2.square().mul(&c2.a4) && a6 == u2.square().mul(&u2).mul(&c2.a6) {
            return Some((u.clone(), r));
        }
    }
    None
}

/// The scalings tried by [`find_normalization`]: `±2^k` for `|k| ≤ 3`.
pub fn default_scalings() -> Vec<Rational> {
    let mut v = Vec::new();
    for k in 0..=3i32 {
        let p = Rational::from_integer(num_bigint::BigInt::from(1i64 << k));
        v.push(p.clone());
        if k > 0 {
            v.push(p.recip());
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, int, QuadraticElement, RationalFunction};

    fn lift(c: &Rational) -> QuadraticElement {
        QuadraticElement::from_rational(c)
    }

    /// Applies the map to the generic point of the source and checks the
    /// image satisfies the target equation.
    fn symbolic_ok(iso: &Isogeny<Rational>) -> bool {
        let src = iso.source.map_coeffs(lift);
        let f = RationalFunction::from_poly(crate::algebra::Polynomial::from_coeffs(vec![
            iso.source.a6.clone(),
            iso.source.a4.clone(),
            iso.source.a2.clone(),
            int(1),
        ]));
        let (x, y) = QuadraticElement::generic_point(f);
        let p = Point::Affine(x, y);
        assert!(src.is_on_curve(&p));
        let l = iso.map_coeffs(lift);
        l.target.is_on_curve(&l.apply(&p))
    }

    #[test]
    fn two_isogeny_example() {
        let q = quotient_by_2torsion(&int(0), &int(-1)).unwrap();
        assert_eq!(q.isogeny.target, Curve::two_torsion_form(int(0), int(4)));
        assert!(symbolic_ok(&q.isogeny));
        assert!(symbolic_ok(&q.dual));
    }

    #[test]
    fn four_isogeny_matches_closed_form_symbolically() {
        let (e, f) = (int(3), frac(1, 2));
        let q = quotient_by_4torsion(&e, &f).unwrap();
        assert_eq!(q.isogeny.target.a2, (e.clone() * &e + int(4) * &f) * int(-2));
        assert!(symbolic_ok(&q.isogeny));
        assert!(symbolic_ok(&q.dual));
        let src = q.isogeny.source.map_coeffs(lift);
        let fx = RationalFunction::from_poly(crate::algebra::Polynomial::from_coeffs(vec![
            src.a6.a.eval(&int(0)).unwrap(),
            src.a4.a.eval(&int(0)).unwrap(),
            src.a2.a.eval(&int(0)).unwrap(),
            int(1),
        ]));
        let (x, y) = QuadraticElement::generic_point(fx);
        let p = Point::Affine(x, y);
        let l = q.isogeny.map_coeffs(lift);
        assert_eq!(l.apply(&p), four_isogeny_closed_form(&lift(&e), &lift(&f), &p));
    }

    #[test]
    fn velu_two_agrees_with_explicit() {
        let (a, b) = (int(3), int(-5));
        let c = Curve::two_torsion_form(a.clone(), b.clone());
        let v = velu_quotient(&c, &Point::Affine(int(0), int(0)), 2).unwrap();
        let q = quotient_by_2torsion(&a, &b).unwrap();
        let (u, r) = find_normalization(&q.isogeny.target, &v.target, &default_scalings()).unwrap();
        assert_eq!((u, r), (int(1), a));
        assert!(symbolic_ok(&v));
    }

    #[test]
    fn velu_four_agrees_with_explicit() {
        let (e, f) = (int(2), int(3));
        let c = Curve::two_torsion_form(e.clone() * &e - int(2) * &f, f.clone() * &f);
        let k = Point::Affine(f.clone(), e.clone() * &f);
        let v = velu_quotient(&c, &k, 4).unwrap();
        let q = quotient_by_4torsion(&e, &f).unwrap();
        assert!(find_normalization(&q.isogeny.target, &v.target, &default_scalings()).is_some());
    }

    #[test]
    fn four_torsion_image_doubles_to_origin() {
        let (g, ok, pt) = four_torsion_image(&int(1), &int(1)).unwrap();
        assert_eq!(g, int(3));
        assert!(ok);
        assert!(pt.is_none());
    }

    #[test]
    fn wrong_kernel_order_rejected() {
        let c = Curve::two_torsion_form(int(3), int(-5));
        assert!(velu_quotient(&c, &Point::Affine(int(0), int(0)), 4).is_err());
    }
}
