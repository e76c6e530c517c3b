//! The function field `Q(x)[y]/(y² − f(x))` of a curve `y² = f(x)`.
//!
//! Evaluating a rational map at the generic point `(x, y)` of a curve turns
//! an identity "modulo the curve equation" into an equality in this field.

use std::rc::Rc;

use super::{Field, Rational, RationalFunction};

/// `a + b·y` with `y² = f`. Constants may omit `f`; it is only consulted
/// when two `y`-parts multiply.
#[derive(Clone, Debug)]
pub struct QuadraticElement {
    pub a: RationalFunction,
    pub b: RationalFunction,
    f: Option<Rc<RationalFunction>>,
}

impl PartialEq for QuadraticElement {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl QuadraticElement {
    pub fn new(a: RationalFunction, b: RationalFunction, f: &Rc<RationalFunction>) -> Self {
        QuadraticElement { a, b, f: Some(f.clone()) }
    }

    pub fn from_base(a: RationalFunction) -> Self {
        QuadraticElement { a, b: RationalFunction::zero(), f: None }
    }

    /// The generic point `(x, y)` of `y² = f(x)`, with `x` written as `t`.
    pub fn generic_point(f: RationalFunction) -> (Self, Self) {
        let f = Rc::new(f);
        (
            QuadraticElement::new(RationalFunction::t(), RationalFunction::zero(), &f),
            QuadraticElement::new(RationalFunction::zero(), RationalFunction::one(), &f),
        )
    }

    fn modulus(&self, o: &Self) -> Option<Rc<RationalFunction>> {
        self.f.clone().or_else(|| o.f.clone())
    }
}

impl Field for QuadraticElement {
    fn zero() -> Self {
        Self::from_base(RationalFunction::zero())
    }
    fn one() -> Self {
        Self::from_base(RationalFunction::one())
    }
    fn from_int(n: i64) -> Self {
        Self::from_base(<RationalFunction as Field>::from_int(n))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_base(RationalFunction::constant(q.clone()))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        QuadraticElement { a: &self.a + &o.a, b: &self.b + &o.b, f: self.modulus(o) }
    }
    fn sub(&self, o: &Self) -> Self {
        QuadraticElement { a: &self.a - &o.a, b: &self.b - &o.b, f: self.modulus(o) }
    }
    fn mul(&self, o: &Self) -> Self {
        let f = self.modulus(o);
        let mut a = &self.a * &o.a;
        if !self.b.is_zero() && !o.b.is_zero() {
            let fv = f.as_ref().expect("y-parts without a modulus");
            a = &a + &(&(&self.b * &o.b) * fv.as_ref());
        }
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        QuadraticElement { a, b, f }
    }
    fn neg(&self) -> Self {
        QuadraticElement { a: -&self.a, b: -&self.b, f: self.f.clone() }
    }
    fn inv(&self) -> Self {
        if self.b.is_zero() {
            return QuadraticElement { a: self.a.inv().expect("inverse of zero"), b: RationalFunction::zero(), f: self.f.clone() };
        }
        let f = self.f.as_ref().expect("y-part without a modulus");
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * f.as_ref());
        let n = norm.inv().expect("norm of a nonzero element is nonzero");
        QuadraticElement { a: &self.a * &n, b: -&(&self.b * &n), f: self.f.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfun;

    #[test]
    fn y_squared_is_f() {
        let f = parse_ratfun("t^3 - t").unwrap();
        let (x, y) = QuadraticElement::generic_point(f.clone());
        assert_eq!(y.square(), QuadraticElement::from_base(f));
        let z = x.add(&y);
        assert_eq!(z.mul(&z.inv()), QuadraticElement::one());
    }
}
