//! Named families of elliptic fibrations and Tate normal forms.

use rand::Rng;

use super::{minimalize_with_scale, WeierstrassModel};
use crate::algebra::{int, Field, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::mordell_weil::{rescale, Curve, Point};
use crate::quotients::{check_palindrome, check_sigma_n_invariance};

/// Exponents allowed in `A` (degree ≤ 8) and `B` (degree ≤ 12) of a
/// K3 model invariant under `σ_n`: `i ≡ 4` and `j ≡ 6 (mod n)`.
pub fn sigma_n_exponents(n: usize) -> (Vec<usize>, Vec<usize>) {
    let a = (0..=8).filter(|i| i % n == 4 % n).collect();
    let b = (0..=12).filter(|j| j % n == 6 % n).collect();
    (a, b)
}

fn k3_model(a: Polynomial, b: Polynomial) -> Result<WeierstrassModel> {
    let model = WeierstrassModel::new(a, b)?;
    let (min, c) = minimalize_with_scale(model.a(), model.b())?;
    if !c.is_constant() || model.m() != 2 || min.m() != 2 {
        return Err(Error::Degenerate);
    }
    Ok(model)
}

/// The K3 model with `A = Σ aᵢ τ^{eᵢ}`, `B = Σ bⱼ τ^{fⱼ}` over the exponents of
/// [`sigma_n_exponents`], coefficients listed in increasing exponent order.
pub fn sigma_n(n: usize, a: &[Rational], b: &[Rational]) -> Result<WeierstrassModel> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {} is outside 2..=6", n)));
    }
    let (ea, eb) = sigma_n_exponents(n);
    if a.len() != ea.len() || b.len() != eb.len() {
        return Err(Error::InvalidArgument(format!(
            "sigma_{} needs {} coefficients for A and {} for B",
            n,
            ea.len(),
            eb.len()
        )));
    }
    let pa = Polynomial::from_terms(ea.into_iter().zip(a.iter().cloned()));
    let pb = Polynomial::from_terms(eb.into_iter().zip(b.iter().cloned()));
    let model = k3_model(pa, pb)?;
    debug_assert!(check_sigma_n_invariance(&model, n).unwrap_or(false));
    Ok(model)
}

/// A seeded generic member of the `σ_n` family.
#[derive(Clone, Debug)]
pub struct SigmaSample {
    pub model: WeierstrassModel,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    /// One line per rejected draw.
    pub rejections: Vec<String>,
}

/// Draws nonzero integer coefficients in `[-bound, bound]` until the model
/// is a nonsingular minimal K3 surface.
pub fn random_sigma_n<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Result<SigmaSample> {
    let (ea, eb) = sigma_n_exponents(n);
    let mut rejections = Vec::new();
    let draw = |k: usize, rng: &mut R| -> Vec<Rational> {
        (0..k)
            .map(|_| loop {
                let v = rng.gen_range(-bound..=bound);
                if v != 0 {
                    break int(v);
                }
            })
            .collect()
    };
    for _ in 0..1000 {
        let a = draw(ea.len(), rng);
        let b = draw(eb.len(), rng);
        match sigma_n(n, &a, &b) {
            Ok(model) => return Ok(SigmaSample { model, a, b, rejections }),
            Err(e) => rejections.push(format!("sigma_{} A={:?} B={:?}: {}", n, fmt_list(&a), fmt_list(&b), e)),
        }
    }
    Err(Error::Degenerate)
}

fn fmt_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `y² = x³ + x(aτ⁸ + bτ⁴ + a) + (cτ¹⁰ + dτ⁶ + cτ²)`.
pub fn dihedral4(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<WeierstrassModel> {
    let pa = Polynomial::from_terms([(8, a.clone()), (4, b.clone()), (0, a.clone())]);
    let pb = Polynomial::from_terms([(10, c.clone()), (6, d.clone()), (2, c.clone())]);
    let model = k3_model(pa, pb)?;
    debug_assert!(check_sigma_n_invariance(&model, 4).unwrap_or(false));
    debug_assert!(check_palindrome(&model));
    Ok(model)
}

/// `y² = x³ + aτ⁴x + (τ¹¹ + bτ⁶ + τ)`.
pub fn e5(a: &Rational, b: &Rational) -> Result<WeierstrassModel> {
    sigma_n(5, std::slice::from_ref(a), &[int(1), b.clone(), int(1)])
}

/// `y² = x³ + aτ⁴x + (τ¹² + bτ⁶ + 1)`.
pub fn e6(a: &Rational, b: &Rational) -> Result<WeierstrassModel> {
    sigma_n(6, std::slice::from_ref(a), &[int(1), b.clone(), int(1)])
}

/// `y² = x³ + (τ⁴ − 1)²x`.
pub fn kummer_ei() -> WeierstrassModel {
    dihedral4(&int(1), &int(-2), &int(0), &int(0)).expect("the Kummer model is nonsingular")
}

/// A long Weierstrass curve over Q(t) with a marked point of exact order `n`
/// at `(0, 0)`.
#[derive(Clone, Debug)]
pub struct TateNormal {
    pub n: usize,
    pub curve: Curve<RationalFunction>,
    pub point: Point<RationalFunction>,
}

/// Tate normal form in the parameter `p`.
///
/// `n = 2`: `y² = x(x² + px + 1)`; `n = 3`: `y² + pxy + y = x³`; `n ≥ 4`:
/// `y² + (1 − c)xy − by = x³ − bx²` with `(b, c)` equal to `(p, 0)`, `(p, p)`,
/// `(p + p², p)`, `(p³ − p², p² − p)` for `n = 4, 5, 6, 7`.
pub fn tate_normal(n: usize, p: &RationalFunction) -> Result<TateNormal> {
    let zero = RationalFunction::zero();
    let one = RationalFunction::one();
    let curve = match n {
        2 => Curve { a1: zero.clone(), a2: p.clone(), a3: zero.clone(), a4: one, a6: zero },
        3 => Curve { a1: p.clone(), a2: zero.clone(), a3: one, a4: zero.clone(), a6: zero },
        4..=7 => {
            let (b, c) = match n {
                4 => (p.clone(), zero.clone()),
                5 => (p.clone(), p.clone()),
                6 => (p.add(&p.square()), p.clone()),
                _ => (p.square().mul(p).sub(&p.square()), p.square().sub(p)),
            };
            Curve { a1: one.sub(&c), a2: b.neg(), a3: b.neg(), a4: zero.clone(), a6: zero }
        }
        _ => return Err(Error::InvalidArgument(format!("no Tate normal form for n = {}", n))),
    };
    if curve.discriminant().is_zero() {
        return Err(Error::Singular);
    }
    Ok(TateNormal { n, curve, point: Point::Affine(RationalFunction::zero(), RationalFunction::zero()) })
}

/// Short minimal integral model of a long curve over Q(t), together with the
/// images of the given points.
pub fn to_short_model(
    curve: &Curve<RationalFunction>,
    points: &[Point<RationalFunction>],
) -> Result<(WeierstrassModel, Vec<Point<RationalFunction>>)> {
    let (short, map) = curve.to_short();
    let d = short.a4.denom().clone();
    let d = &d * &short.a6.denom().exact_div(&short.a6.denom().gcd(&d))?;
    let drf = RationalFunction::from_poly(d.clone());
    let a = short.a4.mul(&drf.pow(4)?);
    let b = short.a6.mul(&drf.pow(6)?);
    let (a, b) = match (a.as_polynomial(), b.as_polynomial()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Domain("could not clear denominators".into())),
    };
    let (model, c) = minimalize_with_scale(&a, &b)?;
    let u = drf.div(&RationalFunction::from_poly(c));
    let images = points.iter().map(|p| rescale(&map.apply(p), &u)).collect();
    Ok((model, images))
}

/// A random integer polynomial of exact degree `degree`, as a Tate parameter.
pub fn random_parameter<R: Rng>(degree: usize, bound: i64, rng: &mut R) -> RationalFunction {
    loop {
        let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
        let p = Polynomial::from_ints(&coeffs);
        if p.degree() == Some(degree) && !p.is_zero() {
            return RationalFunction::from_poly(p);
        }
    }
}

/// True when `y² = x³ + A x + B` holds for the point.
pub fn on_model(model: &WeierstrassModel, p: &Point<RationalFunction>) -> bool {
    Curve::from_model(model).is_on_curve(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::{fiber_counts, format_counts, KodairaType};

    #[test]
    fn exponent_sets() {
        assert_eq!(sigma_n_exponents(5), (vec![4], vec![1, 6, 11]));
        assert_eq!(sigma_n_exponents(6), (vec![4], vec![0, 6, 12]));
        assert_eq!(sigma_n_exponents(2).0, vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn kummer_is_dihedral_special_case() {
        let k = kummer_ei();
        assert_eq!(k.a().to_string(), "t^8 - 2*t^4 + 1");
        assert!(k.b().is_zero());
        let counts = fiber_counts(&k.all_fibers().unwrap());
        assert_eq!(counts.get(&KodairaType::IStar(0)), Some(&4));
    }

    #[test]
    fn e5_has_two_type_ii() {
        let m = e5(&int(2), &int(3)).unwrap();
        let f = format_counts(&fiber_counts(&m.all_fibers().unwrap()));
        assert_eq!(f, "2II+20I1");
    }

    #[test]
    fn tate_points_have_exact_order() {
        let p = RationalFunction::t();
        for n in 2..=7 {
            let tn = tate_normal(n, &p).unwrap();
            assert_eq!(tn.curve.order(&tn.point, 12), Some(n as u32), "n = {}", n);
            let (model, pts) = to_short_model(&tn.curve, std::slice::from_ref(&tn.point)).unwrap();
            assert!(on_model(&model, &pts[0]));
            assert_eq!(Curve::from_model(&model).order(&pts[0], 12), Some(n as u32));
        }
    }
}
