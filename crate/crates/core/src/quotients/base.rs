//! Quotients by automorphisms of the base curve: `τ ↦ ζτ`, `τ ↦ 1/τ`, and
//! the inversion `τ ↦ μ/τ`.

use crate::algebra::{int, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::weierstrass::{minimalize, WeierstrassModel};

fn check_n(n: usize) -> Result<()> {
    if (2..=6).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("n = {} is outside 2..=6", n)))
    }
}

/// Every monomial `a_i τ^i` of `A` has `i ≡ 4` and every `b_j τ^j` of `B`
/// has `j ≡ 6 (mod n)`.
pub fn check_sigma_n_invariance(model: &WeierstrassModel, n: usize) -> Result<bool> {
    check_n(n)?;
    let ok = |p: &Polynomial, r: usize| p.terms().all(|(i, _)| i % n == r % n);
    Ok(ok(model.a(), 4) && ok(model.b(), 6))
}

/// Exponent `r + n·k` goes to `r + k`.
fn reindex(p: &Polynomial, rest: usize, n: usize) -> Polynomial {
    Polynomial::from_terms(p.terms().map(|(i, c)| {
        let k = (i as i64 - rest as i64) / n as i64;
        ((rest as i64 + k) as usize, c.clone())
    }))
}

/// `Y² = X³ + (Σ a_{4+nk} T^{4+k}) X + Σ b_{6+nk} T^{6+k}`, minimalized.
pub fn quotient_by_sigma_n(model: &WeierstrassModel, n: usize) -> Result<WeierstrassModel> {
    if !check_sigma_n_invariance(model, n)? {
        return Err(Error::Domain(format!("model is not invariant under sigma_{}", n)));
    }
    minimalize(&reindex(model.a(), 4, n), &reindex(model.b(), 6, n))
}

/// Pullback along `t ↦ τⁿ`, minimalized.
pub fn base_change(model: &WeierstrassModel, n: usize) -> Result<WeierstrassModel> {
    if n < 2 {
        return Err(Error::InvalidArgument("base change needs n >= 2".into()));
    }
    minimalize(&model.a().inflate(n), &model.b().inflate(n))
}

/// `τ^{4m} A(μ/τ) = μ^{2m} A(τ)` and `τ^{6m} B(μ/τ) = μ^{3m} B(τ)`, with the
/// pulled back model `(τ^{4m}A(μ/τ)/μ^{2m}, τ^{6m}B(μ/τ)/μ^{3m})`.
pub fn inversion_twist(model: &WeierstrassModel, mu: &Rational) -> Result<(bool, WeierstrassModel)> {
    if mu == &int(0) {
        return Err(Error::InvalidArgument("mu must be nonzero".into()));
    }
    let m = model.m() as usize;
    let pull = |p: &Polynomial, w: usize| -> Polynomial {
        // τ^{2wm} p(μ/τ) / μ^{wm}
        let d = 2 * w * m;
        let scaled = p.scale_var(mu);
        let mut s = scaled.reverse(d);
        let mut c = int(1);
        for _ in 0..w * m {
            c *= mu;
        }
        s = s.scale(&c.recip());
        s
    };
    let a = pull(model.a(), 2);
    let b = pull(model.b(), 3);
    let invariant = &a == model.a() && &b == model.b();
    Ok((invariant, WeierstrassModel::with_m(a, b, model.m())?))
}

/// `A(τ) = τ^{4m}A(1/τ)` and `B(τ) = τ^{6m}B(1/τ)`.
pub fn check_palindrome(model: &WeierstrassModel) -> bool {
    inversion_twist(model, &int(1)).map(|(ok, _)| ok).unwrap_or(false)
}

/// `D_k(T)` with `D_k(τ + 1/τ) = τ^k + τ^{-k}`.
pub fn dickson(k: usize) -> Polynomial {
    let (mut prev, mut cur) = (Polynomial::from_int(2), Polynomial::t());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&Polynomial::t() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// For a palindrome `p` of degree bound `2h`, the polynomial `q` with
/// `p(τ)/τ^h = q(τ + 1/τ)`.
pub fn symmetric_reduction(p: &Polynomial, h: usize) -> Polynomial {
    let mut q = Polynomial::constant(p.coeff(h));
    for k in 1..=h {
        let c = p.coeff(h + k);
        if c != int(0) {
            q = &q + &dickson(k).scale(&c);
        }
    }
    q
}

fn palindromic_parts(model: &WeierstrassModel) -> Result<(Polynomial, Polynomial)> {
    let m = model.m() as usize;
    if m % 2 == 1 {
        return Err(Error::Domain("the inversion quotient needs an even m".into()));
    }
    if !check_palindrome(model) {
        return Err(Error::Domain("model is not palindromic".into()));
    }
    Ok((symmetric_reduction(model.a(), 2 * m), symmetric_reduction(model.b(), 3 * m)))
}

/// Quotient by `τ ↦ 1/τ` acting trivially on `x/τ^m` and `y/τ^{3m/2}`, in
/// the coordinate `T = τ + 1/τ`.
pub fn quotient_by_mu2(model: &WeierstrassModel) -> Result<WeierstrassModel> {
    let (a, b) = palindromic_parts(model)?;
    minimalize(&a, &b)
}

/// The quotient by the involution composed with `−1` on the fibers: the
/// twist of [`quotient_by_mu2`] by `T² − 4`.
pub fn quotient_by_varsigma2(model: &WeierstrassModel) -> Result<WeierstrassModel> {
    let (a, b) = palindromic_parts(model)?;
    let d = Polynomial::from_ints(&[-4, 0, 1]);
    minimalize(&(&d.pow(2) * &a), &(&d.pow(3) * &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::weierstrass::families::{dihedral4, e5, e6};
    use crate::weierstrass::SurfaceClass;

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::new(parse_poly(a).unwrap(), parse_poly(b).unwrap()).unwrap()
    }

    #[test]
    fn invariance_by_exponents() {
        assert!(check_sigma_n_invariance(&e5(&int(2), &int(3)).unwrap(), 5).unwrap());
        assert!(!check_sigma_n_invariance(&model("t^2", "1"), 3).unwrap());
        assert!(check_sigma_n_invariance(&model("t", "1"), 9).is_err());
    }

    #[test]
    fn sigma_quotients_of_e5_e6() {
        let q = quotient_by_sigma_n(&e5(&int(2), &int(3)).unwrap(), 5).unwrap();
        assert_eq!(q, model("2*t^4", "t^7 + 3*t^6 + t^5"));
        let q6 = quotient_by_sigma_n(&e6(&int(2), &int(3)).unwrap(), 6).unwrap();
        assert_eq!(q6, q);
        assert_eq!(q.surface_class(), SurfaceClass::K3);
    }

    #[test]
    fn base_change_round_trip() {
        let e = e5(&int(2), &int(3)).unwrap();
        assert_eq!(base_change(&quotient_by_sigma_n(&e, 5).unwrap(), 5).unwrap(), e);
        let r = model("t^3", "t^5 + 1");
        assert_eq!(r.surface_class(), SurfaceClass::Rational);
        assert_eq!(base_change(&r, 2).unwrap().surface_class(), SurfaceClass::K3);
        assert_eq!(base_change(&model("1", "t"), 2).unwrap(), model("1", "t^2"));
    }

    #[test]
    fn dickson_identity() {
        assert_eq!(dickson(4), parse_poly("t^4 - 4*t^2 + 2").unwrap());
        assert_eq!(dickson(3), parse_poly("t^3 - 3*t").unwrap());
    }

    #[test]
    fn dihedral_full_quotient() {
        let (a, b, c, d) = (int(1), int(3), int(2), int(-5));
        let x = dihedral4(&a, &b, &c, &d).unwrap();
        let q4 = quotient_by_sigma_n(&x, 4).unwrap();
        let full = quotient_by_varsigma2(&q4).unwrap();
        let expect = model("(t^2-4)^2*(t + 3)", "(t^2-4)^3*(2*t - 5)");
        assert_eq!(full, expect);
        assert!(quotient_by_mu2(&model("t^4 + t", "1")).is_err());
    }

    #[test]
    fn mu2_of_symmetric_a() {
        let x = model("t^8 + 1", "t^6");
        let q = quotient_by_mu2(&x).unwrap();
        assert_eq!(q.a(), &parse_poly("t^4 - 4*t^2 + 2").unwrap());
        assert_eq!(q.b(), &parse_poly("1").unwrap());
    }

    #[test]
    fn inversion_from_quadratic_pair() {
        // a = τ and b = λ(τ − 1)(τ − μ) are both scaled by μ/τ² under τ ↦ μ/τ.
        let mu = int(3);
        let a = parse_poly("t").unwrap();
        let b = parse_poly("2*(t - 1)*(t - 3)").unwrap();
        let big_a = &(&a.pow(4) * &Polynomial::from_int(-3)) + &b.pow(2).pow(2);
        let big_b = &(&a.pow(3) * &b.pow(3)) + &b.pow(6).scale(&int(2));
        let x = WeierstrassModel::new(big_a, big_b).unwrap();
        assert!(inversion_twist(&x, &mu).unwrap().0);
        assert!(!inversion_twist(&x, &int(2)).unwrap().0);
        let p = dihedral4(&int(1), &int(3), &int(2), &int(-5)).unwrap();
        assert!(inversion_twist(&p, &int(1)).unwrap().0);
    }
}
