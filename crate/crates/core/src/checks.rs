//! Seeded randomized property suites, shared by the test suite and the
//! `properties` subcommand.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{frac, Field, Polynomial, Rational, RationalFunction};
use crate::error::Result;
use crate::lattice::IntegralLattice;
use crate::mordell_weil::{self as mw, Curve, Point};
use crate::quotients;
use crate::weierstrass::{families, WeierstrassModel};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    /// Seeds of failing instances, with a short reason.
    pub failures: Vec<String>,
    /// Instances drawn but discarded as degenerate.
    pub skipped: usize,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.instances
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertiesReport {
    pub seed: u64,
    pub count: usize,
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

/// Runs `check` on `count` instances, each with its own generator seeded
/// from `seed` and the instance number. `Ok(None)` discards the draw and
/// tries the next sub-seed.
fn suite<F>(name: &str, seed: u64, count: usize, mut check: F) -> SuiteReport
where
    F: FnMut(&mut ChaCha8Rng) -> Result<Option<bool>>,
{
    let mut report = SuiteReport { name: name.into(), instances: count, passed: 0, failures: Vec::new(), skipped: 0 };
    let mut k = 0u64;
    let mut done = 0;
    while done < count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(k);
        k += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        match check(&mut rng) {
            Ok(None) => {
                report.skipped += 1;
                if report.skipped > 10 * count {
                    report.failures.push("too many degenerate draws".into());
                    break;
                }
                continue;
            }
            Ok(Some(true)) => report.passed += 1,
            Ok(Some(false)) => report.failures.push(format!("seed {}", s)),
            Err(e) => report.failures.push(format!("seed {}: {}", s, e)),
        }
        done += 1;
    }
    report
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_poly<R: Rng>(rng: &mut R, max_degree: usize) -> Polynomial {
    let d = rng.gen_range(0..=max_degree);
    Polynomial::from_coeffs((0..=d).map(|_| small_rational(rng)).collect())
}

fn random_ratfun<R: Rng>(rng: &mut R) -> RationalFunction {
    loop {
        let den = random_poly(rng, 2);
        if !den.is_zero() {
            return RationalFunction::new(random_poly(rng, 3), den).expect("nonzero denominator");
        }
    }
}

pub fn polynomial_ring_axioms(seed: u64, count: usize) -> SuiteReport {
    suite("polynomial ring axioms", seed, count, |rng| {
        let (a, b, c) = (random_poly(rng, 5), random_poly(rng, 5), random_poly(rng, 5));
        let mut ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &(&a + &b) - &b == a
            && &a * &Polynomial::one() == a;
        if !b.is_zero() {
            let (q, r) = a.divmod(&b)?;
            ok &= &(&q * &b) + &r == a && (r.is_zero() || r.degree() < b.degree());
            let g = a.gcd(&b);
            ok &= g.divides(&a) && g.divides(&b);
        }
        let (x, y) = (random_ratfun(rng), random_ratfun(rng));
        ok &= x.add(&y) == y.add(&x) && x.mul(&y).sub(&y.mul(&x)).is_zero();
        if !y.is_zero() {
            ok &= x.div(&y).mul(&y) == x;
        }
        Ok(Some(ok))
    })
}

fn random_gram<R: Rng>(rng: &mut R) -> Vec<Vec<i64>> {
    let n = rng.gen_range(1..=4);
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        g[i][i] = 2 * rng.gen_range(-4..=4);
        for j in i + 1..n {
            let v = rng.gen_range(-3..=3);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()
}

pub fn lattice_axioms(seed: u64, count: usize) -> SuiteReport {
    suite("lattice axioms", seed, count, |rng| {
        let (Ok(l), Ok(m)) = (IntegralLattice::from_i64(&random_gram(rng)), IntegralLattice::from_i64(&random_gram(rng))) else {
            return Ok(None);
        };
        let n = l.rank();
        let (x, y, z) = (random_vec(rng, n), random_vec(rng, n), random_vec(rng, n));
        let xy: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let k = rng.gen_range(2..=6i64);
        let sum = l.direct_sum(&m);
        let tw = l.twist(k);
        let disc = l.discriminant_group();
        let ok = l.pair(&x, &y) == l.pair(&y, &x)
            && l.pair(&xy, &z) == l.pair(&x, &z) + l.pair(&y, &z)
            && sum.det() == l.det() * m.det()
            && sum.rank() == n + m.rank()
            && tw.det() == l.det() * BigInt::from(k).pow(n as u32)
            && tw.untwist(k).map(|u| u.gram() == l.gram()).unwrap_or(false)
            && disc.order() == num_traits::Signed::abs(&l.det())
            && l.is_even();
        Ok(Some(ok))
    })
}

fn euler_ok(m: &WeierstrassModel) -> Result<bool> {
    let total: usize = m.all_fibers()?.iter().map(|f| f.weight() * f.euler() as usize).sum();
    Ok(total == 12 * m.m() as usize)
}

pub fn euler_conservation(seed: u64, count: usize) -> SuiteReport {
    suite("Euler sum 12m on models and quotients", seed, count, |rng| {
        let n = rng.gen_range(2..=6usize);
        let sample = families::random_sigma_n(n, 6, rng)?;
        let q = quotients::quotient_by_sigma_n(&sample.model, n)?;
        let mut ok = euler_ok(&sample.model)? && euler_ok(&q)? && euler_ok(&quotients::base_change(&q, n)?)?;
        if n == 4 {
            let r = |rng: &mut ChaCha8Rng| Rational::from_integer(BigInt::from(rng.gen_range(-5..=5i64)));
            let (a, b, c, d) = (r(rng), r(rng), r(rng), r(rng));
            if let Ok(x) = families::dihedral4(&a, &b, &c, &d) {
                ok &= euler_ok(&x)?;
                if let Ok(y) = quotients::quotient_by_sigma_n(&x, 4) {
                    ok &= euler_ok(&y)?;
                    if let Ok(z) = quotients::quotient_by_varsigma2(&y) {
                        ok &= euler_ok(&z)?;
                    }
                }
            }
        }
        Ok(Some(ok))
    })
}

/// On a Tate normal family with a point of order `n`: the point has order
/// exactly `n`, every nonzero multiple misses the zero section, and the
/// height formula admits a component assignment giving height zero.
pub fn torsion_height_zero(seed: u64, count: usize) -> SuiteReport {
    suite("height zero and torsion on Tate normal forms", seed, count, |rng| {
        let n = [4usize, 5, 6][rng.gen_range(0..3)];
        let p = families::random_parameter(rng.gen_range(1..=2), 4, rng);
        if p.is_constant() {
            return Ok(None);
        }
        let tn = match families::tate_normal(n, &p) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let (model, pts) = families::to_short_model(&tn.curve, std::slice::from_ref(&tn.point))?;
        let pt = &pts[0];
        if mw::torsion_order(&model, pt, n as u32) != Some(n as u32) {
            return Ok(Some(false));
        }
        let e = Curve::from_model(&model);
        let mut q = pt.clone();
        for _ in 1..n {
            if mw::intersection_with_zero(&model, &q)? != 0 {
                return Ok(Some(false));
            }
            q = e.add(&q, pt);
        }
        let fibers: Vec<_> = model.all_fibers()?.iter().flat_map(|f| std::iter::repeat_n(f.kind, f.weight())).collect();
        let sols = mw::solve_components(model.m(), &fibers, n as u32)?;
        Ok(Some(!sols.is_empty()))
    })
}

fn velu_agrees(c: &Curve<Rational>, explicit: &quotients::TorsionQuotient<Rational>, kernel: &Point<Rational>, n: u32) -> Result<bool> {
    let v = quotients::velu_quotient(c, kernel, n)?;
    let Some((u, r)) = quotients::find_normalization(&explicit.isogeny.target, &v.target, &quotients::default_scalings()) else {
        return Ok(false);
    };
    let u2 = u.clone() * &u;
    for p in mw::search_points(c, 12, 2) {
        let (a, b) = (explicit.isogeny.apply(&p), v.apply(&p));
        let same = match (a.x(), b.x()) {
            (None, None) => true,
            (Some(xa), Some(xb)) => xa == &(u2.clone() * xb + &r),
            _ => false,
        };
        if !same {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn velu_vs_explicit(seed: u64, count: usize) -> SuiteReport {
    suite("Velu against the explicit 2- and 4-isogenies", seed, count, |rng| {
        let (s, t) = (small_rational(rng), small_rational(rng));
        if rng.gen_bool(0.5) {
            let c = Curve::two_torsion_form(s.clone(), t.clone());
            let Ok(q) = quotients::quotient_by_2torsion(&s, &t) else { return Ok(None) };
            if c.discriminant().is_zero() {
                return Ok(None);
            }
            Ok(Some(velu_agrees(&c, &q, &Point::Affine(Rational::zero(), Rational::zero()), 2)?))
        } else {
            if Field::is_zero(&t) {
                return Ok(None);
            }
            let Ok(q) = quotients::quotient_by_4torsion(&s, &t) else { return Ok(None) };
            let c = q.isogeny.source.clone();
            let k = Point::Affine(t.clone(), s.clone() * &t);
            if c.order(&k, 4) != Some(4) {
                return Ok(None);
            }
            Ok(Some(velu_agrees(&c, &q, &k, 4)?))
        }
    })
}

pub fn run_all(seed: u64, count: usize) -> Result<PropertiesReport> {
    let suites = vec![
        polynomial_ring_axioms(seed, count),
        lattice_axioms(seed, count),
        euler_conservation(seed, count),
        torsion_height_zero(seed, count),
        velu_vs_explicit(seed, count),
    ];
    let all_passed = suites.iter().all(|s| s.ok());
    Ok(PropertiesReport { seed, count, suites, all_passed })
}
