//! Factorization over Q: Yun's squarefree decomposition followed by a
//! Zassenhaus split (Berlekamp mod p, Hensel lifting, factor recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, Fp};
use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Largest squarefree degree handed to the Zassenhaus step.
pub const FACTOR_DEGREE_CAP: usize = 40;

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// How many good primes are tried before settling on the one giving the
/// fewest modular factors.
const PRIME_TRIALS: usize = 15;

/// Yun's algorithm: pairwise coprime monic squarefree `(g_i, i)` with
/// `p = lc · Π g_i^i`. Trivial parts are dropped.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    let f = p.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    if a.is_zero() {
        return Ok(out);
    }
    let mut b = f.exact_div(&a)?;
    let mut c = df.scale(&a.leading_coeff().recip()).exact_div(&a)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        a = b.gcd(&d);
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    Ok(out)
}

/// Complete factorization into monic irreducibles with multiplicities,
/// in canonical order (degree, then coefficients).
pub fn factor_squarefree(p: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let mut out = Vec::new();
    for (g, mult) in squarefree_decomposition(p)? {
        for h in factor_squarefree_part(&g)? {
            out.push((h, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| canonical_cmp(a, b));
    Ok(out)
}

/// Leading coefficient and the irreducible factorization.
pub fn factor(p: &Polynomial) -> Result<(Rational, Vec<(Polynomial, usize)>)> {
    Ok((p.leading_coeff(), factor_squarefree(p)?))
}

fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

fn factor_squarefree_part(g: &Polynomial) -> Result<Vec<Polynomial>> {
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        return Ok(vec![g.monic()]);
    }
    if deg > FACTOR_DEGREE_CAP {
        return Err(Error::DegreeCap(deg, FACTOR_DEGREE_CAP));
    }
    let mut out = Vec::new();
    let mut g = g.clone();
    if let Some(v) = g.low_order().filter(|&v| v > 0) {
        out.push(Polynomial::t());
        g = g.shift_down(v);
    }
    // f(t) = h(t^k) is factored through h first; each piece is then split.
    let k = inflation_degree(&g);
    if k > 1 {
        let h = Polynomial::from_terms(g.terms().map(|(e, c)| (e / k, c.clone())));
        for hi in zassenhaus(&h) {
            out.extend(zassenhaus(&hi.inflate(k)));
        }
    } else {
        out.extend(zassenhaus(&g));
    }
    Ok(out.into_iter().map(|h| h.monic()).collect())
}

fn inflation_degree(g: &Polynomial) -> usize {
    g.terms().map(|(e, _)| e).fold(0, |acc, e| acc.gcd(&e))
}

/// Irreducible factors of a squarefree polynomial with nonzero constant
/// term, returned as primitive integer polynomials.
fn zassenhaus(g: &Polynomial) -> Vec<Polynomial> {
    let f = g.primitive_integer();
    let n = f.len() - 1;
    if n <= 1 {
        return vec![Polynomial::from_bigints(&f)];
    }
    let lc = f[n].clone();
    let Some((p, mod_factors)) = choose_prime(&f) else {
        unreachable!("no good prime for a squarefree integer polynomial")
    };
    if mod_factors.len() == 1 {
        return vec![Polynomial::from_bigints(&f)];
    }

    let bound = coefficient_bound(&f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let f_mod: Vec<BigInt> = f.iter().map(|c| c.mod_floor(&modulus)).collect();
    let lifted = multifactor_lift(&f_mod, &mod_factors, p, k);
    recombine(f, lc, lifted, &modulus)
}

fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<Fp>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_fp(f, p);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let factors = modp::berlekamp(&modp::monic(&fp, p), p);
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

fn to_fp(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    let mut v: Fp = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Bound on the coefficients of any integer factor of `f` scaled by
/// `lc(f)`, from Mignotte's inequality.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f[n].abs();
    (BigInt::one() << n) * norm * lc
}

// Polynomial arithmetic with BigInt coefficients reduced into [0, q).

fn zmod(a: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(q)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zmod(&out, q)
}

fn zsub(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    zmod(&v, q)
}

fn zadd(a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    zmod(&v, q)
}

fn zscale(a: &[BigInt], c: &BigInt, q: &BigInt) -> Vec<BigInt> {
    zmod(&a.iter().map(|x| x * c).collect::<Vec<_>>(), q)
}

fn fp_to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn fp_product(fs: &[Fp], p: u64) -> Fp {
    fs.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p))
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` to monic factors modulo `p^k`.
fn multifactor_lift(f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let q = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc_inv = f.last().unwrap().modinv(&q).expect("lc is a unit mod p");
        return vec![zscale(f, &lc_inv, &q)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = fp_product(left, p);
    let lc_p = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let h0 = modp::scale(&fp_product(right, p), lc_p, p);
    let (g, h) = hensel_two(f, &g0, &h0, p, k);
    let mut out = multifactor_lift(&g, left, p, k);
    out.extend(multifactor_lift(&h, right, p, k));
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)`, `g` monic and coprime to `h`,
/// to `f ≡ G·H (mod p^k)` with `G` monic of the same degree as `g`.
fn hensel_two(f: &[BigInt], g0: &Fp, h0: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = modp::xgcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = fp_to_z(g0);
    let mut h = fp_to_z(h0);
    let mut q = pb.clone();
    for _ in 1..k {
        let next = &q * &pb;
        let prod = zmul(&g, &h, &next);
        let diff = zsub(&zmod(f, &next), &prod, &next);
        // diff is divisible by q; e = diff / q (mod p).
        let e: Vec<BigInt> = diff.iter().map(|c| c / &q).collect();
        let e_p = to_fp(&e, p);
        let te = modp::mul(&t, &e_p, p);
        let (quo, tau) = modp::divmod(&te, g0, p);
        let sigma = sub_add(&modp::mul(&s, &e_p, p), &modp::mul(&quo, h0, p), p);
        g = zadd(&g, &zscale(&fp_to_z(&tau), &q, &next), &next);
        h = zadd(&h, &zscale(&fp_to_z(&sigma), &q, &next), &next);
        q = next;
    }
    (g, h)
}

fn sub_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    // a + b mod p
    modp::sub(a, &modp::scale(b, p - 1, p), p)
}

fn symmetric(a: &[BigInt], q: &BigInt) -> Vec<BigInt> {
    let half: BigInt = q / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(q);
            if c > half {
                c - q
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if a.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    a.into_iter().map(|c| c / &g * &sign).collect()
}

/// Exact quotient over Z, or `None` when `d` does not divide `f`.
fn zdiv_exact(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.len();
    let m = d.len();
    if m > n {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    let lc = d.last().unwrap();
    for i in (0..=n - m).rev() {
        let (qq, rr) = r[i + m - 1].div_rem(lc);
        if !rr.is_zero() {
            return None;
        }
        if qq.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &qq * dj;
        }
        q[i] = qq;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(
    mut f: Vec<BigInt>,
    mut lc: BigInt,
    mut lifted: Vec<Vec<BigInt>>,
    q: &BigInt,
) -> Vec<Polynomial> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            // Cheap filter on the constant term before the full product.
            let c0 = subset.iter().fold(lc.clone(), |acc, &i| (acc * &lifted[i][0]).mod_floor(q));
            let c0 = symmetric(&[c0], q).pop().unwrap();
            if c0.is_zero() || !(&f[0] * &lc % &c0).is_zero() {
                continue;
            }
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zmul(&acc, &lifted[i], q));
            let cand = primitive(symmetric(&prod, q));
            if let Some(quot) = zdiv_exact(&f, &cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(Polynomial::from_bigints(&cand));
                f = quot;
                lc = f.last().unwrap().clone();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(Polynomial::from_bigints(&f));
    found
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let k = cur.len();
        let mut nxt = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.cur = Some(nxt);
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn fac(s: &str) -> Vec<(String, usize)> {
        factor_squarefree(&parse_poly(s).unwrap())
            .unwrap()
            .into_iter()
            .map(|(p, e)| (p.to_string(), e))
            .collect()
    }

    #[test]
    fn kummer_discriminant_factors() {
        assert_eq!(
            fac("(t^4-1)^6"),
            vec![("t - 1".into(), 6), ("t + 1".into(), 6), ("t^2 + 1".into(), 6)]
        );
    }

    #[test]
    fn pure_power_and_irreducible() {
        assert_eq!(fac("t^3"), vec![("t".into(), 3)]);
        assert_eq!(fac("t^2 - 2"), vec![("t^2 - 2".into(), 1)]);
    }

    #[test]
    fn zero_input_rejected() {
        assert_eq!(factor_squarefree(&Polynomial::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // t^4 + 1 is irreducible over Q but splits modulo every prime.
        assert_eq!(fac("t^4 + 1"), vec![("t^4 + 1".into(), 1)]);
        assert_eq!(fac("t^4 - 10*t^2 + 1"), vec![("t^4 - 10*t^2 + 1".into(), 1)]);
    }

    #[test]
    fn non_monic_factors() {
        let got = fac("(2*t^2 + 3)*(3*t^3 - t + 5)*(5*t - 7)^2");
        assert_eq!(got.len(), 3);
        let f = parse_poly("(2*t^2 + 3)*(3*t^3 - t + 5)*(5*t - 7)^2").unwrap();
        let prod = factor_squarefree(&f)
            .unwrap()
            .into_iter()
            .fold(Polynomial::one(), |acc, (g, e)| &acc * &g.pow(e as u32));
        assert_eq!(prod.scale(&f.leading_coeff()), f);
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
    }
}
