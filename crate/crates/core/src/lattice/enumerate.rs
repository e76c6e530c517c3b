//! LLL reduction and Fincke–Pohst enumeration, both in exact arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::intmat::{self, IMat};
use super::IntegralLattice;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Gram–Schmidt data `(μ, B)` of a positive definite Gram matrix.
fn gram_schmidt(g: &IMat) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = Rational::from_integer(g[i][j].clone());
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = s / &b[j];
        }
        let mut s = Rational::from_integer(g[i][i].clone());
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b[i] = s;
    }
    (mu, b)
}

fn round(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// `b_k ← b_k − q·b_j` applied to both the transform and the Gram matrix.
fn reduce_row(t: &mut IMat, g: &mut IMat, k: usize, j: usize, q: &BigInt) {
    let n = g.len();
    let tj = t[j].clone();
    for (a, b) in t[k].iter_mut().zip(&tj) {
        *a -= q * b;
    }
    let gkk = &g[k][k] - BigInt::from(2) * q * &g[k][j] + q * q * &g[j][j];
    for i in 0..n {
        if i != k {
            let v = &g[k][i] - q * &g[j][i];
            g[k][i] = v.clone();
            g[i][k] = v;
        }
    }
    g[k][k] = gkk;
}

/// LLL-reduced basis of a positive definite lattice: returns the unimodular
/// transform `T` (rows are new basis vectors) and `T·G·Tᵀ`.
pub fn lll_reduce(gram: &IMat) -> (IMat, IMat) {
    let n = gram.len();
    let mut t = intmat::identity(n);
    let mut g = gram.clone();
    if n <= 1 {
        return (t, g);
    }
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&g);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                reduce_row(&mut t, &mut g, k, j, &q);
            }
        }
        let (mu, b) = gram_schmidt(&g);
        let lhs = &b[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            t.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    (t, g)
}

/// Positive definite Gram of `L` or `−L`, with the sign used.
fn definite_gram(l: &IntegralLattice) -> Result<(IMat, i64)> {
    if l.is_positive_definite() {
        Ok((l.gram().clone(), 1))
    } else if l.is_negative_definite() {
        Ok((l.scaled(-1).gram().clone(), -1))
    } else {
        Err(Error::Indefinite)
    }
}

/// Calls `visit(x, norm)` for every nonzero `x` with `x·G·xᵀ ≤ bound`.
fn fincke_pohst<F: FnMut(&[i64], &BigInt)>(g: &IMat, bound: &BigInt, mut visit: F) {
    let n = g.len();
    if n == 0 {
        return;
    }
    let (mu, b) = gram_schmidt(g);
    let mut x = vec![0i64; n];
    // rem[i] is the budget left for coordinates 0..i after fixing i+1..n.
    let bound_q = Rational::from_integer(bound.clone());
    recurse(n - 1, &mu, &b, &mut x, bound_q, g, &mut visit);

    fn recurse<F: FnMut(&[i64], &BigInt)>(
        i: usize,
        mu: &[Vec<Rational>],
        b: &[Rational],
        x: &mut Vec<i64>,
        rem: Rational,
        g: &IMat,
        visit: &mut F,
    ) {
        let n = x.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            if x[j] != 0 {
                c += &mu[j][i] * Rational::from_integer(BigInt::from(x[j]));
            }
        }
        let fits = |xi: i64| -> Option<Rational> {
            let d = Rational::from_integer(BigInt::from(xi)) + &c;
            let used = &b[i] * &d * &d;
            (used <= rem).then(|| &rem - used)
        };
        let centre = round(&(-c.clone())).to_i64().expect("small coordinate");
        let mut try_one = |xi: i64, x: &mut Vec<i64>| -> bool {
            let Some(left) = fits(xi) else { return false };
            x[i] = xi;
            if i == 0 {
                if x.iter().any(|&v| v != 0) {
                    let mut norm = BigInt::zero();
                    for a in 0..n {
                        if x[a] == 0 {
                            continue;
                        }
                        for bb in 0..n {
                            if x[bb] != 0 {
                                norm += &g[a][bb] * BigInt::from(x[a] * x[bb]);
                            }
                        }
                    }
                    visit(x, &norm);
                }
            } else {
                recurse(i - 1, mu, b, x, left, g, visit);
            }
            true
        };
        let mut xi = centre;
        while try_one(xi, x) {
            xi -= 1;
        }
        let mut xi = centre + 1;
        while try_one(xi, x) {
            xi += 1;
        }
        x[i] = 0;
    }
}

/// Counts of nonzero vectors by absolute norm `|v·v| ≤ bound`, sorted.
pub fn short_vectors(l: &IntegralLattice, bound: i64) -> Result<Vec<(i64, usize)>> {
    let (g, _) = definite_gram(l)?;
    let (_, reduced) = lll_reduce(&g);
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    fincke_pohst(&reduced, &BigInt::from(bound), |_, norm| {
        *counts.entry(norm.to_i64().unwrap()).or_default() += 1;
    });
    Ok(counts.into_iter().collect())
}

/// All vectors of absolute norm exactly `norm`, as integer coordinate rows
/// in the basis of `l`, in a canonical order.
pub fn vectors_of_norm(l: &IntegralLattice, norm: i64) -> Result<Vec<Vec<BigInt>>> {
    let (g, _) = definite_gram(l)?;
    let (t, reduced) = lll_reduce(&g);
    let target = BigInt::from(norm);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    fincke_pohst(&reduced, &target, |x, nrm| {
        if *nrm == target {
            let xb: IMat = vec![x.iter().map(|&v| BigInt::from(v)).collect()];
            out.push(intmat::mul(&xb, &t).pop().unwrap());
        }
    });
    out.sort();
    Ok(out)
}

/// The minimal absolute norm of a nonzero vector.
pub fn minimum(l: &IntegralLattice) -> Result<i64> {
    let (g, _) = definite_gram(l)?;
    let (_, reduced) = lll_reduce(&g);
    let bound = (0..reduced.len()).map(|i| reduced[i][i].clone()).min().unwrap_or_default();
    let mut best = bound.clone();
    fincke_pohst(&reduced, &bound, |_, n| {
        if *n < best {
            best = n.clone();
        }
    });
    Ok(best.to_i64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{standard, StandardName};

    fn is_unimodular(t: &IMat) -> bool {
        num_traits::Signed::abs(&intmat::det(t)).is_one()
    }

    #[test]
    fn e8_root_count() {
        let e8 = standard(&StandardName::E8, -1).unwrap();
        assert_eq!(short_vectors(&e8, 2).unwrap(), vec![(2, 240)]);
        let e82 = e8.twist(2);
        assert_eq!(short_vectors(&e82, 4).unwrap(), vec![(4, 240)]);
        assert_eq!(e82.roots().unwrap(), 0);
    }

    #[test]
    fn lll_is_unimodular_and_consistent() {
        let g = intmat::from_i64(&[vec![10, 7, 3], vec![7, 6, 2], vec![3, 2, 5]]);
        let (t, r) = lll_reduce(&g);
        assert!(is_unimodular(&t));
        assert_eq!(intmat::gram_of(&t, &g), r);
    }

    #[test]
    fn indefinite_rejected() {
        let u = standard(&StandardName::U, 1).unwrap();
        assert_eq!(short_vectors(&u, 2), Err(Error::Indefinite));
    }

    #[test]
    fn a2_minimal_vectors() {
        let a2 = standard(&StandardName::A(2), 1).unwrap();
        assert_eq!(vectors_of_norm(&a2, 2).unwrap().len(), 6);
        assert_eq!(minimum(&a2).unwrap(), 2);
    }
}
