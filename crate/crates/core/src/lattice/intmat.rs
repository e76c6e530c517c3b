//! Dense integer and rational matrices with the exact eliminations the
//! lattice layer needs: Bareiss determinant, echelon forms with unimodular
//! transforms, integer kernels and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<Rational>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> IMat {
    vec![vec![BigInt::zero(); c]; r]
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn to_q(m: &IMat) -> QMat {
    m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Integer matrix if every entry is integral.
pub fn to_z(m: &QMat) -> Option<IMat> {
    m.iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

/// `B · G · Bᵀ` for basis rows `B`.
pub fn gram_of(basis: &IMat, gram: &IMat) -> IMat {
    mul(&mul(basis, gram), &transpose(basis))
}

pub fn qgram_of(basis: &QMat, gram: &QMat) -> QMat {
    qmul(&qmul(basis, gram), &transpose(basis))
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Fraction-free Gaussian elimination.
pub fn det(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn rank(m: &IMat) -> usize {
    let (h, _) = row_echelon(m);
    h.iter().filter(|r| r.iter().any(|x| !x.is_zero())).count()
}

/// Row echelon form `H = U·M` with `U` unimodular. Entries above each pivot
/// are reduced into `[0, pivot)` and pivots are positive, so on a full
/// row-rank input the nonzero rows form the Hermite normal form.
pub fn row_echelon(m: &IMat) -> (IMat, IMat) {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    let mut h = m.clone();
    let mut u = identity(r);
    let mut piv_row = 0;
    for col in 0..c {
        if piv_row == r {
            break;
        }
        loop {
            // Bring the smallest nonzero entry of this column to the pivot row.
            let best = (piv_row..r)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(piv_row, best);
            u.swap(piv_row, best);
            let mut done = true;
            for i in piv_row + 1..r {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[piv_row][col]);
                row_axpy(&mut h, i, piv_row, &q);
                row_axpy(&mut u, i, piv_row, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[piv_row][col].is_zero() {
            continue;
        }
        if h[piv_row][col].is_negative() {
            negate_row(&mut h, piv_row);
            negate_row(&mut u, piv_row);
        }
        for i in 0..piv_row {
            let q = h[i][col].div_floor(&h[piv_row][col]);
            if !q.is_zero() {
                row_axpy(&mut h, i, piv_row, &q);
                row_axpy(&mut u, i, piv_row, &q);
            }
        }
        piv_row += 1;
    }
    (h, u)
}

/// `row[i] -= q·row[j]`.
fn row_axpy(m: &mut IMat, i: usize, j: usize, q: &BigInt) {
    let (src, dst) = if i < j {
        let (a, b) = m.split_at_mut(j);
        (&b[0], &mut a[i])
    } else {
        let (a, b) = m.split_at_mut(i);
        (&a[j], &mut b[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

fn negate_row(m: &mut IMat, i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

/// Hermite normal form basis of the row span.
pub fn hnf(rows: &IMat) -> IMat {
    let (h, _) = row_echelon(rows);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis (as rows) of `{x ∈ Z^n : x·M = 0}` where `M` has `n` rows.
/// The result is always saturated in `Z^n`.
pub fn left_kernel(m: &IMat) -> IMat {
    let (h, u) = row_echelon(m);
    let mut ker: IMat = h
        .iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur)
        .collect();
    if !ker.is_empty() {
        ker = hnf(&ker);
    }
    ker
}

/// Basis of `{x : M·x = 0}` (right kernel) as rows.
pub fn right_kernel(m: &IMat, ncols: usize) -> IMat {
    if m.is_empty() {
        return identity(ncols);
    }
    left_kernel(&transpose(m))
}

/// Rows spanning `(Q-span of rows) ∩ Z^n`.
pub fn saturate(rows: &IMat) -> IMat {
    let n = rows.first().map_or(0, |r| r.len());
    if rows.iter().all(|r| r.iter().all(|x| x.is_zero())) {
        return Vec::new();
    }
    let orth = right_kernel(rows, n);
    right_kernel(&orth, n)
}

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular and the diagonal of
/// `D` nonnegative with each entry dividing the next.
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: IMat,
    pub v: IMat,
}

pub fn smith(m: &IMat) -> Smith {
    let r = m.len();
    let c = m.first().map_or(0, |x| x.len());
    let mut a = m.clone();
    let mut u = identity(r);
    let mut v = identity(c);
    let mut t = 0;
    while t < r.min(c) {
        // Pivot: entry of least absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        let mut clean = true;
        for i in t + 1..r {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            row_axpy(&mut a, i, t, &q);
            row_axpy(&mut u, i, t, &q);
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..c {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            col_axpy(&mut a, j, t, &q);
            col_axpy(&mut v, j, t, &q);
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Divisibility condition: fold an offending row into the pivot row.
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            let minus_one = -BigInt::one();
            row_axpy(&mut a, t, i, &minus_one);
            row_axpy(&mut u, t, i, &minus_one);
            continue;
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let diag = (0..r.min(c)).map(|i| a[i][i].clone()).collect();
    Smith { diag, u, v }
}

fn swap_cols(m: &mut IMat, i: usize, j: usize) {
    if i != j {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `col[i] -= q·col[j]`.
fn col_axpy(m: &mut IMat, i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[j].is_zero() {
            let d = q * &row[j];
            row[i] -= d;
        }
    }
}

/// Inverse over Q; `None` if singular.
pub fn qinverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.clone();
    let mut inv: QMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let f = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &f;
        }
        for x in inv[col].iter_mut() {
            *x *= &f;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let g = a[i][col].clone();
                for j in 0..n {
                    let d = &g * &a[col][j];
                    a[i][j] -= d;
                    let d = &g * &inv[col][j];
                    inv[i][j] -= d;
                }
            }
        }
    }
    Some(inv)
}

/// Least common denominator of a rational matrix.
pub fn common_denominator(m: &QMat) -> BigInt {
    m.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> IMat {
        from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = z(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(det(&m), BigInt::from(4));
        let u = z(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&u), BigInt::from(-1));
        assert_eq!(det(&z(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])), BigInt::from(1));
    }

    #[test]
    fn echelon_transform_is_consistent() {
        let m = z(&[&[4, 6, 2], &[2, 3, 1], &[1, 0, 5]]);
        let (h, u) = row_echelon(&m);
        assert_eq!(mul(&u, &m), h);
        assert_eq!(det(&u).abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        // x·M = 0 with M having the row relation 2·r0 = r1.
        let m = z(&[&[2, 4], &[4, 8]]);
        let k = left_kernel(&m);
        assert_eq!(k, z(&[&[2, -1]]));
        let m = z(&[&[3], &[6]]);
        assert_eq!(left_kernel(&m), z(&[&[2, -1]]));
    }

    #[test]
    fn saturation_of_doubled_vector() {
        assert_eq!(saturate(&z(&[&[2, 4, 6]])), z(&[&[1, 2, 3]]));
    }

    #[test]
    fn smith_diagonal_and_transform() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&m);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = mul(&mul(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], want);
            }
        }
    }
}
