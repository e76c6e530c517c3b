//! Dense polynomials over a small prime field, just enough for Berlekamp.

pub(crate) type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

#[cfg(test)]
pub(crate) fn from_ints(c: &[i128], p: u64) -> Fp {
    trim(c.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect())
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect())
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub(crate) fn divmod(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i] * inv % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = i - db + j;
            r[idx] = (r[idx] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divmod(a, b, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub(crate) fn xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub(crate) fn is_squarefree(a: &Fp, p: u64) -> bool {
    let d = derivative(a, p);
    !d.is_empty() && gcd(a, &d, p).len() == 1
}

/// Irreducible monic factors of a monic squarefree `f` by Berlekamp's
/// algorithm. Output order is canonical (sorted).
pub(crate) fn berlekamp(f: &Fp, p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // Row i of Q holds x^{ip} mod f.
    let xp = powmod_x(p, f, p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur: Fp = vec![1];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = rem(&mul(&cur, &xp, p), f, p);
    }
    // Kernel of (Q − I)ᵀ: vectors v with Σ_i v_i (row_i − e_i) = 0.
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let basis = left_kernel(&rows, n, p);
    let k = basis.len();
    let mut factors = vec![f.clone()];
    if k == 1 {
        return factors;
    }
    'outer: for v in basis.iter().skip(1) {
        let v = trim(v.clone());
        let mut next = Vec::new();
        for g in factors.drain(..) {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut pending = vec![g];
            for s in 0..p {
                let vs = sub(&v, &vec![s], p);
                let mut still = Vec::new();
                for h in pending.drain(..) {
                    let d = gcd(&h, &vs, p);
                    if d.len() > 1 && d.len() < h.len() {
                        let (q, _) = divmod(&h, &d, p);
                        still.push(d);
                        still.push(monic(&q, p));
                    } else {
                        still.push(h);
                    }
                }
                pending = still;
            }
            next.extend(pending);
        }
        factors = next;
        if factors.len() == k {
            break 'outer;
        }
    }
    factors.sort();
    factors
}

fn powmod_x(e: u64, f: &Fp, p: u64) -> Fp {
    let mut base: Fp = rem(&vec![0, 1], f, p);
    let mut acc: Fp = vec![1];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &base, p), f, p);
        }
        base = rem(&mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

/// Basis of `{v : v·M = 0}` for an `n × n` matrix given by rows, with the
/// constant vector first when it lies in the kernel.
fn left_kernel(rows: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    // Transpose so that we solve Mᵀ v = 0 by column elimination.
    let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = (p - m[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_x4_minus_1_mod_5() {
        let f = from_ints(&[-1, 0, 0, 0, 1], 5);
        let fs = berlekamp(&f, 5);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn berlekamp_keeps_irreducible() {
        let f = from_ints(&[1, 1, 0, 1], 2);
        assert_eq!(berlekamp(&f, 2), vec![f]);
    }

    #[test]
    fn xgcd_identity() {
        let p = 7;
        let a = from_ints(&[1, 2, 1], p);
        let b = from_ints(&[3, 1], p);
        let (g, s, t) = xgcd(&a, &b, p);
        let lhs = sub(&mul(&s, &a, p), &scale(&mul(&t, &b, p), p - 1, p), p);
        assert_eq!(lhs, g);
    }
}
