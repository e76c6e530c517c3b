use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::enumerate::{lll_reduce, short_vectors, vectors_of_norm};
use super::intmat;
use super::IntegralLattice;

/// Answer of an isometry test. `Unknown` means every computed invariant
/// agrees but no explicit isometry was searched for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isometry {
    Yes,
    No,
    Unknown,
}

/// Largest rank handled by the exhaustive basis search.
pub const EXHAUSTIVE_RANK: usize = 8;

/// Rank, determinant, parity, signature, elementary divisors, discriminant
/// form values and (for definite lattices) short-vector counts to norm 8.
pub fn invariants_match(a: &IntegralLattice, b: &IntegralLattice) -> bool {
    if a.rank() != b.rank()
        || a.det() != b.det()
        || a.is_even() != b.is_even()
        || a.signature() != b.signature()
    {
        return false;
    }
    let (da, db) = (a.discriminant_group(), b.discriminant_group());
    if da.elementary_divisors != db.elementary_divisors {
        return false;
    }
    if a.q_value_multiset() != b.q_value_multiset() {
        return false;
    }
    let definite = a.is_positive_definite() || a.is_negative_definite();
    if definite && a.rank() > 0 {
        return short_vectors(a, 8).ok() == short_vectors(b, 8).ok();
    }
    true
}

/// Isometry test for definite lattices: exhaustive up to rank 8, by
/// invariants above that.
pub fn definite_isometry_check(a: &IntegralLattice, b: &IntegralLattice) -> Isometry {
    if !invariants_match(a, b) {
        return Isometry::No;
    }
    let definite = a.is_positive_definite() || a.is_negative_definite();
    if !definite || a.rank() > EXHAUSTIVE_RANK {
        return Isometry::Unknown;
    }
    if find_isometry(a, b).is_some() {
        Isometry::Yes
    } else {
        Isometry::No
    }
}

/// Images in `b`'s coordinates of the basis vectors of `a`, if an isometry
/// exists. Both lattices must be definite of the same sign.
pub fn find_isometry(a: &IntegralLattice, b: &IntegralLattice) -> Option<Vec<Vec<i64>>> {
    let n = a.rank();
    if n == 0 {
        return Some(Vec::new());
    }
    let sign: i64 = if a.is_positive_definite() { 1 } else { -1 };
    let ga = a.scaled(sign);
    let gb = b.scaled(sign);
    let (t, ra) = lll_reduce(ga.gram());
    let target: Vec<Vec<i64>> = ra
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    let mut cands: Vec<Vec<(Vec<i64>, Vec<i64>)>> = Vec::with_capacity(n);
    let gbi = gb.gram_i64();
    for i in 0..n {
        let vs = vectors_of_norm(&gb, target[i][i]).ok()?;
        let list = vs
            .into_iter()
            .map(|v| {
                let v: Vec<i64> = v.iter().map(|x| x.to_i64().unwrap()).collect();
                let gv: Vec<i64> = (0..n).map(|r| (0..n).map(|c| gbi[r][c] * v[c]).sum()).collect();
                (v, gv)
            })
            .collect();
        cands.push(list);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    if !search(0, &target, &cands, &mut chosen) {
        return None;
    }
    let images: Vec<Vec<i64>> = chosen.iter().enumerate().map(|(i, &k)| cands[i][k].0.clone()).collect();
    // Check the image basis is unimodular, then pull back through T.
    let c = intmat::from_i64(&images);
    if !intmat::det(&c).abs().is_one() {
        return None;
    }
    let tinv = intmat::qinverse(&intmat::to_q(&t))?;
    let pulled = intmat::to_z(&intmat::qmul(&tinv, &intmat::to_q(&c)))?;
    Some(
        pulled
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect(),
    )
}

fn search(
    i: usize,
    target: &[Vec<i64>],
    cands: &[Vec<(Vec<i64>, Vec<i64>)>],
    chosen: &mut Vec<usize>,
) -> bool {
    if i == target.len() {
        return true;
    }
    'next: for (k, (v, _)) in cands[i].iter().enumerate() {
        for (j, &cj) in chosen.iter().enumerate() {
            let gw = &cands[j][cj].1;
            let ip: i64 = v.iter().zip(gw).map(|(a, b)| a * b).sum();
            if ip != target[i][j] {
                continue 'next;
            }
        }
        chosen.push(k);
        if search(i + 1, target, cands, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{standard, StandardName};

    #[test]
    fn e8_against_itself_in_another_basis() {
        let e8 = standard(&StandardName::E8, -1).unwrap();
        let t = intmat::from_i64(&[
            vec![1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 2, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, -1],
            vec![0, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
        ]);
        let other = e8.sublattice(&t);
        assert_eq!(definite_isometry_check(&e8, &other), Isometry::Yes);
    }

    #[test]
    fn u_vs_u2() {
        let u = standard(&StandardName::U, 1).unwrap();
        let u2 = u.twist(2);
        assert_eq!(definite_isometry_check(&u, &u2), Isometry::No);
    }

    #[test]
    fn a1_vs_minus_two() {
        let a1 = standard(&StandardName::A(1), -1).unwrap();
        let d = IntegralLattice::from_i64(&[vec![-2]]).unwrap();
        assert_eq!(definite_isometry_check(&a1, &d), Isometry::Yes);
    }

    #[test]
    fn a2_sum_vs_d4_same_rank_different_det() {
        let a2 = standard(&StandardName::A(2), 1).unwrap();
        let d4 = standard(&StandardName::D(4), 1).unwrap();
        assert_eq!(definite_isometry_check(&a2.direct_sum(&a2), &d4), Isometry::No);
    }
}
