//! Integral lattices given by Gram matrices, and the exact operations on
//! them: invariants, discriminant forms, complements, overlattices, twists,
//! short vectors and isometry tests.

mod disc;
mod enumerate;
pub mod intmat;
mod isometry;
mod standard;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use intmat::{IMat, QMat};

pub use disc::DiscriminantGroup;
pub use enumerate::{lll_reduce, minimum, short_vectors, vectors_of_norm};
pub use isometry::{definite_isometry_check, invariants_match, Isometry};
pub use standard::{standard, StandardName};

/// Symmetric integer Gram matrix with optional basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IMat,
    labels: Option<Vec<String>>,
    degenerate: bool,
}

/// JSON shape of a Gram matrix on disk.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum GramFile {
    Bare(Vec<Vec<i64>>),
    Labeled { gram: Vec<Vec<i64>>, labels: Option<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    #[serde(serialize_with = "crate::json::int")]
    pub det: String,
    #[serde(serialize_with = "crate::json::int_vec")]
    pub disc_group: Vec<String>,
    pub even: bool,
    pub signature: (usize, usize),
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<usize>,
}

impl IntegralLattice {
    /// Nondegenerate lattice; rejects asymmetric or singular Gram matrices.
    pub fn new(gram: IMat) -> Result<Self> {
        let l = Self::new_possibly_degenerate(gram)?;
        if l.degenerate {
            return Err(Error::Degenerate);
        }
        Ok(l)
    }

    pub fn new_possibly_degenerate(gram: IMat) -> Result<Self> {
        if !intmat::is_symmetric(&gram) {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        let degenerate = intmat::det(&gram).is_zero();
        Ok(IntegralLattice { gram, labels: None, degenerate })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(intmat::from_i64(rows))
    }

    pub fn from_gram_file(f: GramFile) -> Result<Self> {
        let (g, labels) = match f {
            GramFile::Bare(g) => (g, None),
            GramFile::Labeled { gram, labels } => (gram, labels),
        };
        let l = Self::new_possibly_degenerate(intmat::from_i64(&g))?;
        match labels {
            Some(ls) => l.with_labels(ls),
            None => Ok(l),
        }
    }

    pub fn zero() -> Self {
        IntegralLattice { gram: Vec::new(), labels: None, degenerate: false }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a rank {} lattice",
                labels.len(),
                self.rank()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        self.gram
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("Gram entry fits i64")).collect())
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn det(&self) -> BigInt {
        intmat::det(&self.gram)
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i].is_even())
    }

    /// `(positive, negative)` inertia; zero pivots are not counted.
    pub fn signature(&self) -> (usize, usize) {
        signature_of(&intmat::to_q(&self.gram))
    }

    pub fn is_positive_definite(&self) -> bool {
        !self.degenerate && self.signature() == (self.rank(), 0)
    }

    pub fn is_negative_definite(&self) -> bool {
        !self.degenerate && self.signature() == (0, self.rank())
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut s = BigInt::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    s += xi * &self.gram[i][j] * yj;
                }
            }
        }
        s
    }

    pub fn qpair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    s += xi * Rational::from_integer(self.gram[i][j].clone()) * yj;
                }
            }
        }
        s
    }

    pub fn scaled(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        IntegralLattice {
            gram: self.gram.iter().map(|r| r.iter().map(|x| x * &n).collect()).collect(),
            labels: self.labels.clone(),
            degenerate: self.degenerate || n.is_zero(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut g = intmat::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = other.gram[i][j].clone();
            }
        }
        let labels = match (&self.labels, &other.labels) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).cloned().collect()),
            _ => None,
        };
        IntegralLattice { gram: g, labels, degenerate: self.degenerate || other.degenerate }
    }

    pub fn direct_sum_all<'a, I: IntoIterator<Item = &'a IntegralLattice>>(parts: I) -> Self {
        let mut it = parts.into_iter();
        let Some(first) = it.next() else { return Self::zero() };
        it.fold(first.clone(), |acc, l| acc.direct_sum(l))
    }

    /// Sublattice spanned by integer basis rows, possibly degenerate.
    pub fn sublattice(&self, basis: &IMat) -> Self {
        let g = intmat::gram_of(basis, &self.gram);
        let degenerate = intmat::det(&g).is_zero();
        IntegralLattice { gram: g, labels: None, degenerate }
    }

    /// Integer basis (rows) of `{x : x·v = 0 for all v in vecs}`; saturated.
    pub fn orthogonal_complement_basis(&self, vecs: &IMat) -> IMat {
        if vecs.is_empty() {
            return intmat::identity(self.rank());
        }
        let pairings = intmat::mul(&self.gram, &intmat::transpose(vecs));
        intmat::left_kernel(&pairings)
    }

    pub fn orthogonal_complement(&self, vecs: &IMat) -> (IMat, Self) {
        let b = self.orthogonal_complement_basis(vecs);
        let l = self.sublattice(&b);
        (b, l)
    }

    /// Basis of `(Q-span of vecs) ∩ self`.
    pub fn saturation_basis(vecs: &IMat) -> IMat {
        intmat::saturate(vecs)
    }

    /// Index of the span of `vecs` in its saturation, or `None` when the
    /// vectors are linearly dependent.
    pub fn saturation_index(vecs: &IMat) -> Option<BigInt> {
        let h = intmat::hnf(vecs);
        if h.len() != vecs.len() {
            return None;
        }
        let sat = intmat::saturate(vecs);
        Some(lattice_index(&sat, &h))
    }

    /// Overlattice generated by `self` and rational glue vectors in the
    /// basis of `self`. Returns the new lattice, its basis in the old
    /// rational coordinates, and the index.
    pub fn adjoin_glue(&self, glue: &[Vec<Rational>]) -> Result<(Self, QMat, BigInt)> {
        let n = self.rank();
        if glue.is_empty() {
            return Ok((self.clone(), intmat::to_q(&intmat::identity(n)), BigInt::one()));
        }
        for v in glue {
            if v.len() != n {
                return Err(Error::InvalidArgument("glue vector has the wrong length".into()));
            }
            for e in 0..n {
                let mut ev = vec![Rational::zero(); n];
                ev[e] = Rational::one();
                if !self.qpair(v, &ev).is_integer() {
                    return Err(Error::Domain("glue pairs non-integrally with the lattice".into()));
                }
            }
            for w in glue {
                if !self.qpair(v, w).is_integer() {
                    return Err(Error::Domain("glue vectors pair non-integrally".into()));
                }
            }
            if self.is_even() && !self.qpair(v, v).to_integer().is_even() {
                return Err(Error::Domain("glue has odd norm in an even lattice".into()));
            }
        }
        let d = glue.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let dq = Rational::from_integer(d.clone());
        let mut rows: IMat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d.clone() } else { BigInt::zero() }).collect())
            .collect();
        for v in glue {
            rows.push(v.iter().map(|x| (x * &dq).to_integer()).collect());
        }
        let h = intmat::hnf(&rows);
        let basis: QMat = h
            .iter()
            .map(|r| r.iter().map(|x| Rational::new(x.clone(), d.clone())).collect())
            .collect();
        let g = intmat::to_z(&intmat::qgram_of(&basis, &intmat::to_q(&self.gram)))
            .ok_or_else(|| Error::Domain("glued Gram is not integral".into()))?;
        let new = IntegralLattice::new(g)?;
        let index = (self.det() / new.det()).abs().sqrt();
        Ok((new, basis, index))
    }

    /// `L(n)`: the Gram matrix multiplied by `n`.
    pub fn twist(&self, n: i64) -> Self {
        self.scaled(n)
    }

    /// The lattice `L` with `self ≅ L(n)`, when the discriminant conditions
    /// for such an `L` hold; `None` otherwise.
    pub fn untwist(&self, n: i64) -> Option<Self> {
        if n < 1 || self.degenerate {
            return None;
        }
        if n == 1 {
            return Some(self.clone());
        }
        let nb = BigInt::from(n);
        let dg = self.discriminant_group();
        if dg.elementary_divisors.len() != self.rank() {
            return None;
        }
        if dg.elementary_divisors.iter().any(|d| !(d % &nb).is_zero()) {
            return None;
        }
        let nq = Rational::from_integer(nb.clone());
        // d_i·β_i where |β_i| = n·d_i.
        let scaled: Vec<Vec<Rational>> = dg
            .generators
            .iter()
            .zip(&dg.elementary_divisors)
            .map(|(g, ord)| {
                let di = Rational::from_integer(ord / &nb);
                g.iter().map(|x| x * &di).collect()
            })
            .collect();
        for a in &scaled {
            for b in &scaled {
                if !(self.qpair(a, b) * &nq).is_integer() {
                    return None;
                }
            }
        }
        let g: Option<IMat> = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let (q, rem) = x.div_rem(&nb);
                        rem.is_zero().then_some(q)
                    })
                    .collect()
            })
            .collect();
        let l = IntegralLattice::new(g?).ok()?;
        Some(IntegralLattice { labels: self.labels.clone(), ..l })
    }

    /// Number of vectors `v` with `v·v = ±2`; requires a definite lattice.
    pub fn roots(&self) -> Result<usize> {
        let counts = short_vectors(self, 2)?;
        Ok(counts.iter().find(|(n, _)| *n == 2).map_or(0, |(_, c)| *c))
    }

    pub fn invariants(&self, with_roots: bool) -> Result<Invariants> {
        if self.degenerate {
            return Err(Error::Degenerate);
        }
        let dg = self.discriminant_group();
        let roots = if with_roots && (self.is_positive_definite() || self.is_negative_definite()) {
            Some(self.roots()?)
        } else {
            None
        };
        Ok(Invariants {
            rank: self.rank(),
            det: self.det().to_string(),
            disc_group: dg.elementary_divisors.iter().map(|d| d.to_string()).collect(),
            even: self.is_even(),
            signature: self.signature(),
            roots,
        })
    }

    /// Integer vectors (rows) fixed by every matrix; matrices act on
    /// coordinate columns.
    pub fn fixed_sublattice_basis(&self, action: &[IMat]) -> Result<IMat> {
        for g in action {
            self.check_preserves(g)?;
        }
        let n = self.rank();
        let mut stacked: IMat = Vec::new();
        for g in action {
            for (i, row) in g.iter().enumerate() {
                let mut r = row.clone();
                r[i] -= BigInt::one();
                stacked.push(r);
            }
        }
        Ok(intmat::right_kernel(&stacked, n))
    }

    pub fn fixed_sublattice(&self, action: &[IMat]) -> Result<(IMat, Self)> {
        let b = self.fixed_sublattice_basis(action)?;
        let l = self.sublattice(&b);
        Ok((b, l))
    }

    pub fn check_preserves(&self, g: &IMat) -> Result<()> {
        if g.len() != self.rank() {
            return Err(Error::InvalidArgument("action matrix has the wrong size".into()));
        }
        let lhs = intmat::mul(&intmat::mul(&intmat::transpose(g), &self.gram), g);
        if lhs != self.gram {
            return Err(Error::Domain("action does not preserve the Gram matrix".into()));
        }
        Ok(())
    }
}

/// Order of the matrix group generated by `gens`, by closure.
pub fn group_order(gens: &[IMat], bound: usize) -> Result<usize> {
    use std::collections::{HashSet, VecDeque};
    let Some(first) = gens.first() else { return Ok(1) };
    let id = intmat::identity(first.len());
    let mut seen: HashSet<IMat> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = intmat::mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(Error::Domain(format!("group order exceeds {}", bound)));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// Inertia of a symmetric rational matrix by symmetric pivoting.
pub fn signature_of(m: &QMat) -> (usize, usize) {
    let mut a = m.clone();
    let mut n = a.len();
    let (mut pos, mut neg) = (0, 0);
    while n > 0 {
        // Prefer a nonzero diagonal pivot.
        let piv = (0..n).find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                // e_i ← e_i + e_j makes the diagonal entry 2·a_ij ≠ 0.
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let mut next: QMat = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != p) {
            let row: Vec<Rational> = (0..n)
                .filter(|&j| j != p)
                .map(|j| &a[i][j] - &a[i][p] * &a[p][j] / &d)
                .collect();
            next.push(row);
        }
        a = next;
        n -= 1;
    }
    (pos, neg)
}

/// Lattice spanned by rational generators in an ambient space with rational
/// Gram `gram`. Returns it with its basis in ambient coordinates; fails when
/// the restricted form is not integral or is degenerate.
pub fn span_lattice(gram: &QMat, gens: &QMat) -> Result<(IntegralLattice, QMat)> {
    let d = intmat::common_denominator(gens);
    let dq = Rational::from_integer(d.clone());
    let rows: IMat = gens.iter().map(|r| r.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    let h = intmat::hnf(&rows);
    let basis: QMat = h
        .iter()
        .map(|r| r.iter().map(|x| Rational::new(x.clone(), d.clone())).collect())
        .collect();
    let g = intmat::to_z(&intmat::qgram_of(&basis, gram))
        .ok_or_else(|| Error::Domain("span has a non-integral Gram matrix".into()))?;
    Ok((IntegralLattice::new(g)?, basis))
}

/// `[span(sup) : span(sub)]` for full-rank row bases of the same subspace.
fn lattice_index(sup: &IMat, sub: &IMat) -> BigInt {
    // Express sub in terms of sup and take the determinant.
    let supq = intmat::to_q(sup);
    let g = intmat::qmul(&supq, &intmat::transpose(&supq));
    let ginv = intmat::qinverse(&g).expect("independent rows");
    let coords = intmat::qmul(&intmat::qmul(&intmat::to_q(sub), &intmat::transpose(&supq)), &ginv);
    let z = intmat::to_z(&coords).expect("sub lies in sup");
    intmat::det(&z).abs()
}

pub fn index_in(sup: &IMat, sub: &IMat) -> BigInt {
    lattice_index(sup, sub)
}

/// Whether every row of `vecs` lies in the Z-span of the rows of `basis`.
pub fn contains_all(basis: &IMat, vecs: &IMat) -> bool {
    let bq = intmat::to_q(basis);
    let g = intmat::qmul(&bq, &intmat::transpose(&bq));
    let Some(ginv) = intmat::qinverse(&g) else { return false };
    let coords = intmat::qmul(&intmat::qmul(&intmat::to_q(vecs), &intmat::transpose(&bq)), &ginv);
    // Coordinates must be integral and reproduce the vector exactly.
    let Some(z) = intmat::to_z(&coords) else { return false };
    intmat::mul(&z, basis) == *vecs
}

/// Integer coordinates of `v` in a row basis, if `v` lies in its Z-span.
pub fn coordinates_in(basis: &IMat, v: &[BigInt]) -> Option<Vec<BigInt>> {
    contains_all(basis, &vec![v.to_vec()]).then(|| {
        let bq = intmat::to_q(basis);
        let g = intmat::qmul(&bq, &intmat::transpose(&bq));
        let ginv = intmat::qinverse(&g).unwrap();
        let c = intmat::qmul(&intmat::qmul(&intmat::to_q(&vec![v.to_vec()]), &intmat::transpose(&bq)), &ginv);
        intmat::to_z(&c).unwrap().pop().unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    fn lat(rows: &[&[i64]]) -> IntegralLattice {
        IntegralLattice::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hyperbolic_plane_invariants() {
        let u = lat(&[&[0, 1], &[1, 0]]);
        assert_eq!(u.det(), BigInt::from(-1));
        assert_eq!(u.direct_sum(&u).signature(), (2, 2));
        assert_eq!(u.direct_sum(&u).det(), BigInt::one());
        let u6 = u.twist(6);
        assert_eq!(u6.direct_sum(&u6).det(), BigInt::from(1296));
    }

    #[test]
    fn complement_in_u() {
        let u = lat(&[&[0, 1], &[1, 0]]);
        let (b, c) = u.orthogonal_complement(&intmat::from_i64(&[vec![1, 0]]));
        assert_eq!(b, intmat::from_i64(&[vec![1, 0]]));
        assert!(c.is_degenerate());
        let (b, c) = u.orthogonal_complement(&intmat::from_i64(&[vec![1, 1]]));
        assert_eq!(c.gram_i64(), vec![vec![-2]]);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn degenerate_rejected_by_default() {
        assert_eq!(IntegralLattice::from_i64(&[vec![0]]), Err(Error::Degenerate));
    }

    #[test]
    fn glue_on_a1_squared() {
        let a1 = lat(&[&[-2]]);
        let l = a1.direct_sum(&a1).direct_sum(&a1).direct_sum(&a1);
        let v = vec![frac(1, 2); 4];
        let (m, _, idx) = l.adjoin_glue(&[v]).unwrap();
        assert_eq!(idx, BigInt::from(2));
        assert_eq!(m.det().abs(), BigInt::from(4));
        assert!(m.is_even());
    }

    #[test]
    fn untwist_fails_on_a2() {
        let a2 = lat(&[&[-2, 1], &[1, -2]]);
        assert_eq!(a2.untwist(2), None);
    }

    #[test]
    fn group_order_of_swap() {
        let g = intmat::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(group_order(&[g], 100).unwrap(), 2);
    }
}
