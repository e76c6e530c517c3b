use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::intmat;
use super::IntegralLattice;
use crate::algebra::Rational;

/// `L*/L` with its discriminant quadratic and bilinear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than one, each dividing the next.
    pub elementary_divisors: Vec<BigInt>,
    /// Dual vectors in the lattice basis generating the cyclic factors.
    pub generators: Vec<Vec<Rational>>,
    /// `q(g_i)` reduced into `[0, 2)`.
    pub q_values: Vec<Rational>,
    /// `b(g_i, g_j)` reduced into `[0, 1)`.
    pub b_values: Vec<Vec<Rational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn length(&self) -> usize {
        self.elementary_divisors.len()
    }
}

pub(crate) fn reduce_mod(x: &Rational, m: i64) -> Rational {
    let m = Rational::from_integer(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

impl IntegralLattice {
    pub fn discriminant_group(&self) -> DiscriminantGroup {
        let s = intmat::smith(self.gram());
        let mut divisors = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            let d = d.abs();
            if d <= BigInt::one() {
                continue;
            }
            // U·G·V = D, so G·(V e_i / d_i) = U⁻¹ e_i is integral.
            let g: Vec<Rational> = s
                .v
                .iter()
                .map(|row| Rational::new(row[i].clone(), d.clone()))
                .collect();
            divisors.push(d);
            generators.push(g);
        }
        let q_values = generators.iter().map(|g| reduce_mod(&self.qpair(g, g), 2)).collect();
        let b_values = generators
            .iter()
            .map(|a| generators.iter().map(|b| reduce_mod(&self.qpair(a, b), 1)).collect())
            .collect();
        DiscriminantGroup { elementary_divisors: divisors, generators, q_values, b_values }
    }

    /// Multiset of `q` over all of `L*/L`, sorted; used as an invariant.
    pub fn q_value_multiset(&self) -> Vec<Rational> {
        let dg = self.discriminant_group();
        let mut out = Vec::new();
        let orders: Vec<i64> = dg
            .elementary_divisors
            .iter()
            .map(|d| d.try_into().expect("small discriminant"))
            .collect();
        let total: i64 = orders.iter().product();
        if total > 1 << 16 {
            return out;
        }
        let n = self.rank();
        for idx in 0..total {
            let mut rem = idx;
            let mut v = vec![Rational::from_integer(BigInt::from(0)); n];
            for (g, &o) in dg.generators.iter().zip(&orders) {
                let c = rem.mod_floor(&o);
                rem /= o;
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += gi * Rational::from_integer(BigInt::from(c));
                }
            }
            out.push(reduce_mod(&self.qpair(&v, &v), 2));
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    #[test]
    fn u_has_trivial_group() {
        let u = IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(u.discriminant_group().length(), 0);
    }

    #[test]
    fn four_four() {
        let l = IntegralLattice::from_i64(&[vec![4, 0], vec![0, 4]]).unwrap();
        let dg = l.discriminant_group();
        assert_eq!(dg.elementary_divisors, vec![BigInt::from(4), BigInt::from(4)]);
        assert_eq!(dg.q_values, vec![frac(1, 4), frac(1, 4)]);
    }
}
