//! The lattices `M_{Z/5Z}` and `M_{D6}` as overlattices of the root lattices
//! spanned by the exceptional curves.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::{frac, Rational};
use crate::error::{Error, Result};
use crate::lattice::{standard, IntegralLattice, Invariants, StandardName};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgName {
    Z5,
    D6,
}

impl std::str::FromStr for MgName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z5" | "z/5z" => Ok(MgName::Z5),
            "d6" => Ok(MgName::D6),
            _ => Err(Error::InvalidArgument(format!("unknown M_G '{}'", s))),
        }
    }
}

/// `M_G` with the root lattice it was glued from.
#[derive(Clone, Debug)]
pub struct Mg {
    pub base: IntegralLattice,
    pub glue: Vec<Vec<Rational>>,
    pub lattice: IntegralLattice,
    pub index: BigInt,
}

fn labeled(name: StandardName, prefix: &str) -> Result<IntegralLattice> {
    let l = standard(&name, -1)?;
    let labels = (1..=l.rank()).map(|i| format!("{}{}", prefix, i)).collect();
    l.with_labels(labels)
}

/// `A4(−1)^4` glued by `⅕[Σ_{i=1,2}(4,3,2,1) + Σ_{j=3,4}(3,6,4,2)]`.
fn z5() -> Result<(IntegralLattice, Vec<Vec<Rational>>)> {
    let parts: Vec<IntegralLattice> =
        (1..=4).map(|f| labeled(StandardName::A(4), &format!("C{}_", f))).collect::<Result<_>>()?;
    let base = IntegralLattice::direct_sum_all(&parts);
    let mut v = Vec::with_capacity(16);
    for f in 0..4 {
        let c: [i64; 4] = if f < 2 { [4, 3, 2, 1] } else { [3, 6, 4, 2] };
        v.extend(c.iter().map(|&x| frac(x, 5)));
    }
    Ok((base, vec![v]))
}

/// Ordering of the nine `A1` summands after `A5 ⊕ A2`.
const D6_A1: [&str; 9] = ["B1_3", "B0_4", "B1_4", "B3_4", "B4_4", "B0_5", "B1_5", "B3_5", "B4_5"];

/// `A5(−1) ⊕ A2(−1) ⊕ A1(−1)^9` glued by
/// `v = ½(B0+B1+B3+B4 of the fourth and fifth fibers)` and
/// `w = ½(B1+B3+B5 of A5 + B1_3 + B3_4 + B4_4 + B3_5 + B4_5)`.
fn d6() -> Result<(IntegralLattice, Vec<Vec<Rational>>)> {
    let mut parts = vec![labeled(StandardName::A(5), "B")?, labeled(StandardName::A(2), "A")?];
    for name in D6_A1 {
        parts.push(standard(&StandardName::A(1), -1)?.with_labels(vec![name.to_string()])?);
    }
    let base = IntegralLattice::direct_sum_all(&parts);
    let labels = base.labels().expect("labeled").to_vec();
    let half = |names: &[&str]| -> Vec<Rational> {
        labels.iter().map(|l| if names.contains(&l.as_str()) { frac(1, 2) } else { frac(0, 1) }).collect()
    };
    let v = half(&D6_A1[1..]);
    let w = half(&["B1", "B3", "B5", "B1_3", "B3_4", "B4_4", "B3_5", "B4_5"]);
    Ok((base, vec![v, w]))
}

pub fn build_mg(name: MgName) -> Result<Mg> {
    let (base, glue) = match name {
        MgName::Z5 => z5()?,
        MgName::D6 => d6()?,
    };
    let (lattice, _, index) = base.adjoin_glue(&glue)?;
    if !lattice.is_even() {
        return Err(Error::Domain("glued lattice is odd".into()));
    }
    Ok(Mg { base, glue, lattice, index })
}

#[derive(Clone, Debug, Serialize)]
pub struct MgReport {
    pub name: String,
    pub base_labels: Vec<String>,
    #[serde(serialize_with = "crate::json::int")]
    pub base_det: String,
    pub glue: Vec<Vec<String>>,
    #[serde(serialize_with = "crate::json::int")]
    pub index: String,
    pub invariants: Invariants,
    /// `U ⊕ M` for `Z/5Z`, `U(2) ⊕ M` for `D6`.
    pub hyperbolic_sum: Invariants,
    /// `|det T|` of the lattice the quotient's transcendental lattice is
    /// compared against: `U ⊕ U(5)` or `U(2) ⊕ U(12)`.
    #[serde(serialize_with = "crate::json::int")]
    pub comparison_det: String,
    /// `|det(hyperbolic_sum)| / |det M|`.
    #[serde(serialize_with = "crate::json::int")]
    pub det_ratio: String,
    /// Overlattice index implied by the determinant ratio, `√ratio`.
    #[serde(serialize_with = "crate::json::opt_int")]
    pub implied_index: Option<String>,
}

pub fn mg_report(name: MgName) -> Result<MgReport> {
    let m = build_mg(name)?;
    let (h, cmp) = match name {
        MgName::Z5 => (standard(&StandardName::U, 1)?, [StandardName::U, StandardName::UScaled(5)]),
        MgName::D6 => (standard(&StandardName::UScaled(2), 1)?, [StandardName::UScaled(2), StandardName::UScaled(12)]),
    };
    let sum = h.direct_sum(&m.lattice);
    let c = standard(&cmp[0], 1)?.direct_sum(&standard(&cmp[1], 1)?);
    let ratio = sum.det().abs() / m.lattice.det().abs();
    let root = ratio.sqrt();
    Ok(MgReport {
        name: format!("{:?}", name),
        base_labels: m.base.labels().map(|l| l.to_vec()).unwrap_or_default(),
        base_det: m.base.det().to_string(),
        glue: m.glue.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        index: m.index.to_string(),
        invariants: m.lattice.invariants(false)?,
        hyperbolic_sum: sum.invariants(false)?,
        comparison_det: c.det().abs().to_string(),
        det_ratio: ratio.to_string(),
        implied_index: (&root * &root == ratio).then(|| root.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z5_glue() {
        let r = mg_report(MgName::Z5).unwrap();
        assert_eq!(r.invariants.rank, 16);
        assert_eq!(r.invariants.det, "25");
        assert_eq!(r.invariants.disc_group, vec!["5", "5"]);
        assert_eq!(r.index, "5");
        assert_eq!(r.hyperbolic_sum.rank, 18);
        assert_eq!(r.hyperbolic_sum.disc_group, vec!["5", "5"]);
        assert_eq!(r.comparison_det, "25");
    }

    #[test]
    fn d6_glue() {
        let r = mg_report(MgName::D6).unwrap();
        assert_eq!(r.invariants.rank, 16);
        assert_eq!(r.index, "4");
        assert_eq!(r.invariants.det, "576");
        assert_eq!(r.comparison_det, "576");
        assert_eq!(r.det_ratio, "4");
        assert_eq!(r.implied_index.as_deref(), Some("2"));
    }

    #[test]
    fn names() {
        assert_eq!("Z5".parse::<MgName>().unwrap(), MgName::Z5);
        assert!("D7".parse::<MgName>().is_err());
    }
}
