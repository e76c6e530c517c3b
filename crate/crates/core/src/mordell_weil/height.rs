//! Local contributions and the height pairing.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::weierstrass::KodairaType;

/// The simple component met by a section on one reducible fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentHit {
    pub fiber: usize,
    pub component: usize,
}

/// What the height formula needs to know about one section: `P·O` and the
/// simple component met on every fiber of the list (0 for `C_0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionHits {
    pub dot_zero: i64,
    pub components: Vec<usize>,
}

impl SectionHits {
    pub fn new(dot_zero: u32, components: Vec<usize>) -> Self {
        SectionHits { dot_zero: dot_zero as i64, components }
    }

    /// The zero section itself, with `O·O = −χ`.
    pub fn zero(chi: u32, fibers: usize) -> Self {
        SectionHits { dot_zero: -(chi as i64), components: vec![0; fibers] }
    }

    pub fn hits(&self) -> Vec<ComponentHit> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(fiber, &component)| ComponentHit { fiber, component })
            .collect()
    }
}

/// `χ` and the fiber list shared by every section of one fibration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightData {
    pub chi: u32,
    pub fibers: Vec<KodairaType>,
}

/// `contr_v(P, Q)` for sections meeting simple components `i` and `j` of a
/// fiber of type `kind`; `i == j` gives `contr_v(P)`.
pub fn contribution(kind: KodairaType, i: usize, j: usize) -> Result<Rational> {
    use KodairaType::*;
    let simple = kind.simple_components();
    for c in [i, j] {
        if c != 0 && !simple.contains(&c) {
            return Err(Error::InvalidArgument(format!("{} has no simple component {}", kind, c)));
        }
    }
    if i == 0 || j == 0 {
        return Ok(Rational::zero());
    }
    let (lo, hi) = (i.min(j), i.max(j));
    Ok(match kind {
        I(n) => frac((lo * (n as usize - hi)) as i64, n as i64),
        IStar(n) => {
            let n = n as i64;
            match (lo, hi) {
                (1, 1) => int(1),
                (1, _) => frac(1, 2),
                (a, b) if a == b => frac(4 + n, 4),
                _ => frac(2 + n, 4),
            }
        }
        IVStar => if lo == hi { frac(4, 3) } else { frac(2, 3) },
        IIIStar => frac(3, 2),
        IV => if lo == hi { frac(2, 3) } else { frac(1, 3) },
        III => frac(1, 2),
        _ => unreachable!("fibers without simple components were rejected above"),
    })
}

impl HeightData {
    pub fn new(chi: u32, fibers: Vec<KodairaType>) -> Self {
        HeightData { chi, fibers }
    }

    fn check(&self, p: &SectionHits) -> Result<()> {
        if p.components.len() != self.fibers.len() {
            return Err(Error::InvalidArgument(format!(
                "component data covers {} fibers, expected {}",
                p.components.len(),
                self.fibers.len()
            )));
        }
        Ok(())
    }

    fn local_sum(&self, p: &SectionHits, q: &SectionHits) -> Result<Rational> {
        let mut s = Rational::zero();
        for (k, kind) in self.fibers.iter().enumerate() {
            s += contribution(*kind, p.components[k], q.components[k])?;
        }
        Ok(s)
    }

    /// `⟨P, P⟩ = 2χ + 2 P·O − Σ contr_v(P)`.
    pub fn height(&self, p: &SectionHits) -> Result<Rational> {
        self.check(p)?;
        let base = int(2 * self.chi as i64 + 2 * p.dot_zero);
        Ok(base - self.local_sum(p, p)?)
    }

    /// `⟨P, Q⟩ = χ + P·O + Q·O − P·Q − Σ contr_v(P, Q)` for distinct `P`, `Q`.
    pub fn pairing(&self, p: &SectionHits, q: &SectionHits, p_dot_q: u32) -> Result<Rational> {
        self.check(p)?;
        self.check(q)?;
        let base = int(self.chi as i64 + p.dot_zero + q.dot_zero - p_dot_q as i64);
        Ok(base - self.local_sum(p, q)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::intmat;
    use KodairaType::*;

    #[test]
    fn table_values() {
        assert_eq!(contribution(I(5), 1, 1).unwrap(), frac(4, 5));
        assert_eq!(contribution(IIIStar, 1, 1).unwrap(), frac(3, 2));
        assert_eq!(contribution(I(7), 0, 3).unwrap(), int(0));
        assert!(contribution(I(3), 3, 1).is_err());
    }

    /// The table agrees with `−(G_v⁻¹)` on simple components.
    #[test]
    fn table_matches_inverse_gram() {
        let kinds = [I(2), I(5), I(8), III, IV, IStar(0), IStar(1), IStar(4), IVStar, IIIStar];
        for kind in kinds {
            let g = intmat::to_q(kind.fiber_lattice().gram());
            let inv = intmat::qinverse(&g).unwrap();
            for &i in &kind.simple_components() {
                for &j in &kind.simple_components() {
                    let bi = kind.simple_component_basis_index(i).unwrap();
                    let bj = kind.simple_component_basis_index(j).unwrap();
                    assert_eq!(contribution(kind, i, j).unwrap(), -inv[bi][bj].clone(), "{} {} {}", kind, i, j);
                }
            }
        }
    }

    #[test]
    fn torsion_sections_have_height_zero() {
        let six = HeightData::new(2, vec![I(6), I(6), I(3), I(3), I(2), I(2), I(1), I(1)]);
        let t = SectionHits::new(0, vec![1, 1, 1, 1, 1, 1, 0, 0]);
        assert_eq!(six.height(&t).unwrap(), int(0));
        let five = HeightData::new(2, vec![I(5), I(5), I(5), I(5), I(1), I(1), I(1), I(1)]);
        let v = SectionHits::new(0, vec![1, 1, 2, 2, 0, 0, 0, 0]);
        assert_eq!(five.height(&v).unwrap(), int(0));
        assert_eq!(five.height(&SectionHits::zero(2, 8)).unwrap(), int(0));
    }
}
