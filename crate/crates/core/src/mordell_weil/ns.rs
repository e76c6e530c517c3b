//! Trivial lattice, Picard number and Néron–Severi assembly from sections.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::height::SectionHits;
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::lattice::intmat::{self, QMat};
use crate::lattice::{span_lattice, IntegralLattice};
use crate::weierstrass::KodairaType;

/// `⟨O, F⟩ ⊕ ⊕_v T_v` in the basis `O, F`, then the non-identity components
/// of each fiber in order. `O² = −χ`, so `⟨O, F⟩ ≅ U` for even `χ`.
#[derive(Clone, Debug)]
pub struct TrivialLattice {
    pub chi: u32,
    pub fibers: Vec<KodairaType>,
    pub lattice: IntegralLattice,
    /// Start of each fiber's block of components in the basis.
    pub offsets: Vec<usize>,
}

pub fn trivial_lattice(chi: u32, fibers: &[KodairaType]) -> TrivialLattice {
    let mut labels = vec!["O".to_string(), "F".to_string()];
    let zf = IntegralLattice::from_i64(&[vec![-(chi as i64), 1], vec![1, 0]]).unwrap();
    let mut parts = vec![zf];
    let mut offsets = Vec::with_capacity(fibers.len());
    let mut pos = 2;
    for (v, f) in fibers.iter().enumerate() {
        let t = f.fiber_lattice();
        offsets.push(pos);
        pos += t.rank();
        labels.extend((1..=t.rank()).map(|j| format!("F{}_{}", v, j)));
        parts.push(t);
    }
    let lattice = IntegralLattice::direct_sum_all(parts.iter()).with_labels(labels).unwrap();
    TrivialLattice { chi, fibers: fibers.to_vec(), lattice, offsets }
}

/// `ρ = r + 2 + Σ (m_v − 1)`.
pub fn picard_rank(fibers: &[KodairaType], mw_rank: usize) -> usize {
    mw_rank + 2 + fibers.iter().map(|f| f.component_count() as usize - 1).sum::<usize>()
}

impl TrivialLattice {
    /// Class of a section in `Tr ⊗ Q`: `O + (χ + P·O)F + Σ_v G_v⁻¹ e_{c_v}`.
    pub fn section_class(&self, p: &SectionHits) -> Result<Vec<Rational>> {
        if p.components.len() != self.fibers.len() {
            return Err(Error::InvalidArgument("component data has the wrong length".into()));
        }
        let mut v = vec![Rational::zero(); self.lattice.rank()];
        v[0] = Rational::one();
        v[1] = int(self.chi as i64 + p.dot_zero);
        for (k, f) in self.fibers.iter().enumerate() {
            let c = p.components[k];
            if c == 0 {
                continue;
            }
            let b = f
                .simple_component_basis_index(c)
                .ok_or_else(|| Error::InvalidArgument(format!("{} has no simple component {}", f, c)))?;
            let g = intmat::qinverse(&intmat::to_q(f.fiber_lattice().gram())).unwrap();
            for (j, gj) in g.iter().enumerate() {
                v[self.offsets[k] + j] = gj[b].clone();
            }
        }
        Ok(v)
    }
}

/// NS of a fibration assembled from its trivial lattice, torsion sections and
/// free sections.
#[derive(Clone, Debug)]
pub struct NsLattice {
    pub lattice: IntegralLattice,
    /// Basis in the coordinates `Tr ⊕ Q^r`.
    pub basis: QMat,
    /// `[Tr + torsion : Tr]`.
    pub torsion_index: BigInt,
}

/// Span of `Tr`, the torsion section classes and the free section classes
/// inside `Tr ⊗ Q ⊕ Q^r`, where the last summand carries `−H` for the height
/// matrix `H` of the free sections.
pub fn assemble_ns(
    tr: &TrivialLattice,
    torsion: &[SectionHits],
    free: &[SectionHits],
    heights: &QMat,
) -> Result<NsLattice> {
    let n = tr.lattice.rank();
    let r = free.len();
    if heights.len() != r || heights.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidArgument("height matrix does not match the free sections".into()));
    }
    let glue: Vec<Vec<Rational>> = torsion.iter().map(|t| tr.section_class(t)).collect::<Result<_>>()?;
    let (_, _, torsion_index) = tr.lattice.adjoin_glue(&glue)?;

    let mut gram: QMat = vec![vec![Rational::zero(); n + r]; n + r];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = Rational::from_integer(tr.lattice.gram()[i][j].clone());
        }
    }
    for i in 0..r {
        for j in 0..r {
            gram[n + i][n + j] = -heights[i][j].clone();
        }
    }
    let mut gens: QMat = intmat::to_q(&intmat::identity(n))
        .into_iter()
        .map(|mut row| {
            row.resize(n + r, Rational::zero());
            row
        })
        .collect();
    for mut g in glue {
        g.resize(n + r, Rational::zero());
        gens.push(g);
    }
    for (i, p) in free.iter().enumerate() {
        let mut g = tr.section_class(p)?;
        g.resize(n + r, Rational::zero());
        g[n + i] = Rational::one();
        gens.push(g);
    }
    let (lattice, basis) = span_lattice(&gram, &gens)?;
    if lattice.rank() != n + r {
        return Err(Error::Domain("free sections are dependent".into()));
    }
    Ok(NsLattice { lattice, basis, torsion_index: torsion_index.abs() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mordell_weil::solve_components;
    use crate::weierstrass::parse_fiber_list;
    use num_traits::ToPrimitive;

    #[test]
    fn trivial_ranks() {
        let f = parse_fiber_list("4I5+4I1").unwrap();
        let tr = trivial_lattice(2, &f);
        assert_eq!(tr.lattice.rank(), 18);
        assert_eq!(picard_rank(&parse_fiber_list("3I7+3I1").unwrap(), 0), 20);
        assert_eq!(picard_rank(&parse_fiber_list("24I1").unwrap(), 16), 18);
        let u = trivial_lattice(2, &[]).lattice;
        assert_eq!((u.rank(), u.det().to_i64().unwrap(), u.is_even()), (2, -1, true));
        let d6 = trivial_lattice(2, &parse_fiber_list("I6+I3+I2+2I*0").unwrap());
        assert_eq!(d6.lattice.rank(), 18);
    }

    #[test]
    fn section_class_is_a_section() {
        let f = parse_fiber_list("4I5+4I1").unwrap();
        let tr = trivial_lattice(2, &f);
        let t = SectionHits::new(0, vec![1, 1, 2, 2, 0, 0, 0, 0]);
        let v = tr.section_class(&t).unwrap();
        assert_eq!(tr.lattice.qpair(&v, &v), int(-2));
        let ns = assemble_ns(&tr, &[t], &[], &vec![]).unwrap();
        assert_eq!(ns.lattice.rank(), 18);
        assert_eq!(ns.lattice.det().abs().to_i64(), Some(25));
        assert_eq!(ns.torsion_index.to_i64(), Some(5));
    }

    #[test]
    fn seven_torsion_glue() {
        let f = parse_fiber_list("3I7+3I1").unwrap();
        let sol = solve_components(2, &f, 7).unwrap();
        let tr = trivial_lattice(2, &f);
        let ns = assemble_ns(&tr, &[SectionHits::new(0, sol[0].clone())], &[], &vec![]).unwrap();
        assert_eq!(ns.lattice.det().abs().to_i64(), Some(7));
    }

    #[test]
    fn free_section_splits_off() {
        let tr = trivial_lattice(2, &[]);
        let p = SectionHits::new(1, vec![]);
        let ns = assemble_ns(&tr, &[], &[p], &vec![vec![int(6)]]).unwrap();
        assert_eq!(ns.lattice.det().to_i64(), Some(6));
        assert_eq!(ns.lattice.signature(), (1, 2));
    }
}
