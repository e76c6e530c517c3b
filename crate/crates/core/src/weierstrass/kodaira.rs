use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::{standard, IntegralLattice, StandardName};

/// Kodaira symbol of a fiber in characteristic zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

use KodairaType::*;

impl KodairaType {
    pub fn euler_number(self) -> u32 {
        match self {
            I(n) => n,
            II => 2,
            III => 3,
            IV => 4,
            IStar(n) => n + 6,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    /// Number of irreducible components `m_v`.
    pub fn component_count(self) -> u32 {
        match self {
            I(n) => n.max(1),
            II => 1,
            III => 2,
            IV => 3,
            IStar(n) => n + 5,
            IVStar => 7,
            IIIStar => 8,
            IIStar => 9,
        }
    }

    /// Root lattice spanned by the components missing the zero section.
    pub fn root_lattice(self) -> Option<StandardName> {
        match self {
            I(n) if n >= 2 => Some(StandardName::A(n as usize - 1)),
            IStar(n) => Some(StandardName::D(n as usize + 4)),
            IVStar => Some(StandardName::E6),
            IIIStar => Some(StandardName::E7),
            IIStar => Some(StandardName::E8),
            III => Some(StandardName::A(1)),
            IV => Some(StandardName::A(2)),
            _ => None,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.component_count() > 1
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, I(n) if n >= 1)
    }

    /// Negative definite Gram of the non-identity components, in the
    /// component order used by the height machinery.
    pub fn fiber_lattice(self) -> IntegralLattice {
        match self.root_lattice() {
            None => IntegralLattice::zero(),
            Some(StandardName::D(k)) => d_fiber(k),
            Some(name) => standard(&name, -1).expect("valid root lattice"),
        }
    }

    /// Group of simple components `Φ_v`, as invariant factors.
    pub fn component_group(self) -> Vec<u32> {
        match self {
            I(n) if n >= 2 => vec![n],
            IStar(n) if n % 2 == 0 => vec![2, 2],
            IStar(_) => vec![4],
            IVStar | IV => vec![3],
            IIIStar | III => vec![2],
            _ => vec![],
        }
    }

    /// Indices of the simple (multiplicity-one) components other than
    /// the identity component.
    pub fn simple_components(self) -> Vec<usize> {
        match self {
            I(n) => (1..n as usize).collect(),
            IStar(_) => vec![1, 2, 3],
            IVStar | IV => vec![1, 2],
            IIIStar | III => vec![1],
            _ => vec![],
        }
    }

    /// Position in `fiber_lattice` of simple component `c`.
    pub fn simple_component_basis_index(self, c: usize) -> Option<usize> {
        if c == 0 {
            return None;
        }
        match self {
            I(n) if c < n as usize => Some(c - 1),
            // D_{k}: near = node 0, far = the two end nodes k-2 and k-1.
            IStar(n) => {
                let k = n as usize + 4;
                match c {
                    1 => Some(0),
                    2 => Some(k - 2),
                    3 => Some(k - 1),
                    _ => None,
                }
            }
            // E6 chain 0-1-2-3-4 with 5 on 2: the simple ends are 0 and 4.
            IVStar => match c {
                1 => Some(0),
                2 => Some(4),
                _ => None,
            },
            // E7 chain 0..5 with 6 on 2: the simple end is 5.
            IIIStar => (c == 1).then_some(5),
            IV => match c {
                1 => Some(0),
                2 => Some(1),
                _ => None,
            },
            III => (c == 1).then_some(0),
            _ => None,
        }
    }

    /// Sum of two simple components in `Φ_v`.
    pub fn add_components(self, a: usize, b: usize) -> usize {
        let (n, enc, dec): (usize, fn(usize) -> usize, fn(usize) -> usize) = match self {
            I(n) => (n.max(1) as usize, |x| x, |x| x),
            IStar(n) if n % 2 == 0 => return a ^ b,
            // Z/4 with far components as generators: 0→0, far→1, near→2, far'→3.
            IStar(_) => (4, istar_odd_enc, istar_odd_dec),
            IVStar | IV => (3, |x| x, |x| x),
            IIIStar | III => (2, |x| x, |x| x),
            _ => return 0,
        };
        dec((enc(a) + enc(b)) % n)
    }

    pub fn neg_component(self, a: usize) -> usize {
        let mut k = 0;
        while self.add_components(a, k) != 0 {
            k += 1;
        }
        k
    }

    pub fn scalar_component(self, k: i64, a: usize) -> usize {
        let mut acc = 0;
        let base = if k < 0 { self.neg_component(a) } else { a };
        for _ in 0..k.unsigned_abs() {
            acc = self.add_components(acc, base);
        }
        acc
    }

    pub fn component_order(self, a: usize) -> u32 {
        let mut k = 1;
        let mut acc = a;
        while acc != 0 {
            acc = self.add_components(acc, a);
            k += 1;
        }
        k
    }
}

fn istar_odd_enc(c: usize) -> usize {
    [0, 2, 1, 3][c]
}

fn istar_odd_dec(x: usize) -> usize {
    [0, 2, 1, 3][x]
}

/// `D_k(−1)` with the near component first and the two far ends last:
/// chain 0-1-…-(k-3), then (k-2) and (k-1) both attached to (k-3).
fn d_fiber(k: usize) -> IntegralLattice {
    let mut g = vec![vec![0i64; k]; k];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    let mut edge = |a: usize, b: usize| {
        g[a][b] = 1;
        g[b][a] = 1;
    };
    for i in 1..k - 1 {
        edge(i - 1, i);
    }
    g[k - 2][k - 1] = 0;
    g[k - 1][k - 2] = 0;
    g[k - 3][k - 2] = 1;
    g[k - 2][k - 3] = 1;
    g[k - 3][k - 1] = 1;
    g[k - 1][k - 3] = 1;
    IntegralLattice::from_i64(&g).expect("D_k is nondegenerate")
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            I(n) => write!(f, "I{}", n),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            IStar(n) => write!(f, "I*{}", n),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unknown fiber type '{}'", s));
        Ok(match s {
            "II" => II,
            "III" => III,
            "IV" => IV,
            "IV*" => IVStar,
            "III*" => IIIStar,
            "II*" => IIStar,
            _ => {
                if let Some(n) = s.strip_prefix("I*").or_else(|| s.strip_prefix("I0*").map(|_| "0")) {
                    IStar(n.parse().map_err(|_| bad())?)
                } else if let Some(n) = s.strip_prefix('I') {
                    I(n.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// Parses `2I6+2I3+I2+24I1`-style multisets into a flat list.
pub fn parse_fiber_list(s: &str) -> Result<Vec<KodairaType>> {
    let mut out = Vec::new();
    for part in s.split(['+', ',']) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
        let count: usize = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
        let t: KodairaType = part[digits.len()..].parse()?;
        out.extend(std::iter::repeat_n(t, count));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_and_components() {
        for t in [I(0), I(1), I(5), II, III, IV, IStar(0), IStar(3), IVStar, IIIStar, IIStar] {
            let rank = t.fiber_lattice().rank() as u32;
            assert_eq!(rank + 1, t.component_count(), "{}", t);
        }
        assert_eq!(IStar(2).euler_number(), 8);
    }

    #[test]
    fn component_groups() {
        assert_eq!(IStar(0).add_components(1, 2), 3);
        assert_eq!(IStar(1).add_components(2, 2), 1);
        assert_eq!(IStar(1).component_order(3), 4);
        assert_eq!(I(6).scalar_component(4, 5), 2);
        assert_eq!(IVStar.neg_component(1), 2);
    }

    #[test]
    fn discriminant_of_simple_component_duals() {
        // -(G^{-1})_{cc} reproduces the local height contributions.
        use crate::lattice::intmat;
        let t = IStar(2);
        let g = intmat::qinverse(&intmat::to_q(t.fiber_lattice().gram())).unwrap();
        let far = t.simple_component_basis_index(2).unwrap();
        let near = t.simple_component_basis_index(1).unwrap();
        assert_eq!(-g[far][far].clone(), crate::algebra::frac(3, 2));
        assert_eq!(-g[near][near].clone(), crate::algebra::frac(1, 1));
    }

    #[test]
    fn parse_lists() {
        let l = parse_fiber_list("2I6+I*0+3I1").unwrap();
        assert_eq!(l, vec![I(6), I(6), IStar(0), I(1), I(1), I(1)]);
        assert_eq!("II*".parse::<KodairaType>().unwrap(), IIStar);
    }
}
