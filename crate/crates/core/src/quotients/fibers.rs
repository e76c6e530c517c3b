//! What happens to semistable fibers when dividing by a torsion translation
//! or by an involution of the base.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weierstrass::KodairaType;

/// Translation by a section of order `n` meeting component `C_i` of an `I_d`
/// fiber, and the fiber it becomes in the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberQuotientRule {
    pub d: u32,
    pub n: u32,
    pub i: u32,
    /// Least `r` with `σ^r` fixing every component.
    pub r: u32,
    /// `σ(C_j) = C_{j + shift}`.
    pub shift: u32,
    pub output: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn sigma_t_fiber_action(d: u32, n: u32, i: u32) -> Result<FiberQuotientRule> {
    if d == 0 || n < 2 || i >= d {
        return Err(Error::InvalidArgument(format!("need d >= 1, n >= 2 and 0 <= i < d, got ({}, {}, {})", d, n, i)));
    }
    let (r, shift) = if gcd(d, n) == 1 || i == 0 { (1, 0) } else { (d / gcd(d, i), i) };
    if !(d * n).is_multiple_of(r * r) {
        return Err(Error::Domain(format!("component C_{} of I_{} is incompatible with order {}", i, d, n)));
    }
    Ok(FiberQuotientRule { d, n, i, r, shift, output: d * n / (r * r) })
}

pub fn quotient_fiber(d: u32, n: u32, i: u32) -> Result<KodairaType> {
    Ok(KodairaType::I(sigma_t_fiber_action(d, n, i)?.output))
}

pub fn euler_sum(fibers: &[KodairaType]) -> u32 {
    fibers.iter().map(|f| f.euler_number()).sum()
}

fn check_euler(fibers: &[KodairaType]) -> Result<()> {
    let e = euler_sum(fibers);
    if e == 0 || !e.is_multiple_of(12) {
        return Err(Error::Domain(format!("Euler number {} is not a positive multiple of 12", e)));
    }
    Ok(())
}

/// Quotient fibers for a torsion section of order `n` meeting each listed
/// `I_d` fiber in the given component.
pub fn quotient_configuration(fibers: &[(KodairaType, usize)], n: u32) -> Result<Vec<KodairaType>> {
    let mut out = Vec::with_capacity(fibers.len());
    for &(kind, c) in fibers {
        match kind {
            KodairaType::I(d) if d >= 1 => out.push(quotient_fiber(d, n, c as u32)?),
            _ => return Err(Error::Domain(format!("{} fibers are not handled by the quotient rule", kind))),
        }
    }
    out.sort();
    check_euler(&out)?;
    Ok(out)
}

/// An involution of the base exchanging the fibers in each pair and fixing
/// `fixed_smooth` smooth fibers, each with four fixed points.
pub fn involution_configuration(
    fibers: &[KodairaType],
    pairing: &[(usize, usize)],
    fixed_smooth: usize,
) -> Result<Vec<KodairaType>> {
    let mut seen = vec![false; fibers.len()];
    let mut out = Vec::new();
    for &(a, b) in pairing {
        if a >= fibers.len() || b >= fibers.len() || a == b || seen[a] || seen[b] {
            return Err(Error::InvalidArgument(format!("bad pair ({}, {})", a, b)));
        }
        if fibers[a] != fibers[b] {
            return Err(Error::Domain(format!("cannot pair {} with {}", fibers[a], fibers[b])));
        }
        seen[a] = true;
        seen[b] = true;
        out.push(fibers[a]);
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::Domain(format!("fiber {} ({}) is unpaired", k, fibers[k])));
    }
    out.extend(std::iter::repeat_n(KodairaType::IStar(0), fixed_smooth));
    out.sort();
    check_euler(&out)?;
    Ok(out)
}

/// Pairs consecutive equal fibers of a sorted list.
pub fn adjacent_pairing(fibers: &[KodairaType]) -> Vec<(usize, usize)> {
    (0..fibers.len() / 2).map(|k| (2 * k, 2 * k + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::parse_fiber_list;
    use KodairaType::*;

    #[test]
    fn rule_cases() {
        assert_eq!(sigma_t_fiber_action(6, 6, 1).unwrap().r, 6);
        assert_eq!(quotient_fiber(6, 6, 1).unwrap(), I(1));
        assert_eq!(quotient_fiber(1, 7, 0).unwrap(), I(7));
        assert_eq!(quotient_fiber(3, 6, 1).unwrap(), I(2));
        assert_eq!(quotient_fiber(4, 4, 2).unwrap(), I(4));
        assert!(sigma_t_fiber_action(3, 6, 3).is_err());
    }

    #[test]
    fn six_torsion_configuration() {
        let f: Vec<_> = parse_fiber_list("2I6+2I3+2I2+2I1").unwrap().into_iter().map(|k| (k, usize::from(k != I(1)))).collect();
        let q = quotient_configuration(&f, 6).unwrap();
        let mut src: Vec<_> = f.iter().map(|p| p.0).collect();
        src.sort();
        assert_eq!(q, src);
    }

    #[test]
    fn involution_cases() {
        let f = parse_fiber_list("8I3").unwrap();
        let q = involution_configuration(&f, &adjacent_pairing(&f), 2).unwrap();
        assert_eq!(q, parse_fiber_list("4I3+2I*0").unwrap());
        let g = parse_fiber_list("4I4+4I2").unwrap();
        let mut expect = parse_fiber_list("2I4+2I2+2I*0").unwrap();
        expect.sort();
        assert_eq!(involution_configuration(&g, &adjacent_pairing(&g), 2).unwrap(), expect);
        assert!(involution_configuration(&parse_fiber_list("I3+I2").unwrap(), &[(0, 1)], 0).is_err());
        assert!(involution_configuration(&f, &[(0, 1)], 2).is_err());
    }
}
