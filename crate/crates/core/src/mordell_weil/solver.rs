//! Component assignments compatible with a torsion section.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::height::contribution;
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};
use crate::weierstrass::KodairaType;

/// Every assignment of simple components to `fibers` that a section of
/// exact order `n` disjoint from `O` can have.
///
/// A candidate must satisfy `Σ contr_v(kP) = 2χ` for each multiple
/// `kP`, `1 ≤ k < n`, since every such multiple is again a nonzero torsion
/// section disjoint from `O`; the component met on each fiber must have
/// order dividing `n` in the component group.
///
/// Output is canonical: each index is replaced by the smaller of itself and
/// its negative, then indices are sorted within each run of equal fiber
/// types, and the resulting list is sorted and deduplicated.
pub fn solve_components(chi: u32, fibers: &[KodairaType], n: u32) -> Result<Vec<Vec<usize>>> {
    if n < 2 {
        return Err(Error::InvalidArgument("torsion order must be at least 2".into()));
    }
    let target = int(2 * chi as i64);
    let cands: Vec<Vec<(usize, Rational)>> = fibers
        .iter()
        .map(|&f| {
            std::iter::once(0)
                .chain(f.simple_components())
                .filter(|&c| n.is_multiple_of(f.component_order(c)))
                .map(|c| (c, contribution(f, c, c).unwrap()))
                .collect()
        })
        .collect();
    // Largest contribution still available from fibers k.. for pruning.
    let mut best_tail = vec![Rational::zero(); fibers.len() + 1];
    for k in (0..fibers.len()).rev() {
        let m = cands[k].iter().map(|(_, v)| v.clone()).max().unwrap();
        best_tail[k] = &best_tail[k + 1] + m;
    }
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(fibers.len());
    search(fibers, &cands, &best_tail, &target, n, Rational::zero(), &mut chosen, &mut found)?;
    Ok(found.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn search(
    fibers: &[KodairaType],
    cands: &[Vec<(usize, Rational)>],
    best_tail: &[Rational],
    target: &Rational,
    n: u32,
    sum: Rational,
    chosen: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) -> Result<()> {
    let k = chosen.len();
    if sum > *target || &sum + &best_tail[k] < *target {
        return Ok(());
    }
    if k == fibers.len() {
        if sum == *target && multiples_ok(fibers, chosen, n, target)? {
            found.insert(canonical(fibers, chosen));
        }
        return Ok(());
    }
    for (c, v) in &cands[k] {
        chosen.push(*c);
        search(fibers, cands, best_tail, target, n, &sum + v, chosen, found)?;
        chosen.pop();
    }
    Ok(())
}

fn multiples_ok(fibers: &[KodairaType], comps: &[usize], n: u32, target: &Rational) -> Result<bool> {
    for k in 2..n as i64 {
        let mut s = Rational::zero();
        for (f, &c) in fibers.iter().zip(comps) {
            let kc = f.scalar_component(k, c);
            s += contribution(*f, kc, kc)?;
        }
        if s != *target {
            return Ok(false);
        }
    }
    Ok(true)
}

fn canonical(fibers: &[KodairaType], comps: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = fibers
        .iter()
        .zip(comps)
        .map(|(f, &c)| c.min(f.neg_component(c)))
        .collect();
    let mut start = 0;
    while start < fibers.len() {
        let mut end = start + 1;
        while end < fibers.len() && fibers[end] == fibers[start] {
            end += 1;
        }
        out[start..end].sort_unstable();
        start = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::parse_fiber_list;

    #[test]
    fn six_torsion_is_unique() {
        let f = parse_fiber_list("2I6+2I3+2I2+2I1").unwrap();
        assert_eq!(solve_components(2, &f, 6).unwrap(), vec![vec![1, 1, 1, 1, 1, 1, 0, 0]]);
    }

    #[test]
    fn five_torsion() {
        let f = parse_fiber_list("4I5+4I1").unwrap();
        assert_eq!(solve_components(2, &f, 5).unwrap(), vec![vec![1, 1, 2, 2, 0, 0, 0, 0]]);
    }

    #[test]
    fn seven_torsion() {
        let f = parse_fiber_list("3I7+3I1").unwrap();
        let sols = solve_components(2, &f, 7).unwrap();
        assert_eq!(sols, vec![vec![1, 2, 3, 0, 0, 0]]);
    }

    #[test]
    fn inconsistent_is_empty() {
        let f = parse_fiber_list("24I1").unwrap();
        assert!(solve_components(2, &f, 2).unwrap().is_empty());
    }
}
