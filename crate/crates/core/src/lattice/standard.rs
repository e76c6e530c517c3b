use std::str::FromStr;

use super::IntegralLattice;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardName {
    U,
    UScaled(i64),
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Diag(Vec<i64>),
}

impl FromStr for StandardName {
    type Err = Error;

    /// Accepts `U`, `U(6)`, `A4`, `A(4)`, `D4`, `E8`, `diag(4,4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unknown lattice name '{}'", s));
        let arg = |rest: &str| -> Result<String> {
            let rest = rest.trim();
            Ok(if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                inner.to_string()
            } else {
                rest.to_string()
            })
        };
        if s == "U" {
            return Ok(StandardName::U);
        }
        match s.split_at(1) {
            ("U", rest) => Ok(StandardName::UScaled(arg(rest)?.parse().map_err(|_| bad())?)),
            ("A", rest) => Ok(StandardName::A(arg(rest)?.parse().map_err(|_| bad())?)),
            ("D", rest) => Ok(StandardName::D(arg(rest)?.parse().map_err(|_| bad())?)),
            ("E", rest) => match arg(rest)?.as_str() {
                "6" => Ok(StandardName::E6),
                "7" => Ok(StandardName::E7),
                "8" => Ok(StandardName::E8),
                _ => Err(bad()),
            },
            _ => {
                let inner = s.strip_prefix("diag").ok_or_else(bad)?;
                let inner = arg(inner)?;
                let v: std::result::Result<Vec<i64>, _> =
                    inner.split(',').map(|x| x.trim().parse()).collect();
                Ok(StandardName::Diag(v.map_err(|_| bad())?))
            }
        }
    }
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Standard Gram matrix; root lattices are positive definite before `sign`.
pub fn standard(name: &StandardName, sign: i64) -> Result<IntegralLattice> {
    let g: Vec<Vec<i64>> = match name {
        StandardName::U => vec![vec![0, 1], vec![1, 0]],
        StandardName::UScaled(n) if *n != 0 => vec![vec![0, *n], vec![*n, 0]],
        StandardName::A(n) if *n >= 1 => cartan(*n, &chain(*n)),
        StandardName::D(n) if *n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            cartan(*n, &e)
        }
        StandardName::E6 => cartan(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
        StandardName::E7 => cartan(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]),
        StandardName::E8 => cartan(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]),
        StandardName::Diag(d) if !d.is_empty() && d.iter().all(|&x| x != 0) => {
            (0..d.len())
                .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
                .collect()
        }
        other => return Err(Error::InvalidArgument(format!("invalid lattice parameters {:?}", other))),
    };
    let l = IntegralLattice::from_i64(&g)?;
    Ok(match sign {
        1 => l,
        -1 => l.scaled(-1),
        _ => return Err(Error::InvalidArgument("sign must be 1 or -1".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn determinants() {
        let det = |s: &str, sign| standard(&s.parse().unwrap(), sign).unwrap().det();
        assert_eq!(det("U", 1), BigInt::from(-1));
        assert_eq!(det("A4", -1), BigInt::from(5));
        assert_eq!(det("D4", 1), BigInt::from(4));
        assert_eq!(det("E6", 1), BigInt::from(3));
        assert_eq!(det("E7", -1), BigInt::from(-2));
        assert_eq!(det("E8", -1), BigInt::from(1));
        assert_eq!(det("U(6)", 1), BigInt::from(-36));
        assert_eq!(det("diag(4,4)", 1), BigInt::from(16));
    }

    #[test]
    fn e8_negative_is_even_and_definite() {
        let e8 = standard(&StandardName::E8, -1).unwrap();
        assert!(e8.is_even());
        assert_eq!(e8.signature(), (0, 8));
    }
}
