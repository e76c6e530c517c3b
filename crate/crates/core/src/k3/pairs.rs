//! Which inclusions `H ⊂ G` of symplectic groups force `G` to act whenever
//! `H` does: exactly those with `rk Ω_H = rk Ω_G`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Every group with a known rank of `Ω_G`, with that rank and its order.
pub const GROUPS: [(&str, usize, usize); 14] = [
    ("Z2", 8, 2),
    ("Z3", 12, 3),
    ("Z2xZ2", 12, 4),
    ("Z4", 14, 4),
    ("D4", 15, 8),
    ("Z5", 16, 5),
    ("Z6", 16, 6),
    ("D5", 16, 10),
    ("D6", 16, 12),
    ("Z2xZ4", 16, 8),
    ("Z2xD4", 16, 16),
    ("Z3xZ3", 16, 9),
    ("A33", 16, 18),
    ("A4", 16, 12),
];

/// Proper inclusions among the groups above, apart from `Z2` which lies in
/// every group of even order.
const INCLUSIONS: [(&str, &[&str]); 8] = [
    ("Z3", &["Z6", "Z3xZ3", "A4", "D6", "A33"]),
    ("Z4", &["D4", "Z2xZ4", "Z2xD4"]),
    ("Z2xZ2", &["D4", "Z2xZ4", "A4", "D6", "Z2xD4"]),
    ("Z5", &["D5"]),
    ("Z6", &["D6"]),
    ("D4", &["Z2xD4"]),
    ("Z2xZ4", &["Z2xD4"]),
    ("Z3xZ3", &["A33"]),
];

/// Accepts `Z5`, `Z/5Z`, `Z/2xZ/4`, `(Z/3Z)^2`, `A_{3,3}` and similar.
pub fn canonical_name(s: &str) -> Result<&'static str> {
    let mut t: String = s.chars().filter(|c| !c.is_whitespace() && !"{}_,()/".contains(*c)).collect();
    t = t.to_ascii_uppercase().replace('×', "X");
    let t = t.replace("ZZ", "Z");
    let t = match t.as_str() {
        "Z3^2" | "Z3Z^2" => "Z3XZ3".to_string(),
        "Z2^2" | "Z2Z^2" => "Z2XZ2".to_string(),
        _ => t.trim_end_matches('Z').replace("ZX", "X").to_string(),
    };
    GROUPS
        .iter()
        .map(|g| g.0)
        .find(|g| g.to_ascii_uppercase() == t)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown group '{}'", s)))
}

pub fn group_rank(name: &str) -> Result<usize> {
    let n = canonical_name(name)?;
    Ok(GROUPS.iter().find(|g| g.0 == n).expect("canonical").1)
}

fn group_order(name: &str) -> usize {
    GROUPS.iter().find(|g| g.0 == name).expect("canonical").2
}

pub fn is_subgroup(h: &str, g: &str) -> Result<bool> {
    let (h, g) = (canonical_name(h)?, canonical_name(g)?);
    if h == g || (h == "Z2" && group_order(g).is_multiple_of(2)) {
        return Ok(true);
    }
    Ok(INCLUSIONS.iter().any(|(sub, sups)| *sub == h && sups.contains(&g)))
}

pub fn pair_property(rk_h: usize, rk_g: usize, is_subgroup: bool) -> bool {
    is_subgroup && rk_h == rk_g
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub h: String,
    pub g: String,
    pub rank_h: usize,
    pub rank_g: usize,
    pub is_subgroup: bool,
    pub property: bool,
}

pub fn pair_report(h: &str, g: &str) -> Result<PairReport> {
    let (rank_h, rank_g) = (group_rank(h)?, group_rank(g)?);
    let sub = is_subgroup(h, g)?;
    Ok(PairReport {
        h: canonical_name(h)?.to_string(),
        g: canonical_name(g)?.to_string(),
        rank_h,
        rank_g,
        is_subgroup: sub,
        property: pair_property(rank_h, rank_g, sub),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(canonical_name("Z/5Z").unwrap(), "Z5");
        assert_eq!(canonical_name("(Z/3Z)^2").unwrap(), "Z3xZ3");
        assert_eq!(canonical_name("Z/2Z x Z/4Z").unwrap(), "Z2xZ4");
        assert_eq!(canonical_name("Z2xD4").unwrap(), "Z2xD4");
        assert_eq!(canonical_name("A_{3,3}").unwrap(), "A33");
        assert!(canonical_name("Z7").is_err());
    }

    #[test]
    fn rank_sixteen_pairs() {
        let ok: Vec<(&str, &str)> = GROUPS
            .iter()
            .flat_map(|h| GROUPS.iter().map(move |g| (h.0, g.0)))
            .filter(|(h, g)| h != g && pair_report(h, g).unwrap().property)
            .collect();
        assert_eq!(ok, vec![("Z5", "D5"), ("Z6", "D6"), ("Z2xZ4", "Z2xD4"), ("Z3xZ3", "A33")]);
        assert!(!pair_report("Z4", "D4").unwrap().property);
        assert!(!pair_report("Z2", "Z4").unwrap().property);
    }
}
