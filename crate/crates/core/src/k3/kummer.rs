//! The second cohomology of `Km(E_i × E_i)` in the basis of the sixteen
//! exceptional curves `K_a` and the six classes `ω_ij`, with the dihedral
//! action generated by `σ4` and `ς2`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{frac, int, Rational};
use crate::error::{Error, Result};
use crate::lattice::intmat::{self, IMat, QMat};
use crate::lattice::{
    contains_all, definite_isometry_check, index_in, lll_reduce, span_lattice, standard, vectors_of_norm, IntegralLattice,
    Invariants, Isometry, StandardName,
};

/// Order of the `ω_ij` coordinates after the sixteen `K_a`.
pub const OMEGA_PAIRS: [(usize, usize); 6] = [(1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3)];

const RANK: usize = 22;

/// `a = (a1, a2, a3, a4)` packed as `8a1 + 4a2 + 2a3 + a4`.
fn bit(a: usize, i: usize) -> usize {
    (a >> (4 - i)) & 1
}

pub fn k_label(a: usize) -> String {
    format!("K{}{}{}{}", bit(a, 1), bit(a, 2), bit(a, 3), bit(a, 4))
}

fn parse_k(s: &str) -> usize {
    usize::from_str_radix(s, 2).expect("four binary digits")
}

fn omega_index(i: usize, j: usize) -> usize {
    16 + OMEGA_PAIRS.iter().position(|&p| p == (i, j)).expect("known pair")
}

/// A rational class in the `(K_a, ω_ij)` coordinates.
pub type Class = Vec<Rational>;

fn zero() -> Class {
    vec![Rational::zero(); RANK]
}

pub fn k(a: &str) -> Class {
    let mut v = zero();
    v[parse_k(a)] = int(1);
    v
}

pub fn omega(i: usize, j: usize) -> Class {
    let mut v = zero();
    v[omega_index(i, j)] = int(1);
    v
}

fn add(a: &Class, b: &Class) -> Class {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &Class, c: &Rational) -> Class {
    a.iter().map(|x| x * c).collect()
}

/// `Σ c_i v_i`.
pub fn combo(terms: &[(i64, &Class)]) -> Class {
    terms.iter().fold(zero(), |acc, (c, v)| add(&acc, &scale(v, &int(*c))))
}

/// `½ Σ_{a ∈ S} K_a`.
fn half_sum(pred: impl Fn(usize) -> bool) -> Class {
    let mut v = zero();
    for a in (0..16).filter(|&a| pred(a)) {
        v[a] = frac(1, 2);
    }
    v
}

/// `K̄_{W_i}` with `W_i = {a_i = 0}`.
pub fn kbar_w(i: usize) -> Class {
    half_sum(|a| bit(a, i) == 0)
}

/// `K̂ = ½ Σ K_a`.
pub fn khat() -> Class {
    half_sum(|_| true)
}

/// `½(ω − Σ_{a ∈ S} K_a)`.
fn curve(w: &Class, pred: impl Fn(usize) -> bool) -> Class {
    let h = scale(w, &frac(1, 2));
    let s = half_sum(pred);
    h.iter().zip(&s).map(|(x, y)| x - y).collect()
}

/// `C̃_0 = ½(ω34 − Σ K_{ab00})`.
pub fn c0() -> Class {
    curve(&omega(3, 4), |a| bit(a, 3) == 0 && bit(a, 4) == 0)
}

/// `D̃_0 = ½(ω12 − Σ K_{00ab})`.
pub fn d0() -> Class {
    curve(&omega(1, 2), |a| bit(a, 1) == 0 && bit(a, 2) == 0)
}

/// `Γ̃ = ½(ω12 + ω34 + ω13 + ω24 − Σ K_{abba})`.
pub fn gamma() -> Class {
    let w = combo(&[(1, &omega(1, 2)), (1, &omega(3, 4)), (1, &omega(1, 3)), (1, &omega(2, 4))]);
    curve(&w, |a| bit(a, 1) == bit(a, 4) && bit(a, 2) == bit(a, 3))
}

/// `Δ̃ = ½(ω12 + ω23 + ω34 − ω14 − Σ K_{abab})`.
pub fn delta() -> Class {
    let w = combo(&[(1, &omega(1, 2)), (1, &omega(2, 3)), (1, &omega(3, 4)), (-1, &omega(1, 4))]);
    curve(&w, |a| bit(a, 1) == bit(a, 3) && bit(a, 2) == bit(a, 4))
}

/// Gram matrix of the 22 coordinate classes: `K_a² = −2`, `ω12·ω34 = 2`,
/// `ω13·ω24 = −2`, `ω14·ω23 = 2`, everything else orthogonal.
pub fn coordinate_gram() -> QMat {
    let mut g = vec![vec![Rational::zero(); RANK]; RANK];
    for (a, row) in g.iter_mut().enumerate().take(16) {
        row[a] = int(-2);
    }
    for (p, q, v) in [((1, 2), (3, 4), 2), ((1, 3), (2, 4), -2), ((1, 4), (2, 3), 2)] {
        let (i, j) = (omega_index(p.0, p.1), omega_index(q.0, q.1));
        g[i][j] = int(v);
        g[j][i] = int(v);
    }
    g
}

pub fn pair(a: &Class, b: &Class) -> Rational {
    let g = coordinate_gram();
    let mut s = Rational::zero();
    for i in 0..RANK {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..RANK {
            if !g[i][j].is_zero() {
                s += &a[i] * &g[i][j] * &b[j];
            }
        }
    }
    s
}

/// The rank-22 lattice with its basis expressed in coordinates.
#[derive(Clone, Debug)]
pub struct KummerAmbient {
    pub lattice: IntegralLattice,
    /// Rows are basis vectors in `(K_a, ω_ij)` coordinates.
    pub basis: QMat,
    inverse: QMat,
}

/// Overlattice generated by the coordinate classes, `½Σ` over every affine
/// hyperplane of `(Z/2)⁴`, and `½(ω_ij + Σ_{a_i = a_j = 0} K_a)`.
pub fn build_kummer_ambient() -> Result<KummerAmbient> {
    let mut gens: QMat = (0..RANK)
        .map(|i| {
            let mut v = zero();
            v[i] = int(1);
            v
        })
        .collect();
    for lin in 1..16usize {
        for c in 0..2usize {
            gens.push(half_sum(|a| ((lin & a).count_ones() as usize) % 2 == c));
        }
    }
    gens.push(khat());
    for &(i, j) in &OMEGA_PAIRS {
        let h = scale(&omega(i, j), &frac(1, 2));
        gens.push(add(&h, &half_sum(|a| bit(a, i) == 0 && bit(a, j) == 0)));
    }
    let (lattice, basis) = span_lattice(&coordinate_gram(), &gens)?;
    if !lattice.det().abs().is_one() {
        return Err(Error::Domain(format!("ambient has determinant {}", lattice.det())));
    }
    let inverse = intmat::qinverse(&basis).ok_or(Error::Degenerate)?;
    Ok(KummerAmbient { lattice, basis, inverse })
}

impl KummerAmbient {
    /// Integer coordinates of a class in the lattice basis.
    pub fn coords(&self, v: &Class) -> Result<Vec<BigInt>> {
        let c = intmat::qmul(&vec![v.clone()], &self.inverse).pop().unwrap();
        c.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Domain("class is not in the lattice".into()))
    }

    pub fn coords_all(&self, vs: &[Class]) -> Result<IMat> {
        vs.iter().map(|v| self.coords(v)).collect()
    }

    /// Matrix acting on lattice coordinate columns, from one acting on
    /// `(K_a, ω_ij)` columns.
    pub fn convert_action(&self, raw: &IMat) -> Result<IMat> {
        // Rows c·B map to c·B·Rᵀ, so the column action is B⁻ᵀ R Bᵀ.
        let b = &self.basis;
        let m = intmat::qmul(
            &intmat::qmul(&intmat::transpose(&self.inverse), &intmat::to_q(raw)),
            &intmat::transpose(b),
        );
        intmat::to_z(&m).ok_or_else(|| Error::Domain("action does not preserve the lattice".into()))
    }
}

/// The 20 listed classes spanning the Néron–Severi lattice.
pub fn ns_generators() -> Vec<Class> {
    let mut v: Vec<Class> = ["0000", "0001", "0010", "0100", "1000", "0011", "0101", "1001", "0110", "1010", "1100"]
        .iter()
        .map(|a| k(a))
        .collect();
    v.extend([kbar_w(4), kbar_w(3), kbar_w(2), kbar_w(1), khat(), c0(), d0(), delta(), gamma()]);
    v
}

/// `ω14 + ω23` and `ω13 − ω24`.
pub fn transcendental_generators() -> Vec<Class> {
    vec![
        combo(&[(1, &omega(1, 4)), (1, &omega(2, 3))]),
        combo(&[(1, &omega(1, 3)), (-1, &omega(2, 4))]),
    ]
}

/// The five listed invariant classes.
pub fn invariant_generators() -> Vec<Class> {
    vec![
        add(&kbar_w(1), &kbar_w(2)),
        omega(3, 4),
        d0(),
        combo(&[(1, &k("0000")), (1, &k("0001")), (1, &k("0010")), (1, &k("0011"))]),
        khat(),
    ]
}

/// The fifteen listed generators of the complement of the invariants.
pub fn omega_d4_generators() -> Vec<Class> {
    let (g, dl, c, d) = (gamma(), delta(), c0(), d0());
    let k0010 = k("0010");
    let k0100 = k("0100");
    let k1100 = k("1100");
    let minus = |base: &Class, terms: &[(i64, &Class)]| {
        let t = combo(terms);
        base.iter().zip(&t).map(|(x, y)| x - y).collect::<Class>()
    };
    vec![
        minus(&g, &[(2, &k0010), (1, &c), (1, &d)]),
        minus(&dl, &[(2, &k0010), (1, &c), (1, &d)]),
        minus(&k("0001"), &[(1, &k0010)]),
        minus(&k("0000"), &[(1, &k0010)]),
        minus(&khat(), &[(2, &k0010), (4, &k0100), (2, &k1100)]),
        minus(&kbar_w(1), &[(2, &k0010), (2, &k0100)]),
        minus(&kbar_w(2), &[(2, &k0010), (2, &k0100)]),
        minus(&kbar_w(3), &[(1, &k0010), (2, &k0100), (1, &k1100)]),
        minus(&kbar_w(4), &[(1, &k0010), (2, &k0100), (1, &k1100)]),
        minus(&k("1000"), &[(1, &k0100)]),
        minus(&k("1010"), &[(1, &k0100)]),
        minus(&k("0110"), &[(1, &k0100)]),
        minus(&k("1001"), &[(1, &k0100)]),
        minus(&k("0101"), &[(1, &k0100)]),
        minus(&k("0011"), &[(1, &k0010)]),
    ]
}

/// `σ4(ω12) = ω12`, `σ4(ω13) = −ω24`, `σ4(ω14) = ω23`, `σ4(ω23) = ω14`,
/// `σ4(ω24) = −ω13`, `σ4(ω34) = ω34`; `ς2` acts the same way on `ω`.
fn omega_action(m: &mut IMat) {
    let set = |m: &mut IMat, from: (usize, usize), to: (usize, usize), s: i64| {
        m[omega_index(to.0, to.1)][omega_index(from.0, from.1)] = BigInt::from(s);
    };
    set(m, (1, 2), (1, 2), 1);
    set(m, (1, 3), (2, 4), -1);
    set(m, (1, 4), (2, 3), 1);
    set(m, (2, 3), (1, 4), 1);
    set(m, (2, 4), (1, 3), -1);
    set(m, (3, 4), (3, 4), 1);
}

fn permutation_action(pairs: &[(&str, &str)]) -> IMat {
    let mut m = intmat::zeros(RANK, RANK);
    let mut moved = [false; 16];
    for (from, to) in pairs {
        let (f, t) = (parse_k(from), parse_k(to));
        m[t][f] = BigInt::one();
        moved[f] = true;
    }
    for a in (0..16).filter(|&a| !moved[a]) {
        m[a][a] = BigInt::one();
    }
    omega_action(&mut m);
    m
}

/// `σ4` on `(K_a, ω_ij)` columns.
pub fn sigma4_raw() -> IMat {
    let cycles = [
        ["0000", "0001", "0011", "0010"],
        ["0100", "1001", "0111", "1010"],
        ["1000", "0101", "1011", "0110"],
        ["1100", "1101", "1111", "1110"],
    ];
    let pairs: Vec<(&str, &str)> =
        cycles.iter().flat_map(|c| (0..4).map(move |i| (c[i], c[(i + 1) % 4]))).collect();
    permutation_action(&pairs)
}

/// `ς2` on `(K_a, ω_ij)` columns.
pub fn varsigma2_raw() -> IMat {
    let swaps = [
        ("0001", "0010"),
        ("0100", "1000"),
        ("0101", "1010"),
        ("0110", "1001"),
        ("0111", "1011"),
        ("1101", "1110"),
    ];
    let pairs: Vec<(&str, &str)> = swaps.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    permutation_action(&pairs)
}

/// The two generators on lattice coordinates.
#[derive(Clone, Debug)]
pub struct LatticeAction {
    pub sigma4: IMat,
    pub varsigma2: IMat,
}

fn power(g: &IMat, k: usize) -> IMat {
    (0..k).fold(intmat::identity(g.len()), |acc, _| intmat::mul(&acc, g))
}

pub fn build_actions(amb: &KummerAmbient) -> Result<LatticeAction> {
    let sigma4 = amb.convert_action(&sigma4_raw())?;
    let varsigma2 = amb.convert_action(&varsigma2_raw())?;
    amb.lattice.check_preserves(&sigma4)?;
    amb.lattice.check_preserves(&varsigma2)?;
    let id = intmat::identity(sigma4.len());
    if power(&sigma4, 4) != id || power(&sigma4, 2) == id || power(&varsigma2, 2) != id {
        return Err(Error::Domain("generator orders are wrong".into()));
    }
    let conj = intmat::mul(&intmat::mul(&varsigma2, &sigma4), &varsigma2);
    if conj != power(&sigma4, 3) {
        return Err(Error::Domain("dihedral relation fails".into()));
    }
    Ok(LatticeAction { sigma4, varsigma2 })
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbientReport {
    pub rank: usize,
    #[serde(serialize_with = "crate::json::int")]
    pub det: String,
    pub even: bool,
    pub signature: (usize, usize),
    pub ns_rank: usize,
    pub transcendental_gram: Vec<Vec<String>>,
    pub transcendental_orthogonal_to_ns: bool,
    pub curve_squares: Vec<(String, String)>,
    #[serde(serialize_with = "crate::json::int")]
    pub c0_dot_d0: String,
    #[serde(serialize_with = "crate::json::int")]
    pub khat_square: String,
    pub group_order: usize,
}

pub fn ambient_report() -> Result<AmbientReport> {
    let amb = build_kummer_ambient()?;
    let act = build_actions(&amb)?;
    let ns = amb.coords_all(&ns_generators())?;
    let t = transcendental_generators();
    let tg: Vec<Vec<String>> = t.iter().map(|a| t.iter().map(|b| pair(a, b).to_string()).collect()).collect();
    let orth = ns_generators().iter().all(|n| t.iter().all(|x| pair(n, x).is_zero()));
    let curves = [("C0", c0()), ("D0", d0()), ("Delta", delta()), ("Gamma", gamma())];
    Ok(AmbientReport {
        rank: amb.lattice.rank(),
        det: amb.lattice.det().to_string(),
        even: amb.lattice.is_even(),
        signature: amb.lattice.signature(),
        ns_rank: intmat::rank(&ns),
        transcendental_gram: tg,
        transcendental_orthogonal_to_ns: orth,
        curve_squares: curves.iter().map(|(n, c)| (n.to_string(), pair(c, c).to_string())).collect(),
        c0_dot_d0: pair(&c0(), &d0()).to_string(),
        khat_square: pair(&khat(), &khat()).to_string(),
        group_order: crate::lattice::group_order(&[act.sigma4, act.varsigma2], 64)?,
    })
}

/// Everything computed about `Ω_{D4}`.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub invariants: Invariants,
    pub gram: Vec<Vec<i64>>,
    pub fixed_rank: usize,
    #[serde(serialize_with = "crate::json::int")]
    pub fixed_det: String,
    pub ns_fixed_rank: usize,
    #[serde(serialize_with = "crate::json::int")]
    pub ns_fixed_det: String,
    #[serde(serialize_with = "crate::json::int")]
    pub transcendental_det: String,
    /// `rank(fixed) = rank(NS-fixed) + rank(T)` and likewise for determinants.
    pub fixed_decomposes: bool,
    pub listed_generators_inside: bool,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub listed_generators_index: Option<String>,
    pub listed_invariants_inside: bool,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub listed_invariants_index: Option<String>,
}

/// Data shared by the `Ω_{D4}` and eigenlattice computations.
pub struct OmegaD4 {
    pub ambient: KummerAmbient,
    pub action: LatticeAction,
    /// Rows in lattice coordinates.
    pub fixed_basis: IMat,
    pub basis: IMat,
    pub lattice: IntegralLattice,
}

pub fn omega_d4() -> Result<OmegaD4> {
    let ambient = build_kummer_ambient()?;
    let action = build_actions(&ambient)?;
    let fixed_basis = ambient.lattice.fixed_sublattice_basis(&[action.sigma4.clone(), action.varsigma2.clone()])?;
    let (basis, lattice) = ambient.lattice.orthogonal_complement(&fixed_basis);
    if lattice.is_degenerate() {
        return Err(Error::Degenerate);
    }
    Ok(OmegaD4 { ambient, action, fixed_basis, basis, lattice })
}

fn index_if_full(sup: &IMat, sub: &IMat) -> Option<String> {
    (intmat::rank(sub) == sup.len() && contains_all(sup, sub)).then(|| {
        let h = intmat::hnf(sub);
        index_in(sup, &h).to_string()
    })
}

fn reduced_gram(l: &IntegralLattice) -> Vec<Vec<i64>> {
    let neg = l.scaled(-1);
    let (_, g) = lll_reduce(neg.gram());
    IntegralLattice::new(g).map(|x| x.scaled(-1).gram_i64()).unwrap_or_else(|_| l.gram_i64())
}

pub fn omega_report(o: &OmegaD4) -> Result<OmegaReport> {
    let amb = &o.ambient;
    let listed = amb.coords_all(&omega_d4_generators())?;
    let inv = amb.coords_all(&invariant_generators())?;
    let t = amb.coords_all(&transcendental_generators())?;
    // NS^G: fixed vectors orthogonal to T.
    let fixed_l = amb.lattice.sublattice(&o.fixed_basis);
    let pairings = intmat::mul(&intmat::mul(&o.fixed_basis, amb.lattice.gram()), &intmat::transpose(&t));
    let ker = intmat::left_kernel(&pairings);
    let ns_fixed = intmat::mul(&ker, &o.fixed_basis);
    let ns_fixed_l = amb.lattice.sublattice(&ns_fixed);
    let t_l = amb.lattice.sublattice(&t);
    Ok(OmegaReport {
        invariants: o.lattice.invariants(true)?,
        gram: reduced_gram(&o.lattice),
        fixed_rank: fixed_l.rank(),
        fixed_det: fixed_l.det().to_string(),
        ns_fixed_rank: ns_fixed_l.rank(),
        ns_fixed_det: ns_fixed_l.det().to_string(),
        transcendental_det: t_l.det().to_string(),
        fixed_decomposes: fixed_l.rank() == ns_fixed_l.rank() + t_l.rank()
            && fixed_l.det().abs() == ns_fixed_l.det().abs() * t_l.det().abs(),
        listed_generators_inside: contains_all(&o.basis, &listed),
        listed_generators_index: index_if_full(&o.basis, &listed),
        listed_invariants_inside: contains_all(&ns_fixed, &inv),
        listed_invariants_index: index_if_full(&ns_fixed, &inv),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub involution: String,
    pub rank: usize,
    #[serde(serialize_with = "crate::json::int")]
    pub det: String,
    pub even: bool,
    pub roots: usize,
    pub norm4_vectors: usize,
    pub isometric_to_e8_minus2: Isometry,
}

#[derive(Clone, Debug, Serialize)]
pub struct E8Report {
    pub eigenlattices: Vec<EigenReport>,
    pub sum_rank: usize,
    pub sum_saturation_equals_omega: bool,
    #[serde(serialize_with = "crate::json::opt_int")]
    pub sum_index_in_saturation: Option<String>,
}

fn anti_invariant(amb: &KummerAmbient, g: &IMat) -> Result<IMat> {
    let minus: IMat = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    amb.lattice.fixed_sublattice_basis(&[minus])
}

pub fn eigenlattice_e8_check(o: &OmegaD4) -> Result<E8Report> {
    let amb = &o.ambient;
    let e8m2 = standard(&StandardName::E8, -1)?.scaled(2);
    let composite = intmat::mul(&o.action.varsigma2, &o.action.sigma4);
    let mut reports = Vec::new();
    let mut stacked: IMat = Vec::new();
    for (name, g) in [("varsigma2", &o.action.varsigma2), ("varsigma2*sigma4", &composite)] {
        let b = anti_invariant(amb, g)?;
        let l = amb.lattice.sublattice(&b);
        reports.push(EigenReport {
            involution: name.to_string(),
            rank: l.rank(),
            det: l.det().to_string(),
            even: l.is_even(),
            roots: l.roots()?,
            norm4_vectors: vectors_of_norm(&l, 4)?.len(),
            isometric_to_e8_minus2: definite_isometry_check(&l, &e8m2),
        });
        stacked.extend(b);
    }
    let sum = intmat::hnf(&stacked);
    let sat = IntegralLattice::saturation_basis(&sum);
    let same = contains_all(&sat, &o.basis) && contains_all(&o.basis, &sat);
    let index = (sum.len() == sat.len()).then(|| index_in(&sat, &sum).to_string());
    Ok(E8Report { eigenlattices: reports, sum_rank: sum.len(), sum_saturation_equals_omega: same, sum_index_in_saturation: index })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_is_unimodular_and_even() {
        let a = build_kummer_ambient().unwrap();
        assert_eq!(a.lattice.rank(), 22);
        assert!(a.lattice.is_even());
        assert_eq!(a.lattice.signature(), (3, 19));
    }

    #[test]
    fn curve_classes() {
        for c in [c0(), d0(), gamma(), delta()] {
            assert_eq!(pair(&c, &c), int(-2));
        }
        assert_eq!(pair(&c0(), &d0()), int(0));
        assert_eq!(pair(&khat(), &khat()), int(-8));
        let a = build_kummer_ambient().unwrap();
        assert!(a.coords(&gamma()).is_ok());
        assert!(a.coords(&scale(&khat(), &frac(1, 2))).is_err());
    }

    #[test]
    fn actions_generate_dihedral_group() {
        let a = build_kummer_ambient().unwrap();
        let act = build_actions(&a).unwrap();
        assert_eq!(crate::lattice::group_order(&[act.sigma4, act.varsigma2], 64).unwrap(), 8);
    }

    #[test]
    fn omega_d4_data() {
        let o = omega_d4().unwrap();
        let r = omega_report(&o).unwrap();
        assert_eq!(r.invariants.rank, 15);
        assert_eq!(r.invariants.det, "-1024");
        assert_eq!(r.invariants.disc_group, vec!["4"; 5]);
        assert_eq!(r.invariants.roots, Some(0));
        assert!(r.listed_generators_inside && r.listed_invariants_inside);
        assert_eq!((r.fixed_rank, r.ns_fixed_rank), (7, 5));
        assert!(r.fixed_decomposes);
        let l = IntegralLattice::new(r.gram.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
        assert_eq!(l.det(), BigInt::from(-1024));
    }
}
