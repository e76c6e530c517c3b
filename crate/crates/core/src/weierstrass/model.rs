use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::KodairaType;
use crate::algebra::{factor_squarefree, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `y² = x³ + A(t)·x + B(t)` with `deg A ≤ 4m`, `deg B ≤ 6m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    a: Polynomial,
    b: Polynomial,
    m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Polynomial),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub place: Place,
    pub kind: KodairaType,
    /// `None` is valuation +∞ (the coefficient vanishes identically).
    pub v_a: Option<u32>,
    pub v_b: Option<u32>,
    pub v_d: u32,
}

impl FiberReport {
    pub fn euler(&self) -> u32 {
        self.kind.euler_number()
    }

    /// Number of geometric points this place stands for.
    pub fn weight(&self) -> usize {
        self.place.degree()
    }
}

impl Serialize for FiberReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiberReport", 6)?;
        st.serialize_field("place", &self.place.to_string().replace(' ', ""))?;
        st.serialize_field("type", &self.kind.to_string())?;
        st.serialize_field("vA", &self.v_a)?;
        st.serialize_field("vB", &self.v_b)?;
        st.serialize_field("vD", &self.v_d)?;
        st.serialize_field("euler", &self.euler())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceClass {
    Rational,
    K3,
    /// Kodaira dimension one; `h^{2,0} = m − 1`.
    KodairaDimOne { m: u32, h20: u32 },
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::Rational => write!(f, "rational"),
            SurfaceClass::K3 => write!(f, "K3"),
            SurfaceClass::KodairaDimOne { m, .. } => write!(f, "kodaira_dim_1(m={})", m),
        }
    }
}

fn least_m(a: &Polynomial, b: &Polynomial) -> u32 {
    let da = a.degree().unwrap_or(0) as u32;
    let db = b.degree().unwrap_or(0) as u32;
    1u32.max(da.div_ceil(4)).max(db.div_ceil(6))
}

pub fn discriminant_of(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let four_a3 = a.pow(3).scale(&Rational::from_integer(4.into()));
    let b2 = b.pow(2).scale(&Rational::from_integer(27.into()));
    (&four_a3 + &b2).scale(&Rational::from_integer((-16).into()))
}

impl WeierstrassModel {
    /// Model with the least admissible `m`, without any minimalization.
    pub fn new(a: Polynomial, b: Polynomial) -> Result<Self> {
        let m = least_m(&a, &b);
        Self::with_m(a, b, m)
    }

    /// Model with an explicit scale; `deg A ≤ 4m` and `deg B ≤ 6m`.
    pub fn with_m(a: Polynomial, b: Polynomial, m: u32) -> Result<Self> {
        if discriminant_of(&a, &b).is_zero() {
            return Err(Error::Singular);
        }
        if m == 0 || a.degree().unwrap_or(0) > 4 * m as usize || b.degree().unwrap_or(0) > 6 * m as usize {
            return Err(Error::InvalidArgument(format!("degrees exceed the bounds for m = {}", m)));
        }
        Ok(WeierstrassModel { a, b, m })
    }

    pub fn a(&self) -> &Polynomial {
        &self.a
    }

    pub fn b(&self) -> &Polynomial {
        &self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn discriminant(&self) -> Polynomial {
        discriminant_of(&self.a, &self.b)
    }

    pub fn surface_class(&self) -> SurfaceClass {
        match self.m {
            1 => SurfaceClass::Rational,
            2 => SurfaceClass::K3,
            m => SurfaceClass::KodairaDimOne { m, h20: m - 1 },
        }
    }

    /// `(A(t+c), B(t+c))`.
    pub fn translate(&self, c: &Rational) -> Self {
        WeierstrassModel { a: self.a.translate(c), b: self.b.translate(c), m: self.m }
    }

    pub fn a_rf(&self) -> RationalFunction {
        RationalFunction::from_poly(self.a.clone())
    }

    pub fn b_rf(&self) -> RationalFunction {
        RationalFunction::from_poly(self.b.clone())
    }

    /// Valuations `(vA, vB, vΔ)` at `place`, at infinity in the weights
    /// `(4m, 6m, 12m)`.
    pub fn valuations(&self, place: &Place) -> (Option<u32>, Option<u32>, u32) {
        let d = self.discriminant();
        match place {
            Place::Finite(p) => (
                self.a.valuation(p).map(|v| v as u32),
                self.b.valuation(p).map(|v| v as u32),
                d.valuation(p).unwrap() as u32,
            ),
            Place::Infinity => {
                let m = self.m as usize;
                (
                    self.a.degree().map(|e| (4 * m - e) as u32),
                    self.b.degree().map(|e| (6 * m - e) as u32),
                    (12 * m - d.degree().unwrap()) as u32,
                )
            }
        }
    }

    pub fn is_minimal_at(&self, place: &Place) -> bool {
        let (va, vb, _) = self.valuations(place);
        !(va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6))
    }

    pub fn classify_fiber(&self, place: &Place) -> Result<FiberReport> {
        let (mut va, mut vb, mut vd) = self.valuations(place);
        // A locally non-minimal model is twisted down by p^{-1} until minimal.
        while va.is_none_or(|v| v >= 4) && vb.is_none_or(|v| v >= 6) {
            va = va.map(|v| v - 4);
            vb = vb.map(|v| v - 6);
            vd -= 12;
        }
        let kind = kodaira_from_valuations(va, vb, vd).ok_or_else(|| {
            Error::Domain(format!(
                "no Kodaira type for valuations ({:?}, {:?}, {}) at {}",
                va, vb, vd, place
            ))
        })?;
        Ok(FiberReport { place: place.clone(), kind, v_a: va, v_b: vb, v_d: vd })
    }

    /// Every singular fiber, finite places first in canonical order, then
    /// infinity. Checks that the degree-weighted Euler numbers sum to `12m`.
    pub fn all_fibers(&self) -> Result<Vec<FiberReport>> {
        if !self.is_minimal_at(&Place::Infinity) {
            return Err(Error::Domain(
                "model is not minimal at infinity (constant or isotrivial after rescaling)".into(),
            ));
        }
        let mut out = Vec::new();
        for (p, _) in factor_squarefree(&self.discriminant())? {
            let place = Place::Finite(p);
            if !self.is_minimal_at(&place) {
                return Err(Error::Domain(format!("model is not minimal at {}", place)));
            }
            out.push(self.classify_fiber(&place)?);
        }
        let inf = self.classify_fiber(&Place::Infinity)?;
        if inf.v_d > 0 {
            out.push(inf);
        }
        let total: usize = out.iter().map(|r| r.weight() * r.euler() as usize).sum();
        if total != 12 * self.m as usize {
            return Err(Error::Domain(format!(
                "Euler numbers sum to {} instead of {}",
                total,
                12 * self.m
            )));
        }
        Ok(out)
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})*x + ({})", self.a, self.b)
    }
}

/// Characteristic-zero Kodaira–Néron table.
pub fn kodaira_from_valuations(va: Option<u32>, vb: Option<u32>, vd: u32) -> Option<KodairaType> {
    use KodairaType::*;
    let ge = |v: Option<u32>, k: u32| v.is_none_or(|x| x >= k);
    let eq = |v: Option<u32>, k: u32| v == Some(k);
    if vd == 0 {
        return Some(I(0));
    }
    if eq(va, 0) {
        return Some(I(vd));
    }
    if ge(va, 1) && eq(vb, 1) {
        return Some(II);
    }
    if eq(va, 1) && ge(vb, 2) {
        return Some(III);
    }
    if ge(va, 2) && eq(vb, 2) {
        return Some(IV);
    }
    if eq(va, 2) && ge(vb, 3) && vd >= 6 {
        return Some(IStar(vd - 6));
    }
    if ge(va, 3) && eq(vb, 3) && vd == 6 {
        return Some(IStar(0));
    }
    if ge(va, 3) && eq(vb, 4) {
        return Some(IVStar);
    }
    if eq(va, 3) && ge(vb, 5) {
        return Some(IIIStar);
    }
    if ge(va, 4) && eq(vb, 5) {
        return Some(IIStar);
    }
    None
}

/// Divides out the largest `C` with `C⁴ | A`, `C⁶ | B` and takes the least
/// admissible `m`.
pub fn minimalize(a: &Polynomial, b: &Polynomial) -> Result<WeierstrassModel> {
    Ok(minimalize_with_scale(a, b)?.0)
}

/// Also returns the polynomial `C` that was removed, so that a point
/// `(x, y)` of the input maps to `(x/C², y/C³)`.
pub fn minimalize_with_scale(a: &Polynomial, b: &Polynomial) -> Result<(WeierstrassModel, Polynomial)> {
    if discriminant_of(a, b).is_zero() {
        return Err(Error::Singular);
    }
    let g = if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.gcd(b)
    };
    let mut c = Polynomial::one();
    if !g.is_constant() {
        for (p, _) in factor_squarefree(&g)? {
            let ka = a.valuation(&p).map_or(u32::MAX, |v| v as u32 / 4);
            let kb = b.valuation(&p).map_or(u32::MAX, |v| v as u32 / 6);
            let k = ka.min(kb);
            if k > 0 {
                c = &c * &p.pow(k);
            }
        }
    }
    let a2 = a.exact_div(&c.pow(4))?;
    let b2 = b.exact_div(&c.pow(6))?;
    Ok((WeierstrassModel::new(a2, b2)?, c))
}

/// Degree-weighted multiset of singular fiber types.
pub fn fiber_counts(reports: &[FiberReport]) -> BTreeMap<KodairaType, usize> {
    let mut m = BTreeMap::new();
    for r in reports {
        *m.entry(r.kind).or_default() += r.weight();
    }
    m
}

/// `2I6 + 2I3 + 24I1`-style summary, largest Euler number first.
pub fn format_counts(counts: &BTreeMap<KodairaType, usize>) -> String {
    let mut v: Vec<_> = counts.iter().collect();
    v.sort_by(|a, b| b.0.euler_number().cmp(&a.0.euler_number()).then(a.0.cmp(b.0)));
    v.iter()
        .map(|(t, n)| if **n == 1 { t.to_string() } else { format!("{}{}", n, t) })
        .collect::<Vec<_>>()
        .join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn model(a: &str, b: &str) -> WeierstrassModel {
        WeierstrassModel::new(parse_poly(a).unwrap(), parse_poly(b).unwrap()).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(model("0", "1").discriminant(), Polynomial::from_int(-432));
        assert_eq!(model("1", "0").discriminant(), Polynomial::from_int(-64));
        let k = model("(t^4-1)^2", "0");
        assert_eq!(k.discriminant(), parse_poly("-64*(t^4-1)^6").unwrap());
    }

    #[test]
    fn minimalization_examples() {
        let m = minimalize(&parse_poly("t^4").unwrap(), &parse_poly("t^6").unwrap()).unwrap();
        assert_eq!((m.a().clone(), m.b().clone(), m.m()), (Polynomial::one(), Polynomial::one(), 1));
        let m = minimalize(&parse_poly("2*t^4").unwrap(), &parse_poly("t^7 + 3*t^6 + t^5").unwrap()).unwrap();
        assert_eq!(m.m(), 2);
        assert_eq!(m.a(), &parse_poly("2*t^4").unwrap());
        let m = minimalize(&parse_poly("(t^4-1)^2").unwrap(), &Polynomial::zero()).unwrap();
        assert_eq!(m.m(), 2);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(minimalize(&Polynomial::zero(), &Polynomial::zero()), Err(Error::Singular));
        assert_eq!(
            WeierstrassModel::new(parse_poly("-3*t^2").unwrap(), parse_poly("2*t^3").unwrap()),
            Err(Error::Singular)
        );
    }

    #[test]
    fn kummer_fibers() {
        let k = model("(t^4-1)^2", "0");
        let f = k.all_fibers().unwrap();
        let counts = fiber_counts(&f);
        assert_eq!(counts.get(&KodairaType::IStar(0)), Some(&4));
        assert_eq!(counts.len(), 1);
        assert_eq!(k.surface_class(), SurfaceClass::K3);
        let at1 = k.classify_fiber(&Place::Finite(parse_poly("t - 1").unwrap())).unwrap();
        assert_eq!((at1.v_a, at1.v_b, at1.v_d), (Some(2), None, 6));
        assert_eq!(
            serde_json::to_string(&at1).unwrap(),
            r#"{"place":"t-1","type":"I*0","vA":2,"vB":null,"vD":6,"euler":6}"#
        );
    }

    #[test]
    fn simple_root_is_i1() {
        let m = model("-3", "t + 2");
        let f = m.all_fibers().unwrap();
        assert!(f.iter().any(|r| r.kind == KodairaType::I(1) && r.place != Place::Infinity));
    }

    #[test]
    fn constant_curve_is_not_minimal_at_infinity() {
        assert!(model("0", "1").all_fibers().is_err());
    }
}
