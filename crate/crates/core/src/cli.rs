//! The `elliptic-k3` command line: one subcommand per library capability,
//! JSON on stdout, diagnostics on stderr.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{parse_poly, parse_ratfun, Field, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::k3;
use crate::lattice::{self, intmat, GramFile, IntegralLattice, StandardName};
use crate::mordell_weil::{self as mw, Curve, Point, SectionHits};
use crate::quotients;
use crate::weierstrass::{families, fiber_counts, format_counts, parse_fiber_list, KodairaType, Place, WeierstrassModel};

#[derive(Parser, Debug)]
#[command(name = "elliptic-k3", version, about = "Elliptic fibrations over Q(t) and lattices of K3 surfaces")]
struct Cli {
    /// Pretty-print JSON with this many spaces.
    #[arg(long, global = true)]
    json_indent: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Singular fibers of y² = x³ + A x + B.
    Fibers(ModelArgs),
    /// Height pairing from component data.
    Height(HeightArgs),
    /// Component assignments of a torsion section.
    SolveComponents(SolveArgs),
    /// Order of a section.
    TorsionOrder(SectionArgs),
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Pullback along t ↦ tⁿ.
    Basechange {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
    },
    #[command(subcommand)]
    Check(CheckCmd),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Kummer(KummerCmd),
    #[command(subcommand)]
    Mg(MgCmd),
    /// Whether H ⊂ G forces G: by names, or by ranks and inclusion.
    PairProperty(PairArgs),
    /// A named family of fibrations.
    Family(FamilyArgs),
    /// Randomized property suites.
    Properties {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
    /// Scale; defaults to the least valid one.
    #[arg(long)]
    m: Option<u32>,
}

impl ModelArgs {
    fn model(&self) -> Result<WeierstrassModel> {
        let (a, b) = (parse_poly(&self.a)?, parse_poly(&self.b)?);
        match self.m {
            Some(m) => WeierstrassModel::with_m(a, b, m),
            None => WeierstrassModel::new(a, b),
        }
    }
}

#[derive(Args, Debug)]
struct HeightArgs {
    /// Reducible fibers, e.g. `2I6+2I3+2I2`.
    #[arg(long)]
    fibers: String,
    #[arg(long, default_value_t = 2)]
    chi: u32,
    /// Component of P on each listed fiber, comma separated.
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 0)]
    p_dot_o: u32,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = 0)]
    q_dot_o: u32,
    #[arg(long, default_value_t = 0)]
    p_dot_q: u32,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    fibers: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 2)]
    chi: u32,
}

#[derive(Args, Debug)]
struct SectionArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// `x = ...; y = ...`
    #[arg(long = "P", allow_hyphen_values = true)]
    p: String,
    #[arg(long)]
    bound: Option<u32>,
}

/// Where a model comes from: explicit `A`, `B`, a named family, or a
/// seeded random member of the `σ_n` family.
#[derive(Args, Debug, Clone)]
struct SourceArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    a_poly: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b_poly: Option<String>,
    #[arg(long)]
    m: Option<u32>,
    /// `e5`, `e6`, `dihedral4`, `kummer_ei` or `random`.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    bound: i64,
}

#[derive(Subcommand, Debug)]
enum QuotientCmd {
    /// y² = x(x² + ax + b) by (0, 0).
    Two {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// y² = x(x² + (e² − 2f)x + f²) by (f, ef).
    Four {
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Check x∘(dual∘φ) = x∘[4] on this many random points (numeric e, f only).
        #[arg(long, default_value_t = 0)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Vélu's formulas on a long Weierstrass curve with a kernel generator.
    Velu {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a1: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a3: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a4: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a6: String,
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        n: u32,
    },
    /// By τ ↦ ζₙτ.
    Sigma {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
    },
    /// By τ ↦ 1/τ.
    Mu2(ModelArgs),
    /// By τ ↦ 1/τ composed with −1 on the fibers.
    Varsigma2(ModelArgs),
    /// Fibers after dividing by a torsion section or a base involution.
    Config {
        #[arg(long)]
        fibers: String,
        /// Torsion order; omit for an involution.
        #[arg(long)]
        n: Option<u32>,
        /// Component met on each fiber; defaults to C1 on reducible fibers.
        #[arg(long)]
        components: Option<String>,
        /// For an involution: number of fixed smooth fibers.
        #[arg(long, default_value_t = 2)]
        fixed_smooth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    SigmaN {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
    },
    Palindrome(ModelArgs),
    Inversion {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Args, Debug, Clone)]
struct LatticeInput {
    /// JSON Gram file: an array of rows, or `{"gram": ..., "labels": ...}`.
    #[arg(long)]
    gram: Option<String>,
    /// Sum of standard lattices, e.g. `U+U(5)` or `E8[-2]` (`[k]` scales).
    #[arg(long, allow_hyphen_values = true)]
    lattice: Option<String>,
}

impl LatticeInput {
    fn get(&self) -> Result<IntegralLattice> {
        match (&self.gram, &self.lattice) {
            (Some(path), None) => read_gram(path),
            (None, Some(expr)) => parse_lattice_expr(expr),
            _ => Err(Error::InvalidArgument("give exactly one of --gram and --lattice".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    Invariants {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        roots: bool,
    },
    Disc {
        #[command(flatten)]
        input: LatticeInput,
    },
    /// Orthogonal complement of integer vectors given as JSON rows.
    Complement {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        vectors: String,
    },
    /// Overlattice from rational glue vectors given as JSON rows of strings.
    Adjoin {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        glue: String,
    },
    Twist {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    Untwist {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    Shortvec {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        bound: i64,
    },
    Isometry {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        other_gram: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        other: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum KummerCmd {
    Ambient,
    OmegaD4,
    EigenE8,
}

#[derive(Subcommand, Debug)]
enum MgCmd {
    Z5,
    D6,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    rk_h: Option<usize>,
    #[arg(long)]
    rk_g: Option<usize>,
    #[arg(long)]
    subgroup: Option<bool>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// `dihedral4`, `sigma_n`, `e5`, `e6`, `kummer_ei`, `tate_normal`, `random_sigma`.
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Comma separated coefficients of A for `sigma_n`.
    #[arg(long, allow_hyphen_values = true)]
    coeffs_a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    coeffs_b: Option<String>,
    /// Tate normal form parameter.
    #[arg(long, allow_hyphen_values = true)]
    parameter: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    bound: i64,
}

fn rational(s: &str) -> Result<Rational> {
    let p = parse_poly(s)?;
    if !p.is_constant() {
        return Err(Error::InvalidArgument(format!("'{}' is not a rational number", s)));
    }
    Ok(p.coeff(0))
}

fn need<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::InvalidArgument(format!("--{} is required", name)))
}

fn rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(rational).collect()
}

fn usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad index '{}'", x))))
        .collect()
}

fn read_gram(path: &str) -> Result<IntegralLattice> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {}", path, e)))?;
    let f: GramFile = serde_json::from_str(&text).map_err(|e| Error::InvalidArgument(format!("{}: {}", path, e)))?;
    IntegralLattice::from_gram_file(f)
}

/// `NAME` or `NAME[k]`, joined by `+`.
pub fn parse_lattice_expr(s: &str) -> Result<IntegralLattice> {
    let mut parts = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        let (name, k) = match term.strip_suffix(']').and_then(|t| t.split_once('[')) {
            Some((n, k)) => (n, k.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad scale in '{}'", term)))?),
            None => (term, 1),
        };
        let std: StandardName = name.parse()?;
        parts.push(lattice::standard(&std, 1)?.scaled(k));
    }
    Ok(IntegralLattice::direct_sum_all(&parts))
}

fn model_json(m: &WeierstrassModel) -> Value {
    json!({
        "A": m.a().to_string(),
        "B": m.b().to_string(),
        "m": m.m(),
        "discriminant": m.discriminant().to_string(),
        "surface_class": m.surface_class().to_string(),
    })
}

fn fibers_json(m: &WeierstrassModel) -> Result<Value> {
    let f = m.all_fibers()?;
    let counts = fiber_counts(&f);
    let euler: usize = f.iter().map(|r| r.weight() * r.euler() as usize).sum();
    Ok(json!({ "fibers": f, "counts": format_counts(&counts), "euler": euler }))
}

fn model_report(m: &WeierstrassModel) -> Result<Value> {
    let mut v = model_json(m);
    merge(&mut v, fibers_json(m)?);
    Ok(v)
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn curve_json<F: Field + std::fmt::Display>(c: &Curve<F>) -> Value {
    json!({ "a1": c.a1.to_string(), "a2": c.a2.to_string(), "a3": c.a3.to_string(), "a4": c.a4.to_string(), "a6": c.a6.to_string() })
}

fn point_json<F: Field + std::fmt::Display>(p: &Option<Point<F>>) -> Value {
    match p {
        None => Value::Null,
        Some(p) => Value::String(p.to_string()),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn gram_json(l: &IntegralLattice) -> Value {
    json!(l.gram().iter().map(|r| r.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// The fiber of a model over `T = 0`.
fn fiber_at_zero(m: &WeierstrassModel) -> Result<String> {
    Ok(m.classify_fiber(&Place::Finite(Polynomial::t()))?.kind.to_string())
}

fn source_model(s: &SourceArgs, n: usize) -> Result<(WeierstrassModel, Value)> {
    let r = |v: &Option<String>, name: &str| rational(need(v, name)?);
    let fam = s.family.as_deref();
    let model = match fam {
        None => {
            let m = ModelArgs {
                a: need(&s.a_poly, "A")?.to_string(),
                b: need(&s.b_poly, "B")?.to_string(),
                m: s.m,
            };
            m.model()?
        }
        Some("e5") => families::e5(&r(&s.a, "a")?, &r(&s.b, "b")?)?,
        Some("e6") => families::e6(&r(&s.a, "a")?, &r(&s.b, "b")?)?,
        Some("dihedral4") => families::dihedral4(&r(&s.a, "a")?, &r(&s.b, "b")?, &r(&s.c, "c")?, &r(&s.d, "d")?)?,
        Some("kummer_ei") => families::kummer_ei(),
        Some("random") => {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let sample = families::random_sigma_n(n, s.bound, &mut rng)?;
            for line in &sample.rejections {
                eprintln!("rejected: {}", line);
            }
            let info = json!({ "seed": s.seed, "rejections": sample.rejections.len() });
            return Ok((sample.model, info));
        }
        Some(other) => return Err(Error::InvalidArgument(format!("unknown family '{}'", other))),
    };
    Ok((model, Value::Null))
}

fn run(cli: Cli) -> Result<Value> {
    match cli.cmd {
        Cmd::Fibers(m) => model_report(&m.model()?),
        Cmd::Height(h) => height(h),
        Cmd::SolveComponents(s) => {
            let fibers = parse_fiber_list(&s.fibers)?;
            let sols = mw::solve_components(s.chi, &fibers, s.n)?;
            let reducible: Vec<usize> = (0..fibers.len()).filter(|&k| fibers[k].is_reducible()).collect();
            let short: Vec<Vec<usize>> = sols.iter().map(|a| reducible.iter().map(|&k| a[k]).collect()).collect();
            Ok(json!({
                "fibers": fibers.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "n": s.n,
                "assignments": sols,
                "reducible_assignments": short,
                "unique": sols.len() == 1,
            }))
        }
        Cmd::TorsionOrder(s) => {
            let model = s.model.model()?;
            let p = mw::parse_section_on(&model, &s.p)?;
            let bound = s.bound.unwrap_or_else(|| mw::default_torsion_bound(&model));
            let order = mw::torsion_order(&model, &p, bound);
            Ok(json!({ "section": p.to_string(), "bound": bound, "order": order }))
        }
        Cmd::Quotient(q) => quotient(q),
        Cmd::Basechange { model, n } => {
            let src = model.model()?;
            let out = quotients::base_change(&src, n)?;
            Ok(json!({ "source": model_json(&src), "n": n, "target": model_report(&out)? }))
        }
        Cmd::Check(c) => check(c),
        Cmd::Lattice(l) => lattice_cmd(l),
        Cmd::Kummer(k) => kummer(k),
        Cmd::Mg(m) => {
            let name = match m {
                MgCmd::Z5 => k3::MgName::Z5,
                MgCmd::D6 => k3::MgName::D6,
            };
            Ok(to_value(&k3::mg_report(name)?))
        }
        Cmd::PairProperty(p) => pair(p),
        Cmd::Family(f) => family(f),
        Cmd::Properties { seed, count } => Ok(to_value(&crate::checks::run_all(seed, count)?)),
    }
}

fn height(h: HeightArgs) -> Result<Value> {
    let fibers = parse_fiber_list(&h.fibers)?;
    let data = mw::HeightData::new(h.chi, fibers);
    let p = SectionHits::new(h.p_dot_o, usize_list(&h.p)?);
    let hp = data.height(&p)?;
    let mut out = json!({ "height_p": hp.to_string() });
    if let Some(q) = &h.q {
        let q = SectionHits::new(h.q_dot_o, usize_list(q)?);
        merge(
            &mut out,
            json!({ "height_q": data.height(&q)?.to_string(), "pairing": data.pairing(&p, &q, h.p_dot_q)?.to_string() }),
        );
    }
    Ok(out)
}

fn quotient(q: QuotientCmd) -> Result<Value> {
    match q {
        QuotientCmd::Two { a, b } => {
            let (a, b) = (parse_ratfun(&a)?, parse_ratfun(&b)?);
            let t = quotients::quotient_by_2torsion(&a, &b)?;
            Ok(json!({
                "source": curve_json(&t.isogeny.source),
                "target": curve_json(&t.isogeny.target),
                "image_point": point_json(&t.image_point),
            }))
        }
        QuotientCmd::Four { e, f, points, seed } => four(&e, &f, points, seed),
        QuotientCmd::Velu { a1, a2, a3, a4, a6, p, n } => {
            let c = Curve {
                a1: parse_ratfun(&a1)?,
                a2: parse_ratfun(&a2)?,
                a3: parse_ratfun(&a3)?,
                a4: parse_ratfun(&a4)?,
                a6: parse_ratfun(&a6)?,
            };
            let (x, y) = crate::algebra::parse_section(&p)?;
            let k = Point::Affine(x, y);
            if !c.is_on_curve(&k) {
                return Err(Error::Domain("kernel point is not on the curve".into()));
            }
            let iso = quotients::velu_quotient(&c, &k, n)?;
            Ok(json!({ "source": curve_json(&c), "degree": n, "target": curve_json(&iso.target) }))
        }
        QuotientCmd::Sigma { source, n } => {
            let (m, info) = source_model(&source, n)?;
            let out = quotients::quotient_by_sigma_n(&m, n)?;
            let src = model_report(&m)?;
            Ok(json!({
                "n": n,
                "sample": info,
                "source": src,
                "target": model_report(&out)?,
                "fiber_at_zero": fiber_at_zero(&out)?,
            }))
        }
        QuotientCmd::Mu2(m) => {
            let src = m.model()?;
            Ok(json!({ "source": model_json(&src), "target": model_report(&quotients::quotient_by_mu2(&src)?)? }))
        }
        QuotientCmd::Varsigma2(m) => {
            let src = m.model()?;
            Ok(json!({ "source": model_json(&src), "target": model_report(&quotients::quotient_by_varsigma2(&src)?)? }))
        }
        QuotientCmd::Config { fibers, n, components, fixed_smooth } => {
            let list = parse_fiber_list(&fibers)?;
            let out = match n {
                Some(n) => {
                    let comps = match components {
                        Some(c) => usize_list(&c)?,
                        None => list.iter().map(|f| usize::from(f.is_reducible())).collect(),
                    };
                    if comps.len() != list.len() {
                        return Err(Error::InvalidArgument("one component per fiber is needed".into()));
                    }
                    let pairs: Vec<(KodairaType, usize)> = list.iter().copied().zip(comps).collect();
                    quotients::quotient_configuration(&pairs, n)?
                }
                None => {
                    let mut sorted = list.clone();
                    sorted.sort();
                    quotients::involution_configuration(&sorted, &quotients::adjacent_pairing(&sorted), fixed_smooth)?
                }
            };
            let counts: BTreeMap<KodairaType, usize> = out.iter().fold(BTreeMap::new(), |mut m, k| {
                *m.entry(*k).or_default() += 1;
                m
            });
            let mut src = list.clone();
            src.sort();
            Ok(json!({
                "source": format_counts(&src.iter().fold(BTreeMap::new(), |mut m, k| { *m.entry(*k).or_default() += 1; m })),
                "output": format_counts(&counts),
                "output_list": out.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                "euler": quotients::euler_sum(&out),
                "same_as_source": out == src,
            }))
        }
    }
}

fn four(e: &str, f: &str, points: usize, seed: u64) -> Result<Value> {
    let (er, fr) = (parse_ratfun(e)?, parse_ratfun(f)?);
    let t = quotients::quotient_by_4torsion(&er, &fr)?;
    let expect_a = er.square().add(&fr.scale(4)).scale(-2);
    let expect_b = er.square().sub(&fr.scale(4)).square();
    let closed = t.isogeny.target.a2 == expect_a && t.isogeny.target.a4 == expect_b;
    let mut out = json!({
        "source": curve_json(&t.isogeny.source),
        "target": curve_json(&t.isogeny.target),
        "matches_closed_form": closed,
        "image_point": point_json(&t.image_point),
    });
    if points > 0 {
        let (Some(en), Some(fn_)) = (er.as_polynomial().filter(|p| p.is_constant()), fr.as_polynomial().filter(|p| p.is_constant()))
        else {
            return Err(Error::InvalidArgument("--points needs numeric e and f".into()));
        };
        let q = quotients::quotient_by_4torsion(&en.coeff(0), &fn_.coeff(0))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = mw::random_points(&q.isogeny.source, points, 3, &mut rng)?;
        let ok = pts.iter().filter(|p| quotients::composes_to_multiplication(&q, p)).count();
        merge(&mut out, json!({ "points_checked": pts.len(), "points_ok": ok, "seed": seed }));
    }
    Ok(out)
}

fn check(c: CheckCmd) -> Result<Value> {
    match c {
        CheckCmd::SigmaN { model, n } => {
            let m = model.model()?;
            Ok(json!({ "model": model_json(&m), "n": n, "invariant": quotients::check_sigma_n_invariance(&m, n)? }))
        }
        CheckCmd::Palindrome(model) => {
            let m = model.model()?;
            Ok(json!({ "model": model_json(&m), "palindromic": quotients::check_palindrome(&m) }))
        }
        CheckCmd::Inversion { model, mu } => {
            let m = model.model()?;
            let (ok, pulled) = quotients::inversion_twist(&m, &rational(&mu)?)?;
            Ok(json!({ "model": model_json(&m), "mu": mu, "invariant": ok, "pulled_back": model_json(&pulled) }))
        }
    }
}

fn invariants_json(l: &IntegralLattice, roots: bool) -> Result<Value> {
    let mut v = to_value(&l.invariants(roots)?);
    merge(&mut v, json!({ "gram": gram_json(l) }));
    Ok(v)
}

fn parse_rows<T: serde::de::DeserializeOwned>(s: &str) -> Result<Vec<Vec<T>>> {
    serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad JSON rows: {}", e)))
}

fn lattice_cmd(c: LatticeCmd) -> Result<Value> {
    match c {
        LatticeCmd::Invariants { input, roots } => invariants_json(&input.get()?, roots),
        LatticeCmd::Disc { input } => {
            let l = input.get()?;
            let d = l.discriminant_group();
            Ok(json!({
                "elementary_divisors": d.elementary_divisors.iter().map(big).collect::<Vec<_>>(),
                "generators": d.generators.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "q_values": d.q_values.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "b_values": d.b_values.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        }
        LatticeCmd::Complement { input, vectors } => {
            let l = input.get()?;
            let rows: Vec<Vec<i64>> = parse_rows(&vectors)?;
            let (basis, sub) = l.orthogonal_complement(&intmat::from_i64(&rows));
            let inv = if sub.is_degenerate() { Value::Null } else { to_value(&sub.invariants(false)?) };
            Ok(json!({
                "basis": basis.iter().map(|r| r.iter().map(big).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "gram": gram_json(&sub),
                "degenerate": sub.is_degenerate(),
                "invariants": inv,
            }))
        }
        LatticeCmd::Adjoin { input, glue } => {
            let l = input.get()?;
            let rows: Vec<Vec<String>> = parse_rows(&glue)?;
            let glue: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| rational(x)).collect()).collect::<Result<_>>()?;
            let (new, _, index) = l.adjoin_glue(&glue)?;
            let mut v = invariants_json(&new, false)?;
            merge(&mut v, json!({ "index": big(&index) }));
            Ok(v)
        }
        LatticeCmd::Twist { input, n, expect } => {
            let out = input.get()?.twist(n);
            twist_report(&out, expect.as_deref())
        }
        LatticeCmd::Untwist { input, n, expect } => match input.get()?.untwist(n) {
            Some(out) => twist_report(&out, expect.as_deref()),
            None => Ok(json!({ "gram": Value::Null, "exists": false })),
        },
        LatticeCmd::Shortvec { input, bound } => {
            let counts = lattice::short_vectors(&input.get()?, bound)?;
            Ok(json!({ "bound": bound, "counts": counts.iter().map(|(n, c)| json!({"norm": n, "count": c})).collect::<Vec<_>>() }))
        }
        LatticeCmd::Isometry { input, other_gram, other } => {
            let a = input.get()?;
            let b = LatticeInput { gram: other_gram, lattice: other }.get()?;
            Ok(json!({ "result": lattice::definite_isometry_check(&a, &b) }))
        }
    }
}

fn twist_report(out: &IntegralLattice, expect: Option<&str>) -> Result<Value> {
    let mut v = json!({ "gram": gram_json(out), "exists": true });
    if let Some(e) = expect {
        let target = parse_lattice_expr(e)?;
        merge(&mut v, json!({ "expected": e, "equal": target.gram() == out.gram() }));
    }
    Ok(v)
}

fn kummer(k: KummerCmd) -> Result<Value> {
    match k {
        KummerCmd::Ambient => Ok(to_value(&k3::ambient_report()?)),
        KummerCmd::OmegaD4 => {
            let o = k3::omega_d4()?;
            let r = k3::omega_report(&o)?;
            let labels = ["Kbar_W1+Kbar_W2", "omega34", "D0", "K0000+K0001+K0010+K0011", "Khat"];
            let mut v = to_value(&r.invariants);
            merge(&mut v, to_value(&r));
            merge(&mut v, json!({ "invariant_classes": labels }));
            Ok(v)
        }
        KummerCmd::EigenE8 => {
            let o = k3::omega_d4()?;
            Ok(to_value(&k3::eigenlattice_e8_check(&o)?))
        }
    }
}

fn pair(p: PairArgs) -> Result<Value> {
    match (&p.h, &p.g) {
        (Some(h), Some(g)) => Ok(to_value(&k3::pair_report(h, g)?)),
        (None, None) => {
            let (Some(rh), Some(rg), Some(sub)) = (p.rk_h, p.rk_g, p.subgroup) else {
                return Err(Error::InvalidArgument("give --h and --g, or --rk-h, --rk-g and --subgroup".into()));
            };
            Ok(json!({ "rank_h": rh, "rank_g": rg, "is_subgroup": sub, "property": k3::pair_property(rh, rg, sub) }))
        }
        _ => Err(Error::InvalidArgument("give both --h and --g".into())),
    }
}

fn family(f: FamilyArgs) -> Result<Value> {
    let r = |v: &Option<String>, name: &str| rational(need(v, name)?);
    let model = match f.name.as_str() {
        "dihedral4" => families::dihedral4(&r(&f.a, "a")?, &r(&f.b, "b")?, &r(&f.c, "c")?, &r(&f.d, "d")?)?,
        "e5" => families::e5(&r(&f.a, "a")?, &r(&f.b, "b")?)?,
        "e6" => families::e6(&r(&f.a, "a")?, &r(&f.b, "b")?)?,
        "kummer_ei" => families::kummer_ei(),
        "sigma_n" => {
            let n = f.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
            families::sigma_n(n, &rational_list(need(&f.coeffs_a, "coeffs-a")?)?, &rational_list(need(&f.coeffs_b, "coeffs-b")?)?)?
        }
        "random_sigma" => {
            let n = f.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(f.seed);
            let s = families::random_sigma_n(n, f.bound, &mut rng)?;
            for line in &s.rejections {
                eprintln!("rejected: {}", line);
            }
            let mut v = model_report(&s.model)?;
            merge(&mut v, json!({ "n": n, "seed": f.seed, "rejections": s.rejections.len() }));
            return Ok(v);
        }
        "tate_normal" => {
            let n = f.n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
            let p: RationalFunction = parse_ratfun(f.parameter.as_deref().unwrap_or("t"))?;
            let tn = families::tate_normal(n, &p)?;
            let (short, pts) = families::to_short_model(&tn.curve, std::slice::from_ref(&tn.point))?;
            let order = short_order(&short, &pts[0]);
            let mut v = model_report(&short)?;
            merge(
                &mut v,
                json!({ "n": n, "long_form": curve_json(&tn.curve), "point": pts[0].to_string(), "point_order": order }),
            );
            return Ok(v);
        }
        other => return Err(Error::InvalidArgument(format!("unknown family '{}'", other))),
    };
    model_report(&model)
}

fn short_order(m: &WeierstrassModel, p: &Point<RationalFunction>) -> Option<u32> {
    mw::torsion_order(m, p, 12)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Syntax { .. } | Error::UnknownVariable(..) => 1,
        _ => 2,
    }
}

fn print(v: &Value, indent: Option<usize>) {
    let s = match indent {
        None => serde_json::to_string(v).expect("JSON"),
        Some(n) => {
            let ind = vec![b' '; n];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&ind);
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            v.serialize(&mut ser).expect("JSON");
            String::from_utf8(buf).expect("UTF-8")
        }
    };
    use std::io::Write;
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{}", s);
}

/// Runs the command line in `args` (including the program name) and returns
/// the exit code.
pub fn run_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return 0;
            }
            eprint!("{}", e);
            print(&json!({ "error": e.kind().to_string() }), None);
            return 1;
        }
    };
    let indent = cli.json_indent;
    match run(cli) {
        Ok(v) => {
            print(&v, indent);
            0
        }
        Err(e) => {
            print(&json!({ "error": e.to_string() }), indent);
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_expressions() {
        let l = parse_lattice_expr("U+U(5)").unwrap();
        assert_eq!(l.rank(), 4);
        assert_eq!(parse_lattice_expr("E8[-2]").unwrap().gram()[0][0], BigInt::from(-4));
        assert!(parse_lattice_expr("Q7").is_err());
    }

    #[test]
    fn help_and_usage_codes() {
        assert_eq!(run_args(["elliptic-k3", "--help"]), 0);
        assert_eq!(run_args(["elliptic-k3", "nonsense"]), 1);
        assert_eq!(run_args(["elliptic-k3", "fibers", "--A", "0", "--B", "0"]), 2);
        assert_eq!(run_args(["elliptic-k3", "fibers", "--A", "t^", "--B", "0"]), 1);
        assert_eq!(run_args(["elliptic-k3", "pair-property", "--h", "Z5", "--g", "D5"]), 0);
    }
}
