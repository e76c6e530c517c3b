//! One line per acceptance criterion, `PASS` or `FAIL`; exits non-zero if
//! any line failed.

use std::collections::BTreeMap;

use elliptic_k3::algebra::{int, parse_poly, parse_ratfun, Field, Polynomial, Rational, RationalFunction};
use elliptic_k3::checks;
use elliptic_k3::k3::{self, MgName};
use elliptic_k3::lattice::{Isometry, IntegralLattice};
use elliptic_k3::mordell_weil::{random_points, solve_components};
use elliptic_k3::quotients::{self, composes_to_multiplication, quotient_by_4torsion};
use elliptic_k3::weierstrass::{families, fiber_counts, format_counts, parse_fiber_list, KodairaType, Place, SurfaceClass};
use elliptic_k3::WeierstrassModel;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn gram(rows: &[&[i64]]) -> IntegralLattice {
    IntegralLattice::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn block_hyperbolic(scales: &[i64]) -> IntegralLattice {
    let n = 2 * scales.len();
    let mut g = vec![vec![0i64; n]; n];
    for (k, s) in scales.iter().enumerate() {
        g[2 * k][2 * k + 1] = *s;
        g[2 * k + 1][2 * k] = *s;
    }
    IntegralLattice::from_i64(&g).unwrap()
}

fn omega_certificate() -> Outcome {
    let o = k3::omega_d4().unwrap();
    let r = k3::omega_report(&o).unwrap();
    let inv = &r.invariants;
    let ok = inv.rank == 15
        && inv.det == "-1024"
        && inv.disc_group == vec!["4"; 5]
        && inv.roots == Some(0)
        && r.listed_generators_inside
        && r.listed_invariants_inside;
    (ok, format!("rank {} det {} disc {:?} roots {:?}", inv.rank, inv.det, inv.disc_group, inv.roots))
}

fn kummer_transcendental() -> Outcome {
    let a = k3::ambient_report().unwrap();
    let t = &a.transcendental_gram;
    let ok = t == &vec![vec!["4".to_string(), "0".into()], vec!["0".into(), "4".into()]]
        && a.transcendental_orthogonal_to_ns
        && a.ns_rank == 20
        && a.ns_rank + t.len() == a.rank;
    (ok, format!("T = {:?}, NS rank {}", t, a.ns_rank))
}

fn e8_eigenlattices() -> Outcome {
    let o = k3::omega_d4().unwrap();
    let r = k3::eigenlattice_e8_check(&o).unwrap();
    let each = r.eigenlattices.iter().all(|e| {
        e.rank == 8 && e.det == "256" && e.even && e.roots == 0 && e.norm4_vectors == 240 && e.isometric_to_e8_minus2 == Isometry::Yes
    });
    let ok = r.eigenlattices.len() == 2 && each && r.sum_saturation_equals_omega;
    (ok, format!("2 x E8(-2), sum rank {}, index of sum {:?}", r.sum_rank, r.sum_index_in_saturation))
}

fn kummer_fibration() -> Outcome {
    let m = WeierstrassModel::new(parse_poly("(t^4 - 1)^2").unwrap(), Polynomial::zero()).unwrap();
    let f = m.all_fibers().unwrap();
    let counts = fiber_counts(&f);
    let euler: usize = f.iter().map(|r| r.weight() * r.euler() as usize).sum();
    let ok = counts.len() == 1 && counts.get(&KodairaType::IStar(0)) == Some(&4) && euler == 24 && m.surface_class() == SurfaceClass::K3;
    (ok, format!("{} euler {} {}", format_counts(&counts), euler, m.surface_class()))
}

const SEEDS: [u64; 5] = [11, 12, 13, 14, 15];

fn sigma_samples(n: usize) -> Vec<(u64, WeierstrassModel, usize)> {
    SEEDS
        .iter()
        .map(|&s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let sample = families::random_sigma_n(n, 10, &mut rng).unwrap();
            for r in &sample.rejections {
                eprintln!("seed {}: rejected {}", s, r);
            }
            (s, sample.model, sample.rejections.len())
        })
        .collect()
}

fn quotient_fiber_table() -> Outcome {
    let expect = [(2, "I*0"), (3, "IV*"), (4, "III*"), (5, "II*"), (6, "II*")];
    let mut seen = Vec::new();
    let mut ok = true;
    for (n, want) in expect {
        for (_, m, _) in sigma_samples(n) {
            let q = quotients::quotient_by_sigma_n(&m, n).unwrap();
            let got = q.classify_fiber(&Place::Finite(Polynomial::t())).unwrap().kind.to_string();
            ok &= got == want;
            if !seen.contains(&(n, got.clone())) {
                seen.push((n, got));
            }
        }
    }
    (ok, format!("fibers at T=0 over seeds {:?}: {:?}", SEEDS, seen))
}

fn generic_fiber_counts() -> Outcome {
    let mut ok = true;
    let mut seen = Vec::new();
    let mut rejected = 0;
    for n in 2..=6 {
        let want = if n == 5 { "2II+20I1" } else { "24I1" };
        for (_, m, rej) in sigma_samples(n) {
            rejected += rej;
            let got = format_counts(&fiber_counts(&m.all_fibers().unwrap()));
            ok &= got == want;
            if !seen.contains(&(n, got.clone())) {
                seen.push((n, got));
            }
        }
    }
    (ok, format!("{:?}, {} draws rejected", seen, rejected))
}

/// `x(2P)` on `y² = x³ + ax² + bx`, written out directly.
fn double_x(a: &Rational, b: &Rational, x: &Rational) -> Option<Rational> {
    let y2 = x.clone() * x * x + a.clone() * x * x + b.clone() * x;
    if Field::is_zero(&y2) {
        return None;
    }
    let n = x.clone() * x - b;
    Some(n.clone() * &n / (int(4) * &y2))
}

fn four_torsion() -> Outcome {
    // Kronecker substitution e = t, f = t⁵ separates the monomials of degree < 5 in e.
    let (e, f) = (RationalFunction::t(), parse_ratfun("t^5").unwrap());
    let q = quotient_by_4torsion(&e, &f).unwrap();
    let a = e.square().add(&f.scale(4)).scale(-2);
    let b = e.square().sub(&f.scale(4)).square();
    let symbolic = q.isogeny.target.a2 == a && q.isogeny.target.a4 == b && q.isogeny.target.a6.is_zero();

    let curves = [(1, 5), (2, 7), (3, 5)];
    let mut checked = 0;
    let mut ok = symbolic;
    for (k, (e, f)) in curves.iter().enumerate() {
        let (e, f) = (int(*e), int(*f));
        let q = quotient_by_4torsion(&e, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + k as u64);
        let pts = random_points(&q.isogeny.source, 20, 3, &mut rng).unwrap();
        let (a2, a4) = (q.isogeny.source.a2.clone(), q.isogeny.source.a4.clone());
        for p in &pts {
            let oracle = p.x().and_then(|x| double_x(&a2, &a4, x)).and_then(|x2| double_x(&a2, &a4, &x2));
            let there = q.dual.apply(&q.isogeny.apply(p));
            ok &= composes_to_multiplication(&q, p) && there.x() == oracle.as_ref();
            checked += 1;
        }
    }
    (ok, format!("symbolic {}, {} points on {} curves", symbolic, checked, curves.len()))
}

fn fiber_arithmetic() -> Outcome {
    let config = |s: &str, n: u32| {
        let f: Vec<(KodairaType, usize)> =
            parse_fiber_list(s).unwrap().into_iter().map(|k| (k, usize::from(k.is_reducible()))).collect();
        let mut src: Vec<_> = f.iter().map(|p| p.0).collect();
        src.sort();
        quotients::quotient_configuration(&f, n).unwrap() == src
    };
    let six = parse_fiber_list("2I6+2I3+2I2+2I1").unwrap();
    let s6 = solve_components(2, &six, 6).unwrap();
    let five = parse_fiber_list("4I5+4I1").unwrap();
    let s5 = solve_components(2, &five, 5).unwrap();
    let red = |f: &[KodairaType], a: &[usize]| -> Vec<usize> { f.iter().zip(a).filter(|(k, _)| k.is_reducible()).map(|(_, c)| *c).collect() };
    let mut ok = config("2I6+2I3+2I2+2I1", 6) && config("3I7+3I1", 7) && config("4I5+4I1", 5);
    ok &= s6.len() == 1 && red(&six, &s6[0]) == vec![1; 6];
    ok &= s5.len() == 1 && red(&five, &s5[0]) == vec![1, 1, 2, 2];
    (ok, format!("n=6 {:?}, n=5 {:?}", s6.iter().map(|a| red(&six, a)).collect::<Vec<_>>(), s5.iter().map(|a| red(&five, a)).collect::<Vec<_>>()))
}

fn glued_lattices() -> Outcome {
    let z5 = k3::mg_report(MgName::Z5).unwrap();
    let d6 = k3::mg_report(MgName::D6).unwrap();
    let abs = |s: &str| s.trim_start_matches('-').to_string();
    let u2u12 = block_hyperbolic(&[2, 12]).det();
    let ok = abs(&z5.invariants.det) == "25"
        && z5.hyperbolic_sum.rank == 18
        && z5.hyperbolic_sum.disc_group == vec!["5", "5"]
        && abs(&d6.invariants.det) == "576"
        && d6.index == "4"
        && u2u12.to_string() == "576";
    (
        ok,
        format!(
            "M_Z5 det {}, U+M_Z5 disc {:?}; M_D6 det {} at index {}, det ratio {} (implied index {:?})",
            z5.invariants.det, z5.hyperbolic_sum.disc_group, d6.invariants.det, d6.index, d6.det_ratio, d6.implied_index
        ),
    )
}

fn twists() -> Outcome {
    let u_u5 = gram(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 5], &[0, 0, 5, 0]]);
    let u_u6 = block_hyperbolic(&[1, 6]);
    let a = u_u5.twist(2).gram() == block_hyperbolic(&[2, 10]).gram();
    let b = u_u6.twist(2).gram() == block_hyperbolic(&[2, 12]).gram();
    let c = block_hyperbolic(&[6, 6]).untwist(6).map(|l| l.gram() == block_hyperbolic(&[1, 1]).gram()).unwrap_or(false);
    (a && b && c, format!("{} {} {}", a, b, c))
}

fn pair_property() -> Outcome {
    let cases = [
        ("Z/5Z", "D5", true),
        ("Z/6Z", "D6", true),
        ("Z/2Z x Z/4Z", "Z2xD4", true),
        ("(Z/3Z)^2", "A_{3,3}", true),
        ("Z/4Z", "D4", false),
        ("Z/2Z", "Z/4Z", false),
    ];
    let got: Vec<bool> = cases.iter().map(|(h, g, _)| k3::pair_report(h, g).unwrap().property).collect();
    let ok = cases.iter().zip(&got).all(|(c, g)| c.2 == *g);
    (ok, format!("{:?}", got))
}

fn property_suites() -> Outcome {
    let r = checks::run_all(2024, 100).unwrap();
    let summary: BTreeMap<String, String> =
        r.suites.iter().map(|s| (s.name.clone(), format!("{}/{} (skipped {})", s.passed, s.instances, s.skipped))).collect();
    for s in &r.suites {
        for f in &s.failures {
            eprintln!("{}: {}", s.name, f);
        }
    }
    (r.all_passed && r.suites.iter().all(|s| s.instances >= 100), format!("{:?}", summary))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("omega_d4_certificate", omega_certificate),
        ("kummer_transcendental_lattice", kummer_transcendental),
        ("e8_minus2_eigenlattices", e8_eigenlattices),
        ("kummer_fibration_fibers", kummer_fibration),
        ("sigma_quotient_fiber_at_zero", quotient_fiber_table),
        ("generic_sigma_fiber_counts", generic_fiber_counts),
        ("four_torsion_quotient", four_torsion),
        ("fiber_quotient_arithmetic", fiber_arithmetic),
        ("glued_lattices", glued_lattices),
        ("twist_identities", twists),
        ("pair_property", pair_property),
        ("property_suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        println!("{} {:>2} {}: {}", if ok { "PASS" } else { "FAIL" }, k + 1, name, detail);
        if !ok {
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {:?}", failed);
        std::process::exit(1);
    }
}
