//! One PASS/FAIL line per acceptance criterion.
//!
//! The split-surface half of criterion 10 asks for surfaces over F_11 and
//! F_13 that do not exist: neither plane has eight rational points in general
//! position. That line prints FAIL; the process exits nonzero only if some
//! other check fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use dp1::assemble::{crt_combine, split_surface, verify_congruence, AssembleError};
use dp1::catalog;
use dp1::count::{
    count_points, count_points_buckets, count_points_naive, fiber_count, frobenius_profile, profile_criterion_check,
    FrobeniusProfile,
};
use dp1::e8::{self, criterion_check, perm_to_aut, LatticeAut};
use dp1::ff::{Field, FieldCtx};
use dp1::geom::{galois_closure, GeneralPosition, PlanePoint, PositionViolation};
use dp1::sextic::{
    derive_anticanonical, emit_genus4, emit_weierstrass, normalize_reduced, smoothness_check, FiberWitness, Ring,
    Smoothness, WeightedSextic,
};

const E8_LIMIT: Duration = Duration::from_secs(1);
const WEYL_LIMIT: Duration = Duration::from_secs(60);
const CENSUS_LIMIT: Duration = Duration::from_secs(60);
const F3_COUNT_LIMIT: Duration = Duration::from_secs(10);
const F5_K6_LIMIT: Duration = Duration::from_secs(600);
const F7_LIMIT: Duration = Duration::from_secs(5);
const WORKERS: usize = 2;

/// Checks expected to fail, with the reason printed next to them.
const KNOWN_FAILURES: [(&str, &str); 1] = [(
    "10b split surfaces",
    "P^2(F_11) and P^2(F_13) have no eight rational points in general position",
)];

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{}ms/{}ms", e.as_millis(), limit.as_millis()))
}

/// Points of the weighted sextic over F_p, enumerated as orbits of
/// (x, y, z, w) under lambda -> (lambda x, lambda y, lambda^2 z, lambda^3 w).
fn enumerate_prime_field(f: &WeightedSextic) -> u64 {
    let p = f.prime().unwrap() as i128;
    let value = |v: [i128; 4]| {
        f.terms()
            .map(|(e, c)| (0..4).fold(c, |acc, i| acc * v[i].pow(e[i]) % p))
            .sum::<i128>()
            .rem_euclid(p)
    };
    let mut orbits: HashSet<[i128; 4]> = HashSet::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                for w in 0..p {
                    let v = [x, y, z, w];
                    if v == [0; 4] || value(v) != 0 {
                        continue;
                    }
                    let rep = (1..p)
                        .map(|l| [l * x % p, l * y % p, l * l * z % p, l * l * l * w % p])
                        .min()
                        .unwrap();
                    orbits.insert(rep);
                }
            }
        }
    }
    orbits.len() as u64
}

fn e8_structure() -> Outcome {
    let t = Instant::now();
    let g = e8::gram();
    let roots = e8::roots().len();
    let det = e8::determinant(&g);
    let even = (0..8).all(|i| g[i][i] % 2 == 0);
    let (fast, time) = within(t, E8_LIMIT);
    Outcome {
        name: "1 E8 structure",
        passed: roots == 240 && det == 1 && even && fast,
        detail: format!("roots={roots} det={det} even={even} {time}"),
    }
}

fn weyl_order() -> Outcome {
    let t = Instant::now();
    let n = e8::weyl_group_order();
    let (fast, time) = within(t, WEYL_LIMIT);
    Outcome { name: "2 Weyl group order", passed: n == 696_729_600 && fast, detail: format!("order={n} {time}") }
}

fn census() -> Outcome {
    let t = Instant::now();
    let c = e8::order3_class_census();
    let expected = e8::poly_product(&[&[1, 1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1], &[-1, 1]]);
    let charpoly = c.elements.iter().all(|m| e8::char_poly(m).to_vec() == expected && m.trace() == 5);
    let (fast, time) = within(t, CENSUS_LIMIT);
    Outcome {
        name: "3 order-3 trace-5 census",
        passed: c.elements.len() == 2240 && charpoly && fast,
        detail: format!("elements={} charpoly={charpoly} {time}", c.elements.len()),
    }
}

fn f3_pipeline() -> Outcome {
    let d = derive_anticanonical(&catalog::order7_points(), Some(&catalog::order7_generators())).unwrap();
    let normal = normalize_reduced(&d.relation).unwrap();
    let form = normal == catalog::order7_sextic();
    let t = Instant::now();
    let n1 = count_points(&normal, 1, WORKERS).unwrap();
    let n7 = count_points(&normal, 7, WORKERS).unwrap();
    let (fast, time) = within(t, F3_COUNT_LIMIT);
    let direct = enumerate_prime_field(&normal);
    let profile = frobenius_profile(&normal, &[1, 7], WORKERS).unwrap();
    Outcome {
        name: "4 F3 pipeline",
        passed: form && n1 == 16 && direct == 16 && n7 == 4_802_653 && profile.order() == Some(7) && fast,
        detail: format!(
            "normal form={form} count1={n1} enumerated={direct} count7={n7} order={:?} {time}",
            profile.order()
        ),
    }
}

fn f5_pipeline() -> Outcome {
    let d = derive_anticanonical(&catalog::order6_points(), Some(&catalog::order6_generators())).unwrap();
    let normal = normalize_reduced(&d.relation).unwrap();
    let form = normal == catalog::order6_sextic();
    let n2 = count_points(&normal, 2, WORKERS).unwrap();
    let n3 = count_points(&normal, 3, WORKERS).unwrap();
    let t = Instant::now();
    let n6 = count_points(&normal, 6, WORKERS).unwrap();
    let (fast, time) = within(t, F5_K6_LIMIT);
    let profile = frobenius_profile(&normal, &[1, 2, 3, 6], WORKERS).unwrap();
    let shape = profile.order() == Some(6) && profile.det() == Some(-1) && profile.trace(2) == Some(5);
    Outcome {
        name: "5 F5 pipeline",
        passed: form && n2 == 776 && n3 == 16_501 && n6 == 244_281_251 && shape && fast,
        detail: format!(
            "normal form={form} count2={n2} count3={n3} count6={n6} order={:?} det={:?} t2={:?} k6 {time}",
            profile.order(),
            profile.det(),
            profile.trace(2)
        ),
    }
}

fn f7_surface() -> Outcome {
    let t = Instant::now();
    let f = catalog::diagonal_f7_sextic();
    let n1 = count_points(&f, 1, WORKERS).unwrap();
    let n3 = count_points(&f, 3, WORKERS).unwrap();
    let profile = frobenius_profile(&f, &[1, 3], WORKERS).unwrap();
    let ctx = FieldCtx::prime_field(7).unwrap();
    let infinity = fiber_count(&f, &ctx, &ctx.one(), &ctx.zero()).unwrap();
    let zero = fiber_count(&f, &ctx, &ctx.zero(), &ctx.one()).unwrap();
    let others: Vec<u64> = (1..7).map(|a| fiber_count(&f, &ctx, &ctx.from_prime(a), &ctx.one()).unwrap()).collect();
    let fibers = infinity == 8 && zero == 8 && others.iter().all(|&n| n == 2);
    let (fast, time) = within(t, F7_LIMIT);
    Outcome {
        name: "6 F7 surface",
        passed: n1 == 29 && n3 == 120_737 && profile.order() == Some(3) && profile.trace(1) == Some(-4) && fibers && fast,
        detail: format!(
            "count1={n1} count3={n3} order={:?} trace={:?} fibers={infinity}/{zero}/{others:?} {time}",
            profile.order(),
            profile.trace(1)
        ),
    }
}

fn assembly() -> Outcome {
    let lift = crt_combine(&[catalog::order7_sextic(), catalog::order6_sextic(), catalog::diagonal_f7_sextic()]).unwrap();
    let target = catalog::family_target();
    let congruent = verify_congruence(&lift, &target).passed() && lift.terms().count() == 15;
    let w = emit_weierstrass(&lift).unwrap();
    let m = |v: &[i128]| v.iter().map(|c| c.rem_euclid(105)).collect::<Vec<_>>();
    let weierstrass = [m(&w.a), m(&w.b), m(&w.c)] == catalog::family_weierstrass();
    let mut curve: Vec<_> = emit_genus4(&lift).terms.iter().map(|&(e, c)| (e, c.rem_euclid(105))).collect();
    let mut want = catalog::family_curve().terms;
    curve.sort();
    want.sort();
    let genus4 = curve == want;
    Outcome {
        name: "7 CRT assembly",
        passed: congruent && weierstrass && genus4,
        detail: format!("lift={lift} weierstrass={weierstrass} genus4={genus4}"),
    }
}

fn criterion() -> Outcome {
    let profiles: Vec<FrobeniusProfile> = [
        (catalog::order7_sextic(), &[1u32, 7][..]),
        (catalog::order6_sextic(), &[1, 2, 3, 6]),
        (catalog::diagonal_f7_sextic(), &[1, 3]),
    ]
    .iter()
    .map(|(f, e)| frobenius_profile(f, e, WORKERS).unwrap())
    .collect();
    let from_counts = profile_criterion_check(&profiles).passed();
    let identity: Vec<FrobeniusProfile> = [3u64, 5, 7]
        .iter()
        .map(|&q| FrobeniusProfile::from_lattice_element(q, &LatticeAut::identity(), &[1, 2, 3, 6]).unwrap())
        .collect();
    let identity_fails = !profile_criterion_check(&identity).passed();

    let seven = perm_to_aut(&catalog::order7_points().frobenius_permutation().try_into().unwrap());
    let six = perm_to_aut(&catalog::order6_points().frobenius_permutation().try_into().unwrap());
    let census = e8::order3_class_census();
    let minus4 = e8::trace_minus4_element(&census.subsystems).unwrap();
    let report = criterion_check(&[seven, six, six.mul(&six), minus4]).unwrap();
    let minus_identity_fails = !criterion_check(&[LatticeAut::identity().neg()]).unwrap().passed();
    Outcome {
        name: "8 maximality criterion",
        passed: from_counts && report.passed() && identity_fails && minus_identity_fails,
        detail: format!(
            "profiles={from_counts} lattice=[{}] identity control fails={identity_fails} -I control fails={minus_identity_fails}",
            report.lines().join(", ")
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let f = catalog::diagonal_f7_sextic();
    let mut pairs = Vec::new();
    for k in 1..=3 {
        let buckets = count_points_buckets(&f, k).unwrap().map(|b| b.total);
        let naive = count_points_naive(&f, k).unwrap();
        pairs.push((k, buckets, naive));
    }
    Outcome {
        name: "9 bucket and naive counts agree",
        passed: pairs.iter().all(|&(_, b, n)| b == Some(n)),
        detail: pairs.iter().map(|(k, b, n)| format!("k={k}: {b:?}/{n}")).collect::<Vec<_>>().join(" "),
    }
}

fn general_position() -> Outcome {
    let published = [catalog::order7_points(), catalog::order6_points()].iter().all(|s| s.check_general_position().is_pass());
    let collinear = catalog::order7_points_collinear().check_general_position();
    let collinear_ok = matches!(collinear, GeneralPosition::Fail(PositionViolation::Collinear(_)));
    let ctx = FieldCtx::prime_field(11).unwrap();
    let mut coords: Vec<[u32; 3]> = (1..=6u32).map(|t| [1, t, t * t % 11]).collect();
    coords.extend([[0, 1, 1], [0, 1, 2]]);
    let pts: Vec<PlanePoint> = coords.into_iter().map(|c| PlanePoint::rational(&ctx, c).unwrap()).collect();
    let conic = galois_closure(&pts, &ctx).unwrap().check_general_position();
    let conic_ok = conic == GeneralPosition::Fail(PositionViolation::Conic([0, 1, 2, 3, 4, 5]));
    Outcome {
        name: "10a general position",
        passed: published && collinear_ok && conic_ok,
        detail: format!("published sets pass={published} collinear control={collinear:?} conic control={conic:?}"),
    }
}

fn split_surfaces() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for (p, expected) in [(11, 221), (13, 287)] {
        match split_surface(p, WORKERS) {
            Ok(s) => {
                passed &= s.count == expected;
                parts.push(format!("p={p}: count={} expected={expected}", s.count));
            }
            Err(e @ AssembleError::ScanExhausted(_)) => {
                passed = false;
                parts.push(format!("p={p}: {e}; expected={expected}"));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("p={p}: error {e}"));
            }
        }
    }
    Outcome { name: "10b split surfaces", passed, detail: parts.join("; ") }
}

fn smoothness() -> Outcome {
    let smooth = [catalog::order7_sextic(), catalog::order6_sextic(), catalog::diagonal_f7_sextic()]
        .iter()
        .all(|f| smoothness_check(f).unwrap().is_smooth());
    let mut c = [0i128; 23];
    for (e, v) in [([0, 0, 0, 2], 1), ([0, 0, 3, 0], 1), ([6, 0, 0, 0], 6)] {
        c[dp1::sextic::monomial_index(e).unwrap()] = v;
    }
    // w^2 + z^3 - x^6, i.e. w^2 = z^3 + x^6 after z -> -z
    let cusp = smoothness_check(&WeightedSextic::from_coeffs(Ring::Fp(7), c)).unwrap();
    let witness = cusp == Smoothness::Singular(FiberWitness::Rational(0));
    let shown = match &cusp {
        Smoothness::Singular(w) => w.to_string(),
        other => format!("{other:?}"),
    };
    Outcome {
        name: "11 smoothness",
        passed: smooth && witness,
        detail: format!("published surfaces smooth={smooth} control witness={shown}"),
    }
}

fn main() {
    let checks: [fn() -> Outcome; 12] = [
        e8_structure,
        weyl_order,
        census,
        f3_pipeline,
        f5_pipeline,
        f7_surface,
        assembly,
        criterion,
        oracle_equivalence,
        general_position,
        split_surfaces,
        smoothness,
    ];
    let mut unexpected = 0;
    for check in checks {
        let o = check();
        let known = KNOWN_FAILURES.iter().find(|(n, _)| *n == o.name);
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        match (o.passed, known) {
            (false, Some((_, why))) => println!("     known: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("     listed as a known failure but passed");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected result(s)");
        std::process::exit(1);
    }
}
