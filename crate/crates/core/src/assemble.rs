//! Integer sextics assembled from reductions at several primes, and the end
//! to end check that rebuilds the worked examples and the family.

use std::fmt;

use thiserror::Error;

use crate::catalog;
use crate::count::{count_points, frobenius_profile, profile_criterion_check, CountError, FrobeniusProfile};
use crate::ff::{FieldCtx, FieldError};
use crate::geom::{check_points, galois_closure, GeneralPosition, GeomError, PlanePoint, PlanePointSet};
use crate::sextic::{
    derive_anticanonical, emit_genus4, emit_weierstrass, normalize_reduced, smoothness_check, Ring, SexticError,
    WeightedSextic, MONOMIALS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssembleError {
    #[error("prime {0} appears more than once")]
    DuplicatePrime(u32),
    #[error("expected a sextic over F_p")]
    NotOverPrimeField,
    #[error("expected a sextic over Z")]
    NotOverIntegers,
    #[error("modulus must be at least 2")]
    Modulus,
    #[error("input over F_{0} is not reduced: {1}")]
    NotReduced(u32, SexticError),
    #[error("split surfaces need p > 7, got {0}")]
    SmallPrime(u32),
    #[error("no eight points in general position found in P^2(F_{0})")]
    ScanExhausted(u32),
    #[error("expected {expected} points over F_{p}, counted {count}")]
    SplitCount { p: u32, count: u64, expected: u64 },
    #[error(transparent)]
    Sextic(#[from] SexticError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An integer sextic modulo `modulus`, stored with coefficients in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceTarget {
    modulus: u64,
    sextic: WeightedSextic,
}

impl CongruenceTarget {
    pub fn new(modulus: u64, sextic: WeightedSextic) -> Result<Self, AssembleError> {
        if modulus < 2 {
            return Err(AssembleError::Modulus);
        }
        if sextic.ring() != Ring::Z {
            return Err(AssembleError::NotOverIntegers);
        }
        let sextic = WeightedSextic::from_coeffs(Ring::Z, sextic.coeffs().map(|c| c.rem_euclid(modulus as i128)));
        Ok(Self { modulus, sextic })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sextic(&self) -> &WeightedSextic {
        &self.sextic
    }
}

/// Coefficientwise CRT lift of reduced sextics over distinct odd primes,
/// with least nonnegative residues.
pub fn crt_combine(inputs: &[WeightedSextic]) -> Result<WeightedSextic, AssembleError> {
    let mut primes = Vec::new();
    for f in inputs {
        let p = f.prime().map_err(|_| AssembleError::NotOverPrimeField)?;
        if primes.contains(&p) {
            return Err(AssembleError::DuplicatePrime(p));
        }
        f.check_weierstrass_shape().map_err(|e| AssembleError::NotReduced(p, e))?;
        primes.push(p);
    }
    let mut modulus: i128 = 1;
    let mut coeffs = [0i128; 23];
    for (f, &p) in inputs.iter().zip(&primes) {
        let p = p as i128;
        // solve x = coeffs (mod modulus), x = c (mod p)
        let inv = mod_inverse(modulus.rem_euclid(p), p);
        for (slot, &c) in coeffs.iter_mut().zip(f.coeffs()) {
            let step = ((c - *slot).rem_euclid(p) * inv).rem_euclid(p);
            *slot += modulus * step;
        }
        modulus *= p;
    }
    Ok(WeightedSextic::from_coeffs(Ring::Z, coeffs))
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (p, a, 0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub modulus: u64,
    /// Monomials whose coefficients differ modulo `modulus`.
    pub differing: Vec<[u32; 4]>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.differing.is_empty()
    }
}

pub fn verify_congruence(f: &WeightedSextic, target: &CongruenceTarget) -> CongruenceReport {
    let m = target.modulus as i128;
    let differing = MONOMIALS
        .iter()
        .zip(f.coeffs().iter().zip(target.sextic.coeffs()))
        .filter(|(_, (a, b))| (*a - *b).rem_euclid(m) != 0)
        .map(|(&e, _)| e)
        .collect();
    CongruenceReport { modulus: target.modulus, differing }
}

/// Eight rational points in general position and the surface they give.
#[derive(Debug, Clone)]
pub struct SplitSurface {
    pub points: PlanePointSet,
    pub sextic: WeightedSextic,
    pub count: u64,
}

/// Eight points of `P^2(F_p)` in general position, the first four being the
/// standard frame and the rest lexicographically first; the blow-up has trivial Frobenius action, so `p^2 + 9p + 1` points.
pub fn split_surface(p: u32, threads: usize) -> Result<SplitSurface, AssembleError> {
    if p <= 7 {
        return Err(AssembleError::SmallPrime(p));
    }
    let ctx = FieldCtx::prime_field(p)?;
    let mut candidates = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let c = [x, y, z].map(u64::from);
                if c.iter().find(|&&v| v != 0) == Some(&1) {
                    candidates.push(c);
                }
            }
        }
    }
    // every general-position set contains four points with no three collinear,
    // which a projectivity over F_p moves to the standard frame
    let mut chosen = vec![[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]];
    let p64 = p as u64;
    let candidates: Vec<[u64; 3]> = candidates
        .into_iter()
        .filter(|&q| !chosen.contains(&q) && (2..=4).all(|k| compatible(p64, &chosen[..k], q)))
        .collect();
    if !extend(&ctx, p64, &candidates, &mut chosen) {
        return Err(AssembleError::ScanExhausted(p));
    }
    let chosen = chosen
        .iter()
        .map(|c| PlanePoint::rational(&ctx, c.map(|v| v as u32)))
        .collect::<Result<Vec<_>, _>>()?;
    let points = galois_closure(&chosen, &ctx)?;
    let derivation = derive_anticanonical(&points, None)?;
    let sextic = normalize_reduced(&derivation.relation)?;
    let count = count_points(&sextic, 1, threads)?;
    let q = p as u64;
    let expected = q * q + 9 * q + 1;
    if count != expected {
        return Err(AssembleError::SplitCount { p, count, expected });
    }
    Ok(SplitSurface { points, sextic, count })
}

fn rank_mod(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][c] as i128, p as i128) as u64;
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] + (p - f) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn conic_row(p: u64, [x, y, z]: [u64; 3]) -> Vec<u64> {
    vec![x * x % p, x * y % p, y * y % p, x * z % p, y * z % p, z * z % p]
}

/// Whether `q` can join `chosen` without a collinear triple or six points on
/// a conic, given that it is compatible with `chosen` minus its last point.
fn compatible(p: u64, chosen: &[[u64; 3]], q: [u64; 3]) -> bool {
    let (last, rest) = chosen.split_last().expect("nonempty");
    let on_line = |a: [u64; 3]| rank_mod(p, vec![a.to_vec(), last.to_vec(), q.to_vec()]) < 3;
    if rest.iter().any(|&a| on_line(a)) {
        return false;
    }
    if chosen.len() < 5 {
        return true;
    }
    let mut pick = Vec::new();
    let mut ok = true;
    subsets(rest.len(), 4, &mut pick, &mut |ix| {
        let mut rows: Vec<Vec<u64>> = ix.iter().map(|&i| conic_row(p, rest[i])).collect();
        rows.push(conic_row(p, *last));
        rows.push(conic_row(p, q));
        ok &= rank_mod(p, rows) == 6;
    });
    ok
}

fn subsets(n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    let start = cur.last().map_or(0, |&i| i + 1);
    for i in start..n {
        cur.push(i);
        subsets(n, k, cur, visit);
        cur.pop();
    }
}

/// Depth-first search in lexicographic order, keeping only candidates
/// compatible with the points chosen so far. Complete sets also get the
/// cubic condition through [`check_points`].
fn extend(ctx: &FieldCtx, p: u64, candidates: &[[u64; 3]], chosen: &mut Vec<[u64; 3]>) -> bool {
    if chosen.len() == 8 {
        let pts: Vec<PlanePoint> =
            chosen.iter().map(|c| PlanePoint::rational(ctx, c.map(|v| v as u32)).expect("nonzero")).collect();
        return check_points(ctx, &pts).is_pass();
    }
    for (i, &c) in candidates.iter().enumerate() {
        if candidates.len() - i < 8 - chosen.len() {
            break;
        }
        chosen.push(c);
        let rest: Vec<[u64; 3]> = candidates[i + 1..].iter().copied().filter(|&q| compatible(p, chosen, q)).collect();
        if extend(ctx, p, &rest, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Inputs of [`verify_theorem_pipeline`] that tests and the command line vary.
#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub threads: usize,
    /// Replaces the diagonal surface over `F_7`.
    pub f7_sextic: Option<WeightedSextic>,
    /// Moves the `F_3` point set onto a line.
    pub collinear_f3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub stages: Vec<Stage>,
    /// Stages not run because an earlier one failed.
    pub skipped: Vec<&'static str>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.skipped.is_empty() && self.stages.iter().all(|s| s.passed)
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stages {
            writeln!(f, "[{}] {}", if s.passed { "PASS" } else { "FAIL" }, s.name)?;
            for line in &s.lines {
                writeln!(f, "  {line}")?;
            }
        }
        for name in &self.skipped {
            writeln!(f, "[SKIP] {name}")?;
        }
        writeln!(f, "result={}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Auxiliary primes for the split-surface stage; 19 is the least prime
/// with eight rational points in general position.
pub const SPLIT_PRIMES: [u32; 2] = [19, 23];

const STAGES: [&str; 10] = [
    "general position",
    "derive F3",
    "derive F5",
    "smoothness",
    "profiles",
    "profile criterion",
    "congruence",
    "weierstrass",
    "genus-4 curve",
    "split surfaces",
];

struct Pipeline {
    config: PipelineConfig,
    sextics: Vec<WeightedSextic>,
    profiles: Vec<FrobeniusProfile>,
    lift: Option<WeightedSextic>,
}

fn show_list(v: &[i128]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

impl Pipeline {
    fn run(&mut self, name: &str) -> (bool, Vec<String>) {
        match self.stage(name) {
            Ok(r) => r,
            Err(e) => (false, vec![format!("error: {e}")]),
        }
    }

    fn derive(&mut self, s: PlanePointSet, overrides: crate::sextic::Generators, relation: WeightedSextic, golden: WeightedSextic) -> Result<(bool, Vec<String>), AssembleError> {
        let d = derive_anticanonical(&s, Some(&overrides))?;
        let normal = normalize_reduced(&d.relation)?;
        let ok = d.relation == relation && normal == golden;
        let lines = vec![format!("relation: {}", d.relation), format!("normalized: {normal}")];
        self.sextics.push(normal);
        Ok((ok, lines))
    }

    fn stage(&mut self, name: &str) -> Result<(bool, Vec<String>), AssembleError> {
        let threads = self.config.threads.max(1);
        Ok(match name {
            "general position" => {
                let f3 = if self.config.collinear_f3 { catalog::order7_points_collinear() } else { catalog::order7_points() };
                let mut ok = true;
                let mut lines = Vec::new();
                for (label, s) in [("F3", f3), ("F5", catalog::order6_points())] {
                    let verdict = s.check_general_position();
                    ok &= verdict.is_pass();
                    lines.push(match verdict {
                        GeneralPosition::Pass => format!("{label}: general position, orbits {:?}", s.orbit_sizes()),
                        GeneralPosition::Fail(v) => format!("{label}: {v}"),
                    });
                }
                (ok, lines)
            }
            "derive F3" => self.derive(
                catalog::order7_points(),
                catalog::order7_generators(),
                catalog::order7_relation(),
                catalog::order7_sextic(),
            )?,
            "derive F5" => {
                let r = self.derive(
                    catalog::order6_points(),
                    catalog::order6_generators(),
                    catalog::order6_relation(),
                    catalog::order6_sextic(),
                )?;
                let f7 = self.config.f7_sextic.clone().unwrap_or_else(catalog::diagonal_f7_sextic);
                self.sextics.push(f7);
                r
            }
            "smoothness" => {
                let mut ok = true;
                let mut lines = Vec::new();
                for f in &self.sextics {
                    let verdict = smoothness_check(f)?;
                    ok &= verdict.is_smooth();
                    lines.push(format!("F{}: {verdict:?}", f.prime()?));
                }
                (ok, lines)
            }
            "profiles" => {
                let mut lines = Vec::new();
                for (f, exps) in self.sextics.iter().zip([&[1u32, 7][..], &[1, 2, 3, 6], &[1, 3]]) {
                    let profile = frobenius_profile(f, exps, threads)?;
                    lines.extend(profile.to_text().lines().map(String::from));
                    self.profiles.push(profile);
                }
                (true, lines)
            }
            "profile criterion" => {
                let report = profile_criterion_check(&self.profiles);
                (report.passed(), report.lines())
            }
            "congruence" => {
                let lift = crt_combine(&self.sextics)?;
                let target = catalog::family_target();
                let report = verify_congruence(&lift, &target);
                let coeffs: Vec<i128> = lift.terms().map(|(_, c)| c).collect();
                let mut lines = vec![format!("f = {lift}"), format!("coefficients={}", show_list(&coeffs))];
                if !report.passed() {
                    lines.push(format!("differs mod {} at {:?}", report.modulus, report.differing));
                }
                self.lift = Some(lift);
                (report.passed(), lines)
            }
            "weierstrass" => {
                let lift = self.lift.as_ref().expect("congruence stage ran");
                let w = emit_weierstrass(lift)?;
                let m = |v: &[i128]| v.iter().map(|c| c.rem_euclid(105)).collect::<Vec<_>>();
                let got = [m(&w.a), m(&w.b), m(&w.c)];
                let ok = got == catalog::family_weierstrass();
                let lines = ["a", "b", "c"].iter().zip(&got).map(|(n, v)| format!("{n} mod 105 = {}", show_list(v))).collect();
                (ok, lines)
            }
            "genus-4 curve" => {
                let lift = self.lift.as_ref().expect("congruence stage ran");
                let curve = emit_genus4(lift);
                let mut got: Vec<_> = curve.terms.iter().map(|&(e, c)| (e, c.rem_euclid(105))).collect();
                let mut want = catalog::family_curve().terms;
                got.sort();
                want.sort();
                (got == want, vec![format!("C: {curve} = 0"), format!("{} terms", curve.terms.len())])
            }
            "split surfaces" => {
                let mut lines = Vec::new();
                for p in SPLIT_PRIMES {
                    let s = split_surface(p, threads)?;
                    lines.push(format!("p={p}: count={} trace=8", s.count));
                }
                (true, lines)
            }
            _ => unreachable!("unknown stage {name}"),
        })
    }
}

/// Rebuilds the two worked examples, counts all three surfaces, checks the
/// Frobenius criterion, assembles the integer family and checks its
/// congruences and emissions. Stops at the first failing stage.
pub fn verify_theorem_pipeline(config: PipelineConfig) -> PipelineReport {
    let mut pipeline = Pipeline { config, sextics: Vec::new(), profiles: Vec::new(), lift: None };
    let mut stages = Vec::new();
    let mut skipped = Vec::new();
    for name in STAGES {
        if stages.last().is_some_and(|s: &Stage| !s.passed) {
            skipped.push(name);
            continue;
        }
        let (passed, lines) = pipeline.run(name);
        stages.push(Stage { name, passed, lines });
    }
    PipelineReport { stages, skipped }
}
