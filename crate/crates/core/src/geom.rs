//! Points of the projective plane over an extension field, their Frobenius
//! orbits, and the general-position test for eight-point sets.

use std::fmt;

use thiserror::Error;

use crate::ff::{Field, FieldCtx, FieldError, FqElem};
use crate::io::{self, content_lines, ParseError};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("Galois closure has {0} points, expected 8")]
    ClosureSize(usize),
    #[error("seed {0} lies in the orbit of an earlier seed")]
    DuplicateSeed(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of the plane, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    coords: [FqElem; 3],
}

impl PlanePoint {
    pub fn new(ctx: &FieldCtx, coords: [FqElem; 3]) -> Result<Self, GeomError> {
        let lead = coords.iter().find(|c| !ctx.is_zero(c)).ok_or(GeomError::ZeroPoint)?;
        let inv = ctx.inv(lead).expect("nonzero");
        Ok(Self { coords: coords.map(|c| ctx.mul(&c, &inv)) })
    }

    /// A point with coordinates in the prime field.
    pub fn rational(ctx: &FieldCtx, coords: [u32; 3]) -> Result<Self, GeomError> {
        Self::new(ctx, coords.map(|c| ctx.from_prime(c)))
    }

    pub fn coords(&self) -> &[FqElem; 3] {
        &self.coords
    }

    /// Index of the coordinate equal to 1 that defines the affine chart.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| c.coeffs().iter().any(|&x| x != 0)).expect("normalized point")
    }

    pub fn frobenius(&self, ctx: &FieldCtx) -> Self {
        Self { coords: self.coords.clone().map(|c| ctx.frob(&c)) }
    }

    /// Whether all coordinates lie in the prime field.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_prime_field())
    }
}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// `<c>;<c>;<c>` with each coordinate a comma-separated coefficient list.
impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// The Frobenius orbit of `pt` over the prime field, starting at `pt`.
pub fn frobenius_orbit(ctx: &FieldCtx, pt: &PlanePoint) -> Vec<PlanePoint> {
    let mut orbit = vec![pt.clone()];
    let mut cur = pt.frobenius(ctx);
    while cur != *pt {
        orbit.push(cur.clone());
        cur = cur.frobenius(ctx);
    }
    orbit
}

/// Order, number of fixed points and sign of a permutation action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermutationSignature {
    pub order: u32,
    pub fixed: u32,
    pub sign: i8,
}

/// Eight points of the plane, stable under Frobenius over the prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePointSet {
    ctx: FieldCtx,
    points: Vec<PlanePoint>,
    orbits: Vec<Vec<usize>>,
}

impl PlanePointSet {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    /// Indices into [`PlanePointSet::points`], one list per orbit, in Frobenius order.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// The first point of each orbit.
    pub fn representatives(&self) -> Vec<&PlanePoint> {
        self.orbits.iter().map(|o| &self.points[o[0]]).collect()
    }

    /// `perm[i]` is the index of the Frobenius image of point `i`.
    pub fn frobenius_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.points.len()];
        for orbit in &self.orbits {
            for (k, &i) in orbit.iter().enumerate() {
                perm[i] = orbit[(k + 1) % orbit.len()];
            }
        }
        perm
    }

    pub fn permutation_signature(&self) -> PermutationSignature {
        let mut order = 1u32;
        let mut fixed = 0;
        let mut sign = 1i8;
        for o in &self.orbits {
            let len = o.len() as u32;
            order = lcm(order, len);
            if len == 1 {
                fixed += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        PermutationSignature { order, fixed, sign }
    }

    pub fn check_general_position(&self) -> GeneralPosition {
        check_points(&self.ctx, &self.points)
    }

    /// Field header followed by one line per orbit representative.
    pub fn to_text(&self) -> String {
        let mut out = self.ctx.header();
        out.push('\n');
        for rep in self.representatives() {
            out.push_str(&rep.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty point-set file"))?;
        let ctx = io::parse_field_header(hl, header)?;
        let mut seeds = Vec::new();
        for (no, line) in lines {
            let parts: Vec<&str> = line.trim().split(';').collect();
            if parts.len() != 3 {
                return Err(ParseError::new(no, 1, "expected three `;`-separated coordinates"));
            }
            let mut coords = Vec::with_capacity(3);
            for part in parts {
                let c: Vec<u32> = io::parse_list(line, part, no)?;
                let e = ctx
                    .elem(&c)
                    .map_err(|e| ParseError::new(no, io::column_of(line, part), e.to_string()))?;
                coords.push(e);
            }
            let coords: [FqElem; 3] = coords.try_into().expect("three coordinates");
            let pt = PlanePoint::new(&ctx, coords).map_err(|e| ParseError::new(no, 1, e.to_string()))?;
            seeds.push(pt);
        }
        galois_closure(&seeds, &ctx).map_err(|e| ParseError::new(1, 1, e.to_string()))
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Union of the Frobenius orbits of `seeds`, which must contain exactly eight points.
pub fn galois_closure(seeds: &[PlanePoint], ctx: &FieldCtx) -> Result<PlanePointSet, GeomError> {
    let mut points: Vec<PlanePoint> = Vec::new();
    let mut orbits = Vec::new();
    for (i, seed) in seeds.iter().enumerate() {
        if points.contains(seed) {
            return Err(GeomError::DuplicateSeed(i));
        }
        let orbit = frobenius_orbit(ctx, seed);
        let start = points.len();
        orbits.push((start..start + orbit.len()).collect());
        points.extend(orbit);
    }
    if points.len() != 8 {
        return Err(GeomError::ClosureSize(points.len()));
    }
    Ok(PlanePointSet { ctx: ctx.clone(), points, orbits })
}

/// Exponent triples of degree-`d` plane monomials in graded reverse
/// lexicographic order (`x0 > x1 > x2`), largest first.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for c in 0..=d {
        for b in 0..=d - c {
            out.push([d - b - c, b, c]);
        }
    }
    out
}

fn binomial_mod(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    (num % p as u128) as u32
}

/// Value at `pt` of the Hasse derivative of the monomial `x^e` of orders
/// `(i, j)` in the two affine coordinates of the point's chart.
pub fn hasse_value(ctx: &FieldCtx, pt: &PlanePoint, e: [u32; 3], order: (u32, u32)) -> FqElem {
    let chart = pt.chart();
    let (a, b) = match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (i, j) = order;
    if e[a] < i || e[b] < j {
        return ctx.zero();
    }
    let coeff = ctx.prime().mul(&binomial_mod(e[a], i, ctx.p()), &binomial_mod(e[b], j, ctx.p()));
    if coeff == 0 {
        return ctx.zero();
    }
    let u = ctx.pow(&pt.coords[a], (e[a] - i) as u64);
    let v = ctx.pow(&pt.coords[b], (e[b] - j) as u64);
    ctx.mul(&ctx.from_prime(coeff), &ctx.mul(&u, &v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionViolation {
    /// Three collinear points.
    Collinear([usize; 3]),
    /// Six points on a conic.
    Conic([usize; 6]),
    /// A cubic through all eight points singular at the given one.
    SingularCubic(usize),
}

impl fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Collinear(ix) => write!(f, "collinear points {ix:?}"),
            Self::Conic(ix) => write!(f, "points {ix:?} lie on a conic"),
            Self::SingularCubic(i) => write!(f, "a cubic through all points is singular at point {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralPosition {
    Pass,
    Fail(PositionViolation),
}

impl GeneralPosition {
    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn eval_row(ctx: &FieldCtx, pt: &PlanePoint, monos: &[[u32; 3]]) -> Vec<FqElem> {
    monos.iter().map(|&e| hasse_value(ctx, pt, e, (0, 0))).collect()
}

/// General-position test for up to eight points.
///
/// Lines are checked for every triple, conics for every six points, and the
/// singular-cubic condition only once all eight points are present.
pub fn check_points(ctx: &FieldCtx, points: &[PlanePoint]) -> GeneralPosition {
    let lines = monomials(1);
    for t in combinations(points.len(), 3) {
        let m: Vec<_> = t.iter().map(|&i| eval_row(ctx, &points[i], &lines)).collect();
        if linalg::rank(ctx, &m) < 3 {
            return GeneralPosition::Fail(PositionViolation::Collinear([t[0], t[1], t[2]]));
        }
    }
    let conics = monomials(2);
    for s in combinations(points.len(), 6) {
        let m: Vec<_> = s.iter().map(|&i| eval_row(ctx, &points[i], &conics)).collect();
        if linalg::rank(ctx, &m) < 6 {
            return GeneralPosition::Fail(PositionViolation::Conic(s.try_into().expect("six indices")));
        }
    }
    if points.len() == 8 {
        let cubics = monomials(3);
        let base: Vec<_> = points.iter().map(|p| eval_row(ctx, p, &cubics)).collect();
        for (i, pt) in points.iter().enumerate() {
            let mut m = base.clone();
            for order in [(1, 0), (0, 1)] {
                m.push(cubics.iter().map(|&e| hasse_value(ctx, pt, e, order)).collect());
            }
            if linalg::rank(ctx, &m) < 10 {
                return GeneralPosition::Fail(PositionViolation::SingularCubic(i));
            }
        }
    }
    GeneralPosition::Pass
}
