//! Plane forms with prescribed multiplicity at the points of a set.
//!
//! Vanishing to order `m` is imposed through all Hasse derivatives of total
//! order below `m`, which stays correct when `m` exceeds the characteristic.
//! Conditions come from one point per Frobenius orbit; every condition with
//! values in the extension field is split into its coordinates over the
//! prime field, so kernels are computed over `F_p`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ff::{Field, FieldCtx, PrimeField};
use crate::geom::{hasse_value, monomials, PlanePoint, PlanePointSet};
use crate::io::{self, content_lines, ParseError};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinsysError {
    #[error("degree-{degree} piece with multiplicity {m} has dimension {got}, expected {expected}")]
    Dimension { degree: u32, m: u32, got: usize, expected: usize },
    #[error("monomial {0:?} has the wrong degree")]
    WrongDegree([u32; 3]),
}

/// A homogeneous form in `x0, x1, x2` over `F_p`, stored by nonzero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneForm {
    p: u32,
    degree: u32,
    terms: BTreeMap<[u32; 3], u32>,
}

impl PlaneForm {
    pub fn zero(p: u32, degree: u32) -> Self {
        Self { p, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(p: u32, degree: u32, terms: &[([u32; 3], u32)]) -> Result<Self, LinsysError> {
        let mut f = Self::zero(p, degree);
        for &(e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(LinsysError::WrongDegree(e));
            }
            f.add_term(e, c % p);
        }
        Ok(f)
    }

    /// The form whose coefficient on `monomials(degree)[i]` is `v[i]`.
    pub fn from_vector(p: u32, degree: u32, v: &[u32]) -> Self {
        let mut f = Self::zero(p, degree);
        for (e, &c) in monomials(degree).into_iter().zip(v) {
            f.add_term(e, c);
        }
        f
    }

    fn add_term(&mut self, e: [u32; 3], c: u32) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: [u32; 3]) -> u32 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], u32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Coefficients in the order of `monomials(degree)`.
    pub fn to_vector(&self) -> Vec<u32> {
        monomials(self.degree).into_iter().map(|e| self.coeff(e)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.degree + other.degree);
        let p = self.p as u64;
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                out.add_term(e, ((ca as u64 * cb as u64) % p) as u32);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.p, self.degree);
        for (&e, &a) in &self.terms {
            out.add_term(e, ((a as u64 * c as u64) % self.p as u64) as u32);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::from_terms(self.p, 0, &[([0, 0, 0], 1)]).expect("constant");
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Value at `pt` of the Hasse derivative of orders `order` in the point's chart.
    pub fn hasse_at(&self, ctx: &FieldCtx, pt: &PlanePoint, order: (u32, u32)) -> crate::ff::FqElem {
        self.terms.iter().fold(ctx.zero(), |acc, (&e, &c)| {
            ctx.add(&acc, &ctx.mul(&ctx.from_prime(c), &hasse_value(ctx, pt, e, order)))
        })
    }

    /// Whether the form vanishes to order at least `m` at `pt`.
    pub fn vanishes_to_order(&self, ctx: &FieldCtx, pt: &PlanePoint, m: u32) -> bool {
        derivative_orders(m).into_iter().all(|o| ctx.is_zero(&self.hasse_at(ctx, pt, o)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("form d={}\n", self.degree);
        for e in monomials(self.degree) {
            if let Some(c) = self.terms.get(&e) {
                out.push_str(&format!("{},{},{} {}\n", e[0], e[1], e[2], c));
            }
        }
        out
    }
}

impl fmt::Debug for PlaneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in monomials(self.degree) {
            let Some(&c) = self.terms.get(&e) else { continue };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{c}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Parses one or more `form d=<d>` blocks with coefficients in `F_p`.
pub fn parse_forms(text: &str, p: u32) -> Result<Vec<PlaneForm>, ParseError> {
    let mut forms: Vec<PlaneForm> = Vec::new();
    for (no, line) in content_lines(text) {
        if line.trim_start().starts_with("form") {
            let fields = io::keyed_fields(no, line.trim(), "form")?;
            let d: u32 = io::parse_num(line, io::lookup(&fields, "d", no)?, no)?;
            forms.push(PlaneForm::zero(p, d));
            continue;
        }
        let form = forms.last_mut().ok_or_else(|| ParseError::new(no, 1, "term before `form` header"))?;
        let mut parts = line.split_whitespace();
        let (Some(exp), Some(coeff), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::new(no, 1, "expected `<a>,<b>,<c> <coeff>`"));
        };
        let e: Vec<u32> = io::parse_list(line, exp, no)?;
        if e.len() != 3 || e.iter().sum::<u32>() != form.degree {
            return Err(ParseError::new(no, io::column_of(line, exp), format!("exponent must be 3 numbers summing to {}", form.degree)));
        }
        let c: Vec<u32> = io::parse_list(line, coeff, no)?;
        if c.len() != 1 || c[0] >= p {
            return Err(ParseError::new(no, io::column_of(line, coeff), format!("coefficient must be one element of F_{p}")));
        }
        form.add_term([e[0], e[1], e[2]], c[0]);
    }
    Ok(forms)
}

/// Hasse-derivative orders `(i, j)` with `i + j < m`.
fn derivative_orders(m: u32) -> Vec<(u32, u32)> {
    (0..m).flat_map(|s| (0..=s).map(move |j| (s - j, j))).collect()
}

/// Conditions over `F_p` for degree-`d` forms to vanish to order `m` at each
/// point of `reps` (and hence at their conjugates). Columns follow `monomials(d)`.
pub fn condition_matrix(ctx: &FieldCtx, reps: &[&PlanePoint], d: u32, m: u32) -> Matrix<u32> {
    let monos = monomials(d);
    let n = ctx.degree();
    let mut rows = Vec::new();
    for pt in reps {
        for order in derivative_orders(m) {
            let values: Vec<_> = monos.iter().map(|&e| hasse_value(ctx, pt, e, order)).collect();
            for k in 0..n {
                rows.push(values.iter().map(|v| v.coeffs()[k]).collect());
            }
        }
    }
    rows
}

pub fn vanishing_conditions(s: &PlanePointSet, d: u32, m: u32) -> Matrix<u32> {
    condition_matrix(s.ctx(), &s.representatives(), d, m)
}

/// Echelon basis of degree-`d` forms vanishing to order `m` at `reps`.
pub fn forms_with_multiplicity(ctx: &FieldCtx, reps: &[&PlanePoint], d: u32, m: u32) -> Vec<PlaneForm> {
    let field = PrimeField::new(ctx.p()).expect("context prime");
    let rows = condition_matrix(ctx, reps, d, m);
    let cols = monomials(d).len();
    linalg::kernel(&field, &rows, cols).into_iter().map(|v| PlaneForm::from_vector(ctx.p(), d, &v)).collect()
}

/// Basis of the degree-`3m` forms with multiplicity `m` at every point of `s`.
pub fn graded_piece_basis(s: &PlanePointSet, m: u32) -> Result<Vec<PlaneForm>, LinsysError> {
    let basis = forms_with_multiplicity(s.ctx(), &s.representatives(), 3 * m, m);
    let expected = (m * (m + 1) / 2 + 1) as usize;
    if basis.len() != expected {
        return Err(LinsysError::Dimension { degree: 3 * m, m, got: basis.len(), expected });
    }
    Ok(basis)
}

/// Rank over `F_p` of a list of forms of one degree.
pub fn forms_rank(forms: &[PlaneForm]) -> usize {
    let Some(first) = forms.first() else { return 0 };
    let field = PrimeField::new(first.p).expect("form prime");
    let rows: Matrix<u32> = forms.iter().map(|f| f.to_vector()).collect();
    linalg::rank(&field, &rows)
}

/// Whether `f` lies in the span of `basis`.
pub fn in_span(basis: &[PlaneForm], f: &PlaneForm) -> bool {
    let field = PrimeField::new(f.p).expect("form prime");
    let rows: Matrix<u32> = basis.iter().map(|b| b.to_vector()).collect();
    linalg::in_span(&field, &rows, &f.to_vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cubics_through_order7_set() {
        let s = catalog::order7_points();
        let basis = graded_piece_basis(&s, 1).unwrap();
        assert_eq!(basis.len(), 2);
        let published = catalog::order7_generators();
        assert_eq!(forms_rank(&basis), 2);
        for g in [&published.x, &published.y] {
            assert!(in_span(&basis, g));
        }
        let mut both = basis.clone();
        both.extend([published.x.clone(), published.y.clone()]);
        assert_eq!(forms_rank(&both), 2);
    }

    #[test]
    fn dimensions_up_to_six() {
        let s = catalog::order7_points();
        for m in 1..=6 {
            let b = graded_piece_basis(&s, m).unwrap();
            assert_eq!(b.len() as u32, m * (m + 1) / 2 + 1);
        }
        let rows = vanishing_conditions(&s, 18, 6);
        let field = PrimeField::new(3).unwrap();
        assert!(linalg::rank(&field, &rows) <= 8 * 21);
    }

    #[test]
    fn basis_vanishes_to_order() {
        let s = catalog::order6_points();
        for m in 1..=3 {
            for f in graded_piece_basis(&s, m).unwrap() {
                for pt in s.points() {
                    assert!(f.vanishes_to_order(s.ctx(), pt, m));
                }
            }
        }
    }

    #[test]
    fn squares_lie_in_next_piece() {
        let s = catalog::order6_points();
        let b1 = graded_piece_basis(&s, 1).unwrap();
        let b2 = graded_piece_basis(&s, 2).unwrap();
        assert_eq!(b2.len(), 4);
        for f in &b1 {
            assert!(in_span(&b2, &f.mul(f)));
        }
        let b3 = graded_piece_basis(&s, 3).unwrap();
        for f in &b1 {
            for g in &b2 {
                assert!(in_span(&b3, &f.mul(g)));
            }
        }
    }

    #[test]
    fn no_points_gives_all_cubics() {
        let ctx = FieldCtx::prime_field(5).unwrap();
        assert_eq!(forms_with_multiplicity(&ctx, &[], 3, 1).len(), 10);
    }

    #[test]
    fn form_text_roundtrip() {
        let g = catalog::order6_generators();
        let mut text = String::new();
        for f in [&g.x, &g.y, &g.z, &g.w] {
            text.push_str(&f.to_text());
        }
        let back = parse_forms(&text, 5).unwrap();
        assert_eq!(back, vec![g.x, g.y, g.z, g.w]);
        let err = parse_forms("form d=3\n1,1,0 2\n", 5).unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
    }
}
