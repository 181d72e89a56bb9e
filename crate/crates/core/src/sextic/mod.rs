//! Sextics in the weighted projective space `P(1,1,2,3)` with variables
//! `x, y, z, w` of weights 1, 1, 2, 3.

mod derive;
mod emit;
mod normalize;
mod smooth;
mod wpoly;

pub use derive::{derive_anticanonical, Derivation, Generators};
pub use emit::{emit_genus4, emit_weierstrass, from_weierstrass, GenusFourCurve, WeierstrassData};
pub use normalize::normalize_reduced;
pub use smooth::{smoothness_check, FiberWitness, Smoothness};
pub use wpoly::WPoly;

use std::fmt;

use thiserror::Error;

use crate::io::{self, content_lines, ParseError};
use crate::linsys::LinsysError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexticError {
    #[error("monomial {0:?} does not have weighted degree 6")]
    WrongWeight([u32; 4]),
    #[error("sextic is not in reduced form: {0}")]
    NotReduced(&'static str),
    #[error("characteristic {0} is not supported")]
    Characteristic(u32),
    #[error("operation needs coefficients in a prime field")]
    NeedsPrimeField,
    #[error("space of relations has dimension {0}, expected 1")]
    RelationDimension(usize),
    #[error("the w^2 coefficient of the relation vanishes")]
    MissingWSquare,
    #[error("generator check failed: {0}")]
    Generators(String),
    #[error(transparent)]
    Linsys(#[from] LinsysError),
}

/// Coefficient ring of a sextic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Fp(u32),
    Z,
}

impl Ring {
    pub fn reduce(&self, v: i128) -> i128 {
        match self {
            Ring::Fp(p) => v.rem_euclid(*p as i128),
            Ring::Z => v,
        }
    }

    pub fn prime(&self) -> Option<u32> {
        match self {
            Ring::Fp(p) => Some(*p),
            Ring::Z => None,
        }
    }

    fn header_fields(&self) -> String {
        match self {
            Ring::Fp(p) => format!("ring=Fp p={p}"),
            Ring::Z => "ring=Z".to_string(),
        }
    }

    fn from_fields(fields: &[(&str, &str)], line_no: usize, line: &str) -> Result<Self, ParseError> {
        match io::lookup(fields, "ring", line_no)? {
            "Z" => Ok(Ring::Z),
            "Fp" => {
                let p: u32 = io::parse_num(line, io::lookup(fields, "p", line_no)?, line_no)?;
                if !crate::ff::is_prime(p) || p == 2 {
                    return Err(ParseError::new(line_no, 1, format!("p={p} is not an odd prime")));
                }
                Ok(Ring::Fp(p))
            }
            other => Err(ParseError::new(line_no, io::column_of(line, other), format!("unknown ring `{other}`"))),
        }
    }
}

/// Exponents `[ex, ey, ez, ew]` of the 23 weighted-degree-6 monomials:
/// by increasing power of `w`, then of `z`, then by decreasing power of `x`.
pub const MONOMIALS: [[u32; 4]; 23] = {
    let mut out = [[0u32; 4]; 23];
    let mut i = 0;
    let mut ew = 0;
    while ew <= 2 {
        let mut ez = 0;
        while 2 * ez + 3 * ew <= 6 {
            let rest = 6 - 2 * ez - 3 * ew;
            let mut ey = 0;
            while ey <= rest {
                out[i] = [rest - ey, ey, ez, ew];
                i += 1;
                ey += 1;
            }
            ez += 1;
        }
        ew += 1;
    }
    out
};

pub fn monomial_index(e: [u32; 4]) -> Option<usize> {
    MONOMIALS.iter().position(|&m| m == e)
}

pub(crate) const W2: usize = 22;
pub(crate) const Z3: usize = 15;

/// A weighted sextic, stored as one coefficient per entry of [`MONOMIALS`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedSextic {
    ring: Ring,
    coeffs: [i128; 23],
}

impl WeightedSextic {
    pub fn zero(ring: Ring) -> Self {
        Self { ring, coeffs: [0; 23] }
    }

    pub fn from_terms(ring: Ring, terms: &[([u32; 4], i128)]) -> Result<Self, SexticError> {
        let mut f = Self::zero(ring);
        for &(e, c) in terms {
            let i = monomial_index(e).ok_or(SexticError::WrongWeight(e))?;
            f.coeffs[i] = ring.reduce(f.coeffs[i] + c);
        }
        Ok(f)
    }

    pub fn from_coeffs(ring: Ring, coeffs: [i128; 23]) -> Self {
        Self { ring, coeffs: coeffs.map(|c| ring.reduce(c)) }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[i128; 23] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 4]) -> i128 {
        monomial_index(e).map_or(0, |i| self.coeffs[i])
    }

    pub fn prime(&self) -> Result<u32, SexticError> {
        self.ring.prime().ok_or(SexticError::NeedsPrimeField)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = ([u32; 4], i128)> + '_ {
        MONOMIALS.iter().zip(self.coeffs.iter()).filter(|(_, &c)| c != 0).map(|(&e, &c)| (e, c))
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_coeffs(self.ring, self.coeffs.map(|a| a * c))
    }

    /// Reduction of an integer sextic modulo `p`.
    pub fn reduce_mod(&self, p: u32) -> Self {
        Self::from_coeffs(Ring::Fp(p), self.coeffs)
    }

    /// `w^2 + z^3 + F2 z^2 + F4 z + F6`: unit `w^2` and `z^3` coefficients and
    /// no other monomial involving `w`.
    pub fn check_weierstrass_shape(&self) -> Result<(), SexticError> {
        if self.coeffs[W2] != 1 {
            return Err(SexticError::NotReduced("w^2 coefficient is not 1"));
        }
        if self.coeffs[Z3] != 1 {
            return Err(SexticError::NotReduced("z^3 coefficient is not 1"));
        }
        if MONOMIALS.iter().zip(&self.coeffs).any(|(e, &c)| e[3] == 1 && c != 0) {
            return Err(SexticError::NotReduced("a monomial is linear in w"));
        }
        Ok(())
    }

    /// The Weierstrass shape, and over `F_p` with `p > 3` no `z^2` terms either.
    pub fn is_reduced(&self) -> bool {
        if self.check_weierstrass_shape().is_err() {
            return false;
        }
        match self.ring {
            Ring::Fp(p) if p > 3 => self.binary_form(2).iter().all(|&c| c == 0),
            _ => true,
        }
    }

    /// Coefficients of the binary form multiplying `z^(3 - d/2)`, ascending in
    /// `t` after setting `x = t, y = 1`.
    pub fn binary_form(&self, d: u32) -> Vec<i128> {
        let ez = 3 - d / 2;
        (0..=d).map(|i| self.coeff([i, d - i, ez, 0])).collect()
    }

    /// The sextic with `x` and `y` exchanged.
    pub fn swap_xy(&self) -> Self {
        let mut out = Self::zero(self.ring);
        for (e, c) in self.terms() {
            out.coeffs[monomial_index([e[1], e[0], e[2], e[3]]).expect("same weight")] = c;
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("sextic {}\n", self.ring.header_fields());
        for (e, c) in self.terms() {
            out.push_str(&format!("{},{},{},{} {}\n", e[0], e[1], e[2], e[3], c));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty sextic file"))?;
        let fields = io::keyed_fields(hl, header.trim(), "sextic")?;
        let ring = Ring::from_fields(&fields, hl, header)?;
        let mut f = Self::zero(ring);
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let (Some(exp), Some(coeff), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(ParseError::new(no, 1, "expected `<ex>,<ey>,<ez>,<ew> <coeff>`"));
            };
            let e: Vec<u32> = io::parse_list(line, exp, no)?;
            let col = io::column_of(line, exp);
            if e.len() != 4 {
                return Err(ParseError::new(no, col, "expected four exponents"));
            }
            let e = [e[0], e[1], e[2], e[3]];
            let i = monomial_index(e)
                .ok_or_else(|| ParseError::new(no, col, format!("monomial {e:?} does not have weighted degree 6")))?;
            let c: i128 = io::parse_num(line, coeff, no)?;
            if let Ring::Fp(p) = ring {
                if !(0..p as i128).contains(&c) {
                    return Err(ParseError::new(no, io::column_of(line, coeff), format!("coefficient not reduced mod {p}")));
                }
            }
            f.coeffs[i] = ring.reduce(f.coeffs[i] + c);
        }
        Ok(f)
    }
}

pub(crate) fn format_monomial(names: &[&str], e: &[u32]) -> String {
    names
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect()
}

pub(crate) fn format_terms<'a>(names: &[&str], terms: impl Iterator<Item = (&'a [u32], i128)>) -> String {
    let parts: Vec<String> = terms
        .map(|(e, c)| {
            let m = format_monomial(names, e);
            match (c, m.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => m,
                _ => format!("{c}{m}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for WeightedSextic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms().collect();
        write!(f, "{}", format_terms(&["x", "y", "z", "w"], terms.iter().map(|(e, c)| (&e[..], *c))))
    }
}

impl fmt::Debug for WeightedSextic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.ring)
    }
}
