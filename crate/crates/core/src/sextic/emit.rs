use std::fmt;

use super::{format_terms, monomial_index, Ring, SexticError, WeightedSextic, W2, Z3};
use crate::io::{self, content_lines, ParseError};

/// `y^2 = x^3 + a(t) x^2 + b(t) x + c(t)`, coefficients ascending in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassData {
    pub ring: Ring,
    pub a: Vec<i128>,
    pub b: Vec<i128>,
    pub c: Vec<i128>,
}

impl WeierstrassData {
    pub fn to_text(&self) -> String {
        let list = |v: &[i128]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        format!(
            "weierstrass {}\na={}\nb={}\nc={}\n",
            self.ring.header_fields(),
            list(&self.a),
            list(&self.b),
            list(&self.c)
        )
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty Weierstrass file"))?;
        let fields = io::keyed_fields(hl, header.trim(), "weierstrass")?;
        let ring = Ring::from_fields(&fields, hl, header)?;
        let mut slots: [Option<Vec<i128>>; 3] = [None, None, None];
        for (no, line) in lines {
            let (key, value) = line
                .trim()
                .split_once('=')
                .ok_or_else(|| ParseError::new(no, 1, "expected `<a|b|c>=<list>`"))?;
            let (slot, len) = match key {
                "a" => (0, 3),
                "b" => (1, 5),
                "c" => (2, 7),
                _ => return Err(ParseError::new(no, 1, format!("unknown key `{key}`"))),
            };
            let v: Vec<i128> = io::parse_list(line, value, no)?;
            if v.len() != len {
                return Err(ParseError::new(no, io::column_of(line, value), format!("expected {len} coefficients")));
            }
            slots[slot] = Some(v);
        }
        let [Some(a), Some(b), Some(c)] = slots else {
            return Err(ParseError::new(1, 1, "missing one of a, b, c"));
        };
        Ok(Self { ring, a, b, c })
    }
}

/// `f = w^2 + z^3 + F2 z^2 + F4 z + F6` defines the same surface as
/// `w^2 = z^3 - F2 z^2 + F4 z - F6` after `z -> -z`; the Weierstrass data of
/// the fibration over the `t = x/y` line is read off from the latter.
pub fn emit_weierstrass(f: &WeightedSextic) -> Result<WeierstrassData, SexticError> {
    f.check_weierstrass_shape()?;
    let ring = f.ring();
    let neg = |v: Vec<i128>| v.into_iter().map(|c| ring.reduce(-c)).collect();
    Ok(WeierstrassData { ring, a: neg(f.binary_form(2)), b: f.binary_form(4), c: neg(f.binary_form(6)) })
}

/// Inverse of [`emit_weierstrass`].
pub fn from_weierstrass(data: &WeierstrassData) -> WeightedSextic {
    let mut coeffs = [0i128; 23];
    coeffs[W2] = 1;
    coeffs[Z3] = 1;
    for (d, v, sign) in [(2u32, &data.a, -1i128), (4, &data.b, 1), (6, &data.c, -1)] {
        for (i, &c) in v.iter().enumerate() {
            let i = i as u32;
            coeffs[monomial_index([i, d - i, 3 - d / 2, 0]).expect("weight 6")] = sign * c;
        }
    }
    WeightedSextic::from_coeffs(data.ring, coeffs)
}

/// The weighted plane sextic in `x, y, z` cut out on `w = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusFourCurve {
    pub ring: Ring,
    pub terms: Vec<([u32; 3], i128)>,
}

impl GenusFourCurve {
    pub fn to_text(&self) -> String {
        let mut out = format!("curve {}\n", self.ring.header_fields());
        for (e, c) in &self.terms {
            out.push_str(&format!("{},{},{} {}\n", e[0], e[1], e[2], c));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, 1, "empty curve file"))?;
        let fields = io::keyed_fields(hl, header.trim(), "curve")?;
        let ring = Ring::from_fields(&fields, hl, header)?;
        let mut terms = Vec::new();
        for (no, line) in lines {
            let mut parts = line.split_whitespace();
            let (Some(exp), Some(coeff), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(ParseError::new(no, 1, "expected `<ex>,<ey>,<ez> <coeff>`"));
            };
            let e: Vec<u32> = io::parse_list(line, exp, no)?;
            if e.len() != 3 || e[0] + e[1] + 2 * e[2] != 6 {
                return Err(ParseError::new(no, io::column_of(line, exp), "monomial does not have weighted degree 6"));
            }
            terms.push(([e[0], e[1], e[2]], io::parse_num(line, coeff, no)?));
        }
        Ok(Self { ring, terms })
    }
}

impl fmt::Display for GenusFourCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&["x", "y", "z"], self.terms.iter().map(|(e, c)| (&e[..], *c))))
    }
}

pub fn emit_genus4(f: &WeightedSextic) -> GenusFourCurve {
    let terms = f.terms().filter(|(e, _)| e[3] == 0).map(|(e, c)| ([e[0], e[1], e[2]], c)).collect();
    GenusFourCurve { ring: f.ring(), terms }
}
