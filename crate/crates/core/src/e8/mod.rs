//! The lattice `Z l + Z e1 + ... + Z e8` with `l^2 = 1`, `ei^2 = -1`, the
//! orthogonal complement of `K = -3l + e1 + ... + e8` (an E8 lattice under the
//! negated form), and its automorphism group.

pub mod schreier;

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use schreier::{Perm, StabilizerChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum E8Error {
    #[error("matrix does not preserve the Gram form")]
    NotIsometry,
    #[error("no power up to {0} is the identity")]
    OrderCap(u32),
}

/// Maximal element order accepted by [`element_invariants`].
pub const ORDER_CAP: u32 = 30;

/// Coefficients of `l, e1, ..., e8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PicVector(pub [i64; 9]);

impl PicVector {
    pub fn intersect(&self, other: &Self) -> i64 {
        self.0[0] * other.0[0] - (1..9).map(|i| self.0[i] * other.0[i]).sum::<i64>()
    }

    pub fn anticanonical() -> Self {
        Self([3, -1, -1, -1, -1, -1, -1, -1, -1])
    }

    /// Coordinates in the simple-root basis, if the vector is orthogonal to `K`.
    pub fn to_coords(&self) -> Option<[i64; 8]> {
        if self.intersect(&Self::anticanonical()) != 0 {
            return None;
        }
        let a = self.0[0];
        // b' = b - a (1,1,1,0,...,0) has coordinate sum 0 and is handled by the A7 part
        let mut partial = 0;
        let mut c = [0i64; 8];
        for k in 0..7 {
            let b = -self.0[k + 1] - if k < 3 { a } else { 0 };
            partial += b;
            c[k] = -partial;
        }
        c[7] = a;
        Some(c)
    }

    pub fn from_coords(c: &[i64; 8]) -> Self {
        let mut v = [0i64; 9];
        for (k, r) in simple_roots().iter().enumerate() {
            for i in 0..9 {
                v[i] += c[k] * r.0[i];
            }
        }
        Self(v)
    }
}

/// `e1-e2, ..., e7-e8, l-e1-e2-e3`.
pub fn simple_roots() -> [PicVector; 8] {
    let mut out = [PicVector([0; 9]); 8];
    for (k, r) in out.iter_mut().enumerate().take(7) {
        r.0[k + 1] = 1;
        r.0[k + 2] = -1;
    }
    out[7] = PicVector([1, -1, -1, -1, 0, 0, 0, 0, 0]);
    out
}

pub type Gram = [[i64; 8]; 8];

/// The negated intersection form on the simple roots.
pub fn gram() -> Gram {
    let r = simple_roots();
    let mut g = [[0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            g[i][j] = -r[i].intersect(&r[j]);
        }
    }
    g
}

pub fn pair(g: &Gram, u: &[i64; 8], v: &[i64; 8]) -> i64 {
    (0..8).map(|i| (0..8).map(|j| u[i] * g[i][j] * v[j]).sum::<i64>()).sum()
}

/// The 240 vectors `a l - sum bi ei` with `3a = sum bi` and self-intersection -2.
pub fn roots() -> Vec<PicVector> {
    let mut out = Vec::with_capacity(240);
    let mut b = [-2i64; 8];
    loop {
        let s: i64 = b.iter().sum();
        if s % 3 == 0 {
            let a = s / 3;
            let v = PicVector([a, -b[0], -b[1], -b[2], -b[3], -b[4], -b[5], -b[6], -b[7]]);
            if v.intersect(&v) == -2 {
                out.push(v);
            }
        }
        let mut i = 0;
        while i < 8 && b[i] == 2 {
            b[i] = -2;
            i += 1;
        }
        if i == 8 {
            break;
        }
        b[i] += 1;
    }
    out
}

pub fn gram_and_roots() -> (Gram, Vec<PicVector>) {
    (gram(), roots())
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn determinant(m: &Gram) -> i64 {
    let mut a = m.map(|r| r.map(|x| x as i128));
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..8 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..8).find(|&r| a[r][k] != 0) else { return 0 };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..8 {
            for j in k + 1..8 {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[7][7]) as i64
}

/// An integer 8x8 matrix acting on simple-root coordinates; column `j` is the
/// image of the `j`-th simple root.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeAut(pub [[i64; 8]; 8]);

impl fmt::Debug for LatticeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatticeAut[")?;
        for row in &self.0 {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl LatticeAut {
    pub fn identity() -> Self {
        let mut m = [[0; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self(m)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.map(|r| r.map(|x| -x)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                m[i][j] = (0..8).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Self(m)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[i64; 8]) -> [i64; 8] {
        let mut out = [0; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (0..8).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn trace(&self) -> i64 {
        (0..8).map(|i| self.0[i][i]).sum()
    }

    pub fn preserves(&self, g: &Gram) -> bool {
        (0..8).all(|i| {
            (0..8).all(|j| {
                let ci: [i64; 8] = std::array::from_fn(|k| self.0[k][i]);
                let cj: [i64; 8] = std::array::from_fn(|k| self.0[k][j]);
                pair(g, &ci, &cj) == g[i][j]
            })
        })
    }

    /// The automorphism sending each simple root `r` to `image(r)`.
    pub fn from_images(image: impl Fn(&PicVector) -> PicVector) -> Self {
        let mut m = [[0; 8]; 8];
        for (j, r) in simple_roots().iter().enumerate() {
            let c = image(r).to_coords().expect("image orthogonal to K");
            for i in 0..8 {
                m[i][j] = c[i];
            }
        }
        Self(m)
    }
}

/// Fixes `l` and sends `e_i` to `e_sigma(i)` (0-based).
pub fn perm_to_aut(sigma: &[usize; 8]) -> LatticeAut {
    LatticeAut::from_images(|v| {
        let mut out = [0i64; 9];
        out[0] = v.0[0];
        for i in 0..8 {
            out[sigma[i] + 1] += v.0[i + 1];
        }
        PicVector(out)
    })
}

/// `v -> v - <v, r> r` for a root `r` given in coordinates.
pub fn reflection(g: &Gram, r: &[i64; 8]) -> LatticeAut {
    let mut m = LatticeAut::identity().0;
    for j in 0..8 {
        let mut ej = [0i64; 8];
        ej[j] = 1;
        let t = pair(g, &ej, r);
        for i in 0..8 {
            m[i][j] -= t * r[i];
        }
    }
    LatticeAut(m)
}

/// Characteristic polynomial `det(x I - M)`, ascending coefficients, by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(m: &LatticeAut) -> [i64; 9] {
    let a = m.0.map(|r| r.map(|x| x as i128));
    let mut c = [0i128; 9];
    c[8] = 1;
    let mut mk = [[0i128; 8]; 8];
    for k in 1..=8 {
        // mk <- a * mk + c[9-k] I
        let mut next = [[0i128; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                next[i][j] = (0..8).map(|l| a[i][l] * mk[l][j]).sum::<i128>();
            }
            next[i][i] += c[9 - k];
        }
        mk = next;
        let tr: i128 = (0..8).map(|i| (0..8).map(|l| a[i][l] * mk[l][i]).sum::<i128>()).sum();
        c[8 - k] = -tr / k as i128;
    }
    c.map(|x| x as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: u32,
    pub trace: i64,
    pub det: i64,
    /// Ascending coefficients of the characteristic polynomial.
    pub char_poly: [i64; 9],
}

pub fn element_invariants(m: &LatticeAut) -> Result<Invariants, E8Error> {
    if !m.preserves(&gram()) {
        return Err(E8Error::NotIsometry);
    }
    let id = LatticeAut::identity();
    let mut power = *m;
    let mut order = 1;
    while power != id {
        if order >= ORDER_CAP {
            return Err(E8Error::OrderCap(ORDER_CAP));
        }
        power = power.mul(m);
        order += 1;
    }
    let cp = char_poly(m);
    Ok(Invariants { order, trace: m.trace(), det: cp[0], char_poly: cp })
}

/// Ascending coefficients of a product of integer polynomials.
pub fn poly_product(factors: &[&[i64]]) -> Vec<i64> {
    factors.iter().fold(vec![1i64], |acc, f| {
        let mut out = vec![0; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    })
}

/// Root coordinates and, for each simple reflection, the permutation of roots it induces.
pub fn root_permutations(gens: &[LatticeAut]) -> (Vec<[i64; 8]>, Vec<Perm>) {
    let coords: Vec<[i64; 8]> = roots().iter().map(|r| r.to_coords().expect("root in K-perp")).collect();
    let index: HashMap<[i64; 8], u32> = coords.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
    let perms = gens.iter().map(|m| coords.iter().map(|c| index[&m.apply(c)]).collect()).collect();
    (coords, perms)
}

pub fn simple_reflections() -> Vec<LatticeAut> {
    let g = gram();
    (0..8)
        .map(|k| {
            let mut r = [0i64; 8];
            r[k] = 1;
            reflection(&g, &r)
        })
        .collect()
}

/// Order of the group generated by `gens`, through its action on the 240 roots.
pub fn group_order(gens: &[LatticeAut]) -> u128 {
    let (coords, perms) = root_permutations(gens);
    StabilizerChain::new(coords.len(), &perms).order()
}

pub fn weyl_group_order() -> u128 {
    group_order(&simple_reflections())
}

/// Root pairs at 120 degrees, the A2 subsystems they span, and the distinct
/// order-3 rotations `s_r s_s` and their squares.
#[derive(Debug, Clone)]
pub struct Census {
    pub pairs: usize,
    /// Each subsystem as a generating pair of root coordinates.
    pub subsystems: Vec<([i64; 8], [i64; 8])>,
    pub elements: Vec<LatticeAut>,
}

pub fn order3_class_census() -> Census {
    let g = gram();
    let coords: Vec<[i64; 8]> = roots().iter().map(|r| r.to_coords().expect("root")).collect();
    let index: HashMap<[i64; 8], usize> = coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let neg = |v: &[i64; 8]| v.map(|x| -x);
    let mut pairs = 0;
    let mut seen: HashSet<[usize; 6]> = HashSet::new();
    let mut subsystems = Vec::new();
    let mut elements = Vec::new();
    let mut distinct: HashSet<LatticeAut> = HashSet::new();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let (r, s) = (&coords[i], &coords[j]);
            if pair(&g, r, s) != -1 {
                continue;
            }
            pairs += 1;
            let sum: [i64; 8] = std::array::from_fn(|k| r[k] + s[k]);
            let mut key = [r, s, &sum].map(|v| index[v]).to_vec();
            key.extend([neg(r), neg(s), neg(&sum)].iter().map(|v| index[v]));
            key.sort_unstable();
            let key: [usize; 6] = key.try_into().expect("six roots");
            if !seen.insert(key) {
                continue;
            }
            subsystems.push((*r, *s));
            let rot = reflection(&g, r).mul(&reflection(&g, s));
            for m in [rot, rot.mul(&rot)] {
                if distinct.insert(m) {
                    elements.push(m);
                }
            }
        }
    }
    Census { pairs, subsystems, elements }
}

/// An order-3 element of trace -4: the product of rotations in four
/// mutually orthogonal A2 subsystems, found by backtracking over `subsystems`.
pub fn trace_minus4_element(subsystems: &[([i64; 8], [i64; 8])]) -> Option<LatticeAut> {
    let g = gram();
    let orthogonal = |a: &([i64; 8], [i64; 8]), b: &([i64; 8], [i64; 8])| {
        [a.0, a.1].iter().all(|u| [b.0, b.1].iter().all(|v| pair(&g, u, v) == 0))
    };
    fn search(
        start: usize,
        chosen: &mut Vec<usize>,
        subs: &[([i64; 8], [i64; 8])],
        ok: &dyn Fn(&([i64; 8], [i64; 8]), &([i64; 8], [i64; 8])) -> bool,
    ) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for i in start..subs.len() {
            if chosen.iter().all(|&c| ok(&subs[c], &subs[i])) {
                chosen.push(i);
                if search(i + 1, chosen, subs, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !search(0, &mut chosen, subsystems, &orthogonal) {
        return None;
    }
    Some(chosen.iter().fold(LatticeAut::identity(), |acc, &i| {
        let (r, s) = &subsystems[i];
        acc.mul(&reflection(&g, r).mul(&reflection(&g, s)))
    }))
}

/// Which of the four maximality conditions some power of a listed element meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CriterionReport {
    pub order7: bool,
    pub order3_trace5: bool,
    pub order3_trace_minus4: bool,
    pub det_minus1: bool,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.order7 && self.order3_trace5 && self.order3_trace_minus4 && self.det_minus1
    }

    pub fn lines(&self) -> Vec<String> {
        let mark = |b: bool| if b { "met" } else { "unmet" };
        vec![
            format!("condition order7={}", mark(self.order7)),
            format!("condition order3_trace5={}", mark(self.order3_trace5)),
            format!("condition order3_trace-4={}", mark(self.order3_trace_minus4)),
            format!("condition det-1={}", mark(self.det_minus1)),
        ]
    }
}

pub fn criterion_check(elements: &[LatticeAut]) -> Result<CriterionReport, E8Error> {
    let mut report = CriterionReport::default();
    for m in elements {
        let inv = element_invariants(m)?;
        for k in 1..=inv.order {
            let pk = element_invariants(&m.pow(k))?;
            report.order7 |= pk.order == 7;
            report.order3_trace5 |= pk.order == 3 && pk.trace == 5;
            report.order3_trace_minus4 |= pk.order == 3 && pk.trace == -4;
            report.det_minus1 |= pk.det == -1;
        }
    }
    Ok(report)
}
