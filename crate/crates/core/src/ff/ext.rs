use std::fmt;

use super::{factor, is_prime, Field, FieldError, PrimeField, UniPoly};

/// Element of `F_{p^n}` in the power basis of the modulus root.
///
/// Always exactly `n` coefficients, each reduced mod `p`. Elements do not
/// carry their field; [`FieldCtx`] checks the length on the fallible entry
/// points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(Vec<u32>);

impl FqElem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    /// Whether the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.0.iter().skip(1).all(|&c| c == 0)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Comma-separated ascending coefficients, trailing zeros dropped.
impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        let parts: Vec<String> = self.0[..=last].iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The field `F_p[t]/(modulus)`.
#[derive(Clone)]
pub struct FieldCtx {
    prime: PrimeField,
    n: usize,
    /// Monic, ascending, length `n + 1`.
    modulus: Vec<u32>,
    size: u64,
    squares: Option<Vec<u64>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.header())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `F_p[t]/(modulus)`; the modulus is given ascending and must be
    /// monic and irreducible.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if p == 2 || !is_prime(p) {
            return Err(FieldError::BadCharacteristic(p));
        }
        let prime = PrimeField::new(p)?;
        if let Some(&v) = modulus.iter().find(|&&c| c >= p) {
            return Err(FieldError::Unreduced { value: v, p });
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(FieldError::ModulusNotMonic);
        }
        let poly = UniPoly::from_coeffs(&prime, modulus.clone());
        if !factor::is_irreducible(&prime, &poly) {
            return Err(FieldError::ModulusReducible(p));
        }
        let n = modulus.len() - 1;
        let size = (p as u64).pow(n as u32);
        Ok(Self { prime, n, modulus, size, squares: None })
    }

    /// `F_{p^n}` with the default modulus from [`super::find_irreducible`].
    pub fn with_degree(p: u32, n: usize) -> Result<Self, FieldError> {
        let prime = PrimeField::new(p)?;
        let m = factor::find_irreducible(&prime, n);
        Self::new(p, m.coeffs().to_vec())
    }

    /// The prime field itself, presented as `F_p[t]/(t)`.
    pub fn prime_field(p: u32) -> Result<Self, FieldError> {
        Self::new(p, vec![0, 1])
    }

    /// Attaches a table of squares so [`FieldCtx::quadratic_character`] is a lookup.
    pub fn with_square_table(mut self) -> Self {
        let q = self.size;
        let mut bits = vec![0u64; (q as usize).div_ceil(64)];
        for i in 1..q {
            let a = self.element(i);
            let s = self.index_of(&self.mul(&a, &a)) as usize;
            bits[s / 64] |= 1 << (s % 64);
        }
        self.squares = Some(bits);
        self
    }

    pub fn p(&self) -> u32 {
        self.prime.p()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> &PrimeField {
        &self.prime
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `field p=<p> n=<n> poly=<c0,...,cn>`
    pub fn header(&self) -> String {
        let poly: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("field p={} n={} poly={}", self.p(), self.n, poly.join(","))
    }

    /// Validated element from ascending coefficients; shorter inputs are zero-padded.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FqElem, FieldError> {
        if coeffs.len() > self.n {
            let extra_nonzero = coeffs[self.n..].iter().any(|&c| c != 0);
            if extra_nonzero {
                return Err(FieldError::ContextMismatch { expected: self.n, got: coeffs.len() });
            }
        }
        if let Some(&v) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(FieldError::Unreduced { value: v, p: self.p() });
        }
        let mut v = coeffs.iter().take(self.n).copied().collect::<Vec<_>>();
        v.resize(self.n, 0);
        Ok(FqElem(v))
    }

    /// Embeds an element of the prime field.
    pub fn from_prime(&self, c: u32) -> FqElem {
        let mut v = vec![0; self.n];
        v[0] = c % self.p();
        FqElem(v)
    }

    /// The class of `t`, a root of the modulus.
    pub fn generator(&self) -> FqElem {
        if self.n == 1 {
            return self.from_prime(self.prime.neg(&self.modulus[0]));
        }
        let mut v = vec![0; self.n];
        v[1] = 1;
        FqElem(v)
    }

    fn check(&self, a: &FqElem) -> Result<(), FieldError> {
        if a.0.len() != self.n {
            return Err(FieldError::ContextMismatch { expected: self.n, got: a.0.len() });
        }
        if let Some(&v) = a.0.iter().find(|&&c| c >= self.p()) {
            return Err(FieldError::Unreduced { value: v, p: self.p() });
        }
        Ok(())
    }

    /// Checked binary arithmetic.
    pub fn field_arith(&self, a: &FqElem, b: &FqElem, op: ArithOp) -> Result<FqElem, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b).ok_or(FieldError::DivisionByZero)?,
        })
    }

    /// `a^(p^(i*base_degree))`: the Frobenius of the subfield of degree
    /// `base_degree`, iterated `i` times.
    pub fn frobenius(&self, a: &FqElem, i: u32, base_degree: u32) -> Result<FqElem, FieldError> {
        self.check(a)?;
        if base_degree == 0 || self.n as u32 % base_degree != 0 {
            return Err(FieldError::BaseDegree { base: base_degree, n: self.n as u32 });
        }
        let steps = (i * base_degree) % self.n as u32;
        let mut out = a.clone();
        for _ in 0..steps {
            out = self.pow(&out, self.p() as u64);
        }
        Ok(out)
    }

    /// The absolute Frobenius `a ↦ a^p`.
    pub fn frob(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p() as u64)
    }

    /// `0`, `+1` or `-1`; uses the attached square table when present.
    pub fn quadratic_character(&self, a: &FqElem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        match &self.squares {
            Some(bits) => {
                let i = self.index_of(a) as usize;
                if bits[i / 64] >> (i % 64) & 1 == 1 {
                    1
                } else {
                    -1
                }
            }
            None => super::quadratic_character(self, a),
        }
    }

    pub fn has_square_table(&self) -> bool {
        self.squares.is_some()
    }
}

impl Field for FieldCtx {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(vec![0; self.n])
    }

    fn one(&self) -> FqElem {
        self.from_prime(1)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| self.prime.add(x, y)).collect())
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(a.0.iter().zip(&b.0).map(|(x, y)| self.prime.sub(x, y)).collect())
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|x| self.prime.neg(x)).collect())
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let n = self.n;
        let p = self.p() as u64;
        if n == 1 {
            return FqElem(vec![((a.0[0] as u64 * b.0[0] as u64) % p) as u32]);
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            // t^n = -(m_0 + ... + m_{n-1} t^{n-1})
            for j in 0..n {
                let m = self.modulus[j] as u64;
                if m != 0 {
                    prod[i - n + j] = (prod[i - n + j] + c * (p - m)) % p;
                }
            }
        }
        FqElem(prod[..n].iter().map(|&c| c as u32).collect())
    }

    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.size - 2))
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn from_i64(&self, v: i64) -> FqElem {
        self.from_prime(self.prime.reduce(v))
    }

    fn characteristic(&self) -> u32 {
        self.p()
    }

    fn size(&self) -> u64 {
        self.size
    }

    fn element(&self, mut index: u64) -> FqElem {
        let p = self.p() as u64;
        let mut v = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            v.push((index % p) as u32);
            index /= p;
        }
        FqElem(v)
    }

    fn index_of(&self, a: &FqElem) -> u64 {
        let p = self.p() as u64;
        a.0.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
    }

    fn pth_root(&self, a: &FqElem) -> FqElem {
        let mut out = a.clone();
        for _ in 1..self.n {
            out = self.frob(&out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3_7() -> FieldCtx {
        FieldCtx::new(3, vec![1, 0, 2, 0, 0, 0, 0, 1]).unwrap()
    }

    fn f5_6() -> FieldCtx {
        FieldCtx::new(5, vec![2, 0, 1, 4, 1, 0, 1]).unwrap()
    }

    /// Schoolbook reduction of t^k modulo a monic modulus, independent of `mul`.
    fn reduce_monomial(p: u32, modulus: &[u32], k: usize) -> Vec<u32> {
        let n = modulus.len() - 1;
        let mut r = vec![0i64; k.max(n) + 1];
        r[k] = 1;
        for i in (n..=k).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for j in 0..=n {
                r[i - n + j] -= c * modulus[j] as i64;
            }
        }
        r[..n].iter().map(|&c| c.rem_euclid(p as i64) as u32).collect()
    }

    #[test]
    fn alpha_seventh_power() {
        let f = f3_7();
        let alpha = f.generator();
        let a7 = f.pow(&alpha, 7);
        // t^7 = -2t^2 - 1 = t^2 + 2
        assert_eq!(a7.coeffs(), &[2, 0, 1, 0, 0, 0, 0]);
        assert_eq!(a7.coeffs(), reduce_monomial(3, f.modulus(), 7).as_slice());
        for k in 0..20 {
            assert_eq!(f.pow(&alpha, k as u64).coeffs(), reduce_monomial(3, f.modulus(), k).as_slice());
        }
    }

    #[test]
    fn small_prime_product() {
        let f7 = FieldCtx::prime_field(7).unwrap();
        let three = f7.from_prime(3);
        assert_eq!(f7.mul(&three, &three), f7.from_prime(2));
    }

    #[test]
    fn arithmetic_errors() {
        let f = f3_7();
        let a = f.generator();
        assert_eq!(f.field_arith(&a, &f.zero(), ArithOp::Div), Err(FieldError::DivisionByZero));
        let other = f5_6().generator();
        assert!(matches!(
            f.field_arith(&a, &other, ArithOp::Add),
            Err(FieldError::ContextMismatch { .. })
        ));
        assert!(FieldCtx::new(5, vec![4, 0, 1]).is_err()); // t^2 - 1
        assert!(FieldCtx::new(3, vec![1, 0, 2]).is_err()); // not monic after reduction
    }

    #[test]
    fn frobenius_orders() {
        let f = f3_7();
        let alpha = f.generator();
        assert_eq!(f.frobenius(&alpha, 7, 1).unwrap(), alpha);
        assert_ne!(f.frobenius(&alpha, 1, 1).unwrap(), alpha);
        let c = f.from_prime(2);
        assert_eq!(f.frobenius(&c, 1, 1).unwrap(), c);

        let g = f5_6();
        let alpha = g.generator();
        let beta = g.pow(&alpha, 625 + 25 + 1);
        assert_eq!(g.frobenius(&beta, 2, 1).unwrap(), beta);
        assert_ne!(g.frobenius(&beta, 1, 1).unwrap(), beta);
        assert_eq!(g.frobenius(&beta, 1, 2).unwrap(), beta);
        assert!(g.frobenius(&beta, 1, 4).is_err());
    }

    #[test]
    fn character_counts_by_enumeration() {
        for f in [FieldCtx::with_degree(5, 2).unwrap(), FieldCtx::with_degree(3, 3).unwrap(), f5_6()] {
            let q = f.size();
            let plus = (1..q).filter(|&i| f.quadratic_character(&f.element(i)) == 1).count() as u64;
            assert_eq!(plus, (q - 1) / 2);
            let t = f.clone().with_square_table();
            for i in (0..q).step_by(7) {
                let a = f.element(i);
                assert_eq!(t.quadratic_character(&a), f.quadratic_character(&a));
            }
        }
    }

    #[test]
    fn enumeration_roundtrip() {
        let f = FieldCtx::with_degree(7, 2).unwrap();
        for i in 0..f.size() {
            assert_eq!(f.index_of(&f.element(i)), i);
        }
        let a = f.element(17);
        assert_eq!(f.frob(&f.pth_root(&a)), a);
    }

    fn arb_elem(f: &FieldCtx) -> impl Strategy<Value = FqElem> {
        let f = f.clone();
        (0..f.size()).prop_map(move |i| f.element(i))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_elem(&f5_6()), b in arb_elem(&f5_6()), c in arb_elem(&f5_6())) {
            let f = f5_6();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a.clone());
            if !f.is_zero(&a) {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn frobenius_is_automorphism(a in arb_elem(&f3_7()), b in arb_elem(&f3_7())) {
            let f = f3_7();
            prop_assert_eq!(f.frob(&f.mul(&a, &b)), f.mul(&f.frob(&a), &f.frob(&b)));
            prop_assert_eq!(f.frob(&f.add(&a, &b)), f.add(&f.frob(&a), &f.frob(&b)));
        }

        #[test]
        fn character_is_multiplicative(a in arb_elem(&f5_6()), b in arb_elem(&f5_6())) {
            let f = f5_6();
            prop_assume!(!f.is_zero(&a) && !f.is_zero(&b));
            let lhs = f.quadratic_character(&f.mul(&a, &b));
            prop_assert_eq!(lhs, f.quadratic_character(&a) * f.quadratic_character(&b));
        }
    }
}
