use super::Field;

/// Univariate polynomial over a [`Field`], coefficients ascending.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero. Arithmetic takes the field as an explicit argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> UniPoly<E> {
    pub fn from_coeffs<F: Field<Elem = E>>(field: &F, coeffs: Vec<E>) -> Self {
        let mut p = Self { coeffs };
        p.trim(field);
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The monomial `t`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        Self { coeffs: vec![field.zero(), field.one()] }
    }

    fn trim<F: Field<Elem = E>>(&mut self, field: &F) {
        while self.coeffs.last().is_some_and(|c| field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let coeffs = self.coeffs.iter().map(|a| field.mul(a, c)).collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(field, out)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = field.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = field.mul(&rem[i], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = field.sub(&rem[k], &field.mul(&c, d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(field, quot), Self::from_coeffs(field, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<Self> {
        self.div_rem(field, divisor).map(|(_, r)| r)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = field.inv(l).expect("nonzero leading coefficient");
                self.scale(field, &inv)
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(field, coeffs)
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod<F: Field<Elem = E>>(&self, field: &F, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(field, modulus).expect("nonzero modulus");
        let mut acc = Self::constant(field, field.one()).rem(field, modulus).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base).rem(field, modulus).unwrap();
            }
        }
        acc
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        let mut acc = Self::constant(field, field.one());
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;

    fn p(f: &PrimeField, c: &[u32]) -> UniPoly<u32> {
        UniPoly::from_coeffs(f, c.to_vec())
    }

    #[test]
    fn division_identity() {
        let f5 = PrimeField::new(5).unwrap();
        let a = p(&f5, &[1, 2, 3, 4, 1]);
        let b = p(&f5, &[2, 0, 1]);
        let (q, r) = a.div_rem(&f5, &b).unwrap();
        assert_eq!(q.mul(&f5, &b).add(&f5, &r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f7 = PrimeField::new(7).unwrap();
        let lin = p(&f7, &[3, 1]);
        let a = lin.mul(&f7, &p(&f7, &[1, 0, 1]));
        let b = lin.mul(&f7, &p(&f7, &[5, 1]));
        assert_eq!(a.gcd(&f7, &b), lin);
    }

    #[test]
    fn trims_zero_leading() {
        let f3 = PrimeField::new(3).unwrap();
        let a = p(&f3, &[1, 0, 0]);
        assert_eq!(a.degree(), Some(0));
        assert!(p(&f3, &[0, 0]).is_zero());
    }
}
