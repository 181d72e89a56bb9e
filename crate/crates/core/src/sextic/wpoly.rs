use std::collections::BTreeMap;

use super::{Ring, SexticError, WeightedSextic};

/// Polynomial in `x, y, z, w` over `F_p`, used for changes of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPoly {
    p: u32,
    terms: BTreeMap<[u32; 4], u32>,
}

impl WPoly {
    pub fn zero(p: u32) -> Self {
        Self { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::term(p, [0; 4], c)
    }

    pub fn term(p: u32, e: [u32; 4], c: u32) -> Self {
        let mut out = Self::zero(p);
        out.add_term(e, c % p);
        out
    }

    /// The variable with index `i` (`x, y, z, w` = 0, 1, 2, 3).
    pub fn var(p: u32, i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::term(p, e, 1)
    }

    pub fn from_sextic(f: &WeightedSextic) -> Result<Self, SexticError> {
        let p = f.prime()?;
        let mut out = Self::zero(p);
        for (e, c) in f.terms() {
            out.add_term(e, c as u32);
        }
        Ok(out)
    }

    /// Back to a sextic; every term must have weighted degree 6.
    pub fn to_sextic(&self) -> Result<WeightedSextic, SexticError> {
        let terms: Vec<_> = self.terms.iter().map(|(&e, &c)| (e, c as i128)).collect();
        WeightedSextic::from_terms(Ring::Fp(self.p), &terms)
    }

    fn add_term(&mut self, e: [u32; 4], c: u32) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: [u32; 4]) -> u32 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.p);
        for (&e, &a) in &self.terms {
            out.add_term(e, ((a as u64 * c as u64) % self.p as u64) as u32);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, ((ca as u64 * cb as u64) % self.p as u64) as u32);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.p, 1), |acc, _| acc.mul(self))
    }

    /// Replaces each variable by the corresponding entry of `images`.
    pub fn substitute(&self, images: &[WPoly; 4]) -> Self {
        let mut out = Self::zero(self.p);
        for (e, &c) in &self.terms {
            let mut t = Self::constant(self.p, c);
            for (i, img) in images.iter().enumerate() {
                t = t.mul(&img.pow(e[i]));
            }
            out = out.add(&t);
        }
        out
    }

    /// Sum of `c * m / v^k` over the terms `c * m` of exact degree `k` in variable `v`.
    pub fn coefficient_of(&self, v: usize, k: u32) -> Self {
        let mut out = Self::zero(self.p);
        for (&e, &c) in &self.terms {
            if e[v] == k {
                let mut e2 = e;
                e2[v] = 0;
                out.add_term(e2, c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_substitution() {
        let f = catalog::order6_relation();
        let g = WPoly::from_sextic(&f).unwrap();
        let ids = [0, 1, 2, 3].map(|i| WPoly::var(5, i));
        assert_eq!(g.substitute(&ids).to_sextic().unwrap(), f);
    }

    #[test]
    fn slices() {
        let g = WPoly::from_sextic(&catalog::order6_relation()).unwrap();
        let lin = g.coefficient_of(3, 1);
        assert_eq!(lin.coeff([3, 0, 0, 0]), 2);
        assert_eq!(lin.coeff([1, 0, 1, 0]), 1);
    }
}
