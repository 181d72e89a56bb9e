use super::{prime_divisors, Field, FieldCtx, FqElem};

/// Discrete-log presentation of a small field for the counting loops.
///
/// Nonzero elements are stored as their logarithm to a fixed primitive
/// element; zero is [`LogTables::ZERO`]. Addition goes through a Zech
/// logarithm table and the quadratic character is the parity of the log.
#[derive(Debug, Clone)]
pub struct LogTables {
    q: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    half: u32,
}

impl LogTables {
    pub const ZERO: u32 = u32::MAX;

    /// Largest field accepted; the tables take three `u32` words per element.
    pub const MAX_SIZE: u64 = 1 << 26;

    pub fn new(ctx: &FieldCtx) -> Option<Self> {
        let q = ctx.size();
        if q > Self::MAX_SIZE {
            return None;
        }
        let order = q - 1;
        let divisors = prime_divisors(order);
        let g = (2..q)
            .map(|i| ctx.element(i))
            .find(|g| divisors.iter().all(|&r| !ctx.is_one(&ctx.pow(g, order / r))))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![Self::ZERO; q as usize];
        let mut cur: FqElem = ctx.one();
        for (k, slot) in exp.iter_mut().enumerate() {
            let idx = ctx.index_of(&cur) as u32;
            *slot = idx;
            log[idx as usize] = k as u32;
            cur = ctx.mul(&cur, &g);
        }
        let p = ctx.p();
        let zech = exp
            .iter()
            .map(|&idx| {
                // 1 + x changes only the constant digit
                let c0 = idx % p;
                let bumped = idx - c0 + (c0 + 1) % p;
                log[bumped as usize]
            })
            .collect();
        Some(Self { q: q as u32, order: order as u32, exp, log, zech, half: (order / 2) as u32 })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// `q - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn log_of_index(&self, index: u32) -> u32 {
        self.log[index as usize]
    }

    #[inline]
    pub fn index_of_log(&self, l: u32) -> u32 {
        if l == Self::ZERO {
            0
        } else {
            self.exp[l as usize]
        }
    }

    #[inline]
    fn add_exp(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.order {
            s - self.order
        } else {
            s
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == Self::ZERO || b == Self::ZERO {
            Self::ZERO
        } else {
            self.add_exp(a, b)
        }
    }

    /// `g^a * g^k`, for an exponent `k < q - 1`.
    #[inline]
    pub fn mul_exp(&self, a: u32, k: u32) -> u32 {
        if a == Self::ZERO {
            Self::ZERO
        } else {
            self.add_exp(a, k)
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == Self::ZERO {
            return b;
        }
        if b == Self::ZERO {
            return a;
        }
        let d = if b >= a { b - a } else { b + self.order - a };
        let z = self.zech[d as usize];
        if z == Self::ZERO {
            Self::ZERO
        } else {
            self.add_exp(a, z)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == Self::ZERO {
            a
        } else {
            self.add_exp(a, self.half)
        }
    }

    /// Log of the prime-field element `c`.
    pub fn from_prime(&self, c: u32) -> u32 {
        self.log[c as usize]
    }

    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        if a == Self::ZERO {
            0
        } else if a & 1 == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::quadratic_character;

    #[test]
    fn tables_agree_with_ctx() {
        for ctx in [
            FieldCtx::prime_field(3).unwrap(),
            FieldCtx::prime_field(7).unwrap(),
            FieldCtx::with_degree(5, 2).unwrap(),
            FieldCtx::with_degree(3, 4).unwrap(),
        ] {
            let t = LogTables::new(&ctx).unwrap();
            let q = ctx.size() as u32;
            for i in 0..q {
                let a = ctx.element(i as u64);
                let la = t.log_of_index(i);
                assert_eq!(t.index_of_log(la), i);
                assert_eq!(t.chi(la) as i8, quadratic_character(&ctx, &a));
                for j in (0..q).step_by(3) {
                    let b = ctx.element(j as u64);
                    let lb = t.log_of_index(j);
                    assert_eq!(t.index_of_log(t.add(la, lb)) as u64, ctx.index_of(&ctx.add(&a, &b)));
                    assert_eq!(t.index_of_log(t.mul(la, lb)) as u64, ctx.index_of(&ctx.mul(&a, &b)));
                }
                assert_eq!(t.index_of_log(t.neg(la)) as u64, ctx.index_of(&ctx.neg(&a)));
            }
        }
    }
}
