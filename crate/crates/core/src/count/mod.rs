//! Point counts of reduced sextics over `F_{p^k}` through the fibration
//! `[x:y:z:w] -> [x:y]`, and the Frobenius data they determine.
//!
//! For `f = w^2 + z^3 + F2 z^2 + F4 z + F6`, the fiber over `[a:b]` is the
//! affine curve `w^2 = g(z)` with `g(z) = z^3 - F2 z^2 + F4 z - F6` (the
//! equation after `z -> -z`), and `|X(F)| = sum over P^1(F) of the fiber
//! counts, plus 1` for the base point of the pencil.

mod profile;

pub use profile::{frobenius_profile, profile_criterion_check, FrobeniusProfile, ProfileCriterionReport, ProfileEntry};

use thiserror::Error;

use crate::ff::{Field, FieldCtx, FieldError, FqElem, LogTables};
use crate::sextic::{SexticError, WeightedSextic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Sextic(#[from] SexticError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field of size {0} is too large for the counting tables")]
    FieldTooLarge(u64),
    #[error("count {count} is not q^2 + q(t+1) + 1 for an integer t with q = {q}")]
    NotDivisible { count: u64, q: u64 },
    #[error("trace {0} is outside [-8, 8]")]
    TraceRange(i64),
    #[error("inconsistent profile: {0}")]
    Inconsistent(String),
}

/// `F_{p^k}`, using the smallest irreducible modulus for `k > 1`.
pub fn extension_field(p: u32, k: u32) -> Result<FieldCtx, CountError> {
    Ok(if k == 1 { FieldCtx::prime_field(p)? } else { FieldCtx::with_degree(p, k as usize)? })
}

/// Coefficients of `-F2`, `F4`, `-F6` in `t = x/y`, reduced mod `p`.
fn cubic_coefficients(f: &WeightedSextic) -> Result<[Vec<u32>; 3], CountError> {
    let p = f.prime()?;
    f.check_weierstrass_shape()?;
    let red = |v: Vec<i128>, sign: i128| v.into_iter().map(|c| (sign * c).rem_euclid(p as i128) as u32).collect();
    Ok([red(f.binary_form(2), -1), red(f.binary_form(4), 1), red(f.binary_form(6), -1)])
}

/// Value of a binary form with ascending coefficients `c` (in `x`) at `(a, b)`.
fn eval_binary(ctx: &FieldCtx, c: &[u32], a: &FqElem, b: &FqElem) -> FqElem {
    let d = c.len() as u64 - 1;
    c.iter().enumerate().fold(ctx.zero(), |acc, (i, &ci)| {
        let term = ctx.mul(&ctx.mul(&ctx.from_prime(ci), &ctx.pow(a, i as u64)), &ctx.pow(b, d - i as u64));
        ctx.add(&acc, &term)
    })
}

/// Number of affine points `(z, w)` on the fiber over `[a:b]`:
/// the sum over `z` of `1 + chi(g(z))`.
pub fn fiber_count(f: &WeightedSextic, ctx: &FieldCtx, a: &FqElem, b: &FqElem) -> Result<u64, CountError> {
    let [c2, c4, c6] = cubic_coefficients(f)?;
    let (ca, cb, cc) = (eval_binary(ctx, &c2, a, b), eval_binary(ctx, &c4, a, b), eval_binary(ctx, &c6, a, b));
    let mut total: i64 = 0;
    for i in 0..ctx.size() {
        let z = ctx.element(i);
        let g = ctx.add(&ctx.mul(&ctx.add(&ctx.mul(&ctx.add(&z, &ca), &z), &cb), &z), &cc);
        total += 1 + ctx.quadratic_character(&g) as i64;
    }
    Ok(total as u64)
}

/// Reference count: [`fiber_count`] over every point of `P^1(F_{p^k})`, plus 1.
pub fn count_points_naive(f: &WeightedSextic, k: u32) -> Result<u64, CountError> {
    let ctx = extension_field(f.prime()?, k)?.with_square_table();
    let mut total = fiber_count(f, &ctx, &ctx.one(), &ctx.zero())?;
    for i in 0..ctx.size() {
        total += fiber_count(f, &ctx, &ctx.element(i), &ctx.one())?;
    }
    Ok(total + 1)
}

struct Counter<'a> {
    t: &'a LogTables,
    /// Log-encoded coefficients of `-F2`, `F4`, `-F6`, ascending in `x`.
    coeffs: [Vec<u32>; 3],
    double: Vec<u32>,
    triple: Vec<u32>,
}

impl<'a> Counter<'a> {
    fn new(t: &'a LogTables, coeffs: &[Vec<u32>; 3]) -> Self {
        let n = t.order();
        Self {
            t,
            coeffs: coeffs.clone().map(|c| c.into_iter().map(|x| t.from_prime(x)).collect()),
            double: (0..n).map(|l| ((2 * l as u64) % n as u64) as u32).collect(),
            triple: (0..n).map(|l| ((3 * l as u64) % n as u64) as u32).collect(),
        }
    }

    /// `c(a)` by Horner's rule for a log-encoded `a`, or the leading coefficient for `[1:0]`.
    fn eval(&self, c: &[u32], a: Option<u32>) -> u32 {
        match a {
            None => *c.last().expect("nonempty form"),
            Some(la) => c.iter().rev().fold(LogTables::ZERO, |acc, &ci| self.t.add(self.t.mul(acc, la), ci)),
        }
    }

    fn fiber_logs(&self, a: Option<u32>) -> [u32; 3] {
        [0, 1, 2].map(|i| self.eval(&self.coeffs[i], a))
    }

    /// `q + sum_z chi(z^3 + A z^2 + B z + C)` with log-encoded `A, B, C`.
    fn fiber(&self, [a, b, c]: [u32; 3]) -> i64 {
        let t = self.t;
        let mut chi = t.chi(c) as i64;
        for l in 0..t.order() {
            let v = t.add(t.add(t.mul_exp(a, self.double[l as usize]), t.mul_exp(b, l)), c);
            chi += t.chi(t.add(v, self.triple[l as usize])) as i64;
        }
        t.size() as i64 + chi
    }
}

fn tables_for(p: u32, k: u32) -> Result<LogTables, CountError> {
    let ctx = extension_field(p, k)?;
    LogTables::new(&ctx).ok_or(CountError::FieldTooLarge(ctx.size()))
}

/// `|X(F_{p^k})|` using log/Zech tables, with the fibers split over `threads` workers.
pub fn count_points(f: &WeightedSextic, k: u32, threads: usize) -> Result<u64, CountError> {
    let coeffs = cubic_coefficients(f)?;
    let t = tables_for(f.prime()?, k)?;
    let counter = Counter::new(&t, &coeffs);
    let q = t.size();
    let threads = threads.max(1).min(q as usize);
    let chunk = (q as usize).div_ceil(threads);
    let total: i64 = std::thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|w| {
                let counter = &counter;
                s.spawn(move || {
                    let lo = (w * chunk) as u32;
                    let hi = ((w + 1) * chunk).min(q as usize) as u32;
                    (lo..hi).map(|i| counter.fiber(counter.fiber_logs(Some(counter.t.log_of_index(i))))).sum::<i64>()
                })
            })
            .collect();
        workers.into_iter().map(|h| h.join().expect("counting worker")).sum()
    });
    let infinity = counter.fiber(counter.fiber_logs(None));
    Ok((total + infinity + 1) as u64)
}

/// Fiber data of the class-bucket method for `w^2 = z^3 + C(x, y)`.
///
/// Fibers `[a:1]` are grouped by the class of `C(a, 1)` in
/// `F^* / (F^*)^6 ∪ {0}`: index `j < 6` holds the values whose log is `j`
/// mod 6, index 6 holds zero. Rescaling `z` by `u^2` and `w` by `u^3` shows
/// the fiber count depends on the class only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketCount {
    pub sizes: [u64; 7],
    pub fiber_counts: [u64; 7],
    pub infinity: u64,
    pub total: u64,
    /// Log of the primitive element used for the classes, as a field index.
    pub generator_index: u32,
}

/// The class-bucket count, when `F2 = F4 = 0` and `6 | q - 1`.
pub fn count_points_buckets(f: &WeightedSextic, k: u32) -> Result<Option<BucketCount>, CountError> {
    let coeffs = cubic_coefficients(f)?;
    if coeffs[0].iter().chain(&coeffs[1]).any(|&c| c != 0) {
        return Ok(None);
    }
    let t = tables_for(f.prime()?, k)?;
    if t.order() % 6 != 0 {
        return Ok(None);
    }
    let counter = Counter::new(&t, &coeffs);
    let class = |c: u32| if c == LogTables::ZERO { 6 } else { (c % 6) as usize };
    let mut sizes = [0u64; 7];
    for i in 0..t.size() {
        let [_, _, c] = counter.fiber_logs(Some(t.log_of_index(i)));
        sizes[class(c)] += 1;
    }
    let zero = LogTables::ZERO;
    let fiber_counts: [u64; 7] = std::array::from_fn(|j| {
        let c = if j == 6 { zero } else { j as u32 };
        counter.fiber([zero, zero, c]) as u64
    });
    let infinity = counter.fiber(counter.fiber_logs(None)) as u64;
    let total = infinity + sizes.iter().zip(&fiber_counts).map(|(s, n)| s * n).sum::<u64>() + 1;
    Ok(Some(BucketCount { sizes, fiber_counts, infinity, total, generator_index: t.index_of_log(1) }))
}

/// `t` with `count = q^2 + q (t + 1) + 1`.
pub fn lefschetz_trace(count: u64, q: u64) -> Result<i64, CountError> {
    let rest = count as i128 - (q as i128) * (q as i128) - q as i128 - 1;
    if rest % q as i128 != 0 {
        return Err(CountError::NotDivisible { count, q });
    }
    let t = (rest / q as i128) as i64;
    if t.abs() > 8 {
        return Err(CountError::TraceRange(t));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sextic::Ring;

    /// Direct enumeration of `P(1,1,2,3)(F_q)`: nonzero solutions of `f = 0`
    /// in `F_q^4`, divided by `q - 1`.
    fn weighted_enumeration(f: &WeightedSextic, k: u32) -> u64 {
        let ctx = extension_field(f.prime().unwrap(), k).unwrap();
        let q = ctx.size();
        let elems: Vec<FqElem> = (0..q).map(|i| ctx.element(i)).collect();
        let pows = |a: &FqElem| -> Vec<FqElem> { (0..=6).map(|e| ctx.pow(a, e)).collect() };
        let table: Vec<Vec<FqElem>> = elems.iter().map(pows).collect();
        let mut n = 0u64;
        for x in 0..q as usize {
            for y in 0..q as usize {
                for z in 0..q as usize {
                    for w in 0..q as usize {
                        if x + y + z + w == 0 {
                            continue;
                        }
                        let v = f.terms().fold(ctx.zero(), |acc, (e, c)| {
                            let m = [&table[x][e[0] as usize], &table[y][e[1] as usize], &table[z][e[2] as usize], &table[w][e[3] as usize]]
                                .into_iter()
                                .fold(ctx.from_prime(c as u32), |m, v| ctx.mul(&m, v));
                            ctx.add(&acc, &m)
                        });
                        if ctx.is_zero(&v) {
                            n += 1;
                        }
                    }
                }
            }
        }
        n / (q - 1)
    }

    #[test]
    fn diagonal_surface_fibers() {
        let f = catalog::diagonal_f7_sextic();
        let ctx = FieldCtx::prime_field(7).unwrap();
        assert_eq!(fiber_count(&f, &ctx, &ctx.one(), &ctx.zero()).unwrap(), 8);
        assert_eq!(fiber_count(&f, &ctx, &ctx.zero(), &ctx.one()).unwrap(), 8);
        for a in 1..7 {
            assert_eq!(fiber_count(&f, &ctx, &ctx.from_prime(a), &ctx.one()).unwrap(), 2);
        }
        assert_eq!(count_points(&f, 1, 2).unwrap(), 29);
    }

    #[test]
    fn counts_match_enumeration() {
        assert_eq!(weighted_enumeration(&catalog::order7_sextic(), 1), 16);
        for (f, k) in [
            (catalog::order7_sextic(), 1),
            (catalog::order7_sextic(), 2),
            (catalog::order6_sextic(), 1),
            (catalog::diagonal_f7_sextic(), 1),
        ] {
            let direct = weighted_enumeration(&f, k);
            assert_eq!(count_points(&f, k, 3).unwrap(), direct, "{f} k={k}");
            assert_eq!(count_points_naive(&f, k).unwrap(), direct);
        }
    }

    #[test]
    fn char3_z_square_terms() {
        let f = catalog::sextic(Ring::Fp(3), "x^6 + 2y^6 + xyz^2 + x^2z^2 + z^3 + w^2");
        assert_eq!(count_points(&f, 1, 1).unwrap(), weighted_enumeration(&f, 1));
        assert_eq!(count_points(&f, 2, 2).unwrap(), count_points_naive(&f, 2).unwrap());
    }

    #[test]
    fn fiber_counts_are_bounded() {
        let f = catalog::order6_sextic();
        let ctx = FieldCtx::with_degree(5, 2).unwrap();
        for i in 0..ctx.size() {
            let n = fiber_count(&f, &ctx, &ctx.element(i), &ctx.one()).unwrap();
            assert!(n <= 2 * ctx.size());
        }
    }

    #[test]
    fn buckets_match_tables() {
        let f = catalog::diagonal_f7_sextic();
        for k in 1..=3 {
            let b = count_points_buckets(&f, k).unwrap().unwrap();
            assert_eq!(b.total, count_points(&f, k, 2).unwrap());
            assert_eq!(b.total, count_points_naive(&f, k).unwrap());
        }
        assert_eq!(count_points_buckets(&catalog::order6_sextic(), 1).unwrap(), None);
    }

    #[test]
    fn bucket_data_in_sixth_power_residue_form() {
        // classes relabelled by r(v) = v^((q-1)/6), an element of F_7
        let f = catalog::diagonal_f7_sextic();
        let b = count_points_buckets(&f, 3).unwrap().unwrap();
        let ctx = extension_field(7, 3).unwrap();
        let g = ctx.element(b.generator_index as u64);
        let mut by_r = [(0u64, 0u64); 7];
        for j in 0..7 {
            let r = if j == 6 {
                0
            } else {
                let v = ctx.pow(&ctx.pow(&g, j as u64), 342 / 6);
                assert!(v.is_prime_field());
                v.coeffs()[0] as usize
            };
            by_r[r] = (b.sizes[j], b.fiber_counts[j]);
        }
        assert_eq!(b.infinity, 323);
        assert_eq!(by_r, [(0, 343), (43, 323), (72, 380), (72, 360), (36, 326), (36, 306), (84, 363)]);
        assert_eq!(b.total, 120737);
    }

    #[test]
    fn traces() {
        assert_eq!(lefschetz_trace(29, 7).unwrap(), -4);
        assert_eq!(lefschetz_trace(776, 25).unwrap(), 5);
        for q in [3u64, 5, 49, 125] {
            assert_eq!(lefschetz_trace(q * q + 9 * q + 1, q).unwrap(), 8);
        }
        assert!(matches!(lefschetz_trace(30, 7), Err(CountError::NotDivisible { .. })));
        assert!(matches!(lefschetz_trace(49 + 70 + 1, 7), Err(CountError::TraceRange(9))));
    }
}
