use std::fmt;

use super::{SexticError, WeightedSextic};
use crate::ff::{factor_univariate, Field, FieldCtx, FqElem, PrimeField, UniPoly};

/// A point of the base line `P^1` over which the surface is singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberWitness {
    /// `[1:0]`.
    Infinity,
    /// `[t:1]` with `t` in `F_p`.
    Rational(u32),
    /// `[t:1]` for `t` a root of this monic irreducible polynomial of degree > 1.
    Closed(Vec<u32>),
}

impl fmt::Display for FiberWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "[1:0]"),
            Self::Rational(t) => write!(f, "[{t}:1]"),
            Self::Closed(m) => {
                let poly: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                write!(f, "[t:1] with t a root of ({})", poly.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// The discriminant of the cubic in `z` vanishes identically.
    DegenerateDiscriminant,
    /// The surface is singular on the fiber over this point.
    Singular(FiberWitness),
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Self::Smooth)
    }
}

fn lift(k: &PrimeField, v: &[i128]) -> UniPoly<u32> {
    let p = k.p() as i128;
    UniPoly::from_coeffs(k, v.iter().map(|c| c.rem_euclid(p) as u32).collect())
}

/// `b^2 c^2 - 4c^3 - 4b^3 d - 27d^2 + 18bcd` for `z^3 + b z^2 + c z + d`.
fn discriminant(k: &PrimeField, b: &UniPoly<u32>, c: &UniPoly<u32>, d: &UniPoly<u32>) -> UniPoly<u32> {
    let konst = |v: i64| UniPoly::constant(k, k.from_i64(v));
    let b2 = b.mul(k, b);
    let c2 = c.mul(k, c);
    let terms = [
        b2.mul(k, &c2),
        konst(-4).mul(k, &c2.mul(k, c)),
        konst(-4).mul(k, &b2.mul(k, b).mul(k, d)),
        konst(-27).mul(k, &d.mul(k, d)),
        konst(18).mul(k, &b.mul(k, c).mul(k, d)),
    ];
    terms.iter().fold(UniPoly::zero(), |acc, t| acc.add(k, t))
}

fn eval_in(ctx: &FieldCtx, f: &UniPoly<u32>, x: &FqElem) -> FqElem {
    f.coeffs().iter().rev().fold(ctx.zero(), |acc, &c| ctx.add(&ctx.mul(&acc, x), &ctx.from_prime(c)))
}

/// Whether the fiber over the root `alpha` of `modulus` contains a singular point.
fn fiber_is_singular(p: u32, modulus: &[u32], cubic: &[UniPoly<u32>; 3]) -> bool {
    let k = PrimeField::new(p).expect("prime");
    let ctx = FieldCtx::new(p, modulus.to_vec()).expect("irreducible factor");
    let alpha = ctx.generator();
    let [b, c, d] = cubic.clone().map(|f| eval_in(&ctx, &f, &alpha));
    let [db, dc, dd] = cubic.clone().map(|f| eval_in(&ctx, &f.derivative(&k), &alpha));
    let h = UniPoly::from_coeffs(&ctx, vec![d.clone(), c, b, ctx.one()]);
    let dh = h.derivative(&ctx);
    let z0 = if dh.is_zero() {
        // characteristic 3 and h = z^3 + d = (z + d^(1/3))^3
        ctx.pth_root(&ctx.neg(&d))
    } else {
        let g = h.gcd(&ctx, &dh);
        match g.degree() {
            Some(1) => ctx.neg(&g.coeff(&ctx, 0)),
            Some(2) => ctx.neg(&ctx.div(&g.coeff(&ctx, 1), &ctx.from_prime(2)).expect("odd characteristic")),
            _ => return false,
        }
    };
    let ht = ctx.add(&ctx.add(&ctx.mul(&db, &ctx.mul(&z0, &z0)), &ctx.mul(&dc, &z0)), &dd);
    ctx.is_zero(&ht)
}

/// Decides whether `V(f)` is smooth away from the base point of the
/// anticanonical pencil.
///
/// With `h(x, y, z) = z^3 + F2 z^2 + F4 z + F6`, a singular point has `w = 0`
/// and is a multiple root `z0` of `h` on some fiber `[a:b]`. Those fibers are
/// the roots of the degree-12 discriminant of `h`; on each, the point is
/// singular exactly when the derivative of `h` along the base vanishes at `z0`.
pub fn smoothness_check(f: &WeightedSextic) -> Result<Smoothness, SexticError> {
    let p = f.prime()?;
    f.check_weierstrass_shape()?;
    let k = PrimeField::new(p).map_err(|_| SexticError::Characteristic(p))?;
    let cubic_of = |g: &WeightedSextic| [lift(&k, &g.binary_form(2)), lift(&k, &g.binary_form(4)), lift(&k, &g.binary_form(6))];
    let cubic = cubic_of(f);
    let disc = discriminant(&k, &cubic[0], &cubic[1], &cubic[2]);
    if disc.is_zero() {
        return Ok(Smoothness::DegenerateDiscriminant);
    }
    if disc.degree() != Some(12) {
        // [1:0] is a root; it becomes t = 0 after exchanging x and y
        let swapped = cubic_of(&f.swap_xy());
        if fiber_is_singular(p, &[0, 1], &swapped) {
            return Ok(Smoothness::Singular(FiberWitness::Infinity));
        }
    }
    if disc.degree() == Some(0) {
        return Ok(Smoothness::Smooth);
    }
    for (phi, _) in factor_univariate(&k, &disc) {
        if fiber_is_singular(p, phi.coeffs(), &cubic) {
            let witness = match phi.coeffs() {
                [c0, _] => FiberWitness::Rational(k.neg(c0)),
                m => FiberWitness::Closed(m.to_vec()),
            };
            return Ok(Smoothness::Singular(witness));
        }
    }
    Ok(Smoothness::Smooth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::sextic::Ring;

    /// Direct search for singular points `(t, z, w)` of the affine chart `y = 1`
    /// with coordinates in `F_p`.
    fn affine_singular_points(f: &WeightedSextic) -> Vec<(u32, u32)> {
        let p = f.prime().unwrap() as i128;
        let val = |t: i128, z: i128, dt: bool, dz: bool| -> i128 {
            f.terms()
                .filter(|(e, _)| e[3] == 0)
                .map(|(e, c)| {
                    let (mut a, mut b) = (e[0] as i128, e[2] as i128);
                    let mut coef = c;
                    if dt {
                        coef *= a;
                        a = (a - 1).max(0);
                    }
                    if dz {
                        coef *= b;
                        b = (b - 1).max(0);
                    }
                    coef * t.pow(a as u32) * z.pow(b as u32)
                })
                .sum::<i128>()
                .rem_euclid(p)
        };
        let mut out = Vec::new();
        for t in 0..p {
            for z in 0..p {
                if val(t, z, false, false) == 0 && val(t, z, true, false) == 0 && val(t, z, false, true) == 0 {
                    out.push((t as u32, z as u32));
                }
            }
        }
        out
    }

    #[test]
    fn worked_surfaces_are_smooth() {
        for f in [catalog::order7_sextic(), catalog::order6_sextic(), catalog::diagonal_f7_sextic()] {
            assert_eq!(smoothness_check(&f).unwrap(), Smoothness::Smooth, "{f}");
        }
    }

    #[test]
    fn cuspidal_fiber_detected() {
        // w^2 = z^3 + x^6, i.e. w^2 + z^3 + 6x^6 after z -> -z
        let f = catalog::sextic(Ring::Fp(7), "6x^6 + z^3 + w^2");
        assert_eq!(smoothness_check(&f).unwrap(), Smoothness::Singular(FiberWitness::Rational(0)));
        assert_eq!(FiberWitness::Rational(0).to_string(), "[0:1]");
        assert_eq!(affine_singular_points(&f), vec![(0, 0)]);
    }

    #[test]
    fn singular_point_at_infinity() {
        let f = catalog::sextic(Ring::Fp(7), "6y^6 + z^3 + w^2");
        assert_eq!(smoothness_check(&f).unwrap(), Smoothness::Singular(FiberWitness::Infinity));
    }

    #[test]
    fn degenerate_discriminant() {
        let f = catalog::sextic(Ring::Fp(5), "z^3 + w^2");
        assert_eq!(smoothness_check(&f).unwrap(), Smoothness::DegenerateDiscriminant);
    }

    #[test]
    fn agrees_with_rational_search() {
        // whenever the direct search finds a singular point, the check reports one
        let mut found = 0;
        for a in 0..7i128 {
            for b in 0..7i128 {
                let mut c = [0i128; 23];
                c[crate::sextic::Z3] = 1;
                c[crate::sextic::W2] = 1;
                c[0] = a;
                c[3] = b;
                c[6] = 1;
                c[9] = (a + b) % 7;
                let f = WeightedSextic::from_coeffs(Ring::Fp(7), c);
                let direct = affine_singular_points(&f);
                let verdict = smoothness_check(&f).unwrap();
                if !direct.is_empty() {
                    found += 1;
                    assert!(!verdict.is_smooth(), "{f}");
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn rejects_non_reduced() {
        assert!(smoothness_check(&catalog::order6_relation()).is_err());
    }
}
