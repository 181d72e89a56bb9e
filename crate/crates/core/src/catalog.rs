//! Worked examples: two Frobenius-stable point sets with explicit generators,
//! the sextics they produce, a diagonal surface over `F_7`, and the integer
//! family that reduces to all three.

use crate::assemble::CongruenceTarget;
use crate::ff::{Field, FieldCtx};
use crate::geom::{galois_closure, PlanePoint, PlanePointSet};
use crate::linsys::PlaneForm;
use crate::sextic::{Generators, GenusFourCurve, Ring, WeightedSextic};

/// Parses `c v^e v^e + ...` with the given variable names. Coefficients may
/// be omitted and default to 1.
pub(crate) fn parse_expr(text: &str, vars: &[&str]) -> Vec<(Vec<u32>, i64)> {
    let mut sorted: Vec<(usize, &str)> = vars.iter().copied().enumerate().collect();
    sorted.sort_by_key(|(_, v)| std::cmp::Reverse(v.len()));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    for term in compact.split('+') {
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let coeff = if digits == 0 { 1 } else { term[..digits].parse().expect("coefficient") };
        let mut exps = vec![0u32; vars.len()];
        let mut rest = &term[digits..];
        while !rest.is_empty() {
            let (i, name) = sorted
                .iter()
                .find(|(_, v)| rest.starts_with(v))
                .unwrap_or_else(|| panic!("unknown variable in `{term}`"));
            rest = &rest[name.len()..];
            let mut e = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let n = r.chars().take_while(|c| c.is_ascii_digit()).count();
                e = r[..n].parse().expect("exponent");
                rest = &r[n..];
            }
            exps[*i] += e;
        }
        out.push((exps, coeff));
    }
    out
}

fn plane_form(p: u32, degree: u32, text: &str) -> PlaneForm {
    let terms: Vec<([u32; 3], u32)> = parse_expr(text, &["x0", "x1", "x2"])
        .into_iter()
        .map(|(e, c)| ([e[0], e[1], e[2]], c.rem_euclid(p as i64) as u32))
        .collect();
    PlaneForm::from_terms(p, degree, &terms).expect("homogeneous form")
}

pub(crate) fn sextic(ring: Ring, text: &str) -> WeightedSextic {
    let terms: Vec<([u32; 4], i128)> = parse_expr(text, &["x", "y", "z", "w"])
        .into_iter()
        .map(|(e, c)| ([e[0], e[1], e[2], e[3]], c as i128))
        .collect();
    WeightedSextic::from_terms(ring, &terms).expect("weighted sextic")
}

/// `F_{3^7}` with modulus `t^7 + 2t^2 + 1`.
pub fn order7_field() -> FieldCtx {
    FieldCtx::new(3, vec![1, 0, 2, 0, 0, 0, 0, 1]).expect("irreducible modulus")
}

/// `[0:0:1]` and the seven conjugates of `[1:a:a^4]` over `F_3`.
///
/// The published generators vanish at `[0:0:1]` rather than `[1:0:0]`.
pub fn order7_points() -> PlanePointSet {
    let ctx = order7_field();
    let a = ctx.generator();
    let seeds = [
        PlanePoint::rational(&ctx, [0, 0, 1]).expect("point"),
        PlanePoint::new(&ctx, [ctx.one(), a.clone(), ctx.pow(&a, 4)]).expect("point"),
    ];
    galois_closure(&seeds, &ctx).expect("eight points")
}

/// Same orbit shape as [`order7_points`], but every point lies on `x1 = x2`.
pub fn order7_points_collinear() -> PlanePointSet {
    let ctx = order7_field();
    let a = ctx.generator();
    let seeds = [
        PlanePoint::rational(&ctx, [0, 0, 1]).expect("point"),
        PlanePoint::new(&ctx, [ctx.one(), a.clone(), a]).expect("point"),
    ];
    galois_closure(&seeds, &ctx).expect("eight points")
}

pub fn order7_generators() -> Generators {
    let p = 3;
    Generators {
        x: plane_form(p, 3, "x0^2x1 + x0x2^2 + 2x1^3"),
        y: plane_form(p, 3, "x0^2x2 + 2x0x1^2 + 2x1x2^2"),
        z: plane_form(
            p,
            6,
            "x0^6 + x0^3x1^3 + 2x0^2x1^2x2^2 + 2x0^2x2^4 + x0x1^5 + 2x0x1^3x2^2 + x0x1^2x2^3
             + x0x1x2^4 + 2x1^6 + 2x1^5x2 + x1^4x2^2",
        ),
        w: plane_form(
            p,
            9,
            "x0^9 + 2x0^7x1x2 + x0^5x1^2x2^2 + x0^5x2^4 + 2x0^4x1^2x2^3 + 2x0^4x1x2^4 + x0^3x1^6
             + x0^3x1^4x2^2 + x0^3x2^6 + 2x0^2x1^6x2 + 2x0^2x1^4x2^3 + x0x1^7x2 + x0x1^6x2^2
             + x0x1^5x2^3 + 2x0x1^2x2^6 + x1^5x2^4 + 2x1^4x2^5 + 2x1^3x2^6",
        ),
    }
}

/// The relation among the [`order7_generators`] products, scaled so `w^2` has coefficient 1.
pub fn order7_relation() -> WeightedSextic {
    sextic(
        Ring::Fp(3),
        "2x^6 + 2x^3y^3 + xy^5 + y^6 + 2x^3yz + x^2y^2z + y^4z + 2xyz^2 + 2z^3 + 2x^3w + y^3w + w^2",
    )
}

pub fn order7_sextic() -> WeightedSextic {
    sextic(Ring::Fp(3), "x^6 + x^3y^3 + xy^5 + x^3yz + 2x^2y^2z + 2y^4z + 2xyz^2 + z^3 + w^2")
}

/// `F_{5^6}` with modulus `t^6 + t^4 + 4t^3 + t^2 + 2`.
pub fn order6_field() -> FieldCtx {
    FieldCtx::new(5, vec![2, 0, 1, 4, 1, 0, 1]).expect("irreducible modulus")
}

/// Three rational points, a conjugate pair and a conjugate triple over `F_5`.
///
/// The published generators vanish at `[0:1:0]` rather than `[1:0:0]`.
pub fn order6_points() -> PlanePointSet {
    let ctx = order6_field();
    let a = ctx.generator();
    let beta = ctx.pow(&a, 625 + 25 + 1);
    let gamma = ctx.pow(&a, 125 + 1);
    let seeds = [
        PlanePoint::rational(&ctx, [0, 1, 0]).expect("point"),
        PlanePoint::rational(&ctx, [3, 2, 4]).expect("point"),
        PlanePoint::rational(&ctx, [4, 2, 1]).expect("point"),
        PlanePoint::new(&ctx, [ctx.one(), beta.clone(), ctx.pow(&beta, 3)]).expect("point"),
        PlanePoint::new(&ctx, [ctx.one(), gamma.clone(), ctx.pow(&gamma, 4)]).expect("point"),
    ];
    galois_closure(&seeds, &ctx).expect("eight points")
}

pub fn order6_generators() -> Generators {
    let p = 5;
    Generators {
        x: plane_form(p, 3, "x0^3 + 4x0x1^2 + 2x0x1x2 + x0x2^2 + x1^2x2 + 4x1x2^2"),
        y: plane_form(p, 3, "x0^2x1 + 3x0^2x2 + 3x0x1^2 + x0x1x2 + 3x0x2^2 + 4x1^2x2 + 3x1x2^2"),
        z: plane_form(
            p,
            6,
            "x0^5x1 + 2x0^4x2^2 + 4x0^3x1^3 + 2x0^3x1^2x2 + x0^3x1x2^2 + 4x0^3x2^3 + 3x0^2x1^4
             + x0^2x1^3x2 + 4x0^2x1^2x2^2 + 3x0^2x1x2^3 + 3x0^2x2^4 + x0x1^4x2 + 4x0x1^3x2^2
             + 4x0x1^2x2^3 + 3x0x2^5 + 4x1^4x2^2 + 4x1^3x2^3 + x1^2x2^4 + 2x1x2^5 + 3x2^6",
        ),
        w: plane_form(
            p,
            9,
            "x0^9 + 2x0^6x1^2x2 + 2x0^6x1x2^2 + x0^6x2^3 + x0^5x1^3x2 + 3x0^5x1^2x2^2
             + 4x0^5x1x2^3 + 3x0^5x2^4 + 4x0^4x1^5 + 3x0^4x1^3x2^2 + 2x0^4x2^5 + 3x0^3x1^5x2
             + x0^3x1^4x2^2 + 3x0^3x1^3x2^3 + 3x0^3x1^2x2^4 + 4x0^3x1x2^5 + 3x0^3x2^6
             + 2x0^2x1^5x2^2 + x0^2x1^4x2^3 + x0^2x1^3x2^4 + 4x0^2x1^2x2^5 + 4x0^2x1x2^6
             + 2x0^2x2^7 + 2x0x1^6x2^2 + 4x0x1^5x2^3 + x0x1^4x2^4 + 3x0x1^3x2^5 + 4x0x1^2x2^6
             + 2x0x1x2^7 + x1^6x2^3 + x1^5x2^4 + x1^4x2^5 + 2x1^2x2^7 + x2^9",
        ),
    }
}

pub fn order6_relation() -> WeightedSextic {
    sextic(
        Ring::Fp(5),
        "2x^6 + 3x^5y + x^4y^2 + 4x^3y^3 + 4x^2y^4 + 4y^6 + 4x^4z + 2x^3yz + x^2y^2z + 2xy^3z
         + 3y^4z + 3x^2z^2 + 2y^2z^2 + 2z^3 + 2x^3w + 2x^2yw + 2xy^2w + xzw + w^2",
    )
}

pub fn order6_sextic() -> WeightedSextic {
    sextic(
        Ring::Fp(5),
        "3x^5y + 4x^4y^2 + 3x^3y^3 + 2x^2y^4 + 4xy^5 + 4x^4z + 2x^3yz + 3x^2y^2z + 4xy^3z + 3y^4z + z^3 + w^2",
    )
}

/// `w^2 + z^3 + 5x^6 + 5y^6` over `F_7`; its locus is `w^2 = z^3 + 2x^6 + 2y^6`.
pub fn diagonal_f7_sextic() -> WeightedSextic {
    sextic(Ring::Fp(7), "5x^6 + 5y^6 + z^3 + w^2")
}

/// The integer sextic, modulo 105, reducing to the three surfaces above.
pub fn family_target() -> CongruenceTarget {
    CongruenceTarget::new(
        105,
        sextic(
            Ring::Z,
            "40x^6 + 63x^5y + 84x^4y^2 + 28x^3y^3 + 42x^2y^4 + 49xy^5 + 75y^6 + 84x^4z + 7x^3yz
             + 98x^2y^2z + 84xy^3z + 98y^4z + 35xyz^2 + z^3 + w^2",
        ),
    )
    .expect("reduced target")
}

/// The `w = 0` curve of the family, modulo 105.
pub fn family_curve() -> GenusFourCurve {
    let terms = parse_expr(
        "40x^6 + 63x^5y + 84x^4y^2 + 28x^3y^3 + 42x^2y^4 + 49xy^5 + 75y^6 + 84x^4z + 7x^3yz
         + 98x^2y^2z + 84xy^3z + 98y^4z + 35xyz^2 + z^3",
        &["x", "y", "z"],
    );
    GenusFourCurve { ring: Ring::Z, terms: terms.into_iter().map(|(e, c)| ([e[0], e[1], e[2]], c as i128)).collect() }
}

/// Ascending coefficients of `a(t)`, `b(t)`, `c(t)` modulo 105 for the family.
pub fn family_weierstrass() -> [Vec<i128>; 3] {
    [vec![0, 70, 0], vec![98, 84, 98, 7, 84], vec![30, 56, 63, 77, 21, 42, 65]]
}
