use super::{SexticError, WPoly, WeightedSextic, W2, Z3};
use crate::ff::{Field, PrimeField};

/// Brings a sextic over `F_p` to the shape `w^2 + z^3 + F2 z^2 + F4 z + F6`.
///
/// Steps, in order: divide by the `w^2` coefficient; complete the square in
/// `w`; for `p > 3` complete the cube in `z`; finally substitute
/// `(z, w) -> (a z, a w)` with `a = c_w / c_z` and rescale, which makes both
/// leading coefficients 1. Reduced input comes back unchanged.
pub fn normalize_reduced(f: &WeightedSextic) -> Result<WeightedSextic, SexticError> {
    let p = f.prime()?;
    if p == 2 {
        return Err(SexticError::Characteristic(2));
    }
    let k = PrimeField::new(p).map_err(|_| SexticError::Characteristic(p))?;
    let cw = f.coeffs()[W2] as u32;
    let inv_cw = k.inv(&cw).ok_or(SexticError::NotReduced("w^2 coefficient vanishes"))?;
    let mut g = WPoly::from_sextic(f)?.scale(inv_cw);
    let var = |i| WPoly::var(p, i);

    let lin = g.coefficient_of(3, 1);
    let half = k.inv(&2).expect("odd characteristic");
    let shift_w = var(3).add(&lin.scale(k.neg(&half)));
    g = g.substitute(&[var(0), var(1), var(2), shift_w]);

    let cz = g.coeff([0, 0, 3, 0]);
    if cz == 0 {
        return Err(SexticError::NotReduced("z^3 coefficient vanishes"));
    }
    if p > 3 {
        let quad = g.coefficient_of(2, 2);
        let shift = k.neg(&k.inv(&k.mul(&3, &cz)).expect("p > 3"));
        let shift_z = var(2).add(&quad.scale(shift));
        g = g.substitute(&[var(0), var(1), shift_z, var(3)]);
    }

    let cz = g.coeff([0, 0, 3, 0]);
    let cw = g.coeff([0, 0, 0, 2]);
    let a = k.mul(&cw, &k.inv(&cz).expect("nonzero"));
    let mu = k.inv(&k.mul(&cw, &k.mul(&a, &a))).expect("nonzero");
    let scaled = [var(0), var(1), var(2).scale(a), var(3).scale(a)];
    let out = g.substitute(&scaled).scale(mu).to_sextic()?;
    debug_assert_eq!(out.coeffs()[W2], 1);
    debug_assert_eq!(out.coeffs()[Z3], 1);
    Ok(out)
}
