use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{prime_divisors, Field, PrimeField, UniPoly};

const SPLIT_SEED: u64 = 0x5eed_d1e5_0000_0001;

/// `t^(q^k) mod f`, by `k` successive `q`-th powers.
fn frobenius_power<F: Field>(field: &F, f: &UniPoly<F::Elem>, k: usize) -> UniPoly<F::Elem> {
    let q = field.size();
    let mut h = UniPoly::x(field).rem(field, f).unwrap();
    for _ in 0..k {
        h = h.pow_mod(field, q, f);
    }
    h
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic(field);
    let x = UniPoly::x(field);
    if frobenius_power(field, &f, n) != x.rem(field, &f).unwrap() {
        return false;
    }
    prime_divisors(n as u64).into_iter().all(|r| {
        let h = frobenius_power(field, &f, n / r as usize);
        let g = h.sub(field, &x).gcd(field, &f);
        g.degree() == Some(0)
    })
}

/// The smallest monic irreducible polynomial of degree `n` over `F_p`, comparing
/// coefficient sequences `(c_0, c_1, ..., c_{n-1})` lexicographically.
pub fn find_irreducible(field: &PrimeField, n: usize) -> UniPoly<u32> {
    assert!(n >= 1, "degree must be positive");
    let p = field.p() as u64;
    let total = p.pow(n as u32);
    for idx in 0..total {
        // c_0 is the most significant digit
        let mut coeffs = vec![0u32; n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            coeffs[i] = (rest % p) as u32;
            rest /= p;
        }
        coeffs[n] = 1;
        let f = UniPoly::from_coeffs(field, coeffs);
        if is_irreducible(field, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_pth_root<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|c| field.pth_root(c)).collect();
    UniPoly::from_coeffs(field, coeffs)
}

fn squarefree<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, u32)> {
    let one = UniPoly::constant(field, field.one());
    let mut out = Vec::new();
    let d = f.derivative(field);
    if d.is_zero() {
        let root = poly_pth_root(field, f);
        let p = field.characteristic();
        return squarefree(field, &root).into_iter().map(|(g, m)| (g, m * p)).collect();
    }
    let mut c = f.gcd(field, &d);
    let mut w = f.div_rem(field, &c).unwrap().0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(field, &c);
        let fac = w.div_rem(field, &y).unwrap().0;
        if fac != one {
            out.push((fac.monic(field), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(field, &w).unwrap().0;
    }
    if c != one {
        let root = poly_pth_root(field, &c.monic(field));
        let p = field.characteristic();
        out.extend(squarefree(field, &root).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

fn distinct_degree<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, usize)> {
    let q = field.size();
    let x = UniPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(field, q, &rest);
        let g = rest.gcd(field, &h.sub(field, &x));
        if g.degree() != Some(0) {
            rest = rest.div_rem(field, &g).unwrap().0;
            h = h.rem(field, &rest).unwrap();
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest.monic(field), d));
    }
    out
}

fn equal_degree<F: Field>(
    field: &F,
    g: &UniPoly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<UniPoly<F::Elem>>,
) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic(field));
        return;
    }
    let q = field.size();
    let one = UniPoly::constant(field, field.one());
    loop {
        let coeffs: Vec<_> = (0..n).map(|_| field.element(rng.gen_range(0..q))).collect();
        let a = UniPoly::from_coeffs(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
        let mut norm = a.rem(field, g).unwrap();
        let mut conj = norm.clone();
        for _ in 1..d {
            conj = conj.pow_mod(field, q, g);
            norm = norm.mul(field, &conj).rem(field, g).unwrap();
        }
        let b = norm.pow_mod(field, (q - 1) / 2, g);
        let h = g.gcd(field, &b.sub(field, &one));
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.div_rem(field, &h).unwrap().0;
            equal_degree(field, &h, d, rng, out);
            equal_degree(field, &other, d, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
///
/// Factors are listed by ascending degree, then by the enumeration index of
/// their coefficients, so the output is reproducible.
pub fn factor_univariate<F: Field>(field: &F, f: &UniPoly<F::Elem>) -> Vec<(UniPoly<F::Elem>, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (sf, mult) in squarefree(field, &f.monic(field)) {
        for (g, d) in distinct_degree(field, &sf) {
            let mut pieces = Vec::new();
            equal_degree(field, &g, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|h| (h, mult)));
        }
    }
    // merge equal factors coming from different squarefree layers
    out.sort_by_key(|(g, _)| sort_key(field, g));
    let mut merged: Vec<(UniPoly<F::Elem>, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

fn sort_key<F: Field>(field: &F, g: &UniPoly<F::Elem>) -> (usize, Vec<u64>) {
    (g.degree().unwrap_or(0), g.coeffs().iter().map(|c| field.index_of(c)).collect())
}
