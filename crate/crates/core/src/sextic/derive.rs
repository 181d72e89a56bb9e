use super::{Ring, SexticError, WeightedSextic, MONOMIALS, W2};
use crate::ff::{Field, PrimeField};
use crate::geom::{monomials, PlanePointSet};
use crate::linalg;
use crate::linsys::{forms_rank, graded_piece_basis, in_span, PlaneForm};

/// Plane forms of degrees 3, 3, 6, 9 generating the anticanonical ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub x: PlaneForm,
    pub y: PlaneForm,
    pub z: PlaneForm,
    pub w: PlaneForm,
}

impl Generators {
    /// The product `x^a y^b z^c w^d` for an exponent vector from [`MONOMIALS`].
    pub fn monomial(&self, e: [u32; 4]) -> PlaneForm {
        self.x.pow(e[0]).mul(&self.y.pow(e[1])).mul(&self.z.pow(e[2])).mul(&self.w.pow(e[3]))
    }

    fn degree_two_products(&self) -> Vec<PlaneForm> {
        vec![self.x.mul(&self.x), self.x.mul(&self.y), self.y.mul(&self.y)]
    }

    fn degree_three_products(&self) -> Vec<PlaneForm> {
        vec![
            self.x.pow(3),
            self.x.pow(2).mul(&self.y),
            self.x.mul(&self.y.pow(2)),
            self.y.pow(3),
            self.x.mul(&self.z),
            self.y.mul(&self.z),
        ]
    }
}

/// Generators together with the relation they satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub generators: Generators,
    pub relation: WeightedSextic,
}

/// First element of `basis` outside the span of `fixed`.
fn complement(fixed: &[PlaneForm], basis: &[PlaneForm]) -> Option<PlaneForm> {
    basis.iter().find(|b| !in_span(fixed, b)).cloned()
}

fn check_piece(name: &str, forms: &[PlaneForm], piece: &[PlaneForm]) -> Result<(), SexticError> {
    if forms.iter().any(|f| !in_span(piece, f)) {
        return Err(SexticError::Generators(format!("{name} does not lie in the graded piece")));
    }
    if forms_rank(forms) != piece.len() {
        return Err(SexticError::Generators(format!("{name} is not a basis of the graded piece")));
    }
    Ok(())
}

/// Generators and the weighted sextic relation for the blow-up of `s`.
///
/// Without overrides, `x, y` are the echelon basis of the multiplicity-1
/// piece and `z`, `w` are the first echelon basis vectors of the next two
/// pieces not already spanned by products of lower generators. Overrides are
/// validated against the same pieces.
pub fn derive_anticanonical(s: &PlanePointSet, overrides: Option<&Generators>) -> Result<Derivation, SexticError> {
    let p = s.ctx().p();
    let piece1 = graded_piece_basis(s, 1)?;
    let piece2 = graded_piece_basis(s, 2)?;
    let piece3 = graded_piece_basis(s, 3)?;
    let generators = match overrides {
        Some(g) => {
            if [&g.x, &g.y, &g.z, &g.w].iter().any(|f| f.p() != p) {
                return Err(SexticError::Generators("characteristic differs from the point set".into()));
            }
            check_piece("{x, y}", &[g.x.clone(), g.y.clone()], &piece1)?;
            let mut two = g.degree_two_products();
            two.push(g.z.clone());
            check_piece("{x^2, xy, y^2, z}", &two, &piece2)?;
            let mut three = g.degree_three_products();
            three.push(g.w.clone());
            check_piece("{x^3, x^2y, xy^2, y^3, xz, yz, w}", &three, &piece3)?;
            g.clone()
        }
        None => {
            let (x, y) = (piece1[0].clone(), piece1[1].clone());
            let partial = Generators { x: x.clone(), y: y.clone(), z: PlaneForm::zero(p, 6), w: PlaneForm::zero(p, 9) };
            let z = complement(&partial.degree_two_products(), &piece2)
                .ok_or_else(|| SexticError::Generators("no complement in degree 6".into()))?;
            let partial = Generators { z, ..partial };
            let w = complement(&partial.degree_three_products(), &piece3)
                .ok_or_else(|| SexticError::Generators("no complement in degree 9".into()))?;
            Generators { w, ..partial }
        }
    };

    // columns are the 23 products, rows the degree-18 monomials
    let products: Vec<Vec<u32>> = MONOMIALS.iter().map(|&e| generators.monomial(e).to_vector()).collect();
    let rows = monomials(18).len();
    let matrix: Vec<Vec<u32>> = (0..rows).map(|r| products.iter().map(|col| col[r]).collect()).collect();
    let field = PrimeField::new(p).expect("point-set prime");
    let kernel = linalg::kernel(&field, &matrix, MONOMIALS.len());
    if kernel.len() != 1 {
        return Err(SexticError::RelationDimension(kernel.len()));
    }
    let rel = &kernel[0];
    let inv = field.inv(&rel[W2]).ok_or(SexticError::MissingWSquare)?;
    let mut coeffs = [0i128; 23];
    for (slot, c) in coeffs.iter_mut().zip(rel) {
        *slot = field.mul(c, &inv) as i128;
    }
    Ok(Derivation { generators, relation: WeightedSextic::from_coeffs(Ring::Fp(p), coeffs) })
}
