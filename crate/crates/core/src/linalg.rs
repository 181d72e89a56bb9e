//! Dense Gaussian elimination over any [`Field`].
//!
//! Pivots are always the first nonzero entry in column order, so every
//! result is deterministic.

use crate::ff::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduces `m` in place to reduced row-echelon form and returns the pivot columns.
/// Zero rows are dropped.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, pr);
        let inv = field.inv(&m[row][col]).expect("pivot is nonzero");
        for c in col..cols {
            m[row][c] = field.mul(&m[row][c], &inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || field.is_zero(&other[col]) {
                continue;
            }
            let factor = other[col].clone();
            for c in col..cols {
                if !field.is_zero(&pivot_row[c]) {
                    other[c] = field.sub(&other[c], &field.mul(&factor, &pivot_row[c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Basis of `{v : m v = 0}` for a matrix with `cols` columns, returned in
/// reduced row-echelon form.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>, cols: usize) -> Matrix<F::Elem> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&work[r][free]);
        }
        basis.push(v);
    }
    rref(field, &mut basis);
    basis
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_span<F: Field>(field: &F, rows: &Matrix<F::Elem>, v: &[F::Elem]) -> bool {
    let base = rank(field, rows);
    let mut ext = rows.clone();
    ext.push(v.to_vec());
    rank(field, &ext) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;

    #[test]
    fn kernel_annihilates() {
        let f = PrimeField::new(7).unwrap();
        let m = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 2, 5]];
        let k = kernel(&f, &m, 4);
        assert_eq!(k.len(), 4 - rank(&f, &m));
        for v in &k {
            for row in &m {
                let dot = row.iter().zip(v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn empty_system_kernel_is_everything() {
        let f = PrimeField::new(5).unwrap();
        let k = kernel(&f, &Vec::new(), 3);
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn span_membership() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert!(in_span(&f, &rows, &[1, 2, 1]));
        assert!(!in_span(&f, &rows, &[0, 0, 1]));
    }
}
