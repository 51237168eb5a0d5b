//! Minimal dense rational matrix and vector helpers.

use alloc::vec::Vec;
use num_traits::Zero;

use crate::Rational;

/// Dense row-major matrix of rationals. The column count is fixed at
/// construction so that empty row blocks still know their width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    /// An empty matrix (zero rows) with `cols` columns.
    pub fn new(cols: usize) -> Self {
        Matrix { cols, rows: Vec::new() }
    }

    /// Builds a matrix from rows. Panics if rows have inconsistent lengths.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut m = Matrix::new(cols);
        for row in rows {
            m.push_row(row);
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "matrix row has wrong length");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.rows().map(|r| dot(r, v)).collect()
    }
}

/// Exact inner product. Panics on length mismatch.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Componentwise `a + t * b`.
pub fn add_scaled(a: &[Rational], t: &Rational, b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "add_scaled length mismatch");
    a.iter().zip(b).map(|(x, y)| x + t * y).collect()
}

/// Componentwise negation.
pub fn negated(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rats};

    #[test]
    fn dot_and_mul_vec() {
        let m = Matrix::from_rows(2, alloc::vec![rats(&[1, 2]), rats(&[-1, 0])]);
        assert_eq!(m.mul_vec(&rats(&[3, 4])), rats(&[11, -3]));
        assert_eq!(dot(&rats(&[1, 2]), &[rat(1, 2), rat(1, 4)]), rat(1, 1));
    }

    #[test]
    #[should_panic(expected = "wrong length")]
    fn push_row_checks_width() {
        let mut m = Matrix::new(2);
        m.push_row(rats(&[1]));
    }
}
