//! Exact linear algebra over the rationals: row reduction, rank, nullspace
//! and subspace arithmetic on spanning sets.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense matrix over `Q`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c) - &factor * self.at(row, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![BigRational::zero(); self.cols];
            vec[free] = BigRational::one();
            for (&pc, _) in pivots.iter().zip(0..) {
                let r = pivot_of_col[pc].unwrap();
                vec[pc] = -m.at(r, free).clone();
            }
            basis.push(vec);
        }
        basis
    }
}

/// Dimension of the span of the given vectors.
pub fn span_dim(vectors: &[Vec<BigRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors.to_vec()).rank()
}

/// Dimension of the sum of two spans.
pub fn sum_dim(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> usize {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    span_dim(&all)
}

/// Basis of the intersection of two spans, computed from the nullspace of
/// `[A^T | -B^T]`.
pub fn intersect_spans(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    let rows = dim;
    let cols = a.len() + b.len();
    let mut m = RatMatrix::zero(rows, cols);
    for (j, v) in a.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, v[i].clone());
        }
    }
    for (j, v) in b.iter().enumerate() {
        for i in 0..dim {
            m.set(i, a.len() + j, -v[i].clone());
        }
    }
    let mut vectors = Vec::new();
    for sol in m.nullspace() {
        let mut w = vec![BigRational::zero(); dim];
        for (j, v) in a.iter().enumerate() {
            if sol[j].is_zero() {
                continue;
            }
            for i in 0..dim {
                w[i] += &sol[j] * &v[i];
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            vectors.push(w);
        }
    }
    // reduce to a basis
    if vectors.is_empty() {
        return vectors;
    }
    let mut m = RatMatrix::from_rows(vectors);
    let pivots = m.rref();
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn vecq(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = RatMatrix::from_rows(vec![vecq(&[1, 2, 3]), vecq(&[2, 4, 6]), vecq(&[1, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        // verify the nullspace vector
        for r in 0..m.rows {
            let dot: BigRational = (0..3).map(|c| m.at(r, c) * &ns[0][c]).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn subspace_arithmetic() {
        let a = vec![vecq(&[1, 0, 0, 0]), vecq(&[0, 1, 0, 0])];
        let b = vec![vecq(&[0, 1, 0, 0]), vecq(&[0, 0, 1, 0])];
        assert_eq!(span_dim(&a), 2);
        assert_eq!(sum_dim(&a, &b), 3);
        let inter = intersect_spans(&a, &b);
        assert_eq!(inter.len(), 1);
        assert!(inter[0][1] != BigRational::zero());
        // dim(A) + dim(B) = dim(A+B) + dim(A cap B)
        assert_eq!(span_dim(&a) + span_dim(&b), sum_dim(&a, &b) + inter.len());
    }
}
