//! Dense matrices over an exact [`Scalar`].

use std::ops::{Index, IndexMut};

use crate::scalar::{FieldScalar, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        ExactMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> ExactMatrix<T> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Every intermediate entry is a minor of the input, so each division is
    /// exact in any integral domain; over `BigInt` no fractions ever appear.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = S::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let pivot = m[(r, c)].clone();
            for i in r + 1..m.rows {
                let lead = m[(i, c)].clone();
                for k in c + 1..m.cols {
                    let v = pivot.clone() * m[(i, k)].clone() - lead.clone() * m[(r, k)].clone();
                    m[(i, k)] = v.exact_div(&prev);
                }
                m[(i, c)] = S::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// A basis of the right null space computed without leaving the ring.
    ///
    /// Fraction-free Gauss-Jordan keeps every entry a minor of the input and
    /// leaves each pivot row with the same leading entry `d`; the basis vector
    /// of a free column `f` is `d e_f - sum_i m[i][f] e_{pivot(i)}`.
    pub fn kernel_fraction_free(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let mut prev = S::one();
        let mut pivots = Vec::new();
        for c in 0..m.cols {
            let r = pivots.len();
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let pivot = m[(r, c)].clone();
            for i in (0..m.rows).filter(|&i| i != r) {
                let lead = m[(i, c)].clone();
                for k in (0..m.cols).filter(|&k| k != c) {
                    let v = pivot.clone() * m[(i, k)].clone() - lead.clone() * m[(r, k)].clone();
                    m[(i, k)] = v.exact_div(&prev);
                }
                m[(i, c)] = S::zero();
            }
            prev = pivot;
            pivots.push(c);
        }
        let mut is_pivot = vec![false; m.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..m.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![S::zero(); m.cols];
                v[f] = prev.clone();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(row, f)].clone();
                }
                v
            })
            .collect()
    }
}

impl<S: FieldScalar> ExactMatrix<S> {
    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    pub fn rref(&self) -> (ExactMatrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for k in c..m.cols {
                m[(r, k)] = m[(r, k)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for k in c..m.cols {
                    let v = m[(i, k)].clone() - factor.clone() * m[(r, k)].clone();
                    m[(i, k)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank via Gauss-Jordan; an independent route to [`ExactMatrix::rank`].
    pub fn rank_by_rref(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl<S> Index<(usize, usize)> for ExactMatrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for ExactMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
