//! Exact dense linear algebra over the rationals.
//!
//! Everything here is pivot-exact Gaussian elimination; there are no
//! eigenvalues and no floating point. Matrices are small (the largest in
//! the crate are intersection forms on a handful of curves), so a plain
//! row-major `Vec` is enough.

use num_traits::{One, Signed, Zero};

use crate::rat::{rat, Rat};

/// Dense row-major matrix over `Rat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == QMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].clone();
            for j in col..m.cols {
                let v = &m[(rank, j)] / &inv;
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r != rank && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(r, j)] - &f * &m[(rank, j)];
                        m[(r, j)] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space, reduced so the first nonzero entry of
    /// each vector is 1.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].clone();
            for j in col..m.cols {
                let v = &m[(rank, j)] / &inv;
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r != rank && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(r, j)] - &f * &m[(rank, j)];
                        m[(r, j)] = v;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        let free_cols: Vec<usize> = (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
        free_cols
            .into_iter()
            .map(|free| {
                let mut v = vec![Rat::zero(); m.cols];
                v[free] = Rat::one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -m[(r, free)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b` exactly. Returns `None` when inconsistent; the
    /// returned solution sets all free variables to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut m = QMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            m[(i, self.cols)] = b[i].clone();
        }
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m[(rank, col)].clone();
            for j in col..=self.cols {
                let v = &m[(rank, j)] / &inv;
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r != rank && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in col..=self.cols {
                        let v = &m[(r, j)] - &f * &m[(rank, j)];
                        m[(r, j)] = v;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        // Inconsistent if a zero row has nonzero rhs.
        for r in rank..m.rows {
            if !m[(r, self.cols)].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric matrix, computed by
/// congruence diagonalization (Lagrange reduction). Exact by Sylvester's law.
pub fn symmetric_inertia(m: &QMatrix) -> (usize, usize, usize) {
    assert_eq!(m.rows(), m.cols(), "inertia of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    debug_assert!(
        (0..n).all(|i| (0..n).all(|j| a[(i, j)] == a[(j, i)])),
        "matrix not symmetric"
    );
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    let mut k = 0;
    while k < n {
        // Prefer a nonzero diagonal pivot.
        let diag = (k..n).find(|&i| !a[(i, i)].is_zero());
        let i = match diag {
            Some(i) => i,
            None => {
                // All remaining diagonal entries vanish. A nonzero
                // off-diagonal entry yields a hyperbolic pair; apply the
                // congruence row_i += row_j / col_i += col_j to expose it.
                let mut off = None;
                'search: for i in k..n {
                    for j in (i + 1)..n {
                        if !a[(i, j)].is_zero() {
                            off = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = off else {
                    zero += n - k;
                    break;
                };
                for c in 0..n {
                    let v = &a[(i, c)] + &a[(j, c)];
                    a[(i, c)] = v;
                }
                for r in 0..n {
                    let v = &a[(r, i)] + &a[(r, j)];
                    a[(r, i)] = v;
                }
                i
            }
        };
        // Move pivot to position k (symmetric swap).
        if i != k {
            for c in 0..n {
                let tmp = a[(i, c)].clone();
                a[(i, c)] = a[(k, c)].clone();
                a[(k, c)] = tmp;
            }
            for r in 0..n {
                let tmp = a[(r, i)].clone();
                a[(r, i)] = a[(r, k)].clone();
                a[(r, k)] = tmp;
            }
        }
        let d = a[(k, k)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in (k + 1)..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let f = &a[(r, k)] / &d;
            for c in 0..n {
                let v = &a[(r, c)] - &f * &a[(k, c)];
                a[(r, c)] = v;
            }
            for c in 0..n {
                let v = &a[(c, r)] - &f * &a[(c, k)];
                a[(c, r)] = v;
            }
        }
        k += 1;
    }
    (pos, neg, zero)
}
