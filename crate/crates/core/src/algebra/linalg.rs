//! Dense matrices over Q[i] with exact row reduction.
//!
//! The matrices built by this crate are very sparse, so elimination skips
//! zero entries instead of using a sparse format.

use std::fmt;

use num_traits::{One, Zero};

use super::gauss::GaussRational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<GaussRational>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Solution set of `A x = b`: one particular solution plus a kernel basis.
#[derive(Debug, Clone)]
pub struct Solution {
    pub particular: Vec<GaussRational>,
    pub kernel: Vec<Vec<GaussRational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![GaussRational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = GaussRational::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(data: Vec<Vec<GaussRational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussRational) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<GaussRational> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.data[i][j].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.data[j][i].conj())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self.data[i][j] * c)
    }

    pub fn mul_vec(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = GaussRational::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self; other]`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows_with_cols(data, self.cols)
    }

    fn from_rows_with_cols(data: Vec<Vec<GaussRational>>, cols: usize) -> Matrix {
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Sub-matrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.data[rows[i]][cols[j]].clone())
    }

    /// Gauss-Jordan elimination. Pivot search takes the first nonzero entry
    /// in the current column, so the result does not depend on scheduling
    /// or hashing.
    pub fn rref(&self) -> Rref {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            let support: Vec<usize> = (c..self.cols).filter(|&j| !m[r][j].is_zero()).collect();
            for &j in &support {
                m[r][j] = &m[r][j] * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for &j in &support {
                    row[j] -= &(&factor * &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: Matrix::from_rows_with_cols(m, self.cols),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column (the free
    /// entry set to one).
    pub fn kernel(&self) -> Vec<Vec<GaussRational>> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Solves `self * x = rhs`; `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[GaussRational]) -> Option<Solution> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let augmented = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.data[i][j].clone()
            } else {
                rhs[i].clone()
            }
        });
        let red = augmented.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![GaussRational::zero(); self.cols];
        for (row, &pc) in red.pivots.iter().enumerate() {
            particular[pc] = red.matrix.data[row][self.cols].clone();
        }
        let kernel = kernel_from_rref(&red, self.cols);
        Some(Solution { particular, kernel })
    }

    pub fn determinant(&self) -> GaussRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = GaussRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return GaussRational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] * &inv;
                for j in c..n {
                    let sub = &factor * &m[c][j];
                    m[i][j] -= &sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.data[i][j].clone()
            } else if j - n == i {
                GaussRational::one()
            } else {
                GaussRational::zero()
            }
        });
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| red.matrix.data[i][n + j].clone()))
    }
}

impl Rref {
    /// Kernel basis of the reduced matrix restricted to its first `cols`
    /// columns.
    pub fn kernel(&self, cols: usize) -> Vec<Vec<GaussRational>> {
        kernel_from_rref(self, cols)
    }
}

fn kernel_from_rref(red: &Rref, cols: usize) -> Vec<Vec<GaussRational>> {
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (row, &pc) in red.pivots.iter().enumerate() {
            if pc < cols {
                v[pc] = Some(row);
            }
        }
        v
    };
    (0..cols)
        .filter(|&c| pivot_set[c].is_none())
        .map(|free| {
            let mut v = vec![GaussRational::zero(); cols];
            v[free] = GaussRational::one();
            for (row, &pc) in red.pivots.iter().enumerate() {
                if pc < cols {
                    v[pc] = -&red.matrix.data[row][free];
                }
            }
            v
        })
        .collect()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| g(s)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&["1", "2", "3"], &["2", "4", "6"], &["0", "1", "i"]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&["1", "1"], &["1", "-1"]]);
        let s = a.solve(&[g("2"), g("0")]).unwrap();
        assert_eq!(s.particular, vec![g("1"), g("1")]);
        assert!(s.kernel.is_empty());
        let b = m(&[&["1", "1"], &["2", "2"]]);
        assert!(b.solve(&[g("1"), g("3")]).is_none());
        let s = b.solve(&[g("1"), g("2")]).unwrap();
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(a.determinant(), g("-1"));
        let b = m(&[&["1+i", "2"], &["1/2", "3i"]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), Matrix::identity(2));
        assert!(m(&[&["1", "2"], &["2", "4"]]).inverse().is_none());
        assert_eq!(m(&[&["1", "2"], &["2", "4"]]).determinant(), g("0"));
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = Matrix::zeros(3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel().len(), 4);
    }
}
