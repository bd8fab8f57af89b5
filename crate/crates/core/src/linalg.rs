//! Small dense helpers for the handful of n×n systems (n ≤ 3 in practice)
//! that show up in cofactor expansion, the feasibility oracle and axis
//! extraction. Matrices are row-major `Vec<f64>` or slices.

/// Square row-major matrix of dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Matrix { n, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    pub fn pow(&self, exp: u32) -> Matrix {
        (0..exp).fold(Matrix::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), v)).collect()
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> f64 {
        determinant(self.n, &self.data)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Determinant of an n×n row-major matrix.
///
/// Sizes up to 3 use the explicit expansion so that cofactors of the
/// physical-space rows are reproducible term by term; larger sizes fall
/// back to Gaussian elimination with partial pivoting.
pub fn determinant(n: usize, m: &[f64]) -> f64 {
    debug_assert_eq!(m.len(), n * n);
    match n {
        0 => 1.0,
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {
            let mut a = m.to_vec();
            let mut det = 1.0;
            for col in 0..n {
                let pivot = (col..n)
                    .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                    .unwrap();
                if a[pivot * n + col] == 0.0 {
                    return 0.0;
                }
                if pivot != col {
                    for j in 0..n {
                        a.swap(pivot * n + j, col * n + j);
                    }
                    det = -det;
                }
                let p = a[col * n + col];
                det *= p;
                for i in col + 1..n {
                    let f = a[i * n + col] / p;
                    for j in col..n {
                        a[i * n + j] -= f * a[col * n + j];
                    }
                }
            }
            det
        }
    }
}

/// Solves `A t = b` for square `A` (row-major). Returns `None` when the
/// pivot falls below `singular_tol` relative to the largest entry.
pub fn solve(n: usize, a: &[f64], b: &[f64], singular_tol: f64) -> Option<Vec<f64>> {
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))
            .unwrap();
        if m[pivot * n + col].abs() <= singular_tol * scale {
            return None;
        }
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            rhs.swap(pivot, col);
        }
        for i in col + 1..n {
            let f = m[i * n + col] / m[col * n + col];
            for j in col..n {
                m[i * n + j] -= f * m[col * n + j];
            }
            rhs[i] -= f * rhs[col];
        }
    }
    let mut t = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i * n + j] * t[j]).sum();
        t[i] = (rhs[i] - s) / m[i * n + i];
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_and_general_agree() {
        let m = [2.0, -1.0, 0.5, 1.0, 3.0, -2.0, 0.25, 4.0, 1.5];
        // cofactor expansion by hand
        let expected = 2.0 * (3.0 * 1.5 - (-2.0) * 4.0) - (-1.0) * (1.0 * 1.5 - (-2.0) * 0.25)
            + 0.5 * (1.0 * 4.0 - 3.0 * 0.25);
        assert!((determinant(3, &m) - expected).abs() < 1e-12);

        let m4 = [
            1.0, 2.0, 0.0, 0.0, //
            3.0, 4.0, 0.0, 0.0, //
            0.0, 0.0, 5.0, 6.0, //
            0.0, 0.0, 7.0, 8.0,
        ];
        assert!((determinant(4, &m4) - (-2.0) * (-2.0)).abs() < 1e-12);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = [4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let t = [1.0, -2.0, 0.5];
        let b: Vec<f64> = (0..3).map(|i| dot(&a[i * 3..i * 3 + 3], &t)).collect();
        let got = solve(3, &a, &b, 1e-12).unwrap();
        for (g, e) in got.iter().zip(t) {
            assert!((g - e).abs() < 1e-12);
        }
        assert!(solve(2, &[1.0, 2.0, 2.0, 4.0], &[1.0, 1.0], 1e-12).is_none());
    }
}
