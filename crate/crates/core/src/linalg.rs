//! Small fixed-size linear algebra helpers.
//!
//! Only what the engine needs: a 3-vector, a 3x3 matrix for the
//! direction-cosine work, and a dense pivoted solve for the inverse-mode
//! Newton step. Deliberately not a general linear-algebra layer.

use crate::real::Real;

/// Column 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<R> {
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Real> Vec3<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero())
    }

    pub fn dot(self, other: Self) -> R {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> R {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: R) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<R: Real> core::ops::Sub for Vec3<R> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<R> {
    pub rows: [[R; 3]; 3],
}

impl<R: Real> Mat3<R> {
    pub fn new(rows: [[R; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        let (o, z) = (R::one(), R::zero());
        Self::new([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn transpose(self) -> Self {
        let m = self.rows;
        Self::new([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn mul_vec(self, v: Vec3<R>) -> Vec3<R> {
        let m = self.rows;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn mul_mat(self, other: Self) -> Self {
        let (a, b) = (self.rows, other.rows);
        let mut out = [[R::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        Self::new(out)
    }

    pub fn determinant(self) -> R {
        let m = self.rows;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Solves `A x = b` in place by Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot collapses below `tiny`, which the callers
/// treat as a singular Jacobian.
pub fn solve_dense<R: Real>(a: &mut [Vec<R>], b: &mut [R], tiny: R) -> Option<Vec<R>> {
    let n = b.len();
    debug_assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = a[col][col].abs();
        for (row, coeffs) in a.iter().enumerate().skip(col + 1) {
            let mag = coeffs[col].abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= tiny {
            return None;
        }
        if pivot_row != col {
            a.swap(col, pivot_row);
            b.swap(col, pivot_row);
        }
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == R::zero() {
                continue;
            }
            let (pivot_rows, rest) = a.split_at_mut(row);
            let pivot = &pivot_rows[col];
            for (cell, pivot_cell) in rest[0].iter_mut().zip(pivot.iter()).skip(col) {
                *cell -= factor * *pivot_cell;
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = vec![R::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}
