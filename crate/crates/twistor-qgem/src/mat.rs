//! Small fixed-size complex matrices used by the twistor layer.
//!
//! Everything here is stack-allocated and written out explicitly; the
//! matrices never exceed 4x4, so generic linear algebra would only obscure
//! the index conventions.

use num_complex::Complex64;

pub type C64 = Complex64;

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 (pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[C64::new(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = C64::new(1.0, 0.0);
        m.0[1][1] = C64::new(1.0, 0.0);
        m
    }

    #[must_use]
    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse via the adjugate. Caller must ensure det is nonzero.
    #[must_use]
    pub fn inverse(&self) -> Self {
        let d = self.det();
        Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ])
    }

    #[must_use]
    pub fn mul_vec(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    #[must_use]
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 (pub [[C64; 4]; 4]);

impl Mat4 {
    pub fn zero() -> Self {
        Mat4([[C64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[must_use]
    pub fn mul_vec(&self, v: [C64; 4]) -> [C64; 4] {
        let mut out = [C64::new(0.0, 0.0); 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
        out
    }

    #[must_use]
    pub fn scale(&self, s: C64) -> Mat4 {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for c in row.iter_mut() {
                *c *= s;
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the first row.
    #[must_use]
    pub fn det(&self) -> C64 {
        let m = &self.0;
        let minor = |r: [usize; 3], c: [usize; 3]| -> C64 {
            m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
                - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
                + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
        };
        m[0][0] * minor([1, 2, 3], [1, 2, 3]) - m[0][1] * minor([1, 2, 3], [0, 2, 3])
            + m[0][2] * minor([1, 2, 3], [0, 1, 3])
            - m[0][3] * minor([1, 2, 3], [0, 1, 2])
    }

    /// Determinant of the matrix whose columns are the four given vectors.
    #[must_use]
    pub fn det_of_columns(cols: [[C64; 4]; 4]) -> C64 {
        let mut m = Mat4::zero();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..4 {
                m.0[i][j] = col[i];
            }
        }
        m.det()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn det2_and_inverse() {
        let m = Mat2([[c(2.0, 0.0), c(1.0, 1.0)], [c(0.0, -1.0), c(3.0, 0.0)]]);
        let d = m.det();
        // 2*3 - (1+i)(-i) = 6 - (-i + 1) = 5 + i
        assert_abs_diff_eq!(d.re, 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.im, 1.0, epsilon = 1e-15);
        let inv = m.inverse();
        let prod = m.mul(&inv);
        assert_abs_diff_eq!(prod.0[0][0].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(prod.0[0][1].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(prod.0[1][0].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(prod.0[1][1].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn det4_known_values() {
        assert_abs_diff_eq!(Mat4::identity().det().re, 1.0, epsilon = 1e-15);
        let mut m = Mat4::identity();
        m.0[0][0] = c(3.0, 0.0);
        m.0[2][2] = c(0.0, 2.0);
        let d = m.det();
        assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.im, 6.0, epsilon = 1e-15);
    }

    #[test]
    fn det4_column_swap_flips_sign() {
        let cols = [
            [c(1.0, 0.0), c(0.5, 1.0), c(0.0, 0.0), c(2.0, -1.0)],
            [c(0.0, 1.0), c(1.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)],
            [c(2.0, 0.0), c(0.0, 0.0), c(1.0, 1.0), c(0.0, 2.0)],
            [c(0.0, 0.0), c(1.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)],
        ];
        let d1 = Mat4::det_of_columns(cols);
        let swapped = [cols[1], cols[0], cols[2], cols[3]];
        let d2 = Mat4::det_of_columns(swapped);
        assert_abs_diff_eq!((d1 + d2).norm(), 0.0, epsilon = 1e-13);
    }
}
