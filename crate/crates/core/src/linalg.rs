//! Fixed-size complex matrices for the coin and momentum-space operators.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

pub type C64 = Complex64;

/// Amplitude vector over the coin basis `00, 01, 10, 11`.
pub type Spinor = [C64; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareMatrix<const N: usize>(pub [[C64; N]; N]);

pub type Matrix2 = SquareMatrix<2>;
pub type Matrix4 = SquareMatrix<4>;

impl<const N: usize> SquareMatrix<N> {
    pub fn zeros() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn diagonal(entries: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, e) in entries.into_iter().enumerate() {
            m.0[i][i] = e;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entry of `|M^dagger M - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = (0..N).map(|l| self.0[i][l] * rhs.0[l][j]).sum();
            }
        }
        m
    }
}

impl<const N: usize> Index<(usize, usize)> for SquareMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for SquareMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Matrix2 {
    pub fn from_rows(rows: [[C64; 2]; 2]) -> Self {
        Self(rows)
    }

    /// Kronecker product `self ⊗ other`, row index `2 i + k`, column `2 j + l`.
    pub fn kron(&self, other: &Matrix2) -> Matrix4 {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Roots of the characteristic polynomial, the one with larger real part first.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let tr = self.trace();
        let disc = (tr * tr - 4.0 * self.determinant()).sqrt();
        let a = 0.5 * (tr + disc);
        let b = 0.5 * (tr - disc);
        if a.re >= b.re {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// Unit vector spanning the kernel of `self - lambda I`.
    ///
    /// Picks whichever row of the shifted matrix gives the better-conditioned
    /// orthogonal complement.
    pub fn eigenvector(&self, lambda: C64) -> [C64; 2] {
        let m = [
            [self.0[0][0] - lambda, self.0[0][1]],
            [self.0[1][0], self.0[1][1] - lambda],
        ];
        let from_row0 = [m[0][1], -m[0][0]];
        let from_row1 = [m[1][1], -m[1][0]];
        let n0 = norm(&from_row0);
        let n1 = norm(&from_row1);
        let (v, n) = if n0 >= n1 {
            (from_row0, n0)
        } else {
            (from_row1, n1)
        };
        if n == 0.0 {
            return [ONE, ZERO];
        }
        [v[0] / n, v[1] / n]
    }
}

pub fn kron2(u: &[C64; 2], v: &[C64; 2]) -> Spinor {
    [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
}

/// Inner product, conjugate-linear in the first argument.
pub fn inner<const N: usize>(u: &[C64; N], v: &[C64; N]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm<const N: usize>(v: &[C64; N]) -> f64 {
    norm_sqr(v).sqrt()
}

pub fn max_abs_diff<const N: usize>(u: &[C64; N], v: &[C64; N]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = Matrix2::from_rows([[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]]);
        let b = Matrix2::from_rows([[c(0.0, 1.0), c(5.0, 0.0)], [c(6.0, 0.0), c(7.0, 0.0)]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 0)], c(0.0, 1.0));
        assert_eq!(k[(1, 2)], c(2.0 * 6.0, 0.0));
        assert_eq!(k[(3, 3)], c(28.0, 0.0));
        assert_eq!(k[(2, 1)], c(15.0, 0.0));
    }

    #[test]
    fn eigenpairs_of_a_normal_matrix() {
        let m = Matrix2::from_rows([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]);
        let [l1, l2] = m.eigenvalues();
        assert!((l1 - ONE).norm() < 1e-15);
        assert!((l2 + ONE).norm() < 1e-15);
        for l in [l1, l2] {
            let v = m.eigenvector(l);
            let mv = m.apply(&v);
            assert!(max_abs_diff(&mv, &[l * v[0], l * v[1]]) < 1e-15);
            assert!((norm(&v) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn identity_is_unitary() {
        assert_eq!(Matrix4::identity().unitarity_defect(), 0.0);
    }
}
