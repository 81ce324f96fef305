//! Small dense complex matrices.
//!
//! Everything in this crate lives in a two- or three-dimensional Hilbert
//! space, so matrices are stack-allocated arrays with straightforward O(N^3)
//! arithmetic. No BLAS, no heap.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Complex double, the only scalar used in this crate.
pub type C64 = Complex<f64>;

/// Dense N x N complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize> {
    entries: [[C64; N]; N],
}

/// 2x2 complex matrix.
pub type Mat2 = CMatrix<2>;
/// 3x3 complex matrix.
pub type Mat3 = CMatrix<3>;

impl<const N: usize> CMatrix<N> {
    /// All-zero matrix.
    pub fn zeros() -> Self {
        Self { entries: [[C64::new(0.0, 0.0); N]; N] }
    }

    /// Identity matrix.
    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major array of rows.
    pub fn from_rows(rows: [[C64; N]; N]) -> Self {
        Self { entries: rows }
    }

    /// Diagonal matrix from real entries.
    pub fn diag(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> C64 {
        let mut t = C64::new(0.0, 0.0);
        for i in 0..N {
            t += self.entries[i][i];
        }
        t
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0_f64;
        for row in &self.entries {
            for e in row {
                m = m.max(e.norm());
            }
        }
        m
    }

    /// Largest entrywise difference `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                m = m.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        m
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0_f64;
        for row in &self.entries {
            for e in row {
                s += e.norm_sqr();
            }
        }
        s.sqrt()
    }

    /// Largest deviation from Hermiticity, `max |a_ij - conj(a_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut m = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                m = m.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        m
    }

    /// Hermitian part `(A + A^dag) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = 0.5 * (self.entries[i][j] + self.entries[j][i].conj());
            }
        }
        m
    }

    /// Scale by a complex factor.
    pub fn scale(&self, factor: C64) -> Self {
        let mut m = *self;
        for row in &mut m.entries {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        m
    }

    /// Scale by a real factor.
    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// Commutator `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Anticommutator `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Conjugation `U^dag A U`.
    pub fn conjugated_by(&self, u: &Self) -> Self {
        u.adjoint() * *self * *u
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] += rhs.entries[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] -= rhs.entries[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Neg for CMatrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..N {
                    m.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        m
    }
}

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Shorthand real-as-complex constructor.
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}
