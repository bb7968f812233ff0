//! Closed-form complex 2×2 linear algebra.
//!
//! Everything here is exact-formula: no iteration, no pivoting. The 2×2 case
//! is small enough that determinant, inverse, eigenvalues and the spectral norm
//! all have short closed forms, and keeping them explicit makes the rounding
//! behaviour easy to reason about.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Relative determinant threshold below which a matrix is treated as singular.
pub const SINGULAR_REL_DET: f64 = 1e-14;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Total order on complex numbers: lexicographic on `(re, im)`.
pub fn lex_cmp(a: &Complex, b: &Complex) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m00: Complex,
    pub m01: Complex,
    pub m10: Complex,
    pub m11: Complex,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m00: ONE,
        m01: ZERO,
        m10: ZERO,
        m11: ONE,
    };

    pub const ZERO: Mat2 = Mat2 {
        m00: ZERO,
        m01: ZERO,
        m10: ZERO,
        m11: ZERO,
    };

    pub const fn new(m00: Complex, m01: Complex, m10: Complex, m11: Complex) -> Self {
        Mat2 { m00, m01, m10, m11 }
    }

    /// Builds a matrix from real entries, row-major.
    pub fn from_real(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Mat2::new(m00.into(), m01.into(), m10.into(), m11.into())
    }

    pub fn diag(d0: Complex, d1: Complex) -> Self {
        Mat2::new(d0, ZERO, ZERO, d1)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Mat2::new(self.m00 * s, self.m01 * s, self.m10 * s, self.m11 * s)
    }

    pub fn trace(&self) -> Complex {
        self.m00 + self.m11
    }

    pub fn det(&self) -> Complex {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.m00.conj(),
            self.m10.conj(),
            self.m01.conj(),
            self.m11.conj(),
        )
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.m00.norm_sqr() + self.m01.norm_sqr() + self.m10.norm_sqr() + self.m11.norm_sqr()
    }

    /// Largest entry modulus.
    pub fn max_abs_entry(&self) -> f64 {
        self.m00
            .norm()
            .max(self.m01.norm())
            .max(self.m10.norm())
            .max(self.m11.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.m00, self.m01, self.m10, self.m11]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Second column, as a vector in C².
    pub fn second_column(&self) -> [Complex; 2] {
        [self.m01, self.m11]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 + o.m00,
            self.m01 + o.m01,
            self.m10 + o.m10,
            self.m11 + o.m11,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m00 - o.m00,
            self.m01 - o.m01,
            self.m10 - o.m10,
            self.m11 - o.m11,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.m00, -self.m01, -self.m10, -self.m11)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        mat_mul(&self, &o)
    }
}

/// Standard matrix product `x · y`.
pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    Mat2::new(
        x.m00 * y.m00 + x.m01 * y.m10,
        x.m00 * y.m01 + x.m01 * y.m11,
        x.m10 * y.m00 + x.m11 * y.m10,
        x.m10 * y.m01 + x.m11 * y.m11,
    )
}

/// Roots of `λ² − tr(m)·λ + det(m)`, sorted lexicographically by `(re, im)`.
///
/// The larger-magnitude root is taken from the quadratic formula with the
/// sign that avoids cancellation; the other root is recovered as `det / λ₁`.
pub fn eig2(m: &Mat2) -> (Complex, Complex) {
    let tr = m.trace();
    let det = m.det();
    let disc = (tr * tr - det * 4.0).sqrt();
    // Pick the sign of the square root aligned with the trace.
    let sum = if (tr.conj() * disc).re >= 0.0 {
        tr + disc
    } else {
        tr - disc
    };
    let (l1, l2) = if sum == ZERO {
        // tr = 0 and disc = 0: double root at zero.
        (ZERO, ZERO)
    } else {
        let l1 = sum * 0.5;
        (l1, det / l1)
    };
    if lex_cmp(&l1, &l2) == Ordering::Greater {
        (l2, l1)
    } else {
        (l1, l2)
    }
}

/// Largest singular value, from the eigenvalues of the Gram matrix `mᴴm`.
pub fn op_norm(m: &Mat2) -> f64 {
    // Gram eigenvalues: (t ± sqrt(t² − 4|det|²)) / 2 with t = ‖m‖_F².
    let t = m.frobenius_sq();
    let d = m.det().norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0);
    ((t + disc.sqrt()) * 0.5).sqrt()
}

/// Smallest singular value, `|det| / σ_max`.
pub fn min_singular(m: &Mat2) -> f64 {
    let smax = op_norm(m);
    if smax == 0.0 {
        0.0
    } else {
        m.det().norm() / smax
    }
}

/// Spectral condition number; `f64::INFINITY` for singular input.
pub fn cond(m: &Mat2) -> f64 {
    let smin = min_singular(m);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        op_norm(m) / smin
    }
}

/// Inverse via the adjugate formula.
///
/// Rejects `|det| ≤ 1e−14 · ‖m‖²` as singular; the threshold is scale invariant.
pub fn mat_inv(m: &Mat2) -> Result<Mat2> {
    let det = m.det();
    let scale = op_norm(m);
    if det.norm() <= SINGULAR_REL_DET * scale * scale {
        return Err(Error::SingularMatrix {
            det: det.norm(),
            norm: scale,
        });
    }
    let inv_det = det.inv();
    Ok(Mat2::new(m.m11, -m.m01, -m.m10, m.m00).scale(inv_det))
}
