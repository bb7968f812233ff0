//! The concrete elements `a`, `b`, `c` of `C(S⁴, M₂(C))` and their combinations.
//!
//! Products are always evaluated by multiplying operand values at a point;
//! the closed forms (`c`, `diag(φ(z2), 1)`) exist only as the independent side
//! of the identity checks.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg2::{cond, eig2, mat_inv, mat_mul, op_norm, Complex, Mat2, I, ONE, ZERO};
use crate::sphere::{SphereMesh4, SpherePoint4};

/// `1 + i·z2`, the common denominator of `a` and `b`. Never zero for real `z2`.
#[inline]
pub fn denom(z2: f64) -> Complex {
    Complex::new(1.0, z2)
}

/// `a(x) = (1/(1+iz2)) [[z0, 0], [z1, 0]]`.
pub fn eval_a(x: &SpherePoint4) -> Mat2 {
    let q = denom(x.z2);
    Mat2::new(x.z0 / q, ZERO, x.z1 / q, ZERO)
}

/// `b(x) = (1/(1+iz2)) [[z̄0, z̄1], [0, 0]]`.
pub fn eval_b(x: &SpherePoint4) -> Mat2 {
    let q = denom(x.z2);
    Mat2::new(x.z0.conj() / q, x.z1.conj() / q, ZERO, ZERO)
}

/// `c(x) = I − (2/(1+iz2)²) · z zᴴ` with `z = (z0, z1)`.
pub fn eval_c(x: &SpherePoint4) -> Mat2 {
    let q = denom(x.z2);
    let k = Complex::new(2.0, 0.0) / (q * q);
    let (z0, z1) = (x.z0, x.z1);
    let outer = Mat2::new(z0 * z0.conj(), z0 * z1.conj(), z1 * z0.conj(), z1 * z1.conj());
    Mat2::IDENTITY - outer.scale(k)
}

pub fn eval_ab(x: &SpherePoint4) -> Mat2 {
    mat_mul(&eval_a(x), &eval_b(x))
}

pub fn eval_ba(x: &SpherePoint4) -> Mat2 {
    mat_mul(&eval_b(x), &eval_a(x))
}

pub fn eval_one_minus_2ab(x: &SpherePoint4) -> Mat2 {
    Mat2::IDENTITY - eval_ab(x).scale(2.0.into())
}

pub fn eval_one_minus_2ba(x: &SpherePoint4) -> Mat2 {
    Mat2::IDENTITY - eval_ba(x).scale(2.0.into())
}

/// `φ(z2) = −((1 − iz2)/(1 + iz2))²` without the domain check.
#[inline]
pub(crate) fn phi_raw(z2: f64) -> Complex {
    let r = Complex::new(1.0, -z2) / denom(z2);
    -(r * r)
}

/// `φ(z2) = −((1 − iz2)/(1 + iz2))²`, a unit-modulus value for `z2 ∈ [−1, 1]`.
pub fn phi(z2: f64) -> Result<Complex> {
    if !(-1.0..=1.0).contains(&z2) {
        return Err(Error::DomainError {
            value: z2,
            domain: "[-1, 1]",
        });
    }
    Ok(phi_raw(z2))
}

/// Closed-form nonzero eigenvalue of `ab(x)` and `ba(x)`: `(1 − z2²)/(1 + iz2)²`.
pub fn rank_one_eigenvalue(z2: f64) -> Complex {
    let q = denom(z2);
    Complex::new(1.0 - z2 * z2, 0.0) / (q * q)
}

/// Element of `C(S⁴, M₂(C))` built from the primitives by products and
/// affine combinations.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraElement {
    A,
    B,
    CMap,
    One,
    Product(Box<AlgebraElement>, Box<AlgebraElement>),
    AffineCombination(Vec<(Complex, AlgebraElement)>),
}

impl AlgebraElement {
    pub fn product(x: AlgebraElement, y: AlgebraElement) -> Self {
        AlgebraElement::Product(Box::new(x), Box::new(y))
    }

    pub fn ab() -> Self {
        Self::product(AlgebraElement::A, AlgebraElement::B)
    }

    pub fn ba() -> Self {
        Self::product(AlgebraElement::B, AlgebraElement::A)
    }

    pub fn one_minus_2ab() -> Self {
        AlgebraElement::AffineCombination(vec![
            (ONE, AlgebraElement::One),
            (Complex::new(-2.0, 0.0), Self::ab()),
        ])
    }

    pub fn one_minus_2ba() -> Self {
        AlgebraElement::AffineCombination(vec![
            (ONE, AlgebraElement::One),
            (Complex::new(-2.0, 0.0), Self::ba()),
        ])
    }

    pub fn eval(&self, x: &SpherePoint4) -> Mat2 {
        match self {
            AlgebraElement::A => eval_a(x),
            AlgebraElement::B => eval_b(x),
            AlgebraElement::CMap => eval_c(x),
            AlgebraElement::One => Mat2::IDENTITY,
            AlgebraElement::Product(l, r) => mat_mul(&l.eval(x), &r.eval(x)),
            AlgebraElement::AffineCombination(terms) => terms
                .iter()
                .fold(Mat2::ZERO, |acc, (k, e)| acc + e.eval(x).scale(*k)),
        }
    }
}

/// Residual and conditioning of the `1 − μab` / `1 − μba` inverse identity at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseResidual {
    /// `‖(I − μ ba)(I + μ b u a) − I‖` with `u = (I − μ ab)⁻¹`.
    pub residual: f64,
    /// Spectral condition number of `I − μ ab`.
    pub cond: f64,
}

/// Checks that `I + μ b u a` inverts `I − μ ba` whenever `u` inverts `I − μ ab`.
pub fn check_inverse_identity(x: &SpherePoint4, mu: Complex) -> Result<InverseResidual> {
    let a = eval_a(x);
    let b = eval_b(x);
    let lhs = Mat2::IDENTITY - mat_mul(&a, &b).scale(mu);
    let u = mat_inv(&lhs)?;
    let rhs = Mat2::IDENTITY - mat_mul(&b, &a).scale(mu);
    let candidate = Mat2::IDENTITY + mat_mul(&mat_mul(&b, &u), &a).scale(mu);
    Ok(InverseResidual {
        residual: op_norm(&(mat_mul(&rhs, &candidate) - Mat2::IDENTITY)),
        cond: cond(&lhs),
    })
}

/// Probe multipliers for the inverse identity sweep. `1/μ` lands on, inside and
/// outside the circle `|λ − 1/2| = 1/2`.
pub const INVERSE_PROBES: [Complex; 8] = [
    Complex::new(0.5, 0.0),
    Complex::new(1.0, 0.0),
    Complex::new(2.0, 0.0),
    Complex::new(3.0, 0.0),
    Complex::new(-1.0, 0.0),
    I,
    Complex::new(0.0, -2.0),
    Complex::new(1.0, 1.0),
];

/// Condition-number ceiling for the inverse identity contract.
pub const INVERSE_COND_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSweep {
    pub max_residual: f64,
    pub checked: usize,
    /// Singular or worse-than-`INVERSE_COND_LIMIT` cases left out of the maximum.
    pub skipped: usize,
}

pub fn inverse_identity_sweep(mesh: &SphereMesh4, probes: &[Complex]) -> InverseSweep {
    let per_point = |x: &SpherePoint4| {
        let mut acc = InverseSweep {
            max_residual: 0.0,
            checked: 0,
            skipped: 0,
        };
        for &mu in probes {
            match check_inverse_identity(x, mu) {
                Ok(r) if r.cond <= INVERSE_COND_LIMIT => {
                    acc.max_residual = acc.max_residual.max(r.residual);
                    acc.checked += 1;
                }
                _ => acc.skipped += 1,
            }
        }
        acc
    };
    mesh.points.par_iter().map(per_point).reduce(
        || InverseSweep {
            max_residual: 0.0,
            checked: 0,
            skipped: 0,
        },
        |l, r| InverseSweep {
            max_residual: l.max_residual.max(r.max_residual),
            checked: l.checked + r.checked,
            skipped: l.skipped + r.skipped,
        },
    )
}

/// Maximum of `residual(x)` over the mesh; an exact, order-independent reduction.
pub fn max_over_mesh<F>(mesh: &SphereMesh4, residual: F) -> f64
where
    F: Fn(&SpherePoint4) -> f64 + Sync + Send,
{
    mesh.points
        .par_iter()
        .map(residual)
        .reduce(|| 0.0, f64::max)
}

/// `max ‖(1 − 2ab)(x) − c(x)‖` over the mesh.
pub fn identity_residual(mesh: &SphereMesh4) -> f64 {
    max_over_mesh(mesh, |x| op_norm(&(eval_one_minus_2ab(x) - eval_c(x))))
}

/// `max ‖(1 − 2ba)(x) − diag(φ(z2), 1)‖` over the mesh.
pub fn diagonal_residual(mesh: &SphereMesh4) -> f64 {
    max_over_mesh(mesh, |x| {
        op_norm(&(eval_one_minus_2ba(x) - Mat2::diag(phi_raw(x.z2), ONE)))
    })
}

/// Deviation of `eig2(ab(x))` from `{(1 − z2²)/(1 + iz2)², 0}` over the mesh.
pub fn ab_eigen_residual(mesh: &SphereMesh4) -> f64 {
    max_over_mesh(mesh, |x| {
        let (l1, l2) = eig2(&eval_ab(x));
        let lam = rank_one_eigenvalue(x.z2);
        let direct = (l1 - lam).norm().max(l2.norm());
        let swapped = (l2 - lam).norm().max(l1.norm());
        direct.min(swapped)
    })
}

/// Worst deviation of `|det c(x)|` from 1.
pub fn det_c_residual(mesh: &SphereMesh4) -> f64 {
    max_over_mesh(mesh, |x| (eval_c(x).det().norm() - 1.0).abs())
}

/// `min |det c(x)|` over the mesh.
pub fn min_abs_det_c(mesh: &SphereMesh4) -> f64 {
    mesh.points
        .par_iter()
        .map(|x| eval_c(x).det().norm())
        .reduce(|| f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::mesh_s4;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(x: &Mat2, y: &Mat2, tol: f64) -> bool {
        op_norm(&(*x - *y)) <= tol
    }

    #[test]
    fn a_examples() {
        let e11 = Mat2::from_real(1.0, 0.0, 0.0, 0.0);
        assert_eq!(eval_a(&SpherePoint4::real(1.0, 0.0, 0.0)), e11);
        assert_eq!(eval_a(&SpherePoint4::NORTH), Mat2::ZERO);
        assert_eq!(
            eval_a(&SpherePoint4::real(0.0, 1.0, 0.0)),
            Mat2::from_real(0.0, 0.0, 1.0, 0.0)
        );
    }

    #[test]
    fn b_examples() {
        let e11 = Mat2::from_real(1.0, 0.0, 0.0, 0.0);
        assert_eq!(eval_b(&SpherePoint4::real(1.0, 0.0, 0.0)), e11);
        assert_eq!(eval_b(&SpherePoint4::SOUTH), Mat2::ZERO);
        assert_eq!(
            eval_b(&SpherePoint4::real(0.0, 1.0, 0.0)),
            Mat2::from_real(0.0, 1.0, 0.0, 0.0)
        );
        // conjugation is applied
        let x = SpherePoint4::new(c(0.0, 1.0), ZERO, 0.0);
        assert_eq!(eval_b(&x).m00, c(0.0, -1.0));
    }

    #[test]
    fn c_examples() {
        assert_eq!(eval_c(&SpherePoint4::NORTH), Mat2::IDENTITY);
        assert_eq!(
            eval_c(&SpherePoint4::real(1.0, 0.0, 0.0)),
            Mat2::from_real(-1.0, 0.0, 0.0, 1.0)
        );
        assert_eq!(
            eval_c(&SpherePoint4::real(0.0, 1.0, 0.0)),
            Mat2::from_real(1.0, 0.0, 0.0, -1.0)
        );
    }

    #[test]
    fn one_minus_2ab_examples() {
        assert_eq!(eval_one_minus_2ab(&SpherePoint4::NORTH), Mat2::IDENTITY);
        let x = SpherePoint4::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        assert!(close(
            &eval_one_minus_2ab(&x),
            &Mat2::from_real(0.0, -1.0, -1.0, 0.0),
            1e-15
        ));
    }

    #[test]
    fn one_minus_2ba_examples() {
        let m = eval_one_minus_2ba(&SpherePoint4::real(1.0, 0.0, 0.0));
        assert_eq!(m, Mat2::from_real(-1.0, 0.0, 0.0, 1.0));
        assert_eq!(eval_one_minus_2ba(&SpherePoint4::NORTH), Mat2::IDENTITY);
        assert_eq!(eval_one_minus_2ba(&SpherePoint4::SOUTH), Mat2::IDENTITY);
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0).unwrap(), c(-1.0, 0.0));
        assert!((phi(1.0).unwrap() - ONE).norm() < 1e-15);
        assert!((phi(-1.0).unwrap() - ONE).norm() < 1e-15);
        assert!(matches!(phi(1.5), Err(Error::DomainError { .. })));
        assert!(phi(f64::NAN).is_err());
    }

    #[test]
    fn phi_has_unit_modulus() {
        for k in 0..=2000 {
            let z2 = -1.0 + k as f64 / 1000.0;
            assert!((phi(z2).unwrap().norm() - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn element_tree_matches_direct_evaluation() {
        let mesh = mesh_s4(5, 8).unwrap();
        for x in &mesh.points {
            assert_eq!(AlgebraElement::one_minus_2ab().eval(x), eval_one_minus_2ab(x));
            assert_eq!(AlgebraElement::ab().eval(x), eval_ab(x));
            assert_eq!(AlgebraElement::One.eval(x), Mat2::IDENTITY);
            assert_eq!(AlgebraElement::CMap.eval(x), eval_c(x));
        }
    }

    #[test]
    fn identity_and_diagonal_laws() {
        let mesh = mesh_s4(17, 16).unwrap();
        assert!(identity_residual(&mesh) <= 1e-13);
        assert!(diagonal_residual(&mesh) <= 1e-13);
        assert!(ab_eigen_residual(&mesh) <= 1e-12);
        assert!(det_c_residual(&mesh) <= 1e-12);
    }

    #[test]
    fn rank_one_structure() {
        let mesh = mesh_s4(9, 12).unwrap();
        for x in &mesh.points {
            let q = denom(x.z2);
            let a = eval_a(x);
            let b = eval_b(x);
            assert!(close(&mat_mul(&a, &a), &a.scale(x.z0 / q), 1e-13));
            assert!(close(&mat_mul(&b, &b), &b.scale(x.z0.conj() / q), 1e-13));
        }
    }

    #[test]
    fn inverse_identity_examples() {
        let x = SpherePoint4::real(0.6, 0.0, 0.8);
        assert_eq!(check_inverse_identity(&x, ZERO).unwrap().residual, 0.0);
        let r = check_inverse_identity(&SpherePoint4::NORTH, c(2.0, 0.0)).unwrap();
        assert!(r.residual <= 1e-12);
        let x = SpherePoint4::real(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        // 1 − ab is singular on the equator: ab has eigenvalue 1 there
        assert!(matches!(
            check_inverse_identity(&x, ONE),
            Err(Error::SingularMatrix { .. })
        ));
        let r = check_inverse_identity(&x, c(0.5, 0.0)).unwrap();
        assert!(r.residual <= 1e-10);
    }

    #[test]
    fn inverse_sweep_conditioned_cases() {
        let mesh = mesh_s4(9, 8).unwrap();
        let sweep = inverse_identity_sweep(&mesh, &INVERSE_PROBES);
        assert!(sweep.max_residual <= 1e-10);
        assert_eq!(sweep.checked + sweep.skipped, mesh.len() * INVERSE_PROBES.len());
        assert!(sweep.skipped > 0, "μ = 1 must hit the equator singularity");
    }
}
