//! The family `a = z ⊗ e₁ / (1 + i zn)`, `b = e₁ ⊗ z̄ / (1 + i zn)` on
//! `C(S^{2n}, Mₙ(C))`, checked algebraically for `n = 2` and `n = 3`.
//!
//! For `n ≥ 3` only the algebraic layer is verified: `1 − 2ba` is
//! `diag(φ(zn), 1, …, 1)`, `1 − 2ab` is `I − (2/(1+izn)²) z zᴴ`, and `ab`, `ba`
//! share the nonzero eigenvalue `(1 − zn²)/(1 + izn)²`. No homotopy statement
//! is machine-checked here.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{denom, phi_raw, rank_one_eigenvalue};
use crate::error::{Error, Result};
use crate::linalg2::{Complex, ONE, ZERO};
use crate::sphere::{latitudes, SpherePoint4};

pub const SUPPORTED_N: [usize; 2] = [2, 3];

#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint2n {
    /// `z₀ … z_{n−1}`.
    pub z: Vec<Complex>,
    /// The real last coordinate.
    pub zn: f64,
}

impl SpherePoint2n {
    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn norm(&self) -> f64 {
        (self.z.iter().map(|c| c.norm_sqr()).sum::<f64>() + self.zn * self.zn).sqrt()
    }
}

impl From<&SpherePoint4> for SpherePoint2n {
    fn from(x: &SpherePoint4) -> Self {
        SpherePoint2n {
            z: vec![x.z0, x.z1],
            zn: x.z2,
        }
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatN {
    n: usize,
    data: Vec<Complex>,
}

impl MatN {
    pub fn zeros(n: usize) -> Self {
        MatN {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatN::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self, s: Complex) -> Self {
        MatN {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Upper bound on the second singular value via 2×2 minors:
    /// `σ₁σ₂ ≤ ‖Λ²M‖_F` and `σ₁ ≥ ‖M‖_F / √n`.
    pub fn second_singular_bound(&self) -> f64 {
        let fro = self.frobenius();
        if fro == 0.0 {
            return 0.0;
        }
        let n = self.n;
        let mut minors = 0.0;
        for i0 in 0..n {
            for i1 in (i0 + 1)..n {
                for j0 in 0..n {
                    for j1 in (j0 + 1)..n {
                        let d = self[(i0, j0)] * self[(i1, j1)] - self[(i0, j1)] * self[(i1, j0)];
                        minors += d.norm_sqr();
                    }
                }
            }
        }
        (n as f64).sqrt() * minors.sqrt() / fro
    }
}

impl std::ops::Index<(usize, usize)> for MatN {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatN {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &MatN {
    type Output = MatN;
    fn add(self, o: &MatN) -> MatN {
        MatN {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &MatN {
    type Output = MatN;
    fn sub(self, o: &MatN) -> MatN {
        MatN {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &MatN {
    type Output = MatN;
    fn mul(self, o: &MatN) -> MatN {
        let n = self.n;
        let mut out = MatN::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }
}

fn check_n(n: usize) -> Result<()> {
    if SUPPORTED_N.contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedN(n))
    }
}

/// First column `z / (1 + i zn)`, other columns zero.
pub fn eval_a_n(x: &SpherePoint2n) -> MatN {
    let q = denom(x.zn);
    let mut m = MatN::zeros(x.n());
    for (i, zi) in x.z.iter().enumerate() {
        m[(i, 0)] = zi / q;
    }
    m
}

/// First row `z̄ / (1 + i zn)`, other rows zero.
pub fn eval_b_n(x: &SpherePoint2n) -> MatN {
    eval_b_variant(x, BVariant::Conjugated)
}

/// How `b` is built; the unconjugated variant is a negative control.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BVariant {
    #[default]
    Conjugated,
    Unconjugated,
}

pub fn eval_b_variant(x: &SpherePoint2n, variant: BVariant) -> MatN {
    let q = denom(x.zn);
    let mut m = MatN::zeros(x.n());
    for (j, zj) in x.z.iter().enumerate() {
        let v = match variant {
            BVariant::Conjugated => zj.conj(),
            BVariant::Unconjugated => *zj,
        };
        m[(0, j)] = v / q;
    }
    m
}

/// Deterministic grid on S^{2n−1} ⊂ Cⁿ: moduli from spherical angles on the
/// positive orthant of S^{n−1} (each angle on `shell_count/4 + 1` equispaced
/// values in `[0, π/2]`), phases on `shell_count` equispaced values for every
/// nonzero modulus. For `n = 2` this is the S³ shell grid of the sphere module.
pub fn shell_grid_n(n: usize, shell_count: usize) -> Result<Vec<Vec<Complex>>> {
    if shell_count < 8 {
        return Err(Error::InvalidResolution(format!(
            "shell_count must be >= 8, got {shell_count}"
        )));
    }
    let e = shell_count / 4 + 1;
    let angle_cs = |k: usize| -> (f64, f64) {
        if k == 0 {
            (1.0, 0.0)
        } else if k == e - 1 {
            (0.0, 1.0)
        } else {
            let a = k as f64 * FRAC_PI_2 / (e - 1) as f64;
            (a.cos(), a.sin())
        }
    };
    // moduli vectors, recursively: (cos η, sin η · rest)
    fn moduli(n: usize, e: usize, angle_cs: &dyn Fn(usize) -> (f64, f64)) -> Vec<Vec<f64>> {
        if n == 1 {
            return vec![vec![1.0]];
        }
        let mut out = Vec::new();
        for k in 0..e {
            let (c, s) = angle_cs(k);
            if s == 0.0 {
                let mut v = vec![c];
                v.extend(std::iter::repeat_n(0.0, n - 1));
                out.push(v);
                continue;
            }
            for rest in moduli(n - 1, e, angle_cs) {
                let mut v = vec![c];
                v.extend(rest.iter().map(|r| r * s));
                out.push(v);
            }
        }
        out
    }
    let phase = |j: usize| {
        if j == 0 {
            ONE
        } else {
            let (s, c) = (2.0 * PI * j as f64 / shell_count as f64).sin_cos();
            Complex::new(c, s)
        }
    };
    let mut points = Vec::new();
    for mods in moduli(n, e, &angle_cs) {
        let mut partial: Vec<Vec<Complex>> = vec![Vec::with_capacity(n)];
        for &r in &mods {
            let mut next = Vec::new();
            for p in &partial {
                if r == 0.0 {
                    let mut q = p.clone();
                    q.push(ZERO);
                    next.push(q);
                } else {
                    for j in 0..shell_count {
                        let mut q = p.clone();
                        q.push(phase(j) * r);
                        next.push(q);
                    }
                }
            }
            partial = next;
        }
        points.extend(partial);
    }
    Ok(points)
}

/// Product mesh on S^{2n}: poles plus interior latitudes in `zn` crossed with
/// the S^{2n−1} shell grid, latitudes as in the S⁴ mesh.
pub fn mesh_s2n(n: usize, lat_count: usize, shell_count: usize) -> Result<Vec<SpherePoint2n>> {
    let lats = latitudes(lat_count)?;
    let shell = shell_grid_n(n, shell_count)?;
    let pole = |zn: f64| SpherePoint2n {
        z: vec![ZERO; n],
        zn,
    };
    let mut out = Vec::with_capacity(2 + lats.len() * shell.len());
    out.push(pole(1.0));
    for lat in &lats {
        for w in &shell {
            out.push(SpherePoint2n {
                z: w.iter().map(|c| c * lat.radius).collect(),
                zn: lat.z2,
            });
        }
    }
    out.push(pole(-1.0));
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub n: usize,
    pub points: usize,
    /// `max ‖(1 − 2ba)(x) − diag(φ(zn), 1, …, 1)‖_F`.
    pub diagonal_residual: f64,
    /// `max ‖(1 − 2ab)(x) − (I − (2/(1+izn)²) z zᴴ)‖_F`.
    pub outer_residual: f64,
    /// Deviation of `ab`, `ba` from rank-one spectra `{λ, 0, …}` with `λ` closed form.
    pub eigen_residual: f64,
    /// Largest bound on the second singular value of `a(x)` or `b(x)`.
    pub rank_residual: f64,
}

impl FamilyCheck {
    /// Largest deviation across the three identities.
    pub fn max_residual(&self) -> f64 {
        self.diagonal_residual
            .max(self.outer_residual)
            .max(self.eigen_residual)
    }
}

fn rank_one_spectrum_residual(m: &MatN, lambda: Complex, eigvec: Option<&[Complex]>) -> f64 {
    // (M² = λM) forces σ(M) ⊂ {0, λ}; tr M = λ fixes multiplicity one
    let sq = &(m * m) - &m.scale(lambda);
    let mut r = sq.frobenius().max((m.trace() - lambda).norm());
    if let Some(v) = eigvec {
        let mv = m.mul_vec(v);
        let dev = mv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        r = r.max(dev);
    }
    r
}

fn check_point(x: &SpherePoint2n, variant: BVariant) -> FamilyCheck {
    let n = x.n();
    let a = eval_a_n(x);
    let b = eval_b_variant(x, variant);
    let ab = &a * &b;
    let ba = &b * &a;
    let id = MatN::identity(n);
    let two = Complex::new(2.0, 0.0);

    let mut diag = MatN::identity(n);
    diag[(0, 0)] = phi_raw(x.zn);
    let one_minus_2ba = &id - &ba.scale(two);

    let q = denom(x.zn);
    let k = two / (q * q);
    let mut outer = MatN::zeros(n);
    for i in 0..n {
        for j in 0..n {
            outer[(i, j)] = x.z[i] * x.z[j].conj();
        }
    }
    let closed_ab = &id - &outer.scale(k);
    let one_minus_2ab = &id - &ab.scale(two);

    let lambda = rank_one_eigenvalue(x.zn);
    let eigen = rank_one_spectrum_residual(&ab, lambda, Some(&x.z))
        .max(rank_one_spectrum_residual(&ba, lambda, None));

    FamilyCheck {
        n,
        points: 1,
        diagonal_residual: (&one_minus_2ba - &diag).frobenius(),
        outer_residual: (&one_minus_2ab - &closed_ab).frobenius(),
        eigen_residual: eigen,
        rank_residual: a.second_singular_bound().max(b.second_singular_bound()),
    }
}

pub fn family_identity_check(n: usize, mesh: &[SpherePoint2n]) -> Result<FamilyCheck> {
    family_identity_check_with(n, mesh, BVariant::Conjugated)
}

pub fn family_identity_check_with(
    n: usize,
    mesh: &[SpherePoint2n],
    variant: BVariant,
) -> Result<FamilyCheck> {
    check_n(n)?;
    if mesh.is_empty() {
        return Err(Error::Empty("mesh"));
    }
    if let Some(bad) = mesh.iter().find(|x| x.n() != n) {
        return Err(Error::InvalidResolution(format!(
            "mesh point has dimension {} but n = {n}",
            bad.n()
        )));
    }
    Ok(mesh
        .par_iter()
        .map(|x| check_point(x, variant))
        .reduce(
            || FamilyCheck {
                n,
                ..Default::default()
            },
            |l, r| FamilyCheck {
                n,
                points: l.points + r.points,
                diagonal_residual: l.diagonal_residual.max(r.diagonal_residual),
                outer_residual: l.outer_residual.max(r.outer_residual),
                eigen_residual: l.eigen_residual.max(r.eigen_residual),
                rank_residual: l.rank_residual.max(r.rank_residual),
            },
        ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval_a, eval_b};
    use crate::sphere::{mesh_s4, ShellGrid};

    fn point(z: &[f64], zn: f64) -> SpherePoint2n {
        SpherePoint2n {
            z: z.iter().map(|&r| Complex::new(r, 0.0)).collect(),
            zn,
        }
    }

    #[test]
    fn n2_matches_algebra_bitwise() {
        for x in mesh_s4(9, 12).unwrap().points {
            let y = SpherePoint2n::from(&x);
            let (a, b) = (eval_a(&x), eval_b(&x));
            let (an, bn) = (eval_a_n(&y), eval_b_n(&y));
            assert_eq!([an[(0, 0)], an[(0, 1)], an[(1, 0)], an[(1, 1)]], [a.m00, a.m01, a.m10, a.m11]);
            assert_eq!([bn[(0, 0)], bn[(0, 1)], bn[(1, 0)], bn[(1, 1)]], [b.m00, b.m01, b.m10, b.m11]);
        }
    }

    #[test]
    fn n3_examples() {
        let a = eval_a_n(&point(&[1.0, 0.0, 0.0], 0.0));
        let mut e11 = MatN::zeros(3);
        e11[(0, 0)] = ONE;
        assert_eq!(a, e11);
        assert_eq!(eval_a_n(&point(&[0.0, 0.0, 0.0], 1.0)), MatN::zeros(3));
        let b = eval_b_n(&point(&[0.0, 1.0, 0.0], 0.0));
        let mut e12 = MatN::zeros(3);
        e12[(0, 1)] = ONE;
        assert_eq!(b, e12);
        assert_eq!(eval_b_n(&point(&[0.0, 0.0, 0.0], -1.0)), MatN::zeros(3));
    }

    #[test]
    fn shell_grid_n2_matches_sphere_module() {
        let grid = shell_grid_n(2, 12).unwrap();
        let s3 = ShellGrid::new(12).unwrap();
        assert_eq!(grid.len(), s3.points.len());
        for (g, w) in grid.iter().zip(&s3.points) {
            assert!((g[0] - w.w0).norm() < 1e-15 && (g[1] - w.w1).norm() < 1e-15);
        }
    }

    #[test]
    fn s6_mesh_size_and_norm() {
        let mesh = mesh_s2n(3, 5, 8).unwrap();
        assert_eq!(shell_grid_n(3, 8).unwrap().len(), 728);
        assert_eq!(mesh.len(), 2 + 3 * 728);
        assert!(mesh.iter().all(|x| (x.norm() - 1.0).abs() <= 1e-14));
    }

    #[test]
    fn identities_hold() {
        let m2: Vec<SpherePoint2n> = mesh_s4(17, 16).unwrap().points.iter().map(Into::into).collect();
        let c2 = family_identity_check(2, &m2).unwrap();
        assert!(c2.max_residual() <= 1e-13, "{c2:?}");
        let m3 = mesh_s2n(3, 7, 8).unwrap();
        let c3 = family_identity_check(3, &m3).unwrap();
        assert!(c3.points >= 1000);
        assert!(c3.max_residual() <= 1e-12, "{c3:?}");
        assert!(c3.rank_residual <= 1e-12);
    }

    #[test]
    fn unconjugated_b_is_caught() {
        let m3 = mesh_s2n(3, 5, 8).unwrap();
        let bad = family_identity_check_with(3, &m3, BVariant::Unconjugated).unwrap();
        assert!(bad.max_residual() > 0.1);
    }

    #[test]
    fn unsupported_dimensions() {
        let m = vec![point(&[1.0, 0.0, 0.0, 0.0], 0.0)];
        assert!(matches!(family_identity_check(4, &m), Err(Error::UnsupportedN(4))));
        assert!(matches!(family_identity_check(1, &m), Err(Error::UnsupportedN(1))));
    }

    #[test]
    fn second_singular_bound_detects_rank() {
        let mut m = MatN::identity(3);
        assert!(m.second_singular_bound() >= 1.0);
        m[(1, 1)] = ZERO;
        m[(2, 2)] = ZERO;
        assert_eq!(m.second_singular_bound(), 0.0);
    }
}
