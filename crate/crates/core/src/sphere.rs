//! Complex-coordinate models of S³ and S⁴ and deterministic meshes on them.
//!
//! S³ is `{(w0, w1) ∈ C² : |w0|² + |w1|² = 1}` and S⁴ is
//! `{(z0, z1, z2) ∈ C² × R : |z0|² + |z1|² + z2² = 1}`, the last coordinate
//! being the real one.
//!
//! # Grid layout
//!
//! The S³ shell grid uses Hopf coordinates
//! `w0 = cos η · e^{iξ₁}`, `w1 = sin η · e^{iξ₂}` with
//!
//! * `η_k = k · (π/2) / (E − 1)` for `k = 0..E`, where `E = shell_count / 4 + 1`;
//! * `ξ = 2π j / shell_count` for `j = 0..shell_count`.
//!
//! On the degenerate rows `η = 0` and `η = π/2` only one phase is meaningful,
//! so those rows carry `shell_count` points each. A shell therefore has
//! `2·m + (E − 2)·m²` points for `m = shell_count`.
//!
//! The S⁴ mesh crosses latitudes `z2 = cos ψ_j`, `ψ_j = jπ / (L − 1)`, with
//! the shell grid scaled by `sin ψ_j`. The two poles are stored once each.
//! When `L` is even the equator `ψ = π/2` is not on the equispaced grid and is
//! inserted as an extra latitude, so every mesh has an exact `z2 = 0` shell.
//! Point order: north pole, latitudes from north to south, south pole.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg2::{Complex, ZERO};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint3 {
    pub w0: Complex,
    pub w1: Complex,
}

impl SpherePoint3 {
    pub const fn new(w0: Complex, w1: Complex) -> Self {
        SpherePoint3 { w0, w1 }
    }

    pub fn norm(&self) -> f64 {
        (self.w0.norm_sqr() + self.w1.norm_sqr()).sqrt()
    }

    /// Real coordinates `(re w0, im w0, re w1, im w1)`.
    pub fn to_r4(&self) -> [f64; 4] {
        [self.w0.re, self.w0.im, self.w1.re, self.w1.im]
    }

    pub fn from_r4(v: [f64; 4]) -> Self {
        SpherePoint3::new(Complex::new(v[0], v[1]), Complex::new(v[2], v[3]))
    }

    /// Euclidean distance in C².
    pub fn dist(&self, other: &SpherePoint3) -> f64 {
        ((self.w0 - other.w0).norm_sqr() + (self.w1 - other.w1).norm_sqr()).sqrt()
    }

    pub fn neg(&self) -> SpherePoint3 {
        SpherePoint3::new(-self.w0, -self.w1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint4 {
    pub z0: Complex,
    pub z1: Complex,
    pub z2: f64,
}

impl SpherePoint4 {
    pub const NORTH: SpherePoint4 = SpherePoint4::new(ZERO, ZERO, 1.0);
    pub const SOUTH: SpherePoint4 = SpherePoint4::new(ZERO, ZERO, -1.0);

    pub const fn new(z0: Complex, z1: Complex, z2: f64) -> Self {
        SpherePoint4 { z0, z1, z2 }
    }

    /// Point from real parts only; handy for tests and examples.
    pub fn real(x0: f64, x1: f64, z2: f64) -> Self {
        SpherePoint4::new(x0.into(), x1.into(), z2)
    }

    pub fn norm(&self) -> f64 {
        (self.z0.norm_sqr() + self.z1.norm_sqr() + self.z2 * self.z2).sqrt()
    }

    pub fn is_pole(&self) -> bool {
        self.z0 == ZERO && self.z1 == ZERO
    }

    /// Real coordinates `(re z0, im z0, re z1, im z1, z2)`.
    pub fn to_r5(&self) -> [f64; 5] {
        [self.z0.re, self.z0.im, self.z1.re, self.z1.im, self.z2]
    }

    pub fn from_r5(v: [f64; 5]) -> Self {
        SpherePoint4::new(Complex::new(v[0], v[1]), Complex::new(v[2], v[3]), v[4])
    }

    /// Great-circle distance on S⁴.
    pub fn geodesic(&self, other: &SpherePoint4) -> f64 {
        let a = self.to_r5();
        let b = other.to_r5();
        let chord = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        2.0 * (0.5 * chord).min(1.0).asin()
    }
}

/// Sign of `z2`: `+1` upper hemisphere, `−1` lower, `0` exactly on the equator.
pub fn hemisphere_sign(x: &SpherePoint4) -> i8 {
    if x.z2 > 0.0 {
        1
    } else if x.z2 < 0.0 {
        -1
    } else {
        0
    }
}

/// `(cos θ, sin θ)` with exact values at multiples of π/2 that appear on the grids.
fn exact_cis(num: usize, den: usize) -> Complex {
    // θ = 2π num / den
    let r = (4 * num) % (4 * den);
    if r.is_multiple_of(den) {
        return match r / den {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * num as f64 / den as f64;
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// Deterministic Hopf-coordinate grid on S³.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellGrid {
    pub shell_count: usize,
    pub points: Vec<SpherePoint3>,
}

impl ShellGrid {
    pub fn new(shell_count: usize) -> Result<Self> {
        if shell_count < 8 {
            return Err(Error::InvalidResolution(format!(
                "shell_count must be >= 8, got {shell_count}"
            )));
        }
        let m = shell_count;
        let e = eta_count(m);
        let mut points = Vec::with_capacity(shell_point_count(m));
        for k in 0..e {
            let (ce, se) = if k == 0 {
                (1.0, 0.0)
            } else if k == e - 1 {
                (0.0, 1.0)
            } else {
                let eta = k as f64 * FRAC_PI_2 / (e - 1) as f64;
                (eta.cos(), eta.sin())
            };
            if k == 0 {
                for j in 0..m {
                    points.push(SpherePoint3::new(exact_cis(j, m), ZERO));
                }
            } else if k == e - 1 {
                for j in 0..m {
                    points.push(SpherePoint3::new(ZERO, exact_cis(j, m)));
                }
            } else {
                for j1 in 0..m {
                    let p1 = exact_cis(j1, m) * ce;
                    for j2 in 0..m {
                        points.push(SpherePoint3::new(p1, exact_cis(j2, m) * se));
                    }
                }
            }
        }
        Ok(ShellGrid {
            shell_count,
            points,
        })
    }

    /// Geodesic covering-radius bound of the grid on S³.
    pub fn covering_radius(&self) -> f64 {
        shell_covering_radius(self.shell_count)
    }
}

fn eta_count(shell_count: usize) -> usize {
    shell_count / 4 + 1
}

/// Number of points in one S³ shell.
pub fn shell_point_count(shell_count: usize) -> usize {
    let e = eta_count(shell_count);
    2 * shell_count + (e - 2) * shell_count * shell_count
}

/// `Δη/2 + √2·Δξ/2`: walk to the nearest η row, then along both phases.
pub fn shell_covering_radius(shell_count: usize) -> f64 {
    let d_eta = FRAC_PI_2 / (eta_count(shell_count) - 1) as f64;
    let d_xi = 2.0 * PI / shell_count as f64;
    0.5 * d_eta + SQRT_2 * 0.5 * d_xi
}

/// One latitude of the S⁴ mesh: `z2` and `sin ψ = sqrt(1 − z2²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Latitude {
    pub z2: f64,
    pub radius: f64,
}

/// Interior latitudes (poles excluded), ordered north to south.
pub fn latitudes(lat_count: usize) -> Result<Vec<Latitude>> {
    if lat_count < 3 {
        return Err(Error::InvalidResolution(format!(
            "lat_count must be >= 3, got {lat_count}"
        )));
    }
    let n = lat_count - 1;
    let angle = |j: usize| j as f64 * PI / n as f64;
    let mut out = Vec::with_capacity(lat_count);
    for j in 1..n {
        let lat = if 2 * j == n {
            Latitude {
                z2: 0.0,
                radius: 1.0,
            }
        } else if 2 * j < n {
            let (s, c) = angle(j).sin_cos();
            Latitude { z2: c, radius: s }
        } else {
            // mirror the northern value so the mesh is exactly symmetric
            let (s, c) = angle(n - j).sin_cos();
            Latitude { z2: -c, radius: s }
        };
        // insert the equator between the two central latitudes when n is odd
        if n % 2 == 1 && 2 * j == n + 1 {
            out.push(Latitude {
                z2: 0.0,
                radius: 1.0,
            });
        }
        out.push(lat);
    }
    Ok(out)
}

/// Deterministic product mesh on S⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMesh4 {
    pub lat_count: usize,
    pub shell_count: usize,
    pub latitudes: Vec<Latitude>,
    pub points: Vec<SpherePoint4>,
    covering_radius: f64,
}

impl SphereMesh4 {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Upper bound on the geodesic distance from any point of S⁴ to the mesh.
    pub fn covering_radius(&self) -> f64 {
        self.covering_radius
    }

    /// Mesh points with `z2 = 0` exactly.
    pub fn equator(&self) -> Vec<SpherePoint4> {
        self.points.iter().copied().filter(|p| p.z2 == 0.0).collect()
    }

    /// Exact number of points for the given resolution.
    pub fn expected_len(lat_count: usize, shell_count: usize) -> usize {
        let interior = lat_count - 2 + usize::from(lat_count.is_multiple_of(2));
        2 + interior * shell_point_count(shell_count)
    }

    /// CSV export, columns `re_z0,im_z0,re_z1,im_z1,z2`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re_z0,im_z0,re_z1,im_z1,z2\n");
        for p in &self.points {
            let [a, b, c, d, e] = p.to_r5();
            let _ = writeln!(out, "{a:.16e},{b:.16e},{c:.16e},{d:.16e},{e:.16e}");
        }
        out
    }
}

pub fn mesh_s4(lat_count: usize, shell_count: usize) -> Result<SphereMesh4> {
    let lats = latitudes(lat_count)?;
    let shell = ShellGrid::new(shell_count)?;
    let mut points = Vec::with_capacity(2 + lats.len() * shell.points.len());
    points.push(SpherePoint4::NORTH);
    for lat in &lats {
        for w in &shell.points {
            points.push(SpherePoint4::new(w.w0 * lat.radius, w.w1 * lat.radius, lat.z2));
        }
    }
    points.push(SpherePoint4::SOUTH);
    let d_psi = PI / (lat_count - 1) as f64;
    Ok(SphereMesh4 {
        lat_count,
        shell_count,
        latitudes: lats,
        points,
        covering_radius: 0.5 * d_psi + shell.covering_radius(),
    })
}

/// The S³ shell grid embedded at `z2 = 0`.
pub fn equator_mesh(shell_count: usize) -> Result<Vec<SpherePoint4>> {
    let shell = ShellGrid::new(shell_count)?;
    Ok(shell
        .points
        .iter()
        .map(|w| SpherePoint4::new(w.w0, w.w1, 0.0))
        .collect())
}
