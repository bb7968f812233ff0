//! Sampled spectra `σ(f) = ∪ₓ σ(f(x))` of the built-in elements and Hausdorff
//! comparisons against the circle `C`, the disk `D` and the unit circle `T`.
//!
//! A sampled cloud approximates σ from below: every value lies in the true
//! spectrum, but gaps between mesh latitudes leave parts of it unsampled. Each
//! estimate carries the mesh covering radius so that gap can be bounded.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    eval_ab, eval_ba, eval_one_minus_2ab, eval_one_minus_2ba, inverse_identity_sweep,
    INVERSE_PROBES,
};
use crate::error::{Error, Result};
use crate::linalg2::{eig2, lex_cmp, Complex, Mat2};
use crate::sphere::{SphereMesh4, SpherePoint4};

/// Granularity used to merge numerically identical eigenvalues.
pub const DEDUP_GRANULARITY: f64 = 1e-12;
/// Values with modulus below this are treated as the eigenvalue 0.
pub const ZERO_THRESHOLD: f64 = 1e-10;
/// Target samples used for the target-to-cloud half of the Hausdorff distance.
pub const TARGET_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumElement {
    Ab,
    Ba,
    OneMinus2ab,
    OneMinus2ba,
    One,
}

impl SpectrumElement {
    pub fn eval(self, x: &SpherePoint4) -> Mat2 {
        match self {
            SpectrumElement::Ab => eval_ab(x),
            SpectrumElement::Ba => eval_ba(x),
            SpectrumElement::OneMinus2ab => eval_one_minus_2ab(x),
            SpectrumElement::OneMinus2ba => eval_one_minus_2ba(x),
            SpectrumElement::One => Mat2::IDENTITY,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SpectrumElement::Ab => "ab",
            SpectrumElement::Ba => "ba",
            SpectrumElement::OneMinus2ab => "one-minus-2ab",
            SpectrumElement::OneMinus2ba => "one-minus-2ba",
            SpectrumElement::One => "one",
        }
    }

    pub fn parse(tag: &str) -> Option<Self> {
        [
            SpectrumElement::Ab,
            SpectrumElement::Ba,
            SpectrumElement::OneMinus2ab,
            SpectrumElement::OneMinus2ba,
            SpectrumElement::One,
        ]
        .into_iter()
        .find(|e| e.tag() == tag)
    }

    /// The set the sampled spectrum should approximate.
    pub fn target(self) -> Option<TargetSet> {
        match self {
            SpectrumElement::Ab | SpectrumElement::Ba => Some(TargetSet::circle_c()),
            SpectrumElement::OneMinus2ab | SpectrumElement::OneMinus2ba => {
                Some(TargetSet::unit_circle())
            }
            SpectrumElement::One => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub element: SpectrumElement,
    /// Deduplicated eigenvalues, sorted lexicographically by `(re, im)`.
    pub cloud: Vec<Complex>,
    pub lat_count: usize,
    pub shell_count: usize,
    pub covering_radius: f64,
}

impl SpectrumEstimate {
    /// The cloud with values of modulus below [`ZERO_THRESHOLD`] removed.
    pub fn nonzero(&self) -> Vec<Complex> {
        self.cloud
            .iter()
            .copied()
            .filter(|z| z.norm() >= ZERO_THRESHOLD)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        cloud_to_csv(&self.cloud)
    }
}

fn dedup_key(z: &Complex) -> (i64, i64) {
    (
        (z.re / DEDUP_GRANULARITY).round() as i64,
        (z.im / DEDUP_GRANULARITY).round() as i64,
    )
}

/// Sorts by key, then value, and keeps the smallest representative per key,
/// so the result does not depend on the input order.
fn dedup(mut values: Vec<Complex>) -> Vec<Complex> {
    values.sort_by(|a, b| dedup_key(a).cmp(&dedup_key(b)).then(lex_cmp(a, b)));
    values.dedup_by(|later, first| dedup_key(later) == dedup_key(first));
    values.sort_by(lex_cmp);
    values
}

pub fn sample_spectrum(element: SpectrumElement, mesh: &SphereMesh4) -> Result<SpectrumEstimate> {
    if mesh.is_empty() {
        return Err(Error::Empty("mesh"));
    }
    let chunks: Vec<Vec<Complex>> = mesh
        .points
        .par_chunks(4096)
        .map(|chunk| {
            let vals = chunk
                .iter()
                .flat_map(|x| {
                    let (l1, l2) = eig2(&element.eval(x));
                    [l1, l2]
                })
                .collect();
            dedup(vals)
        })
        .collect();
    Ok(SpectrumEstimate {
        element,
        cloud: dedup(chunks.concat()),
        lat_count: mesh.lat_count,
        shell_count: mesh.shell_count,
        covering_radius: mesh.covering_radius(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TargetKind {
    CircleC,
    DiskD,
    UnitCircleT,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetSet {
    pub kind: TargetKind,
    #[serde(serialize_with = "serialize_complex")]
    pub centre: Complex,
    pub radius: f64,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl TargetSet {
    /// Circle with centre 1/2 and radius 1/2.
    pub fn circle_c() -> Self {
        TargetSet {
            kind: TargetKind::CircleC,
            centre: Complex::new(0.5, 0.0),
            radius: 0.5,
        }
    }

    /// Closed disk with centre 1/2 and radius 1/2.
    pub fn disk_d() -> Self {
        TargetSet {
            kind: TargetKind::DiskD,
            centre: Complex::new(0.5, 0.0),
            radius: 0.5,
        }
    }

    pub fn unit_circle() -> Self {
        TargetSet {
            kind: TargetKind::UnitCircleT,
            centre: Complex::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    /// Exact distance from `z` to the set.
    pub fn distance(&self, z: Complex) -> f64 {
        let r = (z - self.centre).norm();
        match self.kind {
            TargetKind::CircleC | TargetKind::UnitCircleT => (r - self.radius).abs(),
            TargetKind::DiskD => (r - self.radius).max(0.0),
        }
    }

    /// `n` deterministic samples of the set. Circles use `n` equispaced angles;
    /// the disk uses `√n` rings (including the centre ring) of `√n` angles.
    pub fn samples(&self, n: usize) -> Vec<Complex> {
        let on_circle = |radius: f64, k: usize, m: usize| {
            let (s, c) = (2.0 * PI * k as f64 / m as f64).sin_cos();
            self.centre + Complex::new(c, s) * radius
        };
        match self.kind {
            TargetKind::CircleC | TargetKind::UnitCircleT => {
                (0..n).map(|k| on_circle(self.radius, k, n)).collect()
            }
            TargetKind::DiskD => {
                let side = ((n as f64).sqrt().round() as usize).max(1);
                let mut out = Vec::with_capacity(side * side);
                for ring in 0..side {
                    let rho = if side == 1 {
                        self.radius
                    } else {
                        self.radius * ring as f64 / (side - 1) as f64
                    };
                    for k in 0..side {
                        out.push(on_circle(rho, k, side));
                    }
                }
                out
            }
        }
    }

    /// `∂D = C`: the boundary of the disk target.
    pub fn boundary(&self) -> TargetSet {
        match self.kind {
            TargetKind::DiskD => TargetSet {
                kind: TargetKind::CircleC,
                ..*self
            },
            _ => *self,
        }
    }
}

/// Two-sided Hausdorff distance between `cloud` and `target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HausdorffDistance {
    /// `max_{λ ∈ cloud} dist(λ, target)`, exact.
    pub cloud_to_target: f64,
    /// `max_{t ∈ samples} dist(t, cloud)` over the target samples.
    pub target_to_cloud: f64,
}

impl HausdorffDistance {
    pub fn value(&self) -> f64 {
        self.cloud_to_target.max(self.target_to_cloud)
    }
}

pub fn hausdorff_to_target_with(
    cloud: &[Complex],
    target: &TargetSet,
    target_samples: usize,
) -> Result<HausdorffDistance> {
    if cloud.is_empty() {
        return Err(Error::Empty("spectrum cloud"));
    }
    if target_samples == 0 {
        return Err(Error::Empty("target samples"));
    }
    let cloud_to_target = cloud
        .iter()
        .map(|z| target.distance(*z))
        .fold(0.0, f64::max);
    let target_to_cloud = target
        .samples(target_samples)
        .par_iter()
        .map(|t| nearest(cloud, *t))
        .reduce(|| 0.0, f64::max);
    Ok(HausdorffDistance {
        cloud_to_target,
        target_to_cloud,
    })
}

/// Hausdorff distance of the cloud to `target` with the default sampling.
pub fn hausdorff_to_target(cloud: &[Complex], target: &TargetSet) -> Result<HausdorffDistance> {
    hausdorff_to_target_with(cloud, target, TARGET_SAMPLES)
}

fn nearest(cloud: &[Complex], z: Complex) -> f64 {
    cloud
        .iter()
        .map(|c| (c - z).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Symmetric Hausdorff distance between two finite clouds.
pub fn cloud_hausdorff(x: &[Complex], y: &[Complex]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Empty("spectrum cloud"));
    }
    let one_sided = |p: &[Complex], q: &[Complex]| {
        p.par_iter()
            .map(|z| nearest(q, *z))
            .reduce(|| 0.0, f64::max)
    };
    Ok(one_sided(x, y).max(one_sided(y, x)))
}

/// Orthonormal basis of the tangent space of S⁴ ⊂ R⁵ at `x`, by Gram–Schmidt
/// on the coordinate axes (the axis most aligned with `x` is dropped).
pub fn tangent_basis(x: &SpherePoint4) -> [[f64; 5]; 4] {
    let p = x.to_r5();
    let skip = (0..5)
        .max_by(|&i, &j| p[i].abs().total_cmp(&p[j].abs()))
        .unwrap_or(0);
    let mut basis = [[0.0; 5]; 4];
    for (filled, axis) in (0..5).filter(|&i| i != skip).enumerate() {
        let mut v = [0.0; 5];
        v[axis] = 1.0;
        let dot: f64 = (0..5).map(|i| v[i] * p[i]).sum();
        for i in 0..5 {
            v[i] -= dot * p[i];
        }
        for b in basis.iter().take(filled) {
            let dot: f64 = (0..5).map(|i| v[i] * b[i]).sum();
            for i in 0..5 {
                v[i] -= dot * b[i];
            }
        }
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        basis[filled] = v.map(|c| c / n);
    }
    basis
}

/// Point at geodesic distance `h` from `x` in the unit tangent direction `d`.
pub fn geodesic_step(x: &SpherePoint4, d: &[f64; 5], h: f64) -> SpherePoint4 {
    let p = x.to_r5();
    let (s, c) = h.sin_cos();
    let mut v = [0.0; 5];
    for i in 0..5 {
        v[i] = c * p[i] + s * d[i];
    }
    SpherePoint4::from_r5(v)
}

/// Finite-difference step for local Lipschitz estimates.
pub const LIPSCHITZ_STEP: f64 = 1e-5;

/// Gradient-norm estimate of a function on S⁴ at `x` from central differences
/// along an orthonormal tangent basis. `diff(p, q)` measures `|g(p) − g(q)|`.
pub fn local_lipschitz<D>(x: &SpherePoint4, diff: D) -> f64
where
    D: Fn(&SpherePoint4, &SpherePoint4) -> f64,
{
    let h = LIPSCHITZ_STEP;
    tangent_basis(x)
        .iter()
        .map(|d| {
            let plus = geodesic_step(x, d, h);
            let minus = geodesic_step(x, d, -h);
            let g = diff(&plus, &minus) / (2.0 * h);
            g * g
        })
        .sum::<f64>()
        .sqrt()
}

fn pair_hausdorff(p: (Complex, Complex), q: (Complex, Complex)) -> f64 {
    let near = |z: Complex, s: (Complex, Complex)| (z - s.0).norm().min((z - s.1).norm());
    near(p.0, q).max(near(p.1, q)).max(near(q.0, p)).max(near(q.1, p))
}

/// Largest local Lipschitz estimate of `x ↦ σ(element(x))` over the mesh,
/// measured in the Hausdorff metric on eigenvalue pairs.
pub fn eigenvalue_lipschitz(element: SpectrumElement, mesh: &SphereMesh4) -> f64 {
    mesh.points
        .par_iter()
        .map(|x| {
            local_lipschitz(x, |p, q| {
                pair_hausdorff(eig2(&element.eval(p)), eig2(&element.eval(q)))
            })
        })
        .reduce(|| 0.0, f64::max)
}

/// Result of comparing `σ(ab) \ {0}` with `σ(ba) \ {0}` on a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutativityCheck {
    /// Symmetric Hausdorff distance of the nonzero clouds.
    pub distance: f64,
    /// Max inverse-identity residual over the mesh and the probe multipliers.
    pub inverse_residual: f64,
    pub covering_radius: f64,
    /// Max of the eigenvalue Lipschitz estimates of `ab` and `ba`.
    pub lipschitz: f64,
    /// `2 · covering_radius · lipschitz`: the contract for `distance`.
    pub bound: f64,
}

pub fn commutativity_check(mesh: &SphereMesh4) -> Result<CommutativityCheck> {
    commutativity_check_between(SpectrumElement::Ab, SpectrumElement::Ba, mesh)
}

/// Same as [`commutativity_check`] for an arbitrary pair of built-ins.
pub fn commutativity_check_between(
    left: SpectrumElement,
    right: SpectrumElement,
    mesh: &SphereMesh4,
) -> Result<CommutativityCheck> {
    let l = sample_spectrum(left, mesh)?.nonzero();
    let r = sample_spectrum(right, mesh)?.nonzero();
    let distance = match (l.is_empty(), r.is_empty()) {
        (true, true) => 0.0,
        (false, false) => cloud_hausdorff(&l, &r)?,
        _ => f64::INFINITY,
    };
    let lipschitz = eigenvalue_lipschitz(left, mesh).max(eigenvalue_lipschitz(right, mesh));
    let covering_radius = mesh.covering_radius();
    Ok(CommutativityCheck {
        distance,
        inverse_residual: inverse_identity_sweep(mesh, &INVERSE_PROBES).max_residual,
        covering_radius,
        lipschitz,
        bound: 2.0 * covering_radius * lipschitz,
    })
}

/// `max |(|λ| − 1)|` over the cloud.
pub fn unit_modulus_deviation(cloud: &[Complex]) -> f64 {
    cloud
        .iter()
        .map(|z| (z.norm() - 1.0).abs())
        .fold(0.0, f64::max)
}

pub fn cloud_to_csv(cloud: &[Complex]) -> String {
    let mut out = String::from("re,im\n");
    for z in cloud {
        let _ = writeln!(out, "{:.16e},{:.16e}", z.re, z.im);
    }
    out
}

/// Minimal static SVG scatter of a cloud in a unit-square viewport.
///
/// The data window is the square `[cx − h, cx + h] × [cy − h, cy + h]` centred
/// on the bounding box of the cloud, with `h` = 0.55 × the larger box side
/// (at least 0.55). A value `z` maps to `x = (re − cx + h) / 2h` and
/// `y = 1 − (im − cy + h) / 2h`, so the imaginary axis points up.
pub fn cloud_to_svg(cloud: &[Complex]) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in cloud {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(z.im);
        y1 = y1.max(z.im);
    }
    if cloud.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let h = (0.55 * (x1 - x0).max(y1 - y0)).max(0.55);
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"512\" height=\"512\">\n\
         <rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\"/>\n",
    );
    for z in cloud {
        let x = (z.re - cx + h) / (2.0 * h);
        let y = 1.0 - (z.im - cy + h) / (2.0 * h);
        let _ = writeln!(out, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.004\" fill=\"black\"/>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rank_one_eigenvalue;
    use crate::linalg2::ONE;
    use crate::sphere::mesh_s4;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity_cloud_is_one() {
        let mesh = mesh_s4(5, 8).unwrap();
        let est = sample_spectrum(SpectrumElement::One, &mesh).unwrap();
        assert_eq!(est.cloud, vec![ONE]);
    }

    #[test]
    fn one_minus_2ba_cloud_on_unit_circle() {
        let mesh = mesh_s4(33, 8).unwrap();
        let est = sample_spectrum(SpectrumElement::OneMinus2ba, &mesh).unwrap();
        assert!(unit_modulus_deviation(&est.cloud) <= 1e-12);
    }

    #[test]
    fn ab_cloud_on_circle_c() {
        let mesh = mesh_s4(33, 8).unwrap();
        let est = sample_spectrum(SpectrumElement::Ab, &mesh).unwrap();
        let c = TargetSet::circle_c();
        let worst = est.nonzero().iter().map(|z| c.distance(*z)).fold(0.0, f64::max);
        assert!(worst <= 1e-10);
        // and the nonzero values are the closed-form eigenvalues on the mesh latitudes
        for z in est.nonzero() {
            let hit = mesh
                .latitudes
                .iter()
                .any(|lat| (rank_one_eigenvalue(lat.z2) - z).norm() <= 1e-12);
            assert!(hit, "{z} not a closed-form eigenvalue");
        }
    }

    #[test]
    fn hausdorff_of_two_points_to_circle_c() {
        // Oracle: brute force over a much denser target sampling.
        let cloud = [Complex::new(0.0, 0.0), ONE];
        let d = hausdorff_to_target(&cloud, &TargetSet::circle_c()).unwrap();
        assert_eq!(d.cloud_to_target, 0.0);
        let oracle = (0..100_000)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 100_000.0;
                let p = Complex::new(0.5 + 0.5 * t.cos(), 0.5 * t.sin());
                p.norm().min((p - ONE).norm())
            })
            .fold(0.0, f64::max);
        assert!((oracle - FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((d.value() - oracle).abs() < 1e-9);
    }

    #[test]
    fn dense_circle_samples_match_target() {
        let cloud: Vec<Complex> = TargetSet::circle_c().samples(1000);
        let d = hausdorff_to_target(&cloud, &TargetSet::circle_c()).unwrap();
        // half the chord between neighbours of a radius-1/2 circle sampled 1000 times
        assert!(d.value() <= 0.5 * (PI / 1000.0) + 1e-12);
    }

    #[test]
    fn degenerate_inputs_error() {
        let c = TargetSet::circle_c();
        assert!(matches!(
            hausdorff_to_target_with(&[ONE], &c, 0),
            Err(Error::Empty(_))
        ));
        assert!(hausdorff_to_target(&[], &c).is_err());
    }

    #[test]
    fn disk_distance_and_boundary() {
        let d = TargetSet::disk_d();
        assert_eq!(d.distance(Complex::new(0.5, 0.0)), 0.0);
        assert!((d.distance(Complex::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(d.boundary(), TargetSet::circle_c());
        assert_eq!(d.samples(4096).len(), 4096);
        // the circle C is far from covering D: its centre is 1/2 away
        let c_cloud = TargetSet::circle_c().samples(512);
        let h = hausdorff_to_target(&c_cloud, &d).unwrap();
        assert!((h.target_to_cloud - 0.5).abs() < 1e-9);
    }

    #[test]
    fn commutativity_on_coarse_mesh() {
        let coarse = mesh_s4(9, 8).unwrap();
        let check = commutativity_check(&coarse).unwrap();
        assert!(check.distance <= 0.15);
        assert!(check.distance <= check.bound);
        assert!(check.inverse_residual <= 1e-10);
        let fine = mesh_s4(17, 8).unwrap();
        let refined = commutativity_check(&fine).unwrap();
        assert!(refined.distance <= check.distance + 1e-12);
    }

    #[test]
    fn self_check_is_zero() {
        let mesh = mesh_s4(5, 8).unwrap();
        let check =
            commutativity_check_between(SpectrumElement::One, SpectrumElement::One, &mesh).unwrap();
        assert_eq!(check.distance, 0.0);
    }

    #[test]
    fn dedup_is_order_independent() {
        let vals = vec![
            Complex::new(0.3, 0.1),
            Complex::new(0.3 + 1e-16, 0.1),
            Complex::new(-1.0, 0.0),
        ];
        let mut rev = vals.clone();
        rev.reverse();
        assert_eq!(dedup(vals), dedup(rev));
    }

    #[test]
    fn tangent_basis_orthonormal() {
        let x = SpherePoint4::new(Complex::new(0.3, -0.4), Complex::new(0.1, 0.5), 0.49f64.sqrt());
        let p = x.to_r5();
        let b = tangent_basis(&x);
        for i in 0..4 {
            let dp: f64 = (0..5).map(|k| b[i][k] * p[k]).sum();
            assert!(dp.abs() < 1e-14);
            for j in 0..4 {
                let d: f64 = (0..5).map(|k| b[i][k] * b[j][k]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn svg_is_static_scatter() {
        let svg = cloud_to_svg(&[ONE, Complex::new(-1.0, 0.0)]);
        assert!(svg.starts_with("<svg"));
        assert!(!svg.contains("<script"));
        assert_eq!(svg.matches("<circle").count(), 2);
    }
}
