//! Hopf invariant of the Hopf map as the linking number of two fibres.
//!
//! The fibres over the poles `(0, ±1)` of S² are the great circles
//! `{(e^{iθ}, 0)}` and `{(0, e^{iθ})}`. Both are projected stereographically
//! from a fixed pole into R³ and their linking number is computed with the
//! discrete Gauss double integral.
//!
//! Orientation conventions: fibres are traversed with increasing θ; R³
//! coordinates are taken in the frame `(iP, jP, kP)` of the tangent space at
//! the projection pole `P`, where `i, j, k` act on `P ∈ R⁴ ≅ H` by left
//! quaternion multiplication. The sign of the result depends on these choices
//! and is reported, not asserted.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homotopy::{hopf, S2Point};
use crate::linalg2::Complex;
use crate::sphere::SpherePoint3;
use crate::summation::NeumaierSum;

pub const MIN_FIBER_SEGMENTS: usize = 16;
pub const MIN_INVARIANT_SEGMENTS: usize = 64;
/// Minimum allowed vertex-to-segment distance between linked curves.
pub const MIN_CURVE_SEPARATION: f64 = 1e-3;
/// Minimum distance from the projection pole to a projected point.
pub const NEAR_POLE_DISTANCE: f64 = 1e-6;
/// Required distance between the projection pole and each projected fibre.
pub const POLE_CLEARANCE: f64 = 0.2;

/// Default projection pole `(1/√2, i/√2)`. It lies on the fibre over
/// `(i, 0)`, at distance `sqrt(2 − √2) ≈ 0.765` from both pole fibres.
pub const DEFAULT_PROJECTION_POLE: SpherePoint3 = SpherePoint3::new(
    Complex::new(FRAC_1_SQRT_2, 0.0),
    Complex::new(0.0, FRAC_1_SQRT_2),
);

/// A point of S³ over `p`: `h(w) = p`.
pub fn hopf_preimage(p: &S2Point) -> SpherePoint3 {
    let t = p.t.clamp(-1.0, 1.0);
    if t >= 0.0 {
        let w0 = (0.5 * (1.0 + t)).sqrt();
        // −2 w0 w̄1 = ζ
        let w1 = -(p.zeta.conj()) / (2.0 * w0);
        SpherePoint3::new(Complex::new(w0, 0.0), w1)
    } else {
        let w1 = (0.5 * (1.0 - t)).sqrt();
        let w0 = -p.zeta / (2.0 * w1);
        SpherePoint3::new(w0, Complex::new(w1, 0.0))
    }
}

/// The fibre `{e^{iθ} w}` over `p`, sampled at `θ_k = 2πk / segments`.
pub fn hopf_fiber(p: &S2Point, segments: usize) -> Result<Vec<SpherePoint3>> {
    if segments < MIN_FIBER_SEGMENTS {
        return Err(Error::InvalidCurve(format!(
            "fibre needs at least {MIN_FIBER_SEGMENTS} segments, got {segments}"
        )));
    }
    let w = hopf_preimage(p);
    Ok((0..segments)
        .map(|k| {
            let (s, c) = (2.0 * PI * k as f64 / segments as f64).sin_cos();
            let e = Complex::new(c, s);
            SpherePoint3::new(e * w.w0, e * w.w1)
        })
        .collect())
}

fn tangent_frame(pole: &SpherePoint3) -> [[f64; 4]; 3] {
    let [a, b, c, d] = pole.to_r4();
    [[-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]
}

/// Stereographic projection of S³ from `pole` onto the orthogonal R³.
pub fn stereographic(w: &SpherePoint3, pole: &SpherePoint3) -> Result<[f64; 3]> {
    let distance = w.dist(pole);
    if distance < NEAR_POLE_DISTANCE {
        return Err(Error::NearPole { distance });
    }
    let x = w.to_r4();
    let dot = |u: &[f64; 4], v: &[f64; 4]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    // 1 − x·P = |x − P|² / 2 on the unit sphere, which avoids cancellation
    let denom = 0.5 * distance * distance;
    let frame = tangent_frame(pole);
    Ok([
        dot(&x, &frame[0]) / denom,
        dot(&x, &frame[1]) / denom,
        dot(&x, &frame[2]) / denom,
    ])
}

/// Closed polyline in R³; the last vertex connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineCurve3 {
    points: Vec<[f64; 3]>,
}

impl PolylineCurve3 {
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        if points.len() < MIN_FIBER_SEGMENTS {
            return Err(Error::InvalidCurve(format!(
                "closed curve needs at least {MIN_FIBER_SEGMENTS} vertices, got {}",
                points.len()
            )));
        }
        let n = points.len();
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(Error::InvalidCurve(format!("repeated vertex at index {i}")));
            }
            if points[i].iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidCurve(format!("non-finite vertex at index {i}")));
            }
        }
        Ok(PolylineCurve3 { points })
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Segment `i` as `(start, end)`.
    pub fn segment(&self, i: usize) -> ([f64; 3], [f64; 3]) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        PolylineCurve3 { points }
    }

    pub fn translated(&self, v: [f64; 3]) -> Self {
        PolylineCurve3 {
            points: self.points.iter().map(|p| add(*p, v)).collect(),
        }
    }

    /// Applies `p ↦ R p + v` with `R` given row-major.
    pub fn transformed(&self, r: [[f64; 3]; 3], v: [f64; 3]) -> Self {
        PolylineCurve3 {
            points: self
                .points
                .iter()
                .map(|p| add([dot3(r[0], *p), dot3(r[1], *p), dot3(r[2], *p)], v))
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,z\n");
        for [x, y, z] in &self.points {
            let _ = writeln!(out, "{x:.16e},{y:.16e},{z:.16e}");
        }
        out
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn point_segment_distance(p: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot3(ab, ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot3(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    };
    norm3(sub(p, add(a, [ab[0] * t, ab[1] * t, ab[2] * t])))
}

/// Smallest vertex-to-segment distance between the two curves, both ways.
pub fn min_separation(c1: &PolylineCurve3, c2: &PolylineCurve3) -> f64 {
    let one_way = |p: &PolylineCurve3, q: &PolylineCurve3| {
        p.points
            .par_iter()
            .map(|v| {
                (0..q.len())
                    .map(|j| {
                        let (a, b) = q.segment(j);
                        point_segment_distance(*v, a, b)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min)
    };
    one_way(c1, c2).min(one_way(c2, c1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkingResult {
    pub raw: f64,
    pub rounded: i64,
    pub residual: f64,
}

impl LinkingResult {
    fn from_raw(raw: f64) -> Self {
        let rounded = raw.round();
        LinkingResult {
            raw,
            rounded: rounded as i64,
            residual: (raw - rounded).abs(),
        }
    }
}

/// Discrete Gauss linking integral with midpoint evaluation:
/// `(1/4π) Σᵢ Σⱼ (r₁ − r₂)·(Δr₁ × Δr₂) / |r₁ − r₂|³`.
///
/// Rows are summed in parallel, each with compensated summation, and merged
/// in row order so the result is reproducible bit for bit.
pub fn gauss_linking(c1: &PolylineCurve3, c2: &PolylineCurve3) -> Result<LinkingResult> {
    let distance = min_separation(c1, c2);
    if distance < MIN_CURVE_SEPARATION {
        return Err(Error::CurvesTooClose { distance });
    }
    let seg2: Vec<([f64; 3], [f64; 3])> = (0..c2.len())
        .map(|j| {
            let (a, b) = c2.segment(j);
            (midpoint(a, b), sub(b, a))
        })
        .collect();
    let rows: Vec<NeumaierSum> = (0..c1.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = c1.segment(i);
            let (m1, d1) = (midpoint(a, b), sub(b, a));
            seg2.iter()
                .map(|(m2, d2)| {
                    let r = sub(m1, *m2);
                    let n = norm3(r);
                    dot3(r, cross(d1, *d2)) / (n * n * n)
                })
                .collect()
        })
        .collect();
    let mut total = NeumaierSum::new();
    for row in &rows {
        total.merge(row);
    }
    Ok(LinkingResult::from_raw(total.value() / (4.0 * PI)))
}

fn midpoint(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])]
}

/// Projects a fibre to R³, refusing fibres that pass within
/// [`POLE_CLEARANCE`] of the projection pole.
pub fn project_fiber(fiber: &[SpherePoint3], pole: &SpherePoint3) -> Result<PolylineCurve3> {
    let clearance = fiber
        .iter()
        .map(|w| w.dist(pole))
        .fold(f64::INFINITY, f64::min);
    if clearance < POLE_CLEARANCE {
        return Err(Error::NearPole {
            distance: clearance,
        });
    }
    let points = fiber
        .iter()
        .map(|w| stereographic(w, pole))
        .collect::<Result<Vec<_>>>()?;
    PolylineCurve3::new(points)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HopfInvariant {
    pub segments: usize,
    pub linking: LinkingResult,
    /// Smallest distance from the projection pole to either fibre in S³.
    pub pole_clearance: f64,
    /// Worst `|h(sample) − p|` over both fibres.
    pub fiber_residual: f64,
}

/// Linking number of the fibres over `p` and `−p`.
pub fn hopf_invariant_over(p: &S2Point, segments: usize) -> Result<HopfInvariant> {
    hopf_invariant_with(p, segments, None)
}

/// As [`hopf_invariant_over`], optionally translating the second projected
/// fibre by `displace` (used as a negative control).
pub fn hopf_invariant_with(
    p: &S2Point,
    segments: usize,
    displace: Option<[f64; 3]>,
) -> Result<HopfInvariant> {
    if segments < MIN_INVARIANT_SEGMENTS {
        return Err(Error::InvalidCurve(format!(
            "Hopf invariant needs at least {MIN_INVARIANT_SEGMENTS} segments, got {segments}"
        )));
    }
    let q = p.antipode();
    let pole = DEFAULT_PROJECTION_POLE;
    let f1 = hopf_fiber(p, segments)?;
    let f2 = hopf_fiber(&q, segments)?;
    let fiber_residual = f1
        .iter()
        .map(|w| hopf(w).dist(p))
        .chain(f2.iter().map(|w| hopf(w).dist(&q)))
        .fold(0.0, f64::max);
    let pole_clearance = f1
        .iter()
        .chain(f2.iter())
        .map(|w| w.dist(&pole))
        .fold(f64::INFINITY, f64::min);
    let c1 = project_fiber(&f1, &pole)?;
    let mut c2 = project_fiber(&f2, &pole)?;
    if let Some(v) = displace {
        c2 = c2.translated(v);
    }
    Ok(HopfInvariant {
        segments,
        linking: gauss_linking(&c1, &c2)?,
        pole_clearance,
        fiber_residual,
    })
}

/// Hopf invariant of `h` from the fibres over the poles `(0, ±1)`.
pub fn hopf_invariant_of_h(segments: usize) -> Result<HopfInvariant> {
    hopf_invariant_over(&S2Point::NORTH, segments)
}

/// The two pole fibres, projected, for export.
pub fn default_fiber_pair(segments: usize) -> Result<(PolylineCurve3, PolylineCurve3)> {
    let pole = DEFAULT_PROJECTION_POLE;
    Ok((
        project_fiber(&hopf_fiber(&S2Point::NORTH, segments)?, &pole)?,
        project_fiber(&hopf_fiber(&S2Point::SOUTH, segments)?, &pole)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg2::ZERO;

    fn circle(centre: [f64; 3], u: [f64; 3], v: [f64; 3], n: usize) -> PolylineCurve3 {
        PolylineCurve3::new(
            (0..n)
                .map(|k| {
                    let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
                    [
                        centre[0] + c * u[0] + s * v[0],
                        centre[1] + c * u[1] + s * v[1],
                        centre[2] + c * u[2] + s * v[2],
                    ]
                })
                .collect(),
        )
        .unwrap()
    }

    /// Independent brute-force Gauss integral on the parametrised circles,
    /// using exact tangents instead of chords.
    fn gauss_oracle(
        r1: impl Fn(f64) -> ([f64; 3], [f64; 3]),
        r2: impl Fn(f64) -> ([f64; 3], [f64; 3]),
        n: usize,
    ) -> f64 {
        let h = 2.0 * PI / n as f64;
        let mut total = 0.0;
        for i in 0..n {
            let (p, dp) = r1((i as f64 + 0.5) * h);
            for j in 0..n {
                let (q, dq) = r2((j as f64 + 0.5) * h);
                let r = sub(p, q);
                let d = norm3(r);
                total += dot3(r, cross(dp, dq)) / (d * d * d) * h * h;
            }
        }
        total / (4.0 * PI)
    }

    #[test]
    fn fibres_over_poles() {
        let north = hopf_fiber(&S2Point::NORTH, 64).unwrap();
        assert!(north.iter().all(|w| w.w1 == ZERO && (w.w0.norm() - 1.0).abs() < 1e-15));
        let south = hopf_fiber(&S2Point::SOUTH, 64).unwrap();
        assert!(south.iter().all(|w| w.w0.norm() < 1e-15 && (w.w1.norm() - 1.0).abs() < 1e-15));
        let east = S2Point::new(Complex::new(-1.0, 0.0), 0.0);
        let fib = hopf_fiber(&east, 64).unwrap();
        let target = SpherePoint3::new(FRAC_1_SQRT_2.into(), FRAC_1_SQRT_2.into());
        assert!(fib.iter().any(|w| w.dist(&target) < 1e-12));
        for p in [S2Point::NORTH, S2Point::SOUTH, east, S2Point::new(Complex::new(0.48, 0.36), 0.8)] {
            for w in hopf_fiber(&p, 64).unwrap() {
                assert!(hopf(&w).dist(&p) <= 1e-12);
            }
        }
        assert!(hopf_fiber(&S2Point::NORTH, 15).is_err());
    }

    #[test]
    fn stereographic_basics() {
        let pole = DEFAULT_PROJECTION_POLE;
        let y = stereographic(&pole.neg(), &pole).unwrap();
        assert!(norm3(y) < 1e-15);
        // points orthogonal to the pole land on the unit sphere
        let frame = tangent_frame(&pole);
        for e in frame {
            let w = SpherePoint3::from_r4(e);
            assert!((norm3(stereographic(&w, &pole).unwrap()) - 1.0).abs() < 1e-14);
        }
        assert!(matches!(stereographic(&pole, &pole), Err(Error::NearPole { .. })));
    }

    #[test]
    fn default_pole_clears_both_fibres() {
        for p in [S2Point::NORTH, S2Point::SOUTH] {
            let clearance = hopf_fiber(&p, 256)
                .unwrap()
                .iter()
                .map(|w| w.dist(&DEFAULT_PROJECTION_POLE))
                .fold(f64::INFINITY, f64::min);
            assert!(clearance >= POLE_CLEARANCE);
            assert!((clearance - (2.0 - 2.0f64.sqrt()).sqrt()).abs() < 1e-3);
        }
    }

    #[test]
    fn unlink_and_translation() {
        let c1 = circle([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 128);
        let c2 = circle([0.0, 0.0, 5.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 128);
        assert_eq!(gauss_linking(&c1, &c2).unwrap().rounded, 0);
        let far = c1.translated([10.0, 0.0, 0.0]);
        let l = gauss_linking(&c1, &far).unwrap();
        assert_eq!(l.rounded, 0);
        assert!(l.residual < 1e-3);
    }

    #[test]
    fn hopf_link_brute_force() {
        let c1 = circle([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 512);
        let c2 = circle([1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 512);
        let l = gauss_linking(&c1, &c2).unwrap();
        let oracle = gauss_oracle(
            |t| ([t.cos(), t.sin(), 0.0], [-t.sin(), t.cos(), 0.0]),
            |t| ([1.0 + t.cos(), 0.0, t.sin()], [-t.sin(), 0.0, t.cos()]),
            512,
        );
        assert_eq!(l.rounded.abs(), 1);
        assert_eq!(l.rounded as f64, oracle.round());
        assert!((l.raw - oracle).abs() < 1e-3, "{} vs {oracle}", l.raw);
    }

    #[test]
    fn too_close_curves_rejected() {
        let c1 = circle([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 32);
        assert!(matches!(gauss_linking(&c1, &c1), Err(Error::CurvesTooClose { .. })));
    }

    #[test]
    fn curve_validation() {
        assert!(PolylineCurve3::new(vec![[0.0; 3]; 4]).is_err());
        let mut pts: Vec<[f64; 3]> = (0..16).map(|k| [k as f64, 0.0, 0.0]).collect();
        pts[3] = pts[2];
        assert!(PolylineCurve3::new(pts).is_err());
    }

    #[test]
    fn symmetry_orientation_and_rigid_motion() {
        let (c1, c2) = default_fiber_pair(128).unwrap();
        let l12 = gauss_linking(&c1, &c2).unwrap();
        let l21 = gauss_linking(&c2, &c1).unwrap();
        assert_eq!(l12.rounded, l21.rounded);
        assert_eq!(gauss_linking(&c1.reversed(), &c2).unwrap().rounded, -l12.rounded);
        let (s, c) = 0.7f64.sin_cos();
        let rot = [[c, -s, 0.0], [s * 0.6, c * 0.6, 0.8], [-s * 0.8, -c * 0.8, 0.6]];
        let shift = [0.3, -1.2, 2.5];
        let moved = gauss_linking(&c1.transformed(rot, shift), &c2.transformed(rot, shift)).unwrap();
        assert!((moved.raw - l12.raw).abs() <= 1e-10);
    }

    #[test]
    fn hopf_invariant_values() {
        let coarse = hopf_invariant_of_h(64).unwrap();
        assert_eq!(coarse.linking.rounded.abs(), 1);
        assert!(coarse.linking.residual <= 0.2);
        let fine = hopf_invariant_of_h(256).unwrap();
        assert_eq!(fine.linking.rounded.abs(), 1);
        assert!(fine.linking.residual <= 0.05);
        assert!(fine.fiber_residual <= 1e-12);
        assert!(hopf_invariant_of_h(32).is_err());
    }

    #[test]
    fn residual_halves_on_refinement() {
        let mut prev = hopf_invariant_of_h(64).unwrap().linking.residual;
        for n in [128, 256, 512] {
            let r = hopf_invariant_of_h(n).unwrap().linking.residual;
            assert!(r <= 0.5 * prev, "{n}: {r} vs {prev}");
            prev = r;
        }
    }

    #[test]
    fn regular_value_independence() {
        let base = hopf_invariant_of_h(128).unwrap().linking.rounded;
        for p in [
            S2Point::new(Complex::new(1.0, 0.0), 0.0),
            S2Point::new(Complex::new(0.48, 0.36), 0.8),
        ] {
            let l = hopf_invariant_over(&p, 128).unwrap().linking;
            assert_eq!(l.rounded.abs(), base.abs());
        }
    }

    #[test]
    fn displaced_fibre_unlinks() {
        let l = hopf_invariant_with(&S2Point::NORTH, 128, Some([50.0, 0.0, 0.0])).unwrap();
        assert_eq!(l.linking.rounded, 0);
    }
}
