//! Homotopy evidence for `1 − 2ab` and `1 − 2ba`.
//!
//! For `1 − 2ba` the null-homotopy is explicit: `(x, t) ↦ diag(φ((1−t)z2 + t), 1)`
//! stays in `GL₂` because `|φ| = 1`, and ends at the identity.
//!
//! For `1 − 2ab = c` the obstruction goes through the map
//! `f = pc/|pc| : S⁴ → S³`, `p` being projection onto the second column.
//! The checks here establish numerically that
//!
//! 1. `f` agrees with the suspension `Eh` on the equator, where `Eh = h`;
//! 2. both maps send each open hemisphere into the matching hemisphere;
//! 3. `f` and `Eh` are never antipodal, so the normalised straight line
//!    between them is a homotopy;
//! 4. `h` has Hopf invariant ±1 (see [`crate::hopf_invariant`]).
//!
//! The remaining step, that `Eh` is essential because `h` is, is the
//! Freudenthal suspension theorem and is carried as an explicit assumption.
//!
//! # Antipodal gap certification
//!
//! The gap `g(x) = |f(x) + Eh(x)|` is bounded separately on polar caps and on
//! the band between them.
//!
//! On the caps `|z2| ≥ z_c` (`z_c = 1 − δ_cap`), with `s² = 1 − z2²`:
//! `|Eh − (0, ±i)| ≤ s + (1 − |z2|)` because `Eh − (0, i z2)` has norm exactly
//! `s`; and `|pc − (0, 1)| = 2|z1| s / |1 + iz2|² ≤ 2s²`, so
//! `|f − (0, 1)| ≤ 2 |pc − (0, 1)| ≤ 4s²`. Since `|(0, 1) + (0, ±i)| = √2`,
//! `g ≥ √2 − 4s² − s − (1 − |z2|)`, which increases with `|z2|` and is
//! therefore bounded below by its value at `z_c`.
//!
//! On the band every point lies within the covering radius `r` of a mesh point
//! with `|z2| ≤ cos(max(ψ_c − r, 0))`, `ψ_c = arccos z_c`. Over those mesh
//! points the gradient of `g` is estimated by central differences and inflated
//! by [`LIPSCHITZ_SAFETY`]; the band bound is `min g − L·r`.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{eval_c, eval_one_minus_2ba, identity_residual, phi_raw};
use crate::error::{Error, Result};
use crate::hopf_invariant::{hopf_invariant_with, HopfInvariant};
use crate::linalg2::{op_norm, Complex, Mat2, I, ONE, ZERO};
use crate::sphere::{SphereMesh4, SpherePoint3, SpherePoint4};
use crate::spectrum::local_lipschitz;

/// Threshold on `|pc|` below which `f` is undefined.
pub const DEGENERATE_PROJECTION: f64 = 1e-13;
/// Polar cap half-width in `z2`.
pub const DELTA_CAP: f64 = 0.05;
/// Inflation applied to the sampled gradient maximum of the gap function.
pub const LIPSCHITZ_SAFETY: f64 = 1.5;
/// Default number of equispaced `t` values for path checks.
pub const DEFAULT_T_GRID: usize = 33;
/// Floor on the measured antipodal gap.
pub const GAP_FLOOR: f64 = 0.1;

/// The assumption the obstruction verdict rests on.
pub const FREUDENTHAL_ASSUMPTION: &str =
    "Freudenthal suspension theorem: since the Hopf map h is essential, its suspension Eh: S^4 -> S^3 is not null-homotopic";

/// A point of S² ⊂ C × R, written `(ζ, t)` with `|ζ|² + t² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S2Point {
    pub zeta: Complex,
    pub t: f64,
}

impl S2Point {
    pub const NORTH: S2Point = S2Point { zeta: ZERO, t: 1.0 };
    pub const SOUTH: S2Point = S2Point {
        zeta: ZERO,
        t: -1.0,
    };

    pub const fn new(zeta: Complex, t: f64) -> Self {
        S2Point { zeta, t }
    }

    pub fn antipode(&self) -> Self {
        S2Point::new(-self.zeta, -self.t)
    }

    pub fn norm(&self) -> f64 {
        (self.zeta.norm_sqr() + self.t * self.t).sqrt()
    }

    pub fn dist(&self, other: &S2Point) -> f64 {
        ((self.zeta - other.zeta).norm_sqr() + (self.t - other.t).powi(2)).sqrt()
    }
}

/// Hopf map `h(w0, w1) = (−2 w0 w̄1, |w0|² − |w1|²)`.
pub fn hopf(w: &SpherePoint3) -> S2Point {
    S2Point::new(
        -2.0 * w.w0 * w.w1.conj(),
        w.w0.norm_sqr() - w.w1.norm_sqr(),
    )
}

/// Suspension of the Hopf map, extended continuously by `(0, ±i)` at the poles.
pub fn suspension_eh(x: &SpherePoint4) -> SpherePoint3 {
    if x.is_pole() {
        return SpherePoint3::new(ZERO, Complex::new(0.0, x.z2.signum()));
    }
    let s = (1.0 - x.z2 * x.z2).sqrt();
    let h = hopf(&SpherePoint3::new(x.z0, x.z1));
    SpherePoint3::new(h.zeta / s, Complex::new(h.t / s, x.z2))
}

/// `pc(x)`: the second column of `c(x)`.
pub fn projected_column(x: &SpherePoint4) -> [Complex; 2] {
    eval_c(x).second_column()
}

/// `f(x) = pc(x) / |pc(x)|`.
pub fn f_map(x: &SpherePoint4) -> Result<SpherePoint3> {
    let [p0, p1] = projected_column(x);
    let norm = (p0.norm_sqr() + p1.norm_sqr()).sqrt();
    if norm <= DEGENERATE_PROJECTION {
        return Err(Error::DegenerateProjection { norm });
    }
    Ok(SpherePoint3::new(p0 / norm, p1 / norm))
}

/// The maps S⁴ → S³ taking part in the obstruction, plus controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MapS4toS3 {
    FMap,
    EhMap,
    /// `f` with the sign of its first coordinate flipped.
    SabotagedF,
    /// `−f`, antipodal to `f` everywhere.
    NegatedF,
}

impl MapS4toS3 {
    pub fn eval(self, x: &SpherePoint4) -> Result<SpherePoint3> {
        match self {
            MapS4toS3::FMap => f_map(x),
            MapS4toS3::EhMap => Ok(suspension_eh(x)),
            MapS4toS3::SabotagedF => f_map(x).map(|w| SpherePoint3::new(-w.w0, w.w1)),
            MapS4toS3::NegatedF => f_map(x).map(|w| w.neg()),
        }
    }
}

/// `((1−t) f + t Eh) / |(1−t) f + t Eh|`.
pub fn straightline_homotopy(x: &SpherePoint4, t: f64) -> Result<SpherePoint3> {
    straightline_between(MapS4toS3::FMap, MapS4toS3::EhMap, x, t)
}

pub fn straightline_between(
    from: MapS4toS3,
    to: MapS4toS3,
    x: &SpherePoint4,
    t: f64,
) -> Result<SpherePoint3> {
    let u = from.eval(x)?;
    let v = to.eval(x)?;
    let w0 = u.w0 * (1.0 - t) + v.w0 * t;
    let w1 = u.w1 * (1.0 - t) + v.w1 * t;
    let norm = (w0.norm_sqr() + w1.norm_sqr()).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::DegenerateNormalization { norm, t });
    }
    Ok(SpherePoint3::new(w0 / norm, w1 / norm))
}

/// `H(x, t) = diag(φ((1−t) z2 + t), 1)`, from `1 − 2ba` at `t = 0` to `I` at `t = 1`.
pub fn null_homotopy_ba(x: &SpherePoint4, t: f64) -> Mat2 {
    Mat2::diag(phi_raw((1.0 - t) * x.z2 + t), ONE)
}

/// `n` equispaced values in `[0, 1]`, endpoints exact.
pub fn t_grid(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|k| {
            if k == n - 1 {
                1.0
            } else {
                k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Smallest `|f(x) + g(x)|` over the mesh.
pub fn min_sum_norm(mesh: &SphereMesh4, f: MapS4toS3, g: MapS4toS3) -> Result<f64> {
    mesh.points
        .par_iter()
        .map(|x| Ok(sum_norm(&f.eval(x)?, &g.eval(x)?)))
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
}

fn sum_norm(u: &SpherePoint3, v: &SpherePoint3) -> f64 {
    ((u.w0 + v.w0).norm_sqr() + (u.w1 + v.w1).norm_sqr()).sqrt()
}

/// Rigorous lower bound of `|f + Eh|` on the caps `|z2| ≥ 1 − delta_cap`.
pub fn cap_bound(delta_cap: f64) -> f64 {
    let zc = 1.0 - delta_cap;
    let s2 = 1.0 - zc * zc;
    SQRT_2 - 4.0 * s2 - s2.sqrt() - delta_cap
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntipodalGap {
    /// `min |f + Eh|` over the mesh.
    pub min_gap: f64,
    /// `min(cap_bound, band_min − band_lipschitz · covering_radius)`.
    pub certified_lower_bound: f64,
    pub cap_bound: f64,
    pub band_min: f64,
    pub band_lipschitz: f64,
    pub covering_radius: f64,
}

pub fn antipodal_gap(mesh: &SphereMesh4) -> Result<AntipodalGap> {
    antipodal_gap_of(mesh, MapS4toS3::FMap)
}

/// Antipodal gap between `f_like` and `Eh`; the cap bound is only meaningful
/// for the genuine `f` and is replaced by the sampled cap minimum otherwise.
pub fn antipodal_gap_of(mesh: &SphereMesh4, f_like: MapS4toS3) -> Result<AntipodalGap> {
    let eh = MapS4toS3::EhMap;
    let min_gap = min_sum_norm(mesh, f_like, eh)?;
    let r = mesh.covering_radius();
    let psi_c = (1.0 - DELTA_CAP).acos();
    let band_limit = (psi_c - r).max(0.0).cos();
    let band: Vec<&SpherePoint4> = mesh
        .points
        .iter()
        .filter(|x| x.z2.abs() <= band_limit && !x.is_pole())
        .collect();
    let gap_at = |x: &SpherePoint4| -> f64 {
        match (f_like.eval(x), eh.eval(x)) {
            (Ok(u), Ok(v)) => sum_norm(&u, &v),
            _ => f64::NAN,
        }
    };
    let (band_min, grad_max) = band
        .par_iter()
        .map(|x| {
            let g = gap_at(x);
            let grad = local_lipschitz(x, |p, q| (gap_at(p) - gap_at(q)).abs());
            (g, grad)
        })
        .reduce(
            || (f64::INFINITY, 0.0),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        );
    let band_lipschitz = LIPSCHITZ_SAFETY * grad_max;
    let cap = if f_like == MapS4toS3::FMap {
        cap_bound(DELTA_CAP)
    } else {
        min_gap
    };
    let band_bound = if band.is_empty() {
        f64::INFINITY
    } else {
        band_min - band_lipschitz * r
    };
    let certified = cap.min(band_bound);
    Ok(AntipodalGap {
        min_gap,
        certified_lower_bound: if certified.is_nan() { f64::NEG_INFINITY } else { certified },
        cap_bound: cap,
        band_min,
        band_lipschitz,
        covering_radius: r,
    })
}

/// `max |f − Eh|` over equator points of the mesh.
pub fn equator_residual(mesh: &SphereMesh4, f_like: MapS4toS3) -> Result<f64> {
    mesh.points
        .par_iter()
        .filter(|x| x.z2 == 0.0)
        .map(|x| Ok(f_like.eval(x)?.dist(&suspension_eh(x))))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HemisphereCheck {
    /// `min sign(z2) · Im(second coordinate of f)` over off-equator, off-pole points.
    pub f_worst: f64,
    /// Same for `Eh`.
    pub eh_worst: f64,
}

impl HemisphereCheck {
    pub fn worst(&self) -> f64 {
        self.f_worst.min(self.eh_worst)
    }
}

pub fn hemisphere_preservation(mesh: &SphereMesh4, f_like: MapS4toS3) -> Result<HemisphereCheck> {
    let signed = |m: MapS4toS3| -> Result<f64> {
        mesh.points
            .par_iter()
            .filter(|x| x.z2 != 0.0 && !x.is_pole())
            .map(|x| Ok(x.z2.signum() * m.eval(x)?.w1.im))
            .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))
    };
    Ok(HemisphereCheck {
        f_worst: signed(f_like)?,
        eh_worst: signed(MapS4toS3::EhMap)?,
    })
}

/// `min |pc(x)|` over the mesh.
pub fn min_projection_norm(mesh: &SphereMesh4) -> f64 {
    mesh.points
        .par_iter()
        .map(|x| {
            let [p0, p1] = projected_column(x);
            (p0.norm_sqr() + p1.norm_sqr()).sqrt()
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// `max |‖H(x, t)‖ − 1|` for the straight-line homotopy over mesh × t-grid.
pub fn straightline_unit_deviation(
    mesh: &SphereMesh4,
    f_like: MapS4toS3,
    ts: &[f64],
) -> Result<f64> {
    mesh.points
        .par_iter()
        .map(|x| {
            let mut worst: f64 = 0.0;
            for &t in ts {
                let w = straightline_between(f_like, MapS4toS3::EhMap, x, t)?;
                worst = worst.max((w.norm() - 1.0).abs());
            }
            Ok(worst)
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// Worst distance of `Eh` from `(0, ±i)` at `z2 = ±(1 − ε)` along a few
/// meridians: the formula approaches the continuity extension at the poles.
pub fn eh_pole_continuity(eps: f64) -> f64 {
    let z2 = 1.0 - eps;
    let s = (1.0 - z2 * z2).sqrt();
    let dirs = [
        (ONE, ZERO),
        (ZERO, ONE),
        (Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)),
        (Complex::new(0.5, 0.5), Complex::new(-0.5, 0.5)),
    ];
    let mut worst: f64 = 0.0;
    for (w0, w1) in dirs {
        for sign in [1.0, -1.0] {
            let x = SpherePoint4::new(w0 * s, w1 * s, sign * z2);
            let pole = SpherePoint3::new(ZERO, I * sign);
            worst = worst.max(suspension_eh(&x).dist(&pole));
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaPathCheck {
    pub min_abs_det: f64,
    /// `max ||det H| − 1|` over mesh × t-grid.
    pub det_deviation: f64,
    /// `max ‖H(x, 0) − (1 − 2ba)(x)‖`.
    pub start_residual: f64,
    /// `max ‖H(x, 1) − I‖`.
    pub end_residual: f64,
}

pub fn ba_path_check(mesh: &SphereMesh4, ts: &[f64]) -> BaPathCheck {
    mesh.points
        .par_iter()
        .map(|x| {
            let (mut min_det, mut dev) = (f64::INFINITY, 0.0f64);
            for &t in ts {
                let d = null_homotopy_ba(x, t).det().norm();
                min_det = min_det.min(d);
                dev = dev.max((d - 1.0).abs());
            }
            BaPathCheck {
                min_abs_det: min_det,
                det_deviation: dev,
                start_residual: op_norm(&(null_homotopy_ba(x, 0.0) - eval_one_minus_2ba(x))),
                end_residual: op_norm(&(null_homotopy_ba(x, 1.0) - Mat2::IDENTITY)),
            }
        })
        .reduce(
            || BaPathCheck {
                min_abs_det: f64::INFINITY,
                det_deviation: 0.0,
                start_residual: 0.0,
                end_residual: 0.0,
            },
            |a, b| BaPathCheck {
                min_abs_det: a.min_abs_det.min(b.min_abs_det),
                det_deviation: a.det_deviation.max(b.det_deviation),
                start_residual: a.start_residual.max(b.start_residual),
                end_residual: a.end_residual.max(b.end_residual),
            },
        )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subject {
    #[serde(rename = "ONE_MINUS_2AB")]
    OneMinus2ab,
    #[serde(rename = "ONE_MINUS_2BA")]
    OneMinus2ba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NullHomotopic,
    ObstructedModuloSuspension,
}

/// Serialised form: `{subject, verdict, evidence: {name: value}, assumptions: [..]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyCertificate {
    pub subject: Subject,
    pub verdict: Verdict,
    pub evidence: BTreeMap<String, f64>,
    pub assumptions: Vec<String>,
}

impl HomotopyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialises")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Relation {
    AtMost,
    AtLeast,
    Above,
}

/// A named scalar and the bound it must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceBound {
    pub name: &'static str,
    pub value: f64,
    relation: Relation,
    pub threshold: f64,
}

impl EvidenceBound {
    pub fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        EvidenceBound {
            name,
            value,
            relation: Relation::AtMost,
            threshold,
        }
    }

    pub fn at_least(name: &'static str, value: f64, threshold: f64) -> Self {
        EvidenceBound {
            name,
            value,
            relation: Relation::AtLeast,
            threshold,
        }
    }

    pub fn above(name: &'static str, value: f64, threshold: f64) -> Self {
        EvidenceBound {
            name,
            value,
            relation: Relation::Above,
            threshold,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::AtMost => self.value <= self.threshold,
            Relation::AtLeast => self.value >= self.threshold,
            Relation::Above => self.value > self.threshold,
        }
    }

    /// `"<="`, `">="` or `">"`.
    pub fn comparison(&self) -> &'static str {
        match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Above => ">",
        }
    }

    pub fn describe_bound(&self) -> String {
        format!("{} {:e}", self.comparison(), self.threshold)
    }
}

fn assemble(
    subject: Subject,
    verdict: Verdict,
    bounds: &[EvidenceBound],
    assumptions: Vec<String>,
) -> Result<HomotopyCertificate> {
    if let Some(bad) = bounds.iter().find(|b| !b.holds()) {
        return Err(Error::CertificateFailure {
            evidence: bad.name.to_string(),
            value: bad.value,
            bound: bad.describe_bound(),
        });
    }
    Ok(HomotopyCertificate {
        subject,
        verdict,
        evidence: bounds.iter().map(|b| (b.name.to_string(), b.value)).collect(),
        assumptions,
    })
}

/// Test hooks that break one link of the evidence chain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Sabotage {
    #[default]
    None,
    /// Replace `f` by [`MapS4toS3::SabotagedF`].
    FlipF,
    /// Translate the second projected fibre far away before linking.
    DisplacedFiber,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateOptions {
    pub t_grid: usize,
    pub segments: usize,
    pub sabotage: Sabotage,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            t_grid: DEFAULT_T_GRID,
            segments: 256,
            sabotage: Sabotage::None,
        }
    }
}

/// Identity tolerance shared by the path and identity evidence.
pub const IDENTITY_TOL: f64 = 1e-13;
/// Tolerance for `f = Eh` on the equator and unit-norm checks.
pub const EQUATOR_TOL: f64 = 1e-12;
/// No hemisphere sign violation beyond this.
pub const HEMISPHERE_TOL: f64 = -1e-13;
/// Linking residual accepted by the certificate (rounding stays unambiguous).
pub const LINKING_RESIDUAL_TOL: f64 = 0.25;

/// All raw measurements behind both certificates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateEvidence {
    pub ba_path: BaPathCheck,
    pub identity_residual: f64,
    pub det_c_deviation: f64,
    pub min_projection_norm: f64,
    pub equator_residual: f64,
    pub hemisphere: HemisphereCheck,
    pub antipodal: AntipodalGap,
    pub straightline_unit_deviation: f64,
    pub eh_pole_continuity: f64,
    pub hopf: HopfInvariant,
}

pub fn gather_evidence(mesh: &SphereMesh4, opts: &CertificateOptions) -> Result<CertificateEvidence> {
    let f_like = match opts.sabotage {
        Sabotage::FlipF => MapS4toS3::SabotagedF,
        _ => MapS4toS3::FMap,
    };
    let ts = t_grid(opts.t_grid);
    let displace = match opts.sabotage {
        Sabotage::DisplacedFiber => Some([100.0, 0.0, 0.0]),
        _ => None,
    };
    Ok(CertificateEvidence {
        ba_path: ba_path_check(mesh, &ts),
        identity_residual: identity_residual(mesh),
        det_c_deviation: crate::algebra::det_c_residual(mesh),
        min_projection_norm: min_projection_norm(mesh),
        equator_residual: equator_residual(mesh, f_like)?,
        hemisphere: hemisphere_preservation(mesh, f_like)?,
        antipodal: antipodal_gap_of(mesh, f_like)?,
        // an antipodal pair makes the path pass through 0; that is a failed
        // bound, not a configuration error
        straightline_unit_deviation: match straightline_unit_deviation(mesh, f_like, &ts) {
            Err(Error::DegenerateNormalization { .. }) => f64::INFINITY,
            other => other?,
        },
        eh_pole_continuity: eh_pole_continuity(1e-12),
        hopf: hopf_invariant_with(&S2Point::NORTH, opts.segments, displace)?,
    })
}

pub fn ba_bounds(ev: &CertificateEvidence) -> Vec<EvidenceBound> {
    vec![
        EvidenceBound::above("path_min_abs_det", ev.ba_path.min_abs_det, 0.0),
        EvidenceBound::at_most("path_det_deviation", ev.ba_path.det_deviation, IDENTITY_TOL),
        EvidenceBound::at_most("endpoint_start_residual", ev.ba_path.start_residual, IDENTITY_TOL),
        EvidenceBound::at_most("endpoint_end_residual", ev.ba_path.end_residual, 0.0),
    ]
}

pub fn ab_bounds(ev: &CertificateEvidence) -> Vec<EvidenceBound> {
    vec![
        EvidenceBound::at_most("identity_residual", ev.identity_residual, IDENTITY_TOL),
        EvidenceBound::at_most("det_c_deviation", ev.det_c_deviation, EQUATOR_TOL),
        EvidenceBound::above("min_projection_norm", ev.min_projection_norm, DEGENERATE_PROJECTION),
        EvidenceBound::at_most("equator_residual", ev.equator_residual, EQUATOR_TOL),
        EvidenceBound::at_least("hemisphere_worst_violation", ev.hemisphere.worst(), HEMISPHERE_TOL),
        EvidenceBound::above("antipodal_min_gap", ev.antipodal.min_gap, GAP_FLOOR),
        EvidenceBound::above("antipodal_certified_bound", ev.antipodal.certified_lower_bound, 0.0),
        EvidenceBound::at_most("straightline_unit_deviation", ev.straightline_unit_deviation, EQUATOR_TOL),
        EvidenceBound::at_most("eh_pole_continuity", ev.eh_pole_continuity, 1e-5),
        EvidenceBound::at_least(
            "hopf_linking_abs",
            ev.hopf.linking.rounded.unsigned_abs() as f64,
            1.0,
        ),
        EvidenceBound::at_most("hopf_linking_residual", ev.hopf.linking.residual, LINKING_RESIDUAL_TOL),
    ]
}

/// Certificates for `1 − 2ab` (obstructed modulo suspension) and `1 − 2ba`
/// (null-homotopic), or the first failing evidence bound.
pub fn certificates_from(
    ev: &CertificateEvidence,
) -> Result<(HomotopyCertificate, HomotopyCertificate)> {
    let ba = assemble(
        Subject::OneMinus2ba,
        Verdict::NullHomotopic,
        &ba_bounds(ev),
        Vec::new(),
    )?;
    let mut ab = assemble(
        Subject::OneMinus2ab,
        Verdict::ObstructedModuloSuspension,
        &ab_bounds(ev),
        vec![FREUDENTHAL_ASSUMPTION.to_string()],
    )?;
    // the signed linking number is recorded alongside its magnitude
    ab.evidence
        .insert("hopf_linking_number".to_string(), ev.hopf.linking.rounded as f64);
    ab.evidence
        .insert("hopf_linking_raw".to_string(), ev.hopf.linking.raw);
    Ok((ab, ba))
}

pub fn build_certificates(
    mesh: &SphereMesh4,
    opts: &CertificateOptions,
) -> Result<(HomotopyCertificate, HomotopyCertificate)> {
    certificates_from(&gather_evidence(mesh, opts)?)
}
