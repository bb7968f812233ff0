//! Command-line front end. Every subcommand builds a [`Report`]; the exit code
//! is 0 when the report passes, 1 when a check fails and 2 for usage or
//! configuration errors (including an output path that cannot be written).

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{
    ab_eigen_residual, det_c_residual, diagonal_residual, eval_a, eval_b, identity_residual,
    inverse_identity_sweep, INVERSE_PROBES,
};
use crate::error::Error;
use crate::generalize::{
    eval_a_n, eval_b_n, family_identity_check_with, mesh_s2n, BVariant, SpherePoint2n,
};
use crate::homotopy::{
    ab_bounds, ba_bounds, certificates_from, gather_evidence, CertificateOptions, Sabotage,
    FREUDENTHAL_ASSUMPTION,
};
use crate::hopf_invariant::POLE_CLEARANCE;
use crate::report::{Record, Report};
use crate::sphere::{mesh_s4, SphereMesh4};
use crate::spectrum::{
    cloud_hausdorff, cloud_to_csv, cloud_to_svg, hausdorff_to_target, sample_spectrum,
    unit_modulus_deviation, SpectrumElement, SpectrumEstimate,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const MAX_LAT: usize = 4097;
pub const MAX_SHELL: usize = 1024;
pub const MAX_GEN_SHELL: usize = 32;
pub const MAX_SEGMENTS: usize = 1 << 16;
pub const MAX_T_GRID: usize = 1025;

/// Thresholds that are not exposed as flags.
pub const EIGEN_TOL: f64 = 1e-12;
pub const DET_C_TOL: f64 = 1e-12;
pub const INVERSE_TOL: f64 = 1e-10;
pub const UNIT_MODULUS_TOL: f64 = 1e-12;
pub const FAMILY_TOL: f64 = 1e-12;
pub const FAMILY_MIN_POINTS: usize = 1000;

pub const HEADLINE: &str =
    "1/2 ∈ ε(ab) [modulo Freudenthal] and 1/2 ∉ ε(ba) [unconditional]";

#[derive(Debug, Parser)]
#[command(
    name = "expspec",
    version,
    about = "Numerical verification that ε(ab)∖{0} and ε(ba)∖{0} differ in C(S⁴, M₂(C))"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pointwise algebraic identities over the mesh.
    VerifyIdentities,
    /// Sample the spectrum of one element and compare it with its target set.
    Spectrum {
        /// ab, ba, one-minus-2ab or one-minus-2ba.
        #[arg(value_parser = parse_element)]
        element: SpectrumElement,
        /// Write the eigenvalue cloud as CSV (`re,im`).
        #[arg(long)]
        cloud_csv: Option<PathBuf>,
        /// Write the eigenvalue cloud as a static SVG scatter.
        #[arg(long)]
        cloud_svg: Option<PathBuf>,
    },
    /// Build the homotopy certificates for 1 − 2ab and 1 − 2ba.
    Certify,
    /// Check the n × n family for n = 2 and n = 3.
    Generalize,
    /// Run every suite into a single report.
    ReportAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    CsvSummary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SabotageArg {
    FlipF,
    DisplacedFiber,
    UnconjugatedB,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Latitudes of the S⁴ mesh, poles included.
    #[arg(long, global = true, default_value_t = 65)]
    pub lat: usize,
    /// Points per circle in the S³ shell grid.
    #[arg(long, global = true, default_value_t = 64)]
    pub shell: usize,
    /// Latitudes of the mesh used for spectrum clouds.
    #[arg(long, global = true, default_value_t = 257)]
    pub spectrum_lat: usize,
    /// Shell resolution of the spectrum mesh.
    #[arg(long, global = true, default_value_t = 8)]
    pub spectrum_shell: usize,
    /// Segments per fibre in the Gauss linking integral.
    #[arg(long, global = true, default_value_t = 256)]
    pub segments: usize,
    /// Time samples for the homotopy checks.
    #[arg(long, global = true, default_value_t = 33)]
    pub t_grid: usize,
    /// Latitudes of the S⁶ mesh for n = 3.
    #[arg(long, global = true, default_value_t = 9)]
    pub gen_lat: usize,
    /// Shell resolution of the S⁶ mesh for n = 3.
    #[arg(long, global = true, default_value_t = 8)]
    pub gen_shell: usize,
    #[arg(long, global = true, default_value_t = 1e-13)]
    pub tol_identity: f64,
    #[arg(long, global = true, default_value_t = 0.05)]
    pub tol_hausdorff: f64,
    /// Report destination; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, value_enum, hide = true)]
    pub sabotage: Option<SabotageArg>,
}

fn parse_element(s: &str) -> Result<SpectrumElement, String> {
    SpectrumElement::parse(s).ok_or_else(|| {
        format!("unknown element `{s}`; expected ab, ba, one-minus-2ab or one-minus-2ba")
    })
}

/// Everything that determines a report's content, echoed into the report.
/// Output paths are left out so the same run gives the same bytes anywhere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub lat: usize,
    pub shell: usize,
    pub spectrum_lat: usize,
    pub spectrum_shell: usize,
    pub segments: usize,
    pub t_grid: usize,
    pub gen_lat: usize,
    pub gen_shell: usize,
    pub tol_identity: f64,
    pub tol_hausdorff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sabotage: Option<SabotageArg>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: "report-all".into(),
            lat: 65,
            shell: 64,
            spectrum_lat: 257,
            spectrum_shell: 8,
            segments: 256,
            t_grid: 33,
            gen_lat: 9,
            gen_shell: 8,
            tol_identity: 1e-13,
            tol_hausdorff: 0.05,
            element: None,
            sabotage: None,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let o = &cli.options;
        let (command, element) = match &cli.command {
            Command::VerifyIdentities => ("verify-identities", None),
            Command::Spectrum { element, .. } => ("spectrum", Some(element.tag().to_string())),
            Command::Certify => ("certify", None),
            Command::Generalize => ("generalize", None),
            Command::ReportAll => ("report-all", None),
        };
        RunConfig {
            command: command.into(),
            lat: o.lat,
            shell: o.shell,
            spectrum_lat: o.spectrum_lat,
            spectrum_shell: o.spectrum_shell,
            segments: o.segments,
            t_grid: o.t_grid,
            gen_lat: o.gen_lat,
            gen_shell: o.gen_shell,
            tol_identity: o.tol_identity,
            tol_hausdorff: o.tol_hausdorff,
            element,
            sabotage: o.sabotage,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        for (name, v) in [("tol-identity", self.tol_identity), ("tol-hausdorff", self.tol_hausdorff)] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("--{name} must be positive and finite, got {v}"));
            }
        }
        for (name, v, lo, hi) in [
            ("lat", self.lat, 3, MAX_LAT),
            ("spectrum-lat", self.spectrum_lat, 3, MAX_LAT),
            ("gen-lat", self.gen_lat, 3, MAX_LAT),
            ("shell", self.shell, 8, MAX_SHELL),
            ("spectrum-shell", self.spectrum_shell, 8, MAX_SHELL),
            ("gen-shell", self.gen_shell, 8, MAX_GEN_SHELL),
            ("segments", self.segments, 64, MAX_SEGMENTS),
            ("t-grid", self.t_grid, 2, MAX_T_GRID),
        ] {
            if v < lo || v > hi {
                return bad(format!("--{name} must lie in [{lo}, {hi}], got {v}"));
            }
        }
        Ok(())
    }

    fn certificate_options(&self) -> CertificateOptions {
        CertificateOptions {
            t_grid: self.t_grid,
            segments: self.segments,
            sabotage: match self.sabotage {
                Some(SabotageArg::FlipF) => Sabotage::FlipF,
                Some(SabotageArg::DisplacedFiber) => Sabotage::DisplacedFiber,
                _ => Sabotage::None,
            },
        }
    }

    fn b_variant(&self) -> BVariant {
        match self.sabotage {
            Some(SabotageArg::UnconjugatedB) => BVariant::Unconjugated,
            _ => BVariant::Conjugated,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
    #[error("verification aborted: {0}")]
    Verification(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_FAIL,
            _ => EXIT_CONFIG,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidResolution(m) => CliError::Config(m),
            Error::UnsupportedN(n) => CliError::Config(format!("unsupported n = {n}")),
            other => CliError::Verification(other),
        }
    }
}

pub type RunReport = Report<RunConfig>;

fn main_mesh(cfg: &RunConfig) -> Result<SphereMesh4, CliError> {
    Ok(mesh_s4(cfg.lat, cfg.shell)?)
}

fn spectrum_mesh(cfg: &RunConfig) -> Result<SphereMesh4, CliError> {
    Ok(mesh_s4(cfg.spectrum_lat, cfg.spectrum_shell)?)
}

fn identity_records(cfg: &RunConfig, mesh: &SphereMesh4) -> Vec<Record> {
    let inv = inverse_identity_sweep(mesh, &INVERSE_PROBES);
    vec![
        Record::at_most(
            "identity.one_minus_2ab_eq_c",
            "(1 − 2ab)(x) = c(x)",
            identity_residual(mesh),
            cfg.tol_identity,
        ),
        Record::at_most(
            "identity.one_minus_2ba_diagonal",
            "(1 − 2ba)(x) = diag(φ(z₂), 1)",
            diagonal_residual(mesh),
            cfg.tol_identity,
        ),
        Record::at_most(
            "identity.ab_rank_one_eigenvalue",
            "σ(ab(x)) = {(1 − z₂²)/(1 + iz₂)², 0}",
            ab_eigen_residual(mesh),
            EIGEN_TOL,
        ),
        Record::at_most(
            "identity.det_c_unimodular",
            "det c(x) = φ(z₂) with |φ| = 1",
            det_c_residual(mesh),
            DET_C_TOL,
        ),
        Record::at_most(
            "identity.inverse_one_minus_ba",
            "(1 − μba)⁻¹ = 1 + μb(1 − μab)⁻¹a, conditioned probes",
            inv.max_residual,
            INVERSE_TOL,
        ),
        Record::above(
            "identity.inverse_cases_checked",
            "(1 − μba)⁻¹ = 1 + μb(1 − μab)⁻¹a, conditioned probes",
            inv.checked as f64,
            0.0,
        ),
    ]
}

pub fn cmd_verify_identities(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let mesh = main_mesh(cfg)?;
    let mut report = Report::new(cfg.clone());
    report.extend(identity_records(cfg, &mesh));
    report.notes.push(format!(
        "mesh: {} points, geodesic covering radius {:.4}",
        mesh.len(),
        mesh.covering_radius()
    ));
    Ok(report)
}

fn spectrum_citation(element: SpectrumElement) -> &'static str {
    match element {
        SpectrumElement::Ab => "σ(ab)∖{0} = C, the circle |λ − 1/2| = 1/2",
        SpectrumElement::Ba => "σ(ba)∖{0} = C, the circle |λ − 1/2| = 1/2",
        SpectrumElement::OneMinus2ab => "σ(1 − 2ab) = T, the unit circle",
        SpectrumElement::OneMinus2ba => "σ(1 − 2ba) = φ([−1, 1]) ∪ {1} = T",
        SpectrumElement::One => "σ(1) = {1}",
    }
}

/// The cloud a target comparison uses: nonzero eigenvalues for `ab`, `ba`.
fn comparison_cloud(est: &SpectrumEstimate) -> Vec<crate::Complex> {
    match est.element {
        SpectrumElement::Ab | SpectrumElement::Ba => est.nonzero(),
        _ => est.cloud.clone(),
    }
}

fn spectrum_records(cfg: &RunConfig, est: &SpectrumEstimate) -> Result<Vec<Record>, CliError> {
    let tag = est.element.tag();
    let cite = spectrum_citation(est.element);
    let cloud = comparison_cloud(est);
    let mut out = Vec::new();
    match est.element.target() {
        Some(target) => {
            let h = hausdorff_to_target(&cloud, &target)?;
            out.push(Record::at_most(
                format!("spectrum.{tag}.hausdorff"),
                cite,
                h.value(),
                cfg.tol_hausdorff,
            ));
            if matches!(est.element, SpectrumElement::OneMinus2ab | SpectrumElement::OneMinus2ba) {
                out.push(Record::at_most(
                    format!("spectrum.{tag}.unit_modulus"),
                    cite,
                    unit_modulus_deviation(&cloud),
                    UNIT_MODULUS_TOL,
                ));
            }
        }
        None => {
            let dev = cloud
                .iter()
                .map(|z| (z - crate::linalg2::ONE).norm())
                .fold(0.0, f64::max);
            out.push(Record::at_most(format!("spectrum.{tag}.cloud"), cite, dev, 0.0));
        }
    }
    Ok(out)
}

pub fn cmd_spectrum(
    cfg: &RunConfig,
    element: SpectrumElement,
) -> Result<(RunReport, SpectrumEstimate), CliError> {
    cfg.validate()?;
    let mesh = spectrum_mesh(cfg)?;
    let est = sample_spectrum(element, &mesh)?;
    let mut report = Report::new(cfg.clone());
    report.extend(spectrum_records(cfg, &est)?);
    report.notes.push(format!(
        "{}: {} distinct eigenvalues on {} points, covering radius {:.4}",
        element.tag(),
        est.cloud.len(),
        mesh.len(),
        est.covering_radius
    ));
    Ok((report, est))
}

fn deduction_chain() -> Vec<String> {
    [
        "H(x, t) = diag(φ_t(z₂), 1) joins 1 − 2ba to 1 through invertibles, so 1 − 2ba ∈ Exp(A) and 1/2 ∉ ε(ba)",
        "f = pc/|pc| agrees with Eh on the equator, preserves both hemispheres and is never antipodal to Eh, so f ≃ Eh",
        "the pole fibres of h have linking number ±1, so h is essential",
        "by the assumption, Eh is not null-homotopic, hence neither is f",
        "a path from 1 − 2ab = c to 1 in the invertibles would null-homotope f, so 1 − 2ab ∉ Exp(A) and 1/2 ∈ ε(ab)",
        "σ(ab)∖{0} = σ(ba)∖{0} = C and ∂ε ⊂ σ ⊂ ε give ε(ba) = C and ε(ab) = D, so ε(ab)∖{0} ≠ ε(ba)∖{0}",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn cmd_certify(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let mesh = main_mesh(cfg)?;
    let ev = gather_evidence(&mesh, &cfg.certificate_options())?;
    let mut report = Report::new(cfg.clone());

    let ba = ba_bounds(&ev);
    let ab = ab_bounds(&ev);
    report.extend(ba.iter().map(|b| Record::from_bound("certify.ba.", "1 − 2ba ∈ Exp(A)", b)));
    report.extend(
        ab.iter()
            .map(|b| Record::from_bound("certify.ab.", "1 − 2ab ∉ Exp(A) given the assumption", b)),
    );
    report.extend([
        Record::at_least(
            "certify.hopf.pole_clearance",
            "stereographic pole away from both fibres",
            ev.hopf.pole_clearance,
            POLE_CLEARANCE,
        ),
        Record::at_most(
            "certify.hopf.fiber_residual",
            "h maps each fibre to its base point",
            ev.hopf.fiber_residual,
            1e-12,
        ),
    ]);

    let certs = certificates_from(&ev);
    let issued = certs.is_ok();
    if let Ok((ab_cert, ba_cert)) = certs {
        report.push(Record::flag(
            "certify.ab.single_assumption",
            "the obstruction rests on exactly one cited result",
            ab_cert.assumptions.len() == 1 && ab_cert.assumptions[0] == FREUDENTHAL_ASSUMPTION,
        ));
        report.certificates.push(ab_cert);
        report.certificates.push(ba_cert);
    }
    report.push(Record::flag("certify.headline", HEADLINE, issued));
    report.deduction = deduction_chain();
    report.notes.push(format!(
        "antipodal gap: measured min {:.6}, certified lower bound {:.6} (cap {:.6}, band min {:.6})",
        ev.antipodal.min_gap,
        ev.antipodal.certified_lower_bound,
        ev.antipodal.cap_bound,
        ev.antipodal.band_min,
    ));
    report.notes.push(format!(
        "Gauss linking at {} segments: raw {:.9}, rounded {}",
        ev.hopf.segments, ev.hopf.linking.raw, ev.hopf.linking.rounded
    ));
    Ok(report)
}

pub fn cmd_generalize(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let variant = cfg.b_variant();
    let mut report = Report::new(cfg.clone());

    let mesh = main_mesh(cfg)?;
    let mismatches = mesh
        .points
        .iter()
        .filter(|x| {
            let y = SpherePoint2n::from(*x);
            let (a, b) = (eval_a(x), eval_b(x));
            let (an, bn) = (eval_a_n(&y), eval_b_n(&y));
            [an[(0, 0)], an[(0, 1)], an[(1, 0)], an[(1, 1)]] != [a.m00, a.m01, a.m10, a.m11]
                || [bn[(0, 0)], bn[(0, 1)], bn[(1, 0)], bn[(1, 1)]] != [b.m00, b.m01, b.m10, b.m11]
        })
        .count();
    report.push(Record::at_most(
        "generalize.n2.bitwise_mismatches",
        "for n = 2, z ⊗ e₁ and e₁ ⊗ z̄ reproduce a and b",
        mismatches as f64,
        0.0,
    ));
    let pts2: Vec<SpherePoint2n> = mesh.points.iter().map(Into::into).collect();
    let c2 = family_identity_check_with(2, &pts2, variant)?;
    drop(pts2);

    let pts3 = mesh_s2n(3, cfg.gen_lat, cfg.gen_shell)?;
    let c3 = family_identity_check_with(3, &pts3, variant)?;

    for c in [&c2, &c3] {
        let n = c.n;
        report.extend([
            Record::at_most(
                format!("generalize.n{n}.one_minus_2ba_diagonal"),
                "1 − 2ba = diag(φ(zₙ), 1, …, 1)",
                c.diagonal_residual,
                FAMILY_TOL,
            ),
            Record::at_most(
                format!("generalize.n{n}.one_minus_2ab_outer"),
                "1 − 2ab = I − (2/(1 + izₙ)²) z zᴴ",
                c.outer_residual,
                FAMILY_TOL,
            ),
            Record::at_most(
                format!("generalize.n{n}.rank_one_eigenvalue"),
                "σ(ab)∖{0} = σ(ba)∖{0} = {(1 − zₙ²)/(1 + izₙ)²}",
                c.eigen_residual,
                FAMILY_TOL,
            ),
            Record::at_most(
                format!("generalize.n{n}.rank_at_most_one"),
                "a(x) and b(x) have rank at most one",
                c.rank_residual,
                FAMILY_TOL,
            ),
        ]);
    }
    report.push(Record::at_least(
        "generalize.n3.mesh_points",
        "S⁶ mesh for n = 3",
        c3.points as f64,
        FAMILY_MIN_POINTS as f64,
    ));
    report.notes.push(
        "n ≥ 3: only the algebraic identities are machine-checked; the exponential-spectrum claim for n ≥ 3 is asserted, not machine-checked".into(),
    );
    Ok(report)
}

pub fn cmd_report_all(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let mut report = cmd_verify_identities(cfg)?;

    let mesh = spectrum_mesh(cfg)?;
    let mut estimates = Vec::new();
    for element in [
        SpectrumElement::Ab,
        SpectrumElement::Ba,
        SpectrumElement::OneMinus2ab,
        SpectrumElement::OneMinus2ba,
    ] {
        let est = sample_spectrum(element, &mesh)?;
        report.extend(spectrum_records(cfg, &est)?);
        estimates.push(est);
    }
    report.push(Record::at_most(
        "spectrum.ab_vs_ba.hausdorff",
        "σ(ab)∖{0} = σ(ba)∖{0}",
        cloud_hausdorff(&estimates[0].nonzero(), &estimates[1].nonzero())?,
        cfg.tol_hausdorff,
    ));

    report.absorb(cmd_certify(cfg)?);
    report.absorb(cmd_generalize(cfg)?);
    Ok(report)
}

fn create(path: &Path) -> Result<File, CliError> {
    File::create(path).map_err(|e| CliError::Output {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn write_all(file: &mut File, path: &Path, body: &str) -> Result<(), CliError> {
    file.write_all(body.as_bytes()).map_err(|e| CliError::Output {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn execute(cli: &Cli) -> Result<RunReport, CliError> {
    let cfg = RunConfig::from_cli(cli);
    cfg.validate()?;
    // open every output first so an unwritable path fails before any work
    let mut out = cli.options.out.as_ref().map(|p| create(p).map(|f| (p, f))).transpose()?;

    let report = match &cli.command {
        Command::VerifyIdentities => cmd_verify_identities(&cfg)?,
        Command::Certify => cmd_certify(&cfg)?,
        Command::Generalize => cmd_generalize(&cfg)?,
        Command::ReportAll => cmd_report_all(&cfg)?,
        Command::Spectrum {
            element,
            cloud_csv,
            cloud_svg,
        } => {
            let mut csv = cloud_csv.as_ref().map(|p| create(p).map(|f| (p, f))).transpose()?;
            let mut svg = cloud_svg.as_ref().map(|p| create(p).map(|f| (p, f))).transpose()?;
            let (report, est) = cmd_spectrum(&cfg, *element)?;
            if let Some((p, f)) = csv.as_mut() {
                write_all(f, p, &cloud_to_csv(&est.cloud))?;
            }
            if let Some((p, f)) = svg.as_mut() {
                write_all(f, p, &cloud_to_svg(&est.cloud))?;
            }
            report
        }
    };

    let body = match cli.options.format {
        Format::Json => report.to_json(),
        Format::CsvSummary => report.to_csv_summary(),
    };
    match out.as_mut() {
        Some((p, f)) => write_all(f, p, &body)?,
        None => print!("{body}"),
    }
    Ok(report)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(report) => {
            for r in report.failures() {
                eprintln!(
                    "FAIL {}: measured {:e}, required {} {:e}",
                    r.name,
                    r.measured,
                    r.comparison.symbol(),
                    r.threshold
                );
            }
            if report.overall_pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("expspec: {e}");
            e.exit_code()
        }
    }
}
