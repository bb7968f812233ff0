use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular matrix: |det| = {det:e} with norm {norm:e}")]
    SingularMatrix { det: f64, norm: f64 },

    #[error("invalid mesh resolution: {0}")]
    InvalidResolution(String),

    #[error("value {value} outside domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    #[error("projection onto the second column degenerates: |pc| = {norm:e}")]
    DegenerateProjection { norm: f64 },

    #[error("straight-line homotopy degenerates: |(1-t)f + tEh| = {norm:e} at t = {t}")]
    DegenerateNormalization { norm: f64, t: f64 },

    #[error("point lies within {distance:e} of the projection pole")]
    NearPole { distance: f64 },

    #[error("curves too close: min vertex-segment distance {distance:e}")]
    CurvesTooClose { distance: f64 },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("unsupported dimension n = {0}; only n = 2 and n = 3 are implemented")]
    UnsupportedN(usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("certificate failure: evidence `{evidence}` = {value:e} violates {bound}")]
    CertificateFailure {
        evidence: String,
        value: f64,
        bound: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
