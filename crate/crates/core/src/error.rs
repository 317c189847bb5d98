use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state is not normalized (squared norm {norm_sq}, tolerance {tol:e})")]
    Normalization { norm_sq: f64, tol: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("triality violated: |D² + V² + C² - 1| = {residual:e} exceeds {tol:e}")]
    Triality { residual: f64, tol: f64 },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    Range {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid polarization basis: {0}")]
    Basis(String),

    #[error("invalid operator: {0}")]
    Operator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if value < min || value > max {
        return Err(Error::Range {
            name,
            value,
            min,
            max,
        });
    }
    Ok(value)
}
