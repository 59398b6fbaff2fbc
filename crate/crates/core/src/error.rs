use thiserror::Error;

/// Errors surfaced by the Gaussian-state layer.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("matrix dimension {0} is not valid here: {1}")]
    Dimension(usize, &'static str),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// The channel pivot `D - G_in(k)` is numerically singular. Gapless or
    /// degenerate points must be reported, not silently turned into NaN.
    #[error("singular Gaussian channel at k = ({k1:.6}, {k2:.6}), cond ~ {cond:.3e}")]
    SingularChannel { k1: f64, k2: f64, cond: f64 },

    /// A plaquette field strength landed within tolerance of the +-pi branch
    /// cut, so the lattice Chern sum is not trustworthy.
    #[error("indeterminate Chern number: plaquette field strength {0:.6} within 1e-6 of +-pi")]
    NondeterminateChern(f64),
}

pub type Result<T> = std::result::Result<T, CoreError>;
