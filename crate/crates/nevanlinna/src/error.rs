use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum LabError {
    #[error(transparent)]
    Algebra(#[from] ratdec_core::Error),

    #[error("non-finite {0}")]
    NonFinite(&'static str),

    /// The radius is too close to the modulus of a zero or pole.
    #[error("radius {r} is within {gap:.3e} of a pole or zero of modulus {modulus}; perturb the radius")]
    RadiusCollision { r: f64, modulus: f64, gap: f64 },

    /// Adaptive quadrature hit its panel budget.
    #[error("quadrature did not converge after {panels} panels; worst panel [{a:.6}, {b:.6}] with error estimate {err:.3e}")]
    Quadrature { panels: usize, a: f64, b: f64, err: f64 },

    #[error("argument principle sum {0} is not close to an integer")]
    Winding(f64),

    #[error("invalid radius grid: {0}")]
    Grid(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("every sample was skipped")]
    NoSamples,
}
