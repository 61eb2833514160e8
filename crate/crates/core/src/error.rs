use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `|A₁| = 1`: the Kepler conic is tangent to the wall direction and the
    /// wall quadratic has no second root.
    #[error("degenerate tangency: |A1| = 1, the conic has no second wall intersection")]
    DegenerateTangency,

    /// `L² = 0`: the arc is a radial segment on the x₂-axis.
    #[error("degenerate arc: L^2 = 0, radial segment from {:?} to {:?}", segment[0], segment[1])]
    DegenerateArc { segment: [[f64; 2]; 2] },

    #[error("negative squared angular momentum L^2 = {0}")]
    NegativeAngularMomentum(f64),

    #[error("unbounded motion: E = {energy} >= 0")]
    UnboundedMotion { energy: f64 },

    /// One of `D² ≠ 4`, `1 + 2DE + 4E² ≠ 0`, `D + 2E ≠ 0` fails.
    #[error("singular parameters: condition {condition} is violated")]
    SingularParameters { condition: &'static str },

    #[error("1 + 2DE + 4E^2 = {0} < 0: R is not real")]
    NegativeRadicand(f64),

    #[error("sqrt(1 + 2DE + 4E^2) is not representable in the scalar field")]
    RadicandNotInField,

    #[error("unsupported period n = {0}")]
    UnsupportedPeriod(usize),

    #[error("power series has zero constant term")]
    ZeroConstantTerm,

    #[error("constant term has no principal square root in the coefficient field")]
    NotASquare,

    #[error("parameters (E, D) lie outside the bounded-motion region")]
    OutsideRegion,

    #[error("tangency geometry is degenerate: {0}")]
    DegenerateTangencyGeometry(&'static str),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parameters are not on a singular level set")]
    NotSingular,

    #[error("no Fomenko graph for E = {0}; E must lie in (-1, -1/2) or (-1/2, 0)")]
    UnsupportedEnergy(f64),

    #[error("determinant does not change sign on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("no admissible start state found after {attempts} attempts")]
    AdmissibleSampleNotFound { attempts: usize },

    #[error("quadratic field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
