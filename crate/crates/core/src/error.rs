use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("point norm {norm} is not inside the guarded ball of radius {limit}")]
    BoundaryViolation { norm: f64, limit: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degenerate ray: a side point coincides with the vertex")]
    DegenerateRay,
    #[error("represented point lies outside the ball (m0^2 = {radicand})")]
    OutsideBall { radicand: f64 },
    #[error("zero denominator in gyrobarycentric evaluation")]
    ZeroDenominator,
    #[error("representations use different reference points")]
    FrameMismatch,
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("angle sum {sum} is not below pi")]
    AngleSumNotHyperbolic { sum: f64 },
    #[error("no circumgyrocircle: existence condition violated ({violated})")]
    NoCircumcircle { violated: String },
    #[error("coincident points")]
    CoincidentPoints,
    #[error("point is interior to the circle")]
    InteriorPoint,
    #[error("side of line undetermined: point lies on the line")]
    SideUndetermined,
    #[error("parameter {value} out of range {range}")]
    ParamOutOfRange { value: f64, range: &'static str },
    #[error("collinear points")]
    CollinearPoints,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
}
