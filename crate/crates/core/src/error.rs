use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("point ({x}, {y}) is not on the boundary (distance {distance:e})")]
    NotOnBoundary { x: f64, y: f64, distance: f64 },

    #[error("alpha = {0} is outside the open interval (0, 1)")]
    AlphaOutOfRange(f64),

    #[error("line does not cross the interior of the body")]
    NoIntersection,

    #[error("chord is tangent to the boundary at an endpoint")]
    TangentChord,

    #[error("a vertex passage lies inside the finite-difference window around theta = {0}")]
    SingularTheta(f64),

    #[error("tangent-line family does not span more than a half-turn")]
    InsufficientFamily,

    #[error("tangent-line family directions must be strictly increasing in [0, 2pi)")]
    UnsortedFamily,

    #[error("point lies inside the billiard table")]
    InsideTable,

    #[error("point is not interior to the body")]
    NotInterior,

    #[error("chord endpoints change edges inside the window")]
    RegimeChange,

    #[error("chord endpoints lie on parallel edges; midpoints are collinear")]
    ParallelEdges,

    #[error("inner body is not contained in the outer body")]
    NotNested,

    #[error("operation requires a polygon body")]
    NotAPolygon,

    #[error("bisection failed to converge: {0}")]
    NoConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by caller-supplied parameters rather than
    /// numerical trouble inside an algorithm.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::NoConvergence(_))
    }
}
