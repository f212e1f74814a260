use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("space has no points")]
    EmptySpace,
    #[error("duplicate point id `{0}`")]
    DuplicateId(String),
    #[error("point `{0}` is not in the space")]
    ForeignPoint(String),
    #[error("point `{0}` has no coordinates")]
    MissingCoordinates(String),
    #[error("point `{id}` has non-integer coordinates ({x}, {y})")]
    NonIntegerCoordinates { id: String, x: f64, y: f64 },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("feature vector of `{id}` has length {found}, expected {expected}")]
    FeatureDimension {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("descriptive operation requested but point `{0}` has no features")]
    MissingProbe(String),
    #[error("map is not total: source point `{0}` has no image")]
    NotTotal(String),
    #[error("spaces do not match: {0}")]
    SpaceMismatch(String),
    #[error("gluing precondition violated: {0}")]
    Gluing(String),
    #[error("homotopy time grid needs k >= 1")]
    ZeroResolution,
    #[error("homotopy table is malformed: {0}")]
    MalformedWitness(String),
    #[error("homotopies do not meet: F(`{0}`, 1) != G(`{0}`, 0)")]
    MidpointMismatch(String),
    #[error("contractibility mode does not fit the data: {0}")]
    ModeMismatch(String),
    #[error("edge {0} has an empty path class")]
    EmptyPathClass(usize),
    #[error("a path must have at least one vertex")]
    EmptyPath,
    #[error("cover has no elements")]
    EmptyCover,
    #[error("cover elements do not cover the ambient set: {0} point(s) missing")]
    IncompleteCover(usize),
    #[error("cover element {0} is not a filled axis-aligned rectangle")]
    NonConvexElement(usize),
    #[error("complex is not closed under faces: {0}")]
    NotClosed(String),
    #[error("simplex references vertex {vertex} but complex has {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("pixel ({x}, {y}) lies outside the {width}x{height} window")]
    OutOfWindow {
        x: i64,
        y: i64,
        width: usize,
        height: usize,
    },
    #[error("curve is open; a closed cycle is required")]
    OpenCurve,
    #[error("cycle is not simple: {0}")]
    SelfIntersection(String),
    #[error("frames are not sorted by strictly increasing time at frame `{0}`")]
    UnsortedFrames(String),
    #[error("frame `{id}` has an invalid shape: {reason}")]
    InvalidShape { id: String, reason: String },
    #[error("frame `{0}` has an empty shape")]
    EmptyShape(String),
    #[error("image i/o: {0}")]
    Image(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
