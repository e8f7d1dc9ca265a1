use crate::kernels::Point2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("kernel evaluated at coincident points {0}")]
    CoincidentPoints(Point2),

    #[error("source point {point} is not outside the cavity (winding {winding}, clearance {clearance:.3e})")]
    SourceNotExterior {
        point: Point2,
        winding: i32,
        clearance: f64,
    },

    #[error("evaluation point {point} lies inside the cavity")]
    InteriorPoint { point: Point2 },

    #[error("evaluation point {point} is {distance:.3e} from the boundary, below the minimum {minimum:.3e}")]
    TooCloseToBoundary { point: Point2, distance: f64, minimum: f64 },

    #[error("boundary system is numerically singular at wavenumber {kappa}: condition estimate {condition:.3e}")]
    IllConditioned { kappa: f64, condition: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("singular 2x2 mode system at order {order}")]
    SingularMode { order: i64 },

    #[error("geometry constraint violated: {0}")]
    Geometry(String),

    #[error("configuration error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },

    #[error("{scene}: {source}")]
    Scene {
        scene: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Attaches the scene that was being computed.
    pub fn in_scene(self, scene: impl Into<String>) -> Self {
        Error::Scene {
            scene: scene.into(),
            source: Box::new(self),
        }
    }

    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
