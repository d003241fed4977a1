use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("points are equal in the projective plane")]
    EqualPoints,

    #[error("eigenvalue clustering is ambiguous at tolerance {tol:e}")]
    IllConditioned { tol: f64 },

    #[error("power sequence does not converge: {0}")]
    NonConvergent(String),

    #[error("point is not fixed by the transformation")]
    NotFixed,

    #[error("projection center lies on the target line")]
    PointOnLine,

    #[error("polynomial has a repeated factor")]
    RepeatedFactor,

    #[error("degree {degree} is not supported by this operation (max {max})")]
    DegreeUnsupported { degree: u32, max: u32 },

    #[error("line is a component of the curve")]
    LineIsComponent,

    #[error("genus formula is negative for n={n}, d={d}, s={s}")]
    NegativeGenus { n: i64, d: i64, s: i64 },

    #[error("invariant formula is negative for n={n}, d={d}, s={s}")]
    Inconsistent { n: i64, d: i64, s: i64 },

    #[error("degenerate conic")]
    Degenerate,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("curve is not of the expected type: {0}")]
    WrongType(String),

    #[error("frame points are not in general position")]
    FrameDegenerate,

    #[error("transformation is not diagonal")]
    NotDiagonal,

    #[error("not invariant{}: residual {residual:e}", witness(generator, component))]
    NotInvariant {
        generator: Option<String>,
        component: Option<String>,
        residual: f64,
    },

    #[error("component is reducible: {0}")]
    Reducible(String),

    #[error("duplicate component {0:?}")]
    DuplicateComponent(String),

    #[error("duplicate lines at indices {0} and {1}")]
    DuplicateLines(usize, usize),
}

fn witness(generator: &Option<String>, component: &Option<String>) -> String {
    let mut s = String::new();
    if let Some(g) = generator {
        s += &format!(" under generator {g:?}");
    }
    if let Some(c) = component {
        s += &format!(" for component {c:?}");
    }
    s
}
