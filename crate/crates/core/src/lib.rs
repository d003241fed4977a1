//! Projective geometry of PSL(3,ℂ) acting on plane curves: element
//! classification, power limits, curve invariants, normal forms, and
//! invariance reports for finitely generated groups.

pub mod classifier;
pub mod cli;
pub mod curves;
pub mod error;
pub mod families;
pub mod linalg;
pub mod moebius;
pub mod poly;
pub mod projective;
pub mod roots;
pub mod scene;

pub use error::{Error, Result};
pub use moebius::Moebius;
pub use poly::{BinaryForm, HomPoly};
pub use projective::{ProjLine, ProjPoint, ProjTransform, PseudoProjMap, Tol};
