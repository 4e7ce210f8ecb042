//! Exact arithmetic, basis keys, formal vectors and template series.

pub mod key;
pub mod linalg;
pub mod lincomb;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;

pub use key::{BasisKey, KeyPattern, SpaceId};
pub use lincomb::{FormalVector, LinComb, Tensor, TupleDisplay};
pub use poly::{Affine, Poly, Var};
pub use report::{CheckReport, Residual, Violation, Window, MAX_STORED_VIOLATIONS};
pub use scalar::Scalar;
pub use series::{bullet, Template, TemplateSeries};
