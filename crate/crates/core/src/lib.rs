//! Executable theory of (2,3)-agreeable box societies: exact box
//! arrangements, their intersection graphs, boxicity, the exposed-box
//! machinery, closed-form bounds and exhaustive searches over small graphs.

pub mod bounds;
pub mod boxicity;
pub mod eckhoff;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod graph;
pub mod reproduce;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{Arrangement, AxisBox, FVector, Rational, RationalInterval};
pub use graph::{Certificate, DegreeProfile, Graph};
