//! Arrangements of circles in which every intersecting pair meets at a
//! right angle: exact constructions, planarization, face statistics,
//! intersection graphs and bound audits.

pub mod arrangement;
pub mod audit;
pub mod file;
pub mod generators;
pub mod geom;
pub mod graphs;

pub use arrangement::{validate, Arrangement};
pub use geom::{Circle, Point, Tolerance};
