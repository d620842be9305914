//! Eclipse queries: a generalization of 1NN and skyline over
//! multi-dimensional points with per-attribute weight-ratio ranges.
//!
//! Four interchangeable algorithms compute the same result set:
//! a quadratic baseline, a transformation to skyline, and two dual-space
//! indexed variants (quadtree- and cutting-backed).

pub mod bench;
pub mod datagen;
pub mod dominance;
pub mod dual2d;
pub mod dualhd;
pub mod error;
pub mod io;
pub mod model;
pub mod query;
pub mod skyline;
pub mod transform;

pub use error::{Error, Result};
pub use model::{Dataset, Point, RatioBox, Score, WeightVector};
pub use query::{eclipse_query, Algorithm};
