//! Exact symbolic computation for Fermat-type arrangements of codimension
//! two flats: field and polynomial arithmetic, the bracket calculus, the
//! arrangement model with its ideal generators, a small ideal engine
//! (Buchberger, normal forms, graded membership, intersections), and the
//! containment checks built on top of them.

pub mod arrangement;
pub mod bracket;
pub mod error;
pub mod field;
pub mod ideal;
pub mod lab;
pub mod linalg;
pub mod par;
pub mod poly;

pub use error::{Error, Result};
