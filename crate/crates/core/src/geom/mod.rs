//! Dimension-general exact convex geometry kernel.

pub mod linalg;
pub mod polytope;
pub mod qpoly;
pub mod rat;

pub use polytope::{Halfspace, Polytope};
pub use qpoly::{PiecewisePoly, QPoly};
