//! Exact convex and toric geometry for Newton-Okounkov bodies.
//!
//! Everything is computed in arbitrary-precision rational arithmetic; the
//! only inexact quantity in the whole crate is the square root taken when
//! reporting a Hausdorff distance, and it carries an explicit caller-supplied
//! tolerance. The crate is organized as:
//!
//! - [`geom`]: dimension-general exact convex kernel (hulls, volumes,
//!   Minkowski sums, slices, piecewise-polynomial volume functions).
//! - [`toric`]: complete smooth fans, toric (1,1)-classes as facet offsets,
//!   torus-invariant flags, section polytopes, restricted volumes, and
//!   stellar-subdivision blowups with flag lifting.
//! - [`valuation`]: iterated vanishing-order valuations of polynomials and
//!   of max-affine potentials, semigroup sampling of bodies.
//! - [`moment`]: max-affine convex potentials, moment bodies, real
//!   Monge-Ampere masses, singularity comparison.
//! - [`bodies`]: Okounkov bodies, partial bodies, pseudoeffective limits,
//!   and the identity verifiers.
//! - [`schema`]: the JSON wire formats.

pub mod bodies;
pub mod error;
pub mod geom;
pub mod moment;
pub mod schema;
pub mod toric;
pub mod valuation;

pub use error::{Error, Result};
pub use geom::rat::{Int, Q};
pub use geom::Polytope;

