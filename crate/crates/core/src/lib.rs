//! Harmonic shears of slit and polygonal conformal mappings.
//!
//! The crate evaluates harmonic univalent mappings of the unit disk
//! obtained by the shear construction: a conformal map phi onto a domain
//! convex in the horizontal direction is sheared with a monomial
//! dilatation omega(z) = z^m into f = h + conj(g), where
//!
//! ```text
//! h(z) = int_0^z phi'(zeta) / (1 - omega(zeta)) d zeta,    g = h - phi.
//! ```
//!
//! Two map families are built in: the four-slit map
//! `A log((1+z)/(1-z)) + B z/(1 + c z + z^2)` and the regular n-gon map
//! `int_0^z (1 - zeta^n)^(-2/n) d zeta`. For both, the defining integrals
//! are evaluated by an adaptive quadrature oracle, and the known closed
//! forms (partial-fraction log sums for the slit map, Appell F1 formulas
//! for the polygon) are implemented and cross-validated against it.
//! Shears with even m lift to minimal surfaces via the
//! Weierstrass-Enneper representation; samplers and SVG/CSV/OBJ exporters
//! reproduce the associated figures.
//!
//! Grid evaluation, verification sweeps, and surface sampling are
//! data-parallel through rayon (feature `parallel`, on by default); a
//! sequential fallback is kept for comparison and for single-threaded
//! builds.

pub mod error;
pub mod grid;
pub mod maps;
pub mod minsurf;
pub mod numerics;
pub mod render;
pub mod shear;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::QuadratureConfig;

pub use num_complex::Complex64;
