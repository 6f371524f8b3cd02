//! Exact computation with quiver and seed mutations, Laurent polynomials,
//! total positivity tests, and triangulated polygons with laminations.

pub mod laurent;
pub mod par;
pub mod positivity;
pub mod quiver;
pub mod seed;
pub mod surface;

pub use laurent::{LaurentError, LaurentPoly, VarTable};
pub use par::Exec;
pub use quiver::{Quiver, QuiverError, Vertex};
pub use seed::{seeds_equal, Seed, SeedError};
