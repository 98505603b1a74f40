//! Exact-arithmetic modelling of Z^n-quivers and linked nets of
//! finite-dimensional rational vector spaces.
//!
//! The crate is organized as:
//! - [`quiver`]: lattice combinatorics of the canonical Z^n-quiver
//!   (vertices, arrow types, path types, cones, hulls, polygons,
//!   multidegree frames);
//! - [`linalg`]: exact rational matrices and the subspace calculus;
//! - [`net`]: finite linked-net presentations on a window, path maps, and
//!   the axiom checkers with explicit coverage reporting;
//! - [`analysis`]: kernel profiles, the intersection property, and the
//!   constructive semisimple decomposition with violation certificates;
//! - [`gen`]: seeded random nets used as oracles, and the bundled
//!   non-semisimple example;
//! - [`io`]: the JSON net file format.

pub mod analysis;
pub mod gen;
pub mod io;
pub mod linalg;
pub mod net;
pub mod quiver;
