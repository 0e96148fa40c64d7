//! Digital models of closed surfaces.
//!
//! * [`graph`]: finite simple graphs with named points, rims, balls, joins,
//!   clique-sum Euler characteristic and exact canonical forms.
//! * [`homotopy`]: contractible graphs, simple points and edges.
//! * [`manifold`]: digital 1- and 2-manifolds, simple pairs, compression and
//!   digital weight.
//! * [`cover`]: LCL covers of glued squares and their nerves.

pub mod canon;
pub mod clique;
pub mod cover;
pub mod error;
pub mod graph;
pub mod homotopy;
pub mod manifold;

pub use canon::CanonicalKey;
pub use error::{GraphError, HomotopyError, ManifoldError};
pub use graph::{fresh_name, zero_sphere, DigitalGraph, EdgeEdit};
pub use homotopy::{Contractibility, ReductionStep, ReductionTrace, Verdict};
pub use manifold::{CompressionTrace, Contraction, ManifoldReport, PairOrder, SphereVerdict, Surface};
