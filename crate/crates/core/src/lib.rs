//! Combinatorics of degree-2 Abel maps on nodal curves, computed on dual graphs.
//!
//! The crate works with a finite loopless multigraph `Γ` (the dual graph of a
//! nodal curve with smooth components) and its unit-length tropical curve
//! `X_Γ`. It provides
//!
//! * divisors, polarizations, chip-firing reduction and the unique
//!   `(v0, μ)`-quasistable representative of a divisor class ([`divisor`]);
//! * hemispheres (δ-tails of the curve), free towers and the closed-form
//!   conversion of `2v0 − v1 − v2` to its quasistable representative
//!   ([`hemisphere`]);
//! * tropical divisors, combinatorial types and the degree-2 Abel map
//!   `(p1, p2) ↦ qs(D† − p1 − p2)` evaluated exactly on a rational lattice
//!   ([`tropical`]);
//! * the blowup plan resolving the degree-2 Abel–Jacobi map and a per-node-pair
//!   classifier ([`planner`]);
//! * non-injectivity witnesses for the symmetrized degree-2 Abel map ([`hyper`]).
//!
//! All arithmetic is exact (`i64` and `Rational64`).

pub mod divisor;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hemisphere;
pub mod hyper;
pub mod json;
pub mod planner;
pub mod tropical;

mod window;

pub use divisor::{Divisor, FiringFunction, Polarization};
pub use error::{Error, ErrorClass, Result};
pub use graph::{Edge, EdgeSpec, MultiGraph, Subdivision, VertexSet};
pub use hemisphere::{FamilyF, FreeTower, Hemisphere, HemisphereIndex};
pub use num_rational::Rational64;
