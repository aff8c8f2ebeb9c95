//! The unit-length tropical curve `X_Γ`: rational points, divisors,
//! combinatorial types and the degree-2 Abel map.

mod divisor;
mod jacobian;
mod lattice;
mod point;
mod region;

pub use divisor::{is_quasistable_tropical, CombinatorialType, TropicalDivisor};
pub use lattice::{qs_abel2, Abel2Solver, Abel2Value};
pub use point::{OrientedEdge, TropicalPoint};
pub use region::{
    region_constancy, region_constancy_with, sample_coordinates, Constancy, ConstancyReport, Region, Sample,
    DEFAULT_DENOMINATORS,
};
