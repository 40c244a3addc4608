//! Independent verification engines.
//!
//! Nothing here reuses the unloading loop or the proximity-matrix formula
//! for the quantity it checks: the closure oracle enumerates a search box
//! against an intersection matrix obtained by simulating blowups, and the
//! monomial oracle computes multiplier ideals from Newton polygons.

pub mod closure;
pub mod newton;
pub mod toric;

pub use closure::{exhaustive_antinef_closure, simulated_intersection_matrix};
pub use newton::{howald_multiplier, newton_from_monomials, NewtonPolygon};
pub use toric::{cross_check, cross_check_report, monomial_to_cluster, CrossCheckReport, ToricCluster, Weight};
