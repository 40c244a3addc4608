//! Complete ideals of a two-dimensional regular local ring, computed
//! through their antinef divisors on clusters of infinitely near points.
//!
//! The crate covers the divisor lattice of a cluster (intersection form,
//! canonical divisor, unloading), the ideal/divisor dictionary with Zariski
//! factorization, multiplier ideals and jumping numbers, and an explicit
//! construction writing any complete `m`-primary ideal `J` as a multiplier
//! ideal `𝒥(I^c)`. All arithmetic is exact.
//!
//! ```
//! use std::sync::Arc;
//! use complete_ideals::{realize, Cluster, CompleteIdeal};
//!
//! let cluster = Arc::new(Cluster::root());
//! let m = CompleteIdeal::maximal(cluster);
//! let cert = realize(&m).unwrap();
//! assert!(cert.is_verified());
//! assert_eq!(cert.parameters.c.to_string(), "3/2");
//! ```

pub mod cluster;
pub mod dictionary;
pub mod error;
pub mod generate;
pub mod lattice;
pub mod multiplier;
pub mod oracle;
pub mod realize;

pub use cluster::{validate, Cluster, PointId, PointRecord, ProximityMatrix, ValidationReport, Violation};
pub use dictionary::{CompleteIdeal, PointBasis, SimpleFactor};
pub use error::{Error, Result};
pub use lattice::{canonical_divisor, intersection_matrix, simple_generator, Divisor, IntersectionForm, Rational};
pub use multiplier::{jumping_numbers, multiplier_ideal, parse_rational, resolution_independent, Exponent};
pub use realize::{
    build_companion, classify_adjoint, epsilon_bound, floor_report, plan_chains, realize, realize_with,
    AdjointClassification, ChainPlan, ChainSpec, RealizationCertificate, RealizationParameters, RealizeOptions,
    UnitPolicy,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/clusters.md")]
    mod clusters {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/multipliers.md")]
    mod multipliers {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
}
