//! Combinatorics and exact geometry of vertical cluster configuration spaces.
//!
//! A *vertical cluster* is a group of distinct points in `R^(p+q)` sharing
//! their first `p` coordinates. This crate works with ordered collections of
//! such clusters: it enumerates the ray partitions that index the integral
//! cohomology of these spaces, aggregates Betti tables, analyses concrete
//! exact-rational configurations (witnessing, greedy maximal ray partition,
//! path component, dexterity), and implements the cluster-partition
//! combinatorics behind the homological stability range.
//!
//! The crate is organised as follows:
//!
//! - [`shape`], [`ray`], [`profile`]: the combinatorial domain types — cluster
//!   shapes, table indices, ray partitions, weights, component labels — and
//!   the closed formulas attached to them.
//! - [`enumerate`], [`betti`]: streaming enumeration of all ray partitions of
//!   a shape and the Betti-table aggregation built on top of it, together
//!   with reference polynomials and the arity-two inequality scan.
//! - [`geometry`]: exact-rational analysis of concrete vertical
//!   configurations.
//! - [`cluster`]: irreducible partitions, standard groups, the insertion map,
//!   distributions and the stability range.
//! - [`oracle`]: independent brute-force verifiers for the algorithmic claims
//!   made by the other modules.
//!
//! All counts are arbitrary-precision integers and all coordinates are exact
//! rationals; no floating point enters any decision procedure.

pub mod betti;
pub mod cluster;
pub mod enumerate;
pub mod geometry;
pub mod oracle;
pub mod profile;
pub mod ray;
pub mod rational;
pub mod shape;

mod unionfind;

pub use betti::{
    arnold_polynomial, binomial, closed_form_r3, conjecture_scan, BettiError, BettiTable,
    ConjectureRow, ConjectureScan, PoincarePolynomial,
};
pub use cluster::{
    enumerate_distributions, enumerate_irreducible, insertion_map, orientation_character,
    stability_range, standard_group, ClusterError, ClusterLimits, Distribution,
    IrreduciblePartition, LabeledConfiguration, LabeledPoint,
};
pub use enumerate::{enumerate_ray_partitions, EnumerationLimits, RayPartitions};
pub use geometry::{
    Component, DexterityResult, GeometryError, RationalPoint, VerticalConfiguration,
    WitnessResult, WitnessViolation,
};
pub use oracle::{
    brute_force_witnessed, consistency_suite, verify_maximality, ConsistencyLimits, OracleError,
    OracleReport,
};
pub use profile::{space_profile, SpaceProfile};
pub use ray::{
    compare_weights, ComponentLabel, RayPartition, RayPartitionError, RayPartitionStats,
    WeightError, WeightVector,
};
pub use shape::{ClusterShape, ShapeError, TableIndex};
