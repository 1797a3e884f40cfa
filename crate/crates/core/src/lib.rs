//! Exact verification and classification of Kochen-Specker sets and
//! contextuality graphs.
//!
//! The crate is organized around a handful of small, exact building blocks:
//!
//! - [`exact`] — arithmetic over the Eisenstein rationals Q(ω) (ω a primitive
//!   cube root of unity) and exact complex linear algebra for kets, rays,
//!   projectors and dichotomic observables.
//! - [`graph`] — dense-bitset graphs (n ≤ 64) with exact combinatorial
//!   algorithms: clique enumeration, independence and chromatic numbers,
//!   isomorphism and automorphism orbits, graph6 I/O, and generators.
//! - [`theta`] — a self-contained dense SDP solver for the Lovász number,
//!   reporting a certified duality gap, plus the vertex-transitive shortcut
//!   for the fractional packing number.
//! - [`contextuality`] — context sets, KS colorability, parity and
//!   fully-contextual predicates, graph classification, and the symbolic
//!   dimension bound for clique-blown-up triangular-graph structures.
//! - [`inequality`] — the noncontextuality inequality engine: exact
//!   dichotomic observables, context products, the brute-forced classical
//!   bound and the state-independent quantum value.
//! - [`catalog`] — built-in data sets (the seven-context KS set in dimension
//!   six, Johnson graphs) and a small text format for vector sets.

pub mod catalog;
pub mod contextuality;
pub mod exact;
pub mod graph;
pub mod inequality;
pub mod theta;

pub use contextuality::{Assignment, ClassificationReport, ContextSet};
pub use exact::{EisensteinScalar, ExactMatrix, Ket, Rational};
pub use graph::Graph;
pub use inequality::InequalityReport;
pub use theta::ThetaResult;
