//! Finite incidence complexes.
//!
//! An incidence complex of rank `k` is a finite ranked poset with a least and a
//! greatest face, all maximal chains of length `k + 2`, strong flag
//! connectivity, and homogeneous cover counts `c_i >= 2` between consecutive
//! ranks. Abstract polytopes are the special case where every `c_i` equals 2.
//!
//! The crate provides:
//!
//! * construction and full axiom validation ([`poset`], [`validate`], [`complex`]),
//! * a catalog of standard families ([`catalog`]),
//! * power complexes `n^K` together with an independent brute-force oracle
//!   ([`power`]),
//! * automorphism groups, wreath symmetries, and the distinguished-subgroup
//!   machinery for regular complexes ([`perm`], [`symmetry`]),
//! * homomorphisms, coverings, quotients, and the induced coverings of power
//!   complexes ([`covering`]),
//! * Euler characteristic and genus for rank-3 polytopal maps ([`surface`]),
//! * JSON and DOT serialization ([`json`]).

pub mod bitset;
pub mod catalog;
pub mod complex;
pub mod covering;
pub mod flags;
pub mod iso;
pub mod json;
pub mod perm;
pub mod poset;
pub mod power;
pub mod surface;
pub mod symmetry;
pub mod validate;

mod util;

pub use complex::IncidenceComplex;
pub use poset::{FaceId, Rank, RankedPoset};
pub use validate::ValidationReport;
