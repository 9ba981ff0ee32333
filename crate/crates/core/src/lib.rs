//! Perfect sequence covering arrays: permutation multisets of `S_n` in which
//! every ordered k-sequence of distinct symbols appears as a subsequence of
//! the same number `lambda` of members.
//!
//! The crate counts coverage exactly, certifies claims, builds arrays from
//! a catalog and from the affine-plane squaring construction, computes the
//! linear-algebra lower bounds, and searches small cases exhaustively.

pub mod combin;
pub mod construct;
pub mod coverage;
pub mod error;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod perm;
pub mod plane;
pub mod search;
pub mod verify;

pub use construct::{catalog, iterate_to_power, square_construction, CatalogEntry};
pub use coverage::{coverage_report, coverage_table, CoverageOptions, CoverageReport, SequenceSpace};
pub use error::{Error, Result};
pub use perm::{compose_right, is_subsequence, relabel, KSequence, Permutation, PermutationArray, Symbol};
pub use plane::{affine_plane, AffinePlane};
pub use search::{Budget, SearchOptions, SearchOutcome, SearchStatus};
pub use verify::{certify, Certificate, Claim, Verdict};
