//! Exact combinatorics of graded sign-vector posets.
//!
//! The central objects are two families of posets on projective sign
//! vectors over `{1, ..., n}`: one fixes the number of sign changes at
//! exactly `l`, the other bounds it by `l`. The crate builds their Hasse
//! diagrams, labels the edges of the bounded extension and verifies that
//! the labeling is lexicographically shellable, computes flag `f`- and
//! `h`-vectors three independent ways, constructs normalized flows with
//! exact rational weights, and certifies Sperner properties through
//! matching and flow duality.
//!
//! Everything is exact: counts are big integers, weights are big rationals,
//! and each closed formula is cross-checked against a direct enumeration in
//! the test suite.
//!
//! ```
//! use signpost::poset::{Family, GradedPoset};
//! use signpost::enumeration::fh_vectors;
//!
//! let p = GradedPoset::build(3, 1, Family::R)?;
//! assert_eq!(p.len(), 5);
//!
//! let (f, h) = fh_vectors(&p)?;
//! assert_eq!(f.to_string(), "1 + 5t + 4t^2");
//! assert_eq!(h.to_string(), "1 + 3t");
//! # Ok::<(), signpost::error::Error>(())
//! ```
//!
//! Set-valued computations fan out over a rayon pool when the default
//! `parallel` feature is on; disabling it leaves a dependency-light,
//! byte-for-byte identical sequential build.

mod bitset;

pub mod blocks;
pub mod comb;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod export;
pub mod flows;
pub mod opt;
pub mod poset;
pub mod shelling;
pub mod sign_vector;
pub mod sperner;

pub use blocks::{BlockTuple, CoverInfo, CoverType};
pub use enumeration::{FlagVector, IntPolynomial, MaximalChainKey};
pub use error::{Error, Result};
pub use flows::{flow_p, flow_r, verify_flow, FlowReport, RationalFlow};
pub use poset::{Element, Family, GradedPoset, LatticeReport};
pub use shelling::{verify_el, EdgeLabel, ElReport, ElVerifier, LabeledChain};
pub use sign_vector::{Sign, SignVector};
pub use sperner::{
    chain_partition_profile, is_sperner, is_strongly_sperner, max_antichain, sperner_sweep,
    whitney, AntichainCertificate, SweepRow, SweepTable,
};

/// Exact rational scalar used for flow weights.
pub type Rational = num_rational::BigRational;
pub use num_bigint::BigInt;
