//! Exact combinatorics and ideal computations for local models of `GL_d`.
//!
//! The crate covers the special fiber of the standard model through its
//! combinatorial shadows: strata indexed by partitions and their dimension
//! formulas ([`partitions`]), exact polynomial arithmetic and Groebner bases
//! ([`polyring`]), the defining ideals of nilpotent varieties built from a
//! generic matrix ([`matrix_schemes`]), concrete nilpotent orbits and
//! Springer-type fibers over finite fields ([`orbits`]), `Π`-stable subspaces
//! ([`lattice_model`]) and nearby-cycle multiplicities
//! ([`multiplicities`]). [`campaigns`] bundles the cross-checks into
//! [`report::VerificationReport`]s.

pub mod campaigns;
pub mod config;
pub mod error;
pub mod lattice_model;
pub mod linalg;
pub mod matrix_schemes;
pub mod multiplicities;
pub mod orbits;
pub mod partitions;
pub mod polyring;
pub mod report;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/matrix_schemes.md")]
    mod matrix_schemes {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/multiplicities.md")]
    mod multiplicities {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
