//! Exact verification and construction of Gassmann–Sunada triples and the
//! drum geometries they correspond to, with a finite-difference Dirichlet
//! eigenvalue verifier for planar tile domains.

pub mod action;
pub mod error;
pub mod exactla;
pub mod gallery;
pub mod geom;
pub mod group;
pub mod iso;
pub mod perm;
pub mod scalar;
pub mod spectral;
pub mod triple;

pub use action::{core, coset_action, fixed_point_formula, PermutationAction};
pub use error::{Error, Result};
pub use geom::{build_drum_geometry, DGeometry, IncidenceGeometry};
pub use group::{GroupFile, PermGroup, Subgroup};
pub use perm::Perm;
pub use triple::{
    check_ac, check_conjugate, check_ec, check_flags, reduce_ff, FlagReport, GSTriple, GroupSource, TripleFile,
};

/// Exact rational matrix (incidence matrices, intertwiners).
pub type ExactMatrix = exactla::Matrix<num_rational::BigRational>;
/// Exact integer matrix.
pub type IntMatrix = exactla::Matrix<num_bigint::BigInt>;

/// Double-precision spectrum.
pub type Spectrum64 = spectral::Spectrum<f64>;
/// Single-precision spectrum.
pub type Spectrum32 = spectral::Spectrum<f32>;
/// Double-precision sparse symmetric matrix.
pub type SparseSym64 = spectral::SparseSym<f64>;
