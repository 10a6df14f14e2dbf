//! Exact lattice-polytope computations.
//!
//! Everything in this crate works over arbitrary-precision rationals; there is
//! no floating point anywhere. The crate is `no_std` (it needs `alloc`).
//!
//! The main entry points:
//!
//! * [`algebra`]: rational matrices, Hermite normal form, sublattices.
//! * [`polytope`]: V-polytopes with derived H-representation and face lattice,
//!   projections onto leading coordinates, slices, lattice points.
//! * [`integrality`]: the level up to which every face of a polytope is
//!   affinely integral, or in affinely general position.
//! * [`volume`]: triangulations, lattice-normalized volumes and S-volumes.
//! * [`ehrhart`]: Ehrhart polynomials by counting and by slices/projections.
//! * [`simplex`]: determinant ratios and the signed-sum identities for a
//!   fully general simplex.
//! * [`reduction`]: affine maps sending a polytope to a full-dimensional,
//!   fully general one while keeping its volume and S-volume.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod algebra;
pub mod ehrhart;
mod error;
pub mod integrality;
pub mod polytope;
pub mod reduction;
mod report;
pub mod simplex;
pub mod volume;

pub use algebra::{IMatrix, Int, RMatrix, Rat, Sublattice};
pub use ehrhart::EhrhartPolynomial;
pub use error::{Error, Result};
pub use integrality::{Condition, LevelCertificate};
pub use polytope::{Face, HRep, Polytope};
pub use report::{Check, Report};
