//! Exact computational kernel for twisted gamma-filtrations of type `D_n`
//! group rings.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice`] — unbounded-integer matrices, Hermite/Smith normal forms,
//!   lattice membership and invariant factors of finite quotients;
//! * [`rootdata`] — the `D_n` root datum (n even), its fundamental group
//!   `Λ/T*` and Weyl-orbit sizes of fundamental weights;
//! * [`gammaring`] — the quotient ring `𝔊 = ℤ[Λ/T*]/I` with canonical
//!   normal forms, multiplication and presentation checks;
//! * [`splitpoly`] — free commutative polynomials over `ℤ` for split-side
//!   identity checks;
//! * [`filtration`] — the twisted gamma-filtration of `𝔊` as a chain of
//!   integer lattices, its graded pieces and the case-table predictor;
//! * [`witness`] — construction of the torsion witness `μ` and mechanical
//!   verification of the membership, identity and restriction claims.
//!
//! Everything is computed over unbounded integers; no floating point and no
//! modular shortcuts. All values are immutable after construction and all
//! operations are pure functions, so the types can be freely shared between
//! threads.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod filtration;
pub mod gammaring;
pub mod lattice;
pub mod rootdata;
pub mod splitpoly;
pub mod witness;

pub use lattice::{IntMatrix, IntegerLattice, InvariantFactors};
pub use rootdata::{Isogeny, RootDatum};
