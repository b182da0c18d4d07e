//! Exact-arithmetic workbench core for quiver representations, Auslander-Reiten
//! theory, and tilting.
//!
//! Everything here is deterministic and exact: scalars live in ℚ (the default)
//! or in a prime field F_p, matrices are dense with exact entries, and all
//! homological data (Hom, Ext¹, τ, almost split sequences, tilted categories)
//! is produced by explicit linear algebra over those fields.
//!
//! The crate is `no_std` (with `alloc`); file formats, the CLI, and graph
//! export live in the companion crate `tiltkit-cli`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ar;
pub mod catalog;
pub mod error;
pub mod field;
pub mod mat;
pub mod mesh;
pub mod quiver;
pub mod rep;
pub mod sections;
pub mod tilted;

pub use error::{Error, Result};
pub use field::{Field, Fp, Q};
pub use mat::{Mat, ZMat};
