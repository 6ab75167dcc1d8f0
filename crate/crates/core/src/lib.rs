//! Exact symbolic reduction of rigid linear differential equations with
//! unramified irregular singularities at infinity.
//!
//! The crate is layered bottom-up:
//! - [`scalar`]: exact arithmetic in Q(ξ) and root extraction
//! - [`weyl`]: operators in the Weyl algebra and the transforms acting on them
//! - [`local`]: Newton polygons, characteristic exponents and formal series
//! - [`datum`]: local datum tables and their combinatorial transforms
//! - [`lattice`]: the root lattice attached to a table
//! - [`engine`]: reduction planning, replay, cross-validation and confluence
//! - [`expr`]: the operator expression language

pub mod scalar;
pub mod error;
pub mod weyl;
pub mod expr;
pub mod local;
pub mod datum;
pub mod lattice;
pub mod engine;

pub use error::{Error, Result};
