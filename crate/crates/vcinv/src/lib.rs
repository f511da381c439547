//! Exact invariant theory of `GL_n(F_q)` acting on a vector and a covector.
//!
//! The polynomial ring `F_q[x_1..x_n, y_1..y_n]` carries the diagonal action of
//! `GL_n(F_q)` on `V ⊕ V*`.  This crate builds the classical invariants of that
//! action (Dickson invariants, their duals, the pairing invariants `u_j`, the
//! orbit products `f_i`), verifies the relations they satisfy, and runs the
//! linear algebra needed to study the invariant ring as a bigraded algebra:
//! transfer/Reynolds operators, subalgebra membership, kernel components of the
//! presentation map, and Hilbert-series diagnostics.
//!
//! Everything is exact: coefficients live in a small finite field, series
//! arithmetic uses big integers, and no floating point appears anywhere.

pub mod error;
pub mod formal;
pub mod gfq;
pub mod grlin;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod matgroup;
pub mod mpoly;
pub mod transfer;

pub use error::Error;
