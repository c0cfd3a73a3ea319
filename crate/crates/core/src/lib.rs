//! Exact Lah numbers and machine-checked identities around them.
//!
//! - [`exact_core`]: Lah numbers, associated Lah numbers, Lah polynomials,
//!   with a brute-force enumeration oracle.
//! - [`factorial_basis`]: exact polynomials and truncated series, factorial
//!   bases, generating functions, derivatives of `e^{±1/x}`.
//! - [`special_functions`]: series for `I₁`, `₁F₂(1; k+1, k+2; t)` and `H_k`.
//! - [`integral_verify`]: self-validating semi-infinite quadrature and the
//!   integral identity checks.
//! - [`sequence_props`]: finite differences, absolute convexity, Sturm root
//!   certificates.
//! - [`cli`]: the `lah` command.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod exact_core;
pub mod factorial_basis;
pub mod integral_verify;
pub mod sequence_props;
pub mod special_functions;
pub mod summation;

pub use exact_core::{lah, lah_row, lah_total, LahError, LahTable};
