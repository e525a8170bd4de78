//! Exact verification toolkit for the determinant congruence
//!
//! ```text
//! D_n(c, d) = det[(i^2 + c*i*j + d*j^2)^(n-2)]_{0 <= i,j < n} = 0 (mod n^2)
//! ```
//!
//! which holds for every composite `n > 3`, and for prime `n = p > 3` whenever
//! `d` is a quadratic non-residue modulo `p`.
//!
//! The crate evaluates `D_n` exactly (two independent determinant
//! algorithms), and reproduces each intermediate object of the argument:
//! the Vandermonde product `V_n` and its valuations, the Smith normal form
//! rank lemma, the `F_p` coefficient matrix `C` of the reduced representative
//! of `(X^2 + cXY + dY^2)^(p-2)`, the critical coefficient cancellation, and
//! the factorization `M = V C V^T` over `F_p`.
//!
//! [`report`] drives parameter sweeps and emits deterministic json-lines or
//! csv reports; the `sundet` binary is a thin CLI over it.

pub mod error;
pub mod exact_linalg;
pub mod fp_linalg;
pub mod modmath;
pub mod quadform;
pub mod report;
pub mod sun;

pub use error::{Error, Result};
pub use exact_linalg::{IntMatrix, SnfResult};
pub use fp_linalg::FpMatrix;
pub use modmath::Residue;
pub use quadform::{AlphaCoeffs, CoeffMatrixC, FpPoly};
pub use sun::{NClass, SunParams, VerificationRecord};
