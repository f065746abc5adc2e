//! Exact and asymptotic computations around the singular series of the
//! prime-pair problem: sieved arithmetic tables, Ramanujan sums, truncated
//! series and their tails, prime-product constants, weighted moment sums,
//! and residual verification of the asymptotic formulas they satisfy.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — linear-sieve tables (smallest prime factor, Möbius, totient)
//!   and exact factorization primitives.
//! * [`sum`] — compensated summation and double-double helpers used by every
//!   large accumulation.
//! * [`constants`] — Euler products and prime sums evaluated at a prime
//!   cutoff, with truncation-tail estimates.
//! * [`singular`] — Ramanujan sums, the singular series in product and series
//!   form, truncations, tails, and batched tables over a range of offsets.
//! * [`moments`] — the finite weighted sums built from those tables.
//! * [`verify`] — predicted main terms, residuals, and order-of-magnitude
//!   scans for the asymptotic formulas.

pub mod arith;
pub mod constants;
pub mod error;
pub mod moments;
pub mod singular;
pub mod sum;
pub mod verify;

pub use arith::ArithTables;
pub use constants::ConstantsBundle;
pub use error::{Error, Result};
pub use moments::{MomentKind, MomentParams, MomentResult};
pub use singular::SeriesTable;
pub use verify::{TheoremId, TheoremReport, Thresholds};
