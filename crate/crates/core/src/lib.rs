//! Interference of probabilistic alternatives over three number systems.
//!
//! The crate computes how a combined probability `P` deviates from the
//! classical sum `P1 + P2`, classifies the deviation as trigonometric or
//! hyperbolic, and linearizes it with complex, hyperbolic (split-complex) or
//! p-adic amplitudes. Exact arithmetic is used wherever the underlying
//! quantities are rational.
//!
//! Module map:
//!
//! - [`hyperbolic`]: the algebra of numbers `x + jy` with `j² = 1`.
//! - [`padic`]: exact p-adic valuations, digit expansions and balls on ℚ.
//! - [`interference`]: normalized deviation, regime classification, phases.
//! - [`context`]: classical and perturbed formulas of total probability.
//! - [`padic_probability`]: the p-adic rule `P = |α₁ + εα₂|²_p`.
//! - [`profiles`]: sampled brightness curves for interference pictures.
//! - [`cli`]: the command-line front end used by the `probinterf` binary.

pub mod check;
pub mod cli;
pub mod context;
mod error;
pub mod exact;
pub mod format;
pub mod hyperbolic;
pub mod interference;
pub mod padic;
pub mod padic_probability;
pub mod profiles;
pub mod tolerance;

pub use error::{Error, Result};
pub use hyperbolic::{GNumber, GPolar};
pub use interference::{InterferenceRecord, Regime, Sign};
pub use padic::{Order, PadicBall, PadicRational, Prime};
