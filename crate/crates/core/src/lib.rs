//! Exact verification toolkit for the bound `P(X_1 + ... + X_n < n + 1) >= 1/e`
//! when the `X_i` are i.i.d. two-point variables with unit mean.
//!
//! Every quantity is computed in exact rational arithmetic. Floating point is
//! only used for human-readable columns in reports and for Monte Carlo
//! estimates.
//!
//! Module map:
//!
//! * [`exact`]: rationals, binomials, powers, and a certified bracket for `e`.
//! * [`tail`]: the partial binomial sum, the sawtooth `f(p)`, and brute-force oracles.
//! * [`minimizer`]: breakpoint values `h(n, m)` and the certified `1/e` floor.
//! * [`beta`]: the incomplete beta function at integer parameters.
//! * [`lemmas`]: exact checks of every inequality in the minimality argument.
//! * [`mc`]: seedable Monte Carlo for heterogeneous two-point instances.
//! * [`report`]: verification reports, sweeps, and their serialization.
//! * [`verify`]: the full verification battery used by the `feige verify` command.
//! * [`cli`]: the command-line front end.

pub mod beta;
pub mod cli;
pub mod error;
pub mod exact;
pub mod lemmas;
pub mod mc;
pub mod minimizer;
pub mod report;
pub mod tail;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
