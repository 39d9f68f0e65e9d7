//! Numerical toolkit for the Riemann zeta function and its classical applications.
//!
//! The crate covers four connected areas:
//!
//! * [`zeta_engine`] — evaluation of ζ(s) across the complex plane (direct
//!   series with tail corrections, accelerated alternating series in the
//!   critical strip, reflection formula in the left half-plane), together with
//!   the completed function ξ and Hadamard-style products over zeros.
//! * [`critical_line`] — the Riemann–Siegel phase θ(t), the real rotation
//!   Z(t), zero scanning and bisection on the critical line, and the zero
//!   counting formula with an independent phase-based verification.
//! * [`prime_arith`] — sieves, Möbius μ, the weighted prime-power staircase
//!   Π(x), Chebyshev ψ(x), and residual checks of the Euler-product logarithm
//!   against prime sums.
//! * [`explicit_formula`] — Li and complex exponential integrals, and the
//!   explicit formulas reconstructing ψ(x), Π(x) and π(x) from zero ordinates.
//! * [`regularization`] — zeta-regularized spectral sums: the parallel-plate
//!   vacuum energy and force, and finite spectral determinants.
//! * [`special_fn`] — the supporting special functions: complex log-gamma,
//!   exponential integral Ei, Bernoulli numbers, Jacobi theta sums.
//!
//! Everything is plain `f64`/`Complex64` arithmetic; no arbitrary precision.
//! Functions return [`Result`] and reserve panics for violated internal
//! invariants.

pub mod critical_line;
pub mod explicit_formula;
pub mod numfmt;
pub mod prime_arith;
mod quad;
pub mod regularization;
pub mod special_fn;
pub mod zeta_engine;

use num_complex::Complex64;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// ζ requested exactly at its simple pole s = 1.
    #[error("zeta has a simple pole at s = 1")]
    PoleAtOne,
    /// Γ or a Γ-derived quantity requested at a nonpositive integer.
    #[error("gamma pole at z = {0}")]
    GammaPole(Complex64),
    /// Argument outside a function's stated domain.
    #[error("domain error in {what}: {detail}")]
    Domain {
        what: &'static str,
        detail: String,
    },
    /// A series or iteration failed to reach the requested tolerance
    /// within its term budget.
    #[error("{what} did not converge to tolerance {tol:e} (best error estimate {best:e})")]
    NonConvergence {
        what: &'static str,
        tol: f64,
        best: f64,
    },
    /// li(x) at its logarithmic singularity x = 1.
    #[error("logarithmic integral is singular at x = 1")]
    SingularArgument,
    /// An internal consistency check failed (e.g. a quantity that must be
    /// real came out with a large imaginary residual).
    #[error("consistency check failed in {what}: residual {residual:e}")]
    Consistency { what: &'static str, residual: f64 },
    /// Zero-dependent computation received an empty zero table.
    #[error("operation requires a non-empty zero table")]
    EmptyZeroTable,
    /// Zero verification requested beyond the scanned range.
    #[error("verification at t = {t} exceeds scanned range (t_max = {t_max})")]
    UnreachableT { t: f64, t_max: f64 },
    /// The scan's own count check disagrees with the counting formula.
    #[error("scan to t = {t} suspected of missing zeros: table {found}, formula {expected:.3}")]
    SuspectedMissedZeros { t: f64, found: usize, expected: f64 },
    /// Sieve allocation above the fixed memory budget.
    #[error("sieve limit {requested} exceeds budget of {budget} bits")]
    CapacityExceeded { requested: u64, budget: u64 },
    /// A query needs primes beyond the sieve's limit.
    #[error("query up to {needed} exceeds sieve limit {limit}")]
    SieveTooSmall { needed: u64, limit: u64 },
    /// Persisted zero table failed validation on load.
    #[error("zero table cache corrupt: {0}")]
    CacheCorrupt(String),
    /// Requested index above a hard budget (e.g. Bernoulli order).
    #[error("{what} index {n} above budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        n: u32,
        budget: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
