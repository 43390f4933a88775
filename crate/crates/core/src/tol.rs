//! Numerical tolerances used across the crate.
//!
//! Each constant is pinned once here so that tests and production code
//! agree on what "equal" means for a given kind of quantity.

/// Relative residual target for power iteration: ‖Γδ − λδ‖₂ ≤ RESIDUAL·max(1, λ).
pub const SPECTRAL_RESIDUAL: f64 = 1e-9;

/// Iteration cap for power iteration before reporting non-convergence.
pub const SPECTRAL_MAX_ITER: usize = 100_000;

/// Absolute tolerance for theorem-level inequality checks (progress-measure
/// drops, distinguishability, certificate ceilings).
pub const CHECK_ABS: f64 = 1e-6;

/// Drift allowed on quantities that are exactly preserved in exact
/// arithmetic (inner products across non-query unitaries, entrywise
/// factorizations).
pub const EXACT_DRIFT: f64 = 1e-12;

/// Unit-norm and unitarity tolerance for simulator states and operators.
pub const UNITARY: f64 = 1e-9;

/// Feasibility margin for the floating-point LP path; used as the pivot
/// tolerance inside the simplex solver.
pub const LP_PIVOT: f64 = 1e-7;

/// A certificate witness must reproduce its band to this accuracy.
pub const WITNESS: f64 = 1e-9;

/// Coefficients below this magnitude do not count towards polynomial degree.
pub const COEFF_ZERO: f64 = 1e-12;

/// Minimum improvement for a local-search move to be accepted.
pub const IMPROVE_STEP: f64 = 1e-12;
