//! Regime-aware optimization of shot-noisy variational objectives.
//!
//! The scheduler alternates between a chi-squared calibrated sequential test
//! on a whitened gradient statistic, random-direction trust-region exploration
//! when the test reports a plateau, and shot-adaptive gradient descent when
//! it reports an informative region.
//!
//! Modules, bottom-up:
//!
//! - [`stats`]: chi-squared families, Student-t, KS, Clopper–Pearson, paired tests.
//! - [`regime`]: whitening, log-likelihood increments, Ville/Wald thresholds.
//! - [`quantum`]: Pauli algebra, dense statevector QAOA, parameter-shift estimates,
//!   commutator proxies and a Lanczos ground-state oracle.
//! - [`objectives`]: the objective trait plus the synthetic plateau landscape.
//! - [`optimizer`]: pilot, trust-region exploration, shot-adaptive descent and
//!   the outer loop with its shot ledger.

pub mod gradient;
pub mod objectives;
pub mod optimizer;
pub mod quantum;
pub mod regime;
pub mod stats;

pub use gradient::GradientEstimate;
