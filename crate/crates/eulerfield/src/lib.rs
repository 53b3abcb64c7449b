//! Stochastic-topology workbench for sampled scalar fields.
//!
//! The crate computes exact combinatorial topology of functions sampled on
//! regular grids — Euler-characteristic curves, upper/lower Euler integrals,
//! and sublevel-set persistence barcodes — and pairs those measurements with
//! closed-form expected values for Gaussian and Gaussian-related random
//! fields. A Monte Carlo harness samples fields, evaluates the statistics,
//! and checks them against the predictions with confidence intervals; a
//! sensing module applies the same machinery to target enumeration under
//! additive Gaussian noise.
//!
//! Modules:
//! - [`special_fn`]: Hermite polynomials, Gaussian density/CDF, Gaussian
//!   Minkowski functionals of half-lines and χ² sublevel sets, and
//!   Gaussian-weighted quadrature.
//! - [`geometry`]: domains (box / flat torus / sphere) and their
//!   Lipschitz–Killing curvatures under a correlation-length metric.
//! - [`cubical`]: grid fields, lower-star cubical filtrations, and exact
//!   Euler-characteristic curves.
//! - [`euler_calc`]: upper/lower Euler integrals and level truncations.
//! - [`persistence`]: sublevel persistence barcodes and barcode Euler
//!   characteristics.
//! - [`grf`]: exact sampling of stationary Gaussian fields on grids.
//! - [`predict`]: closed-form expectations for the statistics above.
//! - [`montecarlo`]: seeded experiment harness with pass/fail reports.
//! - [`sensing`]: target enumeration by Euler integration with a
//!   noise-bias correction.
//! - [`suite`]: the bundled desk-scale validation battery.

pub mod cubical;
pub mod euler_calc;
pub mod geometry;
pub mod grf;
pub mod montecarlo;
pub mod persistence;
pub mod predict;
pub mod sensing;
pub mod special_fn;
pub mod suite;
