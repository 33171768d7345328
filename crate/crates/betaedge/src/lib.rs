//! Finite-N Gaussian β-ensemble spectral toolkit.
//!
//! The crate evaluates eigenvalue densities of the Gaussian unitary ensemble at
//! finite matrix size, their scaled limits at the spectral bulk and soft edge,
//! low-order spectral moments for general β (closed forms, quadrature, and the
//! β ↔ 4/β duality), the exact rational Airy-basis coefficients of the soft-edge
//! large-N expansion obtained from an ODE recursion, Laplace-transform identities
//! satisfied by those coefficients, and reproducible Monte Carlo samplers
//! (tridiagonal β-ensemble models and dense GOE/GUE) used to cross-check all of
//! the above.
//!
//! Module map:
//! - [`airy`], [`hermite`]: high-accuracy special functions (Ai, Bi, and the
//!   Hermite oscillator functions ψ_n) with their derivatives.
//! - [`ratpoly`], [`combo`]: exact rational polynomials and the operator
//!   algebra on p·Ai² + q·Ai′² + s·Ai·Ai′ combinations.
//! - [`solver`]: the exact linear-algebra engine producing the soft-edge
//!   expansion coefficients r_j(y), plus kernel-constant fits against data.
//! - [`ensembles`]: finite-size densities, scaling maps between raw, global
//!   (bulk), and soft-edge coordinates, and limit curves.
//! - [`moments`]: even spectral moments — closed forms for general β, β = 2
//!   quadrature, the β ↔ 4/β duality, and 1/N-structure fits.
//! - [`laplace`]: Laplace transforms of the expansion terms and the
//!   derivative recursion they satisfy.
//! - [`mc`]: seeded, parallel Monte Carlo samplers with moment estimators and
//!   edge histograms.
//! - [`quad`]: adaptive quadrature on finite and infinite intervals.
//! - [`verify`]: the numbered cross-validation suite tying everything
//!   together with pass/fail reports.

pub mod airy;
pub mod combo;
mod dd;
pub mod ensembles;
pub mod hermite;
pub mod laplace;
pub mod mc;
pub mod moments;
pub mod quad;
pub mod ratpoly;
pub mod solver;
mod tridiag;
pub mod verify;

pub use airy::{airy_eval, AiryError, AiryValues};
pub use combo::{d_op, eval_combo, homogeneous_check_numeric, l_op, rhs_op, AiryCombo, HomogeneousPair};
pub use ensembles::{
    ckd_kernel, global_ode_residual, gue_density_raw, scaling_map, semicircle,
    soft_edge_limit_density, Convention, DensityCurve, EnsembleSpec, ScalingKind, ScalingMap,
};
pub use hermite::{hermite_psi_eval, HermiteValues};
pub use laplace::{
    laplace_numeric, recursion_residual, recursion_table_csv, u0_closed, u0_closed_derivatives,
    u1_closed, LaplaceError, LaplaceMethod, LaplaceValue, RecursionCheck,
};
pub use mc::{
    batch_sidecar_json, batch_to_csv, edge_histogram, estimate_moment, estimate_raw_moment,
    histogram_l1_distance, sample_dense, sample_tridiagonal, EdgeHistogram, EdgeScaling, McError,
    SampleBatch, Sampler,
};
pub use moments::{
    duality_check, fit_inverse_power_coefficients, moment_closed_form, moment_quadrature,
    moments_to_csv, moments_to_json, MomentError, MomentNumber, MomentSource, MomentValue,
};
pub use quad::{adaptive_integrate, QuadratureSpec};
pub use ratpoly::RationalPoly;
pub use solver::{solve_order, ExpansionSeries, KernelConstant, SolveError};
pub use verify::{run_criterion, run_suite, suite_ids, suite_passed, CriterionReport, SuiteSelection};
