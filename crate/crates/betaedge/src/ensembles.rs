//! Eigenvalue densities of the finite-N Gaussian ensembles, their scaling
//! maps, and the limiting curves they converge to.
//!
//! # Conventions
//!
//! Two raw coordinate conventions are supported and carried explicitly:
//!
//! * `HermiteWeight` — the scaling x = λ_classical/√β of the classical
//!   ensemble (joint weight ∏ e^{−λ²/2}|Δ(λ)|^β). At β = 2 the joint weight
//!   becomes ∏ e^{−x_i²}|Δ|² and the one-point density is the Hermite kernel
//!   diagonal ρ_N(x) = Σ_{j<N} ψ_j(x)²; the spectrum fills (−√(2N), √(2N)).
//! * `BetaCanonical` — x_c = x_hermite/√2 at every β, equivalently the
//!   coordinates with joint weight ∏ e^{−β x_i²}|Δ|^β; the spectrum fills
//!   (−√N, √N). Monte Carlo samplers emit this convention natively.
//!
//! # Scaling maps
//!
//! * `Raw` — identity.
//! * `Global` — X = x_hermite/√(2N): support (−1, 1), density normalized to
//!   unit mass, limit (2/π)√(1−X²) (see [`semicircle`]).
//! * `SoftEdge` — the edge zoom with effective size N′ = N + (β−2)/(2β):
//!   x_hermite = √(2N′) + y/(√2·(N′)^{1/6}), density multiplied by
//!   dx/dy = 1/(√2·(N′)^{1/6}); at β = 2 the scaled density converges to
//!   r₀(y) = Ai′(y)² − y·Ai(y)² with O(N^{−2/3}) corrections.
//!
//! # Exact identities used as cross-checks
//!
//! With u = ψ_{N−1}, v = ψ_N, c = √(2N), the β = 2 density and derivatives:
//!
//! ```text
//! ρ   = N(u² + v²) − c·x·uv
//! ρ′  = −c·uv
//! ρ″  = −2N(u² − v²)
//! ρ‴  = −4N·x(u² + v²) + 8N·c·uv
//! ```
//!
//! and ρ satisfies exactly ρ‴ = 4(x² − 2N)ρ′ − 4xρ, which in global
//! variables becomes (1/(4N))²·ρ̄‴ − (X² − 1)·ρ̄′ + X·ρ̄ = 0.

use crate::airy::{airy_eval, AiryError};
use crate::hermite::{ldexp_chunked, psi_pair_scaled, HermiteError, PsiSequence, MAX_DEGREE};
use crate::quad::{adaptive_integrate, QuadError, QuadratureSpec};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::io::Write;

/// Raw-coordinate convention for densities and samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// Weight ∏ e^{−x²}|Δ|^β; β = 2 density is Σψ_j².
    HermiteWeight,
    /// Classical β-ensemble coordinates, x = x_hermite/√2.
    BetaCanonical,
}

/// Which rescaling of the raw density to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScalingKind {
    Raw,
    Global,
    SoftEdge,
}

/// An ensemble: Dyson index β > 0, size N ≥ 1, coordinate convention.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnsembleSpec {
    pub beta: f64,
    pub n: usize,
    pub convention: Convention,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnsembleError {
    /// β must be a positive finite real.
    InvalidBeta { beta: f64 },
    /// N must be at least 1 (and within the Hermite degree bound).
    InvalidSize { n: usize },
    /// The requested operation is only available at specific β (analytic
    /// densities need β = 2; limit curves exist here for β ∈ {1, 2}).
    UnsupportedBeta { beta: f64, context: &'static str },
    /// Derivative order outside 0..=3.
    InvalidDerivativeOrder { order: usize },
    /// Grid must be non-empty and strictly increasing.
    InvalidGrid,
    Hermite(HermiteError),
    Airy(AiryError),
    Quadrature(QuadError),
}

impl fmt::Display for EnsembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleError::InvalidBeta { beta } => {
                write!(f, "beta must be a positive finite real, got {beta}")
            }
            EnsembleError::InvalidSize { n } => {
                write!(f, "ensemble size {n} is outside 1..={MAX_DEGREE}")
            }
            EnsembleError::UnsupportedBeta { beta, context } => {
                write!(f, "beta = {beta} is not supported for {context}")
            }
            EnsembleError::InvalidDerivativeOrder { order } => {
                write!(f, "derivative order {order} is outside 0..=3")
            }
            EnsembleError::InvalidGrid => {
                write!(f, "grid must be non-empty and strictly increasing")
            }
            EnsembleError::Hermite(e) => write!(f, "{e}"),
            EnsembleError::Airy(e) => write!(f, "{e}"),
            EnsembleError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EnsembleError {}

impl From<HermiteError> for EnsembleError {
    fn from(e: HermiteError) -> Self {
        EnsembleError::Hermite(e)
    }
}
impl From<AiryError> for EnsembleError {
    fn from(e: AiryError) -> Self {
        EnsembleError::Airy(e)
    }
}
impl From<QuadError> for EnsembleError {
    fn from(e: QuadError) -> Self {
        EnsembleError::Quadrature(e)
    }
}

impl EnsembleSpec {
    pub fn new(beta: f64, n: usize, convention: Convention) -> Result<Self, EnsembleError> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(EnsembleError::InvalidBeta { beta });
        }
        if n == 0 || n > MAX_DEGREE {
            return Err(EnsembleError::InvalidSize { n });
        }
        Ok(EnsembleSpec {
            beta,
            n,
            convention,
        })
    }

    /// Effective size N′ = N + (β−2)/(2β) entering the soft-edge map.
    pub fn nprime(&self) -> f64 {
        self.n as f64 + (self.beta - 2.0) / (2.0 * self.beta)
    }
}

/// A concrete coordinate transform attached to an ensemble.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScalingMap {
    pub kind: ScalingKind,
    pub convention: Convention,
    pub n: usize,
    /// Effective size used by the soft-edge map.
    pub nprime: f64,
}

impl ScalingMap {
    /// Raw coordinate (in `self.convention`) for a scaled coordinate.
    pub fn to_raw(&self, xi: f64) -> f64 {
        let np = self.nprime;
        match (self.kind, self.convention) {
            (ScalingKind::Raw, _) => xi,
            (ScalingKind::Global, Convention::HermiteWeight) => {
                (2.0 * self.n as f64).sqrt() * xi
            }
            (ScalingKind::Global, Convention::BetaCanonical) => (self.n as f64).sqrt() * xi,
            (ScalingKind::SoftEdge, Convention::HermiteWeight) => {
                (2.0 * np).sqrt() + xi / (std::f64::consts::SQRT_2 * np.powf(1.0 / 6.0))
            }
            (ScalingKind::SoftEdge, Convention::BetaCanonical) => {
                np.sqrt() + xi / (2.0 * np.powf(1.0 / 6.0))
            }
        }
    }

    /// Inverse of [`ScalingMap::to_raw`].
    pub fn from_raw(&self, x: f64) -> f64 {
        let np = self.nprime;
        match (self.kind, self.convention) {
            (ScalingKind::Raw, _) => x,
            (ScalingKind::Global, Convention::HermiteWeight) => {
                x / (2.0 * self.n as f64).sqrt()
            }
            (ScalingKind::Global, Convention::BetaCanonical) => x / (self.n as f64).sqrt(),
            (ScalingKind::SoftEdge, Convention::HermiteWeight) => {
                (x - (2.0 * np).sqrt()) * std::f64::consts::SQRT_2 * np.powf(1.0 / 6.0)
            }
            (ScalingKind::SoftEdge, Convention::BetaCanonical) => {
                (x - np.sqrt()) * 2.0 * np.powf(1.0 / 6.0)
            }
        }
    }

    /// Jacobian factor turning the raw density into the scaled one:
    /// scaled(ξ) = factor · ρ_raw(to_raw(ξ)).
    pub fn density_factor(&self) -> f64 {
        let np = self.nprime;
        match (self.kind, self.convention) {
            (ScalingKind::Raw, _) => 1.0,
            // Global maps also divide by N so the curve has unit mass.
            (ScalingKind::Global, Convention::HermiteWeight) => {
                (2.0 * self.n as f64).sqrt() / self.n as f64
            }
            (ScalingKind::Global, Convention::BetaCanonical) => {
                (self.n as f64).sqrt() / self.n as f64
            }
            (ScalingKind::SoftEdge, Convention::HermiteWeight) => {
                1.0 / (std::f64::consts::SQRT_2 * np.powf(1.0 / 6.0))
            }
            (ScalingKind::SoftEdge, Convention::BetaCanonical) => {
                1.0 / (2.0 * np.powf(1.0 / 6.0))
            }
        }
    }
}

/// Builds the scaling map of the requested kind for an ensemble.
pub fn scaling_map(spec: &EnsembleSpec, kind: ScalingKind) -> ScalingMap {
    ScalingMap {
        kind,
        convention: spec.convention,
        n: spec.n,
        nprime: spec.nprime(),
    }
}

/// β = 2 density (HermiteWeight convention) and its first three derivatives.
///
/// `order` 0 returns ρ_N(x) = Σ_{j<N}ψ_j(x)² evaluated through the
/// Christoffel–Darboux closed form; orders 1–3 are the analytic derivatives
/// obtained by repeatedly applying the oscillator ladder/ODE relations.
pub fn gue_density_raw(n: usize, x: f64, order: usize) -> Result<f64, EnsembleError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(EnsembleError::InvalidSize { n });
    }
    if !x.is_finite() {
        return Err(EnsembleError::Hermite(HermiteError::NonFinite { x }));
    }
    if order > 3 {
        return Err(EnsembleError::InvalidDerivativeOrder { order });
    }
    let nf = n as f64;
    let c = (2.0 * nf).sqrt();
    let (u, v, k) = psi_pair_scaled(n, x); // u = ψ_{N−1}, v = ψ_N, scale 2^k
    let uu_vv = u * u + v * v;
    let uv = u * v;
    let stored = match order {
        0 => nf * uu_vv - c * x * uv,
        1 => -c * uv,
        2 => -2.0 * nf * (u * u - v * v),
        3 => -4.0 * nf * x * uu_vv + 8.0 * nf * c * uv,
        _ => unreachable!(),
    };
    Ok(ldexp_chunked(stored, 2 * k))
}

/// Christoffel–Darboux kernel K_N(x, y) = Σ_{j<N} ψ_j(x)ψ_j(y), summed
/// directly with shared-exponent sequences so deep-tail arguments stay exact.
pub fn ckd_kernel(n: usize, x: f64, y: f64) -> Result<f64, EnsembleError> {
    if n == 0 || n > MAX_DEGREE {
        return Err(EnsembleError::InvalidSize { n });
    }
    if !x.is_finite() {
        return Err(EnsembleError::Hermite(HermiteError::NonFinite { x }));
    }
    if !y.is_finite() {
        return Err(EnsembleError::Hermite(HermiteError::NonFinite { x: y }));
    }
    let mut sx = PsiSequence::new(x);
    let mut sy = PsiSequence::new(y);
    let mut acc = 0.0f64;
    for _ in 0..n {
        let (ax, kx) = sx.next_scaled();
        let (ay, ky) = sy.next_scaled();
        acc += ldexp_chunked(ax * ay, kx + ky);
    }
    Ok(acc)
}

/// Wigner semicircle on the global coordinate: (2/π)√(1 − X²) inside (−1, 1).
pub fn semicircle(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        0.0
    } else {
        2.0 / std::f64::consts::PI * (1.0 - x * x).sqrt()
    }
}

/// Residual and magnitude scale of the global-coordinate differential
/// identity (1/(4N))²ρ̄‴ − (X²−1)ρ̄′ + Xρ̄ = 0 at one point.
///
/// Returns `(residual, scale)` where `scale` is the largest absolute value of
/// the three constituent terms; the identity is exact, so the residual
/// measures only the floating-point health of the derivative chain.
pub fn global_ode_residual(n: usize, x_global: f64) -> Result<(f64, f64), EnsembleError> {
    let nf = n as f64;
    let root2n = (2.0 * nf).sqrt();
    let x_raw = root2n * x_global;
    // ρ̄⁽ᵏ⁾(X) = (√(2N)/N)·(√(2N))^k·ρ⁽ᵏ⁾(x_raw)
    let rho0 = gue_density_raw(n, x_raw, 0)? * root2n / nf;
    let rho1 = gue_density_raw(n, x_raw, 1)? * root2n / nf * root2n;
    let rho3 = gue_density_raw(n, x_raw, 3)? * root2n / nf * root2n * root2n * root2n;
    let t1 = rho3 / (16.0 * nf * nf);
    let t2 = -(x_global * x_global - 1.0) * rho1;
    let t3 = x_global * rho0;
    let scale = t1.abs().max(t2.abs()).max(t3.abs());
    Ok((t1 + t2 + t3, scale))
}

/// Large-N limit of the soft-edge-scaled density.
///
/// β = 2: r₀(y) = Ai′(y)² − y·Ai(y)².
/// β = 1: r₀(y) + (Ai(y)/2)·(1 − ∫_y^∞ Ai(t) dt).
pub fn soft_edge_limit_density(beta: f64, y: f64) -> Result<f64, EnsembleError> {
    let v = airy_eval(y)?;
    let r0 = v.ai_prime * v.ai_prime - y * v.ai * v.ai;
    if beta == 2.0 {
        Ok(r0)
    } else if beta == 1.0 {
        // ∫_y^∞ Ai: Ai decays superexponentially; 14 beyond max(y,0) suffices
        // for ~1e−13 truncation, far below the quadrature tolerance.
        let hi = y.max(0.0) + 14.0;
        let tail = adaptive_integrate(
            |t| airy_eval(t).map(|a| a.ai).unwrap_or(f64::NAN),
            y,
            hi,
            &QuadratureSpec::default(),
        )?;
        Ok(r0 + 0.5 * v.ai * (1.0 - tail.value))
    } else {
        Err(EnsembleError::UnsupportedBeta {
            beta,
            context: "soft-edge limit curve (available for beta in {1, 2})",
        })
    }
}

/// A density evaluated on a grid in some scaled coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct DensityCurve {
    pub spec: EnsembleSpec,
    pub map: ScalingMap,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityCurve {
    /// Evaluates the β = 2 density under `kind` scaling on `grid` (which must
    /// be non-empty and strictly increasing). Grid points are independent and
    /// evaluated in parallel.
    pub fn evaluate(
        spec: &EnsembleSpec,
        kind: ScalingKind,
        grid: &[f64],
    ) -> Result<DensityCurve, EnsembleError> {
        if spec.beta != 2.0 {
            return Err(EnsembleError::UnsupportedBeta {
                beta: spec.beta,
                context: "analytic density evaluation (requires beta = 2)",
            });
        }
        // Negated comparison so NaN grid points are rejected as unordered.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(EnsembleError::InvalidGrid);
        }
        let map = scaling_map(spec, kind);
        let factor = map.density_factor();
        let values = grid
            .par_iter()
            .map(|&g| {
                let x_raw = map.to_raw(g);
                let x_h = match spec.convention {
                    Convention::HermiteWeight => x_raw,
                    Convention::BetaCanonical => std::f64::consts::SQRT_2 * x_raw,
                };
                let rho_h = gue_density_raw(spec.n, x_h, 0)?;
                let rho_conv = match spec.convention {
                    Convention::HermiteWeight => rho_h,
                    // ρ_c(x_c) = √2·ρ_h(√2·x_c) keeps mass N per unit x_c.
                    Convention::BetaCanonical => std::f64::consts::SQRT_2 * rho_h,
                };
                Ok(factor * rho_conv)
            })
            .collect::<Result<Vec<f64>, EnsembleError>>()?;
        Ok(DensityCurve {
            spec: *spec,
            map,
            grid: grid.to_vec(),
            values,
        })
    }

    /// Writes `abscissa,value` CSV rows (with header).
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "abscissa,value")?;
        for (g, v) in self.grid.iter().zip(&self.values) {
            writeln!(w, "{g},{v}")?;
        }
        Ok(())
    }

    /// Structured JSON form (spec, map, grid, values).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "scaling": self.map,
            "grid": self.grid,
            "values": self.values,
        })
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference values keep full digits
mod tests {
    use super::*;

    #[test]
    fn single_matrix_density_is_gaussian() {
        // N = 1: ρ₁(x) = ψ₀(x)² = e^{−x²}/√π.
        let sqrt_pi = 1.7724538509055160273;
        for &x in &[0.0, 0.8, -1.7, 3.0] {
            let got = gue_density_raw(1, x, 0).unwrap();
            let want = (-x * x).exp() / sqrt_pi;
            assert!((got - want).abs() < 1e-15 * want.max(1e-300));
        }
    }

    #[test]
    fn density_integrates_to_matrix_size() {
        for &n in &[1usize, 2, 7, 33] {
            let r = adaptive_integrate(
                |x| gue_density_raw(n, x, 0).unwrap_or(f64::NAN),
                f64::NEG_INFINITY,
                f64::INFINITY,
                &QuadratureSpec::default(),
            )
            .unwrap();
            assert!(
                (r.value - n as f64).abs() < 1e-10 * n as f64,
                "mass for N={n}: {}",
                r.value
            );
        }
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let n = 10;
        for &x in &[0.3, 1.9, -3.4, 4.4] {
            let h = 1e-3;
            let rho = |d: f64| gue_density_raw(n, x + d, 0).unwrap();
            let d1 = (-rho(2.0 * h) + 8.0 * rho(h) - 8.0 * rho(-h) + rho(-2.0 * h)) / (12.0 * h);
            let d2 = (-rho(2.0 * h) + 16.0 * rho(h) - 30.0 * rho(0.0) + 16.0 * rho(-h)
                - rho(-2.0 * h))
                / (12.0 * h * h);
            let a1 = gue_density_raw(n, x, 1).unwrap();
            let a2 = gue_density_raw(n, x, 2).unwrap();
            assert!((a1 - d1).abs() < 1e-7 * (1.0 + a1.abs()), "rho' at {x}");
            assert!((a2 - d2).abs() < 1e-5 * (1.0 + a2.abs()), "rho'' at {x}");

            // Third derivative: stencil applied to the analytic first derivative.
            let rp = |d: f64| gue_density_raw(n, x + d, 1).unwrap();
            let d3 =
                (-rp(2.0 * h) + 16.0 * rp(h) - 30.0 * rp(0.0) + 16.0 * rp(-h) - rp(-2.0 * h))
                    / (12.0 * h * h);
            let a3 = gue_density_raw(n, x, 3).unwrap();
            assert!((a3 - d3).abs() < 1e-4 * (1.0 + a3.abs()), "rho''' at {x}");
        }
    }

    #[test]
    fn kernel_diagonal_equals_density() {
        // Independent computational paths: direct ψ-square sum vs the
        // Christoffel–Darboux closed form.
        for &(n, x) in &[(30usize, 0.0), (30, 2.5), (30, -6.1), (200, 14.0)] {
            let diag = ckd_kernel(n, x, x).unwrap();
            let dens = gue_density_raw(n, x, 0).unwrap();
            assert!(
                (diag - dens).abs() <= 1e-11 * dens.abs().max(1e-12),
                "n={n} x={x}: {diag} vs {dens}"
            );
        }
    }

    #[test]
    fn kernel_reproduces_itself_under_integration() {
        // ∫ K(x, t) K(t, z) dt = K(x, z) — the projection property.
        let n = 6;
        let (x, z) = (0.4, -0.9);
        let want = ckd_kernel(n, x, z).unwrap();
        let r = adaptive_integrate(
            |t| ckd_kernel(n, x, t).unwrap() * ckd_kernel(n, t, z).unwrap(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - want).abs() < 1e-10, "{} vs {want}", r.value);
    }

    #[test]
    fn scaling_maps_round_trip_and_scale_mass() {
        let spec = EnsembleSpec::new(2.0, 40, Convention::HermiteWeight).unwrap();
        for kind in [ScalingKind::Raw, ScalingKind::Global, ScalingKind::SoftEdge] {
            let map = scaling_map(&spec, kind);
            for &xi in &[-1.5, -0.2, 0.0, 0.7, 2.0] {
                let back = map.from_raw(map.to_raw(xi));
                assert!((back - xi).abs() < 1e-12, "{kind:?} round trip at {xi}");
            }
        }

        // Unit mass under the global map.
        let map = scaling_map(&spec, ScalingKind::Global);
        let r = adaptive_integrate(
            |g| map.density_factor() * gue_density_raw(spec.n, map.to_raw(g), 0).unwrap(),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-10);

        // Both conventions place the same physical point: at β = 2 the
        // canonical soft-edge map must equal the Hermite one divided by √2.
        let spec_c = EnsembleSpec::new(2.0, 40, Convention::BetaCanonical).unwrap();
        let mh = scaling_map(&spec, ScalingKind::SoftEdge);
        let mc = scaling_map(&spec_c, ScalingKind::SoftEdge);
        for &y in &[-2.0, 0.0, 1.0] {
            let xh = mh.to_raw(y);
            let xc = mc.to_raw(y);
            assert!((xc - xh / std::f64::consts::SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn global_density_approaches_semicircle() {
        let spec = EnsembleSpec::new(2.0, 200, Convention::HermiteWeight).unwrap();
        let grid: Vec<f64> = (0..33).map(|i| -0.8 + 0.05 * i as f64).collect();
        let curve = DensityCurve::evaluate(&spec, ScalingKind::Global, &grid).unwrap();
        for (g, v) in curve.grid.iter().zip(&curve.values) {
            let sc = semicircle(*g);
            assert!(
                (v - sc).abs() < 0.02,
                "global density at {g}: {v} vs semicircle {sc}"
            );
        }
    }

    #[test]
    fn global_ode_identity_holds_to_roundoff() {
        for &n in &[5usize, 20, 50] {
            for i in 0..21 {
                let x = -2.0 + 0.2 * i as f64;
                let (res, scale) = global_ode_residual(n, x).unwrap();
                if scale > 0.0 {
                    assert!(
                        res.abs() < 1e-9 * scale,
                        "residual {res:e} vs scale {scale:e} at n={n}, X={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn soft_edge_limits_match_frozen_values() {
        // β = 2 at y = 0: Ai′(0)².
        let b2 = soft_edge_limit_density(2.0, 0.0).unwrap();
        assert!((b2 - 0.06698748377966397414368454190464603982164).abs() < 1e-14);
        // β = 1 at y = 0: Ai′(0)² + (Ai(0)/2)(1 − 1/3).
        let b1 = soft_edge_limit_density(1.0, 0.0).unwrap();
        let want = 0.185330168408936387230372270572707098621;
        assert!((b1 - want).abs() < 1e-10, "{b1} vs {want}");
        // β = 1 at y = −2 with the frozen Airy tail ∫_{−2}^∞ Ai = 1.235106…
        let v = airy_eval(-2.0).unwrap();
        let r0 = v.ai_prime * v.ai_prime + 2.0 * v.ai * v.ai;
        let want = r0 + 0.5 * v.ai * (1.0 - 1.235106159371939711160074);
        let got = soft_edge_limit_density(1.0, -2.0).unwrap();
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        assert!(soft_edge_limit_density(4.0, 0.0).is_err());
    }

    #[test]
    fn soft_edge_density_converges_to_limit() {
        let spec = EnsembleSpec::new(2.0, 100, Convention::HermiteWeight).unwrap();
        let grid = [-3.0, -1.5, 0.0, 1.0];
        let curve = DensityCurve::evaluate(&spec, ScalingKind::SoftEdge, &grid).unwrap();
        let bound = 5.0 * (spec.n as f64).powf(-2.0 / 3.0);
        for (y, v) in curve.grid.iter().zip(&curve.values) {
            let lim = soft_edge_limit_density(2.0, *y).unwrap();
            assert!(
                (v - lim).abs() < bound,
                "soft edge at y={y}: {v} vs limit {lim}"
            );
        }
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(EnsembleSpec::new(0.0, 5, Convention::HermiteWeight).is_err());
        assert!(EnsembleSpec::new(-1.0, 5, Convention::HermiteWeight).is_err());
        assert!(EnsembleSpec::new(2.0, 0, Convention::HermiteWeight).is_err());
        assert!(gue_density_raw(5, 0.0, 4).is_err());
        assert!(gue_density_raw(0, 0.0, 0).is_err());
        let spec = EnsembleSpec::new(1.0, 5, Convention::HermiteWeight).unwrap();
        assert!(DensityCurve::evaluate(&spec, ScalingKind::Raw, &[0.0, 1.0]).is_err());
        let spec2 = EnsembleSpec::new(2.0, 5, Convention::HermiteWeight).unwrap();
        assert!(DensityCurve::evaluate(&spec2, ScalingKind::Raw, &[1.0, 0.0]).is_err());
        assert!(DensityCurve::evaluate(&spec2, ScalingKind::Raw, &[]).is_err());
    }
}
