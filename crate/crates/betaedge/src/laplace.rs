//! Laplace transforms of the edge-expansion terms and their recursion.
//!
//! For a quadratic Airy combination r_j the transform is
//!
//! ```text
//! u_j(γ) = ∫ e^{γy} r_j(y) dy    over y ∈ (−∞, ∞),   γ > 0,
//! ```
//!
//! convergent because Ai decays superexponentially as y → +∞ while the
//! oscillatory y → −∞ tail has only an algebraic envelope that e^{γy} kills.
//! The leading transform has the closed form
//!
//! ```text
//! u₀(γ) = e^{γ³/12} / (2√π · γ^{3/2}),
//! ```
//!
//! which solves 4γu′ + (6 − γ³)u = 0, and the higher orders obey the
//! first-order recursion
//!
//! ```text
//! 4γ u_j′ + (6 − γ³) u_j + γ u_{j−1}″ + 3 u_{j−1}′ = 0       (u_{−1} := 0),
//! ```
//!
//! whose first instance integrates to
//!
//! ```text
//! u₁(γ) = u₀(γ) · ( −γ⁵/320 − γ²/16 − 3/(16γ) ).
//! ```
//!
//! Derivatives u′ and u″ are never finite-differenced; they are computed as
//! y-weighted transforms (differentiation under the integral sign), so the
//! residual of the recursion is a pure quadrature-accuracy statement.

use crate::airy::AiryError;
use crate::combo::AiryCombo;
use crate::quad::{adaptive_integrate, QuadError, QuadratureSpec};
use crate::ratpoly::RationalPoly;
use crate::solver::ExpansionSeries;
use std::f64::consts::PI;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum LaplaceError {
    /// The transform converges only for γ > 0.
    InvalidGamma { gamma: f64 },
    /// y-weights beyond y² are not needed and not supported.
    InvalidWeight { weight: u32 },
    /// No truncation point met the tail tolerance before the hard cap.
    TruncationFailure { gamma: f64 },
    /// The series does not contain the orders the residual needs.
    MissingOrder { j: usize },
    Quadrature(QuadError),
    Airy(AiryError),
}

impl fmt::Display for LaplaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaplaceError::InvalidGamma { gamma } => {
                write!(f, "gamma must be positive for convergence, got {gamma}")
            }
            LaplaceError::InvalidWeight { weight } => {
                write!(f, "moment weight must be 0, 1, or 2, got {weight}")
            }
            LaplaceError::TruncationFailure { gamma } => {
                write!(f, "could not truncate the transform tail at gamma = {gamma}")
            }
            LaplaceError::MissingOrder { j } => {
                write!(f, "expansion series lacks order {j}")
            }
            LaplaceError::Quadrature(e) => write!(f, "quadrature failure: {e}"),
            LaplaceError::Airy(e) => write!(f, "Airy evaluation failure: {e}"),
        }
    }
}

impl std::error::Error for LaplaceError {}

impl From<QuadError> for LaplaceError {
    fn from(e: QuadError) -> Self {
        LaplaceError::Quadrature(e)
    }
}

impl From<AiryError> for LaplaceError {
    fn from(e: AiryError) -> Self {
        LaplaceError::Airy(e)
    }
}

/// How a tabulated transform value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplaceMethod {
    ClosedForm,
    Quadrature,
}

/// One tabulated transform value u_j(γ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceValue {
    pub gamma: f64,
    pub order: usize,
    pub value: f64,
    pub method: LaplaceMethod,
}

fn require_gamma(gamma: f64) -> Result<(), LaplaceError> {
    // Negated comparison so NaN is rejected along with non-positive values.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(LaplaceError::InvalidGamma { gamma });
    }
    Ok(())
}

/// Closed form u₀(γ) = e^{γ³/12} / (2√π γ^{3/2}).
pub fn u0_closed(gamma: f64) -> Result<f64, LaplaceError> {
    require_gamma(gamma)?;
    Ok((gamma.powi(3) / 12.0).exp() / (2.0 * PI.sqrt() * gamma.powf(1.5)))
}

/// u₀ together with its first two analytic derivatives:
/// u₀′ = u₀·(γ³−6)/(4γ), u₀″ = u₀·(γ⁴/16 − γ/4 + 15/(4γ²)).
pub fn u0_closed_derivatives(gamma: f64) -> Result<(f64, f64, f64), LaplaceError> {
    let u0 = u0_closed(gamma)?;
    let d1 = u0 * (gamma.powi(3) - 6.0) / (4.0 * gamma);
    let d2 = u0 * (gamma.powi(4) / 16.0 - gamma / 4.0 + 15.0 / (4.0 * gamma * gamma));
    Ok((u0, d1, d2))
}

/// Closed form for the first correction transform,
/// u₁(γ) = u₀(γ)·(−γ⁵/320 − γ²/16 − 3/(16γ)).
pub fn u1_closed(gamma: f64) -> Result<f64, LaplaceError> {
    let u0 = u0_closed(gamma)?;
    Ok(u0 * (-gamma.powi(5) / 320.0 - gamma * gamma / 16.0 - 3.0 / (16.0 * gamma)))
}

/// Pointwise bound Σ_i |c_i| |y|^i on a polynomial's magnitude.
fn poly_abs_bound(p: &RationalPoly, y_abs: f64) -> f64 {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let num = c.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let den = c.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            (num / den).abs() * y_abs.powi(i as i32)
        })
        .sum()
}

/// Envelope bound on |p·Ai² + q·Ai′² + s·Ai·Ai′| at y = −t, t ≥ 0, using
/// |Ai(−t)| ≤ 0.7(1+t)^{−1/4} and |Ai′(−t)| ≤ 0.8(1+t)^{1/4}.
fn combo_envelope(c: &AiryCombo, t: f64) -> f64 {
    let ai = 0.7 * (1.0 + t).powf(-0.25);
    let aip = 0.8 * (1.0 + t).powf(0.25);
    poly_abs_bound(&c.p, t) * ai * ai
        + poly_abs_bound(&c.q, t) * aip * aip
        + poly_abs_bound(&c.s, t) * ai * aip
}

const TAIL_CAP: f64 = 4000.0;

/// ∫ y^k e^{γy} (p·Ai² + q·Ai′² + s·Ai·Ai′)(y) dy over the whole line,
/// with explicit truncation of both tails; absolute accuracy ~1e−8.
pub fn laplace_numeric(
    c: &AiryCombo,
    gamma: f64,
    moment_weight: u32,
) -> Result<f64, LaplaceError> {
    require_gamma(gamma)?;
    if moment_weight > 2 {
        return Err(LaplaceError::InvalidWeight {
            weight: moment_weight,
        });
    }
    if c.is_zero() {
        return Ok(0.0);
    }
    let tol = 1e-9;
    let threshold = tol / 100.0;

    // Lower truncation: the undone tail is below
    // envelope(t)·t^k·e^{−γt}/γ, and that bound is decreasing once γt > k.
    let mut y_lo = -8.0f64;
    loop {
        let t = -y_lo;
        let bound = combo_envelope(c, t) * t.powi(moment_weight as i32) * (gamma * y_lo).exp()
            / gamma;
        if bound < threshold && gamma * t > moment_weight as f64 {
            break;
        }
        y_lo -= 4.0;
        if y_lo < -TAIL_CAP {
            return Err(LaplaceError::TruncationFailure { gamma });
        }
    }

    // Upper truncation: probe the actual integrand; Ai² decay beats e^{γy}
    // well before the Bi-overflow limit for any moderate γ.
    let mut y_hi = 8.0f64;
    loop {
        let val = crate::combo::eval_combo(c, y_hi)?;
        let estimate = val.abs() * y_hi.powi(moment_weight as i32) * (gamma * y_hi).exp();
        if estimate < threshold {
            break;
        }
        y_hi += 4.0;
        if y_hi > 100.0 {
            return Err(LaplaceError::TruncationFailure { gamma });
        }
    }

    let spec = QuadratureSpec {
        abs_tol: tol,
        rel_tol: 1e-10,
        max_panels: 4000,
    };
    let result = adaptive_integrate(
        |y: f64| {
            let val = crate::combo::eval_combo(c, y).unwrap_or(f64::NAN);
            y.powi(moment_weight as i32) * (gamma * y).exp() * val
        },
        y_lo,
        y_hi,
        &spec,
    )?;
    Ok(result.value)
}

/// Residual diagnostics for the transform recursion at one (j, γ) point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecursionCheck {
    pub j: usize,
    pub gamma: f64,
    /// u_j(γ) by quadrature.
    pub u: f64,
    /// u_j′(γ) by y-weighted quadrature.
    pub u_prime: f64,
    /// 4γu_j′ + (6−γ³)u_j + γu_{j−1}″ + 3u_{j−1}′ (zero in exact arithmetic).
    pub residual: f64,
    /// Largest participating term magnitude, for relative comparison.
    pub scale: f64,
}

/// Evaluates the recursion residual at order j from quadrature transforms of
/// the series terms; `j = 0` checks the homogeneous equation alone.
pub fn recursion_residual(
    j: usize,
    gamma: f64,
    series: &ExpansionSeries,
) -> Result<RecursionCheck, LaplaceError> {
    require_gamma(gamma)?;
    let Some(r_j) = series.term(j) else {
        return Err(LaplaceError::MissingOrder { j });
    };
    let u = laplace_numeric(r_j, gamma, 0)?;
    let u_prime = laplace_numeric(r_j, gamma, 1)?;
    let t1 = 4.0 * gamma * u_prime;
    let t2 = (6.0 - gamma.powi(3)) * u;
    let (t3, t4) = if j == 0 {
        (0.0, 0.0)
    } else {
        let r_prev = series.term(j - 1).expect("order j-1 below a present order j");
        let prev_d1 = laplace_numeric(r_prev, gamma, 1)?;
        let prev_d2 = laplace_numeric(r_prev, gamma, 2)?;
        (gamma * prev_d2, 3.0 * prev_d1)
    };
    let residual = t1 + t2 + t3 + t4;
    let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(t4.abs());
    Ok(RecursionCheck {
        j,
        gamma,
        u,
        u_prime,
        residual,
        scale,
    })
}

/// CSV table of recursion checks: `j,gamma,u,u_prime,residual`.
pub fn recursion_table_csv(checks: &[RecursionCheck]) -> String {
    let mut out = String::from("j,gamma,u,u_prime,residual\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.j, c.gamma, c.u, c.u_prime, c.residual
        ));
    }
    out
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference values keep full digits
mod tests {
    use super::*;
    use crate::airy::airy_eval;

    // Thirty-digit reference values computed with arbitrary-precision
    // arithmetic from the closed forms, frozen here.
    const U0_REF: [(f64, f64, f64, f64); 3] = [
        (
            0.5,
            0.806239297016905094883044145192,
            -2.3683279349871587162189421765,
            11.9959589153804355719121685509,
        ),
        (
            1.0,
            0.30660997152787600138148213473,
            -0.383262464409845001726852668413,
            1.09229802356805825492153010498,
        ),
        (
            2.0,
            0.194258364988462520730973906962,
            0.0485645912471156301827434767404,
            0.279246399670914873550774991257,
        ),
    ];

    const U1_REF: [(f64, f64); 3] = [
        (0.5, -0.315015959703577859826861291496),
        (1.0, -0.0776106490429936128496876653536),
        (2.0, -0.0862021494636302435743696712142),
    ];

    #[test]
    fn closed_forms_match_frozen_references() {
        for &(g, u0, d1, d2) in &U0_REF {
            let (cu0, cd1, cd2) = u0_closed_derivatives(g).unwrap();
            assert!((cu0 - u0).abs() < 1e-15 * u0.abs(), "u0({g})");
            assert!((cd1 - d1).abs() < 1e-14 * d1.abs(), "u0'({g})");
            assert!((cd2 - d2).abs() < 1e-14 * d2.abs(), "u0''({g})");
            // The homogeneous equation with analytic derivatives.
            let hom = 4.0 * g * cd1 + (6.0 - g.powi(3)) * cu0;
            assert!(hom.abs() < 1e-12 * cu0.abs(), "hom({g}) = {hom}");
        }
        for &(g, u1) in &U1_REF {
            let c = u1_closed(g).unwrap();
            assert!((c - u1).abs() < 1e-14 * u1.abs(), "u1({g}) = {c}");
        }
    }

    #[test]
    fn transform_of_leading_term_matches_closed_form() {
        let r0 = AiryCombo::r0();
        for &(g, u0, _, _) in &U0_REF {
            let num = laplace_numeric(&r0, g, 0).unwrap();
            assert!(
                (num - u0).abs() < 1e-8 * u0.abs(),
                "gamma {g}: {num} vs {u0}"
            );
            assert!(num > 0.0);
        }
    }

    #[test]
    fn transform_of_first_correction_matches_closed_form() {
        let mut series = ExpansionSeries::new();
        series.extend_to(1).unwrap();
        for &(g, u1) in &U1_REF {
            let num = laplace_numeric(series.term(1).unwrap(), g, 0).unwrap();
            assert!(
                (num - u1).abs() < 1e-7 * u1.abs(),
                "gamma {g}: {num} vs {u1}"
            );
        }
    }

    #[test]
    fn zero_combo_transforms_to_zero() {
        assert_eq!(laplace_numeric(&AiryCombo::zero(), 1.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn weighted_transform_is_the_derivative_in_gamma() {
        let r0 = AiryCombo::r0();
        let g = 1.25f64;
        let d_exact = laplace_numeric(&r0, g, 1).unwrap();
        let mut errs = Vec::new();
        for &h in &[1e-3, 1e-4] {
            let hi = laplace_numeric(&r0, g + h, 0).unwrap();
            let lo = laplace_numeric(&r0, g - h, 0).unwrap();
            errs.push(((hi - lo) / (2.0 * h) - d_exact).abs());
        }
        // O(h²) central differences: shrinking h tenfold cuts the error
        // about a hundredfold.
        let ratio = errs[0] / errs[1];
        assert!(
            (30.0..300.0).contains(&ratio),
            "Richardson ratio {ratio}, errors {errs:?}"
        );
    }

    #[test]
    fn oscillatory_envelopes_hold_on_the_negative_axis() {
        let mut t = 0.0f64;
        while t <= 40.0 {
            let v = airy_eval(-t).unwrap();
            let ai_bound = 0.7 * (1.0 + t).powf(-0.25);
            let aip_bound = 0.8 * (1.0 + t).powf(0.25);
            assert!(v.ai.abs() <= ai_bound, "Ai envelope fails at -{t}");
            assert!(v.ai_prime.abs() <= aip_bound, "Ai' envelope fails at -{t}");
            t += 0.173;
        }
    }

    #[test]
    fn recursion_residuals_vanish_along_the_series() {
        let mut series = ExpansionSeries::new();
        series.extend_to(2).unwrap();
        let base = recursion_residual(0, 1.0, &series).unwrap();
        assert!(
            base.residual.abs() < 1e-8 * base.scale,
            "j=0: {} vs scale {}",
            base.residual,
            base.scale
        );
        for &g in &[1.0f64, 2.0] {
            for j in 1..=2usize {
                let check = recursion_residual(j, g, &series).unwrap();
                assert!(
                    check.residual.abs() < 1e-5 * check.scale,
                    "j={j}, gamma={g}: residual {} vs scale {}",
                    check.residual,
                    check.scale
                );
            }
        }
    }

    #[test]
    fn csv_table_lists_requested_columns() {
        let mut series = ExpansionSeries::new();
        series.extend_to(1).unwrap();
        let checks = vec![recursion_residual(1, 1.0, &series).unwrap()];
        let csv = recursion_table_csv(&checks);
        assert!(csv.starts_with("j,gamma,u,u_prime,residual\n"));
        assert!(csv.lines().count() == 2);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            u0_closed(0.0),
            Err(LaplaceError::InvalidGamma { .. })
        ));
        assert!(matches!(
            u0_closed(-1.0),
            Err(LaplaceError::InvalidGamma { .. })
        ));
        assert!(matches!(
            laplace_numeric(&AiryCombo::r0(), 1.0, 3),
            Err(LaplaceError::InvalidWeight { .. })
        ));
        let series = ExpansionSeries::new();
        assert!(matches!(
            recursion_residual(1, 1.0, &series),
            Err(LaplaceError::MissingOrder { .. })
        ));
    }
}
