//! Spectral moments of the β-ensemble in the moment coordinate.
//!
//! Moments are taken of X = λ/√(βN) (canonical eigenvalue λ divided by
//! √(βN)), in which the limiting support is (−√2, √2) and
//!
//! ```text
//! m_{2k} = (1/N) E[ Σ_i X_i^{2k} ]  →  C_k / 2^k    (C_k the k-th Catalan number).
//! ```
//!
//! Closed forms are available for the first two even moments at every β > 0
//! and finite N:
//!
//! ```text
//! m₂ = [ 1 + (1/N)(−1 + 2/β) ] / 2
//! m₄ = [ 2 + (5/N)(−1 + 2/β) + (1/N²)(3 − 10/β + 12/β²) ] / 4
//! ```
//!
//! Both satisfy the β ↔ 4/β duality: substituting β → 4/β and (formally)
//! N → −βN/2 leaves them invariant, which [`duality_check`] verifies as an
//! exact rational identity. At β = 2 the 1/N expansion of m_{2k} is even in
//! 1/N; [`fit_inverse_power_coefficients`] exposes this by fitting quadrature
//! values of m_{2k}(N) against powers N^{−j} and reporting the coefficients
//! (odd ones vanish up to quadrature noise).
//!
//! For β = 2 the analytic density makes direct quadrature possible
//! ([`moment_quadrature`]): with ρ the unit-weight density of the
//! HermiteWeight convention (total mass N),
//!
//! ```text
//! m_{2k} = ∫ X^{2k} · (√N/N) ρ(√N · X) dX.
//! ```

use crate::ensembles::{gue_density_raw, EnsembleError};
use crate::quad::{adaptive_integrate, QuadError, QuadratureSpec};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum MomentError {
    /// Closed forms exist only for k ∈ {1, 2}.
    UnsupportedOrder { k: usize },
    /// β must be a positive rational.
    InvalidBeta,
    /// N must be a positive integer (and ≤ 200 for quadrature).
    InvalidSize { n: usize },
    /// Quadrature supports k ≤ 8 only.
    QuadratureOrder { k: usize },
    Quadrature(QuadError),
    Ensemble(EnsembleError),
    /// The inverse-power fit needs more sample sizes than unknowns.
    DegenerateFit,
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::UnsupportedOrder { k } => {
                write!(f, "no closed form for moment order 2k with k = {k} (need k in {{1,2}})")
            }
            MomentError::InvalidBeta => write!(f, "beta must be positive"),
            MomentError::InvalidSize { n } => write!(f, "invalid matrix size n = {n}"),
            MomentError::QuadratureOrder { k } => {
                write!(f, "moment quadrature supports k <= 8, got {k}")
            }
            MomentError::Quadrature(e) => write!(f, "quadrature failure: {e}"),
            MomentError::Ensemble(e) => write!(f, "density evaluation failure: {e}"),
            MomentError::DegenerateFit => {
                write!(f, "inverse-power fit is underdetermined for the given sizes")
            }
        }
    }
}

impl std::error::Error for MomentError {}

impl From<QuadError> for MomentError {
    fn from(e: QuadError) -> Self {
        MomentError::Quadrature(e)
    }
}

impl From<EnsembleError> for MomentError {
    fn from(e: EnsembleError) -> Self {
        MomentError::Ensemble(e)
    }
}

/// How a tabulated moment value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentSource {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl MomentSource {
    pub fn label(self) -> &'static str {
        match self {
            MomentSource::ClosedForm => "closed_form",
            MomentSource::Quadrature => "quadrature",
            MomentSource::MonteCarlo => "monte_carlo",
        }
    }
}

/// A single tabulated moment, exact when it came from a closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentValue {
    pub k: usize,
    pub beta: f64,
    pub n: usize,
    pub value: MomentNumber,
    pub source: MomentSource,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MomentNumber {
    Exact(BigRational),
    Approx(f64),
}

impl MomentValue {
    pub fn value_f64(&self) -> f64 {
        match &self.value {
            MomentNumber::Exact(r) => rational_to_f64(r),
            MomentNumber::Approx(v) => *v,
        }
    }

    fn value_field(&self) -> String {
        match &self.value {
            MomentNumber::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
            MomentNumber::Approx(v) => format!("{v}"),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Adequate for the table-sized rationals produced here.
    let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The k ∈ {1, 2} closed forms with β and N as formal rationals; N may be
/// negative here, which is what the duality substitution requires.
fn closed_form_formal(
    k: usize,
    beta: &BigRational,
    n: &BigRational,
) -> Result<BigRational, MomentError> {
    if beta.is_zero() || n.is_zero() {
        return Err(MomentError::InvalidBeta);
    }
    let inv_n = n.recip();
    let two_over_beta = ratio(2, 1) / beta;
    let lin = &two_over_beta - BigRational::one(); // (−1 + 2/β)
    match k {
        1 => Ok((BigRational::one() + &inv_n * &lin) / ratio(2, 1)),
        2 => {
            let inv_n2 = &inv_n * &inv_n;
            let quad = ratio(3, 1) - ratio(10, 1) / beta
                + ratio(12, 1) / (beta * beta);
            Ok((ratio(2, 1) + ratio(5, 1) * &inv_n * &lin + inv_n2 * quad) / ratio(4, 1))
        }
        _ => Err(MomentError::UnsupportedOrder { k }),
    }
}

/// Exact m_{2k}(β, N) for k ∈ {1, 2}, any rational β > 0, integer N ≥ 1.
pub fn moment_closed_form(
    k: usize,
    beta: &BigRational,
    n: usize,
) -> Result<BigRational, MomentError> {
    if !beta.is_positive() {
        return Err(MomentError::InvalidBeta);
    }
    if n == 0 {
        return Err(MomentError::InvalidSize { n });
    }
    closed_form_formal(k, beta, &BigRational::from_integer(BigInt::from(n)))
}

/// m_{2k}(β = 2, N) by adaptive quadrature of the analytic density
/// (absolute accuracy better than 1e−10 for k ≤ 8, N ≤ 200).
pub fn moment_quadrature(k: usize, n: usize) -> Result<f64, MomentError> {
    if k == 0 || k > 8 {
        return Err(MomentError::QuadratureOrder { k });
    }
    if n == 0 || n > 200 {
        return Err(MomentError::InvalidSize { n });
    }
    let sqrt_n = (n as f64).sqrt();
    let scale = sqrt_n / n as f64;
    let spec = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_panels: 4000,
    };
    let result = adaptive_integrate(
        |x: f64| {
            let rho = gue_density_raw(n, sqrt_n * x, 0).unwrap_or(f64::NAN);
            x.powi(2 * k as i32) * scale * rho
        },
        f64::NEG_INFINITY,
        f64::INFINITY,
        &spec,
    )?;
    Ok(result.value)
}

/// Verifies m_{2k}(β, N) = m_{2k}(4/β, −βN/2) as an exact rational identity.
pub fn duality_check(k: usize, beta: &BigRational, n: usize) -> Result<bool, MomentError> {
    if !beta.is_positive() {
        return Err(MomentError::InvalidBeta);
    }
    if n == 0 {
        return Err(MomentError::InvalidSize { n });
    }
    let n_rat = BigRational::from_integer(BigInt::from(n));
    let lhs = closed_form_formal(k, beta, &n_rat)?;
    let dual_beta = ratio(4, 1) / beta;
    let dual_n = -(beta * &n_rat) / ratio(2, 1);
    let rhs = closed_form_formal(k, &dual_beta, &dual_n)?;
    Ok(lhs == rhs)
}

/// Fits β = 2 quadrature values of m_{2k}(N) over `n_list` by the expansion
/// Σ_j a_j N^{−j}, j = 0..2k, and returns the coefficients a_j. Evenness of
/// the β = 2 expansion means the odd-j coefficients are zero up to noise.
pub fn fit_inverse_power_coefficients(
    k: usize,
    n_list: &[usize],
) -> Result<Vec<f64>, MomentError> {
    let n_coeffs = 2 * k + 1;
    if n_list.len() < n_coeffs {
        return Err(MomentError::DegenerateFit);
    }
    let mut design = Vec::with_capacity(n_list.len());
    let mut targets = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let t = 1.0 / n as f64;
        let row: Vec<f64> = (0..n_coeffs).map(|j| t.powi(j as i32)).collect();
        design.push(row);
        targets.push(moment_quadrature(k, n)?);
    }
    least_squares(design, targets).ok_or(MomentError::DegenerateFit)
}

/// Least squares by modified Gram–Schmidt QR; small dense systems only.
// The column index drives a split borrow of Q and addresses R on both sides
// of its diagonal, so an enumerated iterator cannot replace it.
#[allow(clippy::needless_range_loop)]
fn least_squares(a: Vec<Vec<f64>>, b: Vec<f64>) -> Option<Vec<f64>> {
    let rows = a.len();
    let cols = a[0].len();
    if rows < cols {
        return None;
    }
    // Column-major copies for orthogonalization.
    let mut q: Vec<Vec<f64>> = (0..cols).map(|c| (0..rows).map(|r| a[r][c]).collect()).collect();
    let mut r = vec![vec![0.0f64; cols]; cols];
    for j in 0..cols {
        let (done, rest) = q.split_at_mut(j);
        let qj = &mut rest[0];
        for (i, qi) in done.iter().enumerate() {
            let dot: f64 = qi.iter().zip(qj.iter()).map(|(u, v)| u * v).sum();
            r[i][j] += dot;
            for (v, u) in qj.iter_mut().zip(qi) {
                *v -= dot * u;
            }
            // One reorthogonalization pass keeps Q orthogonal enough for the
            // graded Vandermonde columns used here.
            let dot2: f64 = qi.iter().zip(qj.iter()).map(|(u, v)| u * v).sum();
            r[i][j] += dot2;
            for (v, u) in qj.iter_mut().zip(qi) {
                *v -= dot2 * u;
            }
        }
        let norm: f64 = qj.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        r[j][j] = norm;
        for v in qj.iter_mut() {
            *v /= norm;
        }
    }
    // x solves R x = Qᵀ b.
    let mut rhs: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|t| q[j][t] * b[t]).sum())
        .collect();
    for j in (0..cols).rev() {
        for i in j + 1..cols {
            rhs[j] -= r[j][i] * rhs[i];
        }
        rhs[j] /= r[j][j];
    }
    Some(rhs)
}

/// CSV table of moment values: `k,beta,n,value,source`.
pub fn moments_to_csv(values: &[MomentValue]) -> String {
    let mut out = String::from("k,beta,n,value,source\n");
    for v in values {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            v.k,
            v.beta,
            v.n,
            v.value_field(),
            v.source.label()
        ));
    }
    out
}

/// JSON table mirroring the CSV export.
pub fn moments_to_json(values: &[MomentValue]) -> serde_json::Value {
    serde_json::Value::Array(
        values
            .iter()
            .map(|v| {
                serde_json::json!({
                    "k": v.k,
                    "beta": v.beta,
                    "n": v.n,
                    "value": v.value_field(),
                    "value_f64": v.value_f64(),
                    "source": v.source.label(),
                })
            })
            .collect(),
    )
}
