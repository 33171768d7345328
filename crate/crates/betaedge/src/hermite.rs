//! Weighted Hermite (quantum harmonic oscillator) functions
//!
//! ```text
//! ψ_n(x) = H_n(x) e^{−x²/2} / (2^n n! √π)^{1/2},
//! ```
//!
//! orthonormal on ℝ, evaluated by the three-term recurrence
//!
//! ```text
//! ψ₀ = π^{−1/4} e^{−x²/2},   ψ_{n+1} = x √(2/(n+1)) ψ_n − √(n/(n+1)) ψ_{n−1},
//! ```
//!
//! with derivatives from the ladder relations
//!
//! ```text
//! ψ_n′ = −x ψ_n + √(2n) ψ_{n−1} = x ψ_n − √(2(n+1)) ψ_{n+1}.
//! ```
//!
//! The recurrence itself is stable (it runs in the direction of growth), but
//! its *values* sweep through ~e^{±x²/2} dynamic range: ψ₀(x) underflows f64
//! for |x| ≳ 38 even when ψ_n(x) is O(1) at the degree of interest. All
//! internal arithmetic therefore carries a shared power-of-two exponent that
//! is rebalanced whenever the working pair leaves [2⁻⁵⁰⁰, 2⁵⁰⁰], which keeps
//! every step in the comfortable middle of the f64 range up to the supported
//! degree bound of 100 000.

use std::fmt;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 100_000;

const PI_POW_M14: f64 = 0.7511255444649425; // π^{−1/4}
const LN_2: f64 = std::f64::consts::LN_2;

/// ψ_n and ψ_n′ at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermiteValues {
    pub n: usize,
    pub x: f64,
    pub psi: f64,
    pub psi_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HermiteError {
    /// Degree exceeds [`MAX_DEGREE`].
    DegreeTooLarge { n: usize },
    /// The argument was NaN or infinite.
    NonFinite { x: f64 },
}

impl fmt::Display for HermiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HermiteError::DegreeTooLarge { n } => {
                write!(f, "Hermite degree {n} exceeds the supported bound {MAX_DEGREE}")
            }
            HermiteError::NonFinite { x } => write!(f, "Hermite argument must be finite, got {x}"),
        }
    }
}

impl std::error::Error for HermiteError {}

/// Multiplies by 2^k without overflowing intermediate `powi` calls.
pub(crate) fn ldexp_chunked(mut v: f64, mut k: i64) -> f64 {
    while k > 500 {
        v *= 2f64.powi(500);
        k -= 500;
    }
    while k < -500 {
        v *= 2f64.powi(-500);
        k += 500;
    }
    v * 2f64.powi(k as i32)
}

/// ψ₀(x) in scaled form: returns (stored, k) with ψ₀ = stored·2^k and stored
/// kept within a few hundred orders of magnitude of 1.
fn psi0_scaled(x: f64) -> (f64, i64) {
    let t = -0.5 * x * x;
    if t >= -350.0 {
        (PI_POW_M14 * t.exp(), 0)
    } else {
        let m = ((-350.0 - t) / (500.0 * LN_2)).ceil() as i64;
        let adjusted = t + (m * 500) as f64 * LN_2;
        (PI_POW_M14 * adjusted.exp(), -500 * m)
    }
}

/// Runs the recurrence up to degree `n`, returning (ψ_{n−1}, ψ_n, k) in the
/// shared-exponent representation: true value = stored·2^k. For n = 0 the
/// first slot is 0.
pub(crate) fn psi_pair_scaled(n: usize, x: f64) -> (f64, f64, i64) {
    let (p0, mut k) = psi0_scaled(x);
    if n == 0 {
        return (0.0, p0, k);
    }
    let mut prev = p0;
    let mut cur = x * std::f64::consts::SQRT_2 * p0; // ψ₁
    for j in 1..n {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let mag = prev.abs().max(cur.abs());
        if mag > 2f64.powi(500) {
            prev *= 2f64.powi(-500);
            cur *= 2f64.powi(-500);
            k += 500;
        } else if mag < 2f64.powi(-500) && mag > 0.0 {
            prev *= 2f64.powi(500);
            cur *= 2f64.powi(500);
            k -= 500;
        }
    }
    (prev, cur, k)
}

/// Streams ψ₀(x), ψ₁(x), … in the shared-exponent representation; used where
/// a whole prefix of the sequence is consumed (kernel sums).
pub(crate) struct PsiSequence {
    x: f64,
    j: usize,
    prev: f64,
    cur: f64,
    k: i64,
}

impl PsiSequence {
    pub(crate) fn new(x: f64) -> PsiSequence {
        let (cur, k) = psi0_scaled(x);
        PsiSequence {
            x,
            j: 0,
            prev: 0.0,
            cur,
            k,
        }
    }

    /// Returns (stored ψ_j, exponent) for the current degree and advances.
    pub(crate) fn next_scaled(&mut self) -> (f64, i64) {
        let out = (self.cur, self.k);
        let jf = self.j as f64;
        let next = self.x * (2.0 / (jf + 1.0)).sqrt() * self.cur
            - (jf / (jf + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.j += 1;
        let mag = self.prev.abs().max(self.cur.abs());
        if mag > 2f64.powi(500) {
            self.prev *= 2f64.powi(-500);
            self.cur *= 2f64.powi(-500);
            self.k += 500;
        } else if mag < 2f64.powi(-500) && mag > 0.0 {
            self.prev *= 2f64.powi(500);
            self.cur *= 2f64.powi(500);
            self.k -= 500;
        }
        out
    }
}

/// Evaluates ψ_n(x) and ψ_n′(x).
pub fn hermite_psi_eval(n: usize, x: f64) -> Result<HermiteValues, HermiteError> {
    if n > MAX_DEGREE {
        return Err(HermiteError::DegreeTooLarge { n });
    }
    if !x.is_finite() {
        return Err(HermiteError::NonFinite { x });
    }
    let (below, at, k) = psi_pair_scaled(n, x);
    let psi = ldexp_chunked(at, k);
    let prime_stored = if n == 0 {
        -x * at
    } else {
        -x * at + (2.0 * n as f64).sqrt() * below
    };
    Ok(HermiteValues {
        n,
        x,
        psi,
        psi_prime: ldexp_chunked(prime_stored, k),
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference values keep full digits
mod tests {
    use super::*;

    #[test]
    fn ground_state_matches_closed_form() {
        let v = hermite_psi_eval(0, 0.0).unwrap();
        assert!((v.psi - 0.751125544464942482858703004776).abs() < 1e-15);
        assert_eq!(v.psi_prime, 0.0);

        // ψ₀(x) = π^{−1/4} e^{−x²/2}, ψ₁(x) = √2·x·ψ₀(x): direct formulas.
        let x = 1.3f64;
        let psi0 = PI_POW_M14 * (-0.5 * x * x).exp();
        let v0 = hermite_psi_eval(0, x).unwrap();
        assert!((v0.psi - psi0).abs() < 1e-15 * psi0.abs());
        let v1 = hermite_psi_eval(1, x).unwrap();
        let psi1 = std::f64::consts::SQRT_2 * x * psi0;
        assert!((v1.psi - psi1).abs() < 1e-15 * psi1.abs());
    }

    #[test]
    fn matches_high_precision_reference() {
        let v = hermite_psi_eval(25, 1.3).unwrap();
        assert!((v.psi - 0.057311020761544652187593419445).abs() < 1e-13 * v.psi.abs());
        assert!(
            (v.psi_prime - -2.07503757969119240344048698324).abs() < 1e-13 * v.psi_prime.abs()
        );

        let v = hermite_psi_eval(100, 6.0).unwrap();
        assert!((v.psi - 0.159556938106510434171788522507).abs() < 1e-12 * v.psi.abs());

        let v = hermite_psi_eval(1000, 10.0).unwrap();
        assert!((v.psi - -0.0992800287648396740197494366824).abs() < 1e-12 * v.psi.abs());
    }

    /// ψ₀(40) underflows f64, yet ψ₉₀₀(40) is O(0.1): the shared-exponent
    /// bookkeeping must carry the recurrence through.
    #[test]
    fn survives_deep_tail_starts() {
        let v = hermite_psi_eval(900, 40.0).unwrap();
        assert!(v.psi.is_finite() && v.psi.abs() > 1e-3, "psi = {}", v.psi);
        // Where the weight genuinely crushes everything, zero is the answer.
        let far = hermite_psi_eval(5, 60.0).unwrap();
        assert!(far.psi.abs() < 1e-300);
    }

    /// The returned derivative must differentiate the returned function.
    #[test]
    fn derivative_consistent_with_finite_differences() {
        for &(n, x) in &[(3usize, 0.7), (25, 1.3), (60, -4.2), (100, 6.0), (41, 9.0)] {
            let h = 1e-3;
            let p = |d: f64| hermite_psi_eval(n, x + d).unwrap().psi;
            let stencil =
                (-p(2.0 * h) + 8.0 * p(h) - 8.0 * p(-h) + p(-2.0 * h)) / (12.0 * h);
            let v = hermite_psi_eval(n, x).unwrap();
            assert!(
                (v.psi_prime - stencil).abs() < 1e-8 * (1.0 + v.psi_prime.abs()),
                "n={n} x={x}: analytic {} vs stencil {stencil}",
                v.psi_prime
            );
        }
    }

    #[test]
    fn rejects_out_of_contract_inputs() {
        assert!(matches!(
            hermite_psi_eval(MAX_DEGREE + 1, 0.0),
            Err(HermiteError::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            hermite_psi_eval(3, f64::INFINITY),
            Err(HermiteError::NonFinite { .. })
        ));
    }
}
