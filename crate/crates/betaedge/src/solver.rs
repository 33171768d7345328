//! Order-by-order construction of the soft-edge expansion coefficients.
//!
//! The edge-scaled β = 2 density admits the large-N expansion
//!
//! ```text
//! ρ_edge(y) ≈ Σ_j ν^{−2j/3} · r_j(y),         ν = N′,
//! ```
//!
//! where each r_j is a quadratic Airy combination with polynomial
//! coefficients (see [`crate::combo`]) determined by the hierarchy
//!
//! ```text
//! L r_0 = 0,        L r_j = R r_{j−1}   (j ≥ 1),
//! ```
//!
//! with L = d³ − 4y·d + 2 and R = y²·d − y. Within the quadratic Airy class
//! the kernel of L is one-dimensional, spanned by r₀ = −y·Ai² + Ai′², so each
//! order is determined only up to a multiple of r₀; the gauge q_j(0) = 0
//! (vanishing constant term of the Ai′² coefficient) pins that multiple to
//! zero, matching the normalization in which r₀ carries the whole Ai′²
//! constant. [`solve_order`] sets up the linear system over exact rationals
//! for an ansatz of escalating degree and solves it fraction-free (Bareiss
//! elimination on integer-cleared rows), verifying afterwards that
//! L r_j = R r_{j−1} holds *exactly* and that the nullspace found is exactly
//! the expected r₀ line.
//!
//! The undetermined kernel multiples can also be *measured* against finite-N
//! data ([`ExpansionSeries::fit_kernel_constant`]); for a correct series the
//! fitted constants are compatible with zero at the next expansion order.

use crate::combo::{l_op, rhs_op, AiryCombo};
use crate::ensembles::EnsembleError;
use crate::ratpoly::RationalPoly;
use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// How a kernel-multiple entry of the series came to be.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelConstant {
    /// Fixed to zero exactly by the q(0) = 0 gauge.
    Pinned,
    /// Estimated from finite-N data; for a correct series this is small.
    Fitted(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    /// solve_order(j) needs j ≥ 1 (r₀ is fixed a priori).
    InvalidOrder { j: usize },
    /// The series does not yet contain order j−1.
    MissingPreviousOrder { j: usize },
    /// No consistent ansatz found up to the degree ceiling 4j + 8.
    DegreeCeilingExceeded { j: usize, ceiling: usize },
    /// The solved system's nullspace was not the expected r₀ line.
    UnexpectedNullspace { j: usize, dim: usize },
    /// Exact post-verification L r_j = R r_{j−1} failed (internal bug guard).
    VerificationFailed { j: usize },
    /// The least-squares fit for a kernel constant is degenerate.
    IllConditionedFit,
    /// A probe evaluation failed during fitting.
    Probe(EnsembleError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::InvalidOrder { j } => {
                write!(f, "expansion order {j} is not solvable (order 0 is the fixed seed)")
            }
            SolveError::MissingPreviousOrder { j } => {
                write!(f, "order {j} requires order {} to be present", j - 1)
            }
            SolveError::DegreeCeilingExceeded { j, ceiling } => write!(
                f,
                "no consistent polynomial ansatz up to degree {ceiling} at order {j}"
            ),
            SolveError::UnexpectedNullspace { j, dim } => write!(
                f,
                "solving order {j} produced a nullspace of dimension {dim}, expected 1"
            ),
            SolveError::VerificationFailed { j } => {
                write!(f, "exact verification of the order-{j} solution failed")
            }
            SolveError::IllConditionedFit => {
                write!(f, "kernel-constant fit is ill-conditioned (regressor nearly null)")
            }
            SolveError::Probe(e) => write!(f, "probe evaluation failed: {e}"),
        }
    }
}

impl std::error::Error for SolveError {}

/// The expansion series r₀ … r_J with gauge bookkeeping.
#[derive(Clone, Debug)]
pub struct ExpansionSeries {
    terms: Vec<AiryCombo>,
    kernel_constants: Vec<KernelConstant>,
}

impl Default for ExpansionSeries {
    fn default() -> Self {
        Self::new()
    }
}

impl ExpansionSeries {
    /// Starts the series at its fixed leading term r₀.
    pub fn new() -> Self {
        ExpansionSeries {
            terms: vec![AiryCombo::r0()],
            kernel_constants: vec![KernelConstant::Pinned],
        }
    }

    /// The gauge fixing the kernel freedom at every order.
    pub fn gauge(&self) -> &'static str {
        "q(0)=0"
    }

    /// Highest order currently present.
    pub fn max_order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[AiryCombo] {
        &self.terms
    }

    pub fn term(&self, j: usize) -> Option<&AiryCombo> {
        self.terms.get(j)
    }

    pub fn kernel_constants(&self) -> &[KernelConstant] {
        &self.kernel_constants
    }

    /// Computes orders up to and including `j_max`.
    pub fn extend_to(&mut self, j_max: usize) -> Result<(), SolveError> {
        while self.max_order() < j_max {
            let j = self.max_order() + 1;
            let next = solve_order(self, j)?;
            self.terms.push(next);
            self.kernel_constants.push(KernelConstant::Pinned);
        }
        Ok(())
    }

    /// Partial sum Σ_{i≤j_max} ν^{−2i/3} r_i(y) of the edge expansion.
    pub fn eval_partial_sum(
        &self,
        nu: f64,
        y: f64,
        j_max: usize,
    ) -> Result<f64, EnsembleError> {
        let top = j_max.min(self.max_order());
        let mut acc = 0.0;
        for (i, term) in self.terms.iter().enumerate().take(top + 1) {
            let weight = nu.powf(-2.0 * i as f64 / 3.0);
            acc += weight * term.eval(y).map_err(EnsembleError::Airy)?;
        }
        Ok(acc)
    }

    /// Measures the kernel multiple c_j of r₀ left over at order j by linear
    /// regression of `probe(n, y) − Σ_{i≤j} ν^{−2i/3} r_i(y)` against
    /// ν^{−2j/3}·r₀(y) over `n_list × y_grid`, where ν = N (the β = 2
    /// effective size; the probe must supply β = 2 soft-edge densities or a
    /// synthetic equivalent). The result is stored with `Fitted` provenance
    /// and returned.
    pub fn fit_kernel_constant(
        &mut self,
        j: usize,
        probe: impl Fn(usize, f64) -> Result<f64, EnsembleError>,
        n_list: &[usize],
        y_grid: &[f64],
    ) -> Result<f64, SolveError> {
        if j > self.max_order() {
            return Err(SolveError::MissingPreviousOrder { j: j + 1 });
        }
        let r0 = AiryCombo::r0();
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for &n in n_list {
            let nu = n as f64;
            let weight = nu.powf(-2.0 * j as f64 / 3.0);
            for &y in y_grid {
                let data = probe(n, y).map_err(SolveError::Probe)?;
                let model = self
                    .eval_partial_sum(nu, y, j)
                    .map_err(SolveError::Probe)?;
                let regressor =
                    weight * r0.eval(y).map_err(|e| SolveError::Probe(EnsembleError::Airy(e)))?;
                num += (data - model) * regressor;
                den += regressor * regressor;
            }
        }
        if den < 1e-12 {
            return Err(SolveError::IllConditionedFit);
        }
        let c = num / den;
        self.kernel_constants[j] = KernelConstant::Fitted(c);
        Ok(c)
    }

    /// JSON form: every coefficient as exact numerator/denominator strings.
    pub fn to_json(&self) -> serde_json::Value {
        let poly_json = |p: &RationalPoly| -> serde_json::Value {
            serde_json::Value::Array(
                p.coeffs()
                    .iter()
                    .map(|c| {
                        serde_json::json!([c.numer().to_string(), c.denom().to_string()])
                    })
                    .collect(),
            )
        };
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .zip(&self.kernel_constants)
            .enumerate()
            .map(|(j, (t, kc))| {
                let kc_json = match kc {
                    KernelConstant::Pinned => serde_json::json!({"provenance": "pinned"}),
                    KernelConstant::Fitted(v) => {
                        serde_json::json!({"provenance": "fitted", "value": v})
                    }
                };
                serde_json::json!({
                    "order": j,
                    "p": poly_json(&t.p),
                    "q": poly_json(&t.q),
                    "s": poly_json(&t.s),
                    "kernel_constant": kc_json,
                })
            })
            .collect();
        serde_json::json!({
            "basis": "p*Ai^2 + q*Ai'^2 + s*Ai*Ai'",
            "power": "nu^(-2j/3)",
            "gauge": self.gauge(),
            "terms": terms,
        })
    }

    /// Plain-text report with one block per order.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        out.push_str("Soft-edge expansion coefficients (gauge q(0)=0)\n");
        out.push_str("basis: p(y)*Ai(y)^2 + q(y)*Ai'(y)^2 + s(y)*Ai(y)*Ai'(y)\n\n");
        for (j, (t, kc)) in self.terms.iter().zip(&self.kernel_constants).enumerate() {
            out.push_str(&format!("r_{j}:\n"));
            out.push_str(&format!("  p(y) = {}\n", t.p));
            out.push_str(&format!("  q(y) = {}\n", t.q));
            out.push_str(&format!("  s(y) = {}\n", t.s));
            match kc {
                KernelConstant::Pinned => out.push_str("  kernel multiple: 0 (pinned)\n"),
                KernelConstant::Fitted(v) => {
                    out.push_str(&format!("  kernel multiple: {v:e} (fitted)\n"))
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Index layout for the ansatz unknowns: p₀…p_D, s₀…s_{D+1}, q₁…q_D, q₀.
///
/// q₀ is deliberately last: the kernel direction r₀ has q-constant 1, so with
/// left-to-right pivoting every other column is independent and q₀ is forced
/// to be the single free column, making the gauge choice q₀ = 0 immediate.
struct AnsatzLayout {
    dp: usize,
    ds: usize,
    dq: usize,
}

impl AnsatzLayout {
    fn unknowns(&self) -> usize {
        (self.dp + 1) + (self.ds + 1) + self.dq + 1
    }

    /// q₀'s column index (the last one).
    fn q0_col(&self) -> usize {
        self.unknowns() - 1
    }

    /// Builds the combo for unknown column `idx` carrying coefficient `c`.
    fn basis_combo(&self, idx: usize, c: BigRational) -> AiryCombo {
        let mut combo = AiryCombo::zero();
        let p_block = self.dp + 1;
        let s_block = self.ds + 1;
        if idx < p_block {
            combo.p = RationalPoly::monomial(idx, c);
        } else if idx < p_block + s_block {
            combo.s = RationalPoly::monomial(idx - p_block, c);
        } else if idx < p_block + s_block + self.dq {
            combo.q = RationalPoly::monomial(idx - p_block - s_block + 1, c);
        } else {
            combo.q = RationalPoly::monomial(0, c);
        }
        combo
    }

    /// Assembles the solution combo from the solved unknown vector.
    fn collect(&self, x: &[BigRational]) -> AiryCombo {
        let p_block = self.dp + 1;
        let s_block = self.ds + 1;
        let p = RationalPoly::from_coeffs(x[..p_block].to_vec());
        let s = RationalPoly::from_coeffs(x[p_block..p_block + s_block].to_vec());
        let mut q_coeffs = vec![BigRational::zero(); self.dq + 1];
        q_coeffs[0] = x[self.q0_col()].clone();
        q_coeffs[1..(self.dq + 1)]
            .clone_from_slice(&x[p_block + s_block..p_block + s_block + self.dq]);
        let q = RationalPoly::from_coeffs(q_coeffs);
        AiryCombo::new(p, q, s)
    }
}

/// Row-echelon solve of an exact rational system, fraction-free inside.
///
/// Returns `None` if inconsistent; otherwise the solution with all free
/// variables set to zero together with the list of free column indices.
fn solve_exact(
    mut rows: Vec<Vec<BigRational>>, // each row: coefficients ++ [rhs]
) -> Option<(Vec<BigRational>, Vec<usize>)> {
    let nrows = rows.len();
    if nrows == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let ncols = rows[0].len() - 1;

    // Clear denominators row by row: Bareiss needs integer entries.
    for row in rows.iter_mut() {
        let mut lcm = BigInt::one();
        for c in row.iter() {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        if !lcm.is_one() {
            let m = BigRational::from_integer(lcm);
            for c in row.iter_mut() {
                *c = &*c * &m;
            }
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.to_integer()).collect())
        .collect();

    // Fraction-free (Bareiss) forward elimination with row pivoting, walking
    // the columns left to right so later columns become free when dependent.
    let mut prev = BigInt::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            // Every row below gets the fraction-free update, zero factor or
            // not: the rescale by pivot/prev keeps entries integer minors,
            // which is what makes the next step's division exact.
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[rank];
            let row = &mut bottom[0];
            let factor = row[col].clone();
            for (cell, above) in row.iter_mut().zip(pivot_row) {
                let val = &pivot * &*cell - &factor * above;
                debug_assert!((&val % &prev).is_zero());
                *cell = val / &prev;
            }
        }
        prev = pivot;
        pivots.push((rank, col));
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    // Consistency: zero rows must carry zero right-hand sides.
    for row in m.iter().skip(rank) {
        if row.iter().take(ncols).all(Zero::is_zero) && !row[ncols].is_zero() {
            return None;
        }
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();

    // Back substitution in rationals with free variables at zero.
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = BigRational::from_integer(m[r][ncols].clone());
        for cc in c + 1..ncols {
            if !m[r][cc].is_zero() {
                acc -= BigRational::from_integer(m[r][cc].clone()) * &x[cc];
            }
        }
        x[c] = acc / BigRational::from_integer(m[r][c].clone());
    }
    Some((x, free_cols))
}

/// Solves L r_j = R r_{j−1} for the next expansion coefficient under the
/// q(0) = 0 gauge, escalating the ansatz degree until the system closes
/// (ceiling 4j + 8), and verifying the result exactly before returning it.
pub fn solve_order(series: &ExpansionSeries, j: usize) -> Result<AiryCombo, SolveError> {
    if j == 0 {
        return Err(SolveError::InvalidOrder { j });
    }
    let Some(prev) = series.term(j - 1) else {
        return Err(SolveError::MissingPreviousOrder { j });
    };
    let rhs = rhs_op(prev);
    let rhs_deg = [&rhs.p, &rhs.q, &rhs.s]
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let ceiling = 4 * j + 8;
    let mut degree = rhs_deg.saturating_sub(1).max(2);

    while degree <= ceiling {
        let layout = AnsatzLayout {
            dp: degree,
            ds: degree + 1,
            dq: degree,
        };
        let n_unknowns = layout.unknowns();

        // Image of each basis monomial under L, as polynomial columns.
        let images: Vec<AiryCombo> = (0..n_unknowns)
            .map(|idx| l_op(&layout.basis_combo(idx, BigRational::one())))
            .collect();
        let row_deg = images
            .iter()
            .flat_map(|c| [c.p.degree(), c.q.degree(), c.s.degree()])
            .flatten()
            .max()
            .unwrap_or(0)
            .max(rhs_deg);

        // One row per (component, power) equation.
        let mut rows = Vec::with_capacity(3 * (row_deg + 1));
        for comp in 0..3usize {
            for pow in 0..=row_deg {
                let mut row = Vec::with_capacity(n_unknowns + 1);
                for img in &images {
                    let poly = match comp {
                        0 => &img.p,
                        1 => &img.q,
                        _ => &img.s,
                    };
                    row.push(poly.coeff(pow));
                }
                let rhs_poly = match comp {
                    0 => &rhs.p,
                    1 => &rhs.q,
                    _ => &rhs.s,
                };
                row.push(rhs_poly.coeff(pow));
                rows.push(row);
            }
        }

        match solve_exact(rows) {
            None => {
                degree += 2;
                continue;
            }
            Some((x, free_cols)) => {
                if free_cols.len() != 1 || free_cols[0] != layout.q0_col() {
                    return Err(SolveError::UnexpectedNullspace {
                        j,
                        dim: free_cols.len(),
                    });
                }
                let combo = layout.collect(&x);
                // Exact post-verification of the defining equation and gauge.
                if l_op(&combo) != rhs {
                    return Err(SolveError::VerificationFailed { j });
                }
                if !combo.q.coeff(0).is_zero() {
                    return Err(SolveError::VerificationFailed { j });
                }
                return Ok(combo);
            }
        }
    }
    Err(SolveError::DegreeCeilingExceeded { j, ceiling })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::RationalPoly;

    fn poly(pairs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::from_int_ratios(pairs)
    }

    fn frozen_r1() -> AiryCombo {
        AiryCombo::new(
            poly(&[(0, 1), (0, 1), (-3, 20)]),
            poly(&[(0, 1), (1, 10)]),
            poly(&[(3, 20)]),
        )
    }

    fn frozen_r2() -> AiryCombo {
        AiryCombo::new(
            poly(&[(9, 1600), (0, 1), (0, 1), (39, 2800)]),
            poly(&[(0, 1), (0, 1), (-3, 2800)]),
            poly(&[(0, 1), (-99, 2800), (0, 1), (0, 1), (-1, 400)]),
        )
    }

    fn frozen_r3() -> AiryCombo {
        // p = −y(42y⁶ + 2785y³ + 8135)/1008000
        // q = −y³(21y³ + 515)/504000
        // s = y²(264y³ + 3055)/336000
        AiryCombo::new(
            poly(&[
                (0, 1),
                (-8135, 1008000),
                (0, 1),
                (0, 1),
                (-2785, 1008000),
                (0, 1),
                (0, 1),
                (-42, 1008000),
            ]),
            poly(&[
                (0, 1),
                (0, 1),
                (0, 1),
                (-515, 504000),
                (0, 1),
                (0, 1),
                (-21, 504000),
            ]),
            poly(&[
                (0, 1),
                (0, 1),
                (3055, 336000),
                (0, 1),
                (0, 1),
                (264, 336000),
            ]),
        )
    }

    fn frozen_r4() -> AiryCombo {
        // p = y²(15477y⁶ + 658291y³ + 2478000)/1034880000
        // q = y(48048y⁶ + 1226455y³ + 5591445)/3104640000
        // s = −(25872y⁹ + 2872144y⁶ + 36305440y³ + 34149255)/12418560000
        AiryCombo::new(
            poly(&[
                (0, 1),
                (0, 1),
                (2478000, 1034880000),
                (0, 1),
                (0, 1),
                (658291, 1034880000),
                (0, 1),
                (0, 1),
                (15477, 1034880000),
            ]),
            poly(&[
                (0, 1),
                (5591445, 3104640000),
                (0, 1),
                (0, 1),
                (1226455, 3104640000),
                (0, 1),
                (0, 1),
                (48048, 3104640000),
            ]),
            poly(&[
                (-34149255, 12418560000),
                (0, 1),
                (0, 1),
                (-36305440, 12418560000),
                (0, 1),
                (0, 1),
                (-2872144, 12418560000),
                (0, 1),
                (0, 1),
                (-25872, 12418560000),
            ]),
        )
    }

    #[test]
    fn first_order_matches_frozen_solution() {
        let series = ExpansionSeries::new();
        let r1 = solve_order(&series, 1).unwrap();
        assert_eq!(r1, frozen_r1());
    }

    #[test]
    fn second_order_matches_frozen_solution() {
        let mut series = ExpansionSeries::new();
        series.extend_to(1).unwrap();
        let r2 = solve_order(&series, 2).unwrap();
        assert_eq!(r2, frozen_r2());
    }

    #[test]
    fn orders_three_and_four_match_independent_solver() {
        let mut series = ExpansionSeries::new();
        series.extend_to(4).unwrap();
        assert_eq!(series.term(3).unwrap(), &frozen_r3());
        assert_eq!(series.term(4).unwrap(), &frozen_r4());
    }

    #[test]
    fn gauge_holds_at_every_solved_order() {
        let mut series = ExpansionSeries::new();
        series.extend_to(4).unwrap();
        for j in 1..=4 {
            assert!(series.term(j).unwrap().q.coeff(0).is_zero(), "q({j})(0) != 0");
        }
    }

    #[test]
    fn defining_equation_holds_exactly_along_series() {
        let mut series = ExpansionSeries::new();
        series.extend_to(3).unwrap();
        for j in 1..=3 {
            let lhs = l_op(series.term(j).unwrap());
            let rhs = rhs_op(series.term(j - 1).unwrap());
            assert_eq!(lhs, rhs, "order {j}");
        }
    }

    #[test]
    fn synthetic_kernel_constant_is_recovered() {
        let mut series = ExpansionSeries::new();
        series.extend_to(2).unwrap();
        let model = series.clone();
        let injected = 0.37f64;
        let j = 1usize;
        let probe = move |n: usize, y: f64| -> Result<f64, EnsembleError> {
            let nu = n as f64;
            let base = model.eval_partial_sum(nu, y, j)?;
            let bump = injected
                * nu.powf(-2.0 * j as f64 / 3.0)
                * AiryCombo::r0().eval(y).map_err(EnsembleError::Airy)?;
            Ok(base + bump)
        };
        let y_grid: Vec<f64> = (0..17).map(|i| -3.0 + 0.25 * i as f64).collect();
        let c = series
            .fit_kernel_constant(j, probe, &[100, 200, 400], &y_grid)
            .unwrap();
        assert!((c - injected).abs() < 1e-9, "fitted {c}");
        assert!(matches!(
            series.kernel_constants()[j],
            KernelConstant::Fitted(_)
        ));
    }

    #[test]
    fn error_paths_are_reported() {
        let series = ExpansionSeries::new();
        assert!(matches!(
            solve_order(&series, 0),
            Err(SolveError::InvalidOrder { .. })
        ));
        assert!(matches!(
            solve_order(&series, 2),
            Err(SolveError::MissingPreviousOrder { .. })
        ));
    }

    #[test]
    fn report_and_json_round_out_the_series() {
        let mut series = ExpansionSeries::new();
        series.extend_to(2).unwrap();
        let report = series.to_report();
        assert!(report.contains("r_2"));
        assert!(report.contains("39/2800*y^3 + 9/1600"));
        let json = series.to_json();
        assert_eq!(json["gauge"], "q(0)=0");
        // r₂'s p coefficients: [9/1600, 0, 0, 39/2800]
        assert_eq!(json["terms"][2]["p"][0][0], "9");
        assert_eq!(json["terms"][2]["p"][0][1], "1600");
        assert_eq!(json["terms"][2]["p"][3][0], "39");
        assert_eq!(json["terms"][2]["p"][3][1], "2800");
    }
}
