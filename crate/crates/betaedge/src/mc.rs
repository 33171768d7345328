//! Monte Carlo sampling of the β-ensemble eigenvalue law.
//!
//! The workhorse is the tridiagonal model, valid for every β > 0: a random
//! symmetric tridiagonal matrix with independent entries
//!
//! ```text
//! diagonal:      d_i ~ Normal(0, 1),                i = 0..N−1,
//! off-diagonal:  b_k ~ χ_{kβ} / √2,                 k = N−1, N−2, …, 1,
//! ```
//!
//! whose eigenvalues λ carry the joint density ∝ |Δ(λ)|^β e^{−Σλ²/2}.
//! Rescaling to the crate's coordinate conventions:
//!
//! ```text
//! BetaCanonical:  x = λ / √(2β)     (any β; weight ∏e^{−βx²}|Δ|^β)
//! HermiteWeight:  x = λ / √β        (β = 2 only; weight ∏e^{−x²}|Δ|²)
//! ```
//!
//! Dense samplers for β = 1 (real symmetric, A = (G+Gᵀ)/2) and β = 2
//! (complex Hermitian, H = (G+G†)/2) produce the same λ-law and serve as
//! independent oracles for the tridiagonal constants.
//!
//! Repetitions draw from per-index ChaCha streams — stream r of the seeded
//! generator — so batches are bit-reproducible regardless of thread count.
//!
//! [`estimate_moment`] works in the moment coordinate X = λ/√(βN) (support
//! → (−√2, √2)), matching the closed forms in [`crate::moments`].
//! [`edge_histogram`] bins eigenvalues through the soft-edge map built with
//! either N or the shifted N′ = N + (β−2)/(2β), which is the knob the
//! edge-convergence experiments turn.

use crate::ensembles::{Convention, EnsembleError, EnsembleSpec, ScalingKind, ScalingMap};
use crate::tridiag::{
    hermitian_dense_eigenvalues, symmetric_dense_eigenvalues,
    symmetric_tridiagonal_eigenvalues, TridiagError,
};
use num::complex::Complex64;
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    Tridiagonal,
    DenseReal,
    DenseComplex,
}

impl Sampler {
    pub fn label(self) -> &'static str {
        match self {
            Sampler::Tridiagonal => "tridiagonal",
            Sampler::DenseReal => "dense_real",
            Sampler::DenseComplex => "dense_complex",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum McError {
    /// reps must be at least 1.
    InvalidReps { reps: usize },
    /// The requested sampler cannot target this β.
    UnsupportedBeta { beta: f64, sampler: Sampler },
    /// HermiteWeight coordinates exist only at β = 2.
    ConventionMismatch { beta: f64 },
    /// The moment order must be positive.
    InvalidMomentOrder,
    /// Histogram window is empty or inverted.
    EmptyWindow { lo: f64, hi: f64 },
    /// Histogram needs at least one bin.
    NoBins,
    /// Window lower edge reaches into the spectral bulk.
    WindowOutsideEdgeRegime { lo: f64, limit: f64 },
    /// The eigensolver failed to converge on a draw.
    Eigensolver { rep: usize },
    Ensemble(EnsembleError),
}

impl fmt::Display for McError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            McError::InvalidReps { reps } => write!(f, "need at least one repetition, got {reps}"),
            McError::UnsupportedBeta { beta, sampler } => {
                write!(f, "sampler {} does not support beta = {beta}", sampler.label())
            }
            McError::ConventionMismatch { beta } => write!(
                f,
                "HermiteWeight coordinates are defined only at beta = 2, got {beta}"
            ),
            McError::InvalidMomentOrder => write!(f, "moment order k must be >= 1"),
            McError::EmptyWindow { lo, hi } => write!(f, "empty histogram window [{lo}, {hi}]"),
            McError::NoBins => write!(f, "histogram needs at least one bin"),
            McError::WindowOutsideEdgeRegime { lo, limit } => write!(
                f,
                "window lower edge {lo} is outside the soft-edge regime (limit {limit})"
            ),
            McError::Eigensolver { rep } => {
                write!(f, "eigenvalue iteration failed on repetition {rep}")
            }
            McError::Ensemble(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for McError {}

impl From<EnsembleError> for McError {
    fn from(e: EnsembleError) -> Self {
        McError::Ensemble(e)
    }
}

/// A reproducible batch of eigenvalue draws, rows ascending, in the
/// coordinates of `spec.convention`.
#[derive(Clone, Debug)]
pub struct SampleBatch {
    pub spec: EnsembleSpec,
    pub seed: u64,
    pub reps: usize,
    pub sampler: Sampler,
    pub eigenvalues: Vec<Vec<f64>>,
}

fn rep_rng(seed: u64, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep as u64);
    rng
}

/// λ → spec-convention factor, validating the convention/β pairing.
fn convention_scale(spec: &EnsembleSpec) -> Result<f64, McError> {
    match spec.convention {
        Convention::BetaCanonical => Ok(1.0 / (2.0 * spec.beta).sqrt()),
        Convention::HermiteWeight => {
            if (spec.beta - 2.0).abs() < 1e-12 {
                Ok(1.0 / spec.beta.sqrt())
            } else {
                Err(McError::ConventionMismatch { beta: spec.beta })
            }
        }
    }
}

/// Draws `reps` spectra of the tridiagonal β-ensemble model.
pub fn sample_tridiagonal(
    spec: &EnsembleSpec,
    reps: usize,
    seed: u64,
) -> Result<SampleBatch, McError> {
    if reps == 0 {
        return Err(McError::InvalidReps { reps });
    }
    let scale = convention_scale(spec)?;
    let n = spec.n;
    let beta = spec.beta;
    let rows: Vec<Result<Vec<f64>, McError>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(seed, rep);
            let mut d = vec![0.0f64; n];
            for di in d.iter_mut() {
                *di = StandardNormal.sample(&mut rng);
            }
            let mut e = vec![0.0f64; n];
            for (i, ei) in e.iter_mut().take(n.saturating_sub(1)).enumerate() {
                // Coupling between rows i and i+1 gets kβ degrees of
                // freedom with k = n−1−i; χ_ν/√2 = √Gamma(ν/2, 1).
                let k = (n - 1 - i) as f64;
                let gamma = Gamma::new(k * beta / 2.0, 1.0)
                    .expect("positive shape for k >= 1, beta > 0");
                let draw: f64 = gamma.sample(&mut rng);
                *ei = draw.sqrt();
            }
            let lambda = symmetric_tridiagonal_eigenvalues(&d, &e)
                .map_err(|TridiagError::NoConvergence { .. }| McError::Eigensolver { rep })?;
            Ok(lambda.into_iter().map(|l| l * scale).collect())
        })
        .collect();
    let mut eigenvalues = Vec::with_capacity(reps);
    for row in rows {
        eigenvalues.push(row?);
    }
    Ok(SampleBatch {
        spec: *spec,
        seed,
        reps,
        sampler: Sampler::Tridiagonal,
        eigenvalues,
    })
}

/// Draws `reps` spectra from the dense Gaussian matrix models (β = 1 real
/// symmetric, β = 2 complex Hermitian), an independent check on the
/// tridiagonal constants.
pub fn sample_dense(
    beta: f64,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<SampleBatch, McError> {
    let spec = EnsembleSpec::new(beta, n, Convention::BetaCanonical)?;
    if reps == 0 {
        return Err(McError::InvalidReps { reps });
    }
    let sampler = if (beta - 1.0).abs() < 1e-12 {
        Sampler::DenseReal
    } else if (beta - 2.0).abs() < 1e-12 {
        Sampler::DenseComplex
    } else {
        return Err(McError::UnsupportedBeta {
            beta,
            sampler: Sampler::DenseReal,
        });
    };
    let scale = convention_scale(&spec)?;
    let rows: Vec<Result<Vec<f64>, McError>> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(seed, rep);
            let lambda = match sampler {
                Sampler::DenseReal => {
                    let mut g = vec![vec![0.0f64; n]; n];
                    for row in g.iter_mut() {
                        for v in row.iter_mut() {
                            *v = StandardNormal.sample(&mut rng);
                        }
                    }
                    let mut a = vec![vec![0.0f64; n]; n];
                    for i in 0..n {
                        for j in 0..n {
                            a[i][j] = 0.5 * (g[i][j] + g[j][i]);
                        }
                    }
                    symmetric_dense_eigenvalues(a)
                }
                Sampler::DenseComplex => {
                    let mut g = vec![vec![Complex64::zero(); n]; n];
                    for row in g.iter_mut() {
                        for v in row.iter_mut() {
                            let re: f64 = StandardNormal.sample(&mut rng);
                            let im: f64 = StandardNormal.sample(&mut rng);
                            *v = Complex64::new(re, im);
                        }
                    }
                    let mut h = vec![vec![Complex64::zero(); n]; n];
                    for i in 0..n {
                        for j in 0..n {
                            h[i][j] = 0.5 * (g[i][j] + g[j][i].conj());
                        }
                    }
                    hermitian_dense_eigenvalues(h)
                }
                Sampler::Tridiagonal => unreachable!("dense sampler selected above"),
            }
            .map_err(|TridiagError::NoConvergence { .. }| McError::Eigensolver { rep })?;
            Ok(lambda.into_iter().map(|l| l * scale).collect())
        })
        .collect();
    let mut eigenvalues = Vec::with_capacity(reps);
    for row in rows {
        eigenvalues.push(row?);
    }
    Ok(SampleBatch {
        spec,
        seed,
        reps,
        sampler,
        eigenvalues,
    })
}

/// Factor from batch coordinates to the moment coordinate X = λ/√(βN).
fn moment_coordinate_scale(spec: &EnsembleSpec) -> f64 {
    let n = spec.n as f64;
    match spec.convention {
        Convention::BetaCanonical => (2.0 / n).sqrt(),
        Convention::HermiteWeight => 1.0 / n.sqrt(),
    }
}

fn raw_moment(batch: &SampleBatch, power: i32) -> (f64, Option<f64>) {
    let scale = moment_coordinate_scale(&batch.spec);
    let n = batch.spec.n as f64;
    let stats: Vec<f64> = batch
        .eigenvalues
        .iter()
        .map(|row| row.iter().map(|x| (x * scale).powi(power)).sum::<f64>() / n)
        .collect();
    let reps = stats.len() as f64;
    let mean = stats.iter().sum::<f64>() / reps;
    if stats.len() < 2 {
        return (mean, None);
    }
    let var = stats.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>()
        / (reps * (reps - 1.0));
    (mean, Some(var.sqrt()))
}

/// Empirical m̂_{2k} = mean over reps of (1/N)ΣX_i^{2k} with its standard
/// error (`None` for a single repetition, where the spread is undefined).
pub fn estimate_moment(batch: &SampleBatch, k: usize) -> Result<(f64, Option<f64>), McError> {
    if k == 0 {
        return Err(McError::InvalidMomentOrder);
    }
    Ok(raw_moment(batch, 2 * k as i32))
}

/// Empirical odd-power statistic mean of (1/N)ΣX_i^power, for symmetry
/// diagnostics; same standard-error semantics as [`estimate_moment`].
pub fn estimate_raw_moment(batch: &SampleBatch, power: usize) -> Result<(f64, Option<f64>), McError> {
    if power == 0 {
        return Err(McError::InvalidMomentOrder);
    }
    Ok(raw_moment(batch, power as i32))
}

/// Which size entered the soft-edge map of a histogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeScaling {
    WithN,
    WithNprime,
}

impl EdgeScaling {
    pub fn label(self) -> &'static str {
        match self {
            EdgeScaling::WithN => "with_n",
            EdgeScaling::WithNprime => "with_nprime",
        }
    }
}

/// Histogram of eigenvalues in soft-edge coordinates.
#[derive(Clone, Debug)]
pub struct EdgeHistogram {
    /// bins+1 ascending bin edges in y.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// counts / (reps · bin width): estimates the edge density, so the
    /// integral over the window is the mean number of captured eigenvalues.
    pub density: Vec<f64>,
    pub scaling_used: EdgeScaling,
    pub reps: usize,
}

impl EdgeHistogram {
    /// Mean number of eigenvalues landing in the window per repetition.
    pub fn captured_mass(&self) -> f64 {
        let total: u64 = self.counts.iter().sum();
        total as f64 / self.reps as f64
    }

    /// CSV rows `bin_left,bin_right,density`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,density\n");
        for (i, d) in self.density.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", self.edges[i], self.edges[i + 1], d));
        }
        out
    }
}

/// Bins the batch's eigenvalues through the soft-edge map built with N′
/// (`use_nprime`) or plain N, over `window` split into `bins` equal cells.
pub fn edge_histogram(
    batch: &SampleBatch,
    use_nprime: bool,
    window: (f64, f64),
    bins: usize,
) -> Result<EdgeHistogram, McError> {
    let (lo, hi) = window;
    // Negated comparison so NaN bounds are rejected along with empty windows.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lo < hi) {
        return Err(McError::EmptyWindow { lo, hi });
    }
    if bins == 0 {
        return Err(McError::NoBins);
    }
    let m = if use_nprime {
        batch.spec.nprime()
    } else {
        batch.spec.n as f64
    };
    // The bulk center x = 0 sits at y = −2m^{2/3}; reject windows reaching
    // even halfway there, where edge scaling is meaningless.
    let limit = -m.powf(2.0 / 3.0);
    if lo <= limit {
        return Err(McError::WindowOutsideEdgeRegime { lo, limit });
    }
    let map = ScalingMap {
        kind: ScalingKind::SoftEdge,
        convention: batch.spec.convention,
        n: batch.spec.n,
        nprime: m,
    };
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for row in &batch.eigenvalues {
        for &x in row {
            let y = map.from_raw(x);
            if y >= lo && y < hi {
                let b = (((y - lo) / width) as usize).min(bins - 1);
                counts[b] += 1;
            }
        }
    }
    let density: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / (batch.reps as f64 * width))
        .collect();
    let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
    Ok(EdgeHistogram {
        edges,
        counts,
        density,
        scaling_used: if use_nprime {
            EdgeScaling::WithNprime
        } else {
            EdgeScaling::WithN
        },
        reps: batch.reps,
    })
}

/// L1 distance Σ_b |density_b − f(midpoint_b)| · width between a histogram
/// and a reference density curve.
pub fn histogram_l1_distance(
    hist: &EdgeHistogram,
    mut reference: impl FnMut(f64) -> Result<f64, EnsembleError>,
) -> Result<f64, McError> {
    let mut acc = 0.0;
    for (i, d) in hist.density.iter().enumerate() {
        let mid = 0.5 * (hist.edges[i] + hist.edges[i + 1]);
        let width = hist.edges[i + 1] - hist.edges[i];
        acc += (d - reference(mid)?).abs() * width;
    }
    Ok(acc)
}

/// CSV dump of the batch: `rep,index,eigenvalue`.
pub fn batch_to_csv(batch: &SampleBatch) -> String {
    let mut out = String::from("rep,index,eigenvalue\n");
    for (r, row) in batch.eigenvalues.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            out.push_str(&format!("{r},{i},{v}\n"));
        }
    }
    out
}

/// JSON sidecar describing how a batch was produced.
pub fn batch_sidecar_json(batch: &SampleBatch) -> serde_json::Value {
    serde_json::json!({
        "beta": batch.spec.beta,
        "n": batch.spec.n,
        "convention": format!("{:?}", batch.spec.convention),
        "seed": batch.seed,
        "reps": batch.reps,
        "sampler": batch.sampler.label(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moment_closed_form;
    use crate::solver::ExpansionSeries;
    use num::BigRational;

    fn spec(beta: f64, n: usize) -> EnsembleSpec {
        EnsembleSpec::new(beta, n, Convention::BetaCanonical).unwrap()
    }

    fn closed_m(k: usize, beta_num: i64, n: usize) -> f64 {
        let beta = BigRational::new(beta_num.into(), 1.into());
        let m = moment_closed_form(k, &beta, n).unwrap();
        let num: f64 = m.numer().to_string().parse().unwrap();
        let den: f64 = m.denom().to_string().parse().unwrap();
        num / den
    }

    #[test]
    fn batches_are_reproducible_and_sorted() {
        let s = spec(2.5, 9);
        let a = sample_tridiagonal(&s, 5, 7).unwrap();
        let b = sample_tridiagonal(&s, 5, 7).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        let c = sample_tridiagonal(&s, 5, 8).unwrap();
        assert_ne!(a.eigenvalues, c.eigenvalues);
        for row in &a.eigenvalues {
            assert_eq!(row.len(), 9);
            for w in row.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn tridiagonal_moments_match_closed_forms() {
        for &(beta, k) in &[(1.0f64, 1usize), (2.0, 1), (4.0, 2)] {
            let s = spec(beta, 30);
            let batch = sample_tridiagonal(&s, 600, 2024).unwrap();
            let (value, stderr) = estimate_moment(&batch, k).unwrap();
            let expect = closed_m(k, beta as i64, 30);
            let se = stderr.unwrap();
            assert!(
                (value - expect).abs() < 4.0 * se,
                "beta={beta}, k={k}: {value} vs {expect} (se {se})"
            );
        }
    }

    #[test]
    fn dense_and_tridiagonal_samplers_agree() {
        for &beta in &[1.0f64, 2.0] {
            let s = spec(beta, 16);
            let tri = sample_tridiagonal(&s, 500, 11).unwrap();
            let den = sample_dense(beta, 16, 500, 12).unwrap();
            let (v1, se1) = estimate_moment(&tri, 1).unwrap();
            let (v2, se2) = estimate_moment(&den, 1).unwrap();
            let combined = (se1.unwrap().powi(2) + se2.unwrap().powi(2)).sqrt();
            assert!(
                (v1 - v2).abs() < 4.0 * combined,
                "beta={beta}: {v1} vs {v2} (combined se {combined})"
            );
        }
    }

    #[test]
    fn dense_sampler_sees_symmetric_spectrum() {
        let batch = sample_dense(1.0, 12, 400, 3).unwrap();
        let (odd, se) = estimate_raw_moment(&batch, 3).unwrap();
        assert!(odd.abs() < 4.0 * se.unwrap(), "odd moment {odd}");
    }

    #[test]
    fn hermite_convention_is_sqrt2_times_canonical() {
        let canonical = sample_tridiagonal(&spec(2.0, 6), 3, 5).unwrap();
        let hermite = sample_tridiagonal(
            &EnsembleSpec::new(2.0, 6, Convention::HermiteWeight).unwrap(),
            3,
            5,
        )
        .unwrap();
        for (rc, rh) in canonical.eigenvalues.iter().zip(&hermite.eigenvalues) {
            for (c, h) in rc.iter().zip(rh) {
                assert!((h - c * std::f64::consts::SQRT_2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hermite_convention_outside_beta_two_is_rejected() {
        let s = EnsembleSpec::new(1.0, 6, Convention::HermiteWeight).unwrap();
        assert!(matches!(
            sample_tridiagonal(&s, 2, 1),
            Err(McError::ConventionMismatch { .. })
        ));
    }

    #[test]
    fn edge_histograms_coincide_at_beta_two() {
        let batch = sample_tridiagonal(&spec(2.0, 40), 50, 77).unwrap();
        let with_n = edge_histogram(&batch, false, (-6.0, 3.0), 30).unwrap();
        let with_np = edge_histogram(&batch, true, (-6.0, 3.0), 30).unwrap();
        assert_eq!(with_n.counts, with_np.counts);
        // Normalization bookkeeping: integral of density == captured mass.
        let width = with_n.edges[1] - with_n.edges[0];
        let integral: f64 = with_n.density.iter().map(|d| d * width).sum();
        assert!((integral - with_n.captured_mass()).abs() < 1e-12);
        assert!(integral > 0.5 && integral < 5.0, "mass {integral}");
    }

    #[test]
    fn edge_histogram_tracks_the_limit_density() {
        let batch = sample_tridiagonal(&spec(2.0, 60), 2000, 42).unwrap();
        let hist = edge_histogram(&batch, true, (-6.0, 3.0), 45).unwrap();
        let series = ExpansionSeries::new();
        let l1 = histogram_l1_distance(&hist, |y| {
            series.terms()[0].eval(y).map_err(EnsembleError::Airy)
        })
        .unwrap();
        assert!(l1 < 0.3, "L1 distance {l1}");
    }

    #[test]
    fn histogram_guards_reject_bad_windows() {
        let batch = sample_tridiagonal(&spec(1.0, 20), 5, 1).unwrap();
        assert!(matches!(
            edge_histogram(&batch, false, (3.0, -6.0), 10),
            Err(McError::EmptyWindow { .. })
        ));
        assert!(matches!(
            edge_histogram(&batch, false, (-6.0, 3.0), 0),
            Err(McError::NoBins)
        ));
        // Deep-bulk window: 20^{2/3} ≈ 7.37, so lo = −15 is out of regime.
        assert!(matches!(
            edge_histogram(&batch, false, (-15.0, 3.0), 10),
            Err(McError::WindowOutsideEdgeRegime { .. })
        ));
    }

    #[test]
    fn degenerate_statistics_are_flagged() {
        let batch = sample_tridiagonal(&spec(2.0, 5), 1, 9).unwrap();
        let (_, stderr) = estimate_moment(&batch, 1).unwrap();
        assert!(stderr.is_none());
        assert!(matches!(
            estimate_moment(&batch, 0),
            Err(McError::InvalidMomentOrder)
        ));
        assert!(matches!(
            sample_tridiagonal(&spec(2.0, 5), 0, 9),
            Err(McError::InvalidReps { .. })
        ));
        assert!(matches!(
            sample_dense(4.0, 5, 2, 9),
            Err(McError::UnsupportedBeta { .. })
        ));
    }

    #[test]
    fn exports_carry_reproducibility_metadata() {
        let batch = sample_tridiagonal(&spec(2.0, 3), 2, 123).unwrap();
        let csv = batch_to_csv(&batch);
        assert!(csv.starts_with("rep,index,eigenvalue\n"));
        assert_eq!(csv.lines().count(), 1 + 2 * 3);
        let sidecar = batch_sidecar_json(&batch);
        assert_eq!(sidecar["seed"], 123);
        assert_eq!(sidecar["sampler"], "tridiagonal");
        let wide = sample_tridiagonal(&spec(2.0, 30), 2, 123).unwrap();
        let hist = edge_histogram(&wide, true, (-6.0, 3.0), 4).unwrap();
        assert!(hist.to_csv().starts_with("bin_left,bin_right,density\n"));
    }
}
