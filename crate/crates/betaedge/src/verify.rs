//! The cross-validation suite: every headline identity of the toolkit as a
//! numbered, self-timing pass/fail check.
//!
//! Each criterion exercises one contract — exact solver output, operator
//! identities, density normalization and ODE residuals, edge-expansion
//! convergence order, gauge fits, Laplace identities, moment structure,
//! Monte Carlo calibration, the N′ edge shift, and special-function accuracy.
//! The fast selection runs everything deterministic-numeric; the full
//! selection adds the Monte Carlo criteria (10 and 11).
//!
//! Checks never panic: failures (including internal errors) are folded into
//! the report so a broken build still produces a complete table.

use crate::combo::{homogeneous_check_numeric, l_op, AiryCombo, HomogeneousPair};
use crate::ensembles::{
    gue_density_raw, global_ode_residual, scaling_map, soft_edge_limit_density, Convention,
    EnsembleError, EnsembleSpec, ScalingKind,
};
use crate::laplace::{laplace_numeric, recursion_residual, u0_closed};
use crate::mc::{edge_histogram, estimate_moment, histogram_l1_distance, sample_dense,
    sample_tridiagonal};
use crate::moments::{duality_check, fit_inverse_power_coefficients, moment_quadrature};
use crate::quad::{adaptive_integrate, QuadratureSpec};
use crate::ratpoly::RationalPoly;
use crate::solver::{solve_order, ExpansionSeries};
use num::{BigRational, ToPrimitive};
use std::time::Instant;

/// Outcome of one numbered criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    /// One-line rendering: `criterion 4: PASS — … (0.52 s)`.
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} — {} [{}] ({:.2} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.label,
            self.seconds
        )
    }
}

/// Which criteria to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    /// All deterministic-numeric criteria (no Monte Carlo).
    Fast,
    /// Everything, including the Monte Carlo criteria.
    Full,
}

/// The criterion ids in a selection, in run order.
pub fn suite_ids(selection: SuiteSelection) -> Vec<usize> {
    match selection {
        SuiteSelection::Fast => vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 12],
        SuiteSelection::Full => (1..=12).collect(),
    }
}

/// Runs a single criterion by id (1–12); `None` for unknown ids.
pub fn run_criterion(id: usize) -> Option<CriterionReport> {
    let (label, body): (&'static str, fn() -> Result<String, String>) = match id {
        1 => ("first-order coefficients exact", c1),
        2 => ("second-order coefficients exact", c2),
        3 => ("homogeneous kernel identities", c3),
        4 => ("density normalization", c4),
        5 => ("density ODE residual", c5),
        6 => ("edge expansion convergence rate", c6),
        7 => ("kernel-constant gauge fit", c7),
        8 => ("Laplace transform identities", c8),
        9 => ("moment closed forms, duality, evenness", c9),
        10 => ("Monte Carlo moment calibration", c10),
        11 => ("effective-size shift at the edge", c11),
        12 => ("special-function accuracy", c12),
        _ => return None,
    };
    let start = Instant::now();
    let outcome = body();
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(CriterionReport {
        id,
        label,
        passed,
        detail,
        seconds,
    })
}

/// Runs a whole selection in order.
pub fn run_suite(selection: SuiteSelection) -> Vec<CriterionReport> {
    suite_ids(selection)
        .into_iter()
        .map(|id| run_criterion(id).expect("suite ids are valid"))
        .collect()
}

/// True iff every report in the slice passed.
pub fn suite_passed(reports: &[CriterionReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

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

fn c1() -> Result<String, String> {
    let start = Instant::now();
    let series = ExpansionSeries::new();
    let r1 = solve_order(&series, 1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    if r1 != frozen_r1() {
        return Err(format!("solver returned {r1}, expected {}", frozen_r1()));
    }
    if elapsed >= 1.0 {
        return Err(format!("exact match but took {elapsed:.2} s (budget 1 s)"));
    }
    Ok(format!(
        "order-1 coefficients match the exact rationals in {elapsed:.3} s"
    ))
}

fn c2() -> Result<String, String> {
    let start = Instant::now();
    let mut series = ExpansionSeries::new();
    series.extend_to(1).map_err(|e| e.to_string())?;
    let r2 = solve_order(&series, 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    if r2 != frozen_r2() {
        return Err(format!("solver returned {r2}, expected {}", frozen_r2()));
    }
    if elapsed >= 5.0 {
        return Err(format!("exact match but took {elapsed:.2} s (budget 5 s)"));
    }
    Ok(format!(
        "order-2 coefficients match the exact rationals in {elapsed:.3} s"
    ))
}

fn c3() -> Result<String, String> {
    let r0 = AiryCombo::r0();
    if !l_op(&r0).is_zero() {
        return Err("operator applied to the leading term is not exactly zero".into());
    }
    let grid = |lo: f64, hi: f64| -> Vec<f64> {
        let count = ((hi - lo) / 0.2).round() as usize + 1;
        (0..count).map(|i| lo + 0.2 * i as f64).collect()
    };
    let cases = [
        (HomogeneousPair::AiAi, -5.0, 3.0),
        (HomogeneousPair::BiBi, -5.0, 1.0),
        (HomogeneousPair::AiBi, -5.0, 2.0),
    ];
    let mut worst = 0.0f64;
    for (which, lo, hi) in cases {
        let res = homogeneous_check_numeric(which, &grid(lo, hi)).map_err(|e| e.to_string())?;
        worst = worst.max(res);
        if res >= 1e-9 {
            return Err(format!(
                "homogeneous residual {res:.2e} on [{lo}, {hi}] exceeds 1e-9"
            ));
        }
    }
    Ok(format!(
        "exact kernel annihilation; worst relative homogeneous residual {worst:.2e}"
    ))
}

fn c4() -> Result<String, String> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for &n in &[1usize, 2, 5, 20, 100] {
        let result = adaptive_integrate(
            |x| gue_density_raw(n, x, 0).unwrap_or(f64::NAN),
            f64::NEG_INFINITY,
            f64::INFINITY,
            &spec,
        )
        .map_err(|e| format!("N={n}: {e}"))?;
        let rel = (result.value - n as f64).abs() / n as f64;
        worst = worst.max(rel);
        if rel >= 1e-10 {
            return Err(format!("N={n}: |mass − N|/N = {rel:.2e} exceeds 1e-10"));
        }
    }
    Ok(format!("unit-eigenvalue mass at all sizes; worst {worst:.2e}"))
}

fn c5() -> Result<String, String> {
    let mut worst = 0.0f64;
    for &n in &[5usize, 20, 50] {
        for i in 0..50 {
            let x = -2.0 + 4.0 * i as f64 / 49.0;
            let (res, scale) = global_ode_residual(n, x).map_err(|e| format!("N={n}: {e}"))?;
            let rel = res.abs() / scale;
            worst = worst.max(rel);
            if rel >= 1e-8 {
                return Err(format!(
                    "N={n}, X={x:.3}: relative residual {rel:.2e} exceeds 1e-8"
                ));
            }
        }
    }
    Ok(format!("analytic-derivative ODE holds; worst {worst:.2e}"))
}

fn edge_density_beta2(n: usize, y: f64) -> Result<f64, EnsembleError> {
    let spec = EnsembleSpec::new(2.0, n, Convention::HermiteWeight)?;
    let map = scaling_map(&spec, ScalingKind::SoftEdge);
    Ok(map.density_factor() * gue_density_raw(n, map.to_raw(y), 0)?)
}

fn sup_error_beta2(series: &ExpansionSeries, n: usize, j_max: usize) -> Result<f64, String> {
    let spec = EnsembleSpec::new(2.0, n, Convention::HermiteWeight).map_err(|e| e.to_string())?;
    let nu = spec.nprime();
    let mut sup = 0.0f64;
    for i in 0..121 {
        let y = -4.0 + 6.0 * i as f64 / 120.0;
        let exact = edge_density_beta2(n, y).map_err(|e| e.to_string())?;
        let model = series
            .eval_partial_sum(nu, y, j_max)
            .map_err(|e| e.to_string())?;
        sup = sup.max((exact - model).abs());
    }
    Ok(sup)
}

fn c6() -> Result<String, String> {
    let mut series = ExpansionSeries::new();
    series.extend_to(2).map_err(|e| e.to_string())?;
    let e64 = sup_error_beta2(&series, 64, 2)?;
    let e128 = sup_error_beta2(&series, 128, 2)?;
    let rate = (e64 / e128).log2();
    if !(1.7..=2.3).contains(&rate) {
        return Err(format!(
            "log2 rate {rate:.4} outside [1.7, 2.3] (sup errors {e64:.3e} → {e128:.3e})"
        ));
    }
    Ok(format!(
        "two-term remainder halves twice per size doubling: rate {rate:.4} (sup {e64:.3e} → {e128:.3e})"
    ))
}

fn c7() -> Result<String, String> {
    let mut series = ExpansionSeries::new();
    series.extend_to(2).map_err(|e| e.to_string())?;
    let y_grid: Vec<f64> = (0..33).map(|i| -3.0 + 0.125 * i as f64).collect();
    let n_list = [100usize, 200, 400];
    let mut cs = Vec::new();
    for j in 1..=2usize {
        let c = series
            .fit_kernel_constant(j, edge_density_beta2, &n_list, &y_grid)
            .map_err(|e| e.to_string())?;
        if c.abs() >= 1e-2 {
            return Err(format!("|c_{j}| = {:.3e} exceeds 1e-2", c.abs()));
        }
        cs.push(c);
    }
    // Synthetic recovery: a deliberately injected kernel multiple must be
    // measured back to tight accuracy.
    let model = series.clone();
    let injected = 0.37f64;
    let probe = move |n: usize, y: f64| -> Result<f64, EnsembleError> {
        let nu = n as f64;
        let base = model.eval_partial_sum(nu, y, 1)?;
        let bump = injected
            * nu.powf(-2.0 / 3.0)
            * AiryCombo::r0().eval(y).map_err(EnsembleError::Airy)?;
        Ok(base + bump)
    };
    let mut synth = series.clone();
    let rec = synth
        .fit_kernel_constant(1, probe, &n_list, &y_grid)
        .map_err(|e| e.to_string())?;
    if (rec - injected).abs() >= 1e-6 {
        return Err(format!("synthetic constant recovered as {rec}, want 0.37 ± 1e-6"));
    }
    Ok(format!(
        "fitted kernel multiples c1 = {:.2e}, c2 = {:.2e}; synthetic 0.37 recovered to {:.1e}",
        cs[0],
        cs[1],
        (rec - injected).abs()
    ))
}

fn c8() -> Result<String, String> {
    let r0 = AiryCombo::r0();
    let mut worst_u0 = 0.0f64;
    for &g in &[0.5f64, 1.0, 2.0] {
        let closed = u0_closed(g).map_err(|e| e.to_string())?;
        let numeric = laplace_numeric(&r0, g, 0).map_err(|e| e.to_string())?;
        let rel = (numeric - closed).abs() / closed.abs();
        worst_u0 = worst_u0.max(rel);
        if rel >= 1e-6 {
            return Err(format!(
                "gamma={g}: transform of leading term off by {rel:.2e} (tolerance 1e-6)"
            ));
        }
    }
    let mut series = ExpansionSeries::new();
    series.extend_to(1).map_err(|e| e.to_string())?;
    let mut worst_rec = 0.0f64;
    for &g in &[1.0f64, 2.0] {
        let check = recursion_residual(1, g, &series).map_err(|e| e.to_string())?;
        let rel = check.residual.abs() / check.scale;
        worst_rec = worst_rec.max(rel);
        if rel >= 1e-5 {
            return Err(format!(
                "gamma={g}: first-order recursion residual {rel:.2e}·scale exceeds 1e-5·scale"
            ));
        }
    }
    Ok(format!(
        "closed form matched to {worst_u0:.1e}; recursion residual ≤ {worst_rec:.1e}·scale"
    ))
}

fn c9() -> Result<String, String> {
    let m2 = moment_quadrature(1, 4).map_err(|e| e.to_string())?;
    if (m2 - 0.5).abs() >= 1e-10 {
        return Err(format!("m2(N=4) = {m2}, want 0.5 ± 1e-10"));
    }
    let m4 = moment_quadrature(2, 2).map_err(|e| e.to_string())?;
    if (m4 - 0.5625).abs() >= 1e-10 {
        return Err(format!("m4(N=2) = {m4}, want 0.5625 ± 1e-10"));
    }
    for &(k, b) in &[(1usize, 1i64), (2, 1), (1, 4), (2, 4)] {
        let beta = BigRational::from_integer(b.into());
        for &n in &[2usize, 5, 10] {
            if !duality_check(k, &beta, n).map_err(|e| e.to_string())? {
                return Err(format!("duality fails at k={k}, beta={b}, n={n}"));
            }
        }
    }
    let sizes = [10usize, 20, 40, 80, 160];
    let mut worst_odd = 0.0f64;
    for k in 1..=2usize {
        let coeffs = fit_inverse_power_coefficients(k, &sizes).map_err(|e| e.to_string())?;
        for (j, c) in coeffs.iter().enumerate() {
            if j % 2 == 1 {
                worst_odd = worst_odd.max(c.abs());
                if c.abs() >= 1e-6 {
                    return Err(format!(
                        "odd inverse-power coefficient a_{j} = {c:.2e} at k={k} exceeds 1e-6"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "quadrature, duality, and even 1/N structure hold; worst odd coefficient {worst_odd:.1e}"
    ))
}

fn closed_m_f64(k: usize, beta: f64, n: usize) -> Result<f64, String> {
    let beta_rat = BigRational::new(((beta * 2.0).round() as i64).into(), 2.into());
    let m = crate::moments::moment_closed_form(k, &beta_rat, n).map_err(|e| e.to_string())?;
    m.to_f64().ok_or_else(|| "moment out of f64 range".to_string())
}

fn c10() -> Result<String, String> {
    let mut details = Vec::new();
    for (i, &beta) in [1.0f64, 2.0, 4.0].iter().enumerate() {
        let spec = EnsembleSpec::new(beta, 100, Convention::BetaCanonical)
            .map_err(|e| e.to_string())?;
        let batch =
            sample_tridiagonal(&spec, 2000, 1001 + i as u64).map_err(|e| e.to_string())?;
        let (value, stderr) = estimate_moment(&batch, 1).map_err(|e| e.to_string())?;
        let se = stderr.ok_or("stderr undefined")?;
        let expect = closed_m_f64(1, beta, 100)?;
        let pulls = (value - expect).abs() / se;
        if pulls >= 4.0 {
            return Err(format!(
                "beta={beta}: empirical m2 = {value:.6} vs {expect:.6} is {pulls:.1} standard errors away"
            ));
        }
        details.push(format!("beta {beta}: {pulls:.1}σ"));
    }
    for (i, &beta) in [1.0f64, 2.0].iter().enumerate() {
        let spec = EnsembleSpec::new(beta, 50, Convention::BetaCanonical)
            .map_err(|e| e.to_string())?;
        let tri = sample_tridiagonal(&spec, 2000, 2001 + i as u64).map_err(|e| e.to_string())?;
        let den = sample_dense(beta, 50, 2000, 3001 + i as u64).map_err(|e| e.to_string())?;
        let (v1, s1) = estimate_moment(&tri, 1).map_err(|e| e.to_string())?;
        let (v2, s2) = estimate_moment(&den, 1).map_err(|e| e.to_string())?;
        let combined = (s1.ok_or("stderr")?.powi(2) + s2.ok_or("stderr")?.powi(2)).sqrt();
        let pulls = (v1 - v2).abs() / combined;
        if pulls >= 4.0 {
            return Err(format!(
                "beta={beta}: tridiagonal vs dense m2 differ by {pulls:.1} combined σ"
            ));
        }
        details.push(format!("tri↔dense beta {beta}: {pulls:.1}σ"));
    }
    Ok(details.join(", "))
}

fn c11() -> Result<String, String> {
    let spec =
        EnsembleSpec::new(1.0, 50, Convention::BetaCanonical).map_err(|e| e.to_string())?;
    let reference =
        |y: f64| -> Result<f64, EnsembleError> { soft_edge_limit_density(1.0, y) };
    let mut wins = 0usize;
    let mut margins = Vec::new();
    for seed in 1..=10u64 {
        let batch = sample_tridiagonal(&spec, 100_000, seed).map_err(|e| e.to_string())?;
        let with_n = edge_histogram(&batch, false, (-6.0, 3.0), 60).map_err(|e| e.to_string())?;
        let with_np = edge_histogram(&batch, true, (-6.0, 3.0), 60).map_err(|e| e.to_string())?;
        let l1_n = histogram_l1_distance(&with_n, reference).map_err(|e| e.to_string())?;
        let l1_np = histogram_l1_distance(&with_np, reference).map_err(|e| e.to_string())?;
        if l1_np < l1_n {
            wins += 1;
        }
        margins.push(format!("{:.3}/{:.3}", l1_np, l1_n));
    }
    if wins < 8 {
        return Err(format!(
            "shifted scaling won only {wins}/10 seeds (L1 shifted/plain: {})",
            margins.join(" ")
        ));
    }
    Ok(format!(
        "shifted scaling closer to the limit curve in {wins}/10 seeds"
    ))
}

/// Frozen 30-digit Airy oracle on 25 equally spaced points of [−10, 5].
#[allow(clippy::excessive_precision)]
const AIRY_ORACLE: [(f64, f64, f64, f64, f64); 25] = [
    (-10.0, 0.0402412384864431906894303140299, 0.996265044132790055904572541289, -0.314679829643838633161754211502, 0.119414113399909238277525336682),
    (-9.375, 0.282629864394676325475513881108, -0.467498609224940620905117155366, 0.155113844053230099963174388061, 0.869668817001354040849016326205),
    (-8.75, -0.238230038459635514418942607485, -0.673856186120668604462563929064, 0.225454796889457564692403633894, -0.698424840482248325197464674379),
    (-8.125, -0.163933572159180733750501865556, 0.825088668939481417928905691161, -0.29114251375899350601247862812, -0.476360613668935567279262837229),
    (-7.5, 0.32177571638064787526732854368, 0.318809506698554596210062906079, -0.112463485076490806384320815054, 0.877802281545760922367581258916),
    (-6.875, 0.0797089195219056059919028308553, -0.88665494926064836943352853726, 0.339097875077039640140448385835, 0.22139400544897162065433357589),
    (-6.25, -0.349612051610890509854642947549, -0.191086259523417154368557740364, 0.0708168993275164905309089418366, -0.871759850313910747444806320787),
    (-5.625, -0.0894493702164683485799902467478, 0.838958964955107938044345219691, -0.355097829476669743471634890993, -0.228032669865383626526701145853),
    (-5.0, 0.350761009024114319788016327697, 0.327192818554443136794878677427, -0.138369134901600576850029175603, 0.778411773001899246094423209904),
    (-4.375, 0.217368664623243270858926847613, -0.66559516464552480408542172384, 0.323510490594039081572011044705, 0.473770532246646321579108488235),
    (-3.75, -0.251612703014222730332697741609, -0.632453966261176353332443397096, 0.317185429299666696797709634466, -0.467801116449629825671663550803),
    (-3.125, -0.408858419882010305759276779509, 0.163174938932596716857341357969, -0.109816908767010306930082159196, -0.734705473079543999150600109259),
    (-2.5, -0.11232506769296608918746310014, 0.678852734264794363372140030823, -0.432422471840705293028419503692, -0.220420154874629587683398427534),
    (-1.875, 0.300830033002046580684670453553, 0.554226687042588428413172219952, -0.371336676897337085189256147715, 0.373982573637553231589253786402),
    (-1.25, 0.520045477435299182695547873219, 0.139079563351917750712737311696, -0.0458674687274269062017723114108, 0.599814193557583362384545752284),
    (-0.625, 0.499189237541530775853974484493, -0.169751520582715502294995389831, 0.31559514727181073640059833077, 0.53033421022793899859353293234),
    (0.0, 0.355028053887817239260063186004, -0.258819403792806798405183560189, 0.614926627446000735150922369094, 0.448288357353826357914823710399),
    (0.625, 0.204519775895286501958218954426, -0.209621499334079365909638117535, 0.926066102230106031204252238416, 0.607210333613078787080667473389),
    (1.25, 0.0996445447569166714746010189624, -0.126486620685389377218292315898, 1.48438827549510612118230153794, 1.31020348128330095051658047101),
    (1.875, 0.0421296362449983501904336914958, -0.0623882806844205424095758715734, 2.83350636440709480637235289359, 3.35944737279500302438909326252),
    (2.5, 0.0157259233804704899952660465408, -0.0262508810359032303648954962972, 6.48166073846057860807261295749, 9.42142331733430175558230888573),
    (3.125, 0.00524736275435263757262336259502, -0.00965775060690643641105321351872, 17.2604116502426804936545265467, 28.8932063954303221391073907826),
    (3.75, 0.00158007171792101325784571913825, -0.00315751475323978419203009629277, 52.1832384814703575758865238812, 97.1731466776328787905522235454),
    (4.375, 0.000432593740888198373602881276559, -0.000928089903713793158048937052151, 176.239188650672621699814596265, 357.712236521664560944162657251),
    (5.0, 0.000108344428136074417349865025033, -0.000247413890868462476000236172063, 657.792044171171182441080578874, 1435.819080217982518671721238),
];

#[allow(clippy::excessive_precision)]
fn c12() -> Result<String, String> {
    let mut worst = 0.0f64;
    for &(y, ai, aip, bi, bip) in &AIRY_ORACLE {
        let v = crate::airy::airy_eval(y).map_err(|e| e.to_string())?;
        for (got, want, name) in [
            (v.ai, ai, "Ai"),
            (v.ai_prime, aip, "Ai'"),
            (v.bi, bi, "Bi"),
            (v.bi_prime, bip, "Bi'"),
        ] {
            let tol = 1e-12 * want.abs().max(1.0);
            let err = (got - want).abs();
            worst = worst.max(err / want.abs().max(1.0));
            if err >= tol {
                return Err(format!("{name}({y}) = {got:.15e}, want {want:.15e}"));
            }
        }
    }
    // Oscillator-function spot checks against arbitrary-precision values and
    // the elementary closed forms at degrees 0 and 1.
    let quarter_root_pi = 0.751125544464942482858703004776; // π^{−1/4}
    let checks: [(usize, f64, f64); 4] = [
        (0, 0.0, quarter_root_pi),
        (0, 0.7, quarter_root_pi * (-0.245f64).exp()),
        (1, 0.7, std::f64::consts::SQRT_2 * 0.7 * quarter_root_pi * (-0.245f64).exp()),
        (25, 1.3, 0.057311020761544652187593419445),
    ];
    let mut worst_psi = 0.0f64;
    for &(n, x, want) in &checks {
        let got = crate::hermite::hermite_psi_eval(n, x)
            .map_err(|e| e.to_string())?
            .psi;
        let rel = (got - want).abs() / want.abs();
        worst_psi = worst_psi.max(rel);
        if rel >= 1e-12 {
            return Err(format!("psi_{n}({x}) = {got:.15e}, want {want:.15e}"));
        }
    }
    let dpsi = crate::hermite::hermite_psi_eval(25, 1.3)
        .map_err(|e| e.to_string())?
        .psi_prime;
    let want_d = -2.07503757969119240344048698324;
    if (dpsi - want_d).abs() / want_d.abs() >= 1e-12 {
        return Err(format!("psi_25'(1.3) = {dpsi:.15e}, want {want_d:.15e}"));
    }
    Ok(format!(
        "Airy quadruple within 1e-12 at 25 points (worst {worst:.1e}); oscillator values within 1e-12 (worst {worst_psi:.1e})"
    ))
}
