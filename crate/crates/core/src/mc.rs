//! Seeded, chunk-reproducible Monte Carlo harness.
//!
//! Sampling is split into chunks; chunk `c` draws from an independent
//! ChaCha stream derived from `(master seed, c)`, so the result depends on
//! `(master_seed, chunk_size)` but not on scheduling: chunks are evaluated
//! (possibly in parallel) and merged in index order. Exceedance counting,
//! quantile thresholds, Wilson intervals, L^p tables, log-log slope fits
//! and bound dominance checks all run off the merged value vector.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chaos::{self, CoefficientTensor, GroupedCoefficients, MomentTable};
use crate::descriptor::{Dist, DistDescriptor};
use crate::error::{Error, Result};
use crate::par;

/// Two-sided 99% normal quantile used for Wilson intervals.
pub const Z99: f64 = 2.5758293035489004;

/// Score-based binomial interval; stable for the handful of exceedances
/// that survive in the deep tail.
pub fn wilson_interval(count: u64, n: u64, z: f64) -> (f64, f64) {
    let n = n as f64;
    let p_hat = count as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// What gets evaluated on each sampled vector.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionalSpec {
    /// `sum_i a_i X_i`.
    Linear { weights: Vec<f64> },
    /// A chaos over the tensor; `recentered` uses the grouped centered
    /// powers (exact Pareto moments), otherwise the tensor must have zero
    /// generalized diagonal.
    Chaos {
        tensor: TensorRef,
        #[serde(default)]
        recentered: bool,
    },
}

/// Tensor payload of a chaos functional, inline or on disk.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TensorRef {
    Inline { d: usize, n: usize, entries: Vec<f64> },
    Path { path: String },
}

impl TensorRef {
    pub fn load(&self) -> Result<CoefficientTensor> {
        match self {
            TensorRef::Inline { d, n, entries } => {
                CoefficientTensor::new(*d, *n, entries.clone())
            }
            TensorRef::Path { path } => chaos::io::load_tensor(std::path::Path::new(path)),
        }
    }
}

/// Threshold grid specification.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdSpec {
    /// Empirical quantiles at the given CDF levels (e.g. 0.9, 0.99, ...).
    Quantiles { levels: Vec<f64> },
    /// Geometric grid of `count` thresholds between the empirical
    /// quantiles at `lo_level` and `hi_level`, the upper end capped below
    /// the top ten order statistics.
    GeometricBetweenQuantiles {
        lo_level: f64,
        hi_level: f64,
        count: usize,
    },
    /// Explicit thresholds (must lie inside the observed range unless
    /// `allow_extrapolation`).
    Explicit {
        thresholds: Vec<f64>,
        #[serde(default)]
        allow_extrapolation: bool,
    },
}

impl Default for ThresholdSpec {
    fn default() -> Self {
        ThresholdSpec::Quantiles {
            levels: vec![0.9, 0.99, 0.999, 0.9999, 0.99999],
        }
    }
}

/// Full experiment description; serializable for reproducibility.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ExperimentConfig {
    pub distribution: DistDescriptor,
    pub functional: FunctionalSpec,
    pub sample_count: usize,
    pub master_seed: u64,
    pub chunk_size: usize,
    #[serde(default)]
    pub thresholds: ThresholdSpec,
    #[serde(default)]
    pub p_grid: Vec<f64>,
    /// Formula ids this experiment is meant to be compared against
    /// (metadata; the comparison itself happens downstream).
    #[serde(default)]
    pub comparisons: Vec<String>,
    /// Count exceedances of `|f|` (two-sided) or of `f` itself.
    #[serde(default = "default_true")]
    pub two_sided: bool,
}

fn default_true() -> bool {
    true
}

/// Empirical tail estimates with Wilson 99% intervals.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EmpiricalTail {
    pub thresholds: Vec<f64>,
    pub counts: Vec<u64>,
    pub n: u64,
    pub estimates: Vec<f64>,
    pub ci_lo: Vec<f64>,
    pub ci_hi: Vec<f64>,
}

/// One row of the empirical L^p table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LpEntry {
    pub p: f64,
    /// Monte Carlo estimate of `E|f|^p`.
    pub moment: f64,
    /// Standard error of the moment estimate.
    pub std_error: f64,
    /// `moment^{1/p}`.
    pub lp_norm: f64,
    /// `p` at or above the theoretical divergence point `alpha/k*`; the
    /// estimate is kept for diagnostics.
    pub divergent_by_theory: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ExperimentMetadata {
    pub master_seed: u64,
    pub chunk_size: usize,
    pub sample_count: usize,
    pub distribution: DistDescriptor,
    pub tail_index: f64,
    /// `alpha/k*` for the functional (its theoretical moment ceiling).
    pub moment_ceiling: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ExperimentResult {
    pub tail: EmpiricalTail,
    pub lp_table: Vec<LpEntry>,
    pub metadata: ExperimentMetadata,
    /// Raw functional values in chunk order; kept for follow-up analysis,
    /// not serialized.
    #[serde(skip)]
    pub values: Vec<f64>,
}

enum Evaluator {
    Linear(Vec<f64>),
    /// Quadratic form minus `m2 trace(A)`; valid when first moments vanish
    /// or the tensor is diagonal-only.
    Quadratic { a: CoefficientTensor, centering: f64 },
    Grouped { grouped: GroupedCoefficients, moments: MomentTable },
    Multilinear(CoefficientTensor),
}

impl Evaluator {
    fn dimension(&self) -> usize {
        match self {
            Evaluator::Linear(w) => w.len(),
            Evaluator::Quadratic { a, .. } => a.n(),
            Evaluator::Grouped { grouped, .. } => grouped.n,
            Evaluator::Multilinear(a) => a.n(),
        }
    }

    fn eval(&self, x: &[f64]) -> Result<f64> {
        match self {
            Evaluator::Linear(w) => Ok(w.iter().zip(x).map(|(&a, &v)| a * v).sum()),
            Evaluator::Quadratic { a, centering } => {
                Ok(chaos::evaluate_multilinear_unchecked(a, x) - centering)
            }
            Evaluator::Grouped { grouped, moments } => grouped.evaluate(x, moments),
            Evaluator::Multilinear(a) => Ok(chaos::evaluate_multilinear_unchecked(a, x)),
        }
    }

    fn k_star(&self) -> usize {
        match self {
            Evaluator::Linear(_) => 1,
            Evaluator::Multilinear(_) => 1,
            Evaluator::Quadratic { a, .. } => chaos::decompose(a).k_star.max(1),
            Evaluator::Grouped { grouped, .. } => grouped
                .map
                .keys()
                .map(|k| k.multiplicities.first().copied().unwrap_or(1))
                .max()
                .unwrap_or(1),
        }
    }
}

fn build_evaluator(config: &ExperimentConfig, dist: &Dist) -> Result<Evaluator> {
    match &config.functional {
        FunctionalSpec::Linear { weights } => {
            if weights.is_empty() {
                return Err(Error::Input("linear functional needs weights".into()));
            }
            Ok(Evaluator::Linear(weights.clone()))
        }
        FunctionalSpec::Chaos { tensor, recentered } => {
            let a = tensor.load()?;
            if !recentered {
                if !a.has_generalized_diagonal_zero() {
                    return Err(Error::Precondition {
                        op: "run_experiment",
                        message: "non-recentered chaos requires zero generalized diagonal".into(),
                    });
                }
                return Ok(Evaluator::Multilinear(a));
            }
            let k_star = chaos::decompose(&a).k_star.max(1);
            let spec = match dist {
                Dist::Pareto(spec) => *spec,
                Dist::Constructed(_) => {
                    return Err(Error::Input(
                        "recentered chaos over constructed tails is not supported; exact moments are unavailable".into(),
                    ))
                }
            };
            let moments = MomentTable::pareto(&spec, k_star)?;
            if a.d() == 2 {
                let diag_only = chaos::decompose(&a).parts[0].hs_norm() == 0.0;
                let m1 = moments.get(1)?;
                if m1 == 0.0 || diag_only {
                    let trace: f64 = a.diagonal()?.iter().sum();
                    let m2 = moments.get(2.min(k_star))?;
                    let centering = if k_star == 2 { m2 * trace } else { 0.0 };
                    return Ok(Evaluator::Quadratic { a, centering });
                }
            }
            Ok(Evaluator::Grouped {
                grouped: chaos::group_coefficients(&a),
                moments,
            })
        }
    }
}

fn compute_chunk(
    dist: &Dist,
    evaluator: &Evaluator,
    master_seed: u64,
    chunk_index: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(chunk_index as u64);
    let dim = evaluator.dimension();
    let mut x = vec![0.0f64; dim];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        for slot in x.iter_mut() {
            *slot = dist.draw(&mut rng)?;
        }
        out.push(evaluator.eval(&x)?);
    }
    Ok(out)
}

/// Run the experiment: deterministic in `(master_seed, chunk_size)`,
/// independent of chunk scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    if config.sample_count < 1000 {
        return Err(Error::Input(format!(
            "sample_count must be >= 1000, got {}",
            config.sample_count
        )));
    }
    if config.chunk_size == 0 {
        return Err(Error::Input("chunk_size must be positive".into()));
    }
    let dist = config.distribution.build()?;
    let evaluator = build_evaluator(config, &dist)?;

    let mut warnings = Vec::new();
    let k_star = evaluator.k_star();
    let alpha = dist.tail_index();
    let moment_ceiling = alpha / k_star as f64;
    if moment_ceiling <= 2.0 {
        warnings.push(format!(
            "chaos hypothesis alpha > 2 k* fails: alpha = {alpha}, k* = {k_star}"
        ));
    }
    if matches!(&config.functional, FunctionalSpec::Chaos { .. }) && !dist.is_centered() {
        if let Evaluator::Multilinear(_) = evaluator {
            warnings.push("multilinear chaos over non-centered components".into());
        }
    }

    let n = config.sample_count;
    let chunk_size = config.chunk_size;
    let n_chunks = n.div_ceil(chunk_size);
    let chunks: Vec<Result<Vec<f64>>> = par::map_indexed(n_chunks, |c| {
        let count = if c + 1 == n_chunks { n - c * chunk_size } else { chunk_size };
        compute_chunk(&dist, &evaluator, config.master_seed, c, count)
    });
    let mut values = Vec::with_capacity(n);
    for chunk in chunks {
        values.extend(chunk?);
    }

    let magnitudes: Vec<f64> = if config.two_sided {
        values.iter().map(|v| v.abs()).collect()
    } else {
        values.clone()
    };
    let mut sorted = magnitudes.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let thresholds = build_thresholds(&config.thresholds, &sorted)?;
    let tail = empirical_tail(&magnitudes, &thresholds);

    let mut lp_table = Vec::with_capacity(config.p_grid.len());
    for &p in &config.p_grid {
        if !(p > 0.0) {
            return Err(Error::Input(format!("p grid entries must be positive, got {p}")));
        }
        let powered: Vec<f64> = values.iter().map(|v| v.abs().powf(p)).collect();
        let mean = powered.iter().sum::<f64>() / n as f64;
        let var = powered.iter().map(|&w| (w - mean) * (w - mean)).sum::<f64>() / (n as f64 - 1.0);
        lp_table.push(LpEntry {
            p,
            moment: mean,
            std_error: (var / n as f64).sqrt(),
            lp_norm: mean.powf(1.0 / p),
            divergent_by_theory: p >= moment_ceiling,
        });
    }

    Ok(ExperimentResult {
        tail,
        lp_table,
        metadata: ExperimentMetadata {
            master_seed: config.master_seed,
            chunk_size,
            sample_count: n,
            distribution: config.distribution.clone(),
            tail_index: alpha,
            moment_ceiling,
            warnings,
        },
        values,
    })
}

fn quantile(sorted: &[f64], level: f64) -> f64 {
    let n = sorted.len();
    let idx = ((level * n as f64).floor() as usize).min(n - 1);
    sorted[idx]
}

fn build_thresholds(spec: &ThresholdSpec, sorted_magnitudes: &[f64]) -> Result<Vec<f64>> {
    let n = sorted_magnitudes.len();
    let thresholds = match spec {
        ThresholdSpec::Quantiles { levels } => {
            let mut t: Vec<f64> = levels
                .iter()
                .map(|&q| {
                    if !(0.0 < q && q < 1.0) {
                        Err(Error::Input(format!("quantile level {q} outside (0,1)")))
                    } else {
                        Ok(quantile(sorted_magnitudes, q))
                    }
                })
                .collect::<Result<_>>()?;
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            t.dedup();
            t
        }
        ThresholdSpec::GeometricBetweenQuantiles { lo_level, hi_level, count } => {
            if *count < 2 {
                return Err(Error::Input("geometric threshold grid needs count >= 2".into()));
            }
            let lo = quantile(sorted_magnitudes, *lo_level);
            // exclude the top ten order statistics from the window
            let cap = sorted_magnitudes[n.saturating_sub(11)];
            let hi = quantile(sorted_magnitudes, *hi_level).min(cap);
            if !(lo > 0.0 && hi > lo) {
                return Err(Error::Data(format!(
                    "degenerate threshold window [{lo}, {hi}]"
                )));
            }
            (0..*count)
                .map(|k| lo * (hi / lo).powf(k as f64 / (*count - 1) as f64))
                .collect()
        }
        ThresholdSpec::Explicit { thresholds, allow_extrapolation } => {
            let max = sorted_magnitudes[n - 1];
            if !allow_extrapolation && thresholds.iter().any(|&t| t > max) {
                return Err(Error::Input(format!(
                    "explicit threshold beyond the observed range (max |f| = {max}); set allow_extrapolation"
                )));
            }
            let mut t = thresholds.clone();
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            t
        }
    };
    if thresholds.is_empty() {
        return Err(Error::Input("no thresholds".into()));
    }
    Ok(thresholds)
}

fn empirical_tail(magnitudes: &[f64], thresholds: &[f64]) -> EmpiricalTail {
    let n = magnitudes.len() as u64;
    let counts: Vec<u64> = thresholds
        .iter()
        .map(|&t| magnitudes.iter().filter(|&&v| v >= t).count() as u64)
        .collect();
    let estimates: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let (ci_lo, ci_hi): (Vec<f64>, Vec<f64>) =
        counts.iter().map(|&c| wilson_interval(c, n, Z99)).unzip();
    EmpiricalTail {
        thresholds: thresholds.to_vec(),
        counts,
        n,
        estimates,
        ci_lo,
        ci_hi,
    }
}

/// Least-squares slope of `log estimate` against `log threshold` over the
/// points whose estimates fall in the survival window
/// `[lo_survival, hi_survival]`.
pub fn tail_slope(emp: &EmpiricalTail, lo_survival: f64, hi_survival: f64) -> Result<f64> {
    if !(lo_survival < hi_survival) {
        return Err(Error::Input("need lo_survival < hi_survival".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..emp.thresholds.len() {
        if emp.counts[i] > 0
            && emp.estimates[i] >= lo_survival
            && emp.estimates[i] <= hi_survival
            && emp.thresholds[i] > 0.0
        {
            xs.push(emp.thresholds[i].ln());
            ys.push(emp.estimates[i].ln());
        }
    }
    if xs.len() < 8 {
        return Err(Error::Data(format!(
            "only {} thresholds with exceedances in the window; need >= 8",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|&x| (x - mean_x) * (x - mean_x)).sum();
    if sxx < 1e-18 {
        return Err(Error::Data("threshold grid is degenerate (constant samples?)".into()));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| (x - mean_x) * (y - mean_y))
        .sum();
    Ok(sxy / sxx)
}

/// Per-threshold comparison of a bound curve against the lower confidence
/// edge of an empirical tail.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DominanceReport {
    pub thresholds: Vec<f64>,
    pub bound: Vec<f64>,
    pub ci_lo: Vec<f64>,
    pub dominates: Vec<bool>,
    pub pass_fraction: f64,
}

pub fn dominance_check(
    bound: &crate::chaos::bounds::BoundCurve,
    emp: &EmpiricalTail,
) -> Result<DominanceReport> {
    if bound.thresholds.len() != emp.thresholds.len()
        || bound
            .thresholds
            .iter()
            .zip(&emp.thresholds)
            .any(|(&a, &b)| (a - b).abs() > 1e-9 * b.abs().max(1.0))
    {
        return Err(Error::Input("bound and empirical grids are not aligned".into()));
    }
    let dominates: Vec<bool> = bound
        .values
        .iter()
        .zip(&emp.ci_lo)
        .map(|(&b, &lo)| b >= lo)
        .collect();
    let pass = dominates.iter().filter(|&&d| d).count();
    Ok(DominanceReport {
        thresholds: emp.thresholds.clone(),
        bound: bound.values.clone(),
        ci_lo: emp.ci_lo.clone(),
        dominates: dominates.clone(),
        pass_fraction: pass as f64 / dominates.len() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn linear_config(n_samples: usize) -> ExperimentConfig {
        ExperimentConfig {
            distribution: DistDescriptor::Pareto {
                alpha: 3.0,
                b: 1.0,
                symmetric: true,
            },
            functional: FunctionalSpec::Linear { weights: vec![1.0] },
            sample_count: n_samples,
            master_seed: 42,
            chunk_size: 1024,
            thresholds: ThresholdSpec::default(),
            p_grid: vec![1.0, 2.0],
            comparisons: vec![],
            two_sided: true,
        }
    }

    #[test]
    fn wilson_contains_point_estimate() {
        for (count, n) in [(0u64, 100u64), (1, 100), (50, 100), (100, 100), (3, 1_000_000)] {
            let (lo, hi) = wilson_interval(count, n, Z99);
            let p = count as f64 / n as f64;
            assert!(lo <= p && p <= hi, "count={count} n={n}");
            assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
    }

    #[test]
    fn wilson_coverage_on_synthetic_bernoulli() {
        // 99% interval must cover the truth in >= 97% of 500 replications
        let q = 0.05;
        let n = 1000usize;
        let mut covered = 0;
        for rep in 0..500u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + rep);
            let count = (0..n).filter(|_| rng.random::<f64>() < q).count() as u64;
            let (lo, hi) = wilson_interval(count, n as u64, Z99);
            if lo <= q && q <= hi {
                covered += 1;
            }
        }
        assert!(covered >= 485, "coverage {covered}/500");
    }

    #[test]
    fn reruns_are_bit_identical() {
        let config = linear_config(5000);
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.tail.counts, b.tail.counts);
    }

    #[test]
    fn chunk_completion_order_is_irrelevant() {
        let config = linear_config(5000);
        let dist = config.distribution.build().unwrap();
        let evaluator = build_evaluator(&config, &dist).unwrap();
        let n_chunks = config.sample_count.div_ceil(config.chunk_size);
        let mut reversed: Vec<(usize, Vec<f64>)> = (0..n_chunks)
            .rev()
            .map(|c| {
                let count = if c + 1 == n_chunks {
                    config.sample_count - c * config.chunk_size
                } else {
                    config.chunk_size
                };
                (c, compute_chunk(&dist, &evaluator, config.master_seed, c, count).unwrap())
            })
            .collect();
        reversed.sort_by_key(|&(c, _)| c);
        let merged: Vec<f64> = reversed.into_iter().flat_map(|(_, v)| v).collect();
        let straight = run_experiment(&config).unwrap();
        assert_eq!(merged, straight.values);
    }

    #[test]
    fn single_coordinate_tail_matches_pareto() {
        // d=1, a = e_1: empirical tail at t must cover (b/t)^alpha
        let mut config = linear_config(100_000);
        config.thresholds = ThresholdSpec::Explicit {
            thresholds: vec![1.5, 2.0, 3.0, 5.0],
            allow_extrapolation: false,
        };
        let result = run_experiment(&config).unwrap();
        for (i, &t) in result.tail.thresholds.iter().enumerate() {
            let truth = (1.0f64 / t).powf(3.0);
            assert!(
                result.tail.ci_lo[i] <= truth && truth <= result.tail.ci_hi[i],
                "t = {t}"
            );
        }
    }

    #[test]
    fn lp_entry_flags_divergent_orders() {
        let mut config = linear_config(2000);
        config.p_grid = vec![2.0, 3.0, 4.0];
        let result = run_experiment(&config).unwrap();
        assert!(!result.lp_table[0].divergent_by_theory);
        assert!(result.lp_table[1].divergent_by_theory);
        assert!(result.lp_table[2].divergent_by_theory);
    }

    #[test]
    fn lp_estimate_matches_exact_moment() {
        let mut config = linear_config(200_000);
        config.distribution = DistDescriptor::Pareto {
            alpha: 5.0,
            b: 1.0,
            symmetric: true,
        };
        config.p_grid = vec![2.0];
        let result = run_experiment(&config).unwrap();
        let entry = &result.lp_table[0];
        let exact = 5.0 / 3.0;
        assert!(
            (entry.moment - exact).abs() <= 3.0 * entry.std_error,
            "{} vs {exact} (se {})",
            entry.moment,
            entry.std_error
        );
    }

    #[test]
    fn diagonal_chaos_slope_near_half_alpha() {
        // A = I, one-sided Par(5,1): sum (X_i^2 - m2) has slope ~ -2.5
        let n_var = 20;
        let mut entries = vec![0.0; n_var * n_var];
        for i in 0..n_var {
            entries[i * n_var + i] = 1.0;
        }
        let config = ExperimentConfig {
            distribution: DistDescriptor::Pareto {
                alpha: 5.0,
                b: 1.0,
                symmetric: false,
            },
            functional: FunctionalSpec::Chaos {
                tensor: TensorRef::Inline {
                    d: 2,
                    n: n_var,
                    entries,
                },
                recentered: true,
            },
            sample_count: 200_000,
            master_seed: 7,
            chunk_size: 4096,
            thresholds: ThresholdSpec::GeometricBetweenQuantiles {
                lo_level: 0.99,
                hi_level: 0.9999,
                count: 24,
            },
            p_grid: vec![],
            comparisons: vec![],
            two_sided: false,
        };
        let result = run_experiment(&config).unwrap();
        let slope = tail_slope(&result.tail, 1e-5, 2e-2).unwrap();
        assert!(
            (slope + 2.5).abs() < 0.8,
            "slope {slope} too far from -2.5"
        );
    }

    #[test]
    fn slope_errors_on_degenerate_data() {
        let emp = empirical_tail(&vec![1.0; 1000], &[1.0]);
        assert!(tail_slope(&emp, 1e-5, 1.0).is_err());
    }

    #[test]
    fn explicit_thresholds_respect_range() {
        let mut config = linear_config(2000);
        config.thresholds = ThresholdSpec::Explicit {
            thresholds: vec![1e9],
            allow_extrapolation: false,
        };
        assert!(run_experiment(&config).is_err());
        config.thresholds = ThresholdSpec::Explicit {
            thresholds: vec![1e9],
            allow_extrapolation: true,
        };
        assert!(run_experiment(&config).is_ok());
    }

    #[test]
    fn dominance_check_alignment_and_pass() {
        let magnitudes: Vec<f64> = (1..=1000).map(|i| i as f64 / 100.0).collect();
        let emp = empirical_tail(&magnitudes, &[2.0, 5.0, 9.0]);
        let curve = crate::chaos::bounds::BoundCurve::new(
            "test",
            vec![2.0, 5.0, 9.0],
            vec![1.0, 1.0, 1.0],
            serde_json::json!({}),
        )
        .unwrap();
        let report = dominance_check(&curve, &emp).unwrap();
        assert_eq!(report.pass_fraction, 1.0);

        let misaligned = crate::chaos::bounds::BoundCurve::new(
            "test",
            vec![2.0, 5.0],
            vec![1.0, 1.0],
            serde_json::json!({}),
        )
        .unwrap();
        assert!(dominance_check(&misaligned, &emp).is_err());
    }

    #[test]
    fn sample_count_floor() {
        let config = linear_config(10);
        assert!(run_experiment(&config).is_err());
    }

    #[test]
    fn hypothesis_warning_attached_when_ceiling_too_low() {
        // diagonal d=2 over Par(3,1): alpha/k* = 1.5 <= 2
        let mut entries = vec![0.0; 4];
        entries[0] = 1.0;
        entries[3] = 1.0;
        let config = ExperimentConfig {
            distribution: DistDescriptor::Pareto {
                alpha: 3.0,
                b: 1.0,
                symmetric: false,
            },
            functional: FunctionalSpec::Chaos {
                tensor: TensorRef::Inline { d: 2, n: 2, entries },
                recentered: true,
            },
            sample_count: 2000,
            master_seed: 1,
            chunk_size: 512,
            thresholds: ThresholdSpec::default(),
            p_grid: vec![],
            comparisons: vec![],
            two_sided: false,
        };
        let result = run_experiment(&config).unwrap();
        assert!(result
            .metadata
            .warnings
            .iter()
            .any(|w| w.contains("alpha > 2 k*")));
    }
}
