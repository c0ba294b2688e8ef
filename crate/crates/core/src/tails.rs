//! Pareto specifications and the generic log-domain tail representation.
//!
//! A `Par(alpha, b)` variable has survival `P(X >= t) = (b/t)^alpha` for
//! `t >= b`; the symmetrized variant `Par_s(alpha, b)` carries an
//! independent fair sign on the same magnitude law. Every other
//! distribution this crate ships (constructed slowly-varying tails,
//! two-level tails, the Chebyshev tail envelope) is represented by a
//! [`TailFunction`]: the survival function in log-domain,
//! `l -> log g(e^l)` for `l >= log_onset`. Log-domain is not cosmetic —
//! the construction breakpoints reach `exp(4e^4)`, far beyond linear
//! floats.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Parameters of a (possibly symmetrized) Pareto distribution.
///
/// ```
/// use heavytail_core::tails::ParetoSpec;
///
/// let x = ParetoSpec::one_sided(2.0, 1.0).unwrap();
/// assert_eq!(x.tail(2.0), 0.25);
/// assert_eq!(x.moment(1.0).unwrap(), 2.0);
/// assert!(x.moment(2.0).is_err()); // finite iff p < alpha
/// ```
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParetoSpec {
    /// Tail index.
    pub alpha: f64,
    /// Scale / onset of the tail.
    pub b: f64,
    /// Sign-symmetric variant: `P(|X| >= t)` follows the one-sided formula
    /// and the sign is an independent fair coin.
    #[serde(default)]
    pub symmetric: bool,
}

impl ParetoSpec {
    pub fn new(alpha: f64, b: f64, symmetric: bool) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain("ParetoSpec", format!("alpha must be positive, got {alpha}")));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::domain("ParetoSpec", format!("b must be positive, got {b}")));
        }
        Ok(ParetoSpec { alpha, b, symmetric })
    }

    pub fn one_sided(alpha: f64, b: f64) -> Result<Self> {
        Self::new(alpha, b, false)
    }

    pub fn symmetric(alpha: f64, b: f64) -> Result<Self> {
        Self::new(alpha, b, true)
    }

    /// Survival `P(X >= t)` (resp. `P(|X| >= t)` for the symmetric variant).
    /// Total on positive `t`: returns 1 below the onset.
    pub fn tail(&self, t: f64) -> f64 {
        if t <= self.b {
            1.0
        } else {
            (self.b / t).powf(self.alpha)
        }
    }

    /// Exact `E[X^p]` (or `E[|X|^p]`): `b^p * alpha / (alpha - p)`.
    /// Finite exactly when `p < alpha`.
    pub fn moment(&self, p: f64) -> Result<f64> {
        if p >= self.alpha {
            return Err(Error::InfiniteMoment { p, alpha: self.alpha });
        }
        Ok(self.b.powf(p) * self.alpha / (self.alpha - p))
    }

    /// The magnitude law as a generic tail function.
    pub fn tail_function(&self) -> TailFunction {
        let alpha = self.alpha;
        let log_b = self.b.ln();
        TailFunction::new(
            log_b,
            alpha,
            move |l| alpha * (log_b - l),
            Vec::new(),
            Provenance::Pareto,
        )
    }

    /// One draw of the magnitude via the closed-form inverse CDF.
    #[inline]
    fn draw_magnitude(&self, u: f64) -> f64 {
        // P(X >= t) = u  <=>  t = b * u^{-1/alpha}
        self.b * (-u.ln() / self.alpha).exp()
    }
}

/// Where a tail function came from; carried for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Pareto,
    Constructed,
    TwoLevel,
    Custom,
}

/// A survival function in log-domain: `log_survival(l) = log P(X >= e^l)`
/// for `l >= log_onset`, with `log_survival(log_onset) = 0` and values
/// non-increasing and `<= 0` everywhere.
#[derive(Clone)]
pub struct TailFunction {
    log_onset: f64,
    tail_index: f64,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    breakpoints: Vec<f64>,
    provenance: Provenance,
}

impl std::fmt::Debug for TailFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TailFunction")
            .field("log_onset", &self.log_onset)
            .field("tail_index", &self.tail_index)
            .field("breakpoints", &self.breakpoints.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl TailFunction {
    /// `eval` must return `log g(e^l)` for `l >= log_onset`; it is clamped
    /// to `<= 0` and to `0` at/below the onset.
    pub fn new<F>(
        log_onset: f64,
        tail_index: f64,
        eval: F,
        breakpoints: Vec<f64>,
        provenance: Provenance,
    ) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TailFunction {
            log_onset,
            tail_index,
            eval: Arc::new(eval),
            breakpoints,
            provenance,
        }
    }

    pub fn log_onset(&self) -> f64 {
        self.log_onset
    }

    /// Eventual polynomial decay index of the tail (moments exist below it).
    pub fn tail_index(&self) -> f64 {
        self.tail_index
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Log-domain knots where the closed-form expression changes, for
    /// quadrature segmentation. Sorted ascending.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `log P(X >= e^l)`, total on all real `l` (0 below the onset).
    pub fn log_survival(&self, l: f64) -> f64 {
        if l <= self.log_onset {
            0.0
        } else {
            (self.eval)(l).min(0.0)
        }
    }

    /// Linear-domain survival `P(X >= t)`.
    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            1.0
        } else {
            self.log_survival(t.ln()).exp()
        }
    }

    /// Two-level tail `P(X >= x) = max((b/x)^{2 alpha}, (a/x)^alpha * ...)`
    /// i.e. `max(b^{2a}/x^{2a}, a^a/x^a)` for `x >= b`, with `0 < a < b`.
    /// Decays at rate `2 alpha` up to the crossover `b^2/a` and at rate
    /// `alpha` beyond.
    pub fn two_level(alpha: f64, a: f64, b: f64) -> Result<Self> {
        if !(0.0 < a && a < b) {
            return Err(Error::domain("two_level", format!("need 0 < a < b, got a={a}, b={b}")));
        }
        if !(alpha > 0.0) {
            return Err(Error::domain("two_level", format!("alpha must be positive, got {alpha}")));
        }
        let log_a = a.ln();
        let log_b = b.ln();
        let crossover = 2.0 * log_b - log_a;
        Ok(TailFunction::new(
            log_b,
            alpha,
            move |l| (2.0 * alpha * (log_b - l)).max(alpha * (log_a - l)),
            vec![crossover],
            Provenance::TwoLevel,
        ))
    }

    /// The tail envelope produced by Chebyshev optimization over Pareto
    /// moments: `P(Y >= t) = min(1, e alpha log(t/b) (b/t)^alpha)`, which
    /// equals 1 up to `b e^{1/alpha}` and the bound beyond.
    pub fn chebyshev_envelope(alpha: f64, b: f64) -> Result<Self> {
        if !(alpha > 0.0 && b > 0.0) {
            return Err(Error::domain(
                "chebyshev_envelope",
                format!("need positive alpha and b, got alpha={alpha}, b={b}"),
            ));
        }
        let log_b = b.ln();
        let onset = log_b + 1.0 / alpha;
        Ok(TailFunction::new(
            onset,
            alpha,
            move |l| {
                let w = l - log_b;
                1.0 + (alpha * w).ln() - alpha * w
            },
            Vec::new(),
            Provenance::Custom,
        ))
    }

    /// Invert the survival function at `u = e^{log_u}`, returning `log t`
    /// with `log_survival(log t) = log_u` to 1e-12 absolute in
    /// log-probability, by monotone bisection.
    pub fn inverse_tail_log(&self, log_u: f64) -> Result<f64> {
        const TOL: f64 = 1e-12;
        if !(log_u <= 0.0) || log_u.is_nan() {
            return Err(Error::domain(
                "inverse_tail",
                format!("log u must be <= 0, got {log_u}"),
            ));
        }
        if log_u == 0.0 {
            return Ok(self.log_onset);
        }
        // bracket the target: survival is non-increasing from 0 at onset
        let mut lo = self.log_onset;
        let mut f_lo = 0.0f64;
        let mut step = 1.0f64;
        let mut hi;
        let mut f_hi;
        loop {
            hi = lo + step;
            f_hi = self.log_survival(hi);
            if f_hi <= log_u {
                break;
            }
            if f_hi > f_lo + 1e-9 {
                return Err(Error::Invariant(format!(
                    "tail increases near log t = {hi}: {f_hi} > {f_lo}"
                )));
            }
            lo = hi;
            f_lo = f_hi;
            step *= 2.0;
            if step > 1e12 {
                return Err(Error::Invariant(
                    "survival never reaches the requested level".into(),
                ));
            }
        }
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if !(lo < mid && mid < hi) {
                break; // floating-point resolution
            }
            let f_mid = self.log_survival(mid);
            if f_mid > f_lo + 1e-9 || f_mid < f_hi - 1e-9 {
                return Err(Error::Invariant(format!(
                    "non-monotone tail detected during bisection at log t = {mid}"
                )));
            }
            if (f_mid - log_u).abs() <= TOL {
                return Ok(mid);
            }
            if f_mid > log_u {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Linear-probability wrapper around [`Self::inverse_tail_log`].
    pub fn inverse_tail(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) || u > 1.0 || u.is_nan() {
            return Err(Error::domain(
                "inverse_tail",
                format!("u must lie in (0, 1], got {u}"),
            ));
        }
        self.inverse_tail_log(u.ln())
    }

    /// Worst increase of `log_survival` over a uniform log-grid of
    /// `n_points` on `[log_onset, l_max]`. Non-positive means monotone.
    pub fn monotone_violation_on_grid(&self, n_points: usize, l_max: f64) -> f64 {
        let lo = self.log_onset;
        let mut worst = f64::NEG_INFINITY;
        let mut prev = self.log_survival(lo);
        for i in 1..n_points {
            let l = lo + (l_max - lo) * i as f64 / (n_points - 1) as f64;
            let v = self.log_survival(l);
            worst = worst.max(v - prev);
            prev = v;
        }
        worst
    }

    /// Inverse-transform samples; deterministic in `seed`.
    pub fn sample(&self, seed: u64, count: usize) -> Result<SampleBatch> {
        if count == 0 {
            return Err(Error::domain("sample", "count must be >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            let u = 1.0 - rng.random::<f64>(); // (0, 1]
            values.push(self.inverse_tail_log(u.ln())?.exp());
        }
        Ok(SampleBatch {
            values,
            seed,
            count,
            source: format!("tail-function/{:?}", self.provenance),
        })
    }
}

/// Survival of the shifted variable `X - shift`: `P(X - shift >= t)`.
///
/// For `X ~ Par(alpha, b)` and `shift = b` this sits between
/// `2^{-alpha} P(X >= t)` and `P(X >= t)` for all `t >= b`. Shifted
/// variables are deliberately not a distinct type; this helper is enough
/// to move between the "tails log-convex on `[b, inf)`" and "on `[0, inf)`"
/// conventions.
pub fn shifted_survival(tail: &TailFunction, shift: f64, t: f64) -> f64 {
    tail.survival(t + shift)
}

/// A reproducible batch of samples: identical `(seed, count, source)`
/// yields identical values.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub seed: u64,
    pub count: usize,
    pub source: String,
}

/// Survival `P(X >= t)` of a Pareto spec (its magnitude for the symmetric
/// variant). Total on positive reals.
pub fn pareto_tail(spec: &ParetoSpec, t: f64) -> f64 {
    spec.tail(t)
}

/// Exact Pareto moment `b^p alpha/(alpha - p)`; errors when `p >= alpha`.
pub fn pareto_moment(spec: &ParetoSpec, p: f64) -> Result<f64> {
    spec.moment(p)
}

/// Inverse-transform samples from a Pareto spec; symmetric specs get an
/// independent fair sign per sample. Deterministic in `seed`.
pub fn sample_pareto(spec: &ParetoSpec, seed: u64, count: usize) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::domain("sample", "count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        values.push(draw_pareto(spec, &mut rng));
    }
    Ok(SampleBatch {
        values,
        seed,
        count,
        source: format!(
            "pareto(alpha={}, b={}, symmetric={})",
            spec.alpha, spec.b, spec.symmetric
        ),
    })
}

/// One draw from a Pareto spec using the caller's RNG stream.
#[inline]
pub fn draw_pareto<R: Rng>(spec: &ParetoSpec, rng: &mut R) -> f64 {
    let u = 1.0 - rng.random::<f64>(); // (0, 1]
    let magnitude = spec.draw_magnitude(u);
    if spec.symmetric {
        if rng.random::<bool>() {
            magnitude
        } else {
            -magnitude
        }
    } else {
        magnitude
    }
}
