//! Slowly-varying tail constructions with oscillating normalized tails.
//!
//! The tails have the form `g(t) = t^{-alpha} L(t)` with
//! `L(t) = exp(int_1^t eps(s)/s ds)` and a block-structured `eps`: on the
//! n-th block the tail decay first slows by `gamma(n)` over
//! `[a_n, b_n)`, then catches back up over `[b_n, b_n e^n)`, then rests.
//! The breakpoints are `a_n = exp(n e^n)` and `b_n = a_n e^n`, so all
//! arithmetic lives in log-domain: `log a_4 = 4 e^4 ~ 218` is fine, but
//! `a_4` itself already overflows long before `n = 40`.
//!
//! Two variants are supported: the piecewise-constant profile (`eps` jumps
//! between `gamma(n)`, `-gamma(n)` and 0) and the smoothed profile, where
//! `eps` ramps along the tent map `Lambda(s) = min(2s, 2-2s)` scaled by
//! `1/c_n` so that each ramp integrates to `gamma(n)` against `ds/s`; the
//! smoothed variant makes the tails log-convex.

use crate::error::{Error, Result};
use crate::tails::{Provenance, TailFunction};

/// Hard cap on the block range; beyond this the construction behaves as a
/// pure Pareto tail. Linear-domain cross-checks are only possible for
/// `n <= 6` (`exp(n e^n)` overflows past `n = 4`); in log-domain the cap
/// is set by f64 resolution instead: at `n = 32` the spacing of floats
/// near `log a_n = n e^n` is still two orders of magnitude below the
/// block length `2n`, while by `n = 37` it exceeds `n` and the block
/// structure would collapse onto a single float.
pub const MAX_BLOCKS: u32 = 32;

/// Log-domain breakpoints of block `n`: the block ramps up on
/// `[log_a, log_b)`, ramps down on `[log_b, log_end)` and rests afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockBreakpoints {
    pub n: u32,
    /// `log a_n = n e^n`
    pub log_a: f64,
    /// `log b_n = n e^n + n`
    pub log_b: f64,
    /// `log (b_n e^n) = n e^n + 2n`
    pub log_end: f64,
}

/// Breakpoints of block `n >= 1`.
pub fn block_breakpoints(n: u32) -> BlockBreakpoints {
    assert!(n >= 1, "blocks are indexed from 1");
    let nf = n as f64;
    let log_a = nf * nf.exp();
    BlockBreakpoints {
        n,
        log_a,
        log_b: log_a + nf,
        log_end: log_a + 2.0 * nf,
    }
}

/// Correction factor of the smoothed construction:
/// `c_n = int_0^1 Lambda(t) / (t + (e^n - 1)^{-1}) dt`, evaluated in closed
/// form (two log terms). Increases monotonically from `c_1 ~ 0.480156`
/// to `log 4`.
pub fn correction_cn(n: u32) -> f64 {
    assert!(n >= 1, "correction factor is defined for n >= 1");
    let q = 1.0 / (n as f64).exp_m1();
    2.0 * (1.0 + q) * ((1.0 + q) / (0.5 + q)).ln() - 2.0 * q * ((0.5 + q) / q).ln()
}

/// The tent map `Lambda(s) = min(2s, 2 - 2s)` on `[0, 1]`.
#[inline]
fn tent(s: f64) -> f64 {
    (2.0 * s).min(2.0 - 2.0 * s).max(0.0)
}

/// The gamma sequence driving the construction, before the silent `1/n`
/// lower clip.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GammaSequence {
    /// `gamma(n) = n^{delta - 1}`; `delta = 0` is the `1/n` checkpoint
    /// sequence (`h(b_n) = e`), `delta = 1/2` the `n^{-1/2}` example.
    Power { delta: f64 },
    /// Explicit per-block values for `n = 1..=len`; beyond the table the
    /// sequence continues with the `1/n` clip alone.
    Table { values: Vec<f64> },
}

impl GammaSequence {
    /// Raw (unclipped) value at block `n`.
    fn raw(&self, n: u32) -> f64 {
        match self {
            GammaSequence::Power { delta } => (n as f64).powf(delta - 1.0),
            GammaSequence::Table { values } => {
                values.get((n - 1) as usize).copied().unwrap_or(0.0)
            }
        }
    }
}

/// Construction data for the oscillating tails: the tail index, the growth
/// cap `rho`, the per-block amplitudes, and whether the profile is the
/// piecewise-constant or the smoothed (log-convex) variant.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonProfile {
    alpha: f64,
    rho: f64,
    gamma: GammaSequence,
    smoothed: bool,
    /// For smoothed profiles, `eps` is identically 0 on blocks below
    /// `n_min` (the convexity condition is only guaranteed for large
    /// blocks). For piecewise profiles, `n_min` is merely where the upper
    /// cap on `gamma` starts being enforced.
    n_min: u32,
    /// Correction factors `c_n` for `n = 1..=MAX_BLOCKS` (smoothed only).
    cn: Vec<f64>,
}

/// Serialization mirror of [`EpsilonProfile`]; `n_min: None` asks for the
/// automatic choice.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ProfileSpec {
    pub alpha: f64,
    pub rho: f64,
    pub gamma: GammaSequence,
    #[serde(default)]
    pub smoothed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_min: Option<u32>,
}

impl EpsilonProfile {
    /// Validated constructor. `n_min = None` selects the default: 1 for
    /// piecewise profiles, and for smoothed profiles the first block where
    /// `c_1/c_n <= 1/2`, the descending-piece sufficient inequality
    /// `2 (gamma(n)/c_n)(1 + 1/(e^n - 1)) <= alpha` holds, and the raw
    /// gamma respects the cap `rho (alpha and 1)`.
    pub fn new(
        alpha: f64,
        rho: f64,
        gamma: GammaSequence,
        smoothed: bool,
        n_min: Option<u32>,
    ) -> Result<Self> {
        let profile = Self::build(alpha, rho, gamma, smoothed, n_min)?;
        profile.check_cap()?;
        Ok(profile)
    }

    /// Piecewise-constant profile; cap enforcement starts at `n_min`
    /// (default 1).
    pub fn piecewise(alpha: f64, rho: f64, gamma: GammaSequence) -> Result<Self> {
        Self::new(alpha, rho, gamma, false, None)
    }

    /// Smoothed (log-convex) profile with automatic `n_min`.
    pub fn smoothed(alpha: f64, rho: f64, gamma: GammaSequence) -> Result<Self> {
        Self::new(alpha, rho, gamma, true, None)
    }

    /// The `gamma(n) = 1/n` checkpoint profile: `h(b_n) = e` at every
    /// block.
    pub fn preset_reciprocal(alpha: f64) -> Result<Self> {
        Self::piecewise(alpha, 0.5, GammaSequence::Power { delta: 0.0 })
    }

    /// The `gamma(n) = n^{-1/2}` profile, i.e. `h(b_n) = exp(sqrt(n))`.
    /// The cap only binds for large blocks, so enforcement starts where
    /// `n^{-1/2}` first drops below it.
    pub fn preset_inverse_sqrt(alpha: f64) -> Result<Self> {
        let rho = 0.75;
        let cap = rho * alpha.min(1.0);
        let n_min = (1.0 / (cap * cap)).ceil() as u32;
        Self::new(alpha, rho, GammaSequence::Power { delta: 0.5 }, false, Some(n_min.max(1)))
    }

    /// The smoothed (log-convex) `gamma(n) = 1/n` profile with automatic
    /// `n_min`.
    pub fn preset_smoothed(alpha: f64) -> Result<Self> {
        Self::smoothed(alpha, 0.4, GammaSequence::Power { delta: 0.0 })
    }

    /// Build without the gamma-cap check. Meant for probing configurations
    /// that are expected to fail verification (e.g. deliberately
    /// mis-scaled amplitudes fed to [`verify_logconvex`]).
    pub fn diagnostic(
        alpha: f64,
        rho: f64,
        gamma: GammaSequence,
        smoothed: bool,
        n_min: Option<u32>,
    ) -> Result<Self> {
        Self::build(alpha, rho, gamma, smoothed, n_min)
    }

    fn build(
        alpha: f64,
        rho: f64,
        gamma: GammaSequence,
        smoothed: bool,
        n_min: Option<u32>,
    ) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Construction(format!("alpha must be positive, got {alpha}")));
        }
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Construction(format!("rho must lie in (0, 1), got {rho}")));
        }
        let cn: Vec<f64> = (1..=MAX_BLOCKS).map(correction_cn).collect();
        if smoothed {
            let c1 = cn[0];
            if rho >= c1 {
                return Err(Error::Construction(format!(
                    "smoothed profiles require rho < c_1 ~ {c1:.6}, got rho = {rho}"
                )));
            }
        }
        let mut profile = EpsilonProfile {
            alpha,
            rho,
            gamma,
            smoothed,
            n_min: 1,
            cn,
        };
        profile.n_min = match n_min {
            Some(n) => n.max(1),
            None if smoothed => profile.default_n_min(),
            None => 1,
        };
        // gamma(n) * n must be non-decreasing (h increasing at checkpoints)
        let mut prev = 0.0;
        for n in 1..=MAX_BLOCKS {
            let v = profile.gamma(n) * n as f64;
            if v < prev - 1e-12 {
                return Err(Error::Construction(format!(
                    "gamma(n) * n must be non-decreasing; drops at block {n}"
                )));
            }
            prev = v;
        }
        Ok(profile)
    }

    fn check_cap(&self) -> Result<()> {
        let cap = self.rho * self.alpha.min(1.0);
        for n in self.n_min..=MAX_BLOCKS {
            let raw = self.gamma.raw(n);
            let clip = 1.0 / n as f64;
            if raw > clip && raw > cap * (1.0 + 1e-12) {
                return Err(Error::Construction(format!(
                    "gamma cap violated at block {n}: raw gamma {raw} exceeds rho * min(alpha, 1) = {cap}"
                )));
            }
        }
        Ok(())
    }

    /// Default `n_min` for a smoothed profile (see [`Self::new`]).
    fn default_n_min(&self) -> u32 {
        let c1 = self.cn[0];
        let cap = self.rho * self.alpha.min(1.0);
        for n in 1..=MAX_BLOCKS {
            let cn = self.cn[(n - 1) as usize];
            let g = self.gamma_at(n);
            let sufficient = 2.0 * (g / cn) * (1.0 + 1.0 / (n as f64).exp_m1()) <= self.alpha;
            let halved = c1 / cn <= 0.5;
            let capped = self.gamma.raw(n) <= (1.0 / n as f64).max(cap * (1.0 + 1e-12));
            if sufficient && halved && capped {
                return n;
            }
        }
        MAX_BLOCKS
    }

    /// Clipped amplitude `gamma(n) = max(1/n, raw(n))`, ignoring `n_min`.
    fn gamma_at(&self, n: u32) -> f64 {
        self.gamma.raw(n).max(1.0 / n as f64)
    }

    /// Amplitude of block `n` as used by the profile: 0 below `n_min` for
    /// smoothed profiles, the clipped sequence value otherwise.
    pub fn gamma(&self, n: u32) -> f64 {
        if self.smoothed && n < self.n_min {
            0.0
        } else {
            self.gamma_at(n)
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_smoothed(&self) -> bool {
        self.smoothed
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    /// `c_n` for `1 <= n <= MAX_BLOCKS`.
    pub fn cn(&self, n: u32) -> f64 {
        self.cn[(n - 1) as usize]
    }

    pub fn to_spec(&self) -> ProfileSpec {
        ProfileSpec {
            alpha: self.alpha,
            rho: self.rho,
            gamma: self.gamma.clone(),
            smoothed: self.smoothed,
            n_min: Some(self.n_min),
        }
    }

    pub fn from_spec(spec: &ProfileSpec) -> Result<Self> {
        Self::new(spec.alpha, spec.rho, spec.gamma.clone(), spec.smoothed, spec.n_min)
    }

    /// Block index `n` with `log a_n <= log_t < log a_{n+1}`, when any.
    fn block_of(&self, log_t: f64) -> Option<u32> {
        if log_t < block_breakpoints(1).log_a {
            return None;
        }
        for n in 1..=MAX_BLOCKS {
            let next = if n < MAX_BLOCKS {
                block_breakpoints(n + 1).log_a
            } else {
                f64::INFINITY
            };
            if log_t < next {
                return Some(n);
            }
        }
        None
    }
}

/// `eps(t)` at `t = e^{log_t}`; 0 outside active blocks.
pub fn epsilon_at(profile: &EpsilonProfile, log_t: f64) -> f64 {
    let Some(n) = profile.block_of(log_t) else {
        return 0.0;
    };
    let g = profile.gamma(n);
    if g == 0.0 {
        return 0.0;
    }
    let bp = block_breakpoints(n);
    let nf = n as f64;
    if !profile.smoothed {
        // piecewise-constant: gamma on [a_n, b_n), -gamma on [b_n, b_n e^n)
        if log_t < bp.log_b {
            g
        } else if log_t < bp.log_end {
            -g
        } else {
            0.0
        }
    } else {
        let ghat = g / profile.cn(n);
        let denom = nf.exp_m1(); // e^n - 1
        if log_t < bp.log_b {
            // (t - a_n)/(b_n - a_n) = (e^u - 1)/(e^n - 1), u = log_t - log a_n
            let u = log_t - bp.log_a;
            ghat * tent(u.exp_m1() / denom)
        } else if log_t < bp.log_end {
            // (t - b_n)/(b_n (e^n - 1)) = (e^v - 1)/(e^n - 1), v = log_t - log b_n
            let v = log_t - bp.log_b;
            -ghat * tent(v.exp_m1() / denom)
        } else {
            0.0
        }
    }
}

/// `t eps'(t)` on the smoothed ramps (the derivative taken with respect to
/// `t`, scaled by `t`); used by the convexity verification. Undefined at
/// the four kink points of each block; callers sample strictly inside the
/// pieces.
fn t_eps_prime(profile: &EpsilonProfile, log_t: f64) -> f64 {
    debug_assert!(profile.smoothed);
    let Some(n) = profile.block_of(log_t) else {
        return 0.0;
    };
    let g = profile.gamma(n);
    if g == 0.0 {
        return 0.0;
    }
    let bp = block_breakpoints(n);
    let nf = n as f64;
    let ghat = g / profile.cn(n);
    let denom = nf.exp_m1();
    let two = 2.0 * ghat / denom;
    if log_t < bp.log_b {
        let u = log_t - bp.log_a;
        let tau = u.exp_m1() / denom;
        if tau < 0.5 {
            two * u.exp()
        } else {
            -two * u.exp()
        }
    } else if log_t < bp.log_end {
        let v = log_t - bp.log_b;
        let tau = v.exp_m1() / denom;
        if tau < 0.5 {
            -two * v.exp()
        } else {
            two * v.exp()
        }
    } else {
        0.0
    }
}

/// Integral of the tent ramp against `ds/s` across one phase of block `n`,
/// in log-domain: `I(u) = int_0^u Lambda((e^x - 1)/(e^n - 1)) dx` for
/// `u in [0, n]`. `I(n) = c_n` exactly.
fn tent_log_integral(n: u32, u: f64) -> f64 {
    let nf = n as f64;
    let denom = nf.exp_m1();
    // tau = 1/2 at u_m = log((1 + e^n)/2)
    let u_m = (0.5 * (1.0 + nf.exp())).ln();
    if u <= 0.0 {
        0.0
    } else if u <= u_m {
        2.0 * (u.exp_m1() - u) / denom
    } else {
        let at_mid = 2.0 * (u_m.exp_m1() - u_m) / denom;
        at_mid + 2.0 * (1.0 + 1.0 / denom) * (u - u_m) - 2.0 * (u.exp() - u_m.exp()) / denom
    }
}

/// `log L(t) = int_1^t eps(s)/s ds` at `t = e^{log_t}`, by the per-piece
/// closed forms. Exactly 0 on resting stretches; equals `n gamma(n)` at
/// the checkpoints `b_n` for the piecewise profile and `gamma(n)` for the
/// smoothed profile (whose ramps are normalized by `c_n`).
pub fn log_l(profile: &EpsilonProfile, log_t: f64) -> f64 {
    let Some(n) = profile.block_of(log_t) else {
        return 0.0;
    };
    let g = profile.gamma(n);
    if g == 0.0 {
        return 0.0;
    }
    let bp = block_breakpoints(n);
    if !profile.smoothed {
        if log_t < bp.log_b {
            g * (log_t - bp.log_a)
        } else if log_t < bp.log_end {
            g * (bp.log_end - log_t)
        } else {
            0.0
        }
    } else {
        let cn = profile.cn(n);
        if log_t < bp.log_b {
            g / cn * tent_log_integral(n, log_t - bp.log_a)
        } else if log_t < bp.log_end {
            // descent mirrors the ascent integral; clamp roundoff at v ~ n
            (g - g / cn * tent_log_integral(n, log_t - bp.log_b)).max(0.0)
        } else {
            0.0
        }
    }
}

/// Largest value `eps` attains over the active blocks.
pub fn epsilon_sup(profile: &EpsilonProfile) -> f64 {
    let mut sup: f64 = 0.0;
    for n in 1..=MAX_BLOCKS {
        let g = profile.gamma(n);
        if g == 0.0 {
            continue;
        }
        sup = sup.max(if profile.smoothed { g / profile.cn(n) } else { g });
    }
    sup
}

/// Build the tail function `g(t) = t^{-alpha} L(t)` on `[1, inf)`.
///
/// Errors when `eps` exceeds `alpha` somewhere, which is exactly when `g`
/// would fail to be non-increasing.
pub fn constructed_tail(profile: &EpsilonProfile) -> Result<TailFunction> {
    let sup = epsilon_sup(profile);
    if sup > profile.alpha {
        return Err(Error::Construction(format!(
            "eps reaches {sup}, above the tail index alpha = {}; the survival function would increase",
            profile.alpha
        )));
    }
    let alpha = profile.alpha;
    let captured = profile.clone();
    let mut breakpoints = Vec::new();
    for n in 1..=MAX_BLOCKS {
        if captured.gamma(n) == 0.0 {
            continue;
        }
        let bp = block_breakpoints(n);
        if profile.smoothed {
            let u_m = (0.5 * (1.0 + (n as f64).exp())).ln();
            breakpoints.extend_from_slice(&[
                bp.log_a,
                bp.log_a + u_m,
                bp.log_b,
                bp.log_b + u_m,
                bp.log_end,
            ]);
        } else {
            breakpoints.extend_from_slice(&[bp.log_a, bp.log_b, bp.log_end]);
        }
    }
    Ok(TailFunction::new(
        0.0,
        alpha,
        move |l| -alpha * l + log_l(&captured, l),
        breakpoints,
        Provenance::Constructed,
    ))
}

/// Per-block outcome of the log-convexity verification.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BlockConvexity {
    pub n: u32,
    /// `alpha - 2 (gamma(n)/c_n)(1 + 1/(e^n - 1))`: the exact margin of the
    /// convexity condition on the descending half of the up-ramp (the
    /// condition is constant there).
    pub sufficient_up_margin: f64,
    /// `alpha - 2 gamma(n)/(c_n (e^n - 1))`: margin on the steep half of
    /// the down-ramp.
    pub sufficient_down_margin: f64,
    /// Worst of `t eps'(t) + alpha - eps(t)` over a dense grid of interior
    /// points of the four ramp pieces.
    pub grid_margin: f64,
    pub pass: bool,
}

/// Report of [`verify_logconvex`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct LogConvexityReport {
    pub n_min: u32,
    pub n_max: u32,
    pub blocks: Vec<BlockConvexity>,
    pub pass: bool,
}

/// Check the log-convexity condition `eps'(t) + alpha/t >= eps(t)/t`
/// (equivalently `t eps'(t) + alpha - eps(t) >= 0`) on the enforced blocks
/// of a smoothed profile: exactly via the per-piece sufficient margins,
/// and on a dense grid of interior continuity points of `eps'`.
pub fn verify_logconvex(profile: &EpsilonProfile, n_max: u32) -> Result<LogConvexityReport> {
    if !profile.smoothed {
        return Err(Error::Hypothesis {
            op: "verify_logconvex",
            message: "profile must be smoothed; piecewise tails are not log-convex".into(),
        });
    }
    let n_max = n_max.min(MAX_BLOCKS);
    let alpha = profile.alpha;
    let mut blocks = Vec::new();
    let mut all_pass = true;
    const GRID_PER_PIECE: usize = 24;
    for n in profile.n_min..=n_max {
        let g = profile.gamma(n);
        if g == 0.0 {
            continue;
        }
        let cn = profile.cn(n);
        let denom = (n as f64).exp_m1();
        let sufficient_up = alpha - 2.0 * (g / cn) * (1.0 + 1.0 / denom);
        let sufficient_down = alpha - 2.0 * g / (cn * denom);

        let bp = block_breakpoints(n);
        let u_m = (0.5 * (1.0 + (n as f64).exp())).ln();
        let piece_edges = [
            (bp.log_a, bp.log_a + u_m),
            (bp.log_a + u_m, bp.log_b),
            (bp.log_b, bp.log_b + u_m),
            (bp.log_b + u_m, bp.log_end),
        ];
        let mut grid_margin = f64::INFINITY;
        for (lo, hi) in piece_edges {
            for i in 0..GRID_PER_PIECE {
                // strictly inside the piece: eps' is continuous there
                let frac = (i as f64 + 0.5) / GRID_PER_PIECE as f64;
                let l = lo + (hi - lo) * frac;
                let margin = t_eps_prime(profile, l) + alpha - epsilon_at(profile, l);
                grid_margin = grid_margin.min(margin);
            }
        }
        let pass = sufficient_up >= 0.0 && sufficient_down >= 0.0 && grid_margin >= -1e-12;
        all_pass &= pass;
        blocks.push(BlockConvexity {
            n,
            sufficient_up_margin: sufficient_up,
            sufficient_down_margin: sufficient_down,
            grid_margin,
            pass,
        });
    }
    Ok(LogConvexityReport {
        n_min: profile.n_min,
        n_max,
        blocks,
        pass: all_pass,
    })
}

/// Derive the gamma sequence from a target normalized-tail envelope `h`:
/// `gamma(n) = max(1/n, log h(b_n) / n)`. The function is supplied in
/// log-domain (`h_log(x) = h(e^x)`) because `b_n` overflows linear floats.
///
/// Errors when the raw value `log h(b_n)/n` exceeds the cap
/// `rho (alpha and 1)` at a block `n >= n_min`, naming the block.
pub fn gamma_from_h<H: Fn(f64) -> f64>(
    h_log: H,
    alpha: f64,
    rho: f64,
    n_min: u32,
    n_max: u32,
) -> Result<Vec<f64>> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Construction(format!("rho must lie in (0,1), got {rho}")));
    }
    let cap = rho * alpha.min(1.0);
    let n_max = n_max.min(MAX_BLOCKS);
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let bp = block_breakpoints(n);
        let h_val = h_log(bp.log_b);
        if !(h_val > 0.0) {
            return Err(Error::Construction(format!(
                "h must be positive; h(b_{n}) = {h_val}"
            )));
        }
        let raw = h_val.ln() / n as f64;
        let clip = 1.0 / n as f64;
        if n >= n_min && raw > clip && raw > cap * (1.0 + 1e-12) {
            return Err(Error::Construction(format!(
                "gamma cap violated at block {n}: log h(b_n)/n = {raw} exceeds rho * min(alpha,1) = {cap}"
            )));
        }
        out.push(raw.max(clip));
    }
    Ok(out)
}

/// `|log L(log b_n) - expected|` where `expected = n gamma(n)` for the
/// piecewise profile and `gamma(n)` for the smoothed one (whose ramps are
/// `c_n`-normalized).
pub fn checkpoint_identity_error(profile: &EpsilonProfile, n: u32) -> f64 {
    let bp = block_breakpoints(n);
    let expected = if profile.smoothed {
        profile.gamma(n)
    } else {
        profile.gamma(n) * n as f64
    };
    (log_l(profile, bp.log_b) - expected).abs()
}

/// The explicit majorant for the ratio `int_0^r y^{alpha-1} P(X>=y) dy / log r`
/// at the checkpoints `r = b_n` of the construction:
/// `n max_{k<=n} gamma(k)^{-1} exp(n gamma(n)) / log b_n + 2`.
pub fn tail_integral_ratio_majorant(profile: &EpsilonProfile, n: u32) -> f64 {
    let bp = block_breakpoints(n);
    let mut max_inv_gamma: f64 = 0.0;
    for k in 1..=n {
        let g = profile.gamma_at(k);
        max_inv_gamma = max_inv_gamma.max(1.0 / g);
    }
    let nf = n as f64;
    nf * max_inv_gamma * (nf * profile.gamma(n)).exp() / bp.log_b + 2.0
}
