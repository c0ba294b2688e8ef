//! Closed-form moment and tail bounds for polynomial chaos in heavy-tailed
//! variables, the Fuk–Nagaev inequality for weighted sums, and the
//! two-level tail/moment pair.
//!
//! The multilinear and recentered chaos bounds carry an explicit leading
//! constant `c` (default 1): the underlying theorems leave their
//! `alpha`-and-`d`-dependent constant unspecified, so these curves are
//! shape statements unless a constant is calibrated externally. The
//! Fuk–Nagaev constants, by contrast, are fully explicit, and its bound is
//! a genuine quantitative test.

use crate::certificates::generalized_tail_bound;
use crate::error::{Error, Result};

use super::{decompose, lp_norm, CoefficientTensor};

/// A bound evaluated on a threshold grid, tagged with the formula and its
/// parameters for downstream CSV/JSON emission.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundCurve {
    pub formula_id: String,
    pub thresholds: Vec<f64>,
    pub values: Vec<f64>,
    pub parameters: serde_json::Value,
}

impl BoundCurve {
    pub fn new(
        formula_id: impl Into<String>,
        thresholds: Vec<f64>,
        values: Vec<f64>,
        parameters: serde_json::Value,
    ) -> Result<Self> {
        if thresholds.len() != values.len() {
            return Err(Error::Input("thresholds and values must align".into()));
        }
        if thresholds.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("thresholds must be strictly increasing".into()));
        }
        if values.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Input("bound values must be nonnegative".into()));
        }
        Ok(BoundCurve {
            formula_id: formula_id.into(),
            thresholds,
            values,
            parameters,
        })
    }
}

fn check_multilinear_hypotheses(op: &'static str, alpha: f64, p: Option<f64>) -> Result<()> {
    if alpha <= 2.0 {
        return Err(Error::Hypothesis {
            op,
            message: format!("the moment machinery needs alpha > 2, got {alpha}"),
        });
    }
    if let Some(p) = p {
        if !(2.0 <= p && p < alpha) {
            return Err(Error::domain(op, format!("p must lie in [2, alpha), got {p}")));
        }
    }
    Ok(())
}

/// Moment bound for a generalized-diagonal-zero chaos:
/// `c ||A||_HS b^d (alpha/(alpha - p))^{d/p}` for `p in [2, alpha)`.
pub fn multilinear_moment_bound(
    hs: f64,
    d: usize,
    alpha: f64,
    b: f64,
    c: f64,
    p: f64,
) -> Result<f64> {
    check_multilinear_hypotheses("multilinear_moment_bound", alpha, Some(p))?;
    Ok(c * hs * b.powi(d as i32) * (alpha / (alpha - p)).powf(d as f64 / p))
}

/// Tail bound for a generalized-diagonal-zero chaos: `c` times the
/// Chebyshev-optimized envelope with scale `||A||_HS b^d` and log power
/// `d`. At the threshold `||A||_HS b^d e^{d/alpha}` (with `c = 1`) the
/// bound normalizes to 1.
pub fn multilinear_tail_bound(
    hs: f64,
    d: usize,
    alpha: f64,
    b: f64,
    c: f64,
    t: f64,
) -> Result<f64> {
    check_multilinear_hypotheses("multilinear_tail_bound", alpha, None)?;
    let scale = hs * b.powi(d as i32);
    let threshold = c * scale * (d as f64 / alpha).exp();
    if t < threshold * (1.0 - 1e-9) {
        return Err(Error::domain(
            "multilinear_tail_bound",
            format!("t = {t} below the bound's threshold {threshold}"),
        ));
    }
    Ok(c * generalized_tail_bound(scale, d as f64, alpha, t)?)
}

/// Per-part tail term of the recentered bound: index `alpha/k`, log power
/// `d - k + 1`, scale `||A_k||_HS b^d`. Zero-clamped below its own
/// threshold.
fn recentered_tail_term(hs_k: f64, k: usize, d: usize, alpha: f64, b: f64, t: f64) -> f64 {
    if hs_k == 0.0 {
        return 0.0;
    }
    let index = alpha / k as f64;
    let beta = (d - k + 1) as f64;
    let scale = hs_k * b.powi(d as i32);
    if t <= scale * (beta / index).exp() {
        return 0.0;
    }
    generalized_tail_bound(scale, beta, index, t).unwrap_or(0.0)
}

/// Moment bound for a general (recentered) chaos:
/// `c sum_k ||A_k||_HS b^d ((alpha/k)/(alpha/k - p))^{(d-k+1)/p}` over the
/// nonzero parts, for `p in [2, alpha/k*)`.
pub fn recentered_moment_bound(
    a: &CoefficientTensor,
    alpha: f64,
    b: f64,
    c: f64,
    p: f64,
) -> Result<f64> {
    let dec = decompose(a);
    if dec.degenerate {
        return Ok(0.0);
    }
    let k_star = dec.k_star;
    let index_min = alpha / k_star as f64;
    if index_min <= 2.0 {
        return Err(Error::Hypothesis {
            op: "recentered_moment_bound",
            message: format!("needs alpha/k* > 2; alpha = {alpha}, k* = {k_star}"),
        });
    }
    if !(2.0 <= p && p < index_min) {
        return Err(Error::domain(
            "recentered_moment_bound",
            format!("p must lie in [2, alpha/k*) = [2, {index_min}), got {p}"),
        ));
    }
    let d = a.d();
    let mut total = 0.0;
    for (part_idx, part) in dec.parts.iter().enumerate() {
        let k = part_idx + 1;
        let hs_k = part.hs_norm();
        if hs_k == 0.0 {
            continue;
        }
        let index = alpha / k as f64;
        let beta = (d - k + 1) as f64;
        total += hs_k * b.powi(d as i32) * (index / (index - p)).powf(beta / p);
    }
    Ok(c * total)
}

/// Tail bound for a general chaos: `c max_k` of the per-part envelopes,
/// each zero-clamped below its own threshold. With a single nonzero part
/// of multiplicity 1 this is bit-identical to [`multilinear_tail_bound`].
pub fn recentered_tail_bound(
    a: &CoefficientTensor,
    alpha: f64,
    b: f64,
    c: f64,
    t: f64,
) -> Result<f64> {
    let dec = decompose(a);
    if dec.degenerate {
        return Ok(0.0);
    }
    if alpha / dec.k_star as f64 <= 2.0 {
        return Err(Error::Hypothesis {
            op: "recentered_tail_bound",
            message: format!("needs alpha/k* > 2; alpha = {alpha}, k* = {}", dec.k_star),
        });
    }
    let d = a.d();
    let mut best = 0.0f64;
    let mut any_live = false;
    for (part_idx, part) in dec.parts.iter().enumerate() {
        let k = part_idx + 1;
        let hs_k = part.hs_norm();
        if hs_k == 0.0 {
            continue;
        }
        let term = recentered_tail_term(hs_k, k, d, alpha, b, t);
        if term > 0.0 {
            any_live = true;
        }
        best = best.max(term);
    }
    if !any_live {
        return Err(Error::domain(
            "recentered_tail_bound",
            format!("t = {t} below every part's threshold; the bound says nothing there"),
        ));
    }
    Ok(c * best)
}

/// Evaluate a tail-bound formula over a threshold grid.
pub fn tail_curve<F: Fn(f64) -> Result<f64>>(
    formula_id: &str,
    thresholds: &[f64],
    parameters: serde_json::Value,
    f: F,
) -> Result<BoundCurve> {
    let mut values = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        values.push(f(t)?);
    }
    BoundCurve::new(formula_id, thresholds.to_vec(), values, parameters)
}

/// Fuk–Nagaev bound for a weighted sum `S = sum a_i X_i` of independent
/// centered variables with Pareto-type moments (`b = 1` convention;
/// general `b` rescales `t`):
///
/// `((p+2)/p)^p (alpha/(alpha-p)) ||a||_p^p / t^p
///   + exp(-2 (alpha-2) t^2 / ((p+2)^2 e^p ||a||_2^2 alpha))`
///
/// One-sided; double it for `P(|S| >= t)`.
pub fn fuk_nagaev_bound(weights: &[f64], alpha: f64, b: f64, p: f64, t: f64) -> Result<f64> {
    if alpha <= 2.0 {
        return Err(Error::Hypothesis {
            op: "fuk_nagaev_bound",
            message: format!("needs alpha > 2, got {alpha}"),
        });
    }
    if !(2.0 < p && p < alpha) {
        return Err(Error::domain("fuk_nagaev_bound", format!("p must lie in (2, alpha), got {p}")));
    }
    if !(t > 0.0) {
        return Err(Error::domain("fuk_nagaev_bound", format!("t must be positive, got {t}")));
    }
    let t = t / b;
    let lp = lp_norm(weights, p);
    let l2 = lp_norm(weights, 2.0);
    let poly = ((p + 2.0) / p).powf(p) * (alpha / (alpha - p)) * lp.powf(p) / t.powf(p);
    let gauss = (-2.0 * (alpha - 2.0) * t * t / ((p + 2.0).powi(2) * p.exp() * l2 * l2 * alpha)).exp();
    Ok(poly + gauss)
}

/// Minimize the Fuk–Nagaev bound over a 64-point geometric `p`-grid in
/// `(2, alpha)` together with the Chebyshev plug-in
/// `p = alpha - 1/log(t/||a||_alpha)` when it lands inside. Returns the
/// bound and the optimizing `p`.
pub fn fuk_nagaev_optimized(weights: &[f64], alpha: f64, b: f64, t: f64) -> Result<(f64, f64)> {
    if alpha <= 2.0 {
        return Err(Error::Hypothesis {
            op: "fuk_nagaev_bound",
            message: format!("needs alpha > 2, got {alpha}"),
        });
    }
    let span = alpha - 2.0;
    let mut candidates = Vec::with_capacity(65);
    let n_grid = 64;
    for k in 0..n_grid {
        // gaps from alpha shrink geometrically toward the upper endpoint
        let frac = k as f64 / (n_grid - 1) as f64;
        let gap = span * 0.999 * (1e-4f64).powf(frac) + span * 1e-6;
        candidates.push(alpha - gap);
    }
    let l_alpha = lp_norm(weights, alpha);
    let w = (t / b) / l_alpha;
    if w > 1.0 {
        let plug_in = alpha - 1.0 / w.ln();
        if plug_in > 2.0 && plug_in < alpha {
            candidates.push(plug_in);
        }
    }
    let mut best = f64::INFINITY;
    let mut best_p = f64::NAN;
    for p in candidates {
        if !(2.0 < p && p < alpha) {
            continue;
        }
        let v = fuk_nagaev_bound(weights, alpha, b, p, t)?;
        if v < best {
            best = v;
            best_p = p;
        }
    }
    if !best.is_finite() {
        return Err(Error::domain("fuk_nagaev_bound", "no admissible p in (2, alpha)"));
    }
    Ok((best, best_p))
}

/// Constants of the combined quadratic-chaos bound (the theorems leave
/// them unspecified; defaults are 1).
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct CombinedConstants {
    /// Outer constant multiplying the three-term max.
    pub c_outer: f64,
    /// Constant inside the Gaussian term's exponent.
    pub c_gauss: f64,
}

impl Default for CombinedConstants {
    fn default() -> Self {
        CombinedConstants {
            c_outer: 1.0,
            c_gauss: 1.0,
        }
    }
}

/// Combined bound for a quadratic chaos, treating the diagonal part with
/// Fuk–Nagaev machinery: the max of a Gaussian term and a polynomial term
/// in the diagonal weights, and the multilinear envelope of the
/// off-diagonal part.
///
/// Requires `p < alpha/2` and `alpha > 4` (the squared variables need a
/// finite variance for the Gaussian term).
pub fn combined_quadratic_bound(
    a: &CoefficientTensor,
    alpha: f64,
    b: f64,
    p: f64,
    t: f64,
    constants: CombinedConstants,
) -> Result<f64> {
    if a.d() != 2 {
        return Err(Error::Input(format!("combined bound requires d = 2, got {}", a.d())));
    }
    if alpha <= 4.0 {
        return Err(Error::Hypothesis {
            op: "combined_quadratic_bound",
            message: format!("needs alpha > 4 for the diagonal variance, got {alpha}"),
        });
    }
    if !(p > 0.0 && p < alpha / 2.0) {
        return Err(Error::domain(
            "combined_quadratic_bound",
            format!("p must lie in (0, alpha/2), got {p}"),
        ));
    }
    if !(t > 0.0) {
        return Err(Error::domain("combined_quadratic_bound", "t must be positive"));
    }
    let diag = a.diagonal()?;
    let dec = decompose(a);
    let hs_off = dec.parts[0].hs_norm();
    let b2 = b * b;

    let diag_l2 = lp_norm(&diag, 2.0);
    let gauss = if diag_l2 > 0.0 {
        (-constants.c_gauss * (t / (diag_l2 * b2)).powi(2)).exp()
    } else {
        0.0
    };
    let diag_lp = lp_norm(&diag, p);
    let poly = if diag_lp > 0.0 {
        (alpha / 2.0) / (alpha / 2.0 - p) * b.powf(p) * diag_lp.powf(p) / t.powf(p)
    } else {
        0.0
    };
    let off = if hs_off > 0.0 {
        let w = t / (hs_off * b2);
        if w > 1.0 {
            w.ln().powi(2) * w.powf(-alpha)
        } else {
            0.0
        }
    } else {
        0.0
    };
    Ok(constants.c_outer * gauss.max(poly).max(off))
}

/// Exact and bounding moments of the two-level tail
/// `P(X >= x) = max(b^{2 alpha}/x^{2 alpha}, a^alpha/x^alpha)`, `0 < a < b`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct TwoLevelMoment {
    pub exact: f64,
    pub bound: f64,
}

/// `E[X^p]` of the two-level tail: the exact three-term closed form and
/// the two-term upper bound
/// `b^p 2 alpha/(2 alpha - p) + a^p alpha/(alpha - p)`, for `0 < p < alpha`.
///
/// ```
/// use heavytail_core::chaos::bounds::two_level_moment;
///
/// let m = two_level_moment(3.0, 1.0, 2.0, 2.0).unwrap();
/// assert_eq!(m.exact, 6.375);
/// assert_eq!(m.bound, 9.0);
/// ```
pub fn two_level_moment(alpha: f64, a: f64, b: f64, p: f64) -> Result<TwoLevelMoment> {
    if !(0.0 < a && a < b) {
        return Err(Error::domain("two_level_moment", format!("need 0 < a < b, got a={a}, b={b}")));
    }
    if !(p > 0.0 && p < alpha) {
        return Err(Error::domain(
            "two_level_moment",
            format!("p must lie in (0, alpha), got p={p}, alpha={alpha}"),
        ));
    }
    let first = b.powf(p) * 2.0 * alpha / (2.0 * alpha - p);
    let cross = (b / a).powf(2.0 * p - 2.0 * alpha) * (p / (2.0 * alpha - p)) * (alpha / (alpha - p));
    let exact = first + a.powf(p) * cross;
    let bound = first + a.powf(p) * alpha / (alpha - p);
    Ok(TwoLevelMoment { exact, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::CoefficientTensor;

    #[test]
    fn multilinear_moment_bound_example() {
        // p=2, d=2, ||A||=1, b=1, alpha=4, c=1 -> (4/2)^{2/2} = 2
        let v = multilinear_moment_bound(1.0, 2, 4.0, 1.0, 1.0, 2.0).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert!(multilinear_moment_bound(1.0, 2, 1.5, 1.0, 1.0, 1.0).is_err());
        assert!(multilinear_moment_bound(1.0, 2, 4.0, 1.0, 1.0, 5.0).is_err());
    }

    #[test]
    fn multilinear_tail_threshold_normalization() {
        // d=1, c=1: at t = ||a||_2 e^{1/alpha} the bound is 1
        let hs = 2.5f64;
        let alpha = 3.0f64;
        let t = hs * (1.0 / alpha).exp();
        let v = multilinear_tail_bound(hs, 1, alpha, 1.0, 1.0, t).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multilinear_tail_matches_generalized_envelope() {
        let hs = 1.7f64;
        let (alpha, b, d) = (4.0f64, 1.3f64, 2usize);
        let scale = hs * b * b;
        for t in [scale * 3.0, scale * 9.0, scale * 40.0] {
            let ours = multilinear_tail_bound(hs, d, alpha, b, 1.0, t).unwrap();
            let envelope = generalized_tail_bound(scale, d as f64, alpha, t).unwrap();
            assert_eq!(ours.to_bits(), envelope.to_bits());
        }
    }

    #[test]
    fn recentered_reduces_to_multilinear_bitwise() {
        let a = CoefficientTensor::from_rows(&[vec![0.0, 1.25], vec![-0.5, 0.0]]).unwrap();
        let (alpha, b, c) = (5.0, 1.1, 1.0);
        for p in [2.0, 2.5, 3.0] {
            let rec = recentered_moment_bound(&a, alpha, b, c, p).unwrap();
            let mult = multilinear_moment_bound(a.hs_norm(), 2, alpha, b, c, p).unwrap();
            assert_eq!(rec.to_bits(), mult.to_bits());
        }
        for t in [10.0, 30.0, 100.0] {
            let rec = recentered_tail_bound(&a, alpha, b, c, t).unwrap();
            let mult = multilinear_tail_bound(a.hs_norm(), 2, alpha, b, c, t).unwrap();
            assert_eq!(rec.to_bits(), mult.to_bits());
        }
    }

    #[test]
    fn recentered_tail_diag_dominates_at_large_t() {
        // equal part norms: eventually t^{-alpha/2} beats t^{-alpha} log^2
        let mut a = CoefficientTensor::zeros(2, 2).unwrap();
        a.set(&[0, 1], 1.0); // off-diagonal norm 1
        a.set(&[0, 0], 1.0); // diagonal norm 1
        let alpha = 5.0;
        let dec = decompose(&a);
        let last_t = 1e6;
        let diag_term = recentered_tail_term(dec.parts[1].hs_norm(), 2, 2, alpha, 1.0, last_t);
        let off_term = recentered_tail_term(dec.parts[0].hs_norm(), 1, 2, alpha, 1.0, last_t);
        assert!(diag_term > off_term);
        let total = recentered_tail_bound(&a, alpha, 1.0, 1.0, last_t).unwrap();
        assert_eq!(total, diag_term.max(off_term));
    }

    #[test]
    fn recentered_hypothesis_errors() {
        let mut a = CoefficientTensor::zeros(2, 2).unwrap();
        a.set(&[0, 0], 1.0); // k* = 2
        // alpha/k* = 2 is not > 2
        assert!(matches!(
            recentered_moment_bound(&a, 4.0, 1.0, 1.0, 2.0),
            Err(Error::Hypothesis { .. })
        ));
    }

    #[test]
    fn fuk_nagaev_two_term_example() {
        // n=1, a=(1), alpha=3, p=2.5, t=10
        let v = fuk_nagaev_bound(&[1.0], 3.0, 1.0, 2.5, 10.0).unwrap();
        let poly = 1.8f64.powf(2.5) * 6.0 / 10.0f64.powf(2.5);
        let gauss = (-200.0 / (4.5f64.powi(2) * 2.5f64.exp() * 3.0)).exp();
        assert!((v - (poly + gauss)).abs() < 1e-12);
        assert!((poly - 0.0825).abs() < 5e-4);
        assert!((gauss - 0.763).abs() < 5e-4);
    }

    #[test]
    fn fuk_nagaev_decreasing_in_t() {
        let weights = vec![1.0; 50];
        let mut prev = f64::INFINITY;
        for k in 1..60 {
            let t = 2.0 * 1.3f64.powi(k);
            let v = fuk_nagaev_bound(&weights, 3.0, 1.0, 2.5, t).unwrap();
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    #[test]
    fn fuk_nagaev_optimizer_beats_fixed_p() {
        let weights = vec![1.0; 100];
        let t = 80.0;
        let (best, p_star) = fuk_nagaev_optimized(&weights, 3.0, 1.0, t).unwrap();
        for p in [2.1, 2.5, 2.9] {
            assert!(best <= fuk_nagaev_bound(&weights, 3.0, 1.0, p, t).unwrap() + 1e-12);
        }
        assert!(2.0 < p_star && p_star < 3.0);
    }

    #[test]
    fn fuk_nagaev_domain_errors() {
        assert!(fuk_nagaev_bound(&[1.0], 3.0, 1.0, 2.0, 5.0).is_err());
        assert!(fuk_nagaev_bound(&[1.0], 3.0, 1.0, 3.0, 5.0).is_err());
        assert!(fuk_nagaev_bound(&[1.0], 1.5, 1.0, 1.2, 5.0).is_err());
    }

    #[test]
    fn combined_bound_reductions() {
        let alpha = 5.0;
        let constants = CombinedConstants::default();
        // zero diagonal: only the off-diagonal envelope survives
        let mut off_only = CoefficientTensor::zeros(2, 2).unwrap();
        off_only.set(&[0, 1], 1.0);
        let t = 50.0;
        let v = combined_quadratic_bound(&off_only, alpha, 1.0, 2.0, t, constants).unwrap();
        let expected = t.ln().powi(2) * t.powf(-alpha);
        assert!((v - expected).abs() < 1e-15);

        // zero off-diagonal: two-term max over the diagonal vector
        let mut diag_only = CoefficientTensor::zeros(2, 2).unwrap();
        diag_only.set(&[0, 0], 1.0);
        diag_only.set(&[1, 1], 1.0);
        let v = combined_quadratic_bound(&diag_only, alpha, 1.0, 2.0, 3.0, constants).unwrap();
        let gauss = (-(3.0f64 / 2.0f64.sqrt()).powi(2)).exp();
        let poly = (2.5 / 0.5) * 2.0f64.sqrt().powf(2.0) / 9.0;
        assert!((v - gauss.max(poly)).abs() < 1e-12);
    }

    #[test]
    fn combined_bound_undercuts_envelope_in_a_threshold_window() {
        // the FN polynomial term t^{-p} with p < alpha/2 eventually decays
        // slower than the diagonal envelope t^{-alpha/2} log t, so the
        // improvement lives in a finite window; check it there
        let mut a = CoefficientTensor::zeros(2, 4).unwrap();
        for i in 0..4 {
            a.set(&[i, i], 1.0);
            for j in 0..4 {
                if i != j {
                    a.set(&[i, j], 0.3);
                }
            }
        }
        let alpha = 6.0;
        let p = 2.5;
        for k in 0..11 {
            let t = 20.0 * 1.2f64.powi(k);
            let combined =
                combined_quadratic_bound(&a, alpha, 1.0, p, t, CombinedConstants::default())
                    .unwrap();
            let envelope = recentered_tail_bound(&a, alpha, 1.0, 1.0, t).unwrap();
            assert!(combined <= envelope, "t = {t}: {combined} > {envelope}");
        }
    }

    #[test]
    fn two_level_moment_example() {
        let m = two_level_moment(3.0, 1.0, 2.0, 2.0).unwrap();
        assert!((m.exact - 6.375).abs() < 1e-12);
        assert!((m.bound - 9.0).abs() < 1e-12);
        assert!(m.exact <= m.bound);
    }

    #[test]
    fn two_level_limit_recovers_single_level() {
        // a -> b: the tail is Par(alpha, b) beyond b and the exact moment
        // approaches b^p alpha/(alpha - p)
        let (alpha, b, p) = (3.0f64, 2.0f64, 1.5f64);
        let target = b.powf(p) * alpha / (alpha - p);
        let m = two_level_moment(alpha, b * (1.0 - 1e-9), b, p).unwrap();
        assert!((m.exact - target).abs() / target < 1e-7);
    }

    #[test]
    fn two_level_zeroth_moment_limit() {
        let m = two_level_moment(3.0, 1.0, 2.0, 1e-12).unwrap();
        assert!((m.exact - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_level_domain_errors() {
        assert!(two_level_moment(3.0, 2.0, 1.0, 1.0).is_err());
        assert!(two_level_moment(3.0, 1.0, 2.0, 3.0).is_err());
    }

    #[test]
    fn two_level_exact_below_bound_on_grid() {
        for ai in 1..10 {
            for bi in 1..10 {
                for pi in 1..10 {
                    let a = 0.2 * ai as f64;
                    let b = a + 0.3 * bi as f64;
                    let alpha = 3.0;
                    let p = alpha * pi as f64 / 10.5;
                    let m = two_level_moment(alpha, a, b, p).unwrap();
                    assert!(m.exact <= m.bound * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn bound_curve_validation() {
        assert!(BoundCurve::new("x", vec![1.0, 2.0], vec![0.5], serde_json::json!({})).is_err());
        assert!(BoundCurve::new("x", vec![2.0, 1.0], vec![0.5, 0.5], serde_json::json!({})).is_err());
        assert!(BoundCurve::new("x", vec![1.0, 2.0], vec![0.5, -0.1], serde_json::json!({})).is_err());
    }
}
