//! Coefficient tensors and polynomial chaos evaluation.
//!
//! A chaos of order `d` over variables `X_1..X_n` is
//! `f_A(X) = sum a_{i_1..i_d} X_{i_1} ... X_{i_d}`. When the tensor has
//! zero generalized diagonal (no repeated index carries a coefficient) the
//! chaos is multilinear and can be evaluated directly. With diagonal terms
//! the natural object recenters each monomial: grouped by the distinct
//! indices and their powers, every `X_i^k` is replaced by
//! `X_i^k - E[X_i^k]`. The multiplicity decomposition `A = A_1 + .. + A_d`
//! splits entries by the largest index repetition count, which is what
//! controls each part's tail index (`X^k` is Pareto with index `alpha/k`).

pub mod bounds;
pub mod io;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tails::ParetoSpec;

/// Largest supported entry count (dense storage only).
pub const MAX_ENTRIES: usize = 10_000_000;
/// Largest supported order.
pub const MAX_ORDER: usize = 4;

/// Dense order-`d` tensor over `n` variables, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    d: usize,
    n: usize,
    entries: Vec<f64>,
}

impl CoefficientTensor {
    pub fn new(d: usize, n: usize, entries: Vec<f64>) -> Result<Self> {
        if d < 1 || d > MAX_ORDER {
            return Err(Error::Input(format!("order d must lie in 1..={MAX_ORDER}, got {d}")));
        }
        if n < 1 {
            return Err(Error::Input("dimension n must be >= 1".into()));
        }
        let expected = n.checked_pow(d as u32).filter(|&c| c <= MAX_ENTRIES);
        match expected {
            Some(c) if c == entries.len() => Ok(CoefficientTensor { d, n, entries }),
            Some(c) => Err(Error::Input(format!(
                "entry count {} does not match n^d = {c}",
                entries.len()
            ))),
            None => Err(Error::Input(format!(
                "n^d = {n}^{d} exceeds the dense storage cap {MAX_ENTRIES}"
            ))),
        }
    }

    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        let count = n
            .checked_pow(d as u32)
            .filter(|&c| c <= MAX_ENTRIES)
            .ok_or_else(|| Error::Input(format!("n^d = {n}^{d} exceeds the dense storage cap")))?;
        Self::new(d, n, vec![0.0; count])
    }

    /// Square matrix as an order-2 tensor.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("matrix must be square".into()));
        }
        Self::new(2, n, rows.iter().flatten().copied().collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.d);
        let mut f = 0usize;
        for &i in idx {
            debug_assert!(i < self.n);
            f = f * self.n + i;
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let f = self.flat(idx);
        self.entries[f] = value;
    }

    /// Decode a flat position into a multi-index.
    pub fn multi_index(&self, mut flat: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = flat % self.n;
            flat /= self.n;
        }
    }

    /// True when every entry with a repeated index is zero.
    pub fn has_generalized_diagonal_zero(&self) -> bool {
        let mut idx = vec![0usize; self.d];
        for (flat, &v) in self.entries.iter().enumerate() {
            if v != 0.0 {
                self.multi_index(flat, &mut idx);
                if multiplicity_of(&idx) > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Frobenius norm.
    pub fn hs_norm(&self) -> f64 {
        self.entries.iter().map(|&v| v * v).sum::<f64>().sqrt()
    }

    /// Diagonal vector `a_{ii}` (order 2 only).
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        if self.d != 2 {
            return Err(Error::Input(format!("diagonal requires d = 2, got d = {}", self.d)));
        }
        Ok((0..self.n).map(|i| self.entries[i * self.n + i]).collect())
    }
}

/// Largest number of equal positions in an index tuple.
pub fn multiplicity_of(idx: &[usize]) -> usize {
    let mut best = 0usize;
    for (j, &v) in idx.iter().enumerate() {
        let count = idx[j..].iter().filter(|&&w| w == v).count();
        best = best.max(count);
    }
    best
}

/// The split `A = A_1 + ... + A_d` by maximal index multiplicity.
#[derive(Debug, Clone)]
pub struct MultiplicityDecomposition {
    /// `parts[k-1]` holds the entries whose index tuple has maximal
    /// multiplicity exactly `k`.
    pub parts: Vec<CoefficientTensor>,
    /// Largest `k` with a nonzero part; 0 for the zero tensor.
    pub k_star: usize,
    /// The zero tensor decomposes trivially; flagged rather than erroring.
    pub degenerate: bool,
}

pub fn decompose(a: &CoefficientTensor) -> MultiplicityDecomposition {
    let mut parts: Vec<CoefficientTensor> = (0..a.d)
        .map(|_| CoefficientTensor::zeros(a.d, a.n).expect("same shape as input"))
        .collect();
    let mut idx = vec![0usize; a.d];
    let mut k_star = 0usize;
    for (flat, &v) in a.entries.iter().enumerate() {
        if v != 0.0 {
            a.multi_index(flat, &mut idx);
            let k = multiplicity_of(&idx);
            parts[k - 1].entries[flat] = v;
            k_star = k_star.max(k);
        }
    }
    MultiplicityDecomposition {
        parts,
        k_star,
        degenerate: k_star == 0,
    }
}

/// Key of a grouped coefficient: the multiplicities `k_1 >= ... >= k_nu`
/// and the distinct indices in that order (ties broken by ascending
/// index).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct GroupKey {
    pub multiplicities: Vec<usize>,
    pub indices: Vec<usize>,
}

impl GroupKey {
    pub fn nu(&self) -> usize {
        self.indices.len()
    }

    /// Build the key of one index tuple.
    pub fn of(idx: &[usize]) -> GroupKey {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let mut pairs: Vec<(usize, usize)> = Vec::new(); // (index, count)
        for &v in &sorted {
            match pairs.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => pairs.push((v, 1)),
            }
        }
        // multiplicity descending, index ascending within ties
        pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        GroupKey {
            multiplicities: pairs.iter().map(|&(_, c)| c).collect(),
            indices: pairs.iter().map(|&(i, _)| i).collect(),
        }
    }
}

/// The recentered-chaos coefficients: each key maps to the sum of tensor
/// entries whose index tuple realizes that pattern.
#[derive(Debug, Clone)]
pub struct GroupedCoefficients {
    pub d: usize,
    pub n: usize,
    pub map: BTreeMap<GroupKey, f64>,
}

pub fn group_coefficients(a: &CoefficientTensor) -> GroupedCoefficients {
    let mut map = BTreeMap::new();
    let mut idx = vec![0usize; a.d];
    for (flat, &v) in a.entries.iter().enumerate() {
        if v != 0.0 {
            a.multi_index(flat, &mut idx);
            *map.entry(GroupKey::of(&idx)).or_insert(0.0) += v;
        }
    }
    GroupedCoefficients { d: a.d, n: a.n, map }
}

impl GroupedCoefficients {
    /// Total mass: the grouped coefficients repartition the tensor, so
    /// their sum recovers the sum of all entries.
    pub fn total(&self) -> f64 {
        self.map.values().sum()
    }

    /// Evaluate the recentered chaos
    /// `sum_key a~ prod_j (x_{i_j}^{k_j} - m_{k_j})`.
    pub fn evaluate(&self, x: &[f64], moments: &MomentTable) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::Input(format!(
                "x has length {}, tensor dimension is {}",
                x.len(),
                self.n
            )));
        }
        let mut total = 0.0f64;
        for (key, &coeff) in &self.map {
            let mut prod = coeff;
            for (&i, &k) in key.indices.iter().zip(&key.multiplicities) {
                prod *= centered_power(x[i], k, moments)?;
            }
            total += prod;
        }
        Ok(total)
    }
}

fn centered_power(x: f64, k: usize, moments: &MomentTable) -> Result<f64> {
    Ok(x.powi(k as i32) - moments.get(k)?)
}

/// Per-order moments `E[X^k]` shared by all coordinates (the harness draws
/// i.i.d. components).
#[derive(Debug, Clone)]
pub struct MomentTable {
    moments: Vec<f64>, // index k, with moments[0] = 1
}

impl MomentTable {
    pub fn new(moments_from_first: Vec<f64>) -> Self {
        let mut moments = vec![1.0];
        moments.extend(moments_from_first);
        MomentTable { moments }
    }

    /// Exact Pareto moments up to order `k_max`. Odd moments vanish for
    /// symmetric specs; magnitude moments follow the closed form.
    pub fn pareto(spec: &ParetoSpec, k_max: usize) -> Result<Self> {
        let mut m = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            if k as f64 >= spec.alpha {
                return Err(Error::InfiniteMoment {
                    p: k as f64,
                    alpha: spec.alpha,
                });
            }
            if spec.symmetric && k % 2 == 1 {
                m.push(0.0);
            } else {
                m.push(spec.moment(k as f64)?);
            }
        }
        Ok(Self::new(m))
    }

    /// Zero-mean table (all centered powers collapse to plain powers other
    /// than via `E[X^k] = 0`); useful for reduction tests.
    pub fn centered_zeros(k_max: usize) -> Self {
        Self::new(vec![0.0; k_max])
    }

    pub fn get(&self, k: usize) -> Result<f64> {
        self.moments.get(k).copied().ok_or_else(|| {
            Error::Input(format!("moment of order {k} not supplied (table has {})", self.moments.len() - 1))
        })
    }

    pub fn k_max(&self) -> usize {
        self.moments.len() - 1
    }
}

/// Evaluate a multilinear (generalized-diagonal-zero) chaos at `x`.
/// Order 2 runs as a quadratic form in O(n^2); higher orders iterate the
/// nonzero entries.
pub fn evaluate_multilinear(a: &CoefficientTensor, x: &[f64]) -> Result<f64> {
    if x.len() != a.n {
        return Err(Error::Input(format!(
            "x has length {}, tensor dimension is {}",
            x.len(),
            a.n
        )));
    }
    if !a.has_generalized_diagonal_zero() {
        return Err(Error::Precondition {
            op: "evaluate_multilinear",
            message: "tensor has nonzero generalized diagonal; use the recentered evaluation".into(),
        });
    }
    Ok(evaluate_multilinear_unchecked(a, x))
}

pub(crate) fn evaluate_multilinear_unchecked(a: &CoefficientTensor, x: &[f64]) -> f64 {
    if a.d == 2 {
        let n = a.n;
        let mut total = 0.0;
        for i in 0..n {
            let row = &a.entries[i * n..(i + 1) * n];
            let mut acc = 0.0;
            for (j, &v) in row.iter().enumerate() {
                acc += v * x[j];
            }
            total += x[i] * acc;
        }
        return total;
    }
    let mut idx = vec![0usize; a.d];
    let mut total = 0.0;
    for (flat, &v) in a.entries.iter().enumerate() {
        if v != 0.0 {
            a.multi_index(flat, &mut idx);
            let mut prod = v;
            for &i in &idx {
                prod *= x[i];
            }
            total += prod;
        }
    }
    total
}

/// Evaluate the recentered chaos of a general tensor. Grouping is done on
/// the fly; batch evaluation should group once via [`group_coefficients`]
/// and reuse [`GroupedCoefficients::evaluate`].
pub fn evaluate_recentered(
    a: &CoefficientTensor,
    x: &[f64],
    moments: &MomentTable,
) -> Result<f64> {
    let k_star = decompose(a).k_star;
    if moments.k_max() < k_star {
        return Err(Error::Input(format!(
            "moments up to order {k_star} required, table has {}",
            moments.k_max()
        )));
    }
    group_coefficients(a).evaluate(x, moments)
}

/// `l^p` norm of a weight vector.
pub fn lp_norm(v: &[f64], p: f64) -> f64 {
    if p == 2.0 {
        return v.iter().map(|&x| x * x).sum::<f64>().sqrt();
    }
    v.iter()
        .map(|&x| x.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// Frobenius norm of a tensor.
pub fn hs_norm(a: &CoefficientTensor) -> f64 {
    a.hs_norm()
}

/// Operator (spectral) norm of an order-2 tensor by power iteration on
/// `A^T A`, to relative accuracy 1e-10.
pub fn operator_norm_2d(a: &CoefficientTensor) -> Result<f64> {
    if a.d != 2 {
        return Err(Error::Input(format!("operator norm requires d = 2, got d = {}", a.d)));
    }
    let n = a.n;
    if a.entries.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    // deterministic start with all Fourier modes touched
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 + 1.0) / (n as f64 + 1.0)).collect();
    let mut av = vec![0.0f64; n];
    let mut atav = vec![0.0f64; n];
    let mut sigma_prev = 0.0f64;
    for _ in 0..100_000 {
        // A v
        for i in 0..n {
            let row = &a.entries[i * n..(i + 1) * n];
            av[i] = row.iter().zip(&v).map(|(&r, &x)| r * x).sum();
        }
        // A^T (A v)
        for j in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                acc += a.entries[i * n + j] * av[i];
            }
            atav[j] = acc;
        }
        let norm_v = lp_norm(&v, 2.0);
        let sigma = lp_norm(&av, 2.0) / norm_v;
        let norm_atav = lp_norm(&atav, 2.0);
        if norm_atav == 0.0 {
            return Ok(sigma);
        }
        for (slot, &y) in v.iter_mut().zip(&atav) {
            *slot = y / norm_atav;
        }
        if (sigma - sigma_prev).abs() <= 1e-10 * sigma.max(1e-300) {
            return Ok(sigma);
        }
        sigma_prev = sigma;
    }
    Ok(sigma_prev)
}
