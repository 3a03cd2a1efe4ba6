//! Partitions, Schur functions under a specialization, and the Schur measure
//! `P{λ} = s_λ⁺ s_λ⁻ / Z`.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel;
use crate::linalg::DenseMatrix;
use crate::operators::OperatorTruncation;
use crate::scalar::Scalar;
use crate::series::{self, Side, SymbolParams, TruncatedSeries};

/// Largest partition size the brute-force sums will enumerate.
pub const MAX_ENUMERATION_SIZE: usize = 60;

/// Integer partition with its Frobenius coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    arms: Vec<usize>,
    legs: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            arms: Vec::new(),
            legs: Vec::new(),
        }
    }

    /// From weakly decreasing parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::Domain("zero part before a positive part".into()));
        }
        Ok(Self::from_sorted(parts))
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let conj = conjugate_parts(&parts);
        let rank = parts.iter().enumerate().take_while(|&(i, &p)| p > i).count();
        let arms = (0..rank).map(|i| parts[i] - i - 1).collect();
        let legs = (0..rank).map(|i| conj[i] - i - 1).collect();
        Partition { parts, arms, legs }
    }

    /// From Frobenius coordinates `(p₁ > … > p_d | q₁ > … > q_d)`.
    pub fn from_frobenius(arms: &[usize], legs: &[usize]) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::Domain("arm and leg lists differ in length".into()));
        }
        if arms.windows(2).any(|w| w[0] <= w[1]) || legs.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Domain("Frobenius coordinates must be strictly decreasing".into()));
        }
        let d = arms.len();
        let rows = if d == 0 { 0 } else { legs[0] + 1 };
        let mut parts = vec![0usize; rows];
        for (i, part) in parts.iter_mut().enumerate() {
            if i < d {
                *part = arms[i] + i + 1;
            } else {
                // row i below the diagonal block: columns j < d with leg reaching row i
                *part = (0..d).filter(|&j| legs[j] + j >= i).count();
            }
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    pub fn arms(&self) -> &[usize] {
        &self.arms
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn conjugate(&self) -> Partition {
        Self::from_sorted(conjugate_parts(&self.parts))
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Whether `x ∈ L(λ) = {λ_i − i : i ≥ 1}`.
    pub fn occupies(&self, x: i64) -> bool {
        let len = self.parts.len() as i64;
        if x < -len {
            return true;
        }
        self.parts
            .iter()
            .enumerate()
            .any(|(i, &p)| p as i64 - (i as i64 + 1) == x)
    }

    /// `L(λ) ∩ [lo, hi]`, increasing.
    pub fn positions(&self, lo: i64, hi: i64) -> Vec<i64> {
        let len = self.parts.len() as i64;
        let mut out: Vec<i64> = (lo..=hi.min(-len - 1)).collect();
        let mut rows: Vec<i64> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 - i as i64 - 1)
            .filter(|x| (lo..=hi).contains(x))
            .collect();
        rows.reverse();
        out.extend(rows);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

fn conjugate_parts(parts: &[usize]) -> Vec<usize> {
    let first = parts.first().copied().unwrap_or(0);
    (1..=first).map(|j| parts.iter().take_while(|&&p| p >= j).count()).collect()
}

/// All partitions of sizes `0..=max_size`, by size, each size in decreasing
/// lexicographic order (from `(n)` down to `(1ⁿ)`).
#[derive(Debug, Clone)]
pub struct PartitionStream {
    max_size: usize,
    size: usize,
    next: Option<Vec<usize>>,
}

pub fn enumerate_partitions(max_size: usize) -> Result<PartitionStream> {
    if max_size > MAX_ENUMERATION_SIZE {
        return Err(Error::Resource(format!(
            "partition enumeration capped at size {MAX_ENUMERATION_SIZE}, asked for {max_size}"
        )));
    }
    Ok(PartitionStream {
        max_size,
        size: 0,
        next: Some(Vec::new()),
    })
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut ones = 0;
        while succ.last() == Some(&1) {
            succ.pop();
            ones += 1;
        }
        self.next = match succ.pop() {
            Some(v) => {
                let smaller = v - 1;
                let mut rem = ones + 1;
                succ.push(smaller);
                while rem > smaller {
                    succ.push(smaller);
                    rem -= smaller;
                }
                if rem > 0 {
                    succ.push(rem);
                }
                Some(succ)
            }
            None if self.size < self.max_size => {
                self.size += 1;
                Some(vec![self.size])
            }
            None => None,
        };
        Some(Partition::from_sorted(current))
    }
}

/// `s_λ = det[h_{λ_i − i + j}]` over `ℓ(λ) × ℓ(λ)`.
pub fn schur_jacobi_trudi<S: Scalar>(lambda: &Partition, h: &TruncatedSeries<S>) -> Result<S> {
    let n = lambda.len();
    if n == 0 {
        return Ok(S::one());
    }
    let needed = lambda.part(1) + n - 1;
    if h.order() < needed {
        return Err(Error::truncation(needed, h.order(), "Jacobi-Trudi determinant"));
    }
    let m = DenseMatrix::from_fn(n, n, |i, j| {
        let idx = lambda.parts[i] as i64 - i as i64 + j as i64;
        h.get(idx).unwrap_or_else(S::zero)
    });
    m.determinant()
}

/// `s_λ = det[e_{λ'_i − i + j}]` over `λ₁ × λ₁`.
pub fn schur_dual_jacobi_trudi<S: Scalar>(lambda: &Partition, e: &TruncatedSeries<S>) -> Result<S> {
    schur_jacobi_trudi(&lambda.conjugate(), e)
}

/// `s_λ = det[s_{(p_i | q_j)}]`, hook values read from a hook matrix.
pub fn schur_giambelli<S: Scalar>(lambda: &Partition, hooks: &OperatorTruncation<S>) -> Result<S> {
    let d = lambda.rank();
    if d == 0 {
        return Ok(S::one());
    }
    let n = hooks.matrix.rows();
    if lambda.arms[0] >= n || lambda.legs[0] >= n {
        return Err(Error::Truncation(format!(
            "Frobenius coordinates of {lambda:?} exceed hook matrix order {n}"
        )));
    }
    hooks.matrix.minor_unordered(&lambda.arms, &lambda.legs)
}

impl<S: Scalar> DenseMatrix<S> {
    /// Determinant of the submatrix picked by arbitrary (distinct) index lists,
    /// in the given order.
    pub fn minor_unordered(&self, rows: &[usize], cols: &[usize]) -> Result<S> {
        if rows.len() != cols.len() {
            return Err(Error::Index("row and column lists differ in length".into()));
        }
        if rows.iter().any(|&r| r >= self.rows()) || cols.iter().any(|&c| c >= self.cols()) {
            return Err(Error::Index("minor index out of range".into()));
        }
        self.submatrix(rows, cols).determinant()
    }
}

/// `Z = exp Σ_k p_k⁺ p_k⁻ / k` in closed (Cauchy product) form. Exact for
/// rational parameters when `γ± = 0`; the exponential factor needs floats.
pub fn cauchy_z<S: Scalar>(params: &SymbolParams) -> Result<S> {
    params.validate()?;
    let conv = |v: &[f64]| v.iter().map(|&x| S::from_param(x)).collect::<Result<Vec<S>>>();
    let (ap, bp, am, bm) = (
        conv(&params.alpha_plus)?,
        conv(&params.beta_plus)?,
        conv(&params.alpha_minus)?,
        conv(&params.beta_minus)?,
    );
    let gp = S::from_param(params.gamma_plus)?;
    let gm = S::from_param(params.gamma_minus)?;
    let sum = |v: &[S]| v.iter().fold(S::zero(), |acc, x| acc + x.clone());
    let exponent = gp.clone() * gm.clone()
        + gp * (sum(&am) + sum(&bm))
        + gm * (sum(&ap) + sum(&bp));
    let mut z = exponent
        .exp()
        .ok_or_else(|| Error::Domain("exact Z needs γ⁺ = γ⁻ = 0 (exp factor is irrational)".into()))?;
    let one = S::one();
    for a in &ap {
        for b in &am {
            z = z / (one.clone() - a.clone() * b.clone());
        }
        for b in &bm {
            z = z * (one.clone() + a.clone() * b.clone());
        }
    }
    for a in &bp {
        for b in &am {
            z = z * (one.clone() + a.clone() * b.clone());
        }
        for b in &bm {
            z = z / (one.clone() - a.clone() * b.clone());
        }
    }
    Ok(z)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormalizationZ {
    pub value: f64,
    pub terms: usize,
    /// Magnitude of the last summed term; the omitted tail is of this order.
    pub tail_estimate: f64,
}

/// `Z = exp Σ_{k≥1} k (ln φ₊)_k (ln φ₋)_{−k}` from the log series.
pub fn normalization_z(params: &SymbolParams, order: usize) -> Result<NormalizationZ> {
    let exponent = z_exponent_terms(params, order)?;
    let tail = exponent.iter().rev().take(4).map(|t| t.abs()).fold(0.0, f64::max);
    if tail > 1e-13 {
        return Err(Error::Truncation(format!(
            "log-series sum for Z not converged at order {order} (last terms {tail:e})"
        )));
    }
    let total: f64 = exponent.iter().sum();
    Ok(NormalizationZ {
        value: total.exp(),
        terms: order,
        tail_estimate: tail,
    })
}

/// `k (ln φ₊)_k (ln φ₋)_{−k}` for `k = 1..=order`.
fn z_exponent_terms(params: &SymbolParams, order: usize) -> Result<Vec<f64>> {
    let lp = series::log_coefficients::<f64>(params, Side::Plus, order)?;
    let lm = series::log_coefficients::<f64>(params, Side::Minus, order)?;
    Ok((1..=order)
        .map(|k| k as f64 * lp.coeffs()[k] * lm.coeffs()[k])
        .collect())
}

/// Distribution of `|λ|` under the Schur measure: `P(|λ| = n) = [tⁿ] Z(t) / Z`
/// with `Z(t) = exp Σ_k p_k⁺ p_k⁻ tᵏ / k`.
pub fn size_distribution(params: &SymbolParams, order: usize) -> Result<Vec<f64>> {
    let mut b = vec![0.0];
    b.extend(z_exponent_terms(params, order)?);
    let zt = TruncatedSeries::new(b)?.exp()?;
    let z = cauchy_z::<f64>(params)?;
    Ok(zt.coeffs().iter().map(|c| c / z).collect())
}

/// `P(|λ| > max_size)`: summed exactly to `4·max_size + 40`, then bounded by a
/// geometric envelope fitted to the last coefficients.
pub fn size_tail_bound(params: &SymbolParams, max_size: usize) -> Result<f64> {
    let order = 4 * max_size + 40;
    let dist = size_distribution(params, order)?;
    let head: f64 = dist[max_size + 1..].iter().sum();
    let last = dist[order].abs();
    let ratio = dist[order - 8..]
        .windows(2)
        .filter(|w| w[0].abs() > 0.0)
        .map(|w| (w[1] / w[0]).abs())
        .fold(0.0, f64::max);
    let envelope = if last == 0.0 {
        0.0
    } else if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        return Err(Error::Truncation(format!(
            "size distribution not yet decaying at order {order}"
        )));
    };
    Ok(head.max(0.0) + envelope)
}

/// Specialized h-series, the normalization and a weight cache.
pub struct MeasureContext<S> {
    pub params: SymbolParams,
    pub h_plus: TruncatedSeries<S>,
    pub h_minus: TruncatedSeries<S>,
    pub e_plus: TruncatedSeries<S>,
    pub e_minus: TruncatedSeries<S>,
    pub z: S,
    cache: RwLock<HashMap<Partition, S>>,
}

impl<S: Scalar> MeasureContext<S> {
    /// `order` bounds `λ₁ + ℓ(λ) − 1` for every partition weighed.
    pub fn new(params: &SymbolParams, order: usize) -> Result<Self> {
        params.validate()?;
        Ok(MeasureContext {
            params: params.clone(),
            h_plus: series::h_coefficients(params, Side::Plus, order)?,
            h_minus: series::h_coefficients(params, Side::Minus, order)?,
            e_plus: series::e_coefficients(params, Side::Plus, order)?,
            e_minus: series::e_coefficients(params, Side::Minus, order)?,
            z: cauchy_z(params)?,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Context able to weigh every partition of size up to `max_size`.
    pub fn for_size(params: &SymbolParams, max_size: usize) -> Result<Self> {
        Self::new(params, max_size.max(1))
    }

    /// Jacobi–Trudi in `h` or in `e`, whichever determinant is smaller.
    pub fn schur_plus(&self, lambda: &Partition) -> Result<S> {
        schur_either(lambda, &self.h_plus, &self.e_plus)
    }

    pub fn schur_minus(&self, lambda: &Partition) -> Result<S> {
        schur_either(lambda, &self.h_minus, &self.e_minus)
    }

    pub fn weight(&self, lambda: &Partition) -> Result<S> {
        if let Some(w) = self.cache.read().expect("weight cache poisoned").get(lambda) {
            return Ok(w.clone());
        }
        let w = self.schur_plus(lambda)? * self.schur_minus(lambda)? / self.z.clone();
        self.cache
            .write()
            .expect("weight cache poisoned")
            .entry(lambda.clone())
            .or_insert_with(|| w.clone());
        Ok(w)
    }

    pub fn cached_weights(&self) -> usize {
        self.cache.read().expect("weight cache poisoned").len()
    }
}

fn schur_either<S: Scalar>(lambda: &Partition, h: &TruncatedSeries<S>, e: &TruncatedSeries<S>) -> Result<S> {
    if lambda.part(1) < lambda.len() {
        schur_dual_jacobi_trudi(lambda, e)
    } else {
        schur_jacobi_trudi(lambda, h)
    }
}

#[derive(Debug, Clone)]
pub struct Correlation<S> {
    pub value: S,
    pub tail_bound: f64,
    pub partitions: usize,
}

/// `Σ_{λ : L(λ) ⊇ points} P{λ}` over `|λ| ≤ max_size`, for several point sets at once.
pub fn brute_correlations<S: Scalar>(
    ctx: &MeasureContext<S>,
    point_sets: &[Vec<i64>],
    max_size: usize,
) -> Result<Vec<Correlation<S>>> {
    for pts in point_sets {
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("points {pts:?} are not distinct")));
        }
    }
    let tail = size_tail_bound(&ctx.params, max_size)?;
    let lo = point_sets.iter().flatten().copied().min().unwrap_or(0);
    let hi = point_sets.iter().flatten().copied().max().unwrap_or(0);
    if hi - lo >= 128 {
        return Err(Error::Resource("point sets span more than 128 sites".into()));
    }
    let mask_of = |pts: &[i64]| pts.iter().fold(0u128, |m, &x| m | 1 << (x - lo));
    let masks: Vec<u128> = point_sets.iter().map(|p| mask_of(p)).collect();
    let mut sums = vec![S::zero(); point_sets.len()];
    let mut visited = 0;
    for lambda in enumerate_partitions(max_size)? {
        visited += 1;
        let occupied = mask_of(&lambda.positions(lo, hi));
        let mut weight: Option<S> = None;
        for (sum, &mask) in sums.iter_mut().zip(&masks) {
            if occupied & mask == mask {
                let w = match &weight {
                    Some(w) => w.clone(),
                    None => weight.insert(ctx.weight(&lambda)?).clone(),
                };
                *sum = sum.clone() + w;
            }
        }
    }
    Ok(sums
        .into_iter()
        .map(|value| Correlation {
            value,
            tail_bound: tail,
            partitions: visited,
        })
        .collect())
}

pub fn brute_correlation<S: Scalar>(
    ctx: &MeasureContext<S>,
    points: &[i64],
    max_size: usize,
) -> Result<Correlation<S>> {
    Ok(brute_correlations(ctx, &[points.to_vec()], max_size)?.remove(0))
}

/// `Σ_{|λ| ≤ max_size} P{λ}` and the number of partitions summed.
pub fn total_mass<S: Scalar>(ctx: &MeasureContext<S>, max_size: usize) -> Result<(S, usize)> {
    let mut total = S::zero();
    let mut count = 0;
    for lambda in enumerate_partitions(max_size)? {
        total = total + ctx.weight(&lambda)?;
        count += 1;
    }
    Ok((total, count))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationCheck {
    pub points: Vec<i64>,
    pub brute_force: f64,
    pub determinant: f64,
    pub difference: f64,
    pub tail_bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem3Report {
    pub max_size: usize,
    pub tolerance: f64,
    pub partitions: usize,
    pub kernel_window: (i64, i64),
    pub checks: Vec<CorrelationCheck>,
    pub pass: bool,
}

/// Compare brute-force correlations with `det[𝒦(x_i, x_j)]` for each point set.
pub fn verify_theorem3(
    ctx: &MeasureContext<f64>,
    point_sets: &[Vec<i64>],
    max_size: usize,
    tolerance: f64,
) -> Result<Theorem3Report> {
    let lo = point_sets.iter().flatten().copied().min().unwrap_or(-1).min(-1);
    let hi = point_sets.iter().flatten().copied().max().unwrap_or(0).max(0);
    let zk = kernel::z_kernel(&ctx.params, lo, hi)?;
    let brute = brute_correlations(ctx, point_sets, max_size)?;
    let mut checks = Vec::with_capacity(point_sets.len());
    let mut partitions = 0;
    for (pts, corr) in point_sets.iter().zip(brute) {
        let det = zk.correlation(pts)?;
        let difference = (corr.value - det).abs();
        partitions = corr.partitions;
        checks.push(CorrelationCheck {
            points: pts.clone(),
            brute_force: corr.value,
            determinant: det,
            difference,
            tail_bound: corr.tail_bound,
            pass: difference <= corr.tail_bound + tolerance,
        });
    }
    Ok(Theorem3Report {
        max_size,
        tolerance,
        partitions,
        kernel_window: (lo, hi),
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

/// Every singleton and every unordered pair drawn from `lo..=hi`.
pub fn singletons_and_pairs(lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut sets: Vec<Vec<i64>> = (lo..=hi).map(|x| vec![x]).collect();
    for x in lo..=hi {
        for y in x + 1..=hi {
            sets.push(vec![x, y]);
        }
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_a, Route};
    use crate::scalar::{ratio, Rational};

    #[test]
    fn enumeration_counts() {
        let all: Vec<Partition> = enumerate_partitions(0).unwrap().collect();
        assert_eq!(all, vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=10)
            .map(|n| enumerate_partitions(10).unwrap().filter(|p| p.size() == n).count())
            .collect();
        assert_eq!(counts[5], 7);
        assert_eq!(counts[10], 42);
        assert!(matches!(enumerate_partitions(61), Err(Error::Resource(_))));
        let order: Vec<Vec<usize>> = enumerate_partitions(3)
            .unwrap()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            order,
            vec![vec![], vec![1], vec![2], vec![1, 1], vec![3], vec![2, 1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn frobenius_coordinates() {
        let l = Partition::new(vec![4, 3, 1]).unwrap();
        // diagonal cells (1,1), (2,2): arms 3, 1; legs 2, 0
        assert_eq!(l.arms(), &[3, 1]);
        assert_eq!(l.legs(), &[2, 0]);
        assert_eq!(Partition::from_frobenius(&[3, 1], &[2, 0]).unwrap(), l);
        assert_eq!(l.conjugate().parts(), &[3, 2, 2, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::from_frobenius(&[1, 1], &[1, 0]).is_err());
    }

    #[test]
    fn occupied_positions_follow_frobenius_lemma() {
        let l = Partition::new(vec![4, 3, 1]).unwrap();
        // {λ_i − i} = {3, 1, −2, −4, −5, …}
        assert_eq!(l.positions(-6, 5), vec![-6, -5, -4, -2, 1, 3]);
        assert!(Partition::empty().occupies(-1));
        assert!(!Partition::empty().occupies(0));
    }

    #[test]
    fn jacobi_trudi_examples() {
        let h = series::h_coefficients::<Rational>(
            &SymbolParams {
                alpha_plus: vec![0.5],
                ..Default::default()
            },
            Side::Plus,
            10,
        )
        .unwrap();
        assert_eq!(schur_jacobi_trudi(&Partition::empty(), &h).unwrap(), ratio(1, 1));
        let row = Partition::new(vec![4]).unwrap();
        assert_eq!(schur_jacobi_trudi(&row, &h).unwrap(), ratio(1, 16));
        let col = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(schur_jacobi_trudi(&col, &h).unwrap(), ratio(0, 1));
        let big = Partition::new(vec![11, 3]).unwrap();
        assert!(matches!(schur_jacobi_trudi(&big, &h), Err(Error::Truncation(_))));
    }

    #[test]
    fn dual_jacobi_trudi_agrees() {
        let p = SymbolParams {
            alpha_plus: vec![0.3],
            beta_plus: vec![0.2, 0.1],
            gamma_plus: 0.5,
            ..Default::default()
        };
        let h = series::h_coefficients::<Rational>(&p, Side::Plus, 12).unwrap();
        let e = series::e_coefficients::<Rational>(&p, Side::Plus, 12).unwrap();
        for lambda in enumerate_partitions(7).unwrap() {
            assert_eq!(
                schur_jacobi_trudi(&lambda, &h).unwrap(),
                schur_dual_jacobi_trudi(&lambda, &e).unwrap(),
                "{lambda:?}"
            );
        }
    }

    #[test]
    fn giambelli_on_hooks_and_square() {
        let p = SymbolParams {
            alpha_plus: vec![0.3],
            beta_plus: vec![0.2],
            ..Default::default()
        };
        let a = build_a::<Rational>(&p, 6, Route::HookSchur).unwrap();
        let h = series::h_coefficients::<Rational>(&p, Side::Plus, 20).unwrap();
        let hook = Partition::new(vec![3, 1, 1]).unwrap(); // (2|2)
        assert_eq!(schur_giambelli(&hook, &a).unwrap(), a.matrix[(2, 2)]);
        let square = Partition::new(vec![2, 2]).unwrap(); // (1,0|1,0)
        let m = &a.matrix;
        let expect = m[(1, 1)].clone() * m[(0, 0)].clone() - m[(1, 0)].clone() * m[(0, 1)].clone();
        assert_eq!(schur_giambelli(&square, &a).unwrap(), expect);
        assert_eq!(schur_giambelli(&square, &a).unwrap(), schur_jacobi_trudi(&square, &h).unwrap());
        let wide = Partition::new(vec![8]).unwrap();
        assert!(schur_giambelli(&wide, &a).is_err());
    }

    #[test]
    fn z_closed_forms() {
        assert_eq!(cauchy_z::<Rational>(&SymbolParams::trivial()).unwrap(), ratio(1, 1));
        let geo = SymbolParams {
            alpha_plus: vec![0.5],
            alpha_minus: vec![0.5],
            ..Default::default()
        };
        assert_eq!(cauchy_z::<Rational>(&geo).unwrap(), ratio(4, 3));
        let z = normalization_z(&geo, 200).unwrap();
        assert!((z.value - 4.0 / 3.0).abs() < 1e-12);
        let exp = SymbolParams {
            gamma_plus: 0.5,
            gamma_minus: 0.5,
            ..Default::default()
        };
        assert!(cauchy_z::<Rational>(&exp).is_err());
        assert!((cauchy_z::<f64>(&exp).unwrap() - 0.25f64.exp()).abs() < 1e-15);
        assert!(matches!(normalization_z(&geo, 10), Err(Error::Truncation(_))));
    }

    #[test]
    fn weights_for_geometric_measure() {
        let geo = SymbolParams {
            alpha_plus: vec![0.5],
            alpha_minus: vec![0.5],
            ..Default::default()
        };
        let ctx = MeasureContext::<Rational>::for_size(&geo, 10).unwrap();
        assert_eq!(ctx.weight(&Partition::empty()).unwrap(), ratio(3, 4));
        let two = Partition::new(vec![2]).unwrap();
        assert_eq!(ctx.weight(&two).unwrap(), ratio(3, 64)); // 0.046875
        assert_eq!(ctx.weight(&Partition::new(vec![1, 1]).unwrap()).unwrap(), ratio(0, 1));
        assert_eq!(ctx.cached_weights(), 3);
    }

    #[test]
    fn vacuum_correlations() {
        let ctx = MeasureContext::<f64>::for_size(&SymbolParams::trivial(), 10).unwrap();
        let c = brute_correlation(&ctx, &[-1], 10).unwrap();
        assert_eq!(c.value, 1.0);
        assert_eq!(brute_correlation(&ctx, &[0], 10).unwrap().value, 0.0);
        assert_eq!(brute_correlation(&ctx, &[], 10).unwrap().value, 1.0);
        assert!(brute_correlation(&ctx, &[1, 1], 10).is_err());
        assert!(matches!(brute_correlation(&ctx, &[0], 61), Err(Error::Resource(_))));
    }
}
