//! Truncated power series and the coefficient data of a totally positive symbol.
//!
//! A symbol is the pair
//!
//! ```text
//! φ₊(z) = e^{γ⁺z} Π(1+β⁺ᵢz) / Π(1−α⁺ᵢz)
//! φ₋(z) = e^{γ⁻/z} Π(1+β⁻ᵢ/z) / Π(1−α⁻ᵢ/z)
//! ```
//!
//! Coefficient `(f)_k` always means the coefficient of `z^k` in the Laurent
//! expansion on an annulus around the unit circle: φ₊ contributes only
//! `k ≥ 0`, φ₋ only `k ≤ 0`. One-sided series for φ₋ are stored in the
//! variable `1/z`, so `h_minus[n] = (φ₋)_{−n}`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tail mass below which a one-sided expansion counts as converged.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Largest internal order a ratio window may grow to.
pub const MAX_INTERNAL_ORDER: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// Parameters of φ₊ and φ₋. All lists are finite and every α, β lies in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SymbolParams {
    pub alpha_plus: Vec<f64>,
    pub beta_plus: Vec<f64>,
    pub alpha_minus: Vec<f64>,
    pub beta_minus: Vec<f64>,
    pub gamma_plus: f64,
    pub gamma_minus: f64,
}

/// The parameters of one side as a single specialization `F(α, β, γ)`.
#[derive(Debug, Clone, Copy)]
pub struct Specialization<'a> {
    pub alpha: &'a [f64],
    pub beta: &'a [f64],
    pub gamma: f64,
}

impl SymbolParams {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `φ₊ = Π(1 + rᵢz)`, `φ₋ = Π(1 − sᵢ/z)⁻¹`.
    pub fn widom(r: &[f64], s: &[f64]) -> Self {
        SymbolParams {
            beta_plus: r.to_vec(),
            alpha_minus: s.to_vec(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lists = [
            ("alpha_plus", &self.alpha_plus),
            ("beta_plus", &self.beta_plus),
            ("alpha_minus", &self.alpha_minus),
            ("beta_minus", &self.beta_minus),
        ];
        for (name, list) in lists {
            for &v in list.iter() {
                if !(v.is_finite() && (0.0..1.0).contains(&v)) {
                    return Err(Error::Domain(format!("{name} entry {v} outside [0, 1)")));
                }
            }
        }
        for (name, g) in [("gamma_plus", self.gamma_plus), ("gamma_minus", self.gamma_minus)] {
            if !(g.is_finite() && g >= 0.0) {
                return Err(Error::Domain(format!("{name} = {g} must be finite and nonnegative")));
            }
        }
        Ok(())
    }

    pub fn side(&self, side: Side) -> Specialization<'_> {
        match side {
            Side::Plus => Specialization {
                alpha: &self.alpha_plus,
                beta: &self.beta_plus,
                gamma: self.gamma_plus,
            },
            Side::Minus => Specialization {
                alpha: &self.alpha_minus,
                beta: &self.beta_minus,
                gamma: self.gamma_minus,
            },
        }
    }

    /// ρ: the largest α or β on either side.
    pub fn rho(&self) -> f64 {
        self.alpha_plus
            .iter()
            .chain(&self.beta_plus)
            .chain(&self.alpha_minus)
            .chain(&self.beta_minus)
            .copied()
            .fold(0.0, f64::max)
    }

    /// Admissible radius `r` with `1 < r < 1/ρ`: `1/√ρ`, or 2 when ρ = 0.
    pub fn radius(&self) -> f64 {
        let rho = self.rho();
        if rho > 0.0 {
            1.0 / rho.sqrt()
        } else {
            2.0
        }
    }

    pub fn has_exponential(&self) -> bool {
        self.gamma_plus != 0.0 || self.gamma_minus != 0.0
    }

    /// Exchange the two sides: `(φ₊(u), φ₋(v)) ↔ (φ₋(u⁻¹), φ₊(v⁻¹))`. Swaps A and B.
    pub fn swap_sides(&self) -> Self {
        SymbolParams {
            alpha_plus: self.alpha_minus.clone(),
            beta_plus: self.beta_minus.clone(),
            alpha_minus: self.alpha_plus.clone(),
            beta_minus: self.beta_plus.clone(),
            gamma_plus: self.gamma_minus,
            gamma_minus: self.gamma_plus,
        }
    }

    /// `φ₊(z) ↔ φ₊⁻¹(−z)` and likewise for φ₋: exchanges α and β on both sides.
    /// Transposes A and B.
    pub fn dual(&self) -> Self {
        SymbolParams {
            alpha_plus: self.beta_plus.clone(),
            beta_plus: self.alpha_plus.clone(),
            alpha_minus: self.beta_minus.clone(),
            beta_minus: self.alpha_minus.clone(),
            gamma_plus: self.gamma_plus,
            gamma_minus: self.gamma_minus,
        }
    }

    /// `(φ₊(u), φ₋(v)) ↔ (φ₋⁻¹(−u⁻¹), φ₊⁻¹(−v⁻¹))`, the switch `(A, B) ↔ (Bᵗ, Aᵗ)`.
    pub fn reversed(&self) -> Self {
        self.swap_sides().dual()
    }
}

impl Specialization<'_> {
    /// Power sums `p_k = γ[k=1] + Σαᵢᵏ + (−1)^{k−1} Σβᵢᵏ`.
    pub fn power_sum(&self, k: usize) -> f64 {
        let a: f64 = self.alpha.iter().map(|x| x.powi(k as i32)).sum();
        let b: f64 = self.beta.iter().map(|x| x.powi(k as i32)).sum();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        a + sign * b + if k == 1 { self.gamma } else { 0.0 }
    }

    fn power_sum_exact<S: Scalar>(&self, k: usize) -> Result<S> {
        let mut total = S::zero();
        for &a in self.alpha {
            total = total + num_traits::pow(S::from_param(a)?, k);
        }
        for &b in self.beta {
            let t = num_traits::pow(S::from_param(b)?, k);
            total = if k % 2 == 1 { total + t } else { total - t };
        }
        if k == 1 {
            total = total + S::from_param(self.gamma)?;
        }
        Ok(total)
    }

    /// The closed form `F(α, β, γ)(x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let num: f64 = self.beta.iter().map(|b| 1.0 + b * x).product();
        let den: f64 = self.alpha.iter().map(|a| 1.0 - a * x).product();
        (self.gamma * x).exp() * num / den
    }
}

/// Coefficients `c_0..=c_N` of a power series truncated at order N.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("a series needs at least the constant term".into()));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// `1 + 0·z + …` through order N.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = S::one();
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient at `n`; zero for negative `n`, `None` beyond the order.
    pub fn get(&self, n: i64) -> Option<S> {
        if n < 0 {
            Some(S::zero())
        } else {
            self.coeffs.get(n as usize).cloned()
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )))
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.is_zero() {
            return Err(Error::Domain("reciprocal of a series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = S::one() / a0;
        let mut r: Vec<S> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * r[k - j].clone();
            }
            r.push(-acc * inv0.clone());
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// `log a` for `a₀ = 1`, from `n·aₙ = Σ_{k=1}^{n} k·bₖ·a_{n−k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Domain("series log needs constant term 1".into()));
        }
        let n = self.order();
        let mut b = vec![S::zero(); n + 1];
        for m in 1..=n {
            let mut acc = S::from_i64(m as i64) * self.coeffs[m].clone();
            for k in 1..m {
                acc = acc - S::from_i64(k as i64) * b[k].clone() * self.coeffs[m - k].clone();
            }
            b[m] = acc / S::from_i64(m as i64);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `exp b` for `b₀ = 0`, by the same derivative recurrence.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("series exp needs constant term 0".into()));
        }
        let n = self.order();
        let mut a = vec![S::zero(); n + 1];
        a[0] = S::one();
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                acc = acc + S::from_i64(k as i64) * self.coeffs[k].clone() * a[m - k].clone();
            }
            a[m] = acc / S::from_i64(m as i64);
        }
        Ok(TruncatedSeries { coeffs: a })
    }

    /// `f(−z)`.
    pub fn reflect(&self) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::truncation(order, self.order(), "series truncation"));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn evaluate(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// `h_n = (φ±)_n` by direct product assembly:
/// `Π(1+βz)`, then division by each `(1−αz)`, then the exponential factor.
pub fn h_coefficients<S: Scalar>(
    params: &SymbolParams,
    side: Side,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    params.validate()?;
    specialization_series(params.side(side), order)
}

fn specialization_series<S: Scalar>(spec: Specialization<'_>, order: usize) -> Result<TruncatedSeries<S>> {
    let mut c = TruncatedSeries::<S>::one(order).coeffs;
    for &b in spec.beta {
        let b = S::from_param(b)?;
        for n in (1..=order).rev() {
            c[n] = c[n].clone() + b.clone() * c[n - 1].clone();
        }
    }
    for &a in spec.alpha {
        let a = S::from_param(a)?;
        for n in 1..=order {
            c[n] = c[n].clone() + a.clone() * c[n - 1].clone();
        }
    }
    let mut series = TruncatedSeries { coeffs: c };
    if spec.gamma != 0.0 {
        let g = S::from_param(spec.gamma)?;
        let mut e = Vec::with_capacity(order + 1);
        e.push(S::one());
        for n in 1..=order {
            let prev: S = e[n - 1].clone();
            e.push(prev * g.clone() / S::from_i64(n as i64));
        }
        series = series.mul(&TruncatedSeries { coeffs: e })?;
    }
    Ok(series)
}

/// Second route to `h_n`: Newton's identities `n·hₙ = Σ_{k=1}^{n} p_k h_{n−k}`.
pub fn h_coefficients_newton<S: Scalar>(
    params: &SymbolParams,
    side: Side,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    params.validate()?;
    let spec = params.side(side);
    let power: Vec<S> = (1..=order)
        .map(|k| spec.power_sum_exact::<S>(k))
        .collect::<Result<_>>()?;
    let mut h = vec![S::one()];
    for n in 1..=order {
        let mut acc = S::zero();
        for k in 1..=n {
            acc = acc + power[k - 1].clone() * h[n - k].clone();
        }
        h.push(acc / S::from_i64(n as i64));
    }
    Ok(TruncatedSeries { coeffs: h })
}

/// `e_n`: coefficients of `1/H(−v)`, where `H` is the h-series of the side.
pub fn e_coefficients<S: Scalar>(
    params: &SymbolParams,
    side: Side,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    h_coefficients::<S>(params, side, order)?.reflect().reciprocal()
}

/// `(ln φ±)_{±k}` for k = 0..=order, i.e. `p_k / k`.
pub fn log_coefficients<S: Scalar>(
    params: &SymbolParams,
    side: Side,
    order: usize,
) -> Result<TruncatedSeries<S>> {
    h_coefficients::<S>(params, side, order)?.log()
}

/// Fourier coefficients of `R = φ₋/φ₊` and `S = φ₊/φ₋` on a window `lo..=hi`.
#[derive(Debug, Clone)]
pub struct RatioWindow {
    lo: i64,
    hi: i64,
    ratio: Vec<f64>,
    dual: Vec<f64>,
    internal_order: usize,
}

impl RatioWindow {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn range(&self) -> Range<i64> {
        self.lo..self.hi + 1
    }

    /// One-sided order used for each factor.
    pub fn internal_order(&self) -> usize {
        self.internal_order
    }

    /// `(φ₋/φ₊)_k`, or `None` outside the window.
    pub fn ratio(&self, k: i64) -> Option<f64> {
        self.slot(k).map(|i| self.ratio[i])
    }

    /// `(φ₊/φ₋)_k`, or `None` outside the window.
    pub fn dual(&self, k: i64) -> Option<f64> {
        self.slot(k).map(|i| self.dual[i])
    }

    fn slot(&self, k: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&k).then(|| (k - self.lo) as usize)
    }

    /// `Σ_k (φ₋/φ₊)_k (φ₊/φ₋)_{−k}` over the symmetric part of the window;
    /// the constant term of the product, which is 1.
    pub fn product_constant_term(&self) -> f64 {
        let m = self.hi.min(-self.lo);
        (-m..=m)
            .map(|k| self.ratio(k).unwrap() * self.dual(-k).unwrap())
            .sum()
    }

    /// Least-squares slope of `ln|coeff|` against `|k|` over the outer half of
    /// each side, returned as a decay factor `x` with `|coeff(k)| ~ C·x^{−|k|}`.
    /// Sides whose tail is identically zero report `f64::INFINITY`.
    pub fn decay_rate(&self) -> f64 {
        let mut worst = f64::INFINITY;
        for coeffs in [&self.ratio, &self.dual] {
            for positive in [true, false] {
                let pts: Vec<(f64, f64)> = self
                    .range()
                    .filter(|&k| if positive { k > self.hi / 2 } else { k < self.lo / 2 })
                    .filter_map(|k| {
                        let c = coeffs[(k - self.lo) as usize].abs();
                        (c > 1e-300).then(|| (k.unsigned_abs() as f64, c.ln()))
                    })
                    .collect();
                if pts.len() < 2 {
                    continue;
                }
                let n = pts.len() as f64;
                let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
                let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
                let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
                let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
                if sxx > 0.0 {
                    worst = worst.min((-sxy / sxx).exp());
                }
            }
        }
        worst
    }
}

fn tail_mass(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    c[n / 2 + 1..].iter().map(|x| x.abs()).sum()
}

/// Build `(φ₋/φ₊)_k` and `(φ₊/φ₋)_k` for `k ∈ [lo, hi]`.
///
/// The one-sided factors start at order `max(64, 4·width)` and double until
/// the coefficient mass in the last octave is below [`TAIL_TOLERANCE`].
pub fn ratio_window(params: &SymbolParams, lo: i64, hi: i64) -> Result<RatioWindow> {
    params.validate()?;
    if lo > 0 || hi < 0 {
        return Err(Error::Domain(format!("window [{lo}, {hi}] must contain 0")));
    }
    let width = (hi - lo) as usize + 1;
    let mut order = 64.max(4 * width);
    loop {
        if order > MAX_INTERNAL_ORDER {
            return Err(Error::Truncation(format!(
                "ratio window [{lo}, {hi}] needs internal order above {MAX_INTERNAL_ORDER}; \
                 raise the order cap or narrow the window"
            )));
        }
        let h_plus = h_coefficients::<f64>(params, Side::Plus, order)?;
        let h_minus = h_coefficients::<f64>(params, Side::Minus, order)?;
        let inv_plus = h_plus.reciprocal()?;
        let inv_minus = h_minus.reciprocal()?;
        let converged = [&h_plus, &h_minus, &inv_plus, &inv_minus]
            .iter()
            .all(|s| tail_mass(s.coeffs()) < TAIL_TOLERANCE);
        if !converged {
            order *= 2;
            continue;
        }
        // R = φ₋ · (1/φ₊): z^{−a} times z^{b}, so k = b − a
        let ratio = (lo..=hi)
            .map(|k| laurent_coefficient(h_minus.coeffs(), inv_plus.coeffs(), k))
            .collect();
        // S = φ₊ · (1/φ₋): z^{b} times z^{−a}
        let dual = (lo..=hi)
            .map(|k| laurent_coefficient(inv_minus.coeffs(), h_plus.coeffs(), k))
            .collect();
        return Ok(RatioWindow {
            lo,
            hi,
            ratio,
            dual,
            internal_order: order,
        });
    }
}

/// Coefficient of `z^k` in `(Σ_a neg[a] z^{−a}) · (Σ_b pos[b] z^{b})`.
fn laurent_coefficient(neg: &[f64], pos: &[f64], k: i64) -> f64 {
    let n = neg.len().min(pos.len()) as i64;
    let start = 0.max(-k);
    let end = (n - 1).min(n - 1 - k);
    (start..=end)
        .map(|a| neg[a as usize] * pos[(a + k) as usize])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn series(v: &[f64]) -> TruncatedSeries<f64> {
        TruncatedSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let p = series(&[1.0, 1.0, 0.0, 0.0, 0.0]);
        let q = series(&[1.0, -1.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.mul(&q).unwrap().coeffs(), &[1.0, 0.0, -1.0, 0.0, 0.0]);
        let one = TruncatedSeries::one(4);
        assert_eq!(p.mul(&one).unwrap(), p);
        let geometric = series(&[1.0; 7]);
        let mut telescoped = vec![0.0; 7];
        telescoped[0] = 1.0;
        let lin = series(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(geometric.mul(&lin).unwrap().coeffs(), telescoped.as_slice());
        assert!(matches!(p.mul(&series(&[1.0])), Err(Error::Dimension(_))));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(TruncatedSeries::<f64>::one(3).reciprocal().unwrap(), TruncatedSeries::one(3));
        let r = series(&[1.0, -0.5, 0.0, 0.0, 0.0]).reciprocal().unwrap();
        assert_eq!(r.coeffs(), &[1.0, 0.5, 0.25, 0.125, 0.0625]);
        assert!(series(&[0.0, 1.0]).reciprocal().is_err());
        let a = TruncatedSeries::new(vec![ratio(1, 1), ratio(3, 7), ratio(-2, 5), ratio(1, 9)]).unwrap();
        let back = a.mul(&a.reciprocal().unwrap()).unwrap();
        assert_eq!(back, TruncatedSeries::<Rational>::one(3));
    }

    #[test]
    fn log_and_exp() {
        assert_eq!(TruncatedSeries::<f64>::one(4).log().unwrap(), TruncatedSeries::zero(4));
        let e = series(&[0.0, 1.0, 0.0, 0.0, 0.0, 0.0]).exp().unwrap();
        let mut fact = 1.0;
        for (n, c) in e.coeffs().iter().enumerate() {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((c - 1.0 / fact).abs() < 1e-15);
        }
        assert!(series(&[2.0, 1.0]).log().is_err());
        assert!(series(&[1.0, 1.0]).exp().is_err());
        let a = TruncatedSeries::new(vec![ratio(1, 1), ratio(1, 3), ratio(-1, 4), ratio(2, 5)]).unwrap();
        assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn h_coefficient_examples() {
        let zero = SymbolParams::trivial();
        assert_eq!(h_coefficients::<f64>(&zero, Side::Plus, 3).unwrap(), TruncatedSeries::one(3));
        let alpha = SymbolParams {
            alpha_plus: vec![0.5],
            ..Default::default()
        };
        assert_eq!(
            h_coefficients::<f64>(&alpha, Side::Plus, 4).unwrap().coeffs(),
            &[1.0, 0.5, 0.25, 0.125, 0.0625]
        );
        let beta = SymbolParams {
            beta_minus: vec![0.3],
            ..Default::default()
        };
        assert_eq!(
            h_coefficients::<Rational>(&beta, Side::Minus, 3).unwrap().coeffs(),
            &[ratio(1, 1), ratio(3, 10), ratio(0, 1), ratio(0, 1)]
        );
        let bad = SymbolParams {
            alpha_plus: vec![1.0],
            ..Default::default()
        };
        assert!(matches!(h_coefficients::<f64>(&bad, Side::Plus, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn e_coefficient_examples() {
        let beta = SymbolParams {
            beta_plus: vec![0.3],
            ..Default::default()
        };
        let e = e_coefficients::<Rational>(&beta, Side::Plus, 5).unwrap();
        for (n, c) in e.coeffs().iter().enumerate() {
            assert_eq!(*c, num_traits::pow(ratio(3, 10), n));
        }
        let mixed = SymbolParams {
            alpha_plus: vec![0.3, 0.1],
            beta_plus: vec![0.2],
            ..Default::default()
        };
        let swapped = SymbolParams {
            alpha_plus: vec![0.2],
            beta_plus: vec![0.3, 0.1],
            ..Default::default()
        };
        assert_eq!(
            e_coefficients::<Rational>(&mixed, Side::Plus, 12).unwrap(),
            h_coefficients::<Rational>(&swapped, Side::Plus, 12).unwrap()
        );
    }

    #[test]
    fn ratio_window_examples() {
        let w = ratio_window(&SymbolParams::trivial(), -5, 5).unwrap();
        for k in -5..=5 {
            let expect = if k == 0 { 1.0 } else { 0.0 };
            assert_eq!(w.ratio(k).unwrap(), expect);
            assert_eq!(w.dual(k).unwrap(), expect);
        }
        let a = 0.3;
        let p = SymbolParams {
            alpha_plus: vec![a],
            ..Default::default()
        };
        let w = ratio_window(&p, -6, 6).unwrap();
        for k in -6..=6 {
            let expect = match k {
                0 => 1.0,
                1 => -a,
                _ => 0.0,
            };
            assert!((w.ratio(k).unwrap() - expect).abs() < 1e-15, "k={k}");
        }
        assert!(ratio_window(&p, 1, 4).is_err());
        assert!(w.ratio(7).is_none());
    }
}
