//! The correlation kernel `K = L(1+L)⁻¹` by three independent routes, and
//! the kernel 𝒦 on ℤ.
//!
//! Contour integrals are never evaluated by quadrature. With
//! `R = φ₋/φ₊` and `S = φ₊/φ₋`, expanding `1/(1−zw)` geometrically turns
//! every double integral into a one-dimensional sum of ratio coefficients:
//!
//! ```text
//! (K₁₁)_pq = (−1)^{p+q} Σ_{k≥1} R_{p+k} S_{−q−k}
//! (K₁₂)_pq = (−1)^p     Σ_{m≥0} R_{p−m} S_{q+1+m}
//! (K₂₁)_pq = (−1)^{q+1} Σ_{m≥0} R_{−p−1−m} S_{m−q}
//! (K₂₂)_pq =            Σ_{k≥1} R_{−p−k} S_{q+k}
//! 𝒦(x, y)  =            Σ_{k≥1} R_{−x−k} S_{y+k}
//! ```
//!
//! The K₂₁ sum carries the monomial `z^p / w^{q+1}`; with `w^p / z^{q+1}`
//! the result does not match `−(1+BAᵗ)⁻¹B`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::operators::{self, adaptive_sum, with_window, OperatorTruncation, Route};
use crate::scalar::Scalar;
use crate::series::{RatioWindow, SymbolParams};

/// Agreement required between the two resolvent routes.
pub const RESOLVENT_TOLERANCE: f64 = 1e-10;
/// Agreement required once series truncation enters.
pub const SERIES_TOLERANCE: f64 = 1e-8;
/// Tolerance for the identities `K₁₁ = AᵗB(1−K₁₁)` and `AᵗBK₁₂ = Aᵗ − K₁₂`.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum KernelRoute {
    DirectResolvent,
    BlockFormula,
    SeriesFormula,
}

#[derive(Debug, Clone)]
pub struct KernelBundle<S> {
    pub k11: DenseMatrix<S>,
    pub k12: DenseMatrix<S>,
    pub k21: DenseMatrix<S>,
    pub k22: DenseMatrix<S>,
    pub route: KernelRoute,
    pub order: usize,
    /// Route-specific self-checks, e.g. `(1+L)(1−K) − 1`.
    pub residuals: BTreeMap<String, f64>,
}

impl<S: Scalar> KernelBundle<S> {
    pub fn blocks(&self) -> [(&'static str, &DenseMatrix<S>); 4] {
        [("k11", &self.k11), ("k12", &self.k12), ("k21", &self.k21), ("k22", &self.k22)]
    }

    /// Full `2N × 2N` kernel.
    pub fn assemble(&self) -> DenseMatrix<S> {
        let n = self.order;
        let mut k = DenseMatrix::zeros(2 * n, 2 * n);
        k.set_block(0, 0, &self.k11);
        k.set_block(0, n, &self.k12);
        k.set_block(n, 0, &self.k21);
        k.set_block(n, n, &self.k22);
        k
    }

    /// Largest block-wise difference over the top-left `corner × corner` of every block.
    pub fn corner_difference(&self, other: &KernelBundle<S>, corner: usize) -> Result<f64> {
        if self.order != other.order {
            return Err(Error::Dimension(format!(
                "kernel orders differ: {} vs {}",
                self.order, other.order
            )));
        }
        let c = corner.min(self.order);
        let mut worst = 0.0f64;
        for ((_, a), (_, b)) in self.blocks().into_iter().zip(other.blocks()) {
            let d = a.block(0, c, 0, c).max_abs_diff(&b.block(0, c, 0, c))?;
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

/// `K = 1 − (1+L)⁻¹`, split into four blocks.
pub fn kernel_direct<S: Scalar>(l: &DenseMatrix<S>) -> Result<KernelBundle<S>> {
    if !l.is_square() || !l.rows().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "L must be square of even order, got {}x{}",
            l.rows(),
            l.cols()
        )));
    }
    let n = l.rows() / 2;
    let one_plus_l = l.shift_identity(&S::one());
    let (inv, condition) = one_plus_l.inverse_with_condition()?;
    let k = inv.shift_identity(&-S::one());
    // (1+L)(1−K) = (1+L)·inv should be the identity
    let residual = (&one_plus_l * &inv).max_abs_diff(&DenseMatrix::identity(2 * n))?;
    let mut residuals = BTreeMap::new();
    residuals.insert("resolvent_identity".to_string(), residual);
    residuals.insert("condition_estimate".to_string(), condition);
    Ok(KernelBundle {
        k11: k.block(0, n, 0, n),
        k12: k.block(0, n, n, 2 * n),
        k21: k.block(n, 2 * n, 0, n),
        k22: k.block(n, 2 * n, n, 2 * n),
        route: KernelRoute::DirectResolvent,
        order: n,
        residuals,
    })
}

/// The block formula in terms of `(1+AᵗB)⁻¹` and `(1+BAᵗ)⁻¹`.
pub fn kernel_blocks<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<KernelBundle<S>> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n || b.cols() != n {
        return Err(Error::Dimension("A and B must be square of equal order".into()));
    }
    let at = a.transpose();
    let atb = at.matmul(b)?;
    let bat = b.matmul(&at)?;
    let m_inv = atb.shift_identity(&S::one()).inverse()?;
    let n_inv = bat.shift_identity(&S::one()).inverse()?;
    let k11 = m_inv.shift_identity(&-S::one());
    let k12 = m_inv.matmul(&at)?;
    let k21 = -&n_inv.matmul(b)?;
    let k22 = n_inv.shift_identity(&-S::one());

    let mut residuals = BTreeMap::new();
    // K₁₁ = AᵗB(1 − K₁₁)
    let one_minus_k11 = k11.shift_identity(&-S::one());
    let r11 = atb.matmul(&one_minus_k11)?.max_abs_diff(&k11)?;
    residuals.insert("k11_identity".to_string(), r11);
    // AᵗB K₁₂ = Aᵗ − K₁₂
    let r12 = atb.matmul(&k12)?.max_abs_diff(&(&at - &k12))?;
    residuals.insert("k12_identity".to_string(), r12);
    Ok(KernelBundle {
        k11,
        k12,
        k21,
        k22,
        route: KernelRoute::BlockFormula,
        order: n,
        residuals,
    })
}

/// Convenience: A and B by the hook-Schur route, then [`kernel_blocks`].
pub fn kernel_blocks_from_params<S: Scalar>(params: &SymbolParams, order: usize) -> Result<KernelBundle<S>> {
    let a = operators::build_a::<S>(params, order, Route::HookSchur)?;
    let b = operators::build_b::<S>(params, order, Route::HookSchur)?;
    kernel_blocks(&a.matrix, &b.matrix)
}

pub fn kernel_direct_from_params<S: Scalar>(params: &SymbolParams, order: usize) -> Result<KernelBundle<S>> {
    let a = operators::build_a::<S>(params, order, Route::HookSchur)?;
    let b = operators::build_b::<S>(params, order, Route::HookSchur)?;
    kernel_direct(&operators::build_l(&a, &b)?)
}

fn sign(parity: i64) -> f64 {
    if parity.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn series_blocks(w: &RatioWindow, n: usize) -> Option<([Vec<f64>; 4], usize)> {
    let mut blocks: [Vec<f64>; 4] = Default::default();
    let mut cutoff = 0;
    for p in 0..n as i64 {
        for q in 0..n as i64 {
            let (k11, c1) = adaptive_sum(0, |k| Some(w.ratio(p + k + 1)? * w.dual(-q - k - 1)?))?;
            let (k12, c2) = adaptive_sum(p as usize, |m| Some(w.ratio(p - m)? * w.dual(q + 1 + m)?))?;
            let (k21, c3) = adaptive_sum(q as usize, |m| Some(w.ratio(-p - 1 - m)? * w.dual(m - q)?))?;
            let (k22, c4) = adaptive_sum(0, |k| Some(w.ratio(-p - k - 1)? * w.dual(q + k + 1)?))?;
            blocks[0].push(sign(p + q) * k11);
            blocks[1].push(sign(p) * k12);
            blocks[2].push(sign(q + 1) * k21);
            blocks[3].push(k22);
            cutoff = cutoff.max(c1).max(c2).max(c3).max(c4);
        }
    }
    Some((blocks, cutoff))
}

/// Kernel blocks from the expanded double-contour formulas.
pub fn kernel_series(params: &SymbolParams, order: usize) -> Result<KernelBundle<f64>> {
    if order == 0 {
        return Err(Error::Domain("truncation order must be at least 1".into()));
    }
    let ((blocks, cutoff), window) = with_window(params, order, |w| series_blocks(w, order))?;
    let [k11, k12, k21, k22] = blocks;
    let mut residuals = BTreeMap::new();
    residuals.insert("series_cutoff".to_string(), cutoff as f64);
    residuals.insert("internal_order".to_string(), window.internal_order() as f64);
    Ok(KernelBundle {
        k11: DenseMatrix::from_row_major(order, order, k11)?,
        k12: DenseMatrix::from_row_major(order, order, k12)?,
        k21: DenseMatrix::from_row_major(order, order, k21)?,
        k22: DenseMatrix::from_row_major(order, order, k22)?,
        route: KernelRoute::SeriesFormula,
        order,
        residuals,
    })
}

/// 𝒦 on a window `[x_min, x_max] ⊂ ℤ`.
#[derive(Debug, Clone)]
pub struct ZKernel {
    pub x_min: i64,
    pub x_max: i64,
    pub values: DenseMatrix<f64>,
    pub series_cutoff: usize,
    pub internal_order: usize,
}

impl ZKernel {
    pub fn contains(&self, x: i64) -> bool {
        (self.x_min..=self.x_max).contains(&x)
    }

    pub fn value(&self, x: i64, y: i64) -> Result<f64> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::Index(format!(
                "({x}, {y}) outside kernel window [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        Ok(self.values[((x - self.x_min) as usize, (y - self.x_min) as usize)])
    }

    /// `det[𝒦(x_i, x_j)]`; 1 for the empty set.
    pub fn correlation(&self, points: &[i64]) -> Result<f64> {
        let n = points.len();
        let mut m = DenseMatrix::zeros(n, n);
        for (i, &x) in points.iter().enumerate() {
            for (j, &y) in points.iter().enumerate() {
                m[(i, j)] = self.value(x, y)?;
            }
        }
        m.determinant()
    }
}

pub fn z_kernel(params: &SymbolParams, x_min: i64, x_max: i64) -> Result<ZKernel> {
    if x_min > x_max {
        return Err(Error::Domain(format!("empty window [{x_min}, {x_max}]")));
    }
    let extent = x_min.unsigned_abs().max(x_max.unsigned_abs()) as usize + 1;
    let size = (x_max - x_min + 1) as usize;
    let ((values, cutoff), window) = with_window(params, extent, |w| {
        let mut values = Vec::with_capacity(size * size);
        let mut cutoff = 0;
        for x in x_min..=x_max {
            for y in x_min..=x_max {
                let free = 0.max(-x).max(-y) as usize;
                let (v, used) = adaptive_sum(free, |k| Some(w.ratio(-x - k - 1)? * w.dual(y + k + 1)?))?;
                cutoff = cutoff.max(used);
                values.push(v);
            }
        }
        Some((values, cutoff))
    })?;
    Ok(ZKernel {
        x_min,
        x_max,
        values: DenseMatrix::from_row_major(size, size, values)?,
        series_cutoff: cutoff,
        internal_order: window.internal_order(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub order: usize,
    pub corner: usize,
    pub direct_vs_blocks: f64,
    pub direct_vs_series: f64,
    pub blocks_vs_series: f64,
    pub resolvent_identity: f64,
    pub k11_identity: f64,
    pub k12_identity: f64,
    pub det_one_plus_l: f64,
    pub series_cutoff: usize,
    pub resolvent_tolerance: f64,
    pub series_tolerance: f64,
    pub pass: bool,
}

/// Build all three routes and compare them over the top-left `N/2` corner.
pub fn verify_theorem1(params: &SymbolParams, order: usize) -> Result<Theorem1Report> {
    verify_theorem1_with(params, order, RESOLVENT_TOLERANCE, SERIES_TOLERANCE)
}

pub fn verify_theorem1_with(
    params: &SymbolParams,
    order: usize,
    resolvent_tolerance: f64,
    series_tolerance: f64,
) -> Result<Theorem1Report> {
    params.validate()?;
    let (series, algebraic) = std::thread::scope(|scope| {
        let series = scope.spawn(|| kernel_series(params, order));
        let algebraic = (|| -> Result<_> {
            let a = operators::build_a::<f64>(params, order, Route::HookSchur)?;
            let b = operators::build_b::<f64>(params, order, Route::HookSchur)?;
            let l = operators::build_l(&a, &b)?;
            let det = l.shift_identity(&1.0).determinant()?;
            Ok((kernel_direct(&l)?, kernel_blocks(&a.matrix, &b.matrix)?, det))
        })();
        (series.join().expect("series route panicked"), algebraic)
    });
    let series = series?;
    let (direct, blocks, det) = algebraic?;
    let corner = (order / 2).max(1);
    let direct_vs_blocks = direct.corner_difference(&blocks, corner)?;
    let direct_vs_series = direct.corner_difference(&series, corner)?;
    let blocks_vs_series = blocks.corner_difference(&series, corner)?;
    let resolvent_identity = direct.residuals["resolvent_identity"];
    let k11_identity = blocks.residuals["k11_identity"];
    let k12_identity = blocks.residuals["k12_identity"];
    let pass = direct_vs_blocks < resolvent_tolerance
        && direct_vs_series < series_tolerance
        && blocks_vs_series < series_tolerance
        && resolvent_identity < resolvent_tolerance
        && k11_identity < IDENTITY_TOLERANCE
        && k12_identity < IDENTITY_TOLERANCE;
    Ok(Theorem1Report {
        order,
        corner,
        direct_vs_blocks,
        direct_vs_series,
        blocks_vs_series,
        resolvent_identity,
        k11_identity,
        k12_identity,
        det_one_plus_l: det,
        series_cutoff: series.residuals["series_cutoff"] as usize,
        resolvent_tolerance,
        series_tolerance,
        pass,
    })
}

/// Build a single tail-projected block of the resolvent kernel.
pub fn projected_block(
    bundle: &KernelBundle<f64>,
    which: &str,
    tail_start: usize,
) -> Result<DenseMatrix<f64>> {
    let m = match which {
        "k11" => &bundle.k11,
        "k12" => &bundle.k12,
        "k21" => &bundle.k21,
        "k22" => &bundle.k22,
        other => return Err(Error::Domain(format!("unknown kernel block `{other}`"))),
    };
    operators::project_tail(m, tail_start)
}

/// Re-export for callers holding operator truncations.
pub fn kernel_from_truncations<S: Scalar>(
    a: &OperatorTruncation<S>,
    b: &OperatorTruncation<S>,
) -> Result<KernelBundle<S>> {
    kernel_blocks(&a.matrix, &b.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn zero_l_gives_zero_kernel() {
        let k = kernel_direct(&DenseMatrix::<f64>::zeros(6, 6)).unwrap();
        for (_, b) in k.blocks() {
            assert_eq!(*b, DenseMatrix::zeros(3, 3));
        }
        assert!(kernel_direct(&DenseMatrix::<f64>::zeros(3, 3)).is_err());
    }

    #[test]
    fn scalar_blocks_by_hand() {
        // L = [[0, a], [−b, 0]]: (1+L)⁻¹ = [[1, −a], [b, 1]] / (1+ab)
        let (a, b) = (ratio(2, 3), ratio(3, 5));
        let am = DenseMatrix::from_rows(vec![vec![a.clone()]]).unwrap();
        let bm = DenseMatrix::from_rows(vec![vec![b.clone()]]).unwrap();
        let k = kernel_direct(&operators::block_l(&am, &bm).unwrap()).unwrap();
        let ab = a.clone() * b.clone();
        let one = ratio(1, 1);
        assert_eq!(k.k11[(0, 0)], ab.clone() / (one.clone() + ab.clone()));
        assert_eq!(k.k12[(0, 0)], a / (one.clone() + ab.clone()));
        assert_eq!(k.k21[(0, 0)], -b / (one + ab));
    }

    #[test]
    fn blocks_collapse_when_a_vanishes() {
        let b = DenseMatrix::from_rows(vec![vec![0.2, 0.1], vec![0.05, 0.3]]).unwrap();
        let k = kernel_blocks(&DenseMatrix::zeros(2, 2), &b).unwrap();
        assert_eq!(k.k11, DenseMatrix::zeros(2, 2));
        assert_eq!(k.k12, DenseMatrix::zeros(2, 2));
        assert_eq!(k.k21, -&b);
        assert_eq!(k.k22, DenseMatrix::zeros(2, 2));
    }

    #[test]
    fn exact_routes_agree_in_rational_mode() {
        let p = SymbolParams {
            alpha_plus: vec![0.3],
            beta_plus: vec![0.2],
            alpha_minus: vec![0.25],
            beta_minus: vec![0.15],
            ..Default::default()
        };
        let direct = kernel_direct_from_params::<Rational>(&p, 5).unwrap();
        let blocks = kernel_blocks_from_params::<Rational>(&p, 5).unwrap();
        assert_eq!(direct.k11, blocks.k11);
        assert_eq!(direct.k12, blocks.k12);
        assert_eq!(direct.k21, blocks.k21);
        assert_eq!(direct.k22, blocks.k22);
        assert_eq!(blocks.residuals["k11_identity"], 0.0);
        assert_eq!(blocks.residuals["k12_identity"], 0.0);
    }

    #[test]
    fn trivial_symbol_series_kernel_vanishes() {
        let k = kernel_series(&SymbolParams::trivial(), 6).unwrap();
        for (_, b) in k.blocks() {
            assert_eq!(*b, DenseMatrix::zeros(6, 6));
        }
        let report = verify_theorem1(&SymbolParams::trivial(), 6).unwrap();
        assert_eq!(report.direct_vs_blocks, 0.0);
        assert_eq!(report.direct_vs_series, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn geometric_kernel_closed_form() {
        // α⁺ = a, α⁻ = b: K₁₁ = ab·e₀e₀ᵗ, K₁₂[0,q] = (1−ab)a^{q+1}, K₂₁[p,0] = −(1−ab)b^{p+1}
        let (a, b) = (0.5, 0.3);
        let p = SymbolParams {
            alpha_plus: vec![a],
            alpha_minus: vec![b],
            ..Default::default()
        };
        let k = kernel_series(&p, 8).unwrap();
        let c = 1.0 - a * b;
        for i in 0..8 {
            for j in 0..8 {
                let k11 = if i == 0 && j == 0 { a * b } else { 0.0 };
                let k12 = if i == 0 { c * a.powi(j as i32 + 1) } else { 0.0 };
                let k21 = if j == 0 { -c * b.powi(i as i32 + 1) } else { 0.0 };
                assert!((k.k11[(i, j)] - k11).abs() < 1e-12);
                assert!((k.k12[(i, j)] - k12).abs() < 1e-12);
                assert!((k.k21[(i, j)] - k21).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn literal_k21_reading_disagrees_with_resolvent() {
        // w^p / z^{q+1}: (−1)^{q+1} Σ_m R_{q−m} S_{p+1+m}
        let p = SymbolParams {
            alpha_plus: vec![0.5],
            alpha_minus: vec![0.3],
            ..Default::default()
        };
        let w = crate::series::ratio_window(&p, -80, 80).unwrap();
        let literal_p0_q0 = -(0..60).map(|m| w.ratio(-m).unwrap() * w.dual(1 + m).unwrap()).sum::<f64>();
        let blocks = kernel_blocks_from_params::<f64>(&p, 16).unwrap();
        let series = kernel_series(&p, 16).unwrap();
        assert!((series.k21[(0, 0)] - blocks.k21[(0, 0)]).abs() < 1e-12);
        assert!((literal_p0_q0 - blocks.k21[(0, 0)]).abs() > 1e-2);
    }

    #[test]
    fn z_kernel_vacuum() {
        let z = z_kernel(&SymbolParams::trivial(), -4, 4).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                let expect = if x == y && x < 0 { 1.0 } else { 0.0 };
                assert_eq!(z.value(x, y).unwrap(), expect);
            }
        }
        assert!(z.value(5, 0).is_err());
        assert_eq!(z.correlation(&[]).unwrap(), 1.0);
    }

    #[test]
    fn z_kernel_matches_k22_on_nonnegative_quadrant() {
        let p = SymbolParams {
            alpha_plus: vec![0.3],
            beta_plus: vec![0.2],
            alpha_minus: vec![0.25],
            beta_minus: vec![0.15],
            ..Default::default()
        };
        let z = z_kernel(&p, -3, 7).unwrap();
        let k = kernel_series(&p, 8).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert!((z.value(x, y).unwrap() - k.k22[(x as usize, y as usize)]).abs() < 1e-10);
            }
        }
    }
}
