//! Square truncations of the hook matrices A and B, the block operator L,
//! and the tail operator T.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;
use crate::series::{self, RatioWindow, Side, SymbolParams, TruncatedSeries, TAIL_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Route {
    /// Solve `A_{p−1,q} + A_{p,q−1} = g_{p,q}` from the generating function.
    GeneratingRecurrence,
    /// Hook Schur values `s_{(p|q)} = Σ_j (−1)^j h_{p+1+j} e_{q−j}`.
    HookSchur,
    /// Sums of ratio-window coefficients.
    SeriesSum,
}

#[derive(Debug, Clone)]
pub struct OperatorTruncation<S> {
    pub matrix: DenseMatrix<S>,
    pub order: usize,
    pub route: Route,
    /// Largest entry on the last two anti-diagonals (A, B) or the largest
    /// dropped series term (T).
    pub tail_bound: f64,
    /// Series cutoff for series-built operators; zero otherwise.
    pub series_cutoff: usize,
}

/// Consecutive sub-tolerance terms needed before a series sum is cut.
pub const CUT_RUN: usize = 3;

/// Truncation of A (side plus) or B (side minus).
pub fn build_hook<S: Scalar>(
    params: &SymbolParams,
    side: Side,
    order: usize,
    route: Route,
) -> Result<OperatorTruncation<S>> {
    if order == 0 {
        return Err(Error::Domain("truncation order must be at least 1".into()));
    }
    let h = series::h_coefficients::<S>(params, side, 2 * order)?;
    let e = series::e_coefficients::<S>(params, side, 2 * order)?;
    hook_matrix(&h, &e, order, route)
}

pub fn build_a<S: Scalar>(params: &SymbolParams, order: usize, route: Route) -> Result<OperatorTruncation<S>> {
    build_hook(params, Side::Plus, order, route)
}

pub fn build_b<S: Scalar>(params: &SymbolParams, order: usize, route: Route) -> Result<OperatorTruncation<S>> {
    build_hook(params, Side::Minus, order, route)
}

/// Hook matrix from the `h` and `e` series of one side.
pub fn hook_matrix<S: Scalar>(
    h: &TruncatedSeries<S>,
    e: &TruncatedSeries<S>,
    order: usize,
    route: Route,
) -> Result<OperatorTruncation<S>> {
    let n = order;
    if h.order() < 2 * n - 1 {
        return Err(Error::truncation(2 * n - 1, h.order(), "hook matrix h-series"));
    }
    if e.order() < n - 1 {
        return Err(Error::truncation(n - 1, e.order(), "hook matrix e-series"));
    }
    let h = h.coeffs();
    let e = e.coeffs();
    let matrix = match route {
        Route::HookSchur => DenseMatrix::from_fn(n, n, |p, q| {
            (0..=q).fold(S::zero(), |acc, j| {
                let term = h[p + 1 + j].clone() * e[q - j].clone();
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        }),
        Route::GeneratingRecurrence => {
            // g_{m,n} = h_m e_n − [m = n = 0]; rows p = 0..2N−2 with p + q ≤ 2N−2
            let g = |m: usize, k: usize| {
                let v = h[m].clone() * e[k].clone();
                if m == 0 && k == 0 {
                    v - S::one()
                } else {
                    v
                }
            };
            let span = 2 * n - 1;
            let mut table: Vec<Vec<S>> = (0..span).map(|p| Vec::with_capacity((span - p).min(n))).collect();
            for q in 0..n {
                for p in 0..span - q {
                    let v = if q == 0 {
                        g(p + 1, 0)
                    } else {
                        g(p + 1, q) - table[p + 1][q - 1].clone()
                    };
                    table[p].push(v);
                }
            }
            DenseMatrix::from_fn(n, n, |p, q| table[p][q].clone())
        }
        Route::SeriesSum => {
            return Err(Error::Domain("hook matrices are not built from ratio windows".into()))
        }
    };
    let tail_bound = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .filter(|&(p, q)| p + q + 3 >= 2 * n)
        .map(|(p, q)| matrix[(p, q)].magnitude())
        .fold(0.0, f64::max);
    Ok(OperatorTruncation {
        matrix,
        order: n,
        route,
        tail_bound,
        series_cutoff: 0,
    })
}

/// `L = [[0, Aᵗ], [−B, 0]]`.
pub fn build_l<S: Scalar>(a: &OperatorTruncation<S>, b: &OperatorTruncation<S>) -> Result<DenseMatrix<S>> {
    block_l(&a.matrix, &b.matrix)
}

pub fn block_l<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let n = a.rows();
    if !a.is_square() || b.rows() != n || b.cols() != n {
        return Err(Error::Dimension(format!(
            "L needs square A and B of equal order, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut l = DenseMatrix::zeros(2 * n, 2 * n);
    l.set_block(0, n, &a.transpose());
    l.set_block(n, 0, &-b);
    Ok(l)
}

/// `(1 − P_n) M (1 − P_n)` restricted to indices `≥ n`.
pub fn project_tail<S: Scalar>(m: &DenseMatrix<S>, n: usize) -> Result<DenseMatrix<S>> {
    if !m.is_square() {
        return Err(Error::Dimension("tail projection needs a square matrix".into()));
    }
    if n >= m.rows() {
        return Err(Error::Index(format!(
            "tail start {n} outside matrix of order {}",
            m.rows()
        )));
    }
    Ok(m.block(n, m.rows(), n, m.cols()))
}

/// Largest `|M_pq|` on each anti-diagonal `p + q = s`.
pub fn anti_diagonal_maxima<S: Scalar>(m: &DenseMatrix<S>) -> Vec<f64> {
    let mut out = vec![0.0f64; m.rows() + m.cols() - 1];
    for p in 0..m.rows() {
        for q in 0..m.cols() {
            out[p + q] = out[p + q].max(m[(p, q)].magnitude());
        }
    }
    out
}

/// Geometric decay factor `x` of the anti-diagonal maxima, `max|M| ~ C x^{−s}`,
/// from the ratio of the first and last nonnegligible anti-diagonals.
pub fn measured_decay<S: Scalar>(m: &DenseMatrix<S>) -> f64 {
    let maxima = anti_diagonal_maxima(m);
    let live: Vec<(usize, f64)> = maxima
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, v)| v > 1e-250)
        .collect();
    match (live.first(), live.last()) {
        (Some(&(s0, v0)), Some(&(s1, v1))) if s1 > s0 => (v0 / v1).powf(1.0 / (s1 - s0) as f64),
        _ => f64::INFINITY,
    }
}

/// Sum `Σ_{k≥0} term(k)` where `term` reads ratio coefficients. The sum is cut
/// after [`CUT_RUN`] consecutive terms below [`TAIL_TOLERANCE`], counted only
/// from `free_from` on (before that the indices have not yet entered the
/// decaying tails of both factors). Returns the sum and the number of terms.
pub(crate) fn adaptive_sum(free_from: usize, mut term: impl FnMut(i64) -> Option<f64>) -> Option<(f64, usize)> {
    let mut total = 0.0;
    let mut run = 0;
    let mut k = 0usize;
    loop {
        let t = term(k as i64)?;
        total += t;
        k += 1;
        if k > free_from {
            if t.abs() < TAIL_TOLERANCE {
                run += 1;
                if run >= CUT_RUN {
                    return Some((total, k));
                }
            } else {
                run = 0;
            }
        }
    }
}

/// Run `f` against ratio windows `[−(extent+K), extent+K]`, doubling `K`
/// while `f` reports that the window was too narrow.
pub(crate) fn with_window<T>(
    params: &SymbolParams,
    extent: usize,
    mut f: impl FnMut(&RatioWindow) -> Option<T>,
) -> Result<(T, RatioWindow)> {
    let mut reach = 32usize.max(extent);
    loop {
        let span = (extent + reach) as i64;
        let window = series::ratio_window(params, -span, span)?;
        if let Some(v) = f(&window) {
            return Ok((v, window));
        }
        reach *= 2;
        if 4 * (2 * (extent + reach) + 1) > series::MAX_INTERNAL_ORDER {
            return Err(Error::Truncation(format!(
                "series sums did not reach tolerance within a window of half-width {}",
                extent + reach
            )));
        }
    }
}

/// `T_pq = Σ_{k≥1} (φ₋/φ₊)_{p+k} (φ₊/φ₋)_{−q−k}` for `p, q ∈ {n, …, N−1}`.
pub fn build_t(params: &SymbolParams, tail_start: usize, order: usize) -> Result<OperatorTruncation<f64>> {
    if tail_start >= order {
        return Err(Error::Index(format!("tail start {tail_start} must be below order {order}")));
    }
    let size = order - tail_start;
    let ((entries, cutoff), _) = with_window(params, order, |w| {
        let mut entries = Vec::with_capacity(size * size);
        let mut cutoff = 0;
        for p in tail_start..order {
            for q in tail_start..order {
                let (v, used) = adaptive_sum(0, |k| {
                    let k = k + 1;
                    Some(w.ratio(p as i64 + k)? * w.dual(-(q as i64) - k)?)
                })?;
                cutoff = cutoff.max(used);
                entries.push(v);
            }
        }
        Some((entries, cutoff))
    })?;
    Ok(OperatorTruncation {
        matrix: DenseMatrix::from_row_major(size, size, entries)?,
        order,
        route: Route::SeriesSum,
        tail_bound: TAIL_TOLERANCE,
        series_cutoff: cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn trivial_symbol_gives_zero_a() {
        let a = build_a::<Rational>(&SymbolParams::trivial(), 5, Route::HookSchur).unwrap();
        assert_eq!(a.matrix, DenseMatrix::zeros(5, 5));
    }

    #[test]
    fn single_beta_hooks() {
        let p = SymbolParams {
            beta_plus: vec![0.4],
            ..Default::default()
        };
        for route in [Route::HookSchur, Route::GeneratingRecurrence] {
            let a = build_a::<Rational>(&p, 6, route).unwrap().matrix;
            for q in 0..6 {
                assert_eq!(a[(0, q)], num_traits::pow(ratio(2, 5), q + 1));
                for pp in 1..6 {
                    assert_eq!(a[(pp, q)], ratio(0, 1));
                }
            }
        }
    }

    #[test]
    fn single_alpha_hooks_are_one_row() {
        // one variable: only hooks with leg 0 survive, s_{(p|0)} = a^{p+1}
        let p = SymbolParams {
            alpha_plus: vec![0.5],
            ..Default::default()
        };
        let a = build_a::<Rational>(&p, 6, Route::GeneratingRecurrence).unwrap().matrix;
        for pp in 0..6 {
            assert_eq!(a[(pp, 0)], num_traits::pow(ratio(1, 2), pp + 1));
            for q in 1..6 {
                assert_eq!(a[(pp, q)], ratio(0, 1));
            }
        }
    }

    #[test]
    fn hook_matrix_needs_long_enough_series() {
        let h = TruncatedSeries::<f64>::one(4);
        let e = TruncatedSeries::<f64>::one(4);
        assert!(matches!(hook_matrix(&h, &e, 3, Route::HookSchur), Err(Error::Truncation(_))));
        assert!(hook_matrix(&h, &e, 2, Route::HookSchur).is_ok());
        assert!(build_a::<f64>(&SymbolParams::trivial(), 0, Route::HookSchur).is_err());
    }

    #[test]
    fn l_placement() {
        let a = DenseMatrix::from_rows(vec![vec![2.0]]).unwrap();
        let b = DenseMatrix::from_rows(vec![vec![3.0]]).unwrap();
        let l = block_l(&a, &b).unwrap();
        assert_eq!(l, DenseMatrix::from_rows(vec![vec![0.0, 2.0], vec![-3.0, 0.0]]).unwrap());
        let z = block_l(&DenseMatrix::<f64>::zeros(3, 3), &DenseMatrix::zeros(3, 3)).unwrap();
        assert_eq!(z, DenseMatrix::zeros(6, 6));
        assert!(block_l(&DenseMatrix::<f64>::zeros(2, 2), &DenseMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn project_tail_cases() {
        let d = DenseMatrix::diagonal(&[1.0, 2.0, 3.0]);
        assert_eq!(project_tail(&d, 0).unwrap(), d);
        assert_eq!(project_tail(&d, 1).unwrap(), DenseMatrix::diagonal(&[2.0, 3.0]));
        assert!(matches!(project_tail(&d, 3), Err(Error::Index(_))));
    }

    #[test]
    fn trivial_symbol_gives_zero_t() {
        let t = build_t(&SymbolParams::trivial(), 0, 6).unwrap();
        assert_eq!(t.matrix, DenseMatrix::zeros(6, 6));
        assert!(build_t(&SymbolParams::trivial(), 6, 6).is_err());
    }

    #[test]
    fn adaptive_sum_waits_for_free_region() {
        // zeros early, then a live term: must not cut before `free_from`
        let terms = [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        let (s, _) = adaptive_sum(5, |k| terms.get(k as usize).copied()).unwrap();
        assert_eq!(s, 1.0);
        let (s, used) = adaptive_sum(0, |k| terms.get(k as usize).copied()).unwrap();
        assert_eq!((s, used), (0.0, 3));
        assert!(adaptive_sum(0, |k| (k < 2).then_some(1.0)).is_none());
    }
}
