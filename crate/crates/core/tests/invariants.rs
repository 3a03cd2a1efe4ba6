//! Property checks of the algebraic building blocks against independent oracles.

use num_complex::Complex64;
use proptest::prelude::*;
use schur_kernel::linalg::{eigenvalues, hausdorff_distance, DenseMatrix};
use schur_kernel::scalar::{ratio, Rational};
use schur_kernel::schur::Partition;
use schur_kernel::TruncatedSeries;

fn rational_matrix(n: usize) -> impl Strategy<Value = DenseMatrix<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n * n)
        .prop_map(move |v| DenseMatrix::from_fn(n, n, |i, j| ratio(v[i * n + j].0, v[i * n + j].1)))
}

fn float_matrix(n: usize) -> impl Strategy<Value = DenseMatrix<f64>> {
    prop::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| DenseMatrix::from_fn(n, n, |i, j| v[i * n + j]))
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &DenseMatrix<Rational>) -> Rational {
    let n = m.rows();
    if n == 0 {
        return ratio(1, 1);
    }
    let mut total = ratio(0, 1);
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m[(0, j)].clone() * cofactor_det(&m.submatrix(&rows, &cols));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) by Faddeev–LeVerrier.
fn char_poly(m: &DenseMatrix<f64>) -> Vec<f64> {
    let n = m.rows();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut mk = DenseMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.matmul(&mk).unwrap();
        for i in 0..n {
            next[(i, i)] += c[n - k + 1];
        }
        mk = next;
        c[n - k] = -m.matmul(&mk).unwrap().trace() / k as f64;
    }
    c
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
fn durand_kerner(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let bound = 1.0 + c[..n].iter().map(|a| a.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..8, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_matches_cofactor_expansion(m in (1usize..=5).prop_flat_map(rational_matrix)) {
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn determinant_is_multiplicative(a in rational_matrix(4), b in rational_matrix(4)) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn eigenvalues_sum_to_trace(m in (1usize..=12).prop_flat_map(float_matrix)) {
        let e = eigenvalues(&m).unwrap();
        let sum: Complex64 = e.values.iter().sum();
        prop_assert!((sum.re - m.trace()).abs() < 1e-9 * (1.0 + m.norm_inf()));
        prop_assert!(sum.im.abs() < 1e-9 * (1.0 + m.norm_inf()));
    }

    #[test]
    fn eigenvalues_match_characteristic_roots(m in (2usize..=6).prop_flat_map(float_matrix)) {
        let ours = eigenvalues(&m).unwrap().values;
        let roots = durand_kerner(&char_poly(&m));
        let dist = hausdorff_distance(&ours, &roots);
        // Nearly defective matrices lose accuracy as a square root of ε.
        prop_assume!(roots.iter().enumerate().all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > 1e-3)));
        prop_assert!(dist < 1e-8, "distance {dist:e}");
    }

    #[test]
    fn series_log_exp_round_trip(tail in prop::collection::vec((-5i64..=5, 1i64..=6), 1..12)) {
        let mut coeffs = vec![ratio(1, 1)];
        coeffs.extend(tail.iter().map(|&(p, q)| ratio(p, q)));
        let s = TruncatedSeries::new(coeffs).unwrap();
        let round = s.log().unwrap().exp().unwrap();
        prop_assert_eq!(round.coeffs(), s.coeffs());
        let product = s.mul(&s.reciprocal().unwrap()).unwrap();
        let one = TruncatedSeries::<Rational>::one(s.order());
        prop_assert_eq!(product.coeffs(), one.coeffs());
    }

    #[test]
    fn frobenius_round_trip(lambda in partition()) {
        let rebuilt = Partition::from_frobenius(lambda.arms(), lambda.legs()).unwrap();
        prop_assert_eq!(rebuilt.parts(), lambda.parts());
        let conj = lambda.conjugate();
        let back = conj.conjugate();
        prop_assert_eq!(back.parts(), lambda.parts());
        prop_assert_eq!(conj.arms(), lambda.legs());
        let hooks: usize = lambda.arms().iter().zip(lambda.legs()).map(|(a, b)| a + b + 1).sum();
        prop_assert_eq!(hooks, lambda.size());
    }

    #[test]
    fn positions_are_the_occupied_sites(lambda in partition()) {
        let listed = lambda.positions(-12, 12);
        let scanned: Vec<i64> = (-12..=12).filter(|&x| lambda.occupies(x)).collect();
        prop_assert_eq!(listed, scanned);
    }
}

#[test]
fn char_poly_oracle_on_a_known_matrix() {
    let m = DenseMatrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
    assert_eq!(char_poly(&m), vec![3.0, -4.0, 1.0]);
    let mut roots: Vec<f64> = durand_kerner(&char_poly(&m)).iter().map(|z| z.re).collect();
    roots.sort_by(f64::total_cmp);
    assert!((roots[0] - 1.0).abs() < 1e-12 && (roots[1] - 3.0).abs() < 1e-12);
}
