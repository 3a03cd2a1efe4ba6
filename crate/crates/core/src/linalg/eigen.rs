//! Eigenvalues of real nonsymmetric matrices.
//!
//! Balancing, Householder reduction to upper Hessenberg form, then the
//! Francis double-shift QR iteration on the Hessenberg matrix.

use num_complex::Complex64;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Iterations allowed per eigenvalue before giving up.
pub const MAX_ITERATIONS_PER_EIGENVALUE: usize = 30;

#[derive(Debug, Clone)]
pub struct Eigenvalues {
    pub values: Vec<Complex64>,
    /// `n · ε · ‖H‖_F` for the balanced Hessenberg matrix; the computed
    /// eigenvalues are exact for a matrix within this distance.
    pub backward_error_bound: f64,
    pub iterations: usize,
}

pub fn eigenvalues(m: &DenseMatrix<f64>) -> Result<Eigenvalues> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    if a.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    balance(&mut a);
    reduce_to_hessenberg(&mut a);
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let (values, iterations) = hessenberg_qr(a)?;
    Ok(Eigenvalues {
        values,
        backward_error_bound: n.max(1) as f64 * f64::EPSILON * frob,
        iterations,
    })
}

/// Diagonal similarity by powers of two so row and column norms are comparable.
fn balance(a: &mut [Vec<f64>]) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let n = a.len();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[i][j] *= g;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

fn reduce_to_hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let scale: f64 = (k + 1..n).map(|i| a[i][k].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut h = 0.0;
        for i in k + 1..n {
            v[i] = a[i][k] / scale;
            h += v[i] * v[i];
        }
        let g = if v[k + 1] > 0.0 { -h.sqrt() } else { h.sqrt() };
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        // P = I - v vᵗ / h applied from the left and the right
        for j in 0..n {
            let f: f64 = (k + 1..n).map(|i| v[i] * a[i][j]).sum::<f64>() / h;
            for i in k + 1..n {
                a[i][j] -= f * v[i];
            }
        }
        for row in a.iter_mut() {
            let f: f64 = (k + 1..n).map(|j| v[j] * row[j]).sum::<f64>() / h;
            for j in k + 1..n {
                row[j] -= f * v[j];
            }
        }
        a[k + 1][k] = scale * g;
        for row in a.iter_mut().skip(k + 2) {
            row[k] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

fn hessenberg_qr(mut a: Vec<Vec<f64>>) -> Result<(Vec<Complex64>, usize)> {
    let n = a.len();
    let mut wri = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok((wri, 0));
    }
    let eps = f64::EPSILON;
    let mut anorm = 0.0;
    for (i, row) in a.iter().enumerate() {
        for x in row.iter().skip(i.saturating_sub(1)) {
            anorm += x.abs();
        }
    }
    let mut total_iterations = 0;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l > 0 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                // relative test, then a normwise one for graded tails
                if a[l][l - 1].abs() <= eps * s || a[l][l - 1].abs() <= eps * eps * anorm {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wri[nu] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wri[nu - 1] = Complex64::new(x + z, 0.0);
                    wri[nu] = wri[nu - 1];
                    if z != 0.0 {
                        wri[nu] = Complex64::new(x - w / z, 0.0);
                    }
                } else {
                    wri[nu] = Complex64::new(x + p, -z);
                    wri[nu - 1] = wri[nu].conj();
                }
                nn -= 2;
                break;
            }
            if its == MAX_ITERATIONS_PER_EIGENVALUE {
                return Err(Error::Convergence {
                    iterations: total_iterations,
                    row: nu,
                });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                    row[i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total_iterations += 1;
            let (mut p, mut q, mut r);
            let mut m = nu - 2;
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                if s != 0.0 {
                    p /= s;
                    q /= s;
                    r /= s;
                }
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nu - 1 {
                a[i + 2][i] = 0.0;
                if i != m {
                    a[i + 2][i - 1] = 0.0;
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = 0.0;
                    if k + 1 != nu {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k + 1 != nu {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for row in a.iter_mut().take(mmin + 1).skip(l) {
                        let mut pp = x * row[k] + y * row[k + 1];
                        if k + 1 != nu {
                            pp += z * row[k + 2];
                            row[k + 2] -= pp * r;
                        }
                        row[k + 1] -= pp * q;
                        row[k] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok((wri, total_iterations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn diagonal_matrix() {
        let m = DenseMatrix::diagonal(&[0.1, 0.5, 0.9]);
        let ev = sorted(eigenvalues(&m).unwrap().values);
        for (got, want) in ev.iter().zip([0.1, 0.5, 0.9]) {
            assert!((got - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let m = DenseMatrix::from_rows(vec![vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let ev = sorted(eigenvalues(&m).unwrap().values);
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigenvalues(&DenseMatrix::zeros(0, 0)).unwrap().values.is_empty());
        let ev = eigenvalues(&DenseMatrix::diagonal(&[-2.5])).unwrap().values;
        assert_eq!(ev, vec![Complex64::new(-2.5, 0.0)]);
        assert!(eigenvalues(&DenseMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = DenseMatrix::from_rows(vec![
            vec![6.0, -11.0, 6.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        let ev = sorted(eigenvalues(&m).unwrap().values);
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12);
        }
    }
}
