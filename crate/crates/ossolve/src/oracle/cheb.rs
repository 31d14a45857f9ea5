//! Chebyshev–Gauss–Lobatto nodes, differentiation matrices and coefficients.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Nodes x_j = cos(πj/(n−1)), j = 0..n, running from 1 down to −1.
pub fn nodes(n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n).map(|j| (PI * j as f64 / m).cos()).collect()
}

/// First-derivative matrix on [`nodes`], with the diagonal fixed by the
/// negative-sum trick for accuracy.
pub fn diff_matrix(n: usize) -> Vec<Vec<f64>> {
    let x = nodes(n);
    let c: Vec<f64> = (0..n)
        .map(|j| {
            let w = if j == 0 || j == n - 1 { 2.0 } else { 1.0 };
            if j % 2 == 0 {
                w
            } else {
                -w
            }
        })
        .collect();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            if i != j {
                d[i][j] = c[i] / c[j] / (x[i] - x[j]);
                s += d[i][j];
            }
        }
        d[i][i] = -s;
    }
    d
}

/// Coefficients a_m of Σ a_m T_m(x) interpolating `v` at the nodes.
pub fn coefficients(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let m = (n - 1) as f64;
    (0..n)
        .map(|k| {
            let mut s = Complex64::new(0.0, 0.0);
            for (j, vj) in v.iter().enumerate() {
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                s += w * vj * (PI * (k * j) as f64 / m).cos();
            }
            let scale = if k == 0 || k == n - 1 { 1.0 / m } else { 2.0 / m };
            s * scale
        })
        .collect()
}

/// √(Σ_tail |a|² / Σ |a|²) over the last quarter of the coefficients.
pub fn tail_energy(v: &[Complex64]) -> f64 {
    let a = coefficients(v);
    let total: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let start = a.len() - a.len() / 4;
    (a[start..].iter().map(|x| x.norm_sqr()).sum::<f64>() / total).sqrt()
}

/// Real matrix product helper for the small set of operators the oracle needs.
pub(crate) fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differentiates_polynomials_exactly() {
        let n = 12;
        let x = nodes(n);
        let d = diff_matrix(n);
        for i in 0..n {
            let got: f64 = (0..n).map(|j| d[i][j] * x[j].powi(5)).sum();
            assert!((got - 5.0 * x[i].powi(4)).abs() < 1e-11);
        }
    }

    #[test]
    fn coefficients_of_t3() {
        let x = nodes(9);
        let v: Vec<Complex64> = x
            .iter()
            .map(|&t| Complex64::new(4.0 * t * t * t - 3.0 * t, 0.0))
            .collect();
        let a = coefficients(&v);
        for (k, ak) in a.iter().enumerate() {
            let want = if k == 3 { 1.0 } else { 0.0 };
            assert!((ak.re - want).abs() < 1e-13, "k={k}");
        }
    }
}
