//! Dense complex LU factorization with partial pivoting.

use super::Mat;
use crate::error::{Error, Result};
use num_complex::Complex64;

pub struct Lu {
    lu: Mat,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(mut a: Mat) -> Result<Self> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pv) =
                (k..n)
                    .map(|i| (i, a[(i, k)].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pv == 0.0 || !pv.is_finite() {
                return Err(Error::Singular);
            }
            if p != k {
                a.swap_rows(p, k);
                perm.swap(p, k);
            }
            let piv = a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / piv;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                a[(i, k)] = f;
                let (top, bottom) = a.data.split_at_mut(i * n);
                let rk = &top[k * n..k * n + n];
                let ri = &mut bottom[..n];
                for j in k + 1..n {
                    ri[j] -= f * rk[j];
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }

    /// Solves A x = b.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    /// Solves Aᵀ x = b (plain transpose, no conjugation).
    pub fn solve_transpose(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let mut w = b.to_vec();
        for i in 0..n {
            let mut s = w[i];
            for j in 0..i {
                s -= self.lu[(j, i)] * w[j];
            }
            w[i] = s / self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = w[i];
            for j in i + 1..n {
                s -= self.lu[(j, i)] * w[j];
            }
            w[i] = s;
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Mat {
        let mut a = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = Complex64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64 * 0.3);
            }
            a[(i, i)] += 4.0;
        }
        a
    }

    #[test]
    fn solves_and_transposes() {
        let a = sample(9);
        let x: Vec<Complex64> = (0..9).map(|i| Complex64::new(i as f64, 1.0 - i as f64 * 0.5)).collect();
        let b = a.mul_vec(&x);
        let lu = Lu::factor(a.clone()).unwrap();
        let got = lu.solve(&b);
        assert!(got.iter().zip(&x).all(|(g, w)| (g - w).norm() < 1e-11));
        let bt = a.transpose().mul_vec(&x);
        let got = lu.solve_transpose(&bt);
        assert!(got.iter().zip(&x).all(|(g, w)| (g - w).norm() < 1e-11));
    }

    #[test]
    fn detects_singular() {
        let mut a = sample(4);
        for j in 0..4 {
            let v = a[(0, j)];
            a[(1, j)] = v * 2.0;
        }
        assert!(matches!(Lu::factor(a), Err(Error::Singular)));
    }
}
