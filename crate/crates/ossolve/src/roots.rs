//! Damped complex Newton iteration.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonRoot {
    pub root: Complex64,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton on `f` (returning F and F') from `seed`; a step is halved up to 20
/// times while it fails to reduce |F|. Converged when |F(k)| ≤ tol(k).
pub fn newton<F, T>(mut f: F, seed: Complex64, tol: T, max_iter: usize) -> Result<NewtonRoot>
where
    F: FnMut(Complex64) -> Result<(Complex64, Complex64)>,
    T: Fn(Complex64) -> f64,
{
    let mut k = seed;
    let (mut fk, mut dk) = f(k)?;
    for it in 0..max_iter {
        let r = fk.norm();
        if r <= tol(k) {
            return Ok(NewtonRoot {
                root: k,
                residual: r,
                iterations: it,
            });
        }
        if dk.norm() == 0.0 || !dk.re.is_finite() || !dk.im.is_finite() {
            break;
        }
        let mut step = fk / dk;
        let mut accepted = None;
        for _ in 0..=20 {
            let trial = k - step;
            if let Ok((ft, dt)) = f(trial) {
                if ft.norm() < r && ft.re.is_finite() && ft.im.is_finite() {
                    accepted = Some((trial, ft, dt));
                    break;
                }
            }
            step *= 0.5;
        }
        match accepted {
            Some((t, ft, dt)) => {
                k = t;
                fk = ft;
                dk = dt;
            }
            None => {
                // no decrease: take the full step once more to escape a flat spot
                let t = k - fk / dk;
                let (ft, dt) = f(t)?;
                k = t;
                fk = ft;
                dk = dt;
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last: k,
        residual: fk.norm(),
    })
}
