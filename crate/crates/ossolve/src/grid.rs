//! Sampled complex-valued functions on a real grid.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridMeta {
    pub mode: Option<usize>,
    /// Free-form provenance, e.g. the parameters that produced the samples.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Per-sample error estimates, when the producer has them.
    pub errors: Option<Vec<f64>>,
    pub meta: GridMeta,
}

impl GridFunction {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>, meta: GridMeta) -> Result<Self> {
        check_grid(&grid)?;
        if grid.len() != values.len() {
            return Err(Error::Domain(format!(
                "{} samples for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::Overflow(format!("non-finite value {v} at y = {}", grid[i])));
        }
        Ok(GridFunction {
            grid,
            values,
            errors: None,
            meta,
        })
    }

    /// Samples `f` on `grid`.
    pub fn sample<F>(grid: &[f64], meta: GridMeta, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        let values = grid.iter().map(|&y| f(y)).collect::<Result<Vec<_>>>()?;
        Self::new(grid.to_vec(), values, meta)
    }

    pub fn with_errors(mut self, errors: Vec<f64>) -> Self {
        self.errors = Some(errors);
        self
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// max |value|.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i + 1 == n { b } else { a + h * i as f64 }).collect()
        }
    }
}

pub fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|y| !y.is_finite()) {
        return Err(Error::Domain("grid has non-finite points".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(0.0, 10.0, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[999], 10.0);
        check_grid(&g).unwrap();
    }

    #[test]
    fn rejects_bad_grids() {
        let m = GridMeta::default();
        let one = Complex64::new(1.0, 0.0);
        assert!(GridFunction::new(vec![0.0, 0.0], vec![one, one], m.clone()).is_err());
        assert!(GridFunction::new(vec![0.0, 1.0], vec![one], m.clone()).is_err());
        let nan = Complex64::new(f64::NAN, 0.0);
        assert!(GridFunction::new(vec![0.0, 1.0], vec![one, nan], m).is_err());
    }
}
