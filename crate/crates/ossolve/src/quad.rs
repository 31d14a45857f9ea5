//! Adaptive Gauss–Kronrod (7/15) quadrature of complex-valued integrands.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Initial panels are no wider than this.
    pub max_width: Option<f64>,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_intervals: 4000,
            max_width: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    /// ∫|f|, used for roundoff floors and crude bounds.
    pub abs_value: f64,
    /// Largest |f| met at a node.
    pub max_abs: f64,
    pub evals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15<F>(f: &mut F, a: f64, b: f64, max_abs: &mut f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    *max_abs = max_abs.max(fc.norm());
    for j in 0..7 {
        let x = h * XGK[j];
        let (f1, f2) = (f(c - x)?, f(c + x)?);
        if !(f1.re.is_finite() && f1.im.is_finite() && f2.re.is_finite() && f2.im.is_finite()) {
            return Err(Error::Quadrature {
                at: c,
                reason: "non-finite integrand".into(),
            });
        }
        *max_abs = max_abs.max(f1.norm()).max(f2.norm());
        k += (f1 + f2) * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            g += (f1 + f2) * WG[j / 2];
        }
    }
    let value = k * h;
    let abs_value = abs * h.abs();
    let error = ((k - g) * h).norm().max(50.0 * f64::EPSILON * abs_value);
    Ok(Panel {
        a,
        b,
        value,
        error,
        abs_value,
    })
}

/// ∫_a^b f(x) dx with global adaptive bisection of the worst panel.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            abs_value: 0.0,
            max_abs: 0.0,
            evals: 0,
        });
    }
    let mut pieces = 1usize;
    if let Some(w) = opts.max_width {
        if w > 0.0 {
            pieces = ((b - a).abs() / w).ceil().clamp(1.0, 1e5) as usize;
        }
    }
    let mut max_abs = 0.0;
    let mut heap = BinaryHeap::new();
    let step = (b - a) / pieces as f64;
    for i in 0..pieces {
        let lo = a + step * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + step };
        heap.push(gk15(&mut f, lo, hi, &mut max_abs)?);
    }
    let mut evals = 15 * pieces;
    loop {
        let (value, error, abs_value) = heap.iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, s), p| {
            (v + p.value, e + p.error, s + p.abs_value)
        });
        let tol = opts.abs_tol.max(opts.rel_tol * value.norm());
        let floor = 100.0 * f64::EPSILON * abs_value;
        if error <= tol || error <= floor {
            return Ok(Quadrature {
                value,
                error,
                abs_value,
                max_abs,
                evals,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature {
                at: 0.5 * (a + b),
                reason: format!("error {error:e} above tolerance {tol:e}"),
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            return Err(Error::Quadrature {
                at: mid,
                reason: "panel width underflow".into(),
            });
        }
        heap.push(gk15(&mut f, worst.a, mid, &mut max_abs)?);
        heap.push(gk15(&mut f, mid, worst.b, &mut max_abs)?);
        evals += 30;
    }
}
