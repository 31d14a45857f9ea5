//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Each export returns a flat `Float64Array` so the page can plot it without
//! any JSON round trip. The plain-Rust functions underneath are what the
//! tests exercise.

use ossolve::eigenfunctions::HermiteNorm;
use ossolve::grid::linspace;
use ossolve::meanflow::FlowConfig;
use ossolve::outer::{outer_mode_linear, outer_mode_quadratic};
use ossolve::shortwave::{steady_eigen_linear, steady_eigen_quadratic, wake_dispersion};
use ossolve::Complex64;
use wasm_bindgen::prelude::*;

/// Outer profile sampled on [0, y_max]: rows of (y, Re φ, Im φ, |φ|).
pub fn profile(
    case: &str,
    n: usize,
    reynolds: f64,
    epsilon: f64,
    y_max: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    if samples < 2 || !(y_max > 0.0) {
        return Err("need samples >= 2 and y_max > 0".into());
    }
    let mode = match case {
        "linear" => outer_mode_linear(n, reynolds, epsilon),
        "quadratic" => outer_mode_quadratic(n, reynolds, epsilon, HermiteNorm::Printed),
        other => return Err(format!("unknown case {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let f = mode.sample(&linspace(0.0, y_max, samples)).map_err(|e| e.to_string())?;
    Ok(f.grid
        .iter()
        .zip(&f.values)
        .flat_map(|(y, v)| [*y, v.re, v.im, v.norm()])
        .collect())
}

/// Steady wavenumbers k_1..k_{n_max} for Ū = y or Ū = y²: rows of (n, Re k, Im k).
/// A mode that fails to resolve is reported as NaN.
pub fn steady(case: &str, r: f64, chi: f64, n_max: usize) -> Result<Vec<f64>, String> {
    let cfg = FlowConfig::from_chi(r, chi).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * n_max);
    for n in 1..=n_max {
        let root = match case {
            "linear" => steady_eigen_linear(n, 1.0, 0.0, &cfg),
            "quadratic" => steady_eigen_quadratic(n, 1.0, 0.0, 0.0, &cfg),
            other => return Err(format!("unknown case {other:?}")),
        };
        let k = root.map(|r| r.pair.k).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        out.extend([n as f64, k.re, k.im]);
    }
    Ok(out)
}

/// Wake branch ω_n(k) for real k in (0, k_max]: rows of (k, Re ω, Im ω, decays).
pub fn wake(n: usize, u0: f64, w: f64, r: f64, chi: f64, k_max: f64, samples: usize) -> Result<Vec<f64>, String> {
    if samples < 1 || !(k_max > 0.0) {
        return Err("need samples >= 1 and k_max > 0".into());
    }
    let cfg = FlowConfig::from_chi(r, chi).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(4 * samples);
    for i in 1..=samples {
        let k = k_max * i as f64 / samples as f64;
        let m = wake_dispersion(n, Complex64::new(k, 0.0), u0, w, &cfg).map_err(|e| e.to_string())?;
        out.extend([k, m.omega.re, m.omega.im, if m.decays() { 1.0 } else { 0.0 }]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn outer_profile(
    case: &str,
    n: usize,
    reynolds: f64,
    epsilon: f64,
    y_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    profile(case, n, reynolds, epsilon, y_max, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn steady_wavenumbers(case: &str, r: f64, chi: f64, n_max: usize) -> Result<Vec<f64>, JsError> {
    steady(case, r, chi, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn wake_branch(
    n: usize,
    u0: f64,
    w: f64,
    r: f64,
    chi: f64,
    k_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    wake(n, u0, w, r, chi, k_max, samples).map_err(|e| JsError::new(&e))
}
