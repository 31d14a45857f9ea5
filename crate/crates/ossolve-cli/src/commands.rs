//! The four subcommands. Each returns the files it wrote and the number of
//! rows or runs that failed numerically.

use crate::config::*;
use crate::format::{cnum, num, tag, write_csv, write_text};
use crate::svg::{self, Panel};
use crate::{CliError, Outcome};
use ossolve::eigenfunctions::{HermiteNorm, PsiMode, WakeArgument};
use ossolve::grid::linspace;
use ossolve::longwave::{longwave_linear_dispersion, steady_quadratic_k, QuadraticMode};
use ossolve::meanflow::{FlowConfig, MeanProfile, Regime};
use ossolve::oracle::{validate_steady_linear, ValidationRow, MIN_POINTS};
use ossolve::outer::{
    figure_mode, figure_profiles, greens_profile, outer_mode_linear, outer_mode_quadratic, Figure, OuterMode,
    FIGURE_EPSILON, FIGURE_REYNOLDS,
};
use ossolve::shortwave::{steady_eigen_linear, steady_eigen_quadratic, wake_dispersion, SteadyRoot};
use ossolve::Complex64;
use serde_json::{json, Value};
use std::path::Path;

pub const EIGENVALUE_HEADER: [&str; 7] = [
    "n",
    "Re(k)",
    "Im(k)",
    "Re(omega)",
    "Im(omega)",
    "residual",
    "branch_note",
];
pub const PROFILE_HEADER: [&str; 4] = ["y", "Re(phi)", "Im(phi)", "abs(phi)"];
/// Self-convergence bound used by the validation verdict.
pub const SELF_CONVERGENCE_TOL: f64 = 1e-6;

struct Row {
    n: usize,
    k: Complex64,
    omega: Complex64,
    residual: f64,
    note: String,
}

fn short_steady(root: SteadyRoot, chi: f64) -> Row {
    let k = root.pair.k;
    let bf = root.branch_factor;
    Row {
        n: root.pair.n,
        k,
        omega: root.pair.omega,
        residual: root.residual / (1.0 + k.norm_sqr() / chi),
        note: format!("k/closed_form = {}", cnum(bf)),
    }
}

fn eigen_row(cfg: &EigenvaluesConfig, flow: &FlowConfig, profile: &MeanProfile, n: usize) -> ossolve::Result<Row> {
    let k_given = cfg.k.map(|[a, b]| Complex64::new(a, b));
    match (cfg.regime(flow), *profile) {
        (Regime::ShortWave, MeanProfile::Linear { b, c }) => {
            Ok(short_steady(steady_eigen_linear(n, b, c, flow)?, flow.chi))
        }
        (Regime::ShortWave, MeanProfile::Quadratic { a, b, c }) => {
            Ok(short_steady(steady_eigen_quadratic(n, a, b, c, flow)?, flow.chi))
        }
        (_, MeanProfile::Sech2 { u0, w }) => {
            let k = k_given.expect("checked before the run");
            let wm = wake_dispersion(n, k, u0, w, flow)?;
            let psi = PsiMode::wake(&wm, k, u0, w, *flow, WakeArgument::Half)?;
            let ys = linspace(-4.0 / w, 4.0 / w, 33);
            Ok(Row {
                n,
                k,
                omega: wm.omega,
                residual: psi.ode_residual(&ys)?,
                note: if wm.decays() {
                    "decaying".into()
                } else {
                    "non-decaying".into()
                },
            })
        }
        (Regime::LongWave, MeanProfile::Linear { b, c }) => {
            let disp = longwave_linear_dispersion(n, b, flow)?;
            let pair = disp.steady_pair(c)?;
            Ok(Row {
                n,
                k: pair.k,
                omega: pair.omega,
                residual: disp.condition(&pair)?.norm(),
                note: format!("w_n = {}", cnum(disp.w)),
            })
        }
        (Regime::LongWave, MeanProfile::Quadratic { a, .. }) => {
            let k = steady_quadratic_k(n, a, flow);
            let mode = QuadraticMode::with_delta_max(n, k, a, 0.0, 0.0, *flow, HermiteNorm::Standard, f64::INFINITY)?;
            let scale = (k * mode.pair.lambda).norm().max(f64::MIN_POSITIVE);
            Ok(Row {
                n,
                k,
                omega: mode.pair.omega,
                residual: mode.pair.omega.norm() / scale,
                note: format!("hermite order {}", 2 * n),
            })
        }
    }
}

pub fn eigenvalues(cfg: &EigenvaluesConfig, out: &Path) -> Result<Outcome, CliError> {
    let flow = cfg.flow.build()?;
    let profile = cfg.profile.build()?;
    match (&profile, cfg.k) {
        (MeanProfile::Sech2 { .. }, None) => {
            return Err(CliError::Config("k is required for the sech2 profile".into()));
        }
        (MeanProfile::Sech2 { .. }, Some([a, b])) if a == 0.0 && b == 0.0 => {
            return Err(CliError::Config("k must be nonzero".into()));
        }
        (MeanProfile::Quadratic { b, c, .. }, _)
            if cfg.regime(&flow) == Regime::LongWave && (*b != 0.0 || *c != 0.0) =>
        {
            return Err(CliError::Config(
                "long-wave steady quadratic roots need profile b = c = 0".into(),
            ));
        }
        _ => {}
    }
    let modes: Vec<usize> = (cfg.modes.first..=cfg.modes.last).collect();
    let results: Vec<_> = {
        use rayon::prelude::*;
        modes.par_iter().map(|&n| eigen_row(cfg, &flow, &profile, n)).collect()
    };
    let mut failures = 0;
    let mut rows = Vec::with_capacity(results.len());
    for (n, r) in modes.iter().zip(results) {
        rows.push(match r {
            Ok(row) => vec![
                row.n.to_string(),
                num(row.k.re),
                num(row.k.im),
                num(row.omega.re),
                num(row.omega.im),
                num(row.residual),
                row.note,
            ],
            Err(e) => {
                failures += 1;
                log::error!("mode {n}: {e}");
                let nan = num(f64::NAN);
                vec![
                    n.to_string(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan,
                    format!("FAILED: {e}"),
                ]
            }
        });
    }
    let path = out.join("eigenvalues.csv");
    write_csv(&path, &EIGENVALUE_HEADER, &rows)?;
    Ok(Outcome {
        files: vec![path],
        failures,
    })
}

fn outer_mode(case: Case, n: usize, reynolds: f64, epsilon: f64) -> ossolve::Result<OuterMode> {
    match case {
        Case::Linear => outer_mode_linear(n, reynolds, epsilon),
        Case::Quadratic => outer_mode_quadratic(n, reynolds, epsilon, HermiteNorm::Printed),
    }
}

fn case_name(case: Case) -> &'static str {
    match case {
        Case::Linear => "linear",
        Case::Quadratic => "quadratic",
    }
}

pub fn eigenfunction(cfg: &EigenfunctionConfig, out: &Path) -> Result<Outcome, CliError> {
    let g = cfg.grid;
    if g.samples < 2 || !(g.y_max > g.y_min) || g.y_min < 0.0 || !g.y_max.is_finite() {
        return Err(CliError::Config(
            "grid: need samples >= 2 and 0 <= y_min < y_max".into(),
        ));
    }
    let mode = outer_mode(cfg.case, cfg.n, cfg.reynolds, cfg.epsilon).map_err(|e| CliError::Config(e.to_string()))?;
    let ys = linspace(g.y_min, g.y_max, g.samples);
    let stem = format!(
        "phi_{}_{}_n{}_R{}_eps{}",
        match cfg.method {
            Method::Outer => "outer",
            Method::Greens => "greens",
        },
        case_name(cfg.case),
        cfg.n,
        tag(cfg.reynolds),
        tag(cfg.epsilon)
    );
    let mut failures = 0;
    let mut rows = Vec::with_capacity(ys.len());
    let mut mags = Vec::with_capacity(ys.len());
    let header: Vec<&str> = match cfg.method {
        Method::Outer => {
            let f = mode.sample(&ys).map_err(|e| CliError::Numerical(e.to_string()))?;
            for (y, v) in f.grid.iter().zip(&f.values) {
                rows.push(vec![num(*y), num(v.re), num(v.im), num(v.norm())]);
                mags.push(v.norm());
            }
            PROFILE_HEADER.to_vec()
        }
        Method::Greens => {
            let pts = greens_profile(&mode, &ys).map_err(|e| CliError::Numerical(e.to_string()))?;
            for (y, p) in ys.iter().zip(pts) {
                match p {
                    Ok(p) => {
                        rows.push(vec![
                            num(*y),
                            num(p.value.re),
                            num(p.value.im),
                            num(p.value.norm()),
                            num(p.error),
                        ]);
                        mags.push(p.value.norm());
                    }
                    Err(e) => {
                        failures += 1;
                        log::error!("y = {y}: {e}");
                        let nan = num(f64::NAN);
                        rows.push(vec![num(*y), nan.clone(), nan.clone(), nan, format!("FAILED: {e}")]);
                        mags.push(f64::NAN);
                    }
                }
            }
            let mut h = PROFILE_HEADER.to_vec();
            h.push("quadrature_error");
            h
        }
    };
    let csv_path = out.join(format!("{stem}.csv"));
    write_csv(&csv_path, &header, &rows)?;
    let mut files = vec![csv_path];
    if cfg.svg {
        let p = Panel {
            title: stem.clone(),
            x: ys,
            y: mags,
        };
        let path = out.join(format!("{stem}.svg"));
        write_text(&path, &svg::render(&[p], 1, "y", "|phi|"))?;
        files.push(path);
    }
    Ok(Outcome { files, failures })
}

pub fn figures(cfg: &FiguresConfig, out: &Path) -> Result<Outcome, CliError> {
    let (fig, name, case, index) = match cfg.which {
        Which::Fig1 => (Figure::Fig1, "fig1", Case::Linear, figure_mode(Figure::Fig1, 1.0e3)),
        Which::Fig2 => (Figure::Fig2, "fig2", Case::Quadratic, figure_mode(Figure::Fig2, 1.0e3)),
    };
    let index = index.map_err(|e| CliError::Numerical(e.to_string()))?.index;
    let profiles = figure_profiles(fig).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut files = Vec::new();
    let mut panels = Vec::new();
    let mut maxima = Vec::new();
    for (re, f) in FIGURE_REYNOLDS.iter().zip(&profiles) {
        let rows: Vec<Vec<String>> = f
            .grid
            .iter()
            .zip(&f.values)
            .map(|(y, v)| vec![num(*y), num(v.re), num(v.im), num(v.norm())])
            .collect();
        let path = out.join(format!(
            "{name}_{}_n{index}_R{}_eps{}.csv",
            case_name(case),
            tag(*re),
            tag(FIGURE_EPSILON)
        ));
        write_csv(&path, &PROFILE_HEADER, &rows)?;
        files.push(path);
        maxima.push(f.max_abs());
        panels.push(Panel {
            title: format!("R = {}, eps = {}", tag(*re), tag(FIGURE_EPSILON)),
            x: f.grid.clone(),
            y: f.values.iter().map(|v| v.norm()).collect(),
        });
    }
    let svg_path = out.join(format!("{name}.svg"));
    write_text(&svg_path, &svg::render(&panels, 2, "y", &format!("|phi_{index}|")))?;
    files.push(svg_path);
    let decreasing = maxima.windows(2).all(|w| w[1] < w[0]);
    let summary = json!({
        "tool": "ossolve",
        "version": env!("CARGO_PKG_VERSION"),
        "config_hash": config_hash(cfg),
        "figure": name,
        "case": case_name(case),
        "mode": index,
        "epsilon": FIGURE_EPSILON,
        "reynolds": FIGURE_REYNOLDS,
        "max_abs_phi": maxima,
        "max_abs_strictly_decreasing_in_reynolds": decreasing,
    });
    let json_path = out.join(format!("{name}_summary.json"));
    write_text(&json_path, &pretty(&summary))?;
    files.push(json_path);
    Ok(Outcome { files, failures: 0 })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn row_json(r: &ValidationRow) -> Value {
    json!({
        "n": r.n,
        "r": r.r,
        "wkb_k": complex(r.seed.k),
        "oracle_k": complex(r.oracle.k),
        "omega": complex(r.oracle.omega),
        "relative_gap": r.gap,
        "self_convergence": {
            "n_doubling": r.convergence.doubling,
            "y_max_extension": r.convergence.truncation,
        },
    })
}

/// Report as JSON plus whether it passed.
pub fn validation_report(cfg: &ValidateConfig, rows: &[ValidationRow]) -> (Value, bool) {
    let decreasing = ossolve::oracle::gaps_strictly_decreasing(rows);
    let worst = rows.iter().map(|r| r.convergence.doubling).fold(0.0, f64::max);
    let converged = worst <= SELF_CONVERGENCE_TOL;
    let pass = decreasing && converged;
    let report = json!({
        "tool": "ossolve",
        "version": env!("CARGO_PKG_VERSION"),
        "config_hash": config_hash(cfg),
        "points": cfg.points,
        "chi": cfg.chi,
        "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
        "trend": {
            "gaps_strictly_decreasing": decreasing,
            "max_n_doubling_change": worst,
            "self_convergence_tolerance": SELF_CONVERGENCE_TOL,
            "self_converged": converged,
        },
        "status": if pass { "pass" } else { "fail" },
    });
    (report, pass)
}

pub fn validate(cfg: &ValidateConfig, out: &Path) -> Result<Outcome, CliError> {
    if cfg.points < MIN_POINTS {
        return Err(CliError::Config(format!(
            "points = {} is below the minimum of {MIN_POINTS}",
            cfg.points
        )));
    }
    if cfg.n == 0 || cfg.r.is_empty() || cfg.r.iter().any(|r| !(*r >= 1.0)) || !(cfg.chi > 0.0) {
        return Err(CliError::Config(
            "validate needs n >= 1, a non-empty r list with every r >= 1, and chi > 0".into(),
        ));
    }
    let rows =
        validate_steady_linear(cfg.n, &cfg.r, cfg.chi, cfg.points).map_err(|e| CliError::Numerical(e.to_string()))?;
    let (report, pass) = validation_report(cfg, &rows);
    if !pass {
        log::warn!("validation trend check failed");
    }
    let path = out.join("validate.json");
    write_text(&path, &pretty(&report))?;
    Ok(Outcome {
        files: vec![path],
        failures: 0,
    })
}
