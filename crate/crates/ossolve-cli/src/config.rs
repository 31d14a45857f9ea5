//! JSON run configurations, one per subcommand. Unknown keys are rejected.

use crate::CliError;
use ossolve::meanflow::{FlowConfig, MeanProfile, Regime};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FlowSpec {
    pub r: f64,
    /// Give exactly one of `chi` and `reynolds`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reynolds: Option<f64>,
}

impl FlowSpec {
    pub fn build(&self) -> Result<FlowConfig, CliError> {
        let cfg = match (self.chi, self.reynolds) {
            (Some(chi), None) => FlowConfig::from_chi(self.r, chi),
            (None, Some(re)) => FlowConfig::from_reynolds(self.r, re),
            _ => return Err(CliError::Config("flow: give exactly one of chi and reynolds".into())),
        };
        cfg.map_err(|e| CliError::Config(format!("flow: {e}")))
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    /// Ū = by + c
    Linear {
        b: f64,
        #[serde(default)]
        c: f64,
    },
    /// Ū = ay² + by + c
    Quadratic {
        a: f64,
        #[serde(default)]
        b: f64,
        #[serde(default)]
        c: f64,
    },
    /// Ū = u0 sech²(wy)
    Sech2 { u0: f64, w: f64 },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<MeanProfile, CliError> {
        let bad = |m: &str| Err(CliError::Config(format!("profile: {m}")));
        match *self {
            ProfileSpec::Linear { b, c } => {
                if b == 0.0 || !b.is_finite() {
                    return bad("b must be nonzero for a linear profile");
                }
                Ok(MeanProfile::Linear { b, c })
            }
            ProfileSpec::Quadratic { a, b, c } => {
                if !(a > 0.0 && a.is_finite()) {
                    return bad("a must be positive for a quadratic profile");
                }
                Ok(MeanProfile::Quadratic { a, b, c })
            }
            ProfileSpec::Sech2 { u0, w } => {
                if !(u0 > 0.0 && w > 0.0) {
                    return bad("u0 and w must be positive for a sech2 profile");
                }
                Ok(MeanProfile::Sech2 { u0, w })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RegimeSpec {
    ShortWave,
    LongWave,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModeRange {
    pub first: usize,
    pub last: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EigenvaluesConfig {
    pub flow: FlowSpec,
    pub profile: ProfileSpec,
    pub modes: ModeRange,
    /// Defaults to the regime implied by r.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<RegimeSpec>,
    /// Wavenumber [re, im]; required for the sech2 profile, whose modes are
    /// tabulated at fixed k.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<[f64; 2]>,
}

impl EigenvaluesConfig {
    pub fn regime(&self, cfg: &FlowConfig) -> Regime {
        match self.regime {
            Some(RegimeSpec::ShortWave) => Regime::ShortWave,
            Some(RegimeSpec::LongWave) => Regime::LongWave,
            None => cfg.regime,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Outer,
    Greens,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Linear,
    Quadratic,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub y_min: f64,
    #[serde(default = "default_y_max")]
    pub y_max: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_y_max() -> f64 {
    ossolve::outer::FIGURE_Y_MAX
}

fn default_samples() -> usize {
    ossolve::outer::FIGURE_SAMPLES
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            y_min: 0.0,
            y_max: default_y_max(),
            samples: default_samples(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EigenfunctionConfig {
    pub method: Method,
    pub case: Case,
    /// Mode index: n ≥ 1 for the linear case, Hermite index m ≥ 0 for the quadratic case.
    pub n: usize,
    pub epsilon: f64,
    pub reynolds: f64,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub svg: bool,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Fig1,
    Fig2,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FiguresConfig {
    pub which: Which,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    pub n: usize,
    pub r: Vec<f64>,
    pub chi: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    96
}

/// Reads and parses a config file.
pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
}

/// SHA-256 of the config after parsing, so formatting does not change it.
pub fn config_hash<T: Serialize>(cfg: &T) -> String {
    let canon = serde_json::to_vec(cfg).expect("config serializes");
    let digest = Sha256::digest(&canon);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
