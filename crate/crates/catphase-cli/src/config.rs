//! Strict JSON run configuration.
//!
//! Unknown fields are rejected so that a typo in a physics parameter fails
//! loudly instead of silently running the defaults.

use catphase::{sg, CatState, SgConfig, SpinSelection};
use num_complex::Complex64;
use serde::Deserialize;
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub scenario: Scenario,
    #[serde(default)]
    pub state: Option<StateParams>,
    #[serde(default)]
    pub sg: Option<SgParams>,
    #[serde(default)]
    pub grid: Option<GridParams>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<FormatParam>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Sweep,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatParam {
    Csv,
    Json,
}

/// Direct cat-state parameters. Amplitudes come either from the phase-angle
/// family (`phi`) or from explicit complex pairs `a`, `b` — exactly one.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateParams {
    pub x0: f64,
    pub p0: f64,
    pub eta: f64,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    #[serde(default)]
    pub phi: Option<f64>,
    #[serde(default)]
    pub a: Option<[f64; 2]>,
    #[serde(default)]
    pub b: Option<[f64; 2]>,
}

/// Stern-Gerlach apparatus parameters plus the spin pre-selection.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SgParams {
    pub mu: f64,
    pub b: f64,
    pub tau: f64,
    pub m: f64,
    pub eta: f64,
    pub p_y: f64,
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    pub selection: SelectionParams,
}

/// Spin pre-selection: the phase-angle family (`phi`) or explicit `a1`, `a2`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionParams {
    #[serde(default)]
    pub phi: Option<f64>,
    #[serde(default)]
    pub a1: Option<[f64; 2]>,
    #[serde(default)]
    pub a2: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

fn default_hbar() -> f64 {
    1.0
}

impl RunConfig {
    /// Parse and structurally validate a config document.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            ));
        }
        match cfg.scenario {
            Scenario::Custom => {
                if cfg.state.is_some() == cfg.sg.is_some() {
                    return Err(
                        "custom scenario needs exactly one of `state` or `sg`".to_string()
                    );
                }
            }
            _ => {
                if cfg.state.is_some() || cfg.sg.is_some() {
                    return Err(
                        "figure and sweep scenarios fix their own parameters; remove `state`/`sg`"
                            .to_string(),
                    );
                }
            }
        }
        Ok(cfg)
    }
}

impl StateParams {
    pub fn build(&self) -> Result<CatState, String> {
        match (self.phi, self.a, self.b) {
            (Some(phi), None, None) => {
                CatState::from_phase_angle(phi, self.x0, self.p0, self.eta, self.hbar)
                    .map_err(|e| e.to_string())
            }
            (None, Some(a), Some(b)) => CatState::with_hbar(
                Complex64::new(a[0], a[1]),
                Complex64::new(b[0], b[1]),
                self.x0,
                self.p0,
                self.eta,
                self.hbar,
            )
            .map_err(|e| e.to_string()),
            _ => Err("state needs either `phi` or both `a` and `b`".to_string()),
        }
    }
}

impl SelectionParams {
    pub fn build(&self) -> Result<SpinSelection, String> {
        match (self.phi, self.a1, self.a2) {
            (Some(phi), None, None) => {
                SpinSelection::from_phase_angle(phi).map_err(|e| e.to_string())
            }
            (None, Some(a1), Some(a2)) => SpinSelection::new(
                Complex64::new(a1[0], a1[1]),
                Complex64::new(a2[0], a2[1]),
            )
            .map_err(|e| e.to_string()),
            _ => Err("selection needs either `phi` or both `a1` and `a2`".to_string()),
        }
    }
}

impl SgParams {
    pub fn build(&self) -> Result<(SgConfig, SpinSelection), String> {
        let mut cfg =
            SgConfig::with_hbar(self.mu, self.b, self.tau, self.m, self.eta, self.p_y, self.hbar)
                .map_err(|e| e.to_string())?;
        if let Some(d) = self.d {
            cfg = cfg.with_field_length(d).map_err(|e| e.to_string())?;
        }
        let sel = self.selection.build()?;
        Ok((cfg, sel))
    }

    /// The post-selected meter state realized by this apparatus.
    pub fn post_selected_state(&self) -> Result<(CatState, SpinSelection), String> {
        let (cfg, sel) = self.build()?;
        let state = sg::post_select(&cfg, &sel).map_err(|e| e.to_string())?;
        Ok((state, sel))
    }
}
