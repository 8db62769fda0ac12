//! Figure recipes, the parameter sweep, and data-file writers.

use crate::config::{FormatParam, GridParams};
use catphase::{overlap, weak, wigner, CatState, DeltaRange, PhaseSpaceGrid, Regime, SpinSelection};
use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Amplitude phase angle shared by all figure recipes.
pub const PHI: f64 = std::f64::consts::PI / 2.02;

/// Errors carry the failing module's name and map onto the exit codes:
/// configuration/input problems exit 2, numerical failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Numerical(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn config(module: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Config(format!("[{module}] {msg}"))
    }
}

impl From<catphase::Error> for CliError {
    fn from(err: catphase::Error) -> Self {
        let msg = format!("[{}] {err}", err.module());
        if err.is_numerical() {
            CliError::Numerical(msg)
        } else {
            CliError::Config(msg)
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// One figure's pinned parameter bundle.
#[derive(Debug, Clone, Copy)]
pub struct Recipe {
    pub name: &'static str,
    pub x0: f64,
    pub p0: f64,
    pub eta: f64,
    /// Overlap-profile scan limit for the overlap figures.
    pub delta_max: f64,
    /// Phase-space window for the Wigner figures.
    pub window: (f64, f64, f64, f64),
}

/// Figures 1-3 share the separated-packet geometry, 4-6 the coincident one.
const SEPARATED: Recipe = Recipe {
    name: "",
    x0: 6.0,
    p0: 0.01,
    eta: 1.0,
    delta_max: 2.0,
    window: (-10.0, 10.0, -2.0, 2.0),
};

const COINCIDENT: Recipe = Recipe {
    name: "",
    x0: 1e-4,
    p0: 1e-3,
    eta: 1.0,
    delta_max: 5.0,
    window: (-5.0, 5.0, -3.0, 3.0),
};

pub fn recipe(name: &str) -> Option<Recipe> {
    let base = match name {
        "fig1" | "fig2" | "fig3" => SEPARATED,
        "fig4" | "fig5" | "fig6" => COINCIDENT,
        _ => return None,
    };
    Some(Recipe {
        name: match name {
            "fig1" => "fig1",
            "fig2" => "fig2",
            "fig3" => "fig3",
            "fig4" => "fig4",
            "fig5" => "fig5",
            _ => "fig6",
        },
        ..base
    })
}

impl Recipe {
    pub fn state(&self, hbar: f64) -> CliResult<CatState> {
        Ok(CatState::from_phase_angle(PHI, self.x0, self.p0, self.eta, hbar)?)
    }

    pub fn selection(&self) -> CliResult<SpinSelection> {
        Ok(SpinSelection::from_phase_angle(PHI)?)
    }
}

/// Output knobs shared by every subcommand.
#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: FormatParam,
}

impl OutputSpec {
    fn path(&self, stem: &str) -> PathBuf {
        let ext = match self.format {
            FormatParam::Csv => "csv",
            FormatParam::Json => "json",
        };
        self.dir.join(format!("{stem}.{ext}"))
    }

    fn ensure_dir(&self) -> CliResult<()> {
        fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::config("cli", format!("cannot create {:?}: {e}", self.dir)))
    }
}

/// Tabular payload rendered as CSV or as a JSON column/row document.
struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    fn write(&self, spec: &OutputSpec, stem: &str) -> CliResult<PathBuf> {
        spec.ensure_dir()?;
        let path = spec.path(stem);
        let mut text = String::new();
        match spec.format {
            FormatParam::Csv => {
                text.push_str(&self.columns.join(","));
                text.push('\n');
                for row in &self.rows {
                    text.push_str(&row.join(","));
                    text.push('\n');
                }
            }
            FormatParam::Json => {
                let doc = serde_json::json!({
                    "columns": self.columns,
                    "rows": self.rows,
                });
                text = serde_json::to_string_pretty(&doc).expect("table serializes");
                text.push('\n');
            }
        }
        write_file(&path, &text)?;
        Ok(path)
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    let mut file = fs::File::create(path)
        .map_err(|e| CliError::config("cli", format!("cannot write {path:?}: {e}")))?;
    file.write_all(text.as_bytes())
        .map_err(|e| CliError::config("cli", format!("cannot write {path:?}: {e}")))?;
    Ok(())
}

fn fmt(v: f64) -> String {
    // shortest round-trip decimal; stable across runs
    format!("{v}")
}

#[derive(Serialize)]
struct FieldSummary {
    schema_version: u32,
    min_value: f64,
    total_mass: f64,
    grid: GridSummary,
    coarse: bool,
}

#[derive(Serialize)]
struct GridSummary {
    x_min: f64,
    x_max: f64,
    p_min: f64,
    p_max: f64,
    nx: usize,
    np: usize,
}

/// Figures 1 and 4: overlap profile `delta, overlap`.
pub fn run_overlap_figure(recipe: &Recipe, hbar: f64, spec: &OutputSpec) -> CliResult<String> {
    let state = recipe.state(hbar)?;
    let profile = overlap::find_zeros(
        &state,
        DeltaRange::new(0.0, recipe.delta_max)?,
        2000,
    )?;
    let rows = profile
        .deltas
        .iter()
        .zip(&profile.values)
        .map(|(d, v)| vec![fmt(*d), fmt(*v)])
        .collect();
    let table = Table {
        columns: &["delta", "overlap"],
        rows,
    };
    let path = table.write(spec, recipe.name)?;

    let mut summary = String::new();
    let _ = writeln!(summary, "{}: overlap profile -> {}", recipe.name, path.display());
    let _ = writeln!(summary, "  I = {:.6e}  N = {:.6}", state.inner_product(), state.normalization());
    let _ = writeln!(summary, "  zeros located: {}", profile.zeros.len());
    if let Some(z) = profile.first_zero {
        let _ = writeln!(summary, "  first zero = {z:.9}  (fourier scale {})", 1.0 / state.eta());
    }
    if let Some(s) = profile.min_spacing {
        let _ = writeln!(summary, "  min zero spacing = {s:.9}");
    }
    Ok(summary)
}

/// Figures 2 and 5: Wigner field `x, p, w` plus a JSON summary.
pub fn run_wigner_figure(
    recipe: &Recipe,
    hbar: f64,
    grid_override: Option<(usize, usize)>,
    spec: &OutputSpec,
) -> CliResult<String> {
    let state = recipe.state(hbar)?;
    let (nx, np) = grid_override.unwrap_or((512, 512));
    let (x_min, x_max, p_min, p_max) = recipe.window;
    let grid = PhaseSpaceGrid::new(x_min, x_max, p_min, p_max, nx, np)?;
    let field = wigner::field(&state, &grid)?;

    let xs = grid.xs();
    let ps = grid.ps();
    let mut rows = Vec::with_capacity(nx * np);
    for (i, &x) in xs.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            rows.push(vec![fmt(x), fmt(p), fmt(field.values[[i, j]])]);
        }
    }
    let table = Table {
        columns: &["x", "p", "w"],
        rows,
    };
    let path = table.write(spec, recipe.name)?;

    let summary_doc = FieldSummary {
        schema_version: 1,
        min_value: field.min_value,
        total_mass: field.total_mass,
        grid: GridSummary {
            x_min,
            x_max,
            p_min,
            p_max,
            nx,
            np,
        },
        coarse: field.coarse,
    };
    let summary_path = spec.dir.join(format!("{}_summary.json", recipe.name));
    let mut text = serde_json::to_string_pretty(&summary_doc).expect("summary serializes");
    text.push('\n');
    write_file(&summary_path, &text)?;

    let mut out = String::new();
    let _ = writeln!(out, "{}: wigner field -> {}", recipe.name, path.display());
    let _ = writeln!(out, "  summary -> {}", summary_path.display());
    let _ = writeln!(
        out,
        "  min W = {:.6e}  mass = {:.6}  (bound 1/pi hbar = {:.6})",
        field.min_value,
        field.total_mass,
        1.0 / (std::f64::consts::PI * hbar)
    );
    if field.coarse {
        let _ = writeln!(out, "  warning: grid spacing exceeds the default resolution bounds");
    }
    Ok(out)
}

/// Figures 3 and 6: position density `x, density`.
pub fn run_density_figure(recipe: &Recipe, hbar: f64, spec: &OutputSpec) -> CliResult<String> {
    let state = recipe.state(hbar)?;
    let span = state.x0() + 8.0 * state.eta();
    let xs = catphase::grid::linspace(-span, span, 8001);
    let density = state.position_density(&xs)?;
    let rows = xs
        .iter()
        .zip(&density.values)
        .map(|(x, v)| vec![fmt(*x), fmt(*v)])
        .collect();
    let table = Table {
        columns: &["x", "density"],
        rows,
    };
    let path = table.write(spec, recipe.name)?;

    let peak_idx = catphase::grid::argmax(&density.values);
    let mut out = String::new();
    let _ = writeln!(out, "{}: position density -> {}", recipe.name, path.display());
    let _ = writeln!(out, "  I = {:.6e}  regime = {:?}", state.inner_product(), Regime::classify(state.inner_product()));
    let _ = writeln!(out, "  density peak at x = {:.6}", xs[peak_idx]);
    let sel = recipe.selection()?;
    match weak::position_peak_prediction(&state, &sel) {
        Ok(predicted) => {
            let _ = writeln!(out, "  weak-pointer prediction: peak at {predicted:.6}");
        }
        Err(err) => {
            let _ = writeln!(out, "  weak-pointer prediction unavailable: {err}");
        }
    }
    if density.coarse {
        let _ = writeln!(out, "  warning: sample spacing exceeds eta/10");
    }
    Ok(out)
}

/// Complementarity sweep over the phase-family states at both figure kicks.
pub fn run_sweep(hbar: f64, spec: &OutputSpec) -> CliResult<String> {
    let sel = SpinSelection::from_phase_angle(PHI)?;
    let mut rows = Vec::new();
    for &p0 in &[0.01, 1e-3] {
        for &x0 in &[1e-4, 0.01, 0.1, 1.0, 6.0] {
            let state = CatState::from_phase_angle(PHI, x0, p0, 1.0, hbar)?;
            let report = overlap::sensitivity_report(&state)?;
            let mut grid = PhaseSpaceGrid::default_for(&state);
            grid.nx = 256;
            grid.np = 256;
            let field = wigner::field(&state, &grid)?;
            let weak_peak = weak::position_peak_prediction(&state, &sel).ok();
            let weak_regime = weak_peak.is_some();
            rows.push(vec![
                fmt(x0),
                fmt(p0),
                fmt(report.inner_product),
                report.first_zero.map(fmt).unwrap_or_default(),
                fmt(field.min_value),
                weak_peak.map(fmt).unwrap_or_default(),
                report.sub_fourier.to_string(),
                weak_regime.to_string(),
            ]);
        }
    }
    let table = Table {
        columns: &[
            "x0",
            "p0",
            "inner_product",
            "first_zero",
            "wigner_min",
            "weak_peak",
            "sub_fourier",
            "weak_regime",
        ],
        rows,
    };
    let path = table.write(spec, "sweep")?;
    let mut out = String::new();
    let _ = writeln!(out, "sweep: complementarity table -> {}", path.display());
    let _ = writeln!(
        out,
        "  rows where sub_fourier and weak_regime are both true: 0 expected"
    );
    Ok(out)
}

/// Full analysis of a user-supplied state: overlap profile, position density,
/// Wigner field and summary.
pub fn run_custom(
    state: &CatState,
    sel: Option<&SpinSelection>,
    grid: Option<GridParams>,
    spec: &OutputSpec,
) -> CliResult<String> {
    let report = overlap::sensitivity_report(state)?;
    let eta = state.eta();
    let max = (5.0 / eta).max(4.0 * std::f64::consts::PI / state.x0().max(eta));
    let profile = overlap::find_zeros(state, DeltaRange::new(0.0, max)?, 2000)?;
    let overlap_table = Table {
        columns: &["delta", "overlap"],
        rows: profile
            .deltas
            .iter()
            .zip(&profile.values)
            .map(|(d, v)| vec![fmt(*d), fmt(*v)])
            .collect(),
    };
    let overlap_path = overlap_table.write(spec, "overlap")?;

    let span = state.x0() + 8.0 * eta;
    let xs = catphase::grid::linspace(-span, span, 8001);
    let density = state.position_density(&xs)?;
    let density_table = Table {
        columns: &["x", "density"],
        rows: xs
            .iter()
            .zip(&density.values)
            .map(|(x, v)| vec![fmt(*x), fmt(*v)])
            .collect(),
    };
    let density_path = density_table.write(spec, "density")?;

    let ps_grid = match grid {
        Some(g) => PhaseSpaceGrid::new(g.x_min, g.x_max, g.p_min, g.p_max, g.nx, g.np)?,
        None => PhaseSpaceGrid::default_for(state),
    };
    let field = wigner::field(state, &ps_grid)?;
    let field_rows = {
        let xs = ps_grid.xs();
        let ps = ps_grid.ps();
        let mut rows = Vec::with_capacity(ps_grid.nx * ps_grid.np);
        for (i, &x) in xs.iter().enumerate() {
            for (j, &p) in ps.iter().enumerate() {
                rows.push(vec![fmt(x), fmt(p), fmt(field.values[[i, j]])]);
            }
        }
        rows
    };
    let wigner_path = Table {
        columns: &["x", "p", "w"],
        rows: field_rows,
    }
    .write(spec, "wigner")?;
    let summary_doc = FieldSummary {
        schema_version: 1,
        min_value: field.min_value,
        total_mass: field.total_mass,
        grid: GridSummary {
            x_min: ps_grid.x_min,
            x_max: ps_grid.x_max,
            p_min: ps_grid.p_min,
            p_max: ps_grid.p_max,
            nx: ps_grid.nx,
            np: ps_grid.np,
        },
        coarse: field.coarse,
    };
    let summary_path = spec.dir.join("wigner_summary.json");
    let mut text = serde_json::to_string_pretty(&summary_doc).expect("summary serializes");
    text.push('\n');
    write_file(&summary_path, &text)?;

    let mut out = String::new();
    let _ = writeln!(out, "custom: overlap -> {}", overlap_path.display());
    let _ = writeln!(out, "        density -> {}", density_path.display());
    let _ = writeln!(out, "        wigner -> {}", wigner_path.display());
    let _ = writeln!(out, "        summary -> {}", summary_path.display());
    out.push_str(&describe_state(state, sel));
    let _ = writeln!(
        out,
        "  zeros: {}  first = {}  sub_fourier = {}",
        profile.zeros.len(),
        profile
            .first_zero
            .map(|z| format!("{z:.9}"))
            .unwrap_or_else(|| "none".to_string()),
        report.sub_fourier
    );
    let _ = writeln!(
        out,
        "  wigner min = {:.6e}  mass = {:.6}",
        field.min_value, field.total_mass
    );
    Ok(out)
}

/// Light diagnostics: derived quantities only, no scans or grids.
pub fn describe_state(state: &CatState, sel: Option<&SpinSelection>) -> String {
    let mut out = String::new();
    let i = state.inner_product();
    let _ = writeln!(
        out,
        "  x0 = {}  p0 = {}  eta = {}  hbar = {}",
        state.x0(),
        state.p0(),
        state.eta(),
        state.hbar()
    );
    let _ = writeln!(
        out,
        "  I = {:.6e}  N = {:.6}  regime = {:?}",
        i,
        state.normalization(),
        Regime::classify(i)
    );
    let _ = writeln!(out, "  fourier scale 1/eta = {}", 1.0 / state.eta());
    if let Some(sel) = sel {
        match weak::weak_value(sel) {
            Ok(w) => {
                let _ = writeln!(out, "  weak value a2/a1 = {:.6} + {:.6}i", w.re, w.im);
                match weak::position_peak_prediction(state, sel) {
                    Ok(peak) => {
                        let _ = writeln!(out, "  predicted pointer peak = {peak:.6}");
                    }
                    Err(err) => {
                        let _ = writeln!(out, "  pointer approximation refused: {err}");
                    }
                }
            }
            Err(err) => {
                let _ = writeln!(out, "  weak value unavailable: {err}");
            }
        }
    }
    let grid = PhaseSpaceGrid::default_for(state);
    let _ = writeln!(
        out,
        "  default grid: {} x {}  dx = {:.6}  dp = {:.6}  resolves = {}",
        grid.nx,
        grid.np,
        grid.dx(),
        grid.dp(),
        grid.resolves(state)
    );
    out
}
