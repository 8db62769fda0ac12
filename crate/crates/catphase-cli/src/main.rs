//! Data-producing front end for the cat-state phase-space library.
//!
//! Subcommands `fig1`..`fig6` reproduce the pinned figure recipes, `sweep`
//! emits the complementarity table, `custom` analyzes a state from a JSON
//! config, and `validate` echoes derived quantities without heavy work.
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod config;
mod recipes;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{FormatParam, RunConfig, Scenario};
use recipes::{CliError, CliResult, OutputSpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "catphase", version, about = "Cat-state phase-space analysis: overlap zeros, Wigner negativity, weak-value pointer shifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for FormatParam {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => FormatParam::Csv,
            Format::Json => FormatParam::Json,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Output directory for data files.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Data file format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Override hbar (default 1).
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Args)]
struct GridArg {
    /// Grid resolution NX NP for phase-space fields.
    #[arg(long, num_args = 2, value_names = ["NX", "NP"])]
    grid: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum Command {
    /// Overlap-vs-shift profile in the separated regime (I ~ 0).
    Fig1(CommonArgs),
    /// Wigner field in the separated regime: interference negativity.
    Fig2 {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Position density in the separated regime: peaks at the eigenvalues.
    Fig3(CommonArgs),
    /// Overlap-vs-shift profile in the coincident regime (I ~ 1).
    Fig4(CommonArgs),
    /// Wigner field in the coincident regime: no negativity.
    Fig5 {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Position density in the coincident regime: weak-value pointer shift.
    Fig6(CommonArgs),
    /// Complementarity table over the phase-family states.
    Sweep(CommonArgs),
    /// Analyze a state described by a JSON config file.
    Custom {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Echo derived quantities for a recipe or config without heavy work.
    Validate {
        /// Recipe name (fig1..fig6).
        recipe: Option<String>,
        /// JSON run configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override hbar for recipe validation (default 1).
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Fig1(common) => {
            let recipe = recipes::recipe("fig1").expect("pinned recipe");
            recipes::run_overlap_figure(&recipe, common.hbar, &spec(&common))
        }
        Command::Fig4(common) => {
            let recipe = recipes::recipe("fig4").expect("pinned recipe");
            recipes::run_overlap_figure(&recipe, common.hbar, &spec(&common))
        }
        Command::Fig2 { common, grid } => {
            let recipe = recipes::recipe("fig2").expect("pinned recipe");
            recipes::run_wigner_figure(&recipe, common.hbar, grid_pair(&grid)?, &spec(&common))
        }
        Command::Fig5 { common, grid } => {
            let recipe = recipes::recipe("fig5").expect("pinned recipe");
            recipes::run_wigner_figure(&recipe, common.hbar, grid_pair(&grid)?, &spec(&common))
        }
        Command::Fig3(common) => {
            let recipe = recipes::recipe("fig3").expect("pinned recipe");
            recipes::run_density_figure(&recipe, common.hbar, &spec(&common))
        }
        Command::Fig6(common) => {
            let recipe = recipes::recipe("fig6").expect("pinned recipe");
            recipes::run_density_figure(&recipe, common.hbar, &spec(&common))
        }
        Command::Sweep(common) => recipes::run_sweep(common.hbar, &spec(&common)),
        Command::Custom { config, common } => run_custom(&config, &common),
        Command::Validate {
            recipe,
            config,
            hbar,
        } => run_validate(recipe.as_deref(), config.as_deref(), hbar),
    }
}

fn spec(common: &CommonArgs) -> OutputSpec {
    OutputSpec {
        dir: common.out.clone(),
        format: common.format.into(),
    }
}

fn grid_pair(grid: &GridArg) -> CliResult<Option<(usize, usize)>> {
    match &grid.grid {
        None => Ok(None),
        Some(v) if v.len() == 2 => Ok(Some((v[0], v[1]))),
        Some(v) => Err(CliError::config(
            "cli",
            format!("--grid needs exactly two values, got {}", v.len()),
        )),
    }
}

fn load_config(path: &std::path::Path) -> CliResult<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config("cli", format!("cannot read {path:?}: {e}")))?;
    RunConfig::from_json(&text).map_err(|e| CliError::config("config", e))
}

fn run_custom(path: &std::path::Path, common: &CommonArgs) -> CliResult<String> {
    let cfg = load_config(path)?;
    if cfg.scenario != Scenario::Custom {
        // a config naming a figure scenario simply runs that recipe
        return run_config_scenario(&cfg, common);
    }
    let out_spec = OutputSpec {
        dir: cfg.output.clone().unwrap_or_else(|| common.out.clone()),
        format: cfg.format.unwrap_or(common.format.into()),
    };
    if let Some(state_params) = &cfg.state {
        let state = state_params
            .build()
            .map_err(|e| CliError::config("config", e))?;
        recipes::run_custom(&state, None, cfg.grid, &out_spec)
    } else if let Some(sg_params) = &cfg.sg {
        let (state, sel) = sg_params
            .post_selected_state()
            .map_err(|e| CliError::config("config", e))?;
        recipes::run_custom(&state, Some(&sel), cfg.grid, &out_spec)
    } else {
        Err(CliError::config(
            "config",
            "custom scenario needs `state` or `sg`",
        ))
    }
}

fn run_config_scenario(cfg: &RunConfig, common: &CommonArgs) -> CliResult<String> {
    let out_spec = OutputSpec {
        dir: cfg.output.clone().unwrap_or_else(|| common.out.clone()),
        format: cfg.format.unwrap_or(common.format.into()),
    };
    let grid = cfg.grid.map(|g| (g.nx, g.np));
    match cfg.scenario {
        Scenario::Fig1 | Scenario::Fig4 => {
            let name = if cfg.scenario == Scenario::Fig1 { "fig1" } else { "fig4" };
            recipes::run_overlap_figure(&recipes::recipe(name).unwrap(), common.hbar, &out_spec)
        }
        Scenario::Fig2 | Scenario::Fig5 => {
            let name = if cfg.scenario == Scenario::Fig2 { "fig2" } else { "fig5" };
            recipes::run_wigner_figure(
                &recipes::recipe(name).unwrap(),
                common.hbar,
                grid,
                &out_spec,
            )
        }
        Scenario::Fig3 | Scenario::Fig6 => {
            let name = if cfg.scenario == Scenario::Fig3 { "fig3" } else { "fig6" };
            recipes::run_density_figure(&recipes::recipe(name).unwrap(), common.hbar, &out_spec)
        }
        Scenario::Sweep => recipes::run_sweep(common.hbar, &out_spec),
        Scenario::Custom => unreachable!("handled by run_custom"),
    }
}

fn run_validate(
    recipe_name: Option<&str>,
    config_path: Option<&std::path::Path>,
    hbar: f64,
) -> CliResult<String> {
    match (recipe_name, config_path) {
        (Some(name), None) => {
            let recipe = recipes::recipe(name).ok_or_else(|| {
                CliError::config("cli", format!("unknown recipe `{name}` (expected fig1..fig6)"))
            })?;
            let state = recipe.state(hbar)?;
            let sel = recipe.selection()?;
            let mut out = format!("{name}: valid\n");
            out.push_str(&recipes::describe_state(&state, Some(&sel)));
            Ok(out)
        }
        (None, Some(path)) => {
            let cfg = load_config(path)?;
            let mut out = format!("{}: valid config\n", path.display());
            if let Some(state_params) = &cfg.state {
                let state = state_params
                    .build()
                    .map_err(|e| CliError::config("config", e))?;
                out.push_str(&recipes::describe_state(&state, None));
            }
            if let Some(sg_params) = &cfg.sg {
                let (state, sel) = sg_params
                    .post_selected_state()
                    .map_err(|e| CliError::config("config", e))?;
                out.push_str(&recipes::describe_state(&state, Some(&sel)));
            }
            Ok(out)
        }
        _ => Err(CliError::config(
            "cli",
            "validate needs a recipe name or --config, not both",
        )),
    }
}
