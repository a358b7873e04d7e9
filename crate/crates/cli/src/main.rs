//! `parasource` command line: run experiment configs, list the shipped
//! presets, and cut 2D slices out of 3D runs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use parasource::experiment::{
    list_presets, preset_config, preset_names, preset_text, run_experiment, write_artifacts,
    ExperimentConfig, FieldOutput, Overrides, SliceFix, PRESET_VARIANTS,
};

#[derive(Parser)]
#[command(
    name = "parasource",
    version,
    about = "Source identification for linear parabolic equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config (a TOML file or a preset name) and write its outputs.
    Run {
        config: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// List the example presets, or print one preset config.
    Presets {
        /// Preset to print, e.g. `example2-table`.
        #[arg(long)]
        show: Option<String>,
    },
    /// Run a 3D config and write 2D slices of every field.
    Slices {
        config: String,
        /// Slice planes such as `z=0`; defaults to the config's list, then x=0, y=0, z=0.
        #[arg(long = "at")]
        at: Vec<String>,
        #[command(flatten)]
        flags: RunFlags,
    },
}

#[derive(Args)]
struct RunFlags {
    /// Base seed; noise level i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Samples per axis, replacing the config's grid resolution.
    #[arg(long = "resolution-override")]
    resolution: Option<usize>,
    /// Fixed regularization parameter, bypassing the choice rule.
    #[arg(long)]
    mu: Option<f64>,
}

impl RunFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            out: self.out.clone(),
            resolution: self.resolution,
            mu: self.mu,
        }
    }
}

fn load(config: &str, flags: &RunFlags) -> Result<ExperimentConfig> {
    let path = Path::new(config);
    let mut loaded = if path.exists() {
        ExperimentConfig::from_file(path)?
    } else if preset_names().contains(&config) {
        preset_config(config)?
    } else {
        anyhow::bail!("`{config}` is neither a config file nor a preset name");
    };
    loaded.apply(&flags.overrides());
    Ok(loaded)
}

fn output_dir(config: &ExperimentConfig) -> PathBuf {
    config.output_dir().unwrap_or_else(|| {
        let name = config.name.clone().unwrap_or_else(|| "run".into());
        PathBuf::from("out").join(name)
    })
}

fn run(config: &str, flags: &RunFlags) -> Result<()> {
    let config = load(config, flags)?;
    let artifacts = run_experiment(&config)?;
    let slices = config
        .output
        .slices
        .iter()
        .map(|s| SliceFix::parse(s))
        .collect::<parasource::Result<Vec<_>>>()?;
    let dir = output_dir(&config);
    let written = write_artifacts(&artifacts, &dir, config.output.fields, &slices)
        .with_context(|| format!("writing outputs to {}", dir.display()))?;
    print!("{}", artifacts.table());
    eprintln!("wrote {} files to {}", written.len(), dir.display());
    Ok(())
}

fn slices(config: &str, at: &[String], flags: &RunFlags) -> Result<()> {
    let config = load(config, flags)?;
    let planes: Vec<String> = if !at.is_empty() {
        at.to_vec()
    } else if !config.output.slices.is_empty() {
        config.output.slices.clone()
    } else {
        vec!["x=0".into(), "y=0".into(), "z=0".into()]
    };
    let fixes = planes
        .iter()
        .map(|s| SliceFix::parse(s))
        .collect::<parasource::Result<Vec<_>>>()?;
    let artifacts = run_experiment(&config)?;
    let dir = output_dir(&config);
    let written = write_artifacts(&artifacts, &dir, FieldOutput::Slices, &fixes)
        .with_context(|| format!("writing slices to {}", dir.display()))?;
    eprintln!("wrote {} files to {}", written.len(), dir.display());
    Ok(())
}

fn presets(show: Option<&str>) -> Result<()> {
    if let Some(name) = show {
        print!("{}", preset_text(name)?);
        return Ok(());
    }
    for preset in list_presets() {
        println!("{}", preset.summary());
        let variants: Vec<String> = PRESET_VARIANTS
            .iter()
            .map(|v| format!("example{}-{v}", preset.example))
            .collect();
        println!("    configs: {}", variants.join(", "));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, flags } => run(config, flags),
        Command::Presets { show } => presets(show.as_deref()),
        Command::Slices { config, at, flags } => slices(config, at, flags),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
