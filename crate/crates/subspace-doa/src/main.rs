//! `subspace-doa` — CLI harness for the experiment pipeline.
//!
//! ```text
//! subspace-doa run --preset fig5 --out results/
//! subspace-doa run --config my.json --seed 7 --trials 50
//! ```
//!
//! Exit codes: 0 on success, 1 on validation/configuration/I-O errors,
//! 2 when every trial of the run diverged.

use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use subspace_doa::{
    emit_outputs, merge_reports, preset, run_experiment, Error, ExperimentConfig, Result,
};

#[derive(Parser)]
#[command(
    name = "subspace-doa",
    version,
    about = "Seeded subspace-learning DOA experiments with CSV/JSON artifacts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run experiments from a preset or a JSON config and emit artifacts.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Preset name: fig2-lr-sweep, fig4-5-mca-snapshots,
    /// fig6-7-pca-snapshots, fig8-9-noise-compare, or a single-run alias
    /// fig2/fig4/fig5/fig6/fig7/fig8/fig9.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,

    /// JSON config file: one run object or an array of runs, with the
    /// exact field names of ExperimentConfig.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory (overrides the configs' output_dir).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Master seed (overrides the configs' noise.seed).
    #[arg(long)]
    seed: Option<u64>,

    /// Trials per run (overrides the configs' num_trials).
    #[arg(long)]
    trials: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version surface as non-error displays.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let Command::Run(args) = cli.command;
    match run(&args) {
        Ok(all_diverged) => {
            if all_diverged {
                eprintln!("error: every trial diverged");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

/// Runs every configured experiment, emits the merged artifacts, and
/// reports whether all trials diverged.
fn run(args: &RunArgs) -> Result<bool> {
    let mut configs = load_configs(args)?;
    if let Some(seed) = args.seed {
        for config in &mut configs {
            config.noise.seed = seed;
        }
    }
    if let Some(trials) = args.trials {
        for config in &mut configs {
            config.num_trials = trials;
        }
    }
    if let Some(out) = &args.out {
        for config in &mut configs {
            config.output_dir = out.display().to_string();
        }
    }

    let mut reports = Vec::with_capacity(configs.len());
    for config in &configs {
        reports.push(run_experiment(config)?);
    }
    let mut merged = merge_reports(reports);

    let out_dir = PathBuf::from(&configs[0].output_dir);
    let paths = emit_outputs(&mut merged, &out_dir)?;

    // Summary lines are best-effort: a closed pipe (e.g. piping into
    // `head`) must not turn a finished run into a failure.
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    for agg in &merged.aggregates {
        let _ = writeln!(
            stdout,
            "{} [{}]: {}/{} trials converged, median rmse {:.3} deg, mean rmse {:.3} deg",
            agg.run_label,
            agg.method.slug(),
            agg.converged_count,
            agg.num_trials,
            agg.median_rmse_deg,
            agg.mean_rmse_deg,
        );
    }
    for path in &paths {
        let _ = writeln!(stdout, "wrote {}", path.display());
    }

    Ok(merged.trials.iter().all(|t| t.diverged))
}

fn load_configs(args: &RunArgs) -> Result<Vec<ExperimentConfig>> {
    let configs = match (&args.preset, &args.config) {
        (Some(name), None) => preset(name)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            if value.is_array() {
                serde_json::from_value(value)?
            } else {
                vec![serde_json::from_value(value)?]
            }
        }
        (None, None) => {
            return Err(Error::Domain(
                "pass --preset NAME or --config PATH".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::Domain(
                "--preset and --config are mutually exclusive".into(),
            ))
        }
    };
    if configs.is_empty() {
        return Err(Error::Domain("config file contains no runs".into()));
    }
    Ok(configs)
}
