use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use carm_core::experiment::{self, ExperimentPlan};
use carm_core::render::{front_csv, rules_listing, run_report};
use carm_core::{presets, Engine, Objective, RunConfig};
use carm_service::{ServiceConfig, DEFAULT_MAX_ACTIVE_RUNS, DEFAULT_PORT};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "carm", version, about = "Multi-objective classification rule mining with a cultural algorithm")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the algorithm once and write its results.
    Run(RunArgs),
    /// Run an experiment plan and write the aggregated report.
    Experiment(ExperimentArgs),
    /// Describe a dataset: attributes, codes and class balance.
    Inspect(InspectArgs),
    /// Serve the HTTP API and the UI bundle.
    Serve(ServeArgs),
}

#[derive(Args)]
struct Common {
    /// `KEY=VALUE` configuration override; repeatable, later ones win.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory.
    #[arg(long, env = "CARM_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration as JSON.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Start from a bundled dataset's defaults (iris, ljb, wbc).
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated objectives; prefix with `-` to minimize.
    #[arg(long, allow_hyphen_values = true)]
    objectives: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Bundled plan name or path to a plan JSON file.
    #[arg(long, default_value = "table5")]
    plan: String,
    /// Override the number of repetitions per cell.
    #[arg(long)]
    repetitions: Option<usize>,
    /// Override the first repetition's seed.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct InspectArgs {
    /// Preset name or CSV path.
    dataset: String,
    /// Schema for a CSV: preset name or JSON file of attribute metadata.
    #[arg(long)]
    schema: Option<String>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = DEFAULT_PORT)]
    port: u16,
    /// Directory holding the built UI bundle.
    #[arg(long, default_value = "ui/dist")]
    ui: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_ACTIVE_RUNS)]
    max_runs: usize,
    #[arg(long, env = "CARM_OUT", default_value = "out")]
    out: PathBuf,
}

enum Failure {
    Config(String),
    Runtime(String),
}

type Outcome = Result<(), Failure>;

fn config_err(e: impl ToString) -> Failure {
    Failure::Config(e.to_string())
}

fn runtime_err(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

fn write(dir: &Path, name: &str, contents: &str) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| runtime_err(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| runtime_err(format!("{}: {e}", path.display())))
}

fn build_config(args: &RunArgs) -> Result<RunConfig, Failure> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            RunConfig::from_json(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))?
        }
        (None, Some(name)) => RunConfig::preset(name).map_err(config_err)?,
        (None, None) => return Err(config_err("give --config or --preset")),
    };
    if let Some(list) = &args.objectives {
        config.metrics = Objective::parse_list(list).map_err(config_err)?;
    }
    if let Some(seed) = args.seed {
        config.rng_seed = seed;
    }
    config.apply_overrides(&args.common.set).map_err(config_err)?;
    config.check().map_err(config_err)?;
    Ok(config)
}

fn cmd_run(args: RunArgs) -> Outcome {
    let config = build_config(&args)?;
    let dataset = config.load_dataset().map_err(config_err)?;
    let errors = config.validate_for(&dataset);
    if !errors.is_empty() {
        return Err(config_err(carm_core::Error::InvalidConfig(errors)));
    }

    let mut engine = Engine::new(config, dataset).map_err(config_err)?;
    while !engine.is_done() {
        engine.step().map_err(runtime_err)?;
    }
    let result = engine.result().map_err(runtime_err)?;
    let dataset = engine.dataset();

    let out = &args.common.out;
    let json = serde_json::to_string_pretty(&result.without_timings()).map_err(runtime_err)?;
    write(out, "run.json", &(json + "\n"))?;
    write(out, "rules.txt", &rules_listing(&result.front, &result.objectives, dataset))?;
    write(out, "front.csv", &front_csv(&result.front, &result.objectives, dataset))?;
    let report = run_report(&result);
    write(out, "report.txt", &report)?;
    print!("{report}");
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Outcome {
    let mut plan = ExperimentPlan::load(&args.plan).map_err(config_err)?;
    if let Some(r) = args.repetitions {
        plan.repetitions = r;
    }
    if let Some(seed) = args.seed {
        plan.base_seed = seed;
    }
    plan.overrides.extend(args.common.set.iter().cloned());
    let errors = plan.validate();
    if !errors.is_empty() {
        return Err(config_err(carm_core::Error::InvalidConfig(errors)));
    }
    plan.runs().map_err(config_err)?;

    let out = &args.common.out;
    match experiment::run_plan(&plan) {
        Ok(report) => {
            let json = report.to_json().map_err(runtime_err)?;
            write(out, "experiment.json", &(json + "\n"))?;
            let table = experiment::render_table(&report);
            write(out, "table.txt", &table)?;
            write(out, "fronts.csv", &experiment::fronts_csv(&report))?;
            print!("{table}");
            Ok(())
        }
        Err(failure) => {
            let json = serde_json::to_string_pretty(&failure.partial).map_err(runtime_err)?;
            write(out, "partial.json", &(json + "\n"))?;
            Err(runtime_err(failure))
        }
    }
}

fn cmd_inspect(args: InspectArgs) -> Outcome {
    let config = RunConfig {
        dataset: args.dataset,
        dataset_schema: args.schema,
        ..RunConfig::default()
    };
    let dataset = config.load_dataset().map_err(config_err)?;
    println!("{}: {} instances, {} attributes", dataset.name, dataset.len(), dataset.attribute_count());
    for meta in dataset.attributes.iter().chain([&dataset.class_attribute]) {
        let codes: Vec<String> = meta.values.iter().map(|&c| format!("{c}={}", meta.describe(c))).collect();
        println!("  {:<24} {}", meta.name, codes.join("  "));
    }
    println!("class counts");
    for (code, n) in dataset.class_counts() {
        println!("  {:<24} {n}", dataset.class_attribute.describe(code));
    }
    if presets::NAMES.contains(&dataset.name.as_str()) {
        if let Some(size) = presets::population_size(&dataset.name) {
            println!("default population size {size}");
        }
    }
    Ok(())
}

fn cmd_serve(args: ServeArgs) -> Outcome {
    let config = ServiceConfig {
        out_dir: args.out,
        max_active_runs: args.max_runs,
        static_dir: args.ui.is_dir().then_some(args.ui),
    };
    let runtime = tokio::runtime::Runtime::new().map_err(runtime_err)?;
    eprintln!("listening on http://0.0.0.0:{}", args.port);
    runtime
        .block_on(carm_service::serve(config, args.port))
        .map_err(runtime_err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Inspect(a) => cmd_inspect(a),
        Command::Serve(a) => cmd_serve(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
