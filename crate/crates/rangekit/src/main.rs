//! Batch front door: simulate processes, compute ranges, and run
//! verification manifests. All logic lives in the library; this binary
//! only parses flags and moves bytes.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or input error.

use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rangekit::manifest::{run_manifest, ExperimentManifest, OutputFormat};
use rangekit::path::{read_path_csv, read_sequence_csv, write_path_csv, write_sequence_csv};
use rangekit::{
    connect_dots, running_extrema, simulate, Error, Interpolation, ProcessKind, ProcessSpec,
    SimOutput,
};

#[derive(Parser)]
#[command(
    name = "rangekit",
    version,
    about = "Simulate stochastic processes and verify the long-run behavior of their ranges"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a process and write it as CSV (paths: `t,value`; walks:
    /// `n,value`; vector processes: one file per coordinate).
    Simulate {
        /// Process string, e.g. bm | drift:1.0 | mbm:3 | bessel:2 |
        /// besselsde:3 | pnorm:4:inf | walk:0.8 | renewal:exp:1 |
        /// fn:drift_sine:2
        #[arg(long)]
        process: String,
        #[arg(long)]
        horizon: f64,
        /// Grid step; defaults to 1 for walks and renewal processes.
        #[arg(long)]
        step: Option<f64>,
        /// Seed (mandatory: reproducibility outranks convenience).
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a path CSV and write `t,value,sup,inf,range` aligned on its grid.
    Range {
        #[arg(long)]
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment manifest and write its report.
    Verify {
        manifest: PathBuf,
        /// Overrides the report destination named in the manifest.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the timestamp so reruns are byte-identical.
        #[arg(long)]
        no_timestamp: bool,
        /// Overrides the manifest's replica count.
        #[arg(long)]
        replicas: Option<u32>,
        /// Overrides the normalizer: t | sqrt | custom:<bank id>.
        #[arg(long)]
        psi: Option<String>,
        /// Overrides the tail fraction of the slope window.
        #[arg(long)]
        tail: Option<f64>,
        /// Overrides the report format: csv | json.
        #[arg(long)]
        format: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Simulate {
            process,
            horizon,
            step,
            seed,
            out,
        } => cmd_simulate(&process, horizon, step, seed, &out),
        Command::Range { input, out } => cmd_range(&input, out.as_deref()),
        Command::Verify {
            manifest,
            out,
            no_timestamp,
            replicas,
            psi,
            tail,
            format,
        } => {
            let overrides = Overrides {
                replicas,
                psi,
                tail,
                format,
            };
            cmd_verify(&manifest, out.as_deref(), no_timestamp, overrides)
        }
    }
}

#[derive(Default)]
struct Overrides {
    replicas: Option<u32>,
    psi: Option<String>,
    tail: Option<f64>,
    format: Option<String>,
}

fn cmd_simulate(
    process: &str,
    horizon: f64,
    step: Option<f64>,
    seed: u64,
    out: &Path,
) -> Result<ExitCode, Error> {
    let kind: ProcessKind = process.parse()?;
    let step = match step {
        Some(s) => s,
        None => match kind {
            ProcessKind::NnWalk { .. } | ProcessKind::Renewal { .. } => 1.0,
            _ => {
                return Err(Error::InvalidSpec(
                    "--step is required for grid-discretized processes".into(),
                ))
            }
        },
    };
    let spec = ProcessSpec::new(kind, horizon, step, seed)?;
    let sim = simulate(&spec)?;
    match &sim.output {
        SimOutput::Path(path) => {
            let mut file = fs::File::create(out)?;
            write_path_csv(path, &mut file)?;
            eprintln!("wrote {} ({} knots)", out.display(), path.len());
        }
        SimOutput::Walk { sequence, .. } => {
            let mut file = fs::File::create(out)?;
            write_sequence_csv(sequence, &mut file)?;
            eprintln!("wrote {} ({} terms)", out.display(), sequence.len());
        }
        SimOutput::Multi(coords) => {
            for (i, coord) in coords.iter().enumerate() {
                let path = coordinate_file(out, i);
                let mut file = fs::File::create(&path)?;
                write_path_csv(coord, &mut file)?;
                eprintln!("wrote {} ({} knots)", path.display(), coord.len());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn coordinate_file(out: &Path, index: usize) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("path");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}_{index}.{ext}"))
}

fn cmd_range(input: &Path, out: Option<&Path>) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(input)?;
    let first_line = text.lines().next().unwrap_or_default().trim();
    let path = match first_line {
        "n,value" => {
            let seq = read_sequence_csv(BufReader::new(text.as_bytes()))?;
            connect_dots(&seq)
        }
        _ => read_path_csv(
            BufReader::new(text.as_bytes()),
            Interpolation::PiecewiseLinear,
        )?,
    };
    let triple = running_extrema(&path);
    let mut buf = Vec::new();
    rangekit::extrema::write_extrema_csv(&path, &triple, &mut buf)?;
    match out {
        Some(dest) => fs::write(dest, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    manifest_path: &Path,
    out: Option<&Path>,
    no_timestamp: bool,
    overrides: Overrides,
) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(manifest_path)?;
    // Parsing validates process, checks, and seed before anything runs.
    let mut manifest = ExperimentManifest::from_json(&text)?;
    if let Some(replicas) = overrides.replicas {
        manifest.replicas = replicas;
    }
    if let Some(psi) = overrides.psi {
        manifest.psi = psi;
    }
    if let Some(tail) = overrides.tail {
        manifest.tail_fraction = Some(tail);
    }
    if let Some(format) = overrides.format {
        manifest.output.format = match format.as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "--format must be csv or json, got `{other}`"
                )))
            }
        };
    }
    manifest.validate()?;
    let report = run_manifest(&manifest, !no_timestamp)?;

    let dest = out
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(&manifest.output.path));
    let json = report.to_json_pretty()?;
    match manifest.output.format {
        OutputFormat::Json => fs::write(&dest, &json)?,
        OutputFormat::Csv => {
            fs::write(&dest, report.to_csv())?;
            // The JSON report is always written alongside.
            fs::write(dest.with_extension("json"), &json)?;
        }
    }

    for outcome in &report.checks {
        println!(
            "check {}: {}",
            outcome.check.name(),
            if outcome.pass { "PASS" } else { "FAIL" }
        );
    }
    println!("{}: {}", report.name, if report.pass { "PASS" } else { "FAIL" });
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
