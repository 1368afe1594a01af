use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use multiswap::estimation::Engine;
use multiswap::io::QasmOptions;
use multiswap::sim::DEFAULT_QUBIT_CAP;
use multiswap::{Scheme, SwapTestVariant};
use multiswap_cli::{cmd_analyze, cmd_build, cmd_estimate, cmd_export_table, cmd_replay, CliResult, RunConfig};

#[derive(Parser)]
#[command(name = "multiswap", version, about = "Multi-state swap-test circuits and all-pairs overlap estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the circuit for a state file and print its resources.
    Build {
        states: PathBuf,
        #[arg(long, default_value = "new")]
        scheme: Scheme,
        #[arg(long = "final", default_value = "standard")]
        final_variant: SwapTestVariant,
        /// Write the circuit as OpenQASM 2.0.
        #[arg(long)]
        qasm: Option<PathBuf>,
        /// Expand CSWAP into CNOT/Toffoli in the QASM output.
        #[arg(long)]
        decompose_cswap: bool,
        #[arg(long)]
        normalize: bool,
    },
    /// Sample the circuit and estimate every pairwise overlap.
    Estimate {
        states: PathBuf,
        #[arg(long, default_value = "new")]
        scheme: Scheme,
        #[arg(long, default_value_t = 8192)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        engine: Engine,
        #[arg(long = "final", default_value = "standard")]
        final_variant: SwapTestVariant,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
        qubit_cap: usize,
    },
    /// Re-derive estimates from a counts file.
    Replay {
        counts: PathBuf,
        states: PathBuf,
        /// Overrides the counts file's `scheme:` header.
        #[arg(long)]
        scheme: Option<Scheme>,
        /// CSV with pair_i,pair_j,exact,estimate to compare against.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        normalize: bool,
    },
    /// Write resources.csv and precision.csv.
    Analyze {
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        #[arg(long, default_value_t = 8192)]
        shots: u64,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Print the ancilla-outcome permutation table as JSON.
    ExportTable {
        #[arg(long, default_value = "new")]
        scheme: Scheme,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Build { states, scheme, final_variant, qasm, decompose_cswap, normalize } => {
            let options = QasmOptions { native_cswap: !decompose_cswap };
            let summary = cmd_build(&states, scheme, final_variant, normalize, qasm.as_deref().map(|p| (p, options)))?;
            println!("{summary}");
            if let Some(path) = qasm {
                println!("wrote {}", path.display());
            }
        }
        Command::Estimate { states, scheme, shots, seed, engine, final_variant, out_dir, normalize, qubit_cap } => {
            let config = RunConfig {
                scheme,
                shots,
                seed,
                final_variant,
                engine,
                input: states,
                out_dir,
                normalize,
                qubit_cap,
            };
            let out = cmd_estimate(&config)?;
            println!("engine: {}, pairs: {}", out.engine, out.estimates.len());
            if let (Some(max), Some(rmse)) = (out.scatter.max_abs_deviation, out.scatter.rmse) {
                println!("max |estimate - exact| = {max:.4}, rmse = {rmse:.4}");
            }
            if !out.scatter.unsampled.is_empty() {
                println!("unsampled pairs: {}", out.scatter.unsampled.len());
            }
            for p in [&out.counts_path, &out.estimates_path, &out.scatter_path] {
                println!("wrote {}", p.display());
            }
        }
        Command::Replay { counts, states, scheme, reference, tolerance, out, normalize } => {
            let result = cmd_replay(&counts, &states, scheme, reference.as_deref(), tolerance, normalize)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &result.csv)
                        .map_err(|e| multiswap_cli::CliError::File { path: path.clone(), source: e.into() })?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", result.csv),
            }
            eprintln!(
                "total shots: {}, pairs: {}, flags: {}",
                result.report.total_shots,
                result.report.estimates.len(),
                result.report.flags.len()
            );
        }
        Command::Analyze { max_k, shots, out_dir } => {
            let out = cmd_analyze(max_k, shots, &out_dir)?;
            println!("{} resource rows", out.rows);
            println!("wrote {}", out.resources_path.display());
            println!("wrote {}", out.precision_path.display());
        }
        Command::ExportTable { scheme, n } => println!("{}", cmd_export_table(scheme, n)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
