//! Subcommand implementations for the `multiswap` binary.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use multiswap::analytics::{precision, resource_report, scatter_data, ScatterData};
use multiswap::circuit::count_resources;
use multiswap::estimation::{estimates_from_counts, replay, run_experiment, Engine, Experiment, ReplayReport};
use multiswap::io::report::{
    estimates_csv, parse_reference, precision_csv, reference_estimates, replay_csv, resources_csv, scatter_csv,
};
use multiswap::io::{export_table, parse_counts, parse_states, to_qasm, write_counts, CountsFile, QasmOptions};
use multiswap::multiswap::build_un;
use multiswap::permutation::{derive_permutation_table, Pair};
use multiswap::san::build_san_un;
use multiswap::sim::{Simulator, DEFAULT_QUBIT_CAP};
use multiswap::{fixtures, OverlapEstimate, Scheme, StateEnsemble, SwapTestVariant};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: multiswap::Error,
    },
    #[error(transparent)]
    Core(#[from] multiswap::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(e) | CliError::File { source: e, .. } if e.is_config() => EXIT_CONFIG,
            _ => EXIT_DATA,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::File { path: path.into(), source: e.into() })
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::File { path: path.into(), source: e.into() })
}

pub fn load_states(path: &Path, normalize: bool) -> CliResult<StateEnsemble> {
    parse_states(&read(path)?, normalize).map_err(|source| CliError::File { path: path.into(), source })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub shots: u64,
    pub seed: u64,
    pub final_variant: SwapTestVariant,
    pub engine: Engine,
    pub input: PathBuf,
    pub out_dir: PathBuf,
    pub normalize: bool,
    pub qubit_cap: usize,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            scheme: Scheme::New,
            shots: 8192,
            seed: 0,
            final_variant: SwapTestVariant::Standard,
            engine: Engine::Auto,
            input: input.into(),
            out_dir: out_dir.into(),
            normalize: false,
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }

    fn validate(&self) -> CliResult<()> {
        if self.shots == 0 {
            return Err(CliError::Config("--shots must be at least 1".into()));
        }
        Ok(())
    }
}

pub struct BuildSummary {
    pub scheme: Scheme,
    pub inputs: usize,
    pub registers: usize,
    pub width: usize,
    pub ancillas: usize,
    /// Register-level CSWAPs in the permutation network.
    pub network_cswaps: usize,
    pub final_tests: usize,
    pub final_variant: SwapTestVariant,
    pub profile: multiswap::ResourceProfile,
}

impl fmt::Display for BuildSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} inputs, {} ancillas, {} CSWAPs (+{} final tests)",
            self.inputs, self.ancillas, self.network_cswaps, self.final_tests
        )?;
        if self.registers > self.inputs {
            let pad = self.registers - self.inputs;
            writeln!(f, "padded {} inputs to {} with {pad} |0> states", self.inputs, self.registers)?;
        }
        writeln!(f, "scheme: {}, register width: {}, final test: {}", self.scheme, self.width, self.final_variant)?;
        let p = &self.profile;
        write!(
            f,
            "qubits: {}, ancillas: {}, qubit-level CSWAPs incl. final tests: {}, total gates: {}",
            p.qubit_count, p.ancilla_count, p.cswap_count, p.gate_count_total
        )
    }
}

/// Builds the scheme circuit for a state file; writes OpenQASM when `qasm` is set.
pub fn cmd_build(
    states: &Path,
    scheme: Scheme,
    final_variant: SwapTestVariant,
    normalize: bool,
    qasm: Option<(&Path, QasmOptions)>,
) -> CliResult<BuildSummary> {
    let ensemble = load_states(states, normalize)?;
    let exp = Experiment::new(&ensemble, scheme, final_variant)?;
    let network = count_resources(&exp.circuit.truncated(exp.layout.network_len));
    if let Some((path, options)) = qasm {
        write(path, &to_qasm(&exp.circuit, options))?;
    }
    Ok(BuildSummary {
        scheme,
        inputs: ensemble.len(),
        registers: exp.layout.n,
        width: ensemble.width(),
        ancillas: exp.layout.ancilla_count(),
        network_cswaps: network.cswap_count / ensemble.width(),
        final_tests: exp.layout.slot_count(),
        final_variant,
        profile: count_resources(&exp.circuit),
    })
}

pub struct EstimateOutput {
    pub engine: Engine,
    pub estimates: Vec<OverlapEstimate>,
    pub scatter: ScatterData,
    pub counts_path: PathBuf,
    pub estimates_path: PathBuf,
    pub scatter_path: PathBuf,
}

/// Runs the experiment and writes `counts.txt`, `estimates.csv` and `scatter.csv`.
pub fn cmd_estimate(config: &RunConfig) -> CliResult<EstimateOutput> {
    config.validate()?;
    let ensemble = load_states(&config.input, config.normalize)?;
    let exp = Experiment::new(&ensemble, config.scheme, config.final_variant)?;
    let sim = Simulator::with_qubit_cap(config.qubit_cap);
    let engine = exp.resolve_engine(config.engine, &sim);
    let counts = run_experiment(&exp, config.shots, config.seed, engine, &sim)?;
    let estimates = estimates_from_counts(&counts, &exp)?;
    let scatter = scatter_data(&estimates);

    fs::create_dir_all(&config.out_dir)
        .map_err(|e| CliError::File { path: config.out_dir.clone(), source: e.into() })?;
    let counts_path = config.out_dir.join("counts.txt");
    let estimates_path = config.out_dir.join("estimates.csv");
    let scatter_path = config.out_dir.join("scatter.csv");
    let file = CountsFile {
        scheme: Some(config.scheme),
        final_variant: Some(config.final_variant),
        counts,
    };
    write(&counts_path, &write_counts(&file))?;
    write(&estimates_path, &estimates_csv(&estimates)?)?;
    write(&scatter_path, &scatter_csv(&scatter)?)?;
    Ok(EstimateOutput {
        engine,
        estimates,
        scatter,
        counts_path,
        estimates_path,
        scatter_path,
    })
}

pub struct ReplayOutput {
    pub report: ReplayReport,
    pub reference: Option<BTreeMap<Pair, f64>>,
    pub csv: String,
}

/// Re-derives estimates from a counts file. The scheme and final test come
/// from the file headers unless given explicitly.
pub fn cmd_replay(
    counts: &Path,
    states: &Path,
    scheme: Option<Scheme>,
    reference: Option<&Path>,
    tolerance: f64,
    normalize: bool,
) -> CliResult<ReplayOutput> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(CliError::Config("--tolerance must be non-negative".into()));
    }
    let file = parse_counts(&read(counts)?).map_err(|source| CliError::File { path: counts.into(), source })?;
    let scheme = scheme
        .or(file.scheme)
        .ok_or_else(|| CliError::Config("counts file has no `scheme:` header; pass --scheme".into()))?;
    let ensemble = load_states(states, normalize)?;
    let exp = Experiment::new(&ensemble, scheme, file.final_variant.unwrap_or(SwapTestVariant::Standard))?;
    let reference = match reference {
        Some(path) => {
            let rows = parse_reference(&read(path)?).map_err(|source| CliError::File { path: path.into(), source })?;
            Some(reference_estimates(&rows))
        }
        None => None,
    };
    let report = replay(&file.counts, &exp, reference.as_ref(), tolerance)
        .map_err(|source| CliError::File { path: counts.into(), source })?;
    let csv = replay_csv(&report, reference.as_ref())?;
    Ok(ReplayOutput { report, reference, csv })
}

pub struct AnalyzeOutput {
    pub resources_path: PathBuf,
    pub precision_path: PathBuf,
    pub rows: usize,
}

/// Writes `resources.csv` (n = 4..2^max_k) and `precision.csv` (n = 2..2^max_k).
pub fn cmd_analyze(max_k: usize, shots: u64, out_dir: &Path) -> CliResult<AnalyzeOutput> {
    if !(2..=20).contains(&max_k) {
        return Err(CliError::Config(format!("--max-k must be in 2..=20, got {max_k}")));
    }
    let table = resource_report(max_k)?;
    let models = (2..=1usize << max_k)
        .map(|n| precision(n, shots))
        .collect::<multiswap::Result<Vec<_>>>()?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::File { path: out_dir.into(), source: e.into() })?;
    let resources_path = out_dir.join("resources.csv");
    let precision_path = out_dir.join("precision.csv");
    write(&resources_path, &resources_csv(&table)?)?;
    write(&precision_path, &precision_csv(&models)?)?;
    Ok(AnalyzeOutput {
        resources_path,
        precision_path,
        rows: table.rows.len(),
    })
}

/// Permutation table of the `n`-register network as pretty JSON, with
/// mismatches against the transcribed table where one exists.
pub fn cmd_export_table(scheme: Scheme, n: usize) -> CliResult<String> {
    let (circuit, layout) = match scheme {
        Scheme::New => build_un(n, 1, None)?,
        Scheme::San => build_san_un(n, 1, None)?,
    };
    let table = derive_permutation_table(&circuit, &layout)?;
    let doc = export_table(&table, fixtures::reference_table(scheme, n));
    Ok(serde_json::to_string_pretty(&doc).expect("json values serialize"))
}
