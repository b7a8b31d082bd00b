//! `ndn-hns`: name tooling and campus simulation runs.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or parse failure,
//! 3 verification failure, 4 simulation error.

use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clap::error::ErrorKind;

use hns_core::codec::to_json;
use hns_core::flat::{render_digest, DigestStatus};
use hns_core::name::HC_FIELDS;
use hns_core::sim::{run, ReportFormat, ScenarioConfig, SimError, SimOutput};
use hns_core::{
    compute_fc, parse_with, serialize, verify_fc, AttributePair, AttributesComponent,
    DigestEncoding, FlatError, Freshness, HierarchicalComponent, Name, ParseOptions, Registry,
    RootPrefix, TaskSpec, TaskType,
};

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const MISMATCH: u8 = 3;
const SIM_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "ndn-hns", version, about = "Hybrid NDN names for IoT campus networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Application category codes used as root prefixes.
    Registry {
        #[command(subcommand)]
        command: RegistryCommand,
    },
    /// Build, parse, verify and hash names.
    Name {
        #[command(subcommand)]
        command: NameCommand,
    },
    /// Run campus simulations.
    Sim {
        #[command(subcommand)]
        command: SimCommand,
    },
}

#[derive(Subcommand)]
enum RegistryCommand {
    /// Print every registered category as CODE<TAB>Title<TAB>Description.
    List {
        /// TSV registry to use instead of the built-in one.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NameCommand {
    /// Assemble a name from its fields and print the canonical text.
    Build(Box<BuildArgs>),
    /// Decode a name and print its fields as JSON.
    Parse {
        name: String,
        /// Accept truncated hex digests in the flat component.
        #[arg(long)]
        lenient: bool,
    },
    /// Recompute the flat component and compare it with the stored one.
    Verify {
        name: String,
        /// Compare truncated hex digests by prefix.
        #[arg(long)]
        lenient: bool,
    },
    /// Print the flat-component digests of a name's hierarchical fields.
    Hash {
        name: String,
        #[arg(long, value_enum, default_value_t = Encoding::Hex)]
        encoding: Encoding,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Hex,
    Base64,
}

impl From<Encoding> for DigestEncoding {
    fn from(e: Encoding) -> Self {
        match e {
            Encoding::Hex => DigestEncoding::Hex,
            Encoding::Base64 => DigestEncoding::Base64,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct BuildArgs {
    /// Application category code, e.g. SBC.
    #[arg(long)]
    code: Option<String>,
    #[arg(long)]
    campus: Option<String>,
    #[arg(long)]
    sub_campus: Option<String>,
    #[arg(long)]
    location: Option<String>,
    #[arg(long)]
    sub_location: Option<String>,
    #[arg(long)]
    originator: Option<String>,
    #[arg(long)]
    super_type: Option<String>,
    #[arg(long)]
    sub_type: Option<String>,
    /// Attribute pair KEY=VALUE; repeatable, order is kept.
    #[arg(long = "attr", value_name = "KEY=VALUE")]
    attrs: Vec<String>,
    /// latest, oldest, or a generation time in ticks.
    #[arg(long)]
    freshness: Option<String>,
    #[arg(long)]
    popularity: Option<u64>,
    /// Sensing task, e.g. Temperature.
    #[arg(long, conflicts_with = "action")]
    sense: Option<String>,
    /// Actuation command, e.g. Turn-Light:ON.
    #[arg(long)]
    action: Option<String>,
    /// Append the SHA-256 flat component.
    #[arg(long)]
    with_fc: bool,
    #[arg(long, value_enum, default_value_t = Encoding::Hex)]
    encoding: Encoding,
    /// TSV registry to check the code against instead of the built-in one.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SimCommand {
    /// Run a scenario file and write its trace and metrics.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario seed.
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// Run every seed in the half-open range A..B in parallel.
    #[arg(long, value_name = "A..B", value_parser = parse_seed_range)]
    seeds: Option<Range<u64>>,
    /// Trace output file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Metrics output file; the report goes to stdout when omitted.
    #[arg(long)]
    metrics: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_seed_range(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    if a >= b {
        return Err("empty seed range".into());
    }
    Ok(a..b)
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn load_registry(path: Option<&Path>) -> Result<Registry, Failure> {
    match path {
        None => Ok(Registry::default_registry()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| fail(INVALID, format!("{}: {e}", p.display())))?;
            Registry::from_tsv(&text).map_err(|e| fail(INVALID, format!("{}: {e}", p.display())))
        }
    }
}

fn parse_name(text: &str, lenient: bool) -> Result<Name, Failure> {
    let opts = if lenient {
        ParseOptions::lenient()
    } else {
        ParseOptions::default()
    };
    parse_with(text, opts).map_err(|e| fail(INVALID, e.to_string()))
}

fn cmd_registry_list(registry: Option<&Path>) -> CmdResult {
    print!("{}", load_registry(registry)?.to_tsv());
    Ok(())
}

fn cmd_name_build(a: &BuildArgs) -> CmdResult {
    let registry = load_registry(a.registry.as_deref())?;
    let code = a
        .code
        .as_deref()
        .ok_or_else(|| fail(INVALID, "missing required field app_code (--code)"))?;
    registry.lookup(code).map_err(|e| fail(INVALID, e.to_string()))?;
    let root = RootPrefix::new(code).map_err(|e| fail(INVALID, e.to_string()))?;

    let fields = [
        (&a.campus, "--campus"),
        (&a.sub_campus, "--sub-campus"),
        (&a.location, "--location"),
        (&a.sub_location, "--sub-location"),
        (&a.originator, "--originator"),
        (&a.super_type, "--super-type"),
        (&a.sub_type, "--sub-type"),
    ];
    let mut values = Vec::with_capacity(fields.len());
    for ((value, flag), field) in fields.iter().zip(HC_FIELDS) {
        match value {
            Some(v) => values.push(v.as_str()),
            None => return Err(fail(INVALID, format!("missing required field {field} ({flag})"))),
        }
    }
    let values: [&str; 7] = values.try_into().expect("seven fields");
    let hc = HierarchicalComponent::from_strs(values).map_err(|e| fail(INVALID, e.to_string()))?;

    let mut ac = AttributesComponent::default();
    for raw in &a.attrs {
        let (k, v) = raw
            .split_once('=')
            .ok_or_else(|| fail(INVALID, format!("--attr {raw:?}: expected KEY=VALUE")))?;
        ac.attributes
            .push(AttributePair::new(k, v).map_err(|e| fail(INVALID, format!("--attr: {e}")))?);
    }
    ac.freshness = match a.freshness.as_deref() {
        None => None,
        Some("latest") => Some(Freshness::Latest),
        Some("oldest") => Some(Freshness::Oldest),
        Some(ts) => Some(Freshness::GeneratedAt(ts.parse().map_err(|_| {
            fail(INVALID, format!("--freshness {ts:?}: expected latest, oldest or a tick count"))
        })?)),
    };
    ac.popularity = a.popularity;
    ac.task = match (&a.sense, &a.action) {
        (Some(s), _) => Some(TaskSpec::new(TaskType::Sense, s).map_err(|e| fail(INVALID, format!("--sense: {e}")))?),
        (_, Some(s)) => Some(TaskSpec::new(TaskType::Action, s).map_err(|e| fail(INVALID, format!("--action: {e}")))?),
        _ => None,
    };
    let ac = (!ac.is_empty()).then_some(ac);
    let fc = a.with_fc.then(|| compute_fc(&hc, a.encoding.into()));
    let name = Name::new(root, hc, ac, fc).map_err(|e| fail(INVALID, e.to_string()))?;
    println!("{}", serialize(&name));
    Ok(())
}

fn cmd_name_parse(text: &str, lenient: bool) -> CmdResult {
    let name = parse_name(text, lenient)?;
    let doc = serde_json::to_string_pretty(&to_json(&name)).expect("json value serializes");
    println!("{doc}");
    Ok(())
}

fn cmd_name_verify(text: &str, lenient: bool) -> CmdResult {
    let name = parse_name(text, lenient)?;
    let report = verify_fc(&name, lenient).map_err(|e| match e {
        FlatError::MissingFlatComponent => fail(INVALID, "no flat component"),
        other => fail(INVALID, other.to_string()),
    })?;
    for c in &report.checks {
        println!("{}\t{}", c.field, c.status.as_str());
    }
    let ok = report.overall() || (lenient && report.prefix_consistent());
    if ok {
        Ok(())
    } else {
        let bad: Vec<_> = report
            .checks
            .iter()
            .filter(|c| matches!(c.status, DigestStatus::Mismatch | DigestStatus::PrefixMismatch))
            .map(|c| c.field)
            .collect();
        Err(fail(MISMATCH, format!("digest mismatch: {}", bad.join(", "))))
    }
}

fn cmd_name_hash(text: &str, encoding: Encoding) -> CmdResult {
    let name = parse_name(text, true)?;
    let enc: DigestEncoding = encoding.into();
    let fc = compute_fc(name.hc(), enc);
    for (field, d) in ["originator", "super_type", "sub_type"].iter().zip(fc.digests()) {
        println!("{field}\t{}", render_digest(d, enc));
    }
    Ok(())
}

/// `metrics.json` becomes `metrics.seed3.json` for seed sweeps.
fn seeded_path(path: &Path, seed: u64) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    path.with_file_name(name)
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| fail(SIM_FAILED, format!("{}: {e}", path.display())))
}

fn cmd_sim_run(a: &RunArgs) -> CmdResult {
    let text = fs::read_to_string(&a.scenario)
        .map_err(|e| fail(INVALID, format!("{}: {e}", a.scenario.display())))?;
    let config = ScenarioConfig::from_json(&text)
        .map_err(|e| fail(INVALID, format!("{}: {e}", a.scenario.display())))?;
    let scenario = config
        .validate()
        .map_err(|e| fail(INVALID, format!("{}: {e}", a.scenario.display())))?;
    let format = match a.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
    };

    let seeds: Vec<u64> = match (&a.seeds, a.seed) {
        (Some(r), _) => r.clone().collect(),
        (None, Some(s)) => vec![s],
        (None, None) => vec![scenario.seed],
    };
    let sweep = a.seeds.is_some();
    let results: Vec<(u64, Result<SimOutput, SimError>)> = std::thread::scope(|s| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&seed| {
                let mut sc = scenario.clone();
                sc.seed = seed;
                s.spawn(move || (seed, run(&sc)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("run thread")).collect()
    });

    for (seed, result) in results {
        let out = result.map_err(|e| fail(SIM_FAILED, format!("seed {seed}: {e}")))?;
        let path_for = |p: &Path| if sweep { seeded_path(p, seed) } else { p.to_path_buf() };
        if let Some(p) = &a.trace {
            write_file(&path_for(p), &out.trace_text())?;
        }
        let report = out.metrics.report(format);
        let summary = format!(
            "seed={seed} satisfaction_rate={:.6} aggregation_ratio={:.6}",
            out.metrics.satisfaction_rate, out.metrics.aggregation_ratio
        );
        match &a.metrics {
            Some(p) => {
                write_file(&path_for(p), &report)?;
                println!("{summary}");
            }
            None => {
                print!("{report}");
                eprintln!("{summary}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Registry {
            command: RegistryCommand::List { registry },
        } => cmd_registry_list(registry.as_deref()),
        Command::Name { command } => match command {
            NameCommand::Build(a) => cmd_name_build(a),
            NameCommand::Parse { name, lenient } => cmd_name_parse(name, *lenient),
            NameCommand::Verify { name, lenient } => cmd_name_verify(name, *lenient),
            NameCommand::Hash { name, encoding } => cmd_name_hash(name, *encoding),
        },
        Command::Sim {
            command: SimCommand::Run(a),
        } => cmd_sim_run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
