//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{endomorphism_algebra, PartitionedAlgebra};
use crate::analysis::{
    cartan_recurrence_audit, growth_warnings, resolution_growth, theorem_main_verdict, DEFAULT_STEPS, DEFAULT_TILT_T,
};
use crate::data;
use crate::error::{Error, Result};
use crate::homotopy::{or_tilting, verify_tilting, CartanTable};
use crate::module::{hom_as_e_module, projective_modules, SearchPolicy, DEFAULT_CAP};
use crate::report::{EndoDoc, ModuleDoc, ReportDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tiltbench", version, about = "Tilting complexes, Cartan growth and syzygy resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Per-step dimension cap (overrides TILTBENCH_CAP).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct TakeArg {
    /// Comma-separated simple labels (or indices) forming I_0.
    #[arg(long, value_delimiter = ',', required = true)]
    pub take: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate an input.
    Validate { input: String },
    /// Dimensions, Cartan matrix, Loewy layers and symmetric status.
    Info { input: String },
    /// The endomorphism algebra of Q_0.
    Endo {
        input: String,
        #[command(flatten)]
        take: TakeArg,
    },
    /// Minimal resolution of Hom(Q_0, P_j) over the endomorphism algebra.
    Resolve {
        input: String,
        #[command(flatten)]
        take: TakeArg,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
    },
    /// Cartan matrices of the iterated tilts, optionally verifying T^(t).
    Tilt {
        input: String,
        #[command(flatten)]
        take: TakeArg,
        #[arg(long = "t", default_value_t = DEFAULT_TILT_T)]
        t: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Full pipeline: growth, verdict, Cartan table, tilting checks, audit.
    Analyze {
        input: String,
        #[command(flatten)]
        take: TakeArg,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_TILT_T)]
        tilt_t: usize,
        /// Also write the JSON report to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Canned analysis of a builtin dataset.
    Demo {
        #[arg(value_parser = data::BUILTIN_NAMES)]
        name: String,
    },
}

/// Everything a command needs once arguments are parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub input: String,
    pub take: Vec<String>,
    pub target: Option<String>,
    pub steps: usize,
    pub tilt_t: usize,
    pub verify: bool,
    pub cap: usize,
}

impl RunConfig {
    pub fn new(command: &str, input: &str) -> Self {
        RunConfig {
            command: command.into(),
            input: input.into(),
            take: Vec::new(),
            target: None,
            steps: DEFAULT_STEPS,
            tilt_t: DEFAULT_TILT_T,
            verify: false,
            cap: DEFAULT_CAP,
        }
    }
}

/// `--cap`, then `TILTBENCH_CAP`, then the default.
pub fn resolve_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("TILTBENCH_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("TILTBENCH_CAP must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::UnsupportedGroup(_) | Error::ExtendField { .. } => EXIT_UNSUPPORTED,
        _ => EXIT_VALIDATION,
    }
}

/// Input text of a builtin name or a file path.
pub fn read_input(input: &str) -> Result<String> {
    match data::builtin_text(input) {
        Some(t) => Ok(t.to_string()),
        None => Ok(std::fs::read_to_string(Path::new(input))?),
    }
}

fn resolve_label(a: &PartitionedAlgebra, label: &str) -> Result<usize> {
    if let Some(i) = a.simple_index(label) {
        return Ok(i);
    }
    match label.parse::<usize>() {
        Ok(i) if i < a.num_simples() => Ok(i),
        _ => Err(Error::InvalidArgument(format!(
            "unknown simple {label:?}; simples are {}",
            a.simple_labels().join(", ")
        ))),
    }
}

fn resolve_take(a: &PartitionedAlgebra, labels: &[String]) -> Result<Vec<usize>> {
    let mut out = labels.iter().map(|l| resolve_label(a, l.trim())).collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn target_of(a: &PartitionedAlgebra, cfg: &RunConfig) -> Result<usize> {
    let label = cfg.target.as_deref().ok_or_else(|| Error::InvalidArgument("--target is required".into()))?;
    resolve_label(a, label)
}

/// Runs one command and returns its report. `validate` returns the info
/// report of a valid input.
pub fn execute(cfg: &RunConfig) -> Result<ReportDoc> {
    let text = read_input(&cfg.input)?;
    let a = Arc::new(data::load_text(&text)?);
    execute_loaded(cfg, &text, &a)
}

/// As [`execute`] for an algebra already built from `text`.
pub fn execute_loaded(cfg: &RunConfig, text: &str, a: &Arc<PartitionedAlgebra>) -> Result<ReportDoc> {
    let a = a.clone();
    let mut doc = ReportDoc::new(&cfg.command, &cfg.input, text, &a);
    match cfg.command.as_str() {
        "validate" | "info" => {}
        "endo" => {
            let take = resolve_take(&a, &cfg.take)?;
            doc.endomorphism = Some(EndoDoc::of(&endomorphism_algebra(&a, &take)?));
        }
        "resolve" => {
            let take = resolve_take(&a, &cfg.take)?;
            let j = target_of(&a, cfg)?;
            let transport = endomorphism_algebra(&a, &take)?;
            let growth = resolution_growth(&transport, j, cfg.steps, cfg.cap)?;
            let m = hom_as_e_module(&transport, &projective_modules(&a)[j].rep)?;
            doc.endomorphism = Some(EndoDoc::of(&transport));
            doc.target = Some(a.simple_labels()[j].clone());
            doc.module = Some(ModuleDoc::of("M", &m));
            doc.warnings.extend(growth_warnings(&growth).1);
            doc.growth = Some(growth);
        }
        "tilt" => {
            let take = resolve_take(&a, &cfg.take)?;
            let transport = endomorphism_algebra(&a, &take)?;
            let table = CartanTable::build(&transport, cfg.tilt_t, cfg.cap)?;
            doc.endomorphism = Some(EndoDoc::of(&transport));
            doc.cartan = Some((&table).into());
            if cfg.verify {
                let ts = or_tilting(&transport, cfg.tilt_t, cfg.cap)?;
                doc.tilting.push(verify_tilting(&transport, &ts, cfg.tilt_t, None)?);
            }
        }
        "analyze" => analyze(&a, cfg, &mut doc)?,
        other => return Err(Error::InvalidArgument(format!("unknown command {other:?}"))),
    }
    Ok(doc)
}

fn analyze(a: &Arc<PartitionedAlgebra>, cfg: &RunConfig, doc: &mut ReportDoc) -> Result<()> {
    let take = resolve_take(a, &cfg.take)?;
    let j = target_of(a, cfg)?;
    doc.target = Some(a.simple_labels()[j].clone());
    let verdict = theorem_main_verdict(a, &take, j, cfg.steps, cfg.cap, &SearchPolicy::default())?;
    doc.set_verdict(&verdict);
    if verdict.growth.is_none() {
        return Ok(());
    }
    let transport = endomorphism_algebra(a, &take)?;
    let m = hom_as_e_module(&transport, &projective_modules(a)[j].rep)?;
    doc.endomorphism = Some(EndoDoc::of(&transport));
    doc.module = Some(ModuleDoc::of("M", &m));
    if cfg.tilt_t > 0 {
        let table = CartanTable::build(&transport, cfg.tilt_t, cfg.cap)?;
        for t in 1..=cfg.tilt_t {
            let ts = or_tilting(&transport, t, cfg.cap)?;
            doc.tilting.push(verify_tilting(&transport, &ts, t, None)?);
        }
        doc.audit = Some(cartan_recurrence_audit(&transport, &table, cfg.tilt_t, cfg.cap)?);
        doc.cartan = Some((&table).into());
    }
    Ok(())
}

fn demo_configs(name: &str) -> Vec<RunConfig> {
    let analyze = |take: &[&str], target: &str, steps: usize, tilt_t: usize| RunConfig {
        take: take.iter().map(|s| s.to_string()).collect(),
        target: Some(target.into()),
        steps,
        tilt_t,
        ..RunConfig::new("analyze", name)
    };
    match name {
        "ex1" => vec![analyze(&["k"], "eps", 6, 3)],
        "ex2" => vec![analyze(&["k"], "eps", 4, 2)],
        "a4" => vec![analyze(&["k"], "chi1", 4, 0), analyze(&["k", "chi1"], "chi2", 4, 0)],
        _ => vec![RunConfig::new("info", name)],
    }
}

fn write_report(doc: &ReportDoc, format: Format, output: Option<&Path>) -> Result<()> {
    let body = match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
    };
    match output {
        Some(p) => std::fs::write(p, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    match run_cli(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run_cli(cli: &Cli) -> Result<()> {
    let cap = resolve_cap(cli.cap)?;
    let mut json_path = None;
    let configs = match &cli.command {
        Command::Validate { input } => {
            let text = read_input(input)?;
            let a = data::load_text(&text)?;
            println!("valid: {} (dim {}, {} simples, {})", input, a.dim(), a.num_simples(), a.field().spec());
            return Ok(());
        }
        Command::Info { input } => vec![RunConfig { cap, ..RunConfig::new("info", input) }],
        Command::Endo { input, take } => vec![RunConfig { take: take.take.clone(), cap, ..RunConfig::new("endo", input) }],
        Command::Resolve { input, take, target, steps } => vec![RunConfig {
            take: take.take.clone(),
            target: Some(target.clone()),
            steps: *steps,
            cap,
            ..RunConfig::new("resolve", input)
        }],
        Command::Tilt { input, take, t, verify } => vec![RunConfig {
            take: take.take.clone(),
            tilt_t: *t,
            verify: *verify,
            cap,
            ..RunConfig::new("tilt", input)
        }],
        Command::Analyze { input, take, target, steps, tilt_t, json } => {
            json_path = json.clone();
            vec![RunConfig {
                take: take.take.clone(),
                target: Some(target.clone()),
                steps: *steps,
                tilt_t: *tilt_t,
                cap,
                ..RunConfig::new("analyze", input)
            }]
        }
        Command::Demo { name } => demo_configs(name).into_iter().map(|c| RunConfig { cap, ..c }).collect(),
    };
    for cfg in &configs {
        let doc = execute(cfg)?;
        if let Some(p) = &json_path {
            std::fs::write(p, doc.to_json())?;
        }
        write_report(&doc, cli.format, cli.output.as_deref())?;
    }
    Ok(())
}
