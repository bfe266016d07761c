use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nestohedra::blowup::blowup_order;
use nestohedra::building::AtomicBuildingSet;
use nestohedra::error::{Error, ErrorKind};
use nestohedra::fan::{faithfully_realizes, fan_export};
use nestohedra::json::{atom_set_to_json, complex_from_json, to_pretty};
use nestohedra::oracle::Oracle;
use nestohedra::pipeline::{
    self, catalog_spec, diff_complexes, Emit, Level, Limits, PathChoice, PipelineSpec,
};

const EXIT_IO: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_CAP: u8 = 4;

#[derive(Parser)]
#[command(
    name = "nestohedra",
    version,
    about = "Iterated nested set complexes, blowups and fan checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a pipeline spec and print the report.
    Run {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        limits: LimitArgs,
        /// Comma-separated report sections: bases, fvector, fan.
        #[arg(long, value_delimiter = ',')]
        emit: Option<Vec<String>>,
        /// Override the spec's path: flat, oracle, blowup or all.
        #[arg(long)]
        path: Option<String>,
        /// Worker threads for per-basis work.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run a spec through the literal nested-set oracle and print brace forms.
    Oracle {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Check that a complex `{"atoms", "bases"}` is a simplicial fan.
    CheckFan {
        #[command(flatten)]
        io: IoArgs,
        /// Also export rays and cones.
        #[arg(long)]
        fan: bool,
    },
    /// Print the removal and application orders of a spec's first level.
    BlowupOrder {
        #[command(flatten)]
        io: IoArgs,
    },
    /// List catalog names, or print the spec for one of them.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Compare two complexes basis by basis.
    Diff {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Input JSON file; `-` or absent reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Golden report; exit 3 when the output differs.
    #[arg(long)]
    expect: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = 6)]
    max_atoms: usize,
    #[arg(long, default_value_t = 4)]
    max_levels: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_atoms: self.max_atoms,
            max_levels: self.max_levels,
        }
    }
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Report text plus the exit code it should produce.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(v: &Value) -> Self {
        Outcome {
            text: to_pretty(v),
            code: 0,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_json(path: &Option<PathBuf>) -> Result<Value, Failure> {
    Ok(serde_json::from_str(&read_input(path)?).map_err(Error::from)?)
}

fn finish(
    outcome: Outcome,
    output: &Option<PathBuf>,
    expect: &Option<PathBuf>,
) -> Result<u8, Failure> {
    match output {
        Some(p) => {
            fs::write(p, &outcome.text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?
        }
        None => io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?,
    }
    if let Some(p) = expect {
        let golden =
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
        if golden != outcome.text {
            eprintln!("error: output differs from {}", p.display());
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(outcome.code)
}

fn cmd_run(
    spec_v: &Value,
    limits: Limits,
    emit: &Option<Vec<String>>,
    path: &Option<String>,
) -> Result<Outcome, Failure> {
    let mut spec = PipelineSpec::from_json(spec_v)?;
    if let Some(e) = emit {
        let mut sections = e
            .iter()
            .map(|s| Emit::parse(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        sections.sort();
        sections.dedup();
        spec.options.emit = sections;
    }
    if let Some(p) = path {
        spec.options.path = PathChoice::parse(p)?;
    }
    let report = pipeline::run_with_limits(&spec, limits)?;
    let code = if report.paths_agree() {
        0
    } else {
        EXIT_MISMATCH
    };
    Ok(Outcome {
        text: to_pretty(&report.to_json()),
        code,
    })
}

fn cmd_oracle(spec_v: &Value, limits: Limits) -> Result<Outcome, Failure> {
    let spec = PipelineSpec::from_json(spec_v)?;
    let g = spec.host.ground().clone();
    if g.len() > limits.max_atoms || spec.levels.len() > limits.max_levels {
        return Err(
            Error::CapExceeded(format!("{} atoms, {} levels", g.len(), spec.levels.len())).into(),
        );
    }
    let mut oracle = Oracle::new(g.clone())?;
    let mut cur = oracle.host(&spec.host)?;
    let mut stages = Vec::new();
    for (i, l) in spec.levels.iter().enumerate() {
        let b = match l {
            Level::BuildingSet(h) => oracle.level_from_atoms(h),
            Level::Flat(d) => oracle.level_from_flat(&cur, d),
        }
        .and_then(|b| oracle.literal_nt(&cur, &b))
        .map_err(|e| Error::Level {
            index: i,
            source: Box::new(e),
        })?;
        cur = b;
        stages.push(json!({
            "level": i,
            "num_bases": cur.num_bases(),
            "bases": oracle.render_complex(&cur),
        }));
    }
    Ok(Outcome::ok(
        &json!({ "atoms": g.atoms(), "stages": stages }),
    ))
}

fn cmd_check_fan(v: &Value, fan: bool) -> Result<Outcome, Failure> {
    let c = complex_from_json(v)?;
    let report = faithfully_realizes(&c);
    let mut out = json!({ "faithful": report.verdict });
    out["witness"] = report.to_json()["witness"].clone();
    if report.verdict && fan {
        out["fan"] = fan_export(&c)?.to_json();
    }
    if !report.verdict {
        eprintln!("error: {}", report.describe());
    }
    Ok(Outcome {
        text: to_pretty(&out),
        code: if report.verdict { 0 } else { EXIT_VALIDATION },
    })
}

fn cmd_blowup_order(spec_v: &Value) -> Result<Outcome, Failure> {
    let spec = PipelineSpec::from_json(spec_v)?;
    let g = spec.host.ground();
    let h = match spec.levels.first() {
        Some(Level::BuildingSet(h)) => h.clone(),
        _ => return Err(Error::Input("the first level must be a `building_set`".into()).into()),
    };
    let b = AtomicBuildingSet::new(h, &spec.host)?;
    let removal = blowup_order(&b, &spec.host)?;
    let to_json = |s: &[_]| {
        s.iter()
            .map(|m| atom_set_to_json(g, *m))
            .collect::<Vec<_>>()
    };
    let application: Vec<_> = removal.iter().rev().copied().collect();
    Ok(Outcome::ok(
        &json!({ "removal": to_json(&removal), "application": to_json(&application) }),
    ))
}

fn cmd_catalog(name: &Option<String>) -> Result<Outcome, Failure> {
    match name {
        None => Ok(Outcome::ok(&json!({ "names": pipeline::CATALOG_NAMES }))),
        Some(n) => Ok(Outcome::ok(&catalog_spec(n)?)),
    }
}

fn cmd_diff(left: &Path, right: &Path) -> Result<Outcome, Failure> {
    let a = complex_from_json(&read_json(&Some(left.to_path_buf()))?)?;
    let b = complex_from_json(&read_json(&Some(right.to_path_buf()))?)?;
    let d = diff_complexes(&a, &b)?;
    let mut out = d.to_json(a.ground());
    out["equal"] = d.is_empty().into();
    Ok(Outcome {
        text: to_pretty(&out),
        code: if d.is_empty() { 0 } else { EXIT_MISMATCH },
    })
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Run {
            io,
            limits,
            emit,
            path,
            threads,
        } => {
            let v = read_json(&io.input)?;
            let outcome = with_threads(threads, || cmd_run(&v, limits.limits(), &emit, &path))??;
            finish(outcome, &io.output, &io.expect)
        }
        Command::Oracle { io, limits } => {
            let v = read_json(&io.input)?;
            // The oracle is sequential by construction.
            let outcome = with_threads(Some(1), || cmd_oracle(&v, limits.limits()))??;
            finish(outcome, &io.output, &io.expect)
        }
        Command::CheckFan { io, fan } => {
            let v = read_json(&io.input)?;
            finish(cmd_check_fan(&v, fan)?, &io.output, &io.expect)
        }
        Command::BlowupOrder { io } => {
            let v = read_json(&io.input)?;
            finish(cmd_blowup_order(&v)?, &io.output, &io.expect)
        }
        Command::Catalog {
            name,
            output,
            expect,
        } => finish(cmd_catalog(&name)?, &output, &expect),
        Command::Diff {
            left,
            right,
            output,
            expect,
        } => finish(cmd_diff(&left, &right)?, &output, &expect),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_IO } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if let Error::NotFaithful(report) = &e {
                eprintln!("{}", to_pretty(&report.to_json()).trim_end());
            }
            ExitCode::from(match e.kind() {
                ErrorKind::Validation => EXIT_VALIDATION,
                ErrorKind::Mismatch => EXIT_MISMATCH,
                ErrorKind::Cap => EXIT_CAP,
            })
        }
    }
}
