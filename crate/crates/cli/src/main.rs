use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use legreuel::legreuel::{ComputationReport, GenericityConfig};
use legreuel::parser::{parse_script, ParseError, Span};
use legreuel::script::{CommandOutcome, CommandResult, ScriptError, Session};
use legreuel::Error;
use serde::Serialize;

/// Exact local and global standard bases and Lê–Greuel type invariants.
#[derive(Parser, Debug)]
#[command(name = "legreuel", version, about)]
struct Cli {
    /// Seed for generic linear forms.
    #[arg(long, global = true, env = "LEGREUEL_SEED", default_value_t = 0)]
    seed: u64,
    /// Attempts allowed when a sampled form turns out not to be generic.
    #[arg(long, global = true, default_value_t = 8)]
    retries: usize,
    /// Print one JSON record instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Expression list for the last slice of `chi`; may use l1, l2, ...
    #[arg(long, global = true, value_name = "FILE")]
    reduced_slice: Option<PathBuf>,
    /// Per-step standard basis statistics on stderr.
    #[arg(long, global = true)]
    trace: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ScriptArg {
    /// Script file, or `-` for stdin.
    script: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every command of a script.
    Run(ScriptArg),
    Std(ScriptArg),
    Vdim(ScriptArg),
    Dim(ScriptArg),
    Mult(ScriptArg),
    Saturate(ScriptArg),
    Intersect(ScriptArg),
    EulerDiff(ScriptArg),
    Chi(ScriptArg),
    Icis(ScriptArg),
    CurveMu(ScriptArg),
    Ids(ScriptArg),
    GorensteinMu(ScriptArg),
    Pfaffian(ScriptArg),
}

impl Command {
    /// Subcommand name and the script command it selects.
    fn parts(&self) -> (&'static str, Option<&'static str>, &ScriptArg) {
        match self {
            Command::Run(a) => ("run", None, a),
            Command::Std(a) => ("std", Some("std"), a),
            Command::Vdim(a) => ("vdim", Some("vdim"), a),
            Command::Dim(a) => ("dim", Some("dim"), a),
            Command::Mult(a) => ("mult", Some("mult"), a),
            Command::Saturate(a) => ("saturate", Some("saturate"), a),
            Command::Intersect(a) => ("intersect", Some("intersect"), a),
            Command::EulerDiff(a) => ("euler-diff", Some("euler_diff"), a),
            Command::Chi(a) => ("chi", Some("chi"), a),
            Command::Icis(a) => ("icis", Some("icis"), a),
            Command::CurveMu(a) => ("curve-mu", Some("curve_mu"), a),
            Command::Ids(a) => ("ids", Some("ids"), a),
            Command::GorensteinMu(a) => ("gorenstein-mu", Some("gorenstein_mu"), a),
            Command::Pfaffian(a) => ("pfaffian", Some("pfaffian"), a),
        }
    }
}

#[derive(Serialize, Debug)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    Error { kind: String, message: String, span: Option<Span> },
}

#[derive(Serialize, Debug)]
#[serde(untagged)]
enum RecordResult {
    Single(CommandResult),
    Many(Vec<CommandOutcome>),
}

#[derive(Serialize, Debug)]
struct OutputRecord {
    command: String,
    inputs_echo: String,
    result: Option<RecordResult>,
    report: Option<ComputationReport>,
    status: Status,
}

/// Failure of an invocation with its exit code.
struct Failure {
    kind: String,
    message: String,
    span: Option<Span>,
    code: u8,
}

impl From<ScriptError> for Failure {
    fn from(e: ScriptError) -> Self {
        let code = exit_code(&e.error);
        let message = match &e.error {
            Error::Parse(p) => p.message.clone(),
            other => other.to_string(),
        };
        Failure { kind: e.kind().to_string(), message, span: e.span, code }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        ScriptError::from(e).into()
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::RingMismatch
        | Error::IndexOutOfRange { .. }
        | Error::EmptyInput(_)
        | Error::MinorSize { .. }
        | Error::ZeroPolynomial(_)
        | Error::InvalidRing(_)
        | Error::InvalidMatrix(_) => 2,
        Error::Internal(_) => 4,
        _ => 3,
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    let io = |e: std::io::Error| Failure {
        kind: "io".into(),
        message: format!("{}: {e}", path.display()),
        span: None,
        code: 2,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn execute(cli: &Cli, record: &mut OutputRecord) -> Result<(), Failure> {
    let (_, only, arg) = cli.command.parts();
    let src = read_source(&arg.script)?;
    let ast = parse_script(&src)?;
    record.inputs_echo = ast.to_string();
    let cfg = GenericityConfig { seed: cli.seed, retries: cli.retries, fixed_forms: None };
    let mut session = Session::new(cfg);
    if let Some(path) = &cli.reduced_slice {
        session.set_reduced_slice(read_source(path)?);
    }
    let mut outcomes = session.run(&ast, only)?;
    match only {
        None => record.result = Some(RecordResult::Many(outcomes)),
        Some(name) => {
            if outcomes.len() != 1 {
                return Err(Failure {
                    kind: "command_count".into(),
                    message: format!("the script must contain exactly one '{name}' command, found {}", outcomes.len()),
                    span: None,
                    code: 2,
                });
            }
            let o = outcomes.pop().expect("one outcome");
            record.result = Some(RecordResult::Single(o.result));
            record.report = o.report;
        }
    }
    Ok(())
}

fn print_text(record: &OutputRecord, trace: bool) {
    match &record.result {
        Some(RecordResult::Single(r)) => println!("{r}"),
        Some(RecordResult::Many(all)) => {
            for o in all {
                println!("{} = {}", o.echo.trim_end_matches(';'), o.result);
            }
        }
        None => {}
    }
    if trace {
        if let Some(rep) = &record.report {
            eprintln!("formula {} (seed {}, resamples {})", rep.formula, rep.seed, rep.resamples);
            for t in &rep.per_slice {
                eprintln!("  slice {} {:?}: {:+} * {}", t.index, t.kind, t.sign, t.vdim);
            }
            for (i, f) in rep.forms.iter().enumerate() {
                eprintln!("  l{} = {f}", i + 1);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    legreuel::stdbasis::set_trace(cli.trace);
    let (name, _, _) = cli.command.parts();
    let mut record = OutputRecord {
        command: name.to_string(),
        inputs_echo: String::new(),
        result: None,
        report: None,
        status: Status::Ok,
    };
    let outcome = execute(&cli, &mut record);
    let code = match outcome {
        Ok(()) => 0,
        Err(f) => {
            if !cli.json {
                match f.span {
                    Some(s) => eprintln!("error[{}]: {s}: {}", f.kind, f.message),
                    None => eprintln!("error[{}]: {}", f.kind, f.message),
                }
            }
            record.status = Status::Error { kind: f.kind, message: f.message, span: f.span };
            f.code
        }
    };
    if cli.json {
        println!("{}", serde_json::to_string(&record).expect("records serialize"));
    } else if code == 0 {
        print_text(&record, cli.trace);
    }
    ExitCode::from(code)
}
