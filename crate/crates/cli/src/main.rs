use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dgkernel::{emit_catalog, run_spec, validate_spec, Mode, Options, RunOutput, Status};
use dgkernel_core::catalog::{DEFAULT_WINDOW, ENTRIES};
use dgkernel_core::enumerate::DEFAULT_BUDGET;
use dgkernel_core::linalg::FieldSpec;

#[derive(Parser)]
#[command(name = "dgkernel", version, about = "Exact computations with dg-algebras and dg-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every `run` command in a `.dga` file.
    Run {
        file: PathBuf,
        /// Emit every report as one line of JSON.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check the axioms of every algebra and module declared in a file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(clap::Args)]
struct Limits {
    /// Enumeration budget (number of closures).
    #[arg(long, env = "DGKERNEL_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Degree window for Laurent algebras, as `lo..hi`.
    #[arg(long, value_parser = parse_window)]
    window: Option<(i64, i64)>,
}

impl Limits {
    fn options(&self) -> Options {
        Options { budget: self.budget, window: self.window.unwrap_or(DEFAULT_WINDOW) }
    }
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print an entry as `.dga` declarations.
    Emit {
        name: String,
        /// `Q` or `Fp(p)`.
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldSpec,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if hi - lo < 2 {
        return Err("the window needs hi - lo >= 2".into());
    }
    Ok((lo, hi))
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("Fp(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or("expected Q or Fp(p)")?
        .parse::<u32>()
        .map_err(|e| e.to_string())?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn finish(file: &std::path::Path, out: RunOutput) -> ExitCode {
    print!("{}", out.stdout);
    for e in &out.errors {
        eprintln!("{}:{e}", file.display());
    }
    ExitCode::from(out.status.code() as u8)
}

fn read(file: &std::path::Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(Status::Error.code() as u8)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::Error.code() as u8) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Run { file, json, limits } => match read(&file) {
            Ok(text) => finish(&file, run_spec(&text, limits.options(), json)),
            Err(code) => code,
        },
        Command::Validate { file, json, limits } => match read(&file) {
            Ok(text) => {
                let mode = if json { Mode::Json } else { Mode::Text };
                finish(&file, validate_spec(&text, limits.options(), mode))
            }
            Err(code) => code,
        },
        Command::Catalog { action: CatalogAction::List } => {
            for e in ENTRIES {
                println!("{:<9} {} ({})", e.name, e.description, e.note);
            }
            ExitCode::SUCCESS
        }
        Command::Catalog { action: CatalogAction::Emit { name, field } } => match emit_catalog(&name, field) {
            Some(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("no catalog entry `{name}`");
                ExitCode::from(Status::Error.code() as u8)
            }
        },
    }
}
