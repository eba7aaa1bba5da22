//! The `.dga` language: parsing, printing, evaluation and report output.

pub mod ast;
pub mod emit;
pub mod error;
pub mod eval;
pub mod format;
pub mod lexer;
pub mod ops;
pub mod parser;
pub mod printer;

use dgkernel_core::report::Report;

pub use emit::emit_catalog;
pub use error::{ErrorKind, SpecError, SpecResult};
pub use eval::{Options, Session, Value};
pub use format::{format_report, Mode};
pub use ops::{apply, Outcome};
pub use parser::parse_spec;
pub use printer::print_spec;

use ast::{Arg, Call, Item, LinComb, Name, SpecFile, Term};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Error = 1,
    Alarm = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub reports: Vec<Report>,
    /// What goes to stdout.
    pub stdout: String,
    pub errors: Vec<SpecError>,
    pub status: Status,
}

impl RunOutput {
    fn new() -> Self {
        RunOutput { reports: Vec::new(), stdout: String::new(), errors: Vec::new(), status: Status::Ok }
    }

    fn raise(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    fn error(&mut self, e: SpecError) {
        self.raise(if e.kind == ErrorKind::Alarm { Status::Alarm } else { Status::Error });
        self.errors.push(e);
    }

    fn emit(&mut self, r: Report, mode: Mode) {
        if r.has_alarm() {
            self.raise(Status::Alarm);
        }
        self.stdout.push_str(&format_report(&r, mode));
        if mode == Mode::Json {
            self.stdout.push('\n');
        }
        self.reports.push(r);
    }
}

/// Evaluates a file: declarations and `let` bindings in order, then each `run`.
/// Declaration errors stop evaluation; a failing `run` is reported and the next one is tried.
pub fn run_spec(text: &str, options: Options, force_json: bool) -> RunOutput {
    let mut out = RunOutput::new();
    let spec = match parse_spec(text) {
        Ok(s) => s,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let mut session = Session::new(options);
    for item in &spec.items {
        match item {
            Item::Run(cmd) => {
                let mode = if cmd.json || force_json { Mode::Json } else { Mode::Text };
                match apply(&session, &cmd.call) {
                    Ok(o) => out.emit(o.report, mode),
                    Err(e) => out.error(e),
                }
            }
            Item::Let(l) => {
                let bound = apply(&session, &l.value).and_then(|o| {
                    if o.report.has_alarm() {
                        out.raise(Status::Alarm);
                        out.reports.push(o.report.clone());
                    }
                    let v = o.value.ok_or_else(|| {
                        SpecError::new(
                            ErrorKind::Arity,
                            l.value.op.pos,
                            format!("`{}` does not construct a value", l.value.op.text),
                        )
                    })?;
                    session.bind(&l.name, v)
                });
                if let Err(e) = bound {
                    out.error(e);
                    return out;
                }
            }
            decl => {
                if let Err(e) = session.declare(decl) {
                    out.error(e);
                    return out;
                }
            }
        }
    }
    out
}

fn name_arg(n: &Name) -> Arg {
    Arg::Comb(LinComb { terms: vec![Term { coef: "1".into(), basis: n.clone() }], pos: n.pos })
}

/// Validates every algebra, Laurent algebra and module declared in the file.
/// Invalid objects make the status [`Status::Error`].
pub fn validate_spec(text: &str, options: Options, mode: Mode) -> RunOutput {
    let mut out = RunOutput::new();
    let spec: SpecFile = match parse_spec(text) {
        Ok(s) => s,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let mut session = Session::new(options);
    for item in spec.declarations() {
        let (name, op) = match item {
            Item::Algebra(d) => (Some(&d.name), "validate_dga"),
            Item::Laurent(d) => (Some(&d.name), "validate_dga"),
            Item::Module(d) => (Some(&d.name), "validate_module"),
            _ => (None, ""),
        };
        let declared = match item {
            Item::Let(l) => apply(&session, &l.value).and_then(|o| {
                let v = o.value.ok_or_else(|| {
                    SpecError::new(ErrorKind::Arity, l.value.op.pos, format!("`{}` does not construct a value", l.value.op.text))
                })?;
                session.bind(&l.name, v)
            }),
            _ => session.declare(item),
        };
        if let Err(e) = declared {
            out.error(e);
            return out;
        }
        if let Some(n) = name {
            let call = Call { op: Name { text: op.into(), pos: n.pos }, args: vec![name_arg(n)] };
            match apply(&session, &call) {
                Ok(o) => {
                    if o.report.verdict.as_deref() != Some("valid") {
                        out.raise(Status::Error);
                    }
                    out.emit(o.report, mode);
                }
                Err(e) => out.error(e),
            }
        }
    }
    out
}
