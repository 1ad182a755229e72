//! The `stopping` command line.
//!
//! Exit codes: 0 when the predicate holds or the command succeeded, 1 when a
//! predicate fails (diagnostic on standard output), 2 for usage and input
//! errors (message on standard error).

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bijection::{hitting_time, process_from_time, time_from_process};
use crate::document::{self, InstanceDocument, Process};
use crate::enumerate::{
    check_bijection_with, enumerate_stopping_processes_capped, enumerate_stopping_times_capped,
    Comparison, RoundTripFailure, DEFAULT_STATE_CAP,
};
use crate::error::{Error, Result};
use crate::filtration::{Filtration, TimeGrid};
use crate::generate::{
    gen_adapted_real_process, gen_borel_set, gen_filtration, gen_stopping_time, ValueRange,
};
use crate::process::{is_stopping_process, is_stopping_time, BinaryProcess};
use crate::space::SampleSpace;
use crate::verdict::Verdict;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "stopping",
    version,
    about = "Stopping times and stopping processes on finite filtered spaces"
)]
struct Cli {
    /// Compare round trips up to null events instead of exactly.
    #[arg(long = "as", global = true)]
    almost_sure: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input document (default: standard input).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EnumKind {
    Times,
    Processes,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    /// Filtration plus a stopping time.
    Time,
    /// Filtration plus a stopping process.
    Process,
    /// Filtration, adapted real process, and a target set.
    Hit,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the levels form an increasing refinement chain.
    VerifyFiltration(Io),
    /// Check that the time section is a stopping time.
    VerifyTime(Io),
    /// Check that the process section is a stopping process.
    VerifyProcess(Io),
    /// Replace the stopping time with its indicator process 1{tau > t}.
    ToProcess(Io),
    /// Replace the stopping process with the first time it reads 0.
    ToTime(Io),
    /// Compute the first time the process enters the borel_set section.
    Hit(Io),
    /// List every stopping time or stopping process of the filtration.
    Enumerate {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "times")]
        kind: EnumKind,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: u64,
    },
    /// Enumerate both sides and round-trip every object.
    CheckBijection {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: u64,
    },
    /// Generate a random instance document.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_atoms: u64,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_times: u64,
        #[arg(long, value_enum, default_value = "time")]
        kind: GenKind,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Draw each atom's path as a traffic light: G before tau, R from tau on.
    Render(Io),
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read(&mut self, path: &Option<PathBuf>) -> Result<InstanceDocument> {
        let text = match path {
            Some(p) => fs::read_to_string(p)
                .map_err(|e| Error::parse(p.display().to_string(), e.to_string()))?,
            None => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Error::parse("<stdin>", e.to_string()))?;
                s
            }
        };
        document::parse(&text)
    }

    fn write(&mut self, path: &Option<PathBuf>, text: &str) -> Result<()> {
        match path {
            Some(p) => {
                fs::write(p, text).map_err(|e| Error::parse(p.display().to_string(), e.to_string()))
            }
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::parse("<stdout>", e.to_string())),
        }
    }

    fn diagnose(&mut self, v: &Verdict) -> Result<u8> {
        let line = format!("{v}\n");
        self.stdout
            .write_all(line.as_bytes())
            .map_err(|e| Error::parse("<stdout>", e.to_string()))?;
        Ok(if v.holds() { EXIT_OK } else { EXIT_FALSE })
    }
}

fn need<'d, T>(x: Option<&'d T>, section: &str) -> Result<&'d T> {
    x.ok_or_else(|| Error::domain(format!("document has no {section} section")))
}

fn binary(doc: &InstanceDocument) -> Result<&BinaryProcess> {
    match need(doc.process(), "process")? {
        Process::Binary(b) => Ok(b),
        Process::Real(_) => Err(Error::domain("process section must be 0/1-valued")),
    }
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let mut io = Streams { stdin, stdout };
    match dispatch(cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: Cli, io: &mut Streams<'_>) -> Result<u8> {
    let comparison = if cli.almost_sure {
        Comparison::AlmostSure
    } else {
        Comparison::Exact
    };
    match cli.command {
        Command::VerifyFiltration(p) => {
            let doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            io.diagnose(&f.validate())
        }
        Command::VerifyTime(p) => {
            let doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let tau = need(doc.time(), "time")?;
            match f.validate() {
                Verdict::Holds => io.diagnose(&is_stopping_time(tau, f)?),
                bad => io.diagnose(&bad),
            }
        }
        Command::VerifyProcess(p) => {
            let doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let x = binary(&doc)?;
            match f.validate() {
                Verdict::Holds => io.diagnose(&is_stopping_process(x, f)?),
                bad => io.diagnose(&bad),
            }
        }
        Command::ToProcess(p) => {
            let mut doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let tau = need(doc.time(), "time")?;
            let verdict = f.validate();
            let verdict = if verdict.holds() {
                is_stopping_time(tau, f)?
            } else {
                verdict
            };
            if !verdict.holds() {
                return io.diagnose(&verdict);
            }
            let x = process_from_time(tau, f)?;
            doc.set_time(None)?;
            doc.set_process(Some(Process::Binary(x)))?;
            io.write(&p.out, &document::serialize(&doc))?;
            Ok(EXIT_OK)
        }
        Command::ToTime(p) => {
            let mut doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let x = binary(&doc)?;
            let verdict = f.validate();
            let verdict = if verdict.holds() {
                is_stopping_process(x, f)?
            } else {
                verdict
            };
            if !verdict.holds() {
                return io.diagnose(&verdict);
            }
            let tau = time_from_process(x, f)?;
            doc.set_process(None)?;
            doc.set_time(Some(tau))?;
            io.write(&p.out, &document::serialize(&doc))?;
            Ok(EXIT_OK)
        }
        Command::Hit(p) => {
            let mut doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let x = need(doc.process(), "process")?.to_real();
            let target = need(doc.borel_set(), "borel_set")?;
            let hit = hitting_time(&x, target, f)?;
            doc.set_time(Some(hit.time))?;
            io.write(&p.out, &document::serialize(&doc))?;
            if hit.verdict.holds() {
                Ok(EXIT_OK)
            } else {
                io.diagnose(&hit.verdict)
            }
        }
        Command::Enumerate { io: p, kind, cap } => {
            let doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let (s, g) = (f.space(), f.grid());
            let (key, items): (&str, Vec<Value>) = match kind {
                EnumKind::Times => (
                    "times",
                    enumerate_stopping_times_capped(f, cap)?
                        .iter()
                        .map(|t| document::time_value(s, g, t))
                        .collect(),
                ),
                EnumKind::Processes => (
                    "processes",
                    enumerate_stopping_processes_capped(f, cap)?
                        .into_iter()
                        .map(|x| document::process_value(s, g, &Process::Binary(x)))
                        .collect(),
                ),
            };
            let out = json!({ "count": items.len(), key: items });
            io.write(&p.out, &document::to_canonical_string(&out))?;
            Ok(EXIT_OK)
        }
        Command::CheckBijection { io: p, cap } => {
            let doc = io.read(&p.input)?;
            let f = need(doc.filtration(), "filtration")?;
            let report = check_bijection_with(f, cap, comparison)?;
            let failures: Vec<Value> = report
                .roundtrip_failures
                .iter()
                .map(|fail| failure_value(f, fail))
                .collect();
            let out = json!({
                "bijection": report.is_bijection(),
                "comparison": if cli.almost_sure { "almost_sure" } else { "exact" },
                "roundtrip_failures": failures,
                "stopping_process_count": report.stopping_process_count,
                "stopping_time_count": report.stopping_time_count,
            });
            io.write(&p.out, &document::to_canonical_string(&out))?;
            Ok(if report.is_bijection() {
                EXIT_OK
            } else {
                EXIT_FALSE
            })
        }
        Command::Gen {
            seed,
            max_atoms,
            max_times,
            kind,
            out,
        } => {
            let f = gen_filtration(seed, max_atoms as usize, max_times as usize);
            let mut doc = InstanceDocument::from_filtration(f.clone());
            match kind {
                GenKind::Time => doc.set_time(Some(gen_stopping_time(seed, &f)))?,
                GenKind::Process => {
                    let tau = gen_stopping_time(seed, &f);
                    doc.set_process(Some(Process::Binary(process_from_time(&tau, &f)?)))?
                }
                GenKind::Hit => {
                    let range = ValueRange::default();
                    doc.set_process(Some(Process::Real(gen_adapted_real_process(
                        seed, &f, &range,
                    ))))?;
                    doc.set_borel_set(Some(gen_borel_set(seed, &range)));
                }
            }
            io.write(&out, &document::serialize(&doc))?;
            Ok(EXIT_OK)
        }
        Command::Render(p) => {
            let doc = io.read(&p.input)?;
            let space = need(doc.space(), "space")?;
            let grid = need(doc.grid(), "grid")?;
            let lights = match (doc.time(), doc.process()) {
                (Some(tau), _) => crate::bijection::indicator_after(tau, grid.len()),
                (None, Some(Process::Binary(x))) => x.clone(),
                _ => {
                    return Err(Error::domain(
                        "render needs a time or a 0/1 process section",
                    ))
                }
            };
            io.write(&p.out, &render(space, grid, &lights))?;
            Ok(EXIT_OK)
        }
    }
}

fn failure_value(f: &Filtration, fail: &RoundTripFailure) -> Value {
    let (s, g) = (f.space(), f.grid());
    match fail {
        RoundTripFailure::Time { original, result } => json!({
            "kind": "time",
            "original": document::time_value(s, g, original),
            "result": match result {
                Ok(t) => document::time_value(s, g, t),
                Err(e) => json!(e.to_string()),
            },
        }),
        RoundTripFailure::Process { original, result } => json!({
            "kind": "process",
            "original": document::process_value(s, g, &Process::Binary(original.clone())),
            "result": match result {
                Ok(x) => document::process_value(s, g, &Process::Binary(x.clone())),
                Err(e) => json!(e.to_string()),
            },
        }),
        RoundTripFailure::ImageMismatch { missing, extra } => json!({
            "kind": "image",
            "missing": missing,
            "extra": extra,
        }),
    }
}

/// One row per atom: `G` where the light is green (1), `R` where red (0).
pub fn render(space: &SampleSpace, grid: &TimeGrid, x: &BinaryProcess) -> String {
    let times: Vec<String> = grid
        .times()
        .iter()
        .map(crate::rational::format_rational)
        .collect();
    let width = times.iter().map(String::len).max().unwrap_or(1);
    let label_width = space
        .labels()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(1);
    let mut out = format!("{:<label_width$}", "t");
    for t in &times {
        out.push_str(&format!(" {t:>width$}"));
    }
    out.push('\n');
    for a in 0..space.len() {
        out.push_str(&format!("{:<label_width$}", space.label(a)));
        for v in x.path(a) {
            out.push_str(&format!(" {:>width$}", if v { "G" } else { "R" }));
        }
        out.push('\n');
    }
    out
}
