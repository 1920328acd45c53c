//! The `cgeo` command-line tool.
//!
//! [`run`] parses arguments, executes one subcommand on a worker pool of the
//! requested size and returns the exit status with the rendered output.
//! Exit status 0 means success, 1 a validation error, 2 precision
//! exhaustion and 3 search exhaustion.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{self, IndexInput, KroneckerInput, ResonanceInput, ScenarioInput, SystemInput};
use crate::error::Error;
use crate::kronecker::{frac_mul, interval_membership_scenario, kronecker_search, ScenarioOptions, SearchTask, Target};
use crate::rational::Rational;
use crate::resonance::{first_morse_inequality_violation, morse_number_bound, morse_type_numbers, resonance_check};
use crate::symbolic::{IrrationalBasis, SymbolicReal};
use crate::systems::reduce;
use crate::topology::{average_betti, betti, poincare_coeffs, SpaceFormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "cgeo", version, about = "Closed geodesics on spherical space forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON input document for the command.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long = "out", global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    /// Ceiling on the working precision of certified evaluations.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..=4096))]
    pub precision_bits: u32,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Morse indices and nullities of the iterates `c^m`.
    IndexIterate {
        #[arg(long, default_value_t = 20)]
        m_max: u64,
    },
    /// Equivariant Betti numbers of the non-contractible loop space component.
    Betti {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 20)]
        q_max: u64,
    },
    /// Both sides of the resonance identity.
    ResonanceCheck,
    /// Morse-type numbers against the Betti numbers.
    MorseSeries {
        #[arg(long, default_value_t = 100)]
        q_max: u64,
    },
    /// Reduction to unit weights without superfluous pairs.
    ReduceSystem {
        #[arg(long)]
        emit_transcript: bool,
    },
    /// Effective difference number and a rational witness.
    EffectiveDiff,
    /// Smallest `m` with `{m theta}` near the targets.
    Kronecker {
        /// Built-in constant `sqrtN` or `golden`, when no config is given.
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        target: Option<Rational>,
        #[arg(long)]
        tol: Option<Rational>,
        #[arg(long, default_value_t = 1000)]
        m_max: u64,
    },
    /// Iterates sharing one index beyond the Betti bound.
    Scenario {
        #[arg(long)]
        n_bar: u32,
        #[arg(long, default_value_t = crate::kronecker::DEFAULT_M_CAP)]
        m_cap: u64,
    },
}

/// Exit status with what goes to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// Tabular and JSON views of one result.
struct Rendered {
    json: Value,
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Rendered {
    fn table(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Rendered { json, headers: headers.iter().map(|h| h.to_string()).collect(), rows }
    }

    /// One `key, value` row per top-level field.
    fn record(value: impl Serialize) -> Self {
        let json = serde_json::to_value(value).expect("outputs serialize");
        let rows = match &json {
            Value::Object(map) => map.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
            other => vec![vec!["value".into(), cell(other)]],
        };
        Rendered::table(json, &["key", "value"], rows)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("outputs serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 output")
            }
            Format::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.headers);
                out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
                for r in &self.rows {
                    out += &line(r);
                }
                out
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => 2,
        Error::SearchExhausted(_) => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli)
}

/// Runs an already parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::failure(1, e),
    };
    match pool.install(|| dispatch(cli)) {
        Ok(r) => Outcome { code: 0, stdout: r.render(cli.out), stderr: String::new() },
        Err(Failure::Core(e)) => Outcome::failure(exit_code(&e), e),
        Err(Failure::Input(msg)) => Outcome::failure(1, msg),
    }
}

fn load<T: DeserializeOwned>(cli: &Cli) -> Result<T, Failure> {
    let path = cli.config.as_ref().ok_or_else(|| Failure::Input("this command needs --config PATH".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    config::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<Rendered, Failure> {
    let bits = cli.precision_bits;
    match &cli.command {
        Command::IndexIterate { m_max } => {
            let f = load::<IndexInput>(cli)?.resolve(bits)?;
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for m in 1..=*m_max {
                let (index, nullity) = (f.index(m)?, f.nullity(m)?);
                rows.push(vec![m.to_string(), index.to_string(), nullity.to_string()]);
                items.push(json!({"m": m, "index": index, "nullity": nullity}));
            }
            let json = json!({
                "mean_index": f.mean_index(),
                "mean_index_enclosure": f.mean_index().enclose(64)?,
                "iteration_bound": f.iteration_bound(),
                "iterates": items,
            });
            Ok(Rendered::table(json, &["m", "index", "nullity"], rows))
        }
        Command::Betti { n, p, q_max } => {
            let space = SpaceFormSpec::new(*n, *p)?;
            let len = usize::try_from(*q_max).map_err(|_| Failure::Input("q_max too large".into()))?;
            let series = poincare_coeffs(&space, len);
            let mut rows = Vec::new();
            let mut items = Vec::new();
            for (q, s) in (0..=*q_max).zip(series) {
                let b = betti(&space, q);
                if i64::from(b) != s {
                    return Err(Error::Inconsistent(format!("closed form and series differ at q = {q}")).into());
                }
                rows.push(vec![q.to_string(), b.to_string()]);
                items.push(json!({"q": q, "betti": b}));
            }
            let json = json!({"space": space, "average_betti": average_betti(&space), "betti": items});
            Ok(Rendered::table(json, &["q", "betti"], rows))
        }
        Command::ResonanceCheck => {
            let (space, records) = load::<ResonanceInput>(cli)?.resolve(bits)?;
            Ok(Rendered::record(resonance_check(&records, &space)?))
        }
        Command::MorseSeries { q_max } => {
            let (space, records) = load::<ResonanceInput>(cli)?.resolve(bits)?;
            let ms = morse_type_numbers(&records, &space, *q_max)?;
            let bettis: Vec<u64> = (0..=*q_max).map(|q| u64::from(betti(&space, q))).collect();
            let violation = first_morse_inequality_violation(&ms, &bettis)?;
            let rows = ms
                .iter()
                .zip(&bettis)
                .enumerate()
                .map(|(q, (m, b))| vec![q.to_string(), m.to_string(), b.to_string()])
                .collect();
            let json = json!({
                "odd_degrees_vanish": ms.iter().skip(1).step_by(2).all(|&m| m == 0),
                "bound": morse_number_bound(&records, &space)?,
                "first_inequality_violation": violation,
                "morse": ms,
                "betti": bettis,
            });
            Ok(Rendered::table(json, &["q", "morse", "betti"], rows))
        }
        Command::ReduceSystem { emit_transcript } => {
            let sys = load::<SystemInput>(cli)?.resolve(bits)?;
            let (reduced, transcript) = reduce(&sys);
            let rows = reduced
                .weights()
                .iter()
                .zip(reduced.offsets())
                .enumerate()
                .map(|(j, (p, xi))| vec![j.to_string(), p.to_string(), xi.to_string()])
                .collect();
            let mut json = json!({"system": reduced, "effective_difference": reduced.effective_difference()});
            if *emit_transcript {
                json["transcript"] = serde_json::to_value(&transcript).expect("outputs serialize");
            }
            Ok(Rendered::table(json, &["j", "weight", "offset"], rows))
        }
        Command::EffectiveDiff => {
            let sys = load::<SystemInput>(cli)?.resolve(bits)?;
            Ok(Rendered::record(sys.effective_difference()))
        }
        Command::Kronecker { theta, target, tol, m_max } => {
            let task = match (theta, target, tol) {
                (Some(theta), Some(target), Some(tol)) => {
                    let basis = IrrationalBasis::with_max_bits(vec![config::named_constant(theta)?], bits)?;
                    let generator = SymbolicReal::element(&basis, theta)?;
                    let t = Target { value: target.clone(), tolerance: tol.clone() };
                    SearchTask::new(vec![t], vec![generator], *m_max, None)?
                }
                (None, None, None) => load::<KroneckerInput>(cli)?.resolve(bits)?,
                _ => return Err(Failure::Input("--theta, --target and --tol go together".into())),
            };
            let m = kronecker_search(&task)?.ok_or_else(|| {
                Error::SearchExhausted(format!("no admissible m <= {} meets every target", task.m_max()))
            })?;
            let fracs = task
                .generators()
                .iter()
                .map(|g| frac_mul(g, m)?.enclose(64))
                .collect::<crate::Result<Vec<_>>>()?;
            Ok(Rendered::record(json!({"m": m, "fractions": fracs})))
        }
        Command::Scenario { n_bar, m_cap } => {
            let cfg = load::<ScenarioInput>(cli)?.resolve(bits)?;
            let report = interval_membership_scenario(&cfg, ScenarioOptions { n_bar: *n_bar, m_cap: *m_cap })?;
            let c = &report.collision;
            let rows = c
                .iterates
                .iter()
                .map(|r| {
                    vec![r.m.to_string(), r.l.to_string(), r.big_l.to_string(), r.interval.to_string(), r.index.to_string()]
                })
                .collect();
            let json = serde_json::to_value(&report).expect("outputs serialize");
            Ok(Rendered::table(json, &["m", "l", "L", "interval", "index"], rows))
        }
    }
}
