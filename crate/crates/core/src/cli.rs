//! The `ceclab` command-line driver.
//!
//! Exit codes: 0 for a definite result, 2 for an inconclusive one (budget
//! exhausted, no verdict yet), 1 for usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::anticomplex::{decide_anticomplex_traced, escape_index, non_interior_witness, trapping_order};
use crate::class::{class_by_id, EffectiveClass, FunctionIndex};
use crate::complexity::{class_functions, class_points, complexity_profile, prefix_complexity, PrefixComplexity};
use crate::cover::{
    enumerate_cover, semidecide_from_cover, verify_cover_truncation, CertifiedFamily, Component, CoverBudgets,
    CoverVerdict,
};
use crate::error::{Error, Result};
use crate::fixture::{load_order, CoverFile, PropertyFixture};
use crate::pr::{pr_enumerate, pr_eval, pr_parse, PrClass};
use crate::topology::{cylinder_acceptor, oracle_semidecide, OracleVerdict};
use crate::word::FiniteWord;

#[derive(Parser, Debug)]
#[command(name = "ceclab", version, about = "Restricted Kolmogorov complexity over c.e. classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ClassArg {
    /// `ec` or `pr`
    #[arg(long = "class", default_value = "ec")]
    id: String,
    /// Step budget per evaluation (pr only)
    #[arg(long)]
    fuel: Option<u64>,
}

impl ClassArg {
    fn build(&self) -> Result<Box<dyn EffectiveClass>> {
        match (self.id.as_str(), self.fuel) {
            ("pr", Some(fuel)) => Ok(Box::new(PrClass::with_fuel(fuel))),
            (_, Some(_)) => Err(Error::InvalidArgument("--fuel applies to the pr class only".into())),
            (id, None) => class_by_id(id),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate class members
    Class {
        #[command(subcommand)]
        command: ClassCommand,
    },
    /// Primitive-recursive terms
    Pr {
        #[command(subcommand)]
        command: PrCommand,
    },
    /// K_C of a word, searching indices up to a bound
    Kc {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long, allow_hyphen_values = true)]
        word: FiniteWord,
        #[arg(long)]
        bound: FunctionIndex,
    },
    /// K_C(f_i↾n) for n = 0..=len
    Profile {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        index: FunctionIndex,
        #[arg(long)]
        len: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Length-p words of complexity at most k
    Points {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        k: FunctionIndex,
        #[arg(long)]
        len: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Distinct functions of complexity at most k
    Functions {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        k: FunctionIndex,
        #[arg(long, default_value_t = 64)]
        horizon: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide f_i ∈ A_{C,h}
    Anticomplex {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        index: FunctionIndex,
        /// `identity`, inline JSON, or a JSON file
        #[arg(long)]
        order: String,
        /// Print the decision with its instrumentation as JSON
        #[arg(long)]
        trace: bool,
    },
    /// Least a with [u·a] outside A_{C,h}
    Escape {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long, allow_hyphen_values = true)]
        word: FiniteWord,
        #[arg(long)]
        order: String,
    },
    /// Trapping order for f_i with non-interior witnesses
    Trap {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        index: FunctionIndex,
        #[arg(long)]
        depth: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the oracle procedure with oracle f_index and bound k
    Semidecide {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        property: PathBuf,
        #[arg(long)]
        index: FunctionIndex,
        /// Defaults to the index itself
        #[arg(long)]
        k: Option<FunctionIndex>,
        #[arg(long, default_value_t = 10_000)]
        stages: u64,
    },
    /// Build or replay covers
    Cover {
        #[command(subcommand)]
        command: CoverCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ClassCommand {
    /// f_i(0), …, f_i(len-1)
    Eval {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        index: FunctionIndex,
        #[arg(long)]
        len: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum PrCommand {
    /// Parse and print in canonical form
    Parse {
        #[arg(long)]
        term: String,
    },
    /// Evaluate a term on arguments
    Eval {
        #[arg(long)]
        term: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        args: FiniteWord,
        #[arg(long, default_value_t = crate::pr::DEFAULT_FUEL)]
        fuel: u64,
    },
    /// List unary terms by index
    Enum {
        #[arg(long, default_value = "0")]
        from: FunctionIndex,
        #[arg(long)]
        count: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum CoverCommand {
    Build {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        property: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: u64,
        /// Stages of each U_{k+1} scanned for components
        #[arg(long, default_value_t = 256)]
        stages: u64,
        /// Breakpoints materialized per component
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Verify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        index_bound: FunctionIndex,
        /// Ground truth to compare against
        #[arg(long)]
        property: Option<PathBuf>,
    },
}

/// A definite result, or one that is only budget-limited.
enum Outcome {
    Definite,
    Inconclusive,
}

fn csv_rows<R: Serialize>(out: &mut dyn Write, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    write_out(out, &bytes)
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    write_out(out, format!("{text}\n").as_bytes())
}

fn line(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    write_out(out, format!("{text}\n").as_bytes())
}

fn write_out(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes)
        .map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

fn index_u64(i: FunctionIndex) -> Result<u64> {
    u64::try_from(i.value()).map_err(|_| Error::Overflow("index does not fit in 64 bits"))
}

/// Run `ceclab` with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(Outcome::Definite) => 0,
        Ok(Outcome::Inconclusive) => 2,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_inconclusive() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Class {
            command: ClassCommand::Eval { class, index, len, format },
        } => {
            let class = class.build()?;
            let values = class.prefix_word(index, len)?;
            match format {
                Format::Csv => csv_rows(out, &["n", "value"], values.iter().enumerate().map(|(n, &v)| (n, v)))?,
                Format::Json => json(out, &serde_json::json!({ "index": index, "values": values }))?,
            }
        }
        Command::Pr { command } => return pr(command, out),
        Command::Kc { class, word, bound } => {
            let class = class.build()?;
            match prefix_complexity(&*class, &word, bound)? {
                PrefixComplexity::Exact(k) => line(out, k)?,
                PrefixComplexity::ExceedsBound => line(out, "exceeds-bound")?,
            }
        }
        Command::Profile { class, index, len, format } => {
            let class = class.build()?;
            let profile = complexity_profile(&*class, index, len)?;
            match format {
                Format::Csv => csv_rows(
                    out,
                    &["n", "kc"],
                    profile.values.iter().enumerate().map(|(n, k)| (n, k.to_string())),
                )?,
                Format::Json => json(out, &profile)?,
            }
        }
        Command::Points { class, k, len, format } => {
            let class = class.build()?;
            let points = class_points(&*class, k, len)?;
            match format {
                Format::Csv => csv_rows(out, &["word"], points.iter().map(|w| (w.to_string(),)))?,
                Format::Json => json(out, &points)?,
            }
        }
        Command::Functions { class, k, horizon, format } => {
            let class = class.build()?;
            let fns = class_functions(&*class, k, horizon)?;
            match format {
                Format::Csv => csv_rows(out, &["index"], fns.representatives.iter().map(|i| (i.to_string(),)))?,
                Format::Json => json(out, &fns)?,
            }
            if fns.horizon_limited {
                let _ = writeln!(err, "note: functions compared only on inputs below {horizon}");
            }
        }
        Command::Anticomplex { class, index, order, trace } => {
            let class = class.build()?;
            let h = load_order(&order)?;
            let decision = decide_anticomplex_traced(&*class, index, &h)?;
            if trace {
                json(out, &decision)?;
            } else {
                line(out, decision.member)?;
            }
        }
        Command::Escape { class, word, order } => {
            let class = class.build()?;
            let h = load_order(&order)?;
            line(out, escape_index(&*class, &word, &h)?)?;
        }
        Command::Trap { class, index, depth, format } => {
            let class = class.build()?;
            let trap = trapping_order(&*class, index, depth)?;
            let base = index_u64(index)?;
            let mut rows = Vec::new();
            for (n, &p) in trap.points.iter().enumerate() {
                let n = n as u64;
                let witness = if n >= base {
                    Some(non_interior_witness(&*class, &trap.order, &trap.points, index, n)?)
                } else {
                    None
                };
                rows.push((n, p, witness));
            }
            match format {
                Format::Csv => csv_rows(
                    out,
                    &["n", "p", "witness"],
                    rows.iter()
                        .map(|(n, p, w)| (n, p, w.as_ref().map(|w| w.to_string()).unwrap_or_default())),
                )?,
                Format::Json => {
                    let witnesses: Vec<_> = rows
                        .iter()
                        .filter_map(|(n, _, w)| w.as_ref().map(|w| serde_json::json!({ "n": n, "word": w })))
                        .collect();
                    json(
                        out,
                        &serde_json::json!({ "order": trap.order, "points": trap.points, "witnesses": witnesses }),
                    )?
                }
            }
        }
        Command::Semidecide { class, property, index, k, stages } => {
            let class = class.build()?;
            let fixture = PropertyFixture::load(&property)?;
            let acceptor = cylinder_acceptor(&*class, fixture.cylinders);
            let oracle = |m: u64| class.evaluate(index, m);
            let verdict = oracle_semidecide(&acceptor, &*class, &oracle, k.unwrap_or(index), stages)?;
            json(out, &verdict)?;
            if let OracleVerdict::NoVerdictYet { .. } = verdict {
                return Ok(Outcome::Inconclusive);
            }
        }
        Command::Cover { command } => return cover(command, out, err),
    }
    Ok(Outcome::Definite)
}

fn pr(command: PrCommand, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        PrCommand::Parse { term } => line(out, pr_parse(&term)?)?,
        PrCommand::Eval { term, args, fuel } => line(out, pr_eval(&pr_parse(&term)?, &args, fuel)?)?,
        PrCommand::Enum { from, count, format } => {
            let mut rows = Vec::new();
            let mut i = from;
            for _ in 0..count {
                let t = pr_enumerate(i)?;
                rows.push((i, t.size(), t.to_string()));
                i = i.next();
            }
            match format {
                Format::Csv => csv_rows(out, &["index", "size", "term"], rows.iter().map(|(i, s, t)| (i.to_string(), s, t)))?,
                Format::Json => json(
                    out,
                    &rows
                        .iter()
                        .map(|(i, s, t)| serde_json::json!({ "index": i, "size": s, "term": t }))
                        .collect::<Vec<_>>(),
                )?,
            }
        }
    }
    Ok(Outcome::Definite)
}

fn cover(command: CoverCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    match command {
        CoverCommand::Build { class: class_arg, property, kmax, stages, points, out: path } => {
            let class = class_arg.build()?;
            let fixture = PropertyFixture::load(&property)?;
            let acceptor = cylinder_acceptor(&*class, fixture.cylinders);
            let family = CertifiedFamily::new(&*class, &acceptor);
            let budgets = CoverBudgets {
                kmax,
                component_stages: stages,
                initial_breakpoints: points,
                ..CoverBudgets::default()
            };
            let components = enumerate_cover(&*class, &family, &budgets)?;
            let mut stalled = 0;
            for c in &components {
                if let Some(why) = c.stalled() {
                    stalled += 1;
                    let _ = writeln!(err, "component k={} v=({}): {why}", c.k, c.v);
                }
            }
            let file = CoverFile {
                class: class_arg.id.clone(),
                components: components.iter().map(Component::record).collect(),
            };
            file.save(&path)?;
            line(out, format!("components: {}", file.components.len()))?;
            if stalled > 0 {
                return Ok(Outcome::Inconclusive);
            }
        }
        CoverCommand::Verify { cover, index_bound, property } => {
            let file = CoverFile::load(&cover)?;
            let class = class_by_id(&file.class)?;
            let mut components = file
                .components
                .into_iter()
                .map(Component::fixed)
                .collect::<Result<Vec<_>>>()?;
            match property {
                Some(path) => {
                    let fixture = PropertyFixture::load(&path)?;
                    let acceptor = cylinder_acceptor(&*class, fixture.cylinders);
                    let report = verify_cover_truncation(&*class, &acceptor, &mut components, index_bound)?;
                    json(out, &report)?;
                    if !report.disagreements.is_empty() {
                        let _ = writeln!(err, "unsound: {} non-members accepted", report.disagreements.len());
                    }
                    if !report.inconclusive.is_empty() {
                        return Ok(Outcome::Inconclusive);
                    }
                }
                None => {
                    let mut rows = Vec::new();
                    let mut pending = false;
                    for i in index_bound.up_to() {
                        let verdict = semidecide_from_cover(&*class, &mut components, i, usize::MAX)?;
                        let cell = match verdict {
                            CoverVerdict::Accept { component } => format!("accept:{component}"),
                            CoverVerdict::NoVerdictYet { .. } => {
                                pending = true;
                                "no-verdict-yet".to_string()
                            }
                        };
                        rows.push((i.to_string(), cell));
                    }
                    csv_rows(out, &["index", "verdict"], rows)?;
                    if pending {
                        return Ok(Outcome::Inconclusive);
                    }
                }
            }
        }
    }
    Ok(Outcome::Definite)
}
