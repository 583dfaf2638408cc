//! The `terncode` command line. [`run`] maps arguments to an exit code:
//! 0 success, 1 verification mismatch, 2 invalid input or budget refusal.

pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use terncode::code::{
    checkpoint_file, code_cosets, code_dimension, cyclotomic_coset, enumerate_distribution,
    predicted_coset_size, EnumerateOptions, Method, WeightDistribution, DEFAULT_BUDGET,
};
use terncode::counting::{closed_form_count, count_bruteforce, dump_tables, SystemId};
use terncode::gf::{field_context, FieldContext};
use terncode::identities::{theorem_table, IdentityCheck};
use terncode::Error;

use suites::{Suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "terncode", version, about = "Exact weight distributions of a ternary cyclic code with three nonzeros")]
pub struct Cli {
    /// Worker threads (at least 1); defaults to all cores.
    #[arg(long, global = true, value_parser = parse_parallelism)]
    pub parallelism: Option<usize>,
    /// Maximum number of elementary evaluations; accepts forms like 1e10.
    #[arg(long, global = true, value_parser = parse_budget, default_value = "1e10")]
    pub budget: u128,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for resumable checkpoints of long enumerations.
    #[arg(long, global = true)]
    pub checkpoint_dir: Option<PathBuf>,
    /// Suppress progress lines on standard error.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightMethod {
    Closed,
    Rank,
    Direct,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight distribution over all q^3 coefficient triples.
    Weights {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = WeightMethod::Closed)]
        method: WeightMethod,
    },
    /// Run a verification suite and report every comparison.
    Verify {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Count solutions of one of the equation systems.
    Count {
        #[arg(long)]
        system: SystemId,
        #[arg(long)]
        m: u32,
        /// Also enumerate and compare with the closed form.
        #[arg(long)]
        oracle: bool,
    },
    /// Cyclotomic cosets of the code exponents and of 1 + p^i.
    Cosets {
        #[arg(long)]
        m: u32,
    },
    /// Print the component tables of the variety decompositions.
    DumpTables,
}

fn parse_parallelism(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("parallelism must be an integer >= 1, got {s:?}")),
    }
}

/// Parses a nonnegative integer written plainly or as `<mantissa>e<exp>`.
pub fn parse_budget(s: &str) -> Result<u128, String> {
    let bad = || format!("budget must be a nonnegative integer such as 1e10, got {s:?}");
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((a, b)) => (a, b.parse::<u32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(bad());
    }
    let frac = frac.trim_end_matches('0');
    let shift = exp.checked_sub(frac.len() as u32).ok_or_else(bad)?;
    let digits: u128 = format!("{int}{frac}").parse().map_err(|_| bad())?;
    10u128.checked_pow(shift).and_then(|t| digits.checked_mul(t)).ok_or_else(bad)
}

#[derive(Debug)]
enum Failure {
    Invalid(Error),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::Budget { .. }
            | Error::Hypothesis(_)
            | Error::NoClosedForm(_)
            | Error::Parse(_)
            | Error::Io(_) => Failure::Invalid(e),
            _ => Failure::Core(e),
        }
    }
}

struct Output {
    body: String,
    mismatch: Option<Value>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let msg = e.kind().to_string();
            let detail = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            emit_error(&json!({"error": "usage", "message": detail, "kind": msg}));
            return EXIT_INVALID;
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> i32 {
    let result = match cli.parallelism {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => Err(Failure::Invalid(Error::Config(e.to_string()))),
        },
        None => execute(cli),
    };
    let out = match result {
        Ok(o) => o,
        Err(f) => return report_failure(f),
    };
    if let Err(e) = write_output(cli.output.as_deref(), &out.body) {
        return report_failure(Failure::Invalid(e));
    }
    match out.mismatch {
        Some(first) => {
            emit_error(&json!({"error": "mismatch", "first_failure": first}));
            EXIT_MISMATCH
        }
        None => EXIT_OK,
    }
}

fn report_failure(f: Failure) -> i32 {
    match f {
        Failure::Invalid(e) => {
            emit_error(&error_json(&e));
            EXIT_INVALID
        }
        Failure::Core(e) => {
            emit_error(&error_json(&e));
            EXIT_MISMATCH
        }
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.kind(), "message": e.to_string()});
    match e {
        Error::Budget { needed, budget } => {
            v["needed"] = json!(needed.to_string());
            v["budget"] = json!(budget.to_string());
        }
        Error::IdentitySystem { closed_form, linear_solve, .. } => {
            v["closed_form"] = json!(closed_form);
            v["linear_solve"] = json!(linear_solve);
        }
        _ => {}
    }
    v
}

fn emit_error(v: &Value) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{v}");
}

fn write_output(path: Option<&Path>, body: &str) -> terncode::Result<()> {
    match path {
        Some(p) => std::fs::write(p, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn context(m: u32) -> Result<FieldContext, Failure> {
    if m == 0 {
        return Err(Failure::Invalid(Error::Config("m must be at least 1".into())));
    }
    Ok(field_context(3, m)?)
}

fn progress_line(job: &'static str) -> impl Fn(u64, u64) + Sync {
    move |done, total| {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{}", json!({"progress": job, "done": done, "total": total}));
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Weights { m, method } => weights(cli, *m, *method),
        Command::Verify { m, suite } => verify(cli, *m, *suite),
        Command::Count { system, m, oracle } => count(cli, *system, *m, *oracle),
        Command::Cosets { m } => cosets(cli, *m),
        Command::DumpTables => Ok(Output { body: dump_tables(), mismatch: None }),
    }
}

fn distribution_body(cli: &Cli, d: &WeightDistribution) -> String {
    match cli.format {
        Format::Json => d.to_json() + "\n",
        Format::Csv => d.to_csv(),
    }
}

fn weights(cli: &Cli, m: u32, method: WeightMethod) -> Result<Output, Failure> {
    let d = match method {
        WeightMethod::Closed => theorem_table(3, m)?,
        WeightMethod::Rank | WeightMethod::Direct => {
            let ctx = context(m)?;
            let method = if method == WeightMethod::Rank { Method::Rank } else { Method::Direct };
            let job = if method == Method::Rank { "rank" } else { "direct" };
            let progress = progress_line(job);
            let opts = EnumerateOptions {
                budget: cli.budget,
                checkpoint_dir: cli.checkpoint_dir.as_deref(),
                progress: if cli.quiet { None } else { Some(&progress) },
            };
            let d = enumerate_distribution(&ctx, method, &opts)?;
            if let Some(dir) = &cli.checkpoint_dir {
                let _ = std::fs::remove_file(checkpoint_file(dir, m, job));
            }
            d
        }
    };
    Ok(Output { body: distribution_body(cli, &d), mismatch: None })
}

fn checks_csv(checks: &[IdentityCheck]) -> String {
    let mut s = String::from("identity,lhs,rhs,match\n");
    for c in checks {
        s.push_str(&format!("{},{},{},{}\n", c.identity, csv_field(&c.lhs), csv_field(&c.rhs), c.matches));
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verify(cli: &Cli, m: u32, suite: Suite) -> Result<Output, Failure> {
    let ctx = context(m)?;
    let progress = progress_line("verify");
    let cfg = SuiteConfig {
        ctx: &ctx,
        seed: cli.seed,
        opts: EnumerateOptions {
            budget: cli.budget,
            checkpoint_dir: cli.checkpoint_dir.as_deref(),
            progress: if cli.quiet { None } else { Some(&progress) },
        },
    };
    let report = suites::run(suite, &cfg)?;
    let failed = report.checks.iter().filter(|c| !c.matches).count();
    let mismatch = report.first_failure().map(|c| serde_json::to_value(c).expect("serializable"));
    let body = match cli.format {
        Format::Json => {
            let v = json!({
                "m": m,
                "suite": suite.name(),
                "seed": cli.seed,
                "checks": report.checks,
                "skipped": report.skipped,
                "passed": report.checks.len() - failed,
                "failed": failed,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => checks_csv(&report.checks),
    };
    Ok(Output { body, mismatch })
}

fn count(cli: &Cli, id: SystemId, m: u32, oracle: bool) -> Result<Output, Failure> {
    let ctx = context(m)?;
    let closed = match closed_form_count(id, 3, m) {
        Ok(v) => Some(v),
        Err(Error::NoClosedForm(_) | Error::Hypothesis(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let (count, matches) = if oracle || closed.is_none() {
        let c = count_bruteforce(id, &ctx, cli.budget)?.count;
        let matches = closed.as_ref().map(|v| *v == c);
        (c, matches)
    } else {
        (closed.clone().expect("checked"), Some(true))
    };
    let closed_s = closed.as_ref().map(|v| v.to_string());
    let v = if oracle {
        json!({"count": count.to_string(), "closed_form": closed_s, "match": matches})
    } else {
        json!({"count": count.to_string(), "closed_form": closed_s})
    };
    let mismatch = (oracle && matches == Some(false)).then(|| {
        json!({"system": id.to_string(), "m": m, "count": count.to_string(), "closed_form": closed_s})
    });
    let body = match cli.format {
        Format::Json => format!("{v}\n"),
        Format::Csv => format!(
            "count,closed_form,match\n{},{},{}\n",
            count,
            closed_s.unwrap_or_default(),
            matches.map(|b| b.to_string()).unwrap_or_default()
        ),
    };
    Ok(Output { body, mismatch })
}

fn cosets(cli: &Cli, m: u32) -> Result<Output, Failure> {
    if m == 0 || m > terncode::gf::MAX_DEGREE {
        return Err(Failure::Invalid(Error::Config(format!("m must be in 1..={}", terncode::gf::MAX_DEGREE))));
    }
    let p = 3u64;
    let code: Vec<Value> = code_cosets(p, m)
        .iter()
        .map(|c| json!({"s": c.s, "size": c.size, "elements": c.elements}))
        .collect();
    let mut mismatch = None;
    let mut rows = Vec::new();
    for i in 0..=m / 2 {
        let s = 1 + p.pow(i);
        let size = cyclotomic_coset(s, p, m).size;
        let predicted = predicted_coset_size(m, i).expect("i <= m/2");
        let row = json!({"i": i, "s": s, "size": size, "predicted": predicted, "match": size == predicted});
        if size != predicted && mismatch.is_none() {
            mismatch = Some(row.clone());
        }
        rows.push(row);
    }
    let body = match cli.format {
        Format::Json => {
            let v = json!({
                "m": m,
                "cosets": code,
                "dimension": code_dimension(p, m),
                "one_plus_p_i": rows,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("i,s,size,predicted,match\n");
            for r in &rows {
                s.push_str(&format!("{},{},{},{},{}\n", r["i"], r["s"], r["size"], r["predicted"], r["match"]));
            }
            s
        }
    };
    Ok(Output { body, mismatch })
}

/// Default budget, as accepted by `--budget`.
pub fn default_budget() -> u128 {
    DEFAULT_BUDGET
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_forms() {
        assert_eq!(parse_budget("1e10"), Ok(10_000_000_000));
        assert_eq!(parse_budget("2.5e3"), Ok(2500));
        assert_eq!(parse_budget("12345"), Ok(12345));
        assert_eq!(parse_budget("1E2"), Ok(100));
        assert!(parse_budget("1.5").is_err());
        assert!(parse_budget("-3").is_err());
        assert!(parse_budget("e5").is_err());
        assert!(parse_budget("1e99").is_err());
        assert_eq!(parse_budget("1e10").unwrap(), default_budget());
    }

    #[test]
    fn parallelism_must_be_positive() {
        assert!(parse_parallelism("0").is_err());
        assert_eq!(parse_parallelism("3"), Ok(3));
    }
}
