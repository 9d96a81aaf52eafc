//! Argument parsing and the four subcommands.

use crate::render;
use crate::report::{Outcome, ReportDocument, RunSettings};
use aos_core::catalog::{self, certified_schur_upper, instantiate, list_cases, run_case, Overrides, RunOptions};
use aos_core::operator::{build_gram, schur_constant, MAX_EIGEN_N, MAX_GRAM_N};
use aos_core::spaces::GramMode;
use aos_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "aos", version, about = "Verification reports for almost orthogonal sequences")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the case roster.
    List,
    /// Run every check on one case or the whole catalog.
    Verify(VerifyArgs),
    /// Dump Gram entries as CSV.
    Gram(GramArgs),
    /// Tabulate the Schur constant across truncations.
    Schur(SchurArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Closed,
    Numeric,
    Both,
}

impl From<Mode> for GramMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Closed => GramMode::Closed,
            Mode::Numeric => GramMode::Numeric,
            Mode::Both => GramMode::Both,
        }
    }
}

fn parse_kv(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{k}` must be finite"));
    }
    Ok((k.trim().to_string(), v))
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// Parameter override, repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_kv)]
    params: Vec<(String, f64)>,
    /// Gram evaluation mode.
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    mode: Mode,
    /// Output path; a directory with --all.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CaseArgs {
    fn overrides(&self) -> Overrides {
        self.params.iter().cloned().collect()
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    case: Option<String>,
    /// Run every case in the roster.
    #[arg(long, conflicts_with = "case")]
    all: bool,
    #[arg(long = "N", default_value_t = 32)]
    n: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for --all; AOS_JOBS takes precedence.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed of the random test vectors.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CaseArgs,
}

#[derive(Args, Debug)]
struct GramArgs {
    case: String,
    #[arg(long = "N", default_value_t = 8)]
    n: usize,
    #[command(flatten)]
    common: CaseArgs,
}

#[derive(Args, Debug)]
struct SchurArgs {
    case: String,
    #[arg(long = "N-list", value_delimiter = ',', default_value = "8,16,32,64")]
    n_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    #[command(flatten)]
    common: CaseArgs,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Exit {
    code: i32,
    msg: String,
}

impl Exit {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, msg: msg.into() }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::UnknownCase(_) | Error::InvalidParameter(_) | Error::UnsupportedMode(_))
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Self { code: if is_usage(&e) { EXIT_USAGE } else { EXIT_FAIL }, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_FAIL, msg: format!("i/o error: {e}") }
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return e.exit_code();
        }
    };
    let r = match cli.cmd {
        Cmd::List => cmd_list(out),
        Cmd::Verify(a) => cmd_verify(&a, out, err),
        Cmd::Gram(a) => cmd_gram(&a, out),
        Cmd::Schur(a) => cmd_schur(&a, out),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "aos: {}", e.msg);
            e.code
        }
    }
}

fn cmd_list(out: &mut dyn Write) -> Result<i32, Exit> {
    let cases = list_cases();
    let w = cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
    for c in &cases {
        writeln!(out, "{:<w$}  {}", c.id, c.summary)?;
    }
    Ok(EXIT_OK)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, body: &str) -> Result<(), Exit> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, body)?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Worker count: AOS_JOBS, then --jobs, then the number of logical cores.
fn job_count(flag: Option<usize>) -> Result<usize, Exit> {
    if let Ok(v) = std::env::var("AOS_JOBS") {
        return match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Exit::usage(format!("AOS_JOBS must be a positive integer, got `{v}`"))),
        };
    }
    match flag {
        Some(0) => Err(Exit::usage("--jobs must be positive")),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs `f` over `items` on `jobs` threads; results keep the input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every slot filled")).collect()
}

/// Builds and runs one case, folding numerical errors into a failed document.
pub fn verify_case(case: &catalog::CaseInstance, opts: &RunOptions) -> ReportDocument {
    let t0 = Instant::now();
    let res = run_case(case, opts);
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    match res {
        Ok(r) => ReportDocument::from_report(&r, opts.tol, Some(ms)),
        Err(e) => {
            let s = RunSettings { n: opts.n, mode: opts.mode.as_str().to_string(), tol: opts.tol, seed: opts.seed };
            ReportDocument::from_error(case.id, case.params.iter().cloned().collect(), &s, &e.to_string(), Some(ms))
        }
    }
}

fn render_docs(docs: &[ReportDocument], format: Format, single: bool) -> String {
    match format {
        Format::Json if single => docs[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(docs).expect("reports serialize") + "\n",
        Format::Csv => render::reports_csv(docs),
        Format::Md => render::reports_md(docs),
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    if a.n == 0 || a.n > MAX_EIGEN_N {
        return Err(Exit::usage(format!("--N must lie in 1..={MAX_EIGEN_N}")));
    }
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(Exit::usage("--tol must be positive"));
    }
    let ids: Vec<String> = match (&a.case, a.all) {
        (Some(id), false) => vec![id.clone()],
        (None, true) => list_cases().iter().map(|c| c.id.to_string()).collect(),
        _ => return Err(Exit::usage("give a case id or --all")),
    };
    if a.all && !a.common.params.is_empty() {
        return Err(Exit::usage("--param applies to a single case"));
    }
    let overrides = a.common.overrides();
    let cases = ids.iter().map(|id| instantiate(id, &overrides)).collect::<Result<Vec<_>, _>>()?;
    let jobs = job_count(a.jobs)?;
    let opts = RunOptions { n: a.n, tol: a.tol, mode: a.common.mode.into(), seed: a.seed };
    let docs = parallel_map(&cases, jobs, |c| verify_case(c, &opts));

    match (&a.common.out, a.all) {
        (Some(dir), true) => {
            std::fs::create_dir_all(dir)?;
            for d in &docs {
                let p = dir.join(format!("{}.{}", d.case_id, a.format.ext()));
                emit(out, Some(&p), &render_docs(std::slice::from_ref(d), a.format, true))?;
            }
        }
        (path, _) => emit(out, path.as_deref(), &render_docs(&docs, a.format, !a.all))?,
    }

    let mut worst = Outcome::Pass;
    let mut counts = [0usize; 3];
    for d in &docs {
        worst = worst.max(d.status);
        counts[d.status as usize] += 1;
        let c = d.schur.as_ref().map_or_else(|| "—".to_string(), |s| format!("{:.10}", s.upper));
        match &d.error {
            Some(e) => writeln!(err, "{}: {} ({e})", d.case_id, d.status.as_str())?,
            None => writeln!(err, "{}: {} (N = {}, C = {c})", d.case_id, d.status.as_str(), d.n)?,
        }
    }
    writeln!(err, "{} case(s): {} pass, {} advisory, {} fail", docs.len(), counts[0], counts[1], counts[2])?;
    Ok(if worst == Outcome::Fail { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_gram(a: &GramArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    if a.n == 0 || a.n > MAX_GRAM_N {
        return Err(Exit::usage(format!("--N must lie in 1..={MAX_GRAM_N}")));
    }
    let case = instantiate(&a.case, &a.common.overrides())?;
    let g = build_gram(&case.space, a.n, a.common.mode.into())?;
    emit(out, a.common.out.as_deref(), &render::gram_csv(&render::gram_rows(&g)))?;
    Ok(EXIT_OK)
}

fn cmd_schur(a: &SchurArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let mut ns = a.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    if ns.is_empty() || ns[0] == 0 || ns[ns.len() - 1] > MAX_GRAM_N {
        return Err(Exit::usage(format!("--N-list entries must lie in 1..={MAX_GRAM_N}")));
    }
    let case = instantiate(&a.case, &a.common.overrides())?;
    let upper = certified_schur_upper(&case.space)?;
    let big = build_gram(&case.space, ns[ns.len() - 1], a.common.mode.into())?;
    let rows: Vec<render::SchurRow> = ns
        .iter()
        .map(|&n| {
            let s = schur_constant(&big.leading(n), upper);
            render::SchurRow {
                n,
                finite_sup: s.finite_sup,
                tail_bound: s.tail_bound,
                certified_c: s.certified.then(|| s.upper()),
                achieved_at_row: s.achieved_at_row,
            }
        })
        .collect();
    let body = match a.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Csv => render::schur_csv(&rows),
        Format::Md => render::schur_md(case.id, &rows),
    };
    emit(out, a.common.out.as_deref(), &body)?;
    let monotone = rows.windows(2).all(|w| w[1].finite_sup >= w[0].finite_sup);
    Ok(if monotone { EXIT_OK } else { EXIT_FAIL })
}
