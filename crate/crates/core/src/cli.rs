//! Command-line front end. Every command produces a [`Report`] and an exit
//! status: 0 success, 1 property violated, 2 usage or parse error, 3 budget
//! exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand};

use crate::analysis::{self, ScanOptions};
use crate::construct;
use crate::error::Error;
use crate::field::Field;
use crate::report::Report;
use crate::search::{self, SearchParams, SearchStatus};
use crate::subspace::{SubspaceBasis, DEFAULT_ENUMERATION_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Violated = 1,
    Usage = 2,
    Budget = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of(err: &Error) -> ExitStatus {
        match err {
            Error::BudgetExceeded(_) => ExitStatus::Budget,
            Error::NotConstantRank | Error::InternalVerificationFailed(_) => ExitStatus::Violated,
            _ => ExitStatus::Usage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "constrank", version, about = "Constant-rank subspaces of matrices over finite fields")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a dimension-n constant rank r subspace of m×n matrices.
    Construct(ConstructArgs),
    /// Check that every nonzero element of a subspace file has the given rank.
    Verify(VerifyArgs),
    /// Rank census of a subspace file and the general dimension bound.
    Census(InputArgs),
    /// Kernel-image property and kernel-slice bound of a subspace file.
    LemmaCheck(LemmaArgs),
    /// Double count of (A, u) pairs with Au = 0.
    Counting(InputArgs),
    /// Pruned exhaustive search for a constant rank subspace.
    Search(SearchArgs),
    /// Brute-force census of constant rank subspaces.
    Oracle(ProblemArgs),
}

fn positive() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::new().range(1..)
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; see the command description for what is written there.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit the report as a JSON object.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_parser = parse_field)]
    pub field: Field,
    /// Matrix shape, `MxN`.
    #[arg(long, value_parser = parse_shape)]
    pub shape: (usize, usize),
    #[arg(long, value_parser = positive())]
    pub rank: usize,
    #[arg(long, value_parser = positive())]
    pub dim: usize,
    /// Node budget (search) or largest subspace count (oracle).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(long, value_parser = parse_field)]
    pub field: Field,
    #[arg(long, value_parser = parse_shape)]
    pub shape: (usize, usize),
    #[arg(long, value_parser = positive())]
    pub rank: usize,
    /// Subspace file destination; the report goes to stdout when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Subspace file.
    #[arg(long)]
    pub input: PathBuf,
    /// Enumeration budget.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Expected rank; without it any constant rank passes.
    #[arg(long, value_parser = positive())]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct LemmaArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Check this many random maximal-rank elements instead of all of them.
    #[arg(long, value_parser = positive())]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_parser = positive(), default_value_t = 1)]
    pub workers: usize,
    /// Count every subspace instead of stopping at the first.
    #[arg(long)]
    pub all: bool,
    /// Run the brute-force census instead.
    #[arg(long)]
    pub oracle: bool,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let dim = |t: &str| match t.trim().parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, got {t:?}")),
        Ok(v) => Ok(v),
    };
    Ok((dim(m)?, dim(n)?))
}

/// What a command printed and how it ended.
#[derive(Debug, Clone)]
pub struct Run {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    fn failed(err: &Error, context: Option<&Path>) -> Run {
        let message = match (err, context) {
            (Error::Parse { line, column, message }, Some(path)) => {
                format!("{}:{line}:{column}: {message}", path.display())
            }
            (_, Some(path)) => format!("{}: {err}", path.display()),
            (_, None) => err.to_string(),
        };
        Run {
            status: ExitStatus::of(err),
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            Run { status, stdout, stderr }
        }
    }
}

pub fn run(config: &RunConfig) -> Run {
    match &config.command {
        Command::Construct(a) => run_construct(a),
        Command::Verify(a) => with_input(&a.input, |s, r| verify(s, a.rank, a.input.budget, r)),
        Command::Census(a) => with_input(a, |s, r| census(s, a.budget, r)),
        Command::LemmaCheck(a) => with_input(&a.input, |s, r| {
            lemma_check(s, ScanOptions { sample: a.sample, seed: a.seed }, r)
        }),
        Command::Counting(a) => with_input(a, counting),
        Command::Search(a) if a.oracle => run_oracle(&a.problem),
        Command::Search(a) => run_search(a),
        Command::Oracle(a) => run_oracle(a),
    }
}

fn render(report: &Report, json: bool) -> String {
    if json {
        report.to_json()
    } else {
        report.to_text()
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Run> {
    fs::write(path, text).map_err(|e| Run {
        status: ExitStatus::Usage,
        stdout: String::new(),
        stderr: format!("error: {}: {e}\n", path.display()),
    })
}

/// Reads and parses `--input`, runs `body`, and routes the report to
/// `--out` or stdout.
fn with_input<F>(args: &InputArgs, body: F) -> Run
where
    F: FnOnce(&SubspaceBasis, &mut Report) -> Result<ExitStatus, Error>,
{
    let path = args.input.as_path();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Run {
                status: ExitStatus::Usage,
                stdout: String::new(),
                stderr: format!("error: {}: {e}\n", path.display()),
            }
        }
    };
    let space = match SubspaceBasis::parse(&text) {
        Ok(s) => s,
        Err(e) => return Run::failed(&e, Some(path)),
    };
    let mut report = Report::new();
    let status = match body(&space, &mut report) {
        Ok(s) => s,
        Err(e) => return Run::failed(&e, None),
    };
    let doc = render(&report, args.output.json);
    let stdout = match &args.output.out {
        Some(out) => match write_file(out, &doc) {
            Ok(()) => String::new(),
            Err(run) => return run,
        },
        None => doc,
    };
    Run { status, stdout, stderr: String::new() }
}

fn describe(space: &SubspaceBasis, command: &str, report: &mut Report) {
    report
        .set("command", command)
        .set("field", space.field().descriptor())
        .set("shape", format!("{}x{}", space.rows(), space.cols()))
        .set("dim", space.dim());
}

/// Square view used by the analysis checks: zero rows are appended when
/// `m < n`, and the space is transposed first when `m > n`.
pub fn square_view(space: &SubspaceBasis) -> Result<SubspaceBasis, Error> {
    if space.rows() <= space.cols() {
        space.pad_to_square()
    } else {
        SubspaceBasis::from_independent(space.basis().iter().map(|b| b.transpose()).collect())?.pad_to_square()
    }
}

fn run_construct(args: &ConstructArgs) -> Run {
    let (m, n) = args.shape;
    let space = match construct::truncated_construction(&args.field, m, n, args.rank) {
        Ok(s) => s,
        Err(e) => return Run::failed(&e, None),
    };
    let file = space.to_string();
    match &args.out {
        Some(path) => {
            if let Err(run) = write_file(path, &file) {
                return run;
            }
            let mut report = Report::new();
            describe(&space, "construct", &mut report);
            report.set("rank", args.rank).set("verified", true);
            Run { status: ExitStatus::Success, stdout: render(&report, args.json), stderr: String::new() }
        }
        None => Run { status: ExitStatus::Success, stdout: file, stderr: String::new() },
    }
}

fn verify(space: &SubspaceBasis, rank: Option<usize>, budget: Option<u64>, report: &mut Report) -> Result<ExitStatus, Error> {
    describe(space, "verify", report);
    let budget = budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let expected = match rank {
        Some(r) => r,
        // any constant rank will do: take the rank of the first basis element
        None => space.basis()[0].rank(),
    };
    let check = space.is_constant_rank_within(expected, budget)?;
    report.set("rank", expected).set("holds", check.holds);
    match &check.witness {
        Some(w) => report.set("witness", w.inline()).set("witness_rank", w.rank()),
        None => report.set("witness", None::<String>),
    };
    Ok(if check.holds { ExitStatus::Success } else { ExitStatus::Violated })
}

fn census(space: &SubspaceBasis, budget: Option<u64>, report: &mut Report) -> Result<ExitStatus, Error> {
    describe(space, "census", report);
    let profile = space.rank_profile_within(budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET))?;
    report.set("elements", profile.total());
    for (s, &count) in profile.counts.iter().enumerate() {
        report.set(&format!("rank_{s}"), count);
    }
    report.set("max_rank", profile.max_rank());
    match profile.constant_rank() {
        Some(r) => {
            let bound = analysis::check_general_bound(space)?;
            report
                .set("constant_rank", r)
                .set("general_bound", space.rows() + space.cols() - r)
                .set("within_general_bound", bound.within_general_bound)
                .set("within_n", bound.within_n)
                .set("field_hypothesis", bound.field_hypothesis);
            Ok(if bound.within_general_bound { ExitStatus::Success } else { ExitStatus::Violated })
        }
        None => {
            report.set("constant_rank", None::<usize>);
            Ok(ExitStatus::Success)
        }
    }
}

fn lemma_check(space: &SubspaceBasis, options: ScanOptions, report: &mut Report) -> Result<ExitStatus, Error> {
    describe(space, "lemma-check", report);
    let square = square_view(space)?;
    let lemma1 = analysis::check_image_of_kernel(&square, options)?;
    report
        .set("max_rank", lemma1.max_rank)
        .set("sampled", options.sample)
        .set("seed", options.seed)
        .set("elements_checked", lemma1.elements_checked)
        .set("lemma1_holds", lemma1.holds)
        .set("violations", lemma1.violation_count);
    for (i, v) in lemma1.violations.iter().enumerate() {
        report.set(
            &format!("violation_{}", i + 1),
            format!("A=[{}] u=[{}] B=[{}]", v.a.inline(), v.u.inline(), v.b.inline()),
        );
    }
    let lemma2 = match analysis::check_lemma2_bound(&square) {
        Ok(l) => l,
        Err(Error::NotConstantRank) => {
            report.set("constant_rank", None::<usize>);
            return Ok(ExitStatus::Violated);
        }
        Err(e) => return Err(e),
    };
    report
        .set("constant_rank", lemma2.rank)
        .set("min_r_u", lemma2.min_r_u)
        .set("lemma2_applicable", lemma2.applicable)
        .set("lemma2_bound", lemma2.bound)
        .set("lemma2_bound_met", lemma2.bound_met)
        .set("lemma2_holds", lemma2.holds)
        .set("points_scanned", lemma2.points_scanned);
    Ok(if lemma1.holds && lemma2.holds { ExitStatus::Success } else { ExitStatus::Violated })
}

fn counting(space: &SubspaceBasis, report: &mut Report) -> Result<ExitStatus, Error> {
    describe(space, "counting", report);
    let square = square_view(space)?;
    let c = match analysis::counting_report(&square) {
        Ok(c) => c,
        Err(Error::NotConstantRank) => {
            report.set("constant_rank", None::<usize>);
            return Ok(ExitStatus::Violated);
        }
        Err(e) => return Err(e),
    };
    let identity = c.identity_holds();
    report
        .set("q", c.q)
        .set("n", c.n)
        .set("r", c.r)
        .set("d", c.d)
        .set("omega_elements", c.omega_by_elements)
        .set("omega_vectors", c.omega_by_vectors)
        .set("identity_holds", identity)
        .set("lhs_valuation", c.lhs_valuation)
        .set("min_r_u", c.rhs_min_exponent)
        .set("contradiction", c.contradiction);
    Ok(if identity { ExitStatus::Success } else { ExitStatus::Violated })
}

fn problem_report(args: &ProblemArgs, command: &str) -> Report {
    let mut report = Report::new();
    report
        .set("command", command)
        .set("field", args.field.descriptor())
        .set("shape", format!("{}x{}", args.shape.0, args.shape.1))
        .set("rank", args.rank)
        .set("dim", args.dim);
    report
}

fn run_oracle(args: &ProblemArgs) -> Run {
    let (m, n) = args.shape;
    let limit = args.budget.unwrap_or(search::ORACLE_LIMIT);
    let count = match search::brute_force_census_within(&args.field, m, n, args.rank, args.dim, limit) {
        Ok(c) => c,
        Err(e) => return Run::failed(&e, None),
    };
    let mut report = problem_report(args, "oracle");
    let total = search::gaussian_binomial(args.field.q(), (m * n) as u32, args.dim as u32);
    report
        .set("subspaces_enumerated", total)
        .set("status", if count > 0 { "found" } else { "exhausted_none" })
        .set("found_count", count);
    let doc = render(&report, args.output.json);
    finish(doc, args.output.out.as_deref(), ExitStatus::Success)
}

fn finish(doc: String, out: Option<&Path>, status: ExitStatus) -> Run {
    match out {
        Some(path) => match write_file(path, &doc) {
            Ok(()) => Run { status, stdout: String::new(), stderr: String::new() },
            Err(run) => run,
        },
        None => Run { status, stdout: doc, stderr: String::new() },
    }
}

/// The report goes to stdout; a witness, if any, is written to `--out` in
/// the subspace file format and also listed inline in the report.
fn run_search(args: &SearchArgs) -> Run {
    let p = &args.problem;
    let (m, n) = p.shape;
    let mut params = SearchParams::new(&p.field, m, n, p.rank, p.dim)
        .workers(args.workers)
        .exhaust(args.all);
    if let Some(b) = p.budget {
        params = params.budget(b);
    }
    let outcome = match search::search_constant_rank(&params) {
        Ok(o) => o,
        Err(e) => return Run::failed(&e, None),
    };
    let mut report = problem_report(p, "search");
    report
        .set("status", outcome.status.as_str())
        .set("found_count", outcome.found_count)
        .set("nodes_explored", outcome.nodes_explored)
        .set("workers", args.workers)
        .set("exhaustive", args.all);
    let mut status = match outcome.status {
        SearchStatus::BudgetExceeded => ExitStatus::Budget,
        _ => ExitStatus::Success,
    };
    if let Some(w) = &outcome.witness {
        for (i, b) in w.basis().iter().enumerate() {
            report.set(&format!("witness_{}", i + 1), b.inline());
        }
        match witness_analysis(w, &mut report) {
            Ok(false) => status = ExitStatus::Violated,
            Ok(true) => {}
            Err(e) => return Run::failed(&e, None),
        }
        if let Some(path) = &p.output.out {
            if let Err(run) = write_file(path, &w.to_string()) {
                return run;
            }
        }
    }
    Run { status, stdout: render(&report, p.output.json), stderr: String::new() }
}

/// Bound checks on a found subspace. Returns `false` if the witness would
/// break a proven bound.
fn witness_analysis(w: &SubspaceBasis, report: &mut Report) -> Result<bool, Error> {
    let bound = analysis::check_general_bound(w)?;
    let square = square_view(w)?;
    let lemma1 = analysis::check_image_of_kernel(&square, ScanOptions::default())?;
    let n = w.rows().max(w.cols());
    let beyond_n = w.dim() > n;
    let consistent = bound.within_general_bound && !(bound.field_hypothesis && beyond_n);
    report
        .set("within_general_bound", bound.within_general_bound)
        .set("within_n", !beyond_n)
        .set("field_hypothesis", bound.field_hypothesis)
        .set("lemma1_holds", lemma1.holds)
        .set("violations", lemma1.violation_count)
        .set("bounds_consistent", consistent);
    Ok(consistent)
}
