//! Command-line surface for the exact state-identity toolkit.
//!
//! Exit codes: 0 all checks pass, 1 a verification cell failed, 2 usage or
//! input error, 3 a resource budget was exceeded.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qsi::analytic::{
    gtest_report, p_grid, perm_test_report, region_boundary, swap_vs_perm, ChosenTest,
};
use qsi::checks::{run_suite, Suite, SuiteReport, VerifyOptions};
use qsi::exact::scalar::{format_rat, parse_rat, rat_to_f64, rat_u};
use qsi::ist::{
    click_lower_bound, ist_accept_prob, ist_soundness_bound, ist_soundness_exact, Arrangement,
};
use qsi::partitions::{partitions_of, Partition};
use qsi::symgroup::{SubgroupSpec, DEFAULT_ELEMENT_BUDGET};
use qsi::tensor::{group_projector, hs, rho_states, side_checked, DEFAULT_DIM_BUDGET};
use qsi::{Error, Rat};

#[derive(Parser)]
#[command(
    name = "qsi",
    about = "Exact verification toolkit for quantum state identity tests",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Cap on the tensor-space dimension d^n.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_BUDGET)]
    dim_budget: u128,

    /// Cap on expanded subgroup element counts.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_BUDGET)]
    elem_budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal-test tables: completeness, soundness, and average success.
    Soundness(SoundnessArgs),
    /// Subgroup-test soundness via the multiplicity formula, with an
    /// exact trace cross-check when the dimension budget allows.
    Gtest(GtestArgs),
    /// Iterated swap tree: exact simulation, recurrence bound, and the
    /// wreath-projector trace.
    Ist(IstArgs),
    /// Achievable (type I, type II) error-region boundary samples.
    Region(RegionArgs),
    /// Repeated pairwise swap tests versus the joint optimal test.
    CompareSwap(CompareSwapArgs),
    /// Run a verification suite; exits nonzero on any failing cell.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SoundnessArgs {
    /// Promise partition, e.g. "3,1". Mutually exclusive with --n.
    #[arg(long, value_parser = Partition::from_str, conflicts_with = "n")]
    mu: Option<Partition>,

    /// Sweep every promise with at least two species on n registers.
    #[arg(long)]
    n: Option<u32>,

    /// Prior "p/q" for the all-equal case; default sweeps the prior grid.
    #[arg(long, value_parser = parse_rat)]
    p: Option<Rat>,

    /// Local dimension; defaults to the species count of each promise.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Args)]
struct GtestArgs {
    /// Subgroup: "symmetric", "cyclic", "wreath2", or tagged JSON such as
    /// '{"cyclic":4}' or '{"generators":[[2,1,3]]}'.
    #[arg(long)]
    group: String,

    /// Promise partition, e.g. "2,2".
    #[arg(long, value_parser = Partition::from_str)]
    mu: Partition,

    /// Local dimension; defaults to the species count.
    #[arg(long)]
    d: Option<u32>,

    /// Skip the tensor trace cross-check even when within budget.
    #[arg(long)]
    no_cross_check: bool,
}

#[derive(Args)]
struct IstArgs {
    /// Concrete arrangement, e.g. "1,0,0,0,1,0,1,1".
    #[arg(long, value_parser = Arrangement::from_str, conflicts_with_all = ["n", "h"])]
    word: Option<Arrangement>,

    /// Number of registers (a power of two).
    #[arg(long, requires = "h")]
    n: Option<u32>,

    /// Number of orthogonal states, 1..=n/2.
    #[arg(long, requires = "n")]
    h: Option<u32>,

    /// Local dimension.
    #[arg(long, default_value_t = 2)]
    d: u32,
}

#[derive(Args)]
struct RegionArgs {
    /// Promise partition, e.g. "3,1".
    #[arg(long, value_parser = Partition::from_str)]
    mu: Partition,

    /// Number of equal alpha steps across [0, 1].
    #[arg(long, default_value_t = 8)]
    samples: u32,
}

#[derive(Args)]
struct CompareSwapArgs {
    /// Largest number of pairs tabulated.
    #[arg(long, default_value_t = 10)]
    n_max: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: SuiteArg,

    /// Override the sweep's register ceiling.
    #[arg(long)]
    n_max: Option<u32>,

    /// Override the sweep's local-dimension ceiling.
    #[arg(long)]
    d_max: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Lemma1,
    Sdp,
    Circle,
    Wreath,
    Gamma,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Lemma1 => Suite::Lemma1,
            SuiteArg::Sdp => Suite::Sdp,
            SuiteArg::Circle => Suite::Circle,
            SuiteArg::Wreath => Suite::Wreath,
            SuiteArg::Gamma => Suite::Gamma,
            SuiteArg::All => Suite::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = VerifyOptions { dim_budget: cli.dim_budget, elem_budget: cli.elem_budget };
    let result = match &cli.command {
        Command::Soundness(args) => run_soundness(args, &cli),
        Command::Gtest(args) => run_gtest(args, &cli, opts),
        Command::Ist(args) => run_ist(args, &cli, opts),
        Command::Region(args) => run_region(args, &cli),
        Command::CompareSwap(args) => run_compare_swap(args, &cli),
        Command::Verify(args) => run_verify(args, &cli, opts),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::DimBudget { .. } | Error::ElementBudget { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.out {
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
    }
}

fn json_doc(command: &str, body: serde_json::Value) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), json!(1));
    doc.insert("command".into(), json!(command));
    match body {
        serde_json::Value::Object(map) => doc.extend(map),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap();
    text.push('\n');
    text
}

fn csv_from_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).unwrap();
    for row in rows {
        w.write_record(row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn table_from_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String], widths: &[usize]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = String::new();
    let head: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    writeln!(out, "{}", fmt_row(&head, &widths)).unwrap();
    for row in rows {
        writeln!(out, "{}", fmt_row(row, &widths)).unwrap();
    }
    out
}

#[derive(Serialize)]
struct SoundnessRow {
    n: u32,
    d: u32,
    mu: Partition,
    p: String,
    completeness: String,
    soundness: String,
    avg: String,
    /// Decimal rendering of `avg`; approximate, for reading only.
    avg_approx: f64,
    test: String,
    tie: bool,
}

fn run_soundness(args: &SoundnessArgs, cli: &Cli) -> Result<ExitCode, Error> {
    let mus: Vec<Partition> = match (&args.mu, args.n) {
        (Some(mu), None) => vec![mu.clone()],
        (None, Some(n)) => partitions_of(n, n as usize)
            .into_iter()
            .filter(|mu| mu.part(1) > 0)
            .collect(),
        _ => return Err(Error::Parse("pass exactly one of --mu or --n".into())),
    };
    let mut rows = Vec::new();
    for mu in &mus {
        let d = args.d.unwrap_or(mu.len() as u32);
        if (d as usize) < mu.len() {
            return Err(Error::Domain(format!("{mu} has more than d = {d} species")));
        }
        let priors = match &args.p {
            Some(p) => vec![p.clone()],
            None => p_grid(mu),
        };
        for p in priors {
            let report = perm_test_report(mu, &p)?;
            rows.push(SoundnessRow {
                n: mu.size(),
                d,
                mu: mu.clone(),
                p: format_rat(&p),
                completeness: format_rat(&report.completeness),
                soundness: format_rat(&report.soundness),
                avg: format_rat(&report.avg_success),
                avg_approx: rat_to_f64(&report.avg_success),
                test: match report.chosen_test {
                    ChosenTest::Permutation => "permutation".into(),
                    ChosenTest::Trivial => "trivial".into(),
                    ref other => format!("{other:?}"),
                },
                tie: report.tie,
            });
        }
    }
    let text = match cli.format {
        Format::Json => json_doc("soundness", json!({ "rows": rows })),
        Format::Csv => {
            let header = ["n", "d", "mu", "p", "completeness", "soundness", "avg"];
            let data: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.d.to_string(),
                        r.mu.compact(),
                        r.p.clone(),
                        r.completeness.clone(),
                        r.soundness.clone(),
                        r.avg.clone(),
                    ]
                })
                .collect();
            csv_from_rows(&header, &data)
        }
        Format::Table => {
            let header =
                ["n", "d", "mu", "p", "completeness", "soundness", "avg", "~avg", "test"];
            let data: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.d.to_string(),
                        r.mu.compact(),
                        r.p.clone(),
                        r.completeness.clone(),
                        r.soundness.clone(),
                        r.avg.clone(),
                        format!("{:.6}", r.avg_approx),
                        if r.tie { format!("{} (tie)", r.test) } else { r.test.clone() },
                    ]
                })
                .collect();
            table_from_rows(&header, &data)
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_group(raw: &str, n: u32) -> Result<SubgroupSpec, Error> {
    match raw {
        "symmetric" => Ok(SubgroupSpec::Symmetric(n)),
        "cyclic" => Ok(SubgroupSpec::Cyclic(n)),
        "wreath2" | "iterated_wreath_2" => {
            if !n.is_power_of_two() {
                return Err(Error::Domain(format!(
                    "n = {n} is not a power of two, so no binary wreath group acts on it"
                )));
            }
            Ok(SubgroupSpec::IteratedWreath2(n.trailing_zeros()))
        }
        other => serde_json::from_str::<SubgroupSpec>(other)
            .map_err(|e| Error::Parse(format!("unrecognized group {other:?}: {e}"))),
    }
}

fn run_gtest(args: &GtestArgs, cli: &Cli, opts: VerifyOptions) -> Result<ExitCode, Error> {
    let mu = &args.mu;
    let d = args.d.unwrap_or(mu.len() as u32);
    let spec = parse_group(&args.group, mu.size())?;
    let dim_budget = if args.no_cross_check { 0 } else { opts.dim_budget };
    let report = gtest_report(&spec, mu, d, dim_budget, opts.elem_budget)?;
    let text = match cli.format {
        Format::Json => json_doc("gtest", serde_json::to_value(&report).unwrap()),
        Format::Csv => {
            let header = [
                "group",
                "mu",
                "d",
                "soundness",
                "completeness",
                "trace_soundness",
                "trace_agrees",
            ];
            let row = vec![
                report.spec.label(),
                report.mu.compact(),
                report.d.to_string(),
                format_rat(&report.soundness),
                format_rat(&report.completeness),
                report.trace_soundness.as_ref().map(format_rat).unwrap_or_default(),
                report.trace_agrees.map(|b| b.to_string()).unwrap_or_default(),
            ];
            csv_from_rows(&header, &[row])
        }
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "group         {}", report.spec.label()).unwrap();
            writeln!(out, "mu            {}", report.mu.compact()).unwrap();
            writeln!(out, "d             {}", report.d).unwrap();
            writeln!(out, "soundness     {}", format_rat(&report.soundness)).unwrap();
            writeln!(out, "completeness  {}", format_rat(&report.completeness)).unwrap();
            match &report.trace_soundness {
                Some(t) => {
                    writeln!(out, "trace         {}", format_rat(t)).unwrap();
                    writeln!(out, "agrees        {}", report.trace_agrees.unwrap()).unwrap();
                }
                None => writeln!(out, "trace         skipped (budget)").unwrap(),
            }
            out
        }
    };
    emit(cli, &text)?;
    // a cross-check that ran and disagreed is a verification failure
    if report.trace_agrees == Some(false) {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_ist(args: &IstArgs, cli: &Cli, opts: VerifyOptions) -> Result<ExitCode, Error> {
    let body: serde_json::Value;
    let rows: (Vec<&str>, Vec<String>);
    match (&args.word, args.n, args.h) {
        (Some(word), None, None) => {
            let accept = ist_accept_prob(word, args.d, opts.dim_budget)?;
            let clicks = click_lower_bound(word)?;
            body = json!({
                "n": word.n(),
                "word": word.to_string(),
                "clicks_lower_bound": clicks,
                "accept": format_rat(&accept),
            });
            rows = (
                vec!["n", "word", "clicks_lower_bound", "accept"],
                vec![
                    word.n().to_string(),
                    word.to_string(),
                    clicks.to_string(),
                    format_rat(&accept),
                ],
            );
        }
        (None, Some(n), Some(h)) => {
            let exact = ist_soundness_exact(n, h, args.d, opts.dim_budget)?;
            let bound = ist_soundness_bound(n, h)?;
            // soundness via the wreath projector trace, when it fits
            let wreath = if side_checked(n, args.d, opts.dim_budget).is_ok() {
                let spec = SubgroupSpec::IteratedWreath2(n.trailing_zeros());
                let proj = group_projector(&spec, n, args.d, opts.dim_budget, opts.elem_budget)?;
                let mu = Partition::new(vec![n - h, h])?;
                let states = rho_states(&mu, n, args.d, opts.dim_budget)?;
                Some(rat_u(1) - hs(&proj, &states.rho_neq_twirled)?)
            } else {
                None
            };
            body = json!({
                "n": n,
                "h": h,
                "exact": format_rat(&exact),
                "bound": format_rat(&bound),
                "wreath_trace": wreath.as_ref().map(format_rat),
            });
            rows = (
                vec!["n", "h", "exact", "bound", "wreath_trace"],
                vec![
                    n.to_string(),
                    h.to_string(),
                    format_rat(&exact),
                    format_rat(&bound),
                    wreath.as_ref().map(format_rat).unwrap_or_default(),
                ],
            );
        }
        _ => return Err(Error::Parse("pass either --word or both --n and --h".into())),
    }
    let text = match cli.format {
        Format::Json => json_doc("ist", body),
        Format::Csv => csv_from_rows(&rows.0, &[rows.1]),
        Format::Table => table_from_rows(&rows.0, &[rows.1]),
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_region(args: &RegionArgs, cli: &Cli) -> Result<ExitCode, Error> {
    if args.samples == 0 {
        return Err(Error::Domain("need at least one sample step".into()));
    }
    let mut rows = Vec::new();
    for i in 0..=args.samples {
        let alpha = rat_u(i as u64) / rat_u(args.samples as u64);
        let b = region_boundary(&args.mu, &alpha)?;
        rows.push(vec![
            format_rat(&b.alpha),
            format_rat(&b.beta_low),
            format_rat(&b.beta_high),
        ]);
    }
    let header = ["alpha", "beta_low", "beta_high"];
    let text = match cli.format {
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| json!({ "alpha": r[0], "beta_low": r[1], "beta_high": r[2] }))
                .collect();
            json_doc("region", json!({ "mu": args.mu, "rows": json_rows }))
        }
        Format::Csv => csv_from_rows(&header, &rows),
        Format::Table => table_from_rows(&header, &rows),
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_compare_swap(args: &CompareSwapArgs, cli: &Cli) -> Result<ExitCode, Error> {
    let mut rows = Vec::new();
    for n in 1..=args.n_max {
        let c = swap_vs_perm(n)?;
        rows.push(vec![n.to_string(), format_rat(&c.p_swap), format_rat(&c.p_perm)]);
    }
    let header = ["pairs", "p_swap", "p_perm"];
    let text = match cli.format {
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| json!({ "pairs": r[0], "p_swap": r[1], "p_perm": r[2] }))
                .collect();
            json_doc("compare-swap", json!({ "rows": json_rows }))
        }
        Format::Csv => csv_from_rows(&header, &rows),
        Format::Table => table_from_rows(&header, &rows),
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs, cli: &Cli, opts: VerifyOptions) -> Result<ExitCode, Error> {
    let suites: Vec<SuiteReport> = run_suite(args.suite.into(), args.n_max, args.d_max, opts);
    let all_pass = suites.iter().all(SuiteReport::passed);
    let text = match cli.format {
        Format::Json => {
            let body: Vec<serde_json::Value> = suites
                .iter()
                .map(|s| {
                    json!({
                        "suite": s.suite,
                        "passed": s.passed(),
                        "lines": s.lines,
                    })
                })
                .collect();
            json_doc("verify", json!({ "passed": all_pass, "suites": body }))
        }
        Format::Csv => {
            let header = ["suite", "cell", "pass", "detail"];
            let rows: Vec<Vec<String>> = suites
                .iter()
                .flat_map(|s| {
                    s.lines.iter().map(|l| {
                        vec![
                            s.suite.clone(),
                            l.cell.clone(),
                            l.pass.to_string(),
                            l.detail.clone(),
                        ]
                    })
                })
                .collect();
            csv_from_rows(&header, &rows)
        }
        Format::Table => {
            let mut out = String::new();
            for s in &suites {
                for l in &s.lines {
                    writeln!(
                        out,
                        "{} [{}] {} - {}",
                        if l.pass { "PASS" } else { "FAIL" },
                        s.suite,
                        l.cell,
                        l.detail
                    )
                    .unwrap();
                }
                writeln!(out, "{}", s.summary()).unwrap();
            }
            out
        }
    };
    emit(cli, &text)?;
    if !all_pass {
        let first = suites
            .iter()
            .flat_map(|s| s.failures().map(move |l| (s.suite.clone(), l)))
            .next();
        if let Some((suite, line)) = first {
            eprintln!("verification failed at [{suite}] {}: {}", line.cell, line.detail);
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
