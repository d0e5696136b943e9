//! Command-line front end for the societies library.
//!
//! Five subcommands: `seq` prints raw sequence values, `table` compares
//! exact values against their asymptotic estimates, `rank` prints exact
//! rank distributions, `enum` lists structures in canonical notation, and
//! `verify` runs the cross-module check suite. Arguments can be given
//! positionally (`seq H 0 9 bfile`) or by flag (`seq H --from 0 --to 9`).
//!
//! Data goes to standard output; diagnostics go to standard error; the
//! exit status is zero exactly when the command's contract was satisfied.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;

use societies::{asymptotics, enumerate, rank, verify};
use societies::{AsymptoticEstimate, Count, SequenceKind, SequenceTable};

#[derive(Parser)]
#[command(
    name = "societies",
    version,
    about = "Exact and asymptotic computations for hierarchical orderings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print sequence values, one per index, in b-file, csv, or json form.
    Seq(SeqArgs),
    /// Print exact values next to their asymptotic estimates and ratios.
    Table(TableArgs),
    /// Print the exact rank distribution and mean rank for one pool size.
    Rank(RankArgs),
    /// List every structure of one size, one per line, with a count trailer.
    Enum(EnumArgs),
    /// Run the self-verification suite and report each check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SeqArgs {
    /// Which sequence: B, H, U, HH, or C.
    kind: KindArg,
    /// First index (or use --from).
    #[arg(value_name = "FROM")]
    from_pos: Option<usize>,
    /// Last index, inclusive (or use --to).
    #[arg(value_name = "TO")]
    to_pos: Option<usize>,
    /// Output format (or use --format); defaults to bfile.
    #[arg(value_name = "FORMAT")]
    format_pos: Option<FormatArg>,
    #[arg(long, conflicts_with = "from_pos")]
    from: Option<usize>,
    #[arg(long, conflicts_with = "to_pos")]
    to: Option<usize>,
    #[arg(long, conflicts_with = "format_pos")]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct TableArgs {
    /// Which sequence: B, H, or U.
    kind: TableKindArg,
    /// First index (or use --from); estimates need n >= 1.
    #[arg(value_name = "FROM")]
    from_pos: Option<usize>,
    /// Last index, inclusive (or use --to).
    #[arg(value_name = "TO")]
    to_pos: Option<usize>,
    #[arg(long, conflicts_with = "from_pos")]
    from: Option<usize>,
    #[arg(long, conflicts_with = "to_pos")]
    to: Option<usize>,
    /// Row format; defaults to plain text columns.
    #[arg(long, value_enum, default_value_t = TableFormatArg::Text)]
    format: TableFormatArg,
    /// Print "log10 ~ ..." instead of exact values longer than this.
    #[arg(long, default_value_t = 1_000_000)]
    max_digits: usize,
}

#[derive(Args)]
struct RankArgs {
    /// Pool size n.
    n: usize,
    /// labeled or unlabeled (or use --model).
    #[arg(value_name = "MODEL")]
    model_pos: Option<ModelArg>,
    #[arg(long, conflicts_with = "model_pos")]
    model: Option<ModelArg>,
}

#[derive(Args)]
struct EnumArgs {
    /// Pool size n.
    n: usize,
    /// labeled or unlabeled (or use --model).
    #[arg(value_name = "MODEL")]
    model_pos: Option<ModelArg>,
    #[arg(long, conflicts_with = "model_pos")]
    model: Option<ModelArg>,
}

#[derive(Args)]
struct VerifyArgs {
    /// quick or full (or use --level); defaults to quick.
    #[arg(value_name = "LEVEL")]
    level_pos: Option<LevelArg>,
    #[arg(long, conflicts_with = "level_pos")]
    level: Option<LevelArg>,
    /// Seed for the sampling checks.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Corrupt one table entry so the suite must fail; test hook.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// Hierarchies of n labeled members (ordered Bell).
    #[value(name = "B", alias = "b")]
    B,
    /// Hierarchical orderings of n labeled members.
    #[value(name = "H", alias = "h")]
    H,
    /// Hierarchical orderings of n unlabeled members.
    #[value(name = "U", alias = "u")]
    U,
    /// Nested hierarchical orderings (two further exponentials).
    #[value(name = "HH", alias = "hh")]
    Hh,
    /// Compositions of n (hierarchies of unlabeled members).
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKindArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "U", alias = "u")]
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// "n value" lines, no header.
    Bfile,
    /// "n,value" rows under a header line.
    Csv,
    /// Array of {n, exact} objects with exact as a string.
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormatArg {
    /// "n exact estimate ratio" columns.
    Text,
    /// "n,exact,asymptotic,ratio" rows under a header line.
    Csv,
    /// Array of {n, exact, asymptotic?, ratio} objects.
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Labeled,
    Unlabeled,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// One row of `seq` or `table` output in json form. The exact value is a
/// decimal string, never a number, so nothing is rounded; the asymptotic
/// estimate is omitted where it overflows a float.
#[derive(Serialize)]
struct OutputRecord {
    n: usize,
    exact: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptotic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

/// Why a command stopped early: a problem worth reporting, or the
/// output pipe closing under us, which any line-oriented tool treats as
/// a normal way to finish.
enum Failure {
    Message(String),
    PipeClosed,
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::Message(message)
    }
}

impl From<&str> for Failure {
    fn from(message: &str) -> Self {
        Failure::Message(message.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(error: io::Error) -> Self {
        if error.kind() == io::ErrorKind::BrokenPipe {
            Failure::PipeClosed
        } else {
            Failure::Message(format!("cannot write output: {error}"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(Failure::PipeClosed) => ExitCode::SUCCESS,
        Err(Failure::Message(message)) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode, Failure> {
    match command {
        Command::Seq(args) => cmd_seq(args, out)?,
        Command::Table(args) => cmd_table(args, out)?,
        Command::Rank(args) => cmd_rank(args, out)?,
        Command::Enum(args) => cmd_enum(args, out)?,
        Command::Verify(args) => return cmd_verify(args, out),
    }
    Ok(ExitCode::SUCCESS)
}

fn resolve_range(
    from_pos: Option<usize>,
    to_pos: Option<usize>,
    from_flag: Option<usize>,
    to_flag: Option<usize>,
) -> Result<(usize, usize), String> {
    let from = from_flag
        .or(from_pos)
        .ok_or("missing start index: give FROM positionally or --from")?;
    let to = to_flag
        .or(to_pos)
        .ok_or("missing end index: give TO positionally or --to")?;
    if from > to {
        return Err(format!("empty range: start {from} is past end {to}"));
    }
    Ok((from, to))
}

fn cmd_seq(args: SeqArgs, out: &mut impl Write) -> Result<(), Failure> {
    let (from, to) = resolve_range(args.from_pos, args.to_pos, args.from, args.to)?;
    let format = args.format.or(args.format_pos).unwrap_or(FormatArg::Bfile);
    let kind = match args.kind {
        KindArg::B => SequenceKind::OrderedBell,
        KindArg::H => SequenceKind::Hierarchical,
        KindArg::U => SequenceKind::Unlabeled,
        KindArg::Hh => SequenceKind::NestedHierarchical,
        KindArg::C => SequenceKind::Compositions,
    };
    let mut table = SequenceTable::new(kind);
    table.extend_to(to);
    match format {
        FormatArg::Bfile => {
            for n in from..=to {
                writeln!(out, "{n} {}", table.get(n).expect("filled"))?;
            }
        }
        FormatArg::Csv => {
            writeln!(out, "n,value")?;
            for n in from..=to {
                writeln!(out, "{n},{}", table.get(n).expect("filled"))?;
            }
        }
        FormatArg::Json => {
            let records: Vec<OutputRecord> = (from..=to)
                .map(|n| OutputRecord {
                    n,
                    exact: table.get(n).expect("filled").to_string(),
                    asymptotic: None,
                    ratio: None,
                })
                .collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string(&records).expect("serializable")
            )?;
        }
    }
    Ok(())
}

/// Full decimal when it fits the digit budget, otherwise its magnitude.
fn exact_cell(value: &Count, max_digits: usize) -> String {
    // A k-bit number has about k log10(2) digits; only go near the exact
    // string when the bound is inconclusive.
    let digit_guess = value.bits() as f64 * std::f64::consts::LOG10_2;
    let over = if digit_guess > max_digits as f64 + 2.0 {
        true
    } else if digit_guess < max_digits as f64 - 2.0 {
        false
    } else {
        value.to_string().len() > max_digits
    };
    if over {
        format!(
            "log10 ≈ {:.4}",
            asymptotics::log_count(value) / std::f64::consts::LN_10
        )
    } else {
        value.to_string()
    }
}

/// The estimate as a plain number while that stays readable, then in
/// scientific notation built from its log, which never overflows.
fn estimate_cell(estimate: AsymptoticEstimate) -> String {
    if estimate.log_value() < 36.8 {
        format!("{}", estimate.value())
    } else {
        let (mantissa, exponent) = estimate.decimal_parts();
        format!("{mantissa:.10}e{exponent}")
    }
}

fn cmd_table(args: TableArgs, out: &mut impl Write) -> Result<(), Failure> {
    let (from, to) = resolve_range(args.from_pos, args.to_pos, args.from, args.to)?;
    if from == 0 {
        return Err("estimates are defined for n >= 1; start the table at 1".into());
    }
    let (kind, estimate): (SequenceKind, fn(usize) -> AsymptoticEstimate) = match args.kind {
        TableKindArg::B => (
            SequenceKind::OrderedBell,
            asymptotics::ordered_bell_estimate,
        ),
        TableKindArg::H => (
            SequenceKind::Hierarchical,
            asymptotics::hierarchical_estimate,
        ),
        TableKindArg::U => (SequenceKind::Unlabeled, asymptotics::unlabeled_estimate),
    };
    let mut table = SequenceTable::new(kind);
    table.extend_to(to);
    if args.format == TableFormatArg::Csv {
        writeln!(out, "n,exact,asymptotic,ratio")?;
    }
    let mut records = Vec::new();
    for n in from..=to {
        let exact = table.get(n).expect("filled");
        let est = estimate(n);
        let ratio = est.ratio_to_exact(exact);
        match args.format {
            TableFormatArg::Text => {
                writeln!(
                    out,
                    "{n} {} {} {ratio}",
                    exact_cell(exact, args.max_digits),
                    estimate_cell(est)
                )?;
            }
            TableFormatArg::Csv => {
                writeln!(
                    out,
                    "{n},{},{},{ratio}",
                    exact_cell(exact, args.max_digits),
                    estimate_cell(est)
                )?;
            }
            TableFormatArg::Json => {
                records.push(OutputRecord {
                    n,
                    exact: exact.to_string(),
                    asymptotic: Some(est.value()).filter(|v| v.is_finite()),
                    ratio: Some(ratio),
                });
            }
        }
    }
    if args.format == TableFormatArg::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&records).expect("serializable")
        )?;
    }
    Ok(())
}

fn cmd_rank(args: RankArgs, out: &mut impl Write) -> Result<(), Failure> {
    let model = args
        .model
        .or(args.model_pos)
        .ok_or("missing model: give labeled or unlabeled, positionally or --model")?;
    if args.n == 0 {
        return Err("rank distributions need n >= 1".into());
    }
    let dist = match model {
        ModelArg::Labeled => rank::labeled_rank_distribution(args.n),
        ModelArg::Unlabeled => rank::unlabeled_rank_distribution(args.n),
    };
    let entries: Vec<String> = (1..=args.n)
        .map(|r| format!("{r}: {}", dist.probability(r)))
        .collect();
    writeln!(out, "{}, mean {}", entries.join(", "), dist.mean())?;
    if matches!(model, ModelArg::Labeled) {
        let mean = dist.mean().to_f64().ok_or("mean does not fit a float")?;
        writeln!(
            out,
            "mean ≈ {:.6}, asymptote 0.36067 n = {:.6}",
            mean,
            0.36067 * args.n as f64
        )?;
    }
    Ok(())
}

fn cmd_enum(args: EnumArgs, out: &mut impl Write) -> Result<(), Failure> {
    let model = args
        .model
        .or(args.model_pos)
        .ok_or("missing model: give labeled or unlabeled, positionally or --model")?;
    let mut count = 0usize;
    match model {
        ModelArg::Labeled => {
            for ordering in enumerate::orderings(args.n).map_err(|e| e.to_string())? {
                writeln!(out, "{ordering}")?;
                count += 1;
            }
        }
        ModelArg::Unlabeled => {
            for shape in enumerate::unlabeled_orderings(args.n).map_err(|e| e.to_string())? {
                writeln!(out, "{shape}")?;
                count += 1;
            }
        }
    }
    writeln!(out, "count: {count}")?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let level = match args.level.or(args.level_pos).unwrap_or(LevelArg::Quick) {
        LevelArg::Quick => verify::Level::Quick,
        LevelArg::Full => verify::Level::Full,
    };
    let options = verify::Options {
        level,
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let report = verify::run(&options);
    for check in report.checks() {
        let status = if check.passed { "pass" } else { "FAIL" };
        writeln!(out, "{status} {} - {}", check.name, check.detail)?;
    }
    let failures = report.failures().count();
    writeln!(
        out,
        "checks: {}, failures: {failures}",
        report.checks().len()
    )?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
