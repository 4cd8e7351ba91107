//! `mlv`: products, maps, values and identity checks from the command line.

mod suites;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mlv_core::algebra::{parse_poly, print_poly, Family, ParseOptions};
use mlv_core::eval::{EvalConfig, Evaluator, DEFAULT_TOL};
use mlv_core::formulas::{summarize, verify_all, VerificationReport};
use mlv_core::{level, mlv, AlgebraError, EvalError, NCPoly};
use serde_json::json;

use suites::Suite;

#[derive(Parser, Debug)]
#[command(
    name = "mlv",
    version,
    about = "Double-shuffle algebra and sum formulas for multiple L-values"
)]
struct Cli {
    /// Level N; inferred from the expression when omitted.
    #[arg(long, global = true, env = "MLV_LEVEL")]
    level: Option<u32>,
    /// Series truncation M for the direct-summation route.
    #[arg(long, global = true, env = "MLV_TRUNC")]
    trunc: Option<u64>,
    /// Residual ceiling for numerical checks that carry no family threshold.
    #[arg(long, global = true, env = "MLV_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, env = "MLV_FORMAT", default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for verification (default: all cores).
    #[arg(long, global = true, env = "MLV_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply two expressions.
    Product {
        #[arg(long, value_enum)]
        op: ProductOp,
        lhs: String,
        rhs: String,
    },
    /// Apply a twist map or a regularization.
    Map {
        #[arg(long, value_enum)]
        which: MapKind,
        expr: String,
    },
    /// Evaluate `L_∗` (MLV expressions) or `ζ_N` (level-N expressions).
    Eval {
        expr: String,
        /// Evaluate MLV words with `L_⧢` instead of `L_∗`.
        #[arg(long)]
        shuffle: bool,
        /// Also sum the series directly and fail if the two disagree.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, env = "MLV_SUITE", default_value_t = Suite::All)]
        suite: Suite,
        /// Largest weight k.
        #[arg(long, env = "MLV_KMAX", default_value_t = 6)]
        kmax: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProductOp {
    Stuffle,
    Shuffle,
    #[value(name = "stuffleN", alias = "stuffle-n")]
    StuffleN,
    #[value(name = "shuffleN", alias = "shuffle-n")]
    ShuffleN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    #[value(name = "I")]
    I,
    #[value(name = "Iinv")]
    IInv,
    #[value(name = "J")]
    J,
    #[value(name = "Jinv")]
    JInv,
    RegStar,
    RegShuffle,
}

#[derive(Debug)]
enum CliError {
    Parse { input: String, err: mlv_core::ParseError },
    Domain(String),
    Divergent(String),
    Failed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed => 1,
            CliError::Parse { .. } => 2,
            CliError::Domain(_) => 3,
            CliError::Divergent(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { input, err } => write!(f, "{err}\n{}", err.caret(input)),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Divergent(m) => write!(f, "divergent: {m}"),
            CliError::Failed => f.write_str("verification failed"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Divergent(_) => CliError::Divergent(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// Parses every input in one alphabet; without `--level` the largest
/// inferred level wins.
fn parse_all(inputs: &[&str], family: Option<Family>, level: Option<u32>) -> Result<Vec<NCPoly>, CliError> {
    let parse = |s: &str, level| {
        parse_poly(s, ParseOptions { level, family }).map_err(|err| CliError::Parse {
            input: s.to_string(),
            err,
        })
    };
    let level = match level {
        Some(n) => n,
        None => {
            let mut n = 1;
            for s in inputs {
                n = n.max(parse(s, None)?.alphabet().level());
            }
            n
        }
    };
    inputs.iter().map(|s| parse(s, Some(level))).collect()
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
}

fn cmd_product(cli: &Cli, op: ProductOp, lhs: &str, rhs: &str) -> Result<(), CliError> {
    let family = match op {
        ProductOp::Stuffle | ProductOp::Shuffle => Family::Mlv,
        ProductOp::StuffleN | ProductOp::ShuffleN => Family::Level,
    };
    let ps = parse_all(&[lhs, rhs], Some(family), cli.level)?;
    let result = match op {
        ProductOp::Stuffle => mlv::stuffle(&ps[0], &ps[1])?,
        ProductOp::Shuffle => mlv::shuffle(&ps[0], &ps[1])?,
        ProductOp::StuffleN => level::stuffle_n(&ps[0], &ps[1])?,
        ProductOp::ShuffleN => level::shuffle_n(&ps[0], &ps[1])?,
    };
    let text = print_poly(&result);
    emit(
        cli.format,
        text.clone(),
        json!({ "result": text, "level": result.alphabet().level() }),
    );
    Ok(())
}

fn cmd_map(cli: &Cli, which: MapKind, expr: &str) -> Result<(), CliError> {
    let family = match which {
        MapKind::J | MapKind::JInv => Family::Level,
        _ => Family::Mlv,
    };
    let p = parse_all(&[expr], Some(family), cli.level)?.remove(0);
    let image = match which {
        MapKind::I => mlv::map_i(&p)?,
        MapKind::IInv => mlv::map_i_inv(&p)?,
        MapKind::J => level::map_j(&p)?,
        MapKind::JInv => level::map_j_inv(&p)?,
        MapKind::RegStar | MapKind::RegShuffle => {
            let product = if which == MapKind::RegStar {
                mlv::Product::Stuffle
            } else {
                mlv::Product::Shuffle
            };
            let reg = mlv::regularize(&p, product)?;
            let parts: Vec<String> = reg.coeffs.iter().map(print_poly).collect();
            let text = parts
                .iter()
                .enumerate()
                .map(|(i, c)| format!("deg{i}: {c}"))
                .collect::<Vec<_>>()
                .join(", ");
            emit(cli.format, text, json!({ "degrees": parts }));
            return Ok(());
        }
    };
    let text = print_poly(&image);
    emit(cli.format, text.clone(), json!({ "result": text }));
    Ok(())
}

fn config(cli: &Cli, level: u32) -> EvalConfig {
    EvalConfig {
        level,
        trunc: cli.trunc,
        tol: cli.tol,
        cross_check: false,
    }
}

fn cmd_eval(cli: &Cli, expr: &str, shuffle: bool, cross_check: bool) -> Result<(), CliError> {
    let p = parse_all(&[expr], None, cli.level)?.remove(0);
    let level = p.alphabet().level();
    let cfg = config(cli, level).with_cross_check(cross_check);
    let ev = Evaluator::new(cfg)?;
    let value = match (p.alphabet().is_mlv(), shuffle) {
        (true, false) => ev.eval_poly(&p)?,
        (true, true) => ev.eval_poly_shuffle(&p)?,
        (false, false) => ev.eval_zeta_poly(&p)?,
        (false, true) => return Err(CliError::Domain("--shuffle applies to MLV expressions only".into())),
    };
    let depth = p.terms().map(|(w, _)| w.depth()).max().unwrap_or(0);
    let trunc = cfg.trunc_for(depth);
    if value.err > cli.tol {
        eprintln!("warning: error bound {:.2e} exceeds --tol {:.2e}", value.err, cli.tol);
    }
    let text = format!("re = {:.16}, im = {:.16}, err = {:.2e}", value.re, value.im, value.err);
    emit(
        cli.format,
        text,
        json!({ "value": { "re": value.re, "im": value.im }, "err": value.err, "trunc": trunc, "level": level }),
    );
    Ok(())
}

fn cmd_verify(cli: &Cli, suite: Suite, kmax: u32) -> Result<(), CliError> {
    let levels: Vec<u32> = match cli.level {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Domain(e.to_string()))?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for &level in &levels {
        let instances = pool
            .install(|| suites::instances(suite, level, kmax))
            .map_err(CliError::Domain)?;
        let batch = pool.install(|| verify_all(&instances, config(cli, level)))?;
        for r in &batch {
            match cli.format {
                Format::Text => println!("{r}"),
                Format::Json => println!("{}", serde_json::to_string(r).expect("reports serialize")),
            }
        }
        reports.extend(batch);
    }
    let (passed, failed) = summarize(&reports);
    emit(
        cli.format,
        format!("summary: {passed} passed, {failed} failed"),
        json!({ "summary": { "passed": passed, "failed": failed } }),
    );
    if failed > 0 {
        Err(CliError::Failed)
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.level == Some(0) {
        return Err(CliError::Domain("--level must be at least 1".into()));
    }
    match &cli.command {
        Command::Product { op, lhs, rhs } => cmd_product(cli, *op, lhs, rhs),
        Command::Map { which, expr } => cmd_map(cli, *which, expr),
        Command::Eval {
            expr,
            shuffle,
            cross_check,
        } => cmd_eval(cli, expr, *shuffle, *cross_check),
        Command::Verify { suite, kmax } => cmd_verify(cli, *suite, *kmax),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("{e}");
            }
            ExitCode::from(e.code())
        }
    }
}
