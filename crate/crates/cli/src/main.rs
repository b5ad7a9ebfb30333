use std::path::PathBuf;
use std::process;

use clap::{ArgAction, Args, Parser, Subcommand};
use gkn_core::classical::{legendre_q, ClassicalFunction, Kind};
use gkn_core::exactnum::{laguerre_ld_coefficient, legendre_stirling};
use gkn_core::gkn::{b_block, build_matrix, c_block, parse_index_list};
use gkn_core::oracle::{bracket_via_oracle, LogRat};
use gkn_core::sweep::ExecMode;
use gkn_core::{bracket, bracket_decomposed, IndexSelection, Rational};
use gkn_cli::run::{now_rfc3339, run_sweep, RunConfig};
use gkn_cli::suites::{self, Suite, SuiteOptions};
use gkn_cli::tables::Block;
use gkn_cli::{to_json, CliError, CliResult, Format};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gkn", version, about = "Exact GKN boundary-condition checks for powers of the Legendre expression")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary bracket [f, g]_n between two classical functions.
    Bracket(BracketArgs),
    /// Boundary-form matrix M, or its B or C block.
    Matrix(MatrixArgs),
    /// Run a verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Rank every selection within a pool and append to the ledger.
    Sweep(SweepArgs),
    /// Print Q_k as polynomial times log plus polynomial.
    Qfun {
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Legendre-Stirling numbers up to row n.
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Laguerre left-definite coefficient b_j(n, k).
    LaguerreCoeff { j: usize, n: u32, k: String },
}

#[derive(Args)]
struct BracketArgs {
    kind1: Kind,
    idx1: usize,
    kind2: Kind,
    idx2: usize,
    #[arg(long)]
    n: u32,
    /// Recompute through the symbolic oracle and fail on disagreement.
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    check_oracle: bool,
    /// Also print the eigenvalue-gap and inner-product factors.
    #[arg(short, long)]
    verbose: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    /// P_0..P_{n-1} with Q_0..Q_{n-1} (n even) or Q_1..Q_n (n odd).
    #[arg(long, conflicts_with_all = ["p", "q"])]
    canonical: bool,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Block::M, ignore_case = true)]
    block: Block,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest power (canonical: 16, oracle: 4, eigen: 5, fn-conditions: 4).
    #[arg(long)]
    max_n: Option<u32>,
    /// Power for the parity suite (default 3).
    #[arg(long)]
    n: Option<u32>,
    /// Index count for the parity suite (default 8).
    #[arg(long)]
    pool: Option<usize>,
    /// Largest function index (n2-exhaustive: 50, oracle: 8, eigen: 12, fn-conditions: 10).
    #[arg(long)]
    max_index: Option<usize>,
    /// 0 = all cores, 1 = sequential.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Directory for JSON dumps of failed checks.
    #[arg(long, default_value = "gkn-failures")]
    artifacts: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n: u32,
    /// Number of P indices (0..pool).
    #[arg(long)]
    pool: usize,
    /// Number of Q indices; defaults to --pool.
    #[arg(long)]
    q_pool: Option<usize>,
    /// Also sweep parity-unbalanced selections.
    #[arg(long)]
    no_parity: bool,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, env = "GKN_LEDGER", default_value = "gkn-ledger.jsonl")]
    ledger: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn exec_mode(workers: usize) -> ExecMode {
    match workers {
        0 => ExecMode::Parallel,
        1 => ExecMode::Sequential,
        w => ExecMode::Workers(w),
    }
}

fn cmd_bracket(a: BracketArgs) -> CliResult<()> {
    if a.n == 0 {
        return Err(gkn_core::Error::ZeroPower.into());
    }
    let f = ClassicalFunction { kind: a.kind1, index: a.idx1 };
    let g = ClassicalFunction { kind: a.kind2, index: a.idx2 };
    let value = bracket(f, g, a.n);
    let decomposition = bracket_decomposed(f, g, a.n);
    let oracle = a.check_oracle.then(|| bracket_via_oracle(f, g, a.n));

    match a.format {
        Format::Json => {
            let mut v = json!({"left": f, "right": g, "n": a.n, "value": value});
            if let Ok((gap, inner)) = &decomposition {
                v["eigen_gap"] = json!(gap);
                v["inner"] = json!(inner);
            }
            if let Some(o) = &oracle {
                v["oracle"] = match o {
                    Ok(x) => json!(x),
                    Err(e) => json!({"error": e.to_string()}),
                };
            }
            println!("{}", to_json(&v));
        }
        Format::Csv => println!("left,right,n,value\n{f},{g},{},{value}", a.n),
        Format::Pretty => {
            println!("{value}");
            if a.verbose {
                match &decomposition {
                    Ok((gap, inner)) => println!("eigen_gap = {gap}\ninner = {inner}"),
                    Err(e) => println!("decomposition: {e}"),
                }
                if let Some(Ok(o)) = &oracle {
                    println!("oracle = {o}");
                }
            }
        }
    }
    match oracle {
        Some(Ok(o)) if o != value => Err(CliError::Assertion(format!(
            "oracle gives {o}, closed form gives {value} for [{f},{g}]_{}",
            a.n
        ))),
        Some(Err(e)) => Err(CliError::Assertion(format!("oracle failed: {e}"))),
        _ => Ok(()),
    }
}

fn cmd_matrix(a: MatrixArgs) -> CliResult<()> {
    let sel = if a.canonical {
        IndexSelection::canonical(a.n)?
    } else {
        if a.p.is_none() && a.q.is_none() {
            return Err(CliError::Usage("give --canonical or --p/--q index lists".into()));
        }
        let p = parse_index_list(a.p.as_deref().unwrap_or(""))?;
        let q = parse_index_list(a.q.as_deref().unwrap_or(""))?;
        IndexSelection::new(p, q, a.n)?
    };
    let m = match a.block {
        Block::M => build_matrix(&sel),
        Block::B => b_block(&sel),
        Block::C => c_block(&sel),
    };
    match a.format {
        Format::Json => {
            let mut v = serde_json::to_value(&m).expect("serializable");
            v["block"] = json!(a.block);
            v["selection"] = json!(sel.key());
            println!("{}", to_json(&v));
        }
        Format::Csv => print!("{}", m.to_csv()),
        Format::Pretty => print!("{}", m.to_pretty()),
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CliResult<()> {
    let opts = SuiteOptions {
        max_n: a.max_n,
        n: a.n,
        pool: a.pool,
        max_index: a.max_index,
        mode: exec_mode(a.workers),
    };
    let report = suites::run(a.suite, &opts);
    match a.format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Pretty => print!("{}", report.to_pretty()),
    }
    if report.passed {
        return Ok(());
    }
    for p in report.dump_failures(&a.artifacts)? {
        eprintln!("failure artifact: {}", p.display());
    }
    let n = report.failures().count();
    Err(CliError::Assertion(format!("{n} check(s) failed in suite {}", report.suite)))
}

fn cmd_sweep(a: SweepArgs) -> CliResult<()> {
    let cfg = RunConfig {
        power: a.n,
        pool: a.pool,
        q_pool: a.q_pool,
        parity_filter: !a.no_parity,
        workers: a.workers,
        format: a.format,
        ledger: a.ledger,
    };
    let summary = run_sweep(&cfg, &now_rfc3339())?;
    print!("{}", summary.render(cfg.format));
    if cfg.format == Format::Json {
        println!();
    }
    Ok(())
}

fn cmd_qfun(k: usize, format: Format) -> CliResult<()> {
    let rep = legendre_q(k);
    let text = LogRat::from_function(ClassicalFunction::q(k)).to_string();
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&rep).expect("serializable");
            v["k"] = json!(k);
            v["text"] = json!(text);
            println!("{}", to_json(&v));
        }
        Format::Csv => {
            println!("power,log,poly");
            let n = rep.log_coeff.coeffs().len().max(rep.poly_part.coeffs().len());
            for i in 0..n {
                println!("{i},{},{}", rep.log_coeff.coeff(i), rep.poly_part.coeff(i));
            }
        }
        Format::Pretty => println!("Q{k}(x) = {text}"),
    }
    Ok(())
}

fn cmd_stirling(n: usize, format: Format) -> CliResult<()> {
    let rows: Vec<Vec<String>> = (1..=n)
        .map(|i| (1..=i).map(|k| legendre_stirling(i, k).map(|v| v.to_string())).collect())
        .collect::<gkn_core::Result<_>>()?;
    match format {
        Format::Json => println!("{}", to_json(&json!({"n": n, "rows": rows}))),
        Format::Csv => {
            println!("n,k,value");
            for (i, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    println!("{},{},{v}", i + 1, k + 1);
                }
            }
        }
        Format::Pretty => {
            let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
                println!("{:>3}: {}", i + 1, cells.join(" "));
            }
        }
    }
    Ok(())
}

fn cmd_laguerre(j: usize, n: u32, k: &str) -> CliResult<()> {
    let k: Rational = k.parse()?;
    println!("{}", laguerre_ld_coefficient(j, n, &k));
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Bracket(a) => cmd_bracket(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Qfun { k, format } => cmd_qfun(k, format),
        Command::Stirling { n, format } => cmd_stirling(n, format),
        Command::LaguerreCoeff { j, n, k } => cmd_laguerre(j, n, &k),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e}");
        process::exit(e.exit_code() as i32);
    }
}
