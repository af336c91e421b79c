use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use splice_sig::cyclotomic::set_start_precision;
use splice_sig::expr::Expr;
use splice_sig::splice::SigFn;
use splice_sig::torus::{defect, grid, grid_angles, Angle, Character, LinkingVector};
use splice_sig::torus_cables::hirzebruch;
use splice_sig::verify::{run_suite, SUITES};
use splice_sig::{Result, SigError};

#[derive(Parser)]
#[command(name = "splice-sig", version, about = "Multivariate signatures of colored links")]
struct Cli {
    /// Emit results and errors as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at one character.
    Eval {
        /// Expression file, inline JSON, or fixture name.
        expr: String,
        /// Character as comma-separated angles, e.g. 1/8,1/8,0.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Evaluate an expression on the grid of N-th roots of unity.
    Sweep {
        expr: String,
        #[arg(long, default_value_t = 8)]
        order: u64,
        /// Skip characters with a unit coordinate.
        #[arg(long)]
        open: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also write CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Tabulate the defect δ_λ over the grid of N-th roots of unity.
    DefectTable {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<i64>,
        #[arg(long, default_value_t = 12)]
        order: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a self-check suite, or `all`.
    Verify { suite: String },
    /// Levine–Tristram signature of the torus link U(p, q) by Hirzebruch's count.
    TorusSig {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        theta: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

enum Failure {
    Sig(SigError),
    Verify(String),
}

impl From<SigError> for Failure {
    fn from(e: SigError) -> Self {
        Failure::Sig(e)
    }
}

fn exit_code(e: &SigError) -> u8 {
    match e {
        SigError::Parse(_) => 2,
        SigError::GuardViolated(_) => 3,
        SigError::BoundaryCharacter(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(bits) = std::env::var("SPLICE_SIG_PRECISION") {
        match bits.trim().parse::<u32>() {
            Ok(b) if b > 0 => set_start_precision(b),
            _ => {
                return report_error(cli.json, &SigError::Parse(format!("SPLICE_SIG_PRECISION={bits:?}")));
            }
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Sig(e)) => report_error(cli.json, &e),
        Err(Failure::Verify(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}

fn report_error(json: bool, e: &SigError) -> ExitCode {
    if json {
        println!("{}", json!({"error": e.kind(), "message": e.to_string()}));
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(e))
}

fn run(cli: &Cli) -> std::result::Result<String, Failure> {
    match &cli.command {
        Command::Eval { expr, at } => Ok(eval(&build(expr)?, at, cli.json)?),
        Command::Sweep { expr, order, open, format, csv } => {
            let f = build(expr)?;
            let rows = sweep(&f, *order, *open)?;
            if let Some(path) = csv {
                std::fs::write(path, render_sweep(&rows, Format::Csv))
                    .map_err(|e| SigError::Io(format!("{}: {e}", path.display())))?;
            }
            let format = if cli.json { Format::Json } else { *format };
            Ok(render_sweep(&rows, format))
        }
        Command::DefectTable { lambda, order, format } => {
            let format = if cli.json { Format::Json } else { *format };
            Ok(defect_table(&LinkingVector::new(lambda.clone()), *order, format)?)
        }
        Command::Verify { suite } => verify(suite, cli.json),
        Command::TorusSig { p, q, theta } => {
            let t: Angle = theta.parse()?;
            let s = hirzebruch(p.abs(), q.abs(), t)?;
            let s = if p * q < 0 { -s } else { s };
            Ok(if cli.json {
                format!("{}\n", json!({"p": p, "q": q, "theta": t.to_string(), "signature": s}))
            } else {
                format!("{s}\n")
            })
        }
    }
}

/// A file path, inline JSON, or fixture name.
fn build(arg: &str) -> Result<SigFn> {
    let path = Path::new(arg);
    if path.is_file() {
        let (expr, dir) = Expr::load(path)?;
        return expr.build(&dir);
    }
    let expr = if arg.trim_start().starts_with('{') { Expr::parse(arg)? } else { Expr::Fixture(arg.to_string()) };
    expr.build(Path::new("."))
}

fn eval(f: &SigFn, at: &str, json: bool) -> Result<String> {
    let w: Character = at.parse()?;
    let s = f.evaluate(&w)?;
    let nullity = if f.has_nullity() { f.nullity(&w).ok() } else { None };
    if json {
        return Ok(format!("{}\n", json!({"character": w.to_string(), "signature": s, "nullity": nullity})));
    }
    let mut out = format!("{s}\n");
    if let Some(n) = nullity {
        writeln!(out, "nullity {n}").unwrap();
    }
    Ok(out)
}

type Cell = (Character, std::result::Result<i64, SigError>);

fn sweep(f: &SigFn, order: u64, open: bool) -> Result<Vec<Cell>> {
    if order == 0 {
        return Err(SigError::InvalidParams("grid order must be at least 1".into()));
    }
    let cells = grid(&grid_angles(order, open), f.arity());
    Ok(cells
        .into_par_iter()
        .map(|w| {
            let s = f.evaluate(&w);
            (w, s)
        })
        .collect())
}

fn render_sweep(rows: &[Cell], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            for (w, s) in rows {
                match s {
                    Ok(v) => writeln!(out, "{w}\t{v}"),
                    Err(e) => writeln!(out, "{w}\t{}", e.kind()),
                }
                .unwrap();
            }
        }
        Format::Csv => {
            let mu = rows.first().map_or(0, |(w, _)| w.arity());
            let head: Vec<String> = (1..=mu).map(|i| format!("omega_{i}")).collect();
            writeln!(out, "{},signature,error", head.join(",")).unwrap();
            for (w, s) in rows {
                let (v, e) = match s {
                    Ok(v) => (v.to_string(), String::new()),
                    Err(e) => (String::new(), e.kind().to_string()),
                };
                writeln!(out, "{w},{v},{e}").unwrap();
            }
        }
        Format::Json => {
            let cells: Vec<Value> = rows
                .iter()
                .map(|(w, s)| match s {
                    Ok(v) => json!({"character": w.to_string(), "signature": v}),
                    Err(e) => json!({"character": w.to_string(), "error": e.kind(), "message": e.to_string()}),
                })
                .collect();
            writeln!(out, "{}", Value::Array(cells)).unwrap();
        }
    }
    out
}

fn defect_table(lambda: &LinkingVector, order: u64, format: Format) -> Result<String> {
    if order == 0 {
        return Err(SigError::InvalidParams("grid order must be at least 1".into()));
    }
    let angles = grid_angles(order, false);
    let mut out = String::new();
    if lambda.len() == 2 && format == Format::Table {
        // Rows ω_1, columns ω_2.
        let head: Vec<String> = angles.iter().map(ToString::to_string).collect();
        writeln!(out, "ω1\\ω2\t{}", head.join("\t")).unwrap();
        for &a in &angles {
            let row = angles
                .iter()
                .map(|&b| defect(lambda, &Character::new(vec![a, b])).map(|d| d.to_string()))
                .collect::<Result<Vec<_>>>()?;
            writeln!(out, "{a}\t{}", row.join("\t")).unwrap();
        }
        return Ok(out);
    }
    let rows = grid(&angles, lambda.len())
        .into_iter()
        .map(|w| {
            let d = defect(lambda, &w);
            (w, d)
        })
        .collect::<Vec<_>>();
    Ok(render_sweep(&rows, format))
}

fn verify(suite: &str, json: bool) -> std::result::Result<String, Failure> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut out = String::new();
    let mut ok = true;
    let mut reports = Vec::new();
    for name in names {
        let rep = run_suite(name)?;
        ok &= rep.passed();
        if json {
            reports.push(serde_json::to_value(&rep).expect("serializable"));
            continue;
        }
        let verdict = if rep.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {}: {} cases, {} failures", rep.suite, rep.cases, rep.failures.len()).unwrap();
        for f in rep.failures.iter().take(20) {
            writeln!(out, "  {f}").unwrap();
        }
    }
    if json {
        writeln!(out, "{}", Value::Array(reports)).unwrap();
    }
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verify(out))
    }
}
