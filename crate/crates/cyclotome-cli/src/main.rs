//! Command-line front end: Singer difference sets, line sets, cyclotomic
//! tables and oracle verification.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parameter
//! error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclotome::cyclo::{cyclo_table, CycloTable};
use cyclotome::factor::factorize;
use cyclotome::gf::Poly;
use cyclotome::lines::{CycloCtx, LineRoute};
use cyclotome::oracle::{verify_order, DEFAULT_ORACLE_BUDGET};
use cyclotome::residue::ResidueSet;
use cyclotome::singer::SingerParams;

/// Cyclotomic numbers over GF(q^n) via Singer difference sets.
///
/// Polynomials are comma-separated coefficient lists, low degree first, each
/// coefficient the base-p digit encoding of a GF(q) element (for GF(4):
/// 0, 1, 2 = g, 3 = g+1 with g^2 = g+1). Omitting --poly selects the bundled
/// Conway-derived default.
#[derive(Parser)]
#[command(name = "cyclotome", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Base field order q (a prime power)
    q: u64,
    /// Extension degree n >= 2
    n: u32,
    /// Primitive polynomial of degree n over GF(q), e.g. "1,0,2,1"
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the Singer difference set of GF(q^n)
    Singer {
        #[command(flatten)]
        field: FieldArgs,
        /// Emit the set as JSON instead of the display form
        #[arg(long)]
        json: bool,
    },
    /// Resolve the projective line through the points 0 and k
    Line {
        #[command(flatten)]
        field: FieldArgs,
        /// Line index, 1 <= k <= e-1
        k: u64,
        /// Use this difference set (comma-separated residues) instead of the
        /// generated one; must be a translate of it
        #[arg(long)]
        ds: Option<String>,
        /// Show the intermediate intersection L and shift x
        #[arg(long, short)]
        verbose: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compute the full cyclotomic table of an order dividing e
    Table {
        #[command(flatten)]
        field: FieldArgs,
        /// Table order; defaults to e = (q^n-1)/(q-1)
        #[arg(long)]
        order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check the evaluator against the brute-force field oracle
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Order to verify; defaults to e
        #[arg(long)]
        order: Option<u64>,
    },
    /// Prime factorization (debug helper)
    Factor {
        /// Numbers to factor
        n: Vec<u64>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_ctx(field: &FieldArgs) -> Result<CycloCtx, String> {
    let ctx = match &field.poly {
        Some(s) => {
            let poly = Poly::parse(s).map_err(|e| e.to_string())?;
            CycloCtx::with_poly(field.q, field.n, &poly)
        }
        None => CycloCtx::new(field.q, field.n),
    };
    ctx.map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Singer { field, json } => {
            let ctx = build_ctx(&field)?;
            let ds = ctx.singer_set();
            if json {
                println!("{}", ds.to_json());
            } else {
                let SingerParams { v, k, lambda, .. } = ctx.params();
                println!("{ds}");
                println!("parameters: v={v} k={k} lambda={lambda} (q={} n={})", ctx.q(), ctx.n());
                println!("polynomial: {}", ctx.prim_poly());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Line {
            field,
            k,
            ds,
            verbose,
            json,
        } => {
            let mut ctx = build_ctx(&field)?;
            if let Some(list) = ds {
                let members = parse_residues(&list)?;
                let set = ResidueSet::new(ctx.e(), members);
                ctx = ctx.with_difference_set(set).map_err(|e| e.to_string())?;
            }
            let route = ctx.line_route(k).map_err(|e| e.to_string())?;
            if verbose {
                match route {
                    LineRoute::WholeSpace => println!("n=2: the line is all of Z_{}", ctx.e()),
                    LineRoute::Subfield(d) => println!(
                        "alpha^{k} lies in GF({}^{d}): scaled from the subfield line",
                        ctx.q()
                    ),
                    LineRoute::General => {
                        let (l, x, _) = ctx.line_general_trace(k).map_err(|e| e.to_string())?;
                        println!("L = {l}");
                        println!("x = {x}");
                    }
                }
            }
            let s = ctx.line_set(k).map_err(|e| e.to_string())?;
            if json {
                println!("{}", s.to_json());
            } else {
                println!("{s}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            field,
            order,
            format,
            out,
        } => {
            let ctx = build_ctx(&field)?;
            let eps = order.unwrap_or_else(|| ctx.e());
            let table = cyclo_table(&ctx, eps).map_err(|e| e.to_string())?;
            let rendered = match format {
                Format::Json => table.to_json(),
                Format::Csv => table.to_csv(),
                Format::Pretty => pretty_table(&table),
            };
            match out {
                Some(path) => {
                    let mut f = std::fs::File::create(&path)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    f.write_all(rendered.as_bytes())
                        .map_err(|e| e.to_string())?;
                }
                None => print!("{rendered}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { field, order } => {
            let ctx = build_ctx(&field)?;
            let eps = order.unwrap_or_else(|| ctx.e());
            let budget = oracle_budget()?;
            let report = verify_order(&ctx, eps, budget).map_err(|e| e.to_string())?;
            println!(
                "order {}: {} pairs compared against the field oracle, {} identity checks",
                report.order, report.pairs_checked, report.identity_checks
            );
            if report.passed() {
                println!("all checks passed");
                Ok(ExitCode::SUCCESS)
            } else {
                for (i, j, ours, oracle) in &report.mismatches {
                    println!("mismatch at ({i},{j}): evaluator {ours}, oracle {oracle}");
                }
                for failure in &report.identity_failures {
                    println!("identity failure: {failure}");
                }
                println!(
                    "{} mismatches, {} identity failures",
                    report.mismatches.len(),
                    report.identity_failures.len()
                );
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Factor { n } => {
            if n.is_empty() {
                return Err("factor needs at least one number".into());
            }
            for v in n {
                let fs = factorize(v).map_err(|e| e.to_string())?;
                println!("{v} = {}", format_factorization(&fs));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_residues(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| e.to_string()))
        .collect()
}

fn oracle_budget() -> Result<u64, String> {
    match std::env::var("CYCLOTOME_ORACLE_BUDGET") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("CYCLOTOME_ORACLE_BUDGET={v} is not a number")),
        Err(_) => Ok(DEFAULT_ORACLE_BUDGET),
    }
}

fn format_factorization(fs: &[u64]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < fs.len() {
        let p = fs[idx];
        let count = fs[idx..].iter().take_while(|&&x| x == p).count();
        parts.push(if count == 1 {
            p.to_string()
        } else {
            format!("{p}^{count}")
        });
        idx += count;
    }
    parts.join(" * ")
}

fn pretty_table(table: &CycloTable) -> String {
    let mut out = format!(
        "cyclotomic numbers of order {} over GF({}^{}), f = {}\n",
        table.order(),
        table.q(),
        table.n(),
        table.f_order()
    );
    for ((i, j), c) in table.iter() {
        out.push_str(&format!("({i},{j}) = {c}\n"));
    }
    out.push_str(&format!("{} nonzero entries\n", table.nonzero_len()));
    out
}
