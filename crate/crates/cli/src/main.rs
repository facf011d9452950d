use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use nilsol::algebra::{parse_nice_algebra, NiceLieAlgebra};
use nilsol::catalog::{self, emit_table, CatalogEntry, SuiteRun, TableFormat, TableRow};
use nilsol::exactnum::rational::parse_rational;
use nilsol::exactnum::roots::set_max_refine;
use nilsol::exactnum::Rational;
use nilsol::geometry::{
    einstein_extension, ricci_koszul, ricci_nice_diagonal, verify_nilsoliton, wick_rotate, DiagonalMetric,
    MetricLieAlgebra,
};
use nilsol::nilsoliton::{classify, fmt_signature_set, set_seed_grid, ClassificationReport};

#[derive(Parser)]
#[command(name = "nilsol", version, about = "Diagonal nilsoliton metrics on nice nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full classification report for one algebra.
    Analyze {
        differential: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
    /// Classify catalog entries, optionally against golden data.
    Classify {
        #[command(flatten)]
        select: Selection,
        /// Override family samples, e.g. `a=-1,1/2,2`.
        #[arg(long)]
        samples: Vec<String>,
        #[arg(long)]
        golden_diff: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Check that a diagonal metric is a nilsoliton and cross-check the Ricci operator.
    Verify {
        differential: String,
        #[arg(long)]
        metric: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Einstein extension by the Nikolayevsky derivation.
    Extend {
        differential: String,
        #[arg(long)]
        metric: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Wick rotation by an integer vector W.
    Wick {
        differential: String,
        #[arg(long)]
        metric: String,
        #[arg(long)]
        w: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Render the catalog classification as a table.
    Table {
        #[command(flatten)]
        select: Selection,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        golden_diff: bool,
    },
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter binding `sym=p/q`; repeatable.
    #[arg(long = "param")]
    param: Vec<String>,
}

#[derive(Args)]
struct Selection {
    /// `builtin` or a path to a catalog JSON file.
    #[arg(long, default_value = "builtin")]
    catalog: String,
    /// Only entries of dimension at most N.
    #[arg(long)]
    dim: Option<usize>,
    /// Only entries whose name matches this glob.
    #[arg(long)]
    name: Option<String>,
}

/// Errors caused by bad user input; they exit with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

fn input<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| InputError(e.to_string()).into())
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| InputError(format!("expected sym=value, got {item:?}")))?;
        out.insert(k.trim().to_string(), input(parse_rational(v))?);
    }
    Ok(out)
}

fn parse_algebra(text: &str, params: &ParamArgs) -> Result<NiceLieAlgebra> {
    let p = parse_params(&params.param)?;
    input(parse_nice_algebra(text, &p))
}

fn parse_metric(text: &str) -> Result<DiagonalMetric> {
    let values = text
        .split(',')
        .map(|s| input(parse_rational(s)))
        .collect::<Result<Vec<_>>>()?;
    DiagonalMetric::from_rationals(&values).ok_or_else(|| InputError("metric coefficients must be nonzero".into()).into())
}

fn parse_samples(items: &[String]) -> Result<BTreeMap<String, Vec<Rational>>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| InputError(format!("expected sym=v1,v2,..., got {item:?}")))?;
        let vals = v.split(',').map(|s| input(parse_rational(s))).collect::<Result<Vec<_>>>()?;
        out.insert(k.trim().to_string(), vals);
    }
    Ok(out)
}

fn select(sel: &Selection) -> Result<Vec<CatalogEntry>> {
    let entries = if sel.catalog == "builtin" {
        catalog::builtin()
    } else {
        input(catalog::load_catalog(&sel.catalog))?
    };
    let pattern = match &sel.name {
        Some(p) => Some(input(glob::Pattern::new(p))?),
        None => None,
    };
    Ok(entries
        .into_iter()
        .filter(|e| sel.dim.is_none_or(|d| e.dim <= d))
        .filter(|e| pattern.as_ref().is_none_or(|p| p.matches(&e.name)))
        .collect())
}

fn report_json(r: &ClassificationReport) -> serde_json::Value {
    json!({
        "name": r.name,
        "algebra": r.algebra,
        "N": r.nikolayevsky.display(),
        "corank": r.corank,
        "X": r.solutions.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "S": r.signatures.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "S0": r.riemannian_signatures.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "obstruction": r.obstruction.map(|o| o.to_string()),
        "metrics": r.metrics.iter().map(|(d, g)| json!({"signature": d.to_string(), "metric": g.to_string()})).collect::<Vec<_>>(),
        "complete": r.complete,
        "warnings": r.warnings,
    })
}

fn print_report(r: &ClassificationReport) {
    println!("algebra      {}", r.algebra);
    println!("N            {}", r.nikolayevsky.display());
    println!("corank       {}", r.corank);
    for x in &r.solutions {
        println!("X            {x}{}", if x.numeric_flag { "  (numeric)" } else { "" });
    }
    println!("S            {}", fmt_signature_set(&r.signatures));
    println!("S0           {}", fmt_signature_set(&r.riemannian_signatures));
    if let Some(o) = r.obstruction {
        println!("obstruction  {o}");
    }
    for (d, g) in &r.metrics {
        println!("metric {d:<6} {g}");
    }
    for w in &r.warnings {
        println!("warning      {w}");
    }
}

/// Returns true when any golden diff was printed.
fn print_diffs(runs: &[SuiteRun]) -> bool {
    let mut count = 0;
    for d in runs.iter().flat_map(|r| &r.diffs) {
        println!("diff {d}");
        count += 1;
    }
    println!("{} runs, {count} diffs", runs.len());
    count > 0
}

fn rows(runs: &[SuiteRun]) -> Vec<TableRow> {
    runs.iter().filter_map(TableRow::from_run).collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { differential, params, json } => {
            let alg = parse_algebra(&differential, &params)?;
            let r = classify(&alg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report_json(&r))?);
            } else {
                print_report(&r);
            }
        }
        Command::Classify { select: sel, samples, golden_diff, format } => {
            let fmt: TableFormat = input(format.parse())?;
            let entries = select(&sel)?;
            let runs = catalog::run_suite(&entries, &parse_samples(&samples)?);
            for run in &runs {
                if let Err(e) = &run.report {
                    eprintln!("{}: {e}", run.label());
                }
            }
            if golden_diff {
                if print_diffs(&runs) {
                    return Ok(ExitCode::from(1));
                }
            } else {
                print!("{}", emit_table(&rows(&runs), fmt));
            }
        }
        Command::Verify { differential, metric, params } => {
            let alg = parse_algebra(&differential, &params)?;
            let g = parse_metric(&metric)?;
            let mla = input(MetricLieAlgebra::from_nice(&alg, g.clone()))?;
            let koszul = ricci_koszul(&mla)?;
            let nice = ricci_nice_diagonal(&alg, &g)?;
            if !koszul.is_diagonal() || koszul.diagonal() != nice.diagonal() {
                println!("Ricci oracle mismatch");
                return Ok(ExitCode::from(1));
            }
            let ric: Vec<String> = nice.diagonal().iter().map(|x| x.to_string()).collect();
            println!("Ric          diag({})", ric.join(","));
            match verify_nilsoliton(&alg, &g) {
                Ok(c) => {
                    let d: Vec<String> = c.derivation.iter().map(nilsol::exactnum::fmt_rational).collect();
                    println!("nilsoliton   λ = {}, D = diag({})", nilsol::exactnum::fmt_rational(&c.lambda), d.join(","));
                }
                Err(e) => {
                    println!("not a nilsoliton: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Extend { differential, metric, params } => {
            let alg = parse_algebra(&differential, &params)?;
            let g = parse_metric(&metric)?;
            match einstein_extension(&alg, &g) {
                Ok(ext) => {
                    println!("e0 coefficient  {}", nilsol::exactnum::fmt_rational(&ext.e0_coefficient));
                    println!("metric          {}", ext.metric_e0_first());
                    println!("Ric             -1/2 id (Koszul)");
                }
                Err(e) => {
                    println!("extension failed: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Wick { differential, metric, w, params } => {
            let alg = parse_algebra(&differential, &params)?;
            let g = parse_metric(&metric)?;
            let w = w
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|e| anyhow!(InputError(format!("bad W entry {s:?}: {e}")))))
                .collect::<Result<Vec<_>>>()?;
            let (rotated, gw) = match wick_rotate(&alg, &w, &g) {
                Ok(x) => x,
                Err(e) => bail!(InputError(e.to_string())),
            };
            println!("algebra  {}", rotated.to_notation());
            println!("metric   {gw}");
            let before = verify_nilsoliton(&alg, &g).is_ok();
            let after = verify_nilsoliton(&rotated, &gw).is_ok();
            println!("nilsoliton before {before}, after {after}");
            if before != after {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Table { select: sel, format, golden_diff } => {
            let fmt: TableFormat = input(format.parse())?;
            let entries = select(&sel)?;
            let runs = catalog::run_suite(&entries, &BTreeMap::new());
            print!("{}", emit_table(&rows(&runs), fmt));
            if golden_diff && print_diffs(&runs) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_from_env() -> Result<()> {
    if let Ok(v) = std::env::var("NILSOL_MAX_REFINE") {
        set_max_refine(input(v.parse::<usize>()).context("NILSOL_MAX_REFINE")?);
    }
    if let Ok(v) = std::env::var("NILSOL_NUMERIC_SEED_GRID") {
        set_seed_grid(input(v.parse::<usize>()).context("NILSOL_NUMERIC_SEED_GRID")?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_from_env().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<InputError>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
