//! Command-line front end: claim verification, data tables and operator
//! dumps.

mod table;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use isocs::claims::{run_claims, ClaimConfig, ClaimReport};
use isocs::fock::{FockSpace, Sector};
use isocs::measures::{MeasureForm, RadialMeasure};
use isocs::quantize::{claimed_matrix, toeplitz, Symbol};
use isocs::states::Family;

#[derive(Parser, Debug)]
#[command(name = "isocs", version, about = "Coherent states of the isotonic oscillator: claim checks and data tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the claim registry and write a JSON report.
    Verify {
        /// Claim ids (C1..C19); all claims when omitted.
        ids: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write a weights, occupation-number or Husimi table.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Comma-separated γ values, one column each.
        #[arg(long, value_delimiter = ',')]
        gammas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = FamilyArg::BgcsEven)]
        family: FamilyArg,
        /// |z|² or J of the state whose occupation numbers are tabulated.
        #[arg(long, default_value_t = 4.0)]
        radial: f64,
        /// Weight form for the weights table.
        #[arg(long, value_enum, default_value_t = FormArg::Printed)]
        form: FormArg,
    },
    /// Write a quantized operator matrix.
    Dump {
        #[arg(value_enum)]
        symbol: SymbolArg,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::BgcsEven)]
        family: FamilyArg,
        /// Write the closed-form matrix instead of the quantized one.
        #[arg(long)]
        closed_form: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 2.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 64)]
    trunc: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    #[arg(long, default_value_t = 0.1)]
    grid_min: f64,
    #[arg(long, default_value_t = 6.0)]
    grid_max: f64,
    #[arg(long, default_value_t = 60)]
    grid_points: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TableKind {
    Weights,
    Pnd,
    Husimi,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
#[value(rename_all = "snake_case")]
enum FamilyArg {
    BgcsEven,
    BgcsOdd,
    Gkcs,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::BgcsEven => Family::BgcsEven,
            FamilyArg::BgcsOdd => Family::BgcsOdd,
            FamilyArg::Gkcs => Family::Gkcs,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormArg {
    Printed,
    Elementary,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SymbolArg {
    Z,
    Zbar,
    Modz2,
}

impl From<SymbolArg> for Symbol {
    fn from(s: SymbolArg) -> Self {
        match s {
            SymbolArg::Z => Symbol::Z,
            SymbolArg::Zbar => Symbol::Zbar,
            SymbolArg::Modz2 => Symbol::Modz2,
        }
    }
}

impl RunArgs {
    fn config(&self) -> Result<ClaimConfig> {
        let cfg = ClaimConfig {
            gamma: self.gamma,
            beta: self.beta,
            trunc: self.trunc,
            tol: self.tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// 17 significant digits.
pub(crate) fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn summary_csv(reports: &[ClaimReport]) -> String {
    let mut s = String::from("id,verdict,max_residual,tol\n");
    for r in reports {
        s.push_str(&format!("{},{},{},{}\n", r.id, r.verdict, num(r.max_residual), num(r.tol)));
    }
    s
}

fn verify(ids: &[String], run: &RunArgs) -> Result<()> {
    let cfg = run.config()?;
    let selection = if ids.is_empty() { None } else { Some(ids) };
    let reports = run_claims(selection, &cfg)?;
    let text = match run.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
        Format::Csv => summary_csv(&reports),
    };
    emit(run.out.as_deref(), &text)?;
    if run.out.is_some() {
        for r in &reports {
            println!("{:<4} {:<18} {:e}", r.id, r.verdict.to_string(), r.max_residual);
        }
    }
    Ok(())
}

fn dump(symbol: SymbolArg, run: &RunArgs, family: Family, closed_form: bool) -> Result<()> {
    let cfg = run.config()?;
    if family == Family::Gkcs {
        bail!("quantized operators exist for bgcs_even and bgcs_odd only");
    }
    let space = FockSpace::new(cfg.gamma, cfg.trunc, Sector::Full)?;
    let sym = Symbol::from(symbol);
    let op = if closed_form {
        claimed_matrix(sym, family, &space)?
    } else {
        let m = RadialMeasure::new(MeasureForm::elementary(family), cfg.gamma);
        toeplitz(sym, family, &m, &space)?
    };
    let entries: Vec<(usize, usize, f64, f64)> = (0..space.trunc)
        .flat_map(|i| (0..space.trunc).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, op.entries[(i, j)].re, op.entries[(i, j)].im))
        .filter(|e| e.2 != 0.0 || e.3 != 0.0)
        .collect();
    let text = match run.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("row,col,re,im\n");
            for (i, j, re, im) in &entries {
                s.push_str(&format!("{i},{j},{},{}\n", num(*re), num(*im)));
            }
            s
        }
        Format::Json => {
            let v = serde_json::json!({
                "label": op.label,
                "gamma": cfg.gamma,
                "trunc": cfg.trunc,
                "entries": entries,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(run.out.as_deref(), &text)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify { ids, run } => verify(ids, run),
        Command::Table {
            kind,
            run,
            grid,
            gammas,
            family,
            radial,
            form,
        } => {
            let cfg = run.config()?;
            let gammas = if gammas.is_empty() { vec![cfg.gamma] } else { gammas.clone() };
            let t = match kind {
                TableKind::Weights => table::weights(&gammas, (*family).into(), *form == FormArg::Printed, grid.into())?,
                TableKind::Pnd => table::pnd(&gammas, (*family).into(), *radial, cfg.trunc)?,
                TableKind::Husimi => table::husimi(&gammas, (*family).into(), cfg.beta, grid.into())?,
            };
            let text = match run.format.unwrap_or(Format::Csv) {
                Format::Csv => t.to_csv(),
                Format::Json => serde_json::to_string_pretty(&t)? + "\n",
            };
            emit(run.out.as_deref(), &text)
        }
        Command::Dump {
            symbol,
            run,
            family,
            closed_form,
        } => dump(*symbol, run, (*family).into(), *closed_form),
    }
}

impl From<&GridArgs> for table::Grid {
    fn from(g: &GridArgs) -> Self {
        table::Grid {
            min: g.grid_min,
            max: g.grid_max,
            points: g.grid_points,
        }
    }
}
