//! Command-line front end: coefficient-table generation with three-route
//! cross-checking, the verification suites, and spectrum dumps.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 usage/config
//! error.

mod config;
mod runner;
mod spectrum;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qonsager_core::coeff::ade::{conjecture_table_ade, genpoly_c_ade, recursion_c_ade};
use qonsager_core::coeff::sl2::{conjecture_table, genpoly_c, recursion_c};
use qonsager_core::coeff::CoeffTable;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qonsager", version, about = "q-Onsager relation toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FlavorArg {
    Sl2,
    Ade,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum BackendArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum SuiteArg {
    Symbolic,
    Matrix,
    Roots,
    Hierarchy,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute c^[r,p]_j tables by all three routes, cross-check, export.
    Coeffs {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Largest order r (1..=12).
        #[arg(long)]
        rmax: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output directory for r1.<ext> .. r<rmax>.<ext>.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite, streaming one JSON record per check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Optional JSON config file; explicit flags win over its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        rmax: Option<u32>,
        #[arg(long, short = 'L')]
        sites: Option<usize>,
        #[arg(long, short = 'N')]
        root: Option<u32>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Boundary couplings as exact rationals "num/den".
        #[arg(long)]
        kplus: Option<String>,
        #[arg(long)]
        kminus: Option<String>,
        #[arg(long)]
        epsplus: Option<String>,
        #[arg(long)]
        epsminus: Option<String>,
        /// Override the default residual tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the random parameter draws.
        #[arg(long)]
        seed: Option<u64>,
        /// Write records here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a labeled eigenvalue table (predicted vs computed) as CSV.
    Spectrum {
        #[arg(long, short = 'L')]
        sites: usize,
        /// Root-of-unity order; omit for generic q.
        #[arg(long, short = 'N')]
        root: Option<u32>,
        #[arg(long)]
        kplus: Option<String>,
        #[arg(long)]
        kminus: Option<String>,
        #[arg(long)]
        epsplus: Option<String>,
        #[arg(long)]
        epsminus: Option<String>,
        /// Which operator, 0 or 1.
        #[arg(long, default_value_t = 0)]
        operator: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Coeffs { flavor, rmax, format, out } => cmd_coeffs(flavor, rmax, format, out),
        Cmd::Verify {
            suite,
            config,
            rmax,
            sites,
            root,
            backend,
            kplus,
            kminus,
            epsplus,
            epsminus,
            tol,
            seed,
            out,
        } => {
            let cfg = config::RunConfig::assemble(
                config, rmax, sites, root, backend.map(|b| b == BackendArg::Symbolic), kplus,
                kminus, epsplus, epsminus, tol, seed,
            )?;
            runner::cmd_verify(suite, &cfg, out)
        }
        Cmd::Spectrum { sites, root, kplus, kminus, epsplus, epsminus, operator, out } => {
            if sites == 0 {
                bail!("--L must be at least 1");
            }
            if operator > 1 {
                bail!("--operator must be 0 or 1");
            }
            let cfg = config::RunConfig::assemble(
                None, None, Some(sites), root, None, kplus, kminus, epsplus, epsminus, None, None,
            )?;
            spectrum::cmd_spectrum(&cfg, operator, out)?;
            Ok(true)
        }
    }
}

fn cmd_coeffs(flavor: FlavorArg, rmax: u32, format: FormatArg, out: PathBuf) -> Result<bool> {
    if rmax == 0 || rmax > 12 {
        bail!("--rmax must be in 1..=12");
    }
    std::fs::create_dir_all(&out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    let (tables, conj, gen): (Vec<CoeffTable>, Vec<CoeffTable>, Vec<CoeffTable>) = match flavor {
        FlavorArg::Sl2 => (
            recursion_c(rmax),
            (1..=rmax).map(conjecture_table).collect(),
            (1..=rmax).map(genpoly_c).collect(),
        ),
        FlavorArg::Ade => (
            recursion_c_ade(rmax),
            (1..=rmax).map(conjecture_table_ade).collect(),
            (1..=rmax).map(genpoly_c_ade).collect(),
        ),
    };
    let mut all_agree = true;
    for r in 1..=rmax as usize {
        let (t, c, g) = (&tables[r - 1], &conj[r - 1], &gen[r - 1]);
        if !t.agrees_with(c) || !t.agrees_with(g) {
            all_agree = false;
            let m = t.first_mismatch(c).or_else(|| t.first_mismatch(g));
            eprintln!("route disagreement at r={r}, first mismatch at (p,j)={m:?}");
        }
        let path = out.join(format!(
            "r{r}.{}",
            if format == FormatArg::Json { "json" } else { "csv" }
        ));
        let body = match format {
            FormatArg::Json => {
                let mut v = t.to_json();
                v["three_way_agreement"] = serde_json::json!(t.agrees_with(c) && t.agrees_with(g));
                serde_json::to_string_pretty(&v)? + "\n"
            }
            FormatArg::Csv => t.to_csv(),
        };
        std::fs::write(&path, body)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    println!(
        "wrote {} tables to {} ({})",
        rmax,
        out.display(),
        if all_agree { "all three routes agree" } else { "ROUTE DISAGREEMENT" }
    );
    Ok(all_agree)
}
