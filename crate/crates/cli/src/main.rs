//! `hyperlap`: evaluate kernels, Green functions and volumes, run verification suites and
//! maximal-operator probes. Exit status: 0 success, 1 usage or domain error, 2 a checked
//! margin failed.

mod commands;
mod config;
mod output;
mod values;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use hyperlap_core::geometry::HTypeDescriptor;
use hyperlap_core::QuadratureSpec;

use commands::{Space, Verdict};
use config::RunConfig;
use output::{emit, emit_table, json_bytes, Format};
use values::Values;

#[derive(Parser)]
#[command(name = "hyperlap", version, about = "Heat kernels, resolvents and maximal functions on hyperbolic spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuadArgs {
    /// Relative tolerance of the adaptive quadrature.
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl QuadArgs {
    fn quad(&self) -> QuadratureSpec<f64> {
        QuadratureSpec::default().with_rel_tol(self.rel_tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Heat kernel K(t, r); emits CSV `t,r,value`.
    Kernel {
        #[arg(long, value_enum)]
        space: Space,
        /// Dimension; for `an` the horizontal dimension 2n of the H-type group.
        #[arg(long)]
        n: usize,
        /// Center dimension (an only).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Time: `x`, `x,y,..` or `from:to:count`.
        #[arg(long)]
        t: Values,
        /// Distance: `x`, `x,y,..` or `from:to:count`.
        #[arg(long)]
        r: Values,
        #[command(flatten)]
        common: QuadArgs,
    },
    /// Green function of λ − Δ; emits CSV `lambda,r,value`.
    Green {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Values,
        #[arg(long)]
        r: Values,
        #[command(flatten)]
        common: QuadArgs,
    },
    /// Geodesic ball volume V(r); emits CSV `n,r,value`.
    Volume {
        #[arg(long, value_enum)]
        space: Space,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        r: Values,
        #[command(flatten)]
        common: QuadArgs,
    },
    /// Volume of the (a, h, r) region of an AN group with one-dimensional center.
    Region {
        /// Descriptor JSON `{"two_n", "m", "U"}`; defaults to the Heisenberg group H(2n, 1).
        #[arg(long, conflicts_with = "n")]
        descriptor: Option<PathBuf>,
        /// Half the horizontal dimension of the default Heisenberg descriptor.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Values,
        #[arg(long)]
        h: Values,
        #[arg(long)]
        r: Values,
        #[command(flatten)]
        common: QuadArgs,
    },
    /// Run a verification suite (or `all`); emits the report as JSON.
    Verify {
        suite: Option<String>,
        /// JSON file fixing grids and tolerances.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Measured-constants fixture replacing the built-in one.
        #[arg(long)]
        constants: Option<PathBuf>,
        /// Directory receiving `<suite>.json` and `<suite>.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// List the suites and the statements they check.
        #[arg(long)]
        list: bool,
    },
    /// Empirical ‖Mf‖_p/‖f‖_p of the discrete maximal operator on an H^n grid.
    Maximal {
        #[arg(long, value_enum, default_value_t = Space::Hn)]
        space: Space,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// `default` or a JSON file with an array of named test functions.
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        constants: Option<PathBuf>,
        /// Directory receiving `maximal_n<n>_p<p>.json` and `.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a JSON run configuration.
    Run { config: PathBuf },
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Kernel { space, n, m, t, r, common } => {
            let table = commands::kernel(space, n, m, &t.expand()?, &r.expand()?, &common.quad())?;
            emit_table(common.out.as_deref(), common.format, &table)?;
        }
        Command::Green { space, n, lambda, r, common } => {
            let table = commands::green(space, n, &lambda.expand()?, &r.expand()?, &common.quad())?;
            emit_table(common.out.as_deref(), common.format, &table)?;
        }
        Command::Volume { space, n, m, r, common } => {
            let table = commands::volume(space, n, m, &r.expand()?, &common.quad())?;
            emit_table(common.out.as_deref(), common.format, &table)?;
        }
        Command::Region { descriptor, n, a, h, r, common } => {
            let d = match (descriptor, n) {
                (Some(p), _) => commands::load_descriptor(&p)?,
                (None, Some(n)) => HTypeDescriptor::heisenberg(n),
                (None, None) => anyhow::bail!("region needs --descriptor or --n"),
            };
            let table = commands::region(&d, &a.expand()?, &h.expand()?, &r.expand()?, &common.quad())?;
            emit_table(common.out.as_deref(), common.format, &table)?;
        }
        Command::Verify { suite, config, constants, out, list } => {
            if list {
                emit_table(None, Format::Csv, &commands::list_suites())?;
                return Ok(Verdict::Pass);
            }
            let Some(suite) = suite else { anyhow::bail!("verify needs a suite name, `all`, or --list") };
            let suites = commands::suites(&suite)?;
            let cfg = commands::load_verify_config(config.as_deref())?;
            let constants = commands::load_constants(constants.as_deref())?;
            let reports = commands::verify(&suites, &cfg, &constants)?;
            match out {
                Some(dir) => {
                    commands::write_reports(&dir, &reports)?;
                    for r in &reports {
                        println!("{} pass={} worst_margin={}", r.lemma, r.pass, r.worst_margin);
                    }
                }
                None if reports.len() == 1 => emit(None, &json_bytes(&reports[0])?)?,
                None => emit(None, &json_bytes(&reports)?)?,
            }
            return Ok(commands::verdict_of(&reports));
        }
        Command::Maximal { space, n, p, suite, constants, out } => {
            let constants = commands::load_constants(constants.as_deref())?;
            let summary = commands::maximal(space, n, p, &suite, &constants)?;
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let stem = format!("maximal_n{n}_p{p}");
                    emit(Some(&dir.join(format!("{stem}.json"))), &json_bytes(&summary)?)?;
                    emit(Some(&dir.join(format!("{stem}.csv"))), &summary.table().csv_bytes()?)?;
                    println!("max_ratio={} budget={:?}", summary.max_ratio, summary.budget);
                }
                None => emit(None, &json_bytes(&summary)?)?,
            }
            return Ok(summary.verdict());
        }
        Command::Run { config } => return RunConfig::load(&config)?.execute(),
    }
    Ok(Verdict::Pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
