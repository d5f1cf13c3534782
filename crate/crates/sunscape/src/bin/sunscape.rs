//! Command-line front end: catalog enumeration, critical-point
//! classification, geodesic optimization, trap reports, and the
//! verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sunscape::catalog;
use sunscape::geometry::{random_special_unitary, SuNBasis};
use sunscape::landscape::{classify, criticality_residual, hessian_matrix, TargetGate};
use sunscape::optimizer::{run, Mode, OptimizerConfig};
use sunscape::verifier;
use sunscape::{io, Result};

#[derive(Parser)]
#[command(name = "sunscape", about = "Critical points of the trace-fidelity landscape on SU(N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Gradient,
    Hessian,
    Catalog,
    Traps,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every critical-point family for SU(N).
    Catalog {
        #[arg(long)]
        n: usize,
        /// Write the catalog as JSON to this path instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// For continuum families, also list this many sampled mu values.
        #[arg(long, default_value_t = 0)]
        mu_grid: usize,
    },
    /// Classify a given point of the landscape for a given target.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Run geodesic gradient flows from random starting points.
    Optimize {
        #[arg(long)]
        n: usize,
        /// Target gate file; defaults to the identity.
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-iteration JSON lines for the last start to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// List the non-global local extrema (traps) for SU(N).
    TrapReport {
        #[arg(long)]
        n: usize,
    },
    /// Run the numerical verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Catalog { n, json, mu_grid } => {
            let families = catalog::enumerate(n);
            let text = catalog::to_json(&families);
            match json {
                Some(path) => std::fs::write(path, &text)?,
                None => println!("{text}"),
            }
            for family in families.iter().filter(|f| f.is_continuum) {
                for k in 0..mu_grid {
                    let mu = -2.0 + 4.0 * (k as f64 + 0.5) / mu_grid as f64;
                    println!(
                        "continuum sample: kplus={} mu={mu:.6} value={:.6}",
                        family.kplus, family.value
                    );
                }
            }
            Ok(true)
        }
        Command::Classify { n, target, point } => {
            let a = io::read_target(&target)?;
            let s = io::read_special_unitary(&point)?;
            if a.dim() != n || s.dim() != n {
                eprintln!("dimension mismatch with --n {n}");
                return Ok(false);
            }
            let (mu_hat, residual) = criticality_residual(&a, &s)?;
            println!("value      : {:.17e}", sunscape::fidelity_su(&a, &s));
            println!("mu_hat     : {mu_hat:.17e}");
            println!("residual   : {residual:.3e}");
            let basis = SuNBasis::new(n);
            let spectrum = hessian_matrix(&a, &s, &basis)?;
            let (gmax, gmin) = catalog::global_extremes(n);
            let nature = classify(&a, &s, &spectrum, gmax, gmin)?;
            println!(
                "inertia    : +{} -{} 0:{}",
                spectrum.n_pos, spectrum.n_neg, spectrum.n_zero
            );
            println!("nature     : {nature}");
            let families = catalog::enumerate(n);
            let reduced = sunscape::SpecialUnitaryPoint::new(
                a.matrix().adjoint() * s.matrix(),
            )?;
            match catalog::match_family(&reduced, &families, 1e-6) {
                Ok(family) => println!(
                    "family     : kplus={} mu={:.6} value={:.6}",
                    family.kplus, family.mu, family.value
                ),
                Err(e) => println!("family     : unmatched ({e})"),
            }
            Ok(true)
        }
        Command::Optimize {
            n,
            target,
            mode,
            starts,
            seed,
            trace,
        } => {
            let a = match target {
                Some(path) => io::read_target(&path)?,
                None => TargetGate::identity(n),
            };
            if a.dim() != n {
                eprintln!("target dimension does not match --n {n}");
                return Ok(false);
            }
            let config = OptimizerConfig {
                mode: match mode {
                    ModeArg::Max => Mode::Maximize,
                    ModeArg::Min => Mode::Minimize,
                },
                seed,
                ..OptimizerConfig::default()
            };
            let mut all_converged = true;
            let mut last_trace = None;
            for k in 0..starts {
                let start = random_special_unitary(n, seed.wrapping_add(k as u64));
                let trace_run = run(&a, &start, &config)?;
                let matched = trace_run
                    .matched_family
                    .as_ref()
                    .map(|f| format!("kplus={} mu={:.6}", f.kplus, f.mu))
                    .unwrap_or_else(|| "none".to_string());
                println!(
                    "start {k}: iters={} value={:.12} grad_norm={:.3e} converged={} family: {matched}",
                    trace_run.iterates.len(),
                    trace_run.final_value(),
                    trace_run.final_grad_norm(),
                    trace_run.converged
                );
                all_converged &= trace_run.converged;
                last_trace = Some(trace_run);
            }
            if let (Some(path), Some(t)) = (trace, last_trace) {
                std::fs::write(path, t.to_json_lines())?;
            }
            Ok(all_converged)
        }
        Command::TrapReport { n } => {
            let traps = catalog::trap_report(n);
            if traps.is_empty() {
                println!("SU({n}): trap-free (no non-global local extrema)");
            } else {
                println!("SU({n}): {} trap families", traps.len());
                println!("{}", catalog::to_json(&traps));
            }
            Ok(true)
        }
        Command::Verify { suite, n_max } => {
            let mut report = Vec::new();
            let n_max = n_max.max(2);
            if matches!(suite, Suite::All | Suite::Gradient) {
                report.extend(verifier::gradient_suite(n_max.min(6), 50, 1)?);
            }
            if matches!(suite, Suite::All | Suite::Hessian) {
                report.extend(verifier::hessian_suite(n_max.min(5), 10, 2)?);
            }
            if matches!(suite, Suite::All | Suite::Catalog) {
                report.extend(verifier::catalog_suite(n_max.min(6), 3, 3)?);
                report.extend(verifier::constraint_suite(n_max.min(6), 4)?);
            }
            if matches!(suite, Suite::All | Suite::Traps) {
                let range: Vec<usize> = (2..=n_max.min(8)).collect();
                report.extend(verifier::trap_boundary_test(&range)?);
            }
            let all_pass = report.iter().all(|r| r.passed());
            for entry in &report {
                println!(
                    "[{}] {} (N={}): {}",
                    entry.status, entry.test, entry.n, entry.details
                );
            }
            println!("{}", if all_pass { "ALL SUITES PASS" } else { "FAILURES PRESENT" });
            Ok(all_pass)
        }
    }
}
