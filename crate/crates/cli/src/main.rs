use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use krein_cli::report::Report;
use krein_cli::scenario::{Action, DirichletScenario, Format, Scenario};
use krein_cli::suite::{run_case_suite, write_suite};
use krein_cli::sweep::{sweep_alpha, write_sweep, SweepConfig};
use krein_cli::{execute, CliError, RunOptions};

/// Rank-one perturbations of self-adjoint operators: case analysis,
/// new eigenvalues and brute-force verification.
#[derive(Debug, Parser)]
#[command(name = "krein", version)]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Output format; overrides the scenario's own setting.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed recorded in the report and used by randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cluster tolerance; defaults to 1e-9·(1 + spectral radius).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { scenario: PathBuf },
    /// Classify, locate roots and verify the interval problem.
    DemoDirichlet {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long = "n", default_value_t = 400)]
        nodes: usize,
    },
    /// Tabulate case tags and new root positions against alpha.
    SweepAlpha {
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long = "n", default_value_t = 200)]
        nodes: usize,
        /// Largest wavenumber reported.
        #[arg(long, default_value_t = 6.0 * PI)]
        k_max: f64,
    },
    /// Constructed random instances of every case, checked against the oracle.
    RandomSuite {
        #[arg(long, default_value_t = 200)]
        per_case: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn options(cli: &Cli) -> RunOptions {
    RunOptions {
        out: cli.out.clone(),
        format: cli.format,
        seed: cli.seed,
        tol: cli.tol,
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run { scenario } => run_scenario(&Scenario::load(scenario)?, cli),
        &Command::DemoDirichlet { alpha, nodes } => {
            let s = Scenario::Dirichlet(DirichletScenario {
                alpha,
                nodes,
                actions: vec![
                    Action::Classify,
                    Action::Roots,
                    Action::Verify,
                    Action::SecularCurve,
                ],
                format: None,
                seed: None,
            });
            run_scenario(&s, cli)
        }
        &Command::SweepAlpha {
            from,
            to,
            steps,
            nodes,
            k_max,
        } => {
            let cfg = SweepConfig {
                from,
                to,
                steps,
                nodes,
                k_max,
            };
            let events = sweep_alpha(&cfg, options(cli).tolerances()?)?;
            let path = write_sweep(&cli.out, cli.format.unwrap_or_default(), &events)?;
            println!(
                "{} events over {} values of alpha -> {}",
                events.len(),
                steps,
                path.display()
            );
            Ok(())
        }
        &Command::RandomSuite { per_case } => {
            if per_case == 0 {
                return Err(CliError::Input("--per-case: must be at least 1".into()));
            }
            let summary =
                run_case_suite(per_case, cli.seed.unwrap_or(0), options(cli).tolerances()?);
            let path = write_suite(&cli.out, cli.format.unwrap_or_default(), &summary)?;
            for case in krein_cli::suite::CASES {
                let (ok, total) = summary.count(case);
                println!("case {}: {ok}/{total} passed", case.as_str());
            }
            println!(
                "max projector error {:.3e} -> {}",
                summary.max_projector_error,
                path.display()
            );
            if summary.passed {
                Ok(())
            } else {
                Err(CliError::Oracle("random suite: oracle disagreement".into()))
            }
        }
    }
}

fn run_scenario(s: &Scenario, cli: &Cli) -> Result<(), CliError> {
    let (report, files) = execute(s, &options(cli))?;
    print_summary(&report);
    for f in &files {
        println!("wrote {}", f.display());
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Oracle(
            "verification failed: prediction disagrees with the oracle".into(),
        ))
    }
}

fn print_summary(r: &Report) {
    println!("{} scenario, cluster_tol {:.3e}", r.kind, r.cluster_tol);
    if let Some(n) = r.resolved_modes {
        println!("resolved modes: {n}");
    }
    for c in r.classify.iter().flatten() {
        println!(
            "lambda0 {:.10e}: case {} ({} -> {})",
            c.lambda0, c.case, c.multiplicity_before, c.multiplicity_after
        );
    }
    for m in r.modes.iter().flatten() {
        println!(
            "mode {:>2}: case {} ({} -> {}), B eigenvalues in window {}{}",
            m.mode,
            m.case,
            m.multiplicity_before,
            m.multiplicity_after,
            m.perturbed_within_window,
            if m.removed { ", removed" } else { "" }
        );
    }
    if let Some(roots) = &r.roots {
        println!("new eigenvalues: {}", roots.len());
    }
    if let Some(v) = &r.verify {
        let failed = v.checks.iter().filter(|c| !c.passed).count();
        println!("verify: {} checks, {failed} failed", v.checks.len());
    }
}
