use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curvebody::dynamics::kinetic_audit;
use curvebody::space::geodesic_distance;
use curvebody::{ChartPoint, SpaceSign, Vec3};
use curvebody_cli::output::Format;
use curvebody_cli::simulate::{run_simulation, SimulateError};
use curvebody_cli::verify::{describe_flags, run_suite};
use curvebody_cli::{parse_config, SimConfig};

#[derive(Parser)]
#[command(name = "curvebody", version, about = "Two-body mechanics on the 3-sphere and Lobachevsky space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a configuration and write the trajectory.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Run the invariant suite over seeded random states.
    Verify {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        space: Option<SpaceSign>,
    },
    /// Geodesic distance between two chart points.
    Distance {
        #[arg(long)]
        space: SpaceSign,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        q1: Vec3<f64>,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        q2: Vec3<f64>,
    },
    /// Every kinetic-energy form for the initial state of a configuration.
    Audit {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_triple(s: &str) -> Result<Vec3<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got `{s}`"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"))?;
    }
    Ok(Vec3(v))
}

/// Fixed notation with twelve significant digits.
fn twelve_digits(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.11}");
    }
    let decimals = (11 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn load(path: &PathBuf) -> Result<SimConfig, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })?;
    parse_config(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn simulate(config: PathBuf, out: PathBuf, format: Format) -> ExitCode {
    let cfg = match load(&config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    match run_simulation(&cfg, &out, format) {
        Ok(outcome) => match outcome.status_line() {
            None => ExitCode::SUCCESS,
            Some(line) => {
                eprintln!("{line}");
                ExitCode::from(2)
            }
        },
        Err(e @ SimulateError::Initial(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn verify(cases: u64, seed: u64, space: Option<SpaceSign>) -> ExitCode {
    let spaces: Vec<SpaceSign> = match space {
        Some(s) => vec![s],
        None => SpaceSign::BOTH.to_vec(),
    };
    let run = std::panic::catch_unwind(|| run_suite(cases as usize, seed, &spaces));
    match run {
        Ok(report) => {
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(_) => {
            eprintln!("error: internal failure while running the suite");
            ExitCode::from(3)
        }
    }
}

fn distance(space: SpaceSign, q1: Vec3<f64>, q2: Vec3<f64>) -> ExitCode {
    let result = ChartPoint::new(q1, space)
        .and_then(|p1| Ok((p1, ChartPoint::new(q2, space)?)))
        .and_then(|(p1, p2)| geodesic_distance(&p1, &p2));
    match result {
        Ok(r) => {
            println!("{}", twelve_digits(r));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:?}: {e}");
            ExitCode::from(1)
        }
    }
}

fn audit(config: PathBuf) -> ExitCode {
    let cfg = match load(&config) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let report = match kinetic_audit(&cfg.state, &cfg.masses) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    println!("space: {}", report.sign);
    println!("kinetic energy (embedding): {:.16e}", report.embedding);
    println!("kinetic energy (chart):     {:.16e}", report.chart);
    println!("chart metric with printed inner sign: {:.16e}", report.chart_literal_metric);
    if let Some(c) = report.cross_term {
        println!("cross-term magnitude: {c:.6e}");
    }
    println!("{:<12} {:>22} {:>22}", "form", "printed residual", "corrected residual");
    for (name, printed, corrected) in report.residuals() {
        println!("{name:<12} {printed:>22.6e} {corrected:>22.6e}");
    }
    if let Some((signed, printed)) = report.per_particle {
        println!("per-particle relative vectors: signed {signed:.6e}, printed orientation {printed:.6e}");
    }
    for (name, e) in &report.skipped {
        println!("skipped {name}: {e}");
    }
    println!("correction flags: {}", describe_flags(&report.flags));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Simulate { config, out, format } => simulate(config, out, format),
        Command::Verify { cases, seed, space } => verify(cases, seed, space),
        Command::Distance { space, q1, q2 } => distance(space, q1, q2),
        Command::Audit { config } => audit(config),
    }
}
