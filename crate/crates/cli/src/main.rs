//! `vortexwave` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vortexwave_cli::commands;
use vortexwave_cli::config::{
    self, PeriodicConfig, ProfileConfig, StreamlinesConfig, ThetaConfig, VerifyConfig,
};
use vortexwave_cli::output::{config_hash, write_json};
use vortexwave_cli::verify;
use vortexwave_cli::CliError;

#[derive(Parser)]
#[command(
    name = "vortexwave",
    about = "Leading-order gravity-capillary waves with point vortices: profiles, \
             coefficients, interaction matrices, streamlines, periodic waves, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct CommonOverrides {
    /// JSON config file; flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path prefix (writes `<out>.csv` / `<out>.json` as applicable)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct PhysicalOverrides {
    /// Vortex height in (0, 1)
    #[arg(long)]
    theta: Option<f64>,
    /// Multi-vortex heights, strictly decreasing (comma separated)
    #[arg(long, value_delimiter = ',')]
    thetas: Option<Vec<f64>>,
    /// Depth
    #[arg(long)]
    h: Option<f64>,
    /// Gravity
    #[arg(long)]
    g: Option<f64>,
    /// Surface-tension coefficient
    #[arg(long)]
    alpha2: Option<f64>,
    /// Dimensionless ratio fixing alpha2 when it is not given
    #[arg(long)]
    m: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Leading-order surface profile by every applicable route
    Profile {
        #[command(flatten)]
        common: CommonOverrides,
        #[command(flatten)]
        physical: PhysicalOverrides,
        /// Half-width of the evaluation grid
        #[arg(long)]
        x_max: Option<f64>,
        /// Number of grid points (made odd to include x = 0)
        #[arg(long)]
        n_points: Option<usize>,
        /// Series truncation
        #[arg(long)]
        series_terms: Option<usize>,
    },
    /// Expansion coefficients and consistency residuals
    Coeffs {
        #[command(flatten)]
        common: CommonOverrides,
        #[command(flatten)]
        physical: PhysicalOverrides,
    },
    /// Interaction-matrix sweep (default) or report for explicit heights
    Theta {
        #[command(flatten)]
        common: CommonOverrides,
        /// Explicit heights for a matrix report instead of the sweep
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,
        #[arg(long)]
        h: Option<f64>,
        /// Sweep resolution in theta_1
        #[arg(long)]
        n1: Option<usize>,
        /// Sweep resolution in theta_2
        #[arg(long)]
        n2: Option<usize>,
    },
    /// Integrate a bundle of steady-frame streamlines
    Streamlines {
        #[command(flatten)]
        common: CommonOverrides,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        h: Option<f64>,
        /// Vortex-strength sign (+1 or -1)
        #[arg(long)]
        eps_sign: Option<f64>,
        /// Fixed step size (auto-scaled per seed when absent)
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Periodic deep-water surface profile
    Periodic {
        #[command(flatten)]
        common: CommonOverrides,
        /// Period scale (period = 2 pi L)
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        alpha2: Option<f64>,
        #[arg(long)]
        n_points: Option<usize>,
        /// Series truncation (tail-driven default)
        #[arg(long)]
        n_terms: Option<usize>,
    },
    /// Run the full invariant suite and write a scoreboard
    Verify {
        #[command(flatten)]
        common: CommonOverrides,
    },
}

fn apply_physical(cfg: &mut ProfileConfig, p: &PhysicalOverrides) {
    if let Some(v) = p.theta {
        cfg.theta = v;
    }
    if p.thetas.is_some() {
        cfg.thetas = p.thetas.clone();
    }
    if let Some(v) = p.h {
        cfg.h = v;
    }
    if let Some(v) = p.g {
        cfg.g = v;
    }
    if p.alpha2.is_some() {
        cfg.alpha2 = p.alpha2;
    }
    if p.m.is_some() {
        cfg.m = p.m;
    }
}

#[derive(Serialize)]
struct Scoreboard {
    config_hash: String,
    passed: usize,
    failed: usize,
    checks: Vec<verify::Check>,
}

fn run_verify(cfg: &VerifyConfig) -> Result<bool, CliError> {
    let checks = verify::run_all();
    let mut passed = 0;
    let mut failed = 0;
    for c in &checks {
        if c.passed {
            passed += 1;
            println!("PASS {:<42} measured {:>12.3e} <= {:.1e}", c.name, c.measured, c.tolerance);
        } else {
            failed += 1;
            println!("FAIL {:<42} measured {:>12.3e} >  {:.1e}", c.name, c.measured, c.tolerance);
        }
    }
    println!("verify: {passed} passed, {failed} failed");
    let mut hashed = cfg.clone();
    hashed.out = None;
    let scoreboard = Scoreboard {
        config_hash: config_hash(&hashed),
        passed,
        failed,
        checks,
    };
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("verify.json"));
    write_json(&out, &scoreboard)?;
    Ok(failed == 0)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Profile {
            common,
            physical,
            x_max,
            n_points,
            series_terms,
        } => {
            let mut cfg: ProfileConfig = config::load(common.config.as_ref())?;
            apply_physical(&mut cfg, &physical);
            if let Some(v) = x_max {
                cfg.x_max = v;
            }
            if let Some(v) = n_points {
                cfg.n_points = v;
            }
            if let Some(v) = series_terms {
                cfg.series_terms = v;
            }
            if common.out.is_some() {
                cfg.out = common.out;
            }
            report_files(commands::cmd_profile(&cfg)?);
            Ok(true)
        }
        Command::Coeffs { common, physical } => {
            let mut cfg: ProfileConfig = config::load(common.config.as_ref())?;
            apply_physical(&mut cfg, &physical);
            if common.out.is_some() {
                cfg.out = common.out;
            }
            report_files(commands::cmd_coeffs(&cfg)?);
            Ok(true)
        }
        Command::Theta {
            common,
            thetas,
            h,
            n1,
            n2,
        } => {
            let mut cfg: ThetaConfig = config::load(common.config.as_ref())?;
            if thetas.is_some() {
                cfg.thetas = thetas;
            }
            if let Some(v) = h {
                cfg.h = v;
            }
            if let Some(v) = n1 {
                cfg.n1 = v;
            }
            if let Some(v) = n2 {
                cfg.n2 = v;
            }
            if common.out.is_some() {
                cfg.out = common.out;
            }
            report_files(commands::cmd_theta(&cfg)?);
            Ok(true)
        }
        Command::Streamlines {
            common,
            theta,
            h,
            eps_sign,
            dt,
            max_steps,
        } => {
            let mut cfg: StreamlinesConfig = config::load(common.config.as_ref())?;
            if let Some(v) = theta {
                cfg.theta = v;
            }
            if let Some(v) = h {
                cfg.h = v;
            }
            if let Some(v) = eps_sign {
                cfg.eps_sign = v;
            }
            if dt.is_some() {
                cfg.dt = dt;
            }
            if let Some(v) = max_steps {
                cfg.max_steps = v;
            }
            if common.out.is_some() {
                cfg.out = common.out;
            }
            report_files(commands::cmd_streamlines(&cfg)?);
            Ok(true)
        }
        Command::Periodic {
            common,
            l,
            g,
            alpha2,
            n_points,
            n_terms,
        } => {
            let mut cfg: PeriodicConfig = config::load(common.config.as_ref())?;
            if let Some(v) = l {
                cfg.l = v;
            }
            if let Some(v) = g {
                cfg.g = v;
            }
            if let Some(v) = alpha2 {
                cfg.alpha2 = v;
            }
            if let Some(v) = n_points {
                cfg.n_points = v;
            }
            if n_terms.is_some() {
                cfg.n_terms = n_terms;
            }
            if common.out.is_some() {
                cfg.out = common.out;
            }
            report_files(commands::cmd_periodic(&cfg)?);
            Ok(true)
        }
        Command::Verify { common } => {
            let mut cfg: VerifyConfig = config::load(common.config.as_ref())?;
            if common.out.is_some() {
                cfg.out = common.out;
            }
            run_verify(&cfg)
        }
    }
}

fn report_files(files: Vec<PathBuf>) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
