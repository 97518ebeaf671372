//! Subcommand implementations. Each returns the list of files written.

use std::path::{Path, PathBuf};

use serde::Serialize;

use vortexwave::bifurcation::{consistency_residuals, strengths_cubic, wave_speed_cubic};
use vortexwave::interaction::{singular_theta2, InteractionMatrix, SINGULAR_DET_TOL};
use vortexwave::periodic::{
    periodic_profile_default_terms, periodic_profile_with_tail, periodic_wave_speed_slope,
    PeriodicParams,
};
use vortexwave::profile::{
    far_field_decay, profile_elementary, profile_oracle, profile_value, Branch, DecayRate,
    ProfileSpec, TailSign,
};
use vortexwave::stream::{wave_speed_slope, PhysicalParams, Point2, VortexConfig};
use vortexwave::streamlines::{integrate_streamline, stagnation_points, Termination};

use crate::config::{
    PeriodicConfig, ProfileConfig, StreamlinesConfig, ThetaConfig,
};
use crate::output::{config_hash, write_json, write_text, Csv};
use crate::CliError;

fn out_prefix(out: &Option<PathBuf>, default: &str) -> PathBuf {
    out.clone().unwrap_or_else(|| PathBuf::from(default))
}

/// Hash of the parameters only; the output path does not affect the data.
fn data_hash<C: Clone + Serialize>(cfg: &C, clear_out: impl FnOnce(&mut C)) -> String {
    let mut hashed = cfg.clone();
    clear_out(&mut hashed);
    config_hash(&hashed)
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut p = prefix.as_os_str().to_owned();
    p.push(ext);
    PathBuf::from(p)
}

fn params_of(cfg: &ProfileConfig) -> Result<PhysicalParams<f64>, CliError> {
    PhysicalParams::new(cfg.g, cfg.resolve_alpha2(), cfg.h).map_err(CliError::from_invalid)
}

fn spec_of(cfg: &ProfileConfig) -> Result<ProfileSpec<f64>, CliError> {
    let params = params_of(cfg)?;
    match &cfg.thetas {
        None => ProfileSpec::single(params, cfg.theta).map_err(CliError::from_invalid),
        Some(list) => {
            let config = VortexConfig::new(list.clone()).map_err(CliError::from_invalid)?;
            ProfileSpec::multi(params, config).map_err(CliError::from_invalid)
        }
    }
}

#[derive(Debug, Serialize)]
struct DecaySummary {
    rate: &'static str,
    exponent: f64,
    constant: f64,
}

#[derive(Debug, Serialize)]
struct ProfileSummary {
    config_hash: String,
    thetas: Vec<f64>,
    h: f64,
    g: f64,
    alpha2: f64,
    m: f64,
    branch: &'static str,
    near_integer_warning: bool,
    routes: Vec<&'static str>,
    max_pairwise_diff: f64,
    max_series_tail_bound: f64,
    eta2_at_zero: f64,
    everywhere_negative: bool,
    tail_sign: Option<&'static str>,
    asymptotics: Option<DecaySummary>,
}

/// `profile`: evaluates every applicable route of the leading-order
/// surface profile on a symmetric grid; writes `<out>.csv` and
/// `<out>.json`.
pub fn cmd_profile(cfg: &ProfileConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let spec = spec_of(cfg)?;
    let hash = data_hash(cfg, |c| c.out = None);
    let single = spec.is_single();
    let integer_branch = spec.branch() == Branch::IntegerM;

    let mut routes: Vec<&'static str> = vec!["eta2", "eta2_oracle"];
    if single {
        routes.insert(1, "eta2_series");
        if integer_branch {
            routes.insert(2, "eta2_elementary");
        }
    }

    let mut columns: Vec<&str> = vec!["x"];
    columns.extend(routes.iter().copied());
    columns.push("abs_diff");
    let mut csv = Csv::new(&hash, &columns);

    let n = if cfg.n_points % 2 == 1 {
        cfg.n_points
    } else {
        cfg.n_points + 1
    };
    let half = (n - 1) / 2;
    let mut max_diff: f64 = 0.0;
    let mut max_tail: f64 = 0.0;
    let mut everywhere_negative = true;
    for i in 0..n {
        let x = (i as f64 - half as f64) / half as f64 * cfg.x_max;
        let composite = profile_value(&spec, x).map_err(CliError::from_numerical)?;
        if composite >= 0.0 {
            everywhere_negative = false;
        }
        let mut cells: Vec<Option<f64>> = vec![Some(x), Some(composite)];
        let mut values = vec![composite];
        if single {
            // the series route applies away from the origin; closer in the
            // composite value already comes from the oracle
            if x.abs() >= vortexwave::profile::NEAR_ORIGIN_FACTOR * cfg.h {
                let series = vortexwave::profile::profile_series_with_tail(
                    &spec,
                    x,
                    cfg.series_terms,
                )
                .map_err(CliError::from_numerical)?;
                max_tail = max_tail.max(series.tail_bound);
                cells.push(Some(series.value));
                values.push(series.value);
            } else {
                cells.push(None);
            }
            if integer_branch {
                match profile_elementary(&spec, x) {
                    Ok(v) => {
                        cells.push(Some(v));
                        values.push(v);
                    }
                    Err(vortexwave::Error::ElementaryOverflow { .. }) => cells.push(None),
                    Err(e) => return Err(CliError::from_numerical(e)),
                }
            }
        }
        let oracle = profile_oracle(&spec, x).map_err(CliError::from_numerical)?;
        cells.push(Some(oracle));
        values.push(oracle);

        let mut diff: f64 = 0.0;
        for a in &values {
            for b in &values {
                diff = diff.max((a - b).abs());
            }
        }
        max_diff = max_diff.max(diff);
        cells.push(Some(diff));
        csv.row(&cells);
    }

    let summary = ProfileSummary {
        config_hash: hash,
        thetas: spec.config().thetas().to_vec(),
        h: cfg.h,
        g: cfg.g,
        alpha2: cfg.resolve_alpha2(),
        m: spec.m(),
        branch: match spec.branch() {
            Branch::IntegerM => "integer",
            Branch::NonIntegerM => "non-integer",
        },
        near_integer_warning: spec.near_integer_warning(),
        routes,
        max_pairwise_diff: max_diff,
        max_series_tail_bound: max_tail,
        eta2_at_zero: profile_oracle(&spec, 0.0).map_err(CliError::from_numerical)?,
        everywhere_negative,
        tail_sign: if single {
            Some(match vortexwave::profile::tail_sign(&spec).map_err(CliError::from_numerical)? {
                TailSign::PositiveTail => "positive",
                TailSign::NegativeTail => "negative",
            })
        } else {
            None
        },
        asymptotics: if single {
            let d = far_field_decay(&spec).map_err(CliError::from_numerical)?;
            Some(DecaySummary {
                rate: match d.rate {
                    DecayRate::Geometric => "geometric",
                    DecayRate::GeometricLinear => "geometric-linear",
                    DecayRate::GravityCapillary => "gravity-capillary",
                },
                exponent: d.exponent,
                constant: d.constant,
            })
        } else {
            None
        },
    };

    let prefix = out_prefix(&cfg.out, "profile");
    let csv_path = with_ext(&prefix, ".csv");
    let json_path = with_ext(&prefix, ".json");
    write_text(&csv_path, &csv.finish())?;
    write_json(&json_path, &summary)?;
    Ok(vec![csv_path, json_path])
}

#[derive(Debug, Serialize)]
struct Residuals {
    kinematic1: f64,
    bernoulli2: f64,
    kinematic3: f64,
}

#[derive(Debug, Serialize)]
struct CoeffsSummary {
    config_hash: String,
    thetas: Vec<f64>,
    h: f64,
    g: f64,
    alpha2: f64,
    m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma1: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma3: Option<Vec<f64>>,
    residuals: Residuals,
}

/// `coeffs`: expansion coefficients and consistency residuals as JSON.
pub fn cmd_coeffs(cfg: &ProfileConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let spec = spec_of(cfg)?;
    let hash = data_hash(cfg, |c| c.out = None);
    let report = consistency_residuals(&spec).map_err(CliError::from_numerical)?;
    let residuals = Residuals {
        kinematic1: report.kinematic1,
        bernoulli2: report.bernoulli2,
        kinematic3: report.kinematic3,
    };

    let summary = if spec.is_single() {
        let theta = cfg.theta;
        CoeffsSummary {
            config_hash: hash,
            thetas: vec![theta],
            h: cfg.h,
            g: cfg.g,
            alpha2: cfg.resolve_alpha2(),
            m: spec.m(),
            c1: Some(wave_speed_slope(spec.params(), theta)),
            c3: Some(wave_speed_cubic(&spec).map_err(CliError::from_numerical)?),
            det_theta: None,
            gamma1: None,
            gamma3: None,
            residuals,
        }
    } else {
        let matrix = InteractionMatrix::build(
            &VortexConfig::new(spec.config().thetas().to_vec())
                .map_err(CliError::from_invalid)?,
            cfg.h,
        )
        .map_err(CliError::from_invalid)?;
        CoeffsSummary {
            config_hash: hash,
            thetas: spec.config().thetas().to_vec(),
            h: cfg.h,
            g: cfg.g,
            alpha2: cfg.resolve_alpha2(),
            m: spec.m(),
            c1: None,
            c3: None,
            det_theta: Some(matrix.det()),
            gamma1: Some(spec.config().strengths().unwrap().to_vec()),
            gamma3: Some(strengths_cubic(&spec).map_err(CliError::from_numerical)?),
            residuals,
        }
    };

    let prefix = out_prefix(&cfg.out, "coeffs");
    let json_path = with_ext(&prefix, ".json");
    write_json(&json_path, &summary)?;
    Ok(vec![json_path])
}

#[derive(Debug, Serialize)]
struct ThetaSweepSummary {
    config_hash: String,
    h: f64,
    n1: usize,
    n2: usize,
    /// Closed-form singular curve samples `(theta1, theta2_hat)`.
    singular_curve: Vec<(f64, f64)>,
}

#[derive(Debug, Serialize)]
struct ThetaMatrixSummary {
    config_hash: String,
    thetas: Vec<f64>,
    h: f64,
    entries: Vec<Vec<f64>>,
    det: f64,
    invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma1: Option<Vec<f64>>,
}

/// `theta`: either a determinant sweep over the two-vortex triangle
/// (default) or a matrix report for an explicit configuration.
pub fn cmd_theta(cfg: &ThetaConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let hash = data_hash(cfg, |c| c.out = None);
    let prefix = out_prefix(&cfg.out, "theta");

    if let Some(thetas) = &cfg.thetas {
        let config = VortexConfig::new(thetas.clone()).map_err(CliError::from_invalid)?;
        let matrix = InteractionMatrix::build(&config, cfg.h).map_err(CliError::from_invalid)?;
        let invertible = matrix.is_invertible(SINGULAR_DET_TOL);
        let summary = ThetaMatrixSummary {
            config_hash: hash,
            thetas: thetas.clone(),
            h: cfg.h,
            entries: matrix.entries().to_vec(),
            det: matrix.det(),
            invertible,
            gamma1: if invertible {
                Some(matrix.leading_strengths().map_err(CliError::from_numerical)?)
            } else {
                None
            },
        };
        let json_path = with_ext(&prefix, ".json");
        write_json(&json_path, &summary)?;
        return Ok(vec![json_path]);
    }

    let mut csv = Csv::new(&hash, &["theta1", "theta2", "det"]);
    for i in 0..cfg.n1 {
        let theta1 = (i as f64 + 1.0) / (cfg.n1 as f64 + 1.0);
        for j in 0..cfg.n2 {
            let theta2 = theta1 * (j as f64 + 1.0) / (cfg.n2 as f64 + 1.0);
            let det = vortexwave::interaction::two_vortex_det(theta1, theta2, cfg.h);
            csv.row(&[Some(theta1), Some(theta2), Some(det)]);
        }
    }

    let mut curve = Vec::new();
    for i in 0..60 {
        let theta1 = 0.5 + 0.49 * (i as f64 + 0.5) / 60.0;
        if let Ok(theta2) = singular_theta2(theta1) {
            curve.push((theta1, theta2));
        }
    }
    let summary = ThetaSweepSummary {
        config_hash: hash,
        h: cfg.h,
        n1: cfg.n1,
        n2: cfg.n2,
        singular_curve: curve,
    };

    let csv_path = with_ext(&prefix, ".csv");
    let json_path = with_ext(&prefix, ".json");
    write_text(&csv_path, &csv.finish())?;
    write_json(&json_path, &summary)?;
    Ok(vec![csv_path, json_path])
}

#[derive(Debug, Serialize)]
struct PathHeader {
    file: String,
    seed: (f64, f64),
    dt: f64,
    steps: usize,
    termination: &'static str,
}

#[derive(Debug, Serialize)]
struct StreamlinesSummary {
    config_hash: String,
    theta: f64,
    h: f64,
    eps_sign: f64,
    c1: f64,
    stagnation_points: Vec<(f64, f64)>,
    /// Invariant level of the orbit bounding the critical layer
    /// (absent at the midline, where every streamline is closed).
    #[serde(skip_serializing_if = "Option::is_none")]
    critical_layer_level: Option<f64>,
    paths: Vec<PathHeader>,
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::MaxSteps => "max-steps",
        Termination::LeftDomain => "left-domain",
        Termination::NearVortex => "near-vortex",
        Termination::NearEquilibrium => "near-equilibrium",
    }
}

/// Deterministic default seed bundle: three starts inside the closed
/// layer next to the vortex and three in the through-flow region.
fn default_seeds(theta: f64, h: f64) -> Vec<(f64, f64)> {
    let vortex_y = -(1.0 - theta) * h;
    let gap = theta.min(1.0 - theta) * h;
    let far_x = 3.0 * h.max(2.0 * 3.0_f64.sqrt() * h * theta.min(1.0 - theta));
    vec![
        (0.15 * gap, vortex_y),
        (0.45 * gap, vortex_y),
        (0.75 * gap, vortex_y),
        (far_x, -0.2 * h),
        (far_x, -0.5 * h),
        (far_x, -0.8 * h),
    ]
}

/// `streamlines`: integrates a bundle of paths; writes one CSV per path
/// (`<out>_path_NNN.csv` with columns `t,x,y`) plus `<out>.json`.
pub fn cmd_streamlines(cfg: &StreamlinesConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let params = PhysicalParams::new(1.0, 0.05, cfg.h).map_err(CliError::from_invalid)?;
    let hash = data_hash(cfg, |c| c.out = None);
    let prefix = out_prefix(&cfg.out, "streamlines");

    let seeds = cfg
        .seeds
        .clone()
        .unwrap_or_else(|| default_seeds(cfg.theta, cfg.h));

    // fastest speeds away from the vortex occur on the boundary column
    let c1 = wave_speed_slope(&params, cfg.theta);
    let v_boundary = vortexwave::stream::stream_function_dy_surface(&params, cfg.theta, 0.0)
        .abs()
        + c1.abs();
    let dt_cap = 0.05 * cfg.h / v_boundary.max(1e-12);

    let mut files = Vec::new();
    let mut headers = Vec::new();
    for (k, &(x, y)) in seeds.iter().enumerate() {
        let p0 = Point2::new(x, y);
        let speed = vortexwave::streamlines::steady_velocity(&params, cfg.theta, p0)
            .map_err(CliError::from_numerical)?
            .norm();
        let dt = cfg.dt.unwrap_or((2e-3 * cfg.h / speed.max(1e-12)).min(dt_cap));
        let path = integrate_streamline(&params, cfg.theta, p0, cfg.eps_sign, dt, cfg.max_steps)
            .map_err(CliError::from_numerical)?;

        let mut csv = Csv::new(&hash, &["t", "x", "y"]);
        for (t, p) in path.times().zip(&path.points) {
            csv.row(&[Some(t), Some(p.x), Some(p.y)]);
        }
        let file = format!(
            "{}_path_{k:03}.csv",
            prefix.file_name().and_then(|s| s.to_str()).unwrap_or("streamlines")
        );
        let path_file = prefix.with_file_name(&file);
        write_text(&path_file, &csv.finish())?;
        headers.push(PathHeader {
            file,
            seed: (x, y),
            dt,
            steps: path.points.len() - 1,
            termination: termination_name(path.termination),
        });
        files.push(path_file);
    }

    let summary = StreamlinesSummary {
        config_hash: hash,
        theta: cfg.theta,
        h: cfg.h,
        eps_sign: cfg.eps_sign,
        c1: wave_speed_slope(&params, cfg.theta),
        stagnation_points: stagnation_points(&params, cfg.theta)
            .map_err(CliError::from_numerical)?
            .into_iter()
            .map(|p| (p.x, p.y))
            .collect(),
        critical_layer_level: vortexwave::streamlines::critical_layer_level(&params, cfg.theta)
            .ok(),
        paths: headers,
    };
    let json_path = with_ext(&prefix, ".json");
    write_json(&json_path, &summary)?;
    files.push(json_path);
    Ok(files)
}

#[derive(Debug, Serialize)]
struct PeriodicSummary {
    config_hash: String,
    l: f64,
    g: f64,
    alpha2: f64,
    c1: f64,
    n_terms: usize,
    tail_bound: f64,
    max_series_oracle_diff: f64,
}

/// `periodic`: surface profile over one period as CSV plus a JSON summary.
pub fn cmd_periodic(cfg: &PeriodicConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.validate()?;
    let pp = PeriodicParams::new(cfg.l, cfg.g, cfg.alpha2).map_err(CliError::from_invalid)?;
    let hash = data_hash(cfg, |c| c.out = None);
    let n_terms = cfg.n_terms.unwrap_or_else(|| periodic_profile_default_terms(&pp));

    let mut csv = Csv::new(&hash, &["x", "eta_star"]);
    let half = std::f64::consts::PI * cfg.l;
    let n = if cfg.n_points % 2 == 1 {
        cfg.n_points
    } else {
        cfg.n_points + 1
    };
    let mut tail_max: f64 = 0.0;
    for i in 0..n {
        let x = -half + 2.0 * half * i as f64 / (n - 1) as f64;
        let (value, tail) = periodic_profile_with_tail(&pp, x, n_terms);
        tail_max = tail_max.max(tail);
        csv.row(&[Some(x), Some(value)]);
    }

    let mut diff: f64 = 0.0;
    for &x in &[0.0, 0.5 * half, half] {
        let s = vortexwave::periodic::periodic_profile(&pp, x, n_terms);
        let o = vortexwave::periodic::periodic_profile_oracle(&pp, x, cfg.dft_samples);
        diff = diff.max((s - o).abs());
    }

    let summary = PeriodicSummary {
        config_hash: hash,
        l: cfg.l,
        g: cfg.g,
        alpha2: cfg.alpha2,
        c1: periodic_wave_speed_slope(&pp),
        n_terms,
        tail_bound: tail_max,
        max_series_oracle_diff: diff,
    };

    let prefix = out_prefix(&cfg.out, "periodic");
    let csv_path = with_ext(&prefix, ".csv");
    let json_path = with_ext(&prefix, ".json");
    write_text(&csv_path, &csv.finish())?;
    write_json(&json_path, &summary)?;
    Ok(vec![csv_path, json_path])
}
