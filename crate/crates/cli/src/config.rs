//! Run configurations: serde records mirroring the library parameter
//! types, merged from an optional JSON file and command-line overrides,
//! validated with field-precise messages.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::CliError;

fn default_h() -> f64 {
    1.0
}

fn default_g() -> f64 {
    1.0
}

fn default_theta() -> f64 {
    0.3
}

fn default_x_max() -> f64 {
    10.0
}

fn default_n_points() -> usize {
    201
}

fn default_series_terms() -> usize {
    60
}

/// Parameters shared by the finite-depth commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    #[serde(default = "default_theta")]
    pub theta: f64,
    /// Multi-vortex heights; when present, `theta` is ignored.
    #[serde(default)]
    pub thetas: Option<Vec<f64>>,
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    /// Surface tension; defaults through `m` when absent.
    #[serde(default)]
    pub alpha2: Option<f64>,
    /// Dimensionless ratio fixing `alpha2 = g h^2/(pi m)^2`; default 1.
    #[serde(default)]
    pub m: Option<f64>,
    #[serde(default = "default_x_max")]
    pub x_max: f64,
    #[serde(default = "default_n_points")]
    pub n_points: usize,
    #[serde(default = "default_series_terms")]
    pub series_terms: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            theta: default_theta(),
            thetas: None,
            h: default_h(),
            g: default_g(),
            alpha2: None,
            m: None,
            x_max: default_x_max(),
            n_points: default_n_points(),
            series_terms: default_series_terms(),
            out: None,
        }
    }
}

impl ProfileConfig {
    /// Resolves the surface tension from `alpha2` or `m` (`alpha2` wins).
    pub fn resolve_alpha2(&self) -> f64 {
        self.alpha2.unwrap_or_else(|| {
            let m = self.m.unwrap_or(1.0);
            let alpha = self.g.sqrt() * self.h / (std::f64::consts::PI * m);
            alpha * alpha
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        check_positive("h", self.h)?;
        check_positive("g", self.g)?;
        if let Some(a2) = self.alpha2 {
            check_positive("alpha2", a2)?;
        }
        if let Some(m) = self.m {
            check_positive("m", m)?;
        }
        match &self.thetas {
            Some(list) => check_thetas("thetas", list)?,
            None => check_theta("theta", self.theta)?,
        }
        check_positive("x_max", self.x_max)?;
        if self.n_points < 3 {
            return Err(CliError::invalid("n_points", "must be at least 3"));
        }
        if self.series_terms == 0 {
            return Err(CliError::invalid("series_terms", "must be at least 1"));
        }
        Ok(())
    }
}

fn default_theta1_points() -> usize {
    19
}

fn default_theta2_points() -> usize {
    400
}

/// Configuration of the interaction-matrix sweep / report command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaConfig {
    #[serde(default = "default_h")]
    pub h: f64,
    /// Explicit configuration: emit a matrix report instead of a sweep.
    #[serde(default)]
    pub thetas: Option<Vec<f64>>,
    /// Sweep grid resolution in the theta_1 direction.
    #[serde(default = "default_theta1_points")]
    pub n1: usize,
    /// Sweep grid resolution in the theta_2 direction (per theta_1).
    #[serde(default = "default_theta2_points")]
    pub n2: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Default for ThetaConfig {
    fn default() -> Self {
        ThetaConfig {
            h: default_h(),
            thetas: None,
            n1: default_theta1_points(),
            n2: default_theta2_points(),
            out: None,
        }
    }
}

impl ThetaConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_positive("h", self.h)?;
        if let Some(list) = &self.thetas {
            check_thetas("thetas", list)?;
        }
        if self.n1 < 2 || self.n2 < 2 {
            return Err(CliError::invalid("n1/n2", "sweep needs at least 2 points"));
        }
        Ok(())
    }
}

fn default_eps_sign() -> f64 {
    1.0
}

fn default_max_steps() -> usize {
    20_000
}

/// Streamline-bundle configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamlinesConfig {
    #[serde(default = "default_theta")]
    pub theta: f64,
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_eps_sign")]
    pub eps_sign: f64,
    /// Step size; auto-scaled per seed when absent.
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    /// Explicit seed points `(x, y)`; a deterministic bundle when absent.
    #[serde(default)]
    pub seeds: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Default for StreamlinesConfig {
    fn default() -> Self {
        StreamlinesConfig {
            theta: default_theta(),
            h: default_h(),
            eps_sign: default_eps_sign(),
            dt: None,
            max_steps: default_max_steps(),
            seeds: None,
            out: None,
        }
    }
}

impl StreamlinesConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_theta("theta", self.theta)?;
        check_positive("h", self.h)?;
        if self.eps_sign != 1.0 && self.eps_sign != -1.0 {
            return Err(CliError::invalid("eps_sign", "must be +1 or -1"));
        }
        if let Some(dt) = self.dt {
            check_positive("dt", dt)?;
        }
        if self.max_steps == 0 {
            return Err(CliError::invalid("max_steps", "must be positive"));
        }
        Ok(())
    }
}

fn default_l() -> f64 {
    1.0
}

fn default_alpha2_periodic() -> f64 {
    0.01
}

fn default_dft_samples() -> usize {
    1024
}

/// Periodic deep-water configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicConfig {
    #[serde(default = "default_l")]
    pub l: f64,
    #[serde(default = "default_g")]
    pub g: f64,
    #[serde(default = "default_alpha2_periodic")]
    pub alpha2: f64,
    #[serde(default = "default_n_points")]
    pub n_points: usize,
    /// Series truncation; the tail-driven default when absent.
    #[serde(default)]
    pub n_terms: Option<usize>,
    #[serde(default = "default_dft_samples")]
    pub dft_samples: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

impl Default for PeriodicConfig {
    fn default() -> Self {
        PeriodicConfig {
            l: default_l(),
            g: default_g(),
            alpha2: default_alpha2_periodic(),
            n_points: default_n_points(),
            n_terms: None,
            dft_samples: default_dft_samples(),
            out: None,
        }
    }
}

impl PeriodicConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_positive("l", self.l)?;
        check_positive("g", self.g)?;
        check_positive("alpha2", self.alpha2)?;
        if self.n_points < 3 {
            return Err(CliError::invalid("n_points", "must be at least 3"));
        }
        if self.dft_samples < 16 || self.dft_samples % 2 != 0 {
            return Err(CliError::invalid("dft_samples", "must be even and >= 16"));
        }
        Ok(())
    }
}

/// Verification-suite configuration.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn check_positive(field: &'static str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::invalid(field, "must be finite and positive"))
    }
}

fn check_theta(field: &'static str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CliError::invalid(field, "must lie in (0, 1)"))
    }
}

fn check_thetas(field: &'static str, list: &[f64]) -> Result<(), CliError> {
    if list.is_empty() {
        return Err(CliError::invalid(field, "must not be empty"));
    }
    for &t in list {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::invalid(field, "every entry must lie in (0, 1)"));
        }
    }
    for w in list.windows(2) {
        if w[1] >= w[0] {
            return Err(CliError::invalid(field, "must be strictly decreasing"));
        }
    }
    Ok(())
}

/// Loads a config of type `C` from an optional JSON file, then lets the
/// caller apply flag overrides.
pub fn load<C>(path: Option<&PathBuf>) -> Result<C, CliError>
where
    C: Default + for<'de> Deserialize<'de>,
{
    match path {
        None => Ok(C::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::invalid("config", &format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::invalid("config", &format!("{}: {e}", p.display())))
        }
    }
}
