//! The invariant suite behind `verify`: one check per module-level
//! invariant, each reporting a measured number against its tolerance.

use serde::Serialize;

use vortexwave::bifurcation::{
    harmonic_extension_dy, strengths_cubic, trace_cubic_profile, wave_speed_cubic,
};
use vortexwave::fd_laplace::fd_extension_dy;
use vortexwave::greens::{
    halfstrip_map_spec, identity_disk_spec, regularized_gradient, strip_map_spec, verify_green,
    GreenTolerances,
};
use vortexwave::interaction::{
    scaled_limit_report, singular_theta2, singular_theta2_numeric, small_theta_limit_matrix,
    two_vortex_det, InteractionMatrix,
};
use vortexwave::numerics::diff::{derivative4, laplacian5, second_derivative5};
use vortexwave::numerics::linalg::residual_norm;
use vortexwave::periodic::{
    forcing_period_mean, periodic_forcing, periodic_profile, periodic_profile_default_terms,
    periodic_profile_oracle, periodic_wave_speed_gradient_route, periodic_wave_speed_slope,
    PeriodicParams,
};
use vortexwave::profile::{
    forcing, forcing_antiderivative, forcing_antiderivative2, mode_coefficient_closed,
    mode_coefficient_integral, mode_coefficient_series, profile_elementary, profile_oracle,
    profile_series, Branch, Profile, ProfileSpec,
};
use vortexwave::stream::{
    newtonian_potential, regular_gradperp_at_vortex, stream_function, wave_speed_slope,
    PhysicalParams, Point2, VortexConfig,
};
use vortexwave::streamlines::{
    integrate_streamline, stagnation_points, steady_velocity, stream_invariant,
};

/// One invariant check: `measured` must not exceed `tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn bounded(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Check {
            name,
            measured,
            tolerance,
            passed: measured.is_finite() && measured <= tolerance,
        }
    }

    fn failed(name: &'static str) -> Self {
        Check {
            name,
            measured: f64::NAN,
            tolerance: 0.0,
            passed: false,
        }
    }
}

fn catch(name: &'static str, f: impl FnOnce() -> Option<Check>) -> Check {
    f().unwrap_or_else(|| Check::failed(name))
}

fn params(h: f64) -> PhysicalParams<f64> {
    PhysicalParams::new(1.0, 0.05, h).unwrap()
}

fn log_grid(h: f64) -> Vec<f64> {
    let mut xs = vec![0.0];
    for i in 0..40 {
        xs.push(1e-3 * (20.0 / 1e-3_f64).powf(i as f64 / 39.0) * h);
    }
    xs
}

fn stream_checks(out: &mut Vec<Check>) {
    let pr = params(1.0);

    out.push(catch("stream.boundary-traces", || {
        let mut worst: f64 = 0.0;
        for &theta in &[0.25, 0.5, 0.8] {
            for &x in &log_grid(1.0) {
                worst = worst.max(stream_function(&pr, theta, Point2::new(x, 0.0)).ok()?.abs());
                worst = worst.max(stream_function(&pr, theta, Point2::new(x, -1.0)).ok()?.abs());
            }
        }
        Some(Check::bounded("stream.boundary-traces", worst, 1e-12))
    }));

    out.push(catch("stream.parity", || {
        let theta = 0.35;
        let mut worst: f64 = 0.0;
        for &(x, y) in &[(0.4, -0.3), (1.7, -0.6), (0.05, -0.5)] {
            let v = stream_function(&pr, theta, Point2::new(x, y)).ok()?;
            let even = stream_function(&pr, theta, Point2::new(-x, y)).ok()?;
            let odd = stream_function(&pr, theta, Point2::new(x, -y)).ok()?;
            worst = worst.max((v - even).abs()).max((v + odd).abs());
        }
        Some(Check::bounded("stream.parity", worst, 1e-13))
    }));

    out.push(catch("stream.regular-part-harmonic", || {
        let theta = 0.4;
        let reg = |x: f64, y: f64| {
            stream_function(&pr, theta, Point2::new(x, y)).unwrap()
                - newtonian_potential(Point2::new(x, y + (1.0 - theta))).unwrap()
        };
        let mut worst: f64 = 0.0;
        for &(x, y) in &[(0.1, -0.5), (0.4, -0.3)] {
            let l1 = laplacian5(reg, x, y, 1e-2).abs();
            let l2 = laplacian5(reg, x, y, 5e-3).abs();
            worst = worst.max(((l1 / l2).log2() - 2.0).abs());
        }
        Some(Check::bounded("stream.regular-part-harmonic", worst, 0.3))
    }));

    out.push(catch("stream.far-field-rate", || {
        let theta = 0.3;
        let xs: Vec<f64> = (0..9).map(|i| 2.0 + i as f64).collect();
        let logs: Vec<f64> = xs
            .iter()
            .map(|&x| {
                stream_function(&pr, theta, Point2::new(x, -0.4))
                    .unwrap()
                    .abs()
                    .ln()
            })
            .collect();
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = logs.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(&logs).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let rel = (slope + std::f64::consts::PI).abs() / std::f64::consts::PI;
        Some(Check::bounded("stream.far-field-rate", rel, 0.01))
    }));

    out.push(catch("stream.c1-consistency", || {
        let mut worst: f64 = 0.0;
        for &theta in &[0.2, 0.5, 0.7] {
            let r = regular_gradperp_at_vortex(&pr, theta);
            let c1 = wave_speed_slope(&pr, theta);
            worst = worst.max((r.x - c1).abs()).max(r.y.abs());
        }
        Some(Check::bounded("stream.c1-consistency", worst, 0.0))
    }));
}

fn interaction_checks(out: &mut Vec<Check>) {
    out.push(catch("theta.reflection-antisymmetry", || {
        let config = VortexConfig::new(vec![0.7_f64, 0.4, 0.15]).ok()?;
        let m = InteractionMatrix::build(&config, 2.0).ok()?;
        let r = InteractionMatrix::build(&config.reflected(), 2.0).ok()?;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst
                    .max((m.entry(i, j) + r.entry(i, j)).abs() / m.entry(i, j).abs().max(1.0));
            }
        }
        let det_gap = (r.det() + m.det()).abs() / m.det().abs().max(1e-300);
        Some(Check::bounded(
            "theta.reflection-antisymmetry",
            worst.max(det_gap),
            1e-12,
        ))
    }));

    out.push(catch("theta.two-vortex-positive-triangle", || {
        let mut min_det = f64::INFINITY;
        for i in 0..50 {
            let theta1 = 0.01 + 0.49 * i as f64 / 49.0;
            for j in 0..50 {
                let theta2 = theta1 * (j as f64 + 0.5) / 51.0;
                min_det = min_det.min(two_vortex_det(theta1, theta2, 1.0));
            }
        }
        // report the violation margin: positive determinants pass
        Some(Check::bounded(
            "theta.two-vortex-positive-triangle",
            (-min_det).max(0.0),
            0.0,
        ))
    }));

    out.push(catch("theta.gamma1-residual", || {
        let config = VortexConfig::new(vec![0.62_f64, 0.35, 0.11]).ok()?;
        let m = InteractionMatrix::build(&config, 0.8).ok()?;
        let gamma = m.leading_strengths().ok()?;
        let res = residual_norm(m.entries(), &gamma, &[1.0, 1.0, 1.0]);
        Some(Check::bounded("theta.gamma1-residual", res, 1e-10))
    }));

    out.push(catch("theta.det-monotone-in-theta2", || {
        let mut min_step = f64::INFINITY;
        for &theta1 in &[0.55, 0.7, 0.85] {
            let mut prev = f64::NEG_INFINITY;
            for j in 1..400 {
                let d = two_vortex_det(theta1, theta1 * j as f64 / 400.0, 1.0);
                if prev > f64::NEG_INFINITY {
                    min_step = min_step.min(d - prev);
                }
                prev = d;
            }
        }
        Some(Check::bounded(
            "theta.det-monotone-in-theta2",
            (-min_step).max(0.0),
            0.0,
        ))
    }));

    out.push(catch("theta.closed-form-vs-lu", || {
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            for j in 0..20 {
                let theta1: f64 = 0.05 + 0.9 * i as f64 / 19.0;
                let theta2 = theta1 * (0.04 + 0.92 * j as f64 / 19.0);
                if theta2 <= 0.0 || theta2 >= theta1 {
                    continue;
                }
                let closed = two_vortex_det(theta1, theta2, 1.7);
                let config = VortexConfig::new(vec![theta1, theta2]).ok()?;
                let lu = InteractionMatrix::build(&config, 1.7).ok()?.det();
                worst = worst.max((closed - lu).abs() / closed.abs().max(lu.abs()).max(1e-300));
            }
        }
        Some(Check::bounded("theta.closed-form-vs-lu", worst, 1e-12))
    }));

    out.push(catch("theta.singular-curve-routes", || {
        let mut worst: f64 = 0.0;
        for &theta1 in &[0.6_f64, 0.7, 0.8, 0.9] {
            let a = singular_theta2(theta1).ok()?;
            let b = singular_theta2_numeric(theta1, 1e-13).ok()?;
            worst = worst.max((a - b).abs());
        }
        Some(Check::bounded("theta.singular-curve-routes", worst, 1e-10))
    }));

    out.push(catch("theta.limit-matrix", || {
        let tilde = [0.3_f64, 0.2, 0.1];
        let b = small_theta_limit_matrix(&tilde).ok()?;
        let mut skew: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                skew = skew.max((b[i][j] + b[j][i]).abs());
            }
        }
        let report = scaled_limit_report(&tilde, &[1e-1, 1e-2, 1e-3]).ok()?;
        let increasing = report
            .deviation
            .windows(2)
            .map(|w| (w[1] - w[0]).max(0.0))
            .fold(0.0, f64::max);
        Some(Check::bounded("theta.limit-matrix", skew.max(increasing), 0.0))
    }));
}

fn profile_checks(out: &mut Vec<Check>) {
    out.push(catch("profile.three-route-agreement", || {
        let mut worst: f64 = 0.0;
        for &m in &[0.5_f64, 1.0, 2.0, 2.5] {
            for &theta in &[0.25, 0.5, 0.75] {
                let spec =
                    ProfileSpec::single(PhysicalParams::with_m(1.0, 1.0, m).ok()?, theta).ok()?;
                for &x in &[0.05, 0.2, 0.7, 1.5, 3.0, 6.0, 10.0] {
                    let oracle = profile_oracle(&spec, x).ok()?;
                    let series = profile_series(&spec, x, 60).ok()?;
                    worst = worst.max((oracle - series).abs());
                    if spec.branch() == Branch::IntegerM && x <= spec.elementary_x_max() {
                        let elem = profile_elementary(&spec, x).ok()?;
                        worst = worst.max((elem - series).abs()).max((elem - oracle).abs());
                    }
                }
            }
        }
        Some(Check::bounded("profile.three-route-agreement", worst, 1e-8))
    }));

    out.push(catch("profile.monotone-below-midline", || {
        let spec = ProfileSpec::single(PhysicalParams::with_m(1.0, 1.0, 1.5).ok()?, 0.4).ok()?;
        let mut prev = profile_oracle(&spec, 0.0).ok()?;
        let mut min_step = f64::INFINITY;
        for i in 1..=40 {
            let v = profile_oracle(&spec, 10.0 * i as f64 / 40.0).ok()?;
            min_step = min_step.min(v - prev);
            prev = v;
        }
        Some(Check::bounded(
            "profile.monotone-below-midline",
            (-min_step).max(0.0),
            0.0,
        ))
    }));

    out.push(catch("profile.ode-residual-single", || {
        let spec = ProfileSpec::single(PhysicalParams::with_m(1.0_f64, 1.0, 1.4).ok()?, 0.35).ok()?;
        let mut worst: f64 = 0.0;
        for &x in &[0.5, 1.0, 2.0] {
            let eta = profile_oracle(&spec, x).ok()?;
            let eta_xx = second_derivative5(|t| profile_oracle(&spec, t).unwrap(), x, 0.02);
            let residual =
                spec.params().g() * eta - spec.params().alpha2() * eta_xx + forcing(&spec, x);
            worst = worst.max(residual.abs());
        }
        Some(Check::bounded("profile.ode-residual-single", worst, 1e-6))
    }));

    out.push(catch("profile.ode-residual-two-vortex", || {
        let params = PhysicalParams::new(1.0_f64, 0.05, 1.0).ok()?;
        let config = VortexConfig::new(vec![0.6_f64, 0.25]).ok()?;
        let spec = ProfileSpec::multi(params, config).ok()?;
        let mut worst: f64 = 0.0;
        for &x in &[0.5, 1.0, 2.0] {
            let eta = profile_oracle(&spec, x).ok()?;
            let eta_xx = second_derivative5(|t| profile_oracle(&spec, t).unwrap(), x, 0.005);
            let residual =
                spec.params().g() * eta - spec.params().alpha2() * eta_xx + forcing(&spec, x);
            worst = worst.max(residual.abs());
        }
        Some(Check::bounded("profile.ode-residual-two-vortex", worst, 1e-6))
    }));

    out.push(catch("profile.antiderivative-chain", || {
        let spec = ProfileSpec::single(PhysicalParams::with_m(1.0_f64, 1.0, 1.0).ok()?, 0.35).ok()?;
        let mut worst: f64 = 0.0;
        for &x in &[0.3, 1.1, 2.7] {
            let d1 = derivative4(|t| forcing_antiderivative(&spec, t).unwrap(), x, 1e-3);
            worst = worst.max((d1 - forcing(&spec, x)).abs());
            let d2 = derivative4(|t| forcing_antiderivative2(&spec, t).unwrap(), x, 1e-3);
            worst = worst.max((d2 - forcing_antiderivative(&spec, x).unwrap()).abs());
        }
        Some(Check::bounded("profile.antiderivative-chain", worst, 1e-8))
    }));

    out.push(catch("profile.mode-coefficient-identity", || {
        let mut worst: f64 = 0.0;
        for &m in &[0.3_f64, 0.5, 1.5, 2.7] {
            for &theta in &[0.2, 0.5, 0.8] {
                let closed = mode_coefficient_closed(m, theta).ok()?;
                let series = mode_coefficient_series(m, theta, 10_000).ok()?;
                worst = worst.max((closed - series).abs());
                if m < 1.0 {
                    let integral = mode_coefficient_integral(m, theta).ok()?;
                    worst = worst.max((closed - integral).abs());
                }
            }
        }
        Some(Check::bounded("profile.mode-coefficient-identity", worst, 1e-6))
    }));
}

fn bifurcation_checks(out: &mut Vec<Check>) {
    out.push(catch("bifurcation.c3-negative", || {
        let mut worst = f64::NEG_INFINITY;
        for &theta in &[0.1, 0.2, 0.3, 0.4, 0.5] {
            let spec =
                ProfileSpec::single(PhysicalParams::with_m(1.0, 1.0, 1.0).ok()?, theta).ok()?;
            worst = worst.max(wave_speed_cubic(&spec).ok()?);
        }
        // all c3 strictly negative: the largest one is the margin
        Some(Check::bounded("bifurcation.c3-negative", worst.max(0.0), 0.0))
    }));

    out.push(catch("bifurcation.extension-linearity", || {
        let params = PhysicalParams::new(1.0, 0.05, 1.0).ok()?;
        let f1 = |x: f64| (-x * x).exp();
        let f2 = |x: f64| (-0.5 * x * x).exp() * (2.0 * x).cos();
        let p1 = Profile::sample_even(|x| Ok(f1(x)), 8.0, 640).ok()?;
        let p2 = Profile::sample_even(|x| Ok(f2(x)), 8.0, 640).ok()?;
        let combo = Profile::sample_even(|x| Ok(1.7 * f1(x) - 0.6 * f2(x)), 8.0, 640).ok()?;
        let a = harmonic_extension_dy(&p1, &params, 0.4).ok()?;
        let b = harmonic_extension_dy(&p2, &params, 0.4).ok()?;
        let c = harmonic_extension_dy(&combo, &params, 0.4).ok()?;
        Some(Check::bounded(
            "bifurcation.extension-linearity",
            (c - (1.7 * a - 0.6 * b)).abs(),
            1e-10,
        ))
    }));

    out.push(catch("bifurcation.extension-vs-fd-oracle", || {
        let params = PhysicalParams::new(1.0, 0.05, 1.0).ok()?;
        let data: [(fn(f64) -> f64, f64, f64); 3] = [
            (|x| (-x * x).exp(), 0.5, 8.0),
            (|x| (-x * x).exp() * (2.0 * x).cos(), 0.25, 8.0),
            (
                |x| {
                    let s = 1.0 / x.cosh();
                    s * s
                },
                0.5,
                16.0,
            ),
        ];
        let mut worst: f64 = 0.0;
        for (f, theta, x_max) in data {
            let n_half = (128.0 * x_max) as usize;
            let zeta = Profile::sample_even(|x| Ok(f(x)), x_max, n_half).ok()?;
            let spectral = harmonic_extension_dy(&zeta, &params, theta).ok()?;
            let fd = fd_extension_dy(&zeta, &params, theta, 2 * n_half, 256).ok()?;
            worst = worst.max((spectral - fd).abs());
        }
        Some(Check::bounded("bifurcation.extension-vs-fd-oracle", worst, 1e-4))
    }));

    out.push(catch("bifurcation.gamma3-residual", || {
        let params = PhysicalParams::with_m(1.0, 1.0, 1.0).ok()?;
        let config = VortexConfig::new(vec![0.6_f64, 0.25]).ok()?;
        let spec = ProfileSpec::multi(params, config).ok()?;
        let zeta = trace_cubic_profile(&spec, 40).ok()?;
        let rhs: Vec<f64> = (0..2)
            .map(|i| harmonic_extension_dy(&zeta, spec.params(), spec.config().theta(i)).unwrap())
            .collect();
        let gamma3 = strengths_cubic(&spec).ok()?;
        let m = InteractionMatrix::build(spec.config(), 1.0).ok()?;
        Some(Check::bounded(
            "bifurcation.gamma3-residual",
            residual_norm(m.entries(), &gamma3, &rhs),
            1e-10,
        ))
    }));
}

fn streamline_checks(out: &mut Vec<Check>) {
    let pr = params(1.0);

    out.push(catch("streamlines.invariant-drift", || {
        let theta = 1.0 / 3.0;
        let p0 = Point2::new(0.3, -0.4);
        let speed = steady_velocity(&pr, theta, p0).ok()?.norm();
        let path = integrate_streamline(&pr, theta, p0, 1.0, 1e-3 / speed, 5_000).ok()?;
        let e0 = stream_invariant(&pr, theta, p0);
        let drift = path
            .points
            .iter()
            .map(|&p| (stream_invariant(&pr, theta, p) - e0).abs())
            .fold(0.0, f64::max);
        Some(Check::bounded("streamlines.invariant-drift", drift, 1e-8))
    }));

    out.push(catch("streamlines.stagnation-velocity", || {
        let mut worst: f64 = 0.0;
        for &theta in &[0.2, 0.35, 0.65, 0.8] {
            for p in stagnation_points(&pr, theta).ok()? {
                worst = worst.max(steady_velocity(&pr, theta, p).ok()?.norm());
            }
        }
        Some(Check::bounded("streamlines.stagnation-velocity", worst, 1e-10))
    }));

    out.push(catch("streamlines.mirror-symmetry", || {
        let theta = 0.4;
        let p0 = Point2::new(0.8, -0.45);
        let fwd = integrate_streamline(&pr, theta, p0, 1.0, 2e-3, 3_000).ok()?;
        let bwd =
            integrate_streamline(&pr, theta, Point2::new(-p0.x, p0.y), -1.0, 2e-3, 3_000).ok()?;
        let mut worst: f64 = 0.0;
        for (a, b) in fwd.points.iter().zip(bwd.points.iter()) {
            worst = worst.max((a.x + b.x).abs()).max((a.y - b.y).abs());
        }
        Some(Check::bounded("streamlines.mirror-symmetry", worst, 1e-9))
    }));

    out.push(catch("streamlines.infinite-depth-limit", || {
        let d = 1.0;
        let target = 3.0_f64.sqrt() * d;
        let gap = |h: f64| {
            let pr = PhysicalParams::new(1.0, 0.05, h).unwrap();
            let pts = stagnation_points(&pr, 1.0 - d / h).unwrap();
            ((pts[1].x - target) / target).abs()
        };
        let g10 = gap(10.0);
        let g100 = gap(100.0);
        let shrinking = if g100 < g10 { g100 } else { f64::INFINITY };
        Some(Check::bounded("streamlines.infinite-depth-limit", shrinking, 1e-3))
    }));
}

fn periodic_checks(out: &mut Vec<Check>) {
    let pp = PeriodicParams::new(1.0_f64, 1.0, 0.01).unwrap();

    out.push(catch("periodic.forcing-mean-zero", || {
        Some(Check::bounded(
            "periodic.forcing-mean-zero",
            forcing_period_mean(&pp).abs(),
            1e-12,
        ))
    }));

    out.push(catch("periodic.profile-mean-zero", || {
        let n = periodic_profile_default_terms(&pp);
        let m = 64;
        let mean: f64 = (0..m)
            .map(|j| {
                periodic_profile(&pp, -std::f64::consts::PI + pp.period() * j as f64 / m as f64, n)
            })
            .sum::<f64>()
            / m as f64;
        Some(Check::bounded("periodic.profile-mean-zero", mean.abs(), 1e-10))
    }));

    out.push(catch("periodic.profile-symmetry", || {
        let n = periodic_profile_default_terms(&pp);
        let mut worst: f64 = 0.0;
        for &x in &[0.3, 1.1, 2.4] {
            let v = periodic_profile(&pp, x, n);
            worst = worst.max((v - periodic_profile(&pp, -x, n)).abs());
            worst = worst.max((v - periodic_profile(&pp, x + pp.period(), n)).abs());
        }
        Some(Check::bounded("periodic.profile-symmetry", worst, 1e-12))
    }));

    out.push(catch("periodic.ode-residual", || {
        let n = periodic_profile_default_terms(&pp);
        let mut worst: f64 = 0.0;
        for &x in &[0.4, 1.0, 2.2] {
            let eta = periodic_profile(&pp, x, n);
            let eta_xx = second_derivative5(|t| periodic_profile(&pp, t, n), x, 1e-2);
            worst = worst
                .max((pp.g() * eta - pp.alpha2() * eta_xx + periodic_forcing(&pp, x)).abs());
        }
        Some(Check::bounded("periodic.ode-residual", worst, 1e-6))
    }));

    out.push(catch("periodic.c1-routes", || {
        let mut worst: f64 = 0.0;
        for &l in &[0.5_f64, 1.0, 3.0] {
            let p = PeriodicParams::new(l, 1.0, 0.01).ok()?;
            worst = worst
                .max((periodic_wave_speed_slope(&p) - periodic_wave_speed_gradient_route(&p)).abs());
        }
        Some(Check::bounded("periodic.c1-routes", worst, 1e-10))
    }));

    out.push(catch("periodic.series-vs-dft-oracle", || {
        let mut worst: f64 = 0.0;
        for &x in &[0.0, std::f64::consts::PI / 2.0, std::f64::consts::PI] {
            worst = worst
                .max((periodic_profile(&pp, x, 200) - periodic_profile_oracle(&pp, x, 1024)).abs());
        }
        Some(Check::bounded("periodic.series-vs-dft-oracle", worst, 1e-8))
    }));
}

fn greens_checks(out: &mut Vec<Check>) {
    let tol = GreenTolerances::<f64>::default();

    out.push(catch("greens.strip-map-report", || {
        let spec = strip_map_spec::<f64>(0.35, 1.0);
        let r = verify_green(&spec).ok()?;
        let worst = (r.dirichlet_max / tol.dirichlet)
            .max(r.laplacian_max / tol.laplacian)
            .max(r.mean_value_max / tol.mean_value);
        Some(Check::bounded("greens.strip-map-report", worst, 1.0))
    }));

    out.push(catch("greens.halfstrip-map-report", || {
        let spec = halfstrip_map_spec(PeriodicParams::new(1.0, 1.0, 0.01).ok()?);
        let r = verify_green(&spec).ok()?;
        let worst = (r.dirichlet_max / tol.dirichlet)
            .max(r.laplacian_max / tol.laplacian)
            .max(r.mean_value_max / tol.mean_value)
            .max(r.neumann_max? / tol.neumann);
        Some(Check::bounded("greens.halfstrip-map-report", worst, 1.0))
    }));

    out.push(catch("greens.identity-disk-report", || {
        let spec = identity_disk_spec::<f64>();
        let r = verify_green(&spec).ok()?;
        let worst = (r.dirichlet_max / tol.dirichlet)
            .max(r.laplacian_max / tol.laplacian)
            .max(r.mean_value_max / tol.mean_value);
        Some(Check::bounded("greens.identity-disk-report", worst, 1.0))
    }));

    out.push(catch("greens.strip-regularized-gradient", || {
        let mut worst: f64 = 0.0;
        for &theta in &[0.25, 0.4, 0.6] {
            let spec = strip_map_spec::<f64>(theta, 1.0);
            let g = regularized_gradient(&spec).ok()?;
            let expected = (std::f64::consts::PI * theta).cos()
                / (std::f64::consts::PI * theta).sin()
                / 4.0;
            worst = worst.max((g.x - expected).abs()).max(g.y.abs());
        }
        Some(Check::bounded("greens.strip-regularized-gradient", worst, 1e-10))
    }));

    out.push(catch("greens.rotation-invariance", || {
        let theta = 0.4;
        let base = strip_map_spec::<f64>(theta, 1.0);
        let rotated = vortexwave::greens::ConformalMapSpec::<f64> {
            name: "rotated strip",
            map: Box::new(move |z| {
                num_complex::Complex::from_polar(1.0, 0.77)
                    * vortexwave::stream::strip_to_disk_map(z, theta, 1.0)
            }),
            z0: base.z0,
            interior: base.interior.clone(),
            boundary: base.boundary.clone(),
            local_scale: base.local_scale,
        };
        let g0 = regularized_gradient(&base).ok()?;
        let g1 = regularized_gradient(&rotated).ok()?;
        Some(Check::bounded(
            "greens.rotation-invariance",
            (g0.x - g1.x).abs().max((g0.y - g1.y).abs()),
            1e-10,
        ))
    }));
}

/// Runs the whole invariant suite in deterministic order.
pub fn run_all() -> Vec<Check> {
    let mut checks = Vec::new();
    stream_checks(&mut checks);
    interaction_checks(&mut checks);
    profile_checks(&mut checks);
    bifurcation_checks(&mut checks);
    streamline_checks(&mut checks);
    periodic_checks(&mut checks);
    greens_checks(&mut checks);
    checks
}
