//! Higher-order expansion coefficients: the cubic surface trace, the cubic
//! wave-speed (or strength) corrections via a flat-strip harmonic-extension
//! evaluator, expansion assembly, and order-by-order consistency residuals.
//!
//! The harmonic extension on the flat strip is realized as a Fourier
//! multiplier in the horizontal frequency: with Dirichlet data `zeta` at
//! `y = 0` and zero at `y = -h`, the vertical derivative at
//! `(0, -(1-theta) h)` is
//! `(1/pi) int_0^inf xi cosh(xi theta h)/sinh(xi h) zeta_c(xi) dxi`
//! where `zeta_c` is the full-line cosine transform of `zeta`.

use crate::error::{Error, Result};
use crate::numerics::quad;
use crate::numerics::spline::CubicSpline;
use crate::numerics::trig::u_over_sinh_u;
use crate::profile::{forcing, profile_value, Profile, ProfileSpec};
use crate::scalar::Real;
use crate::stream::{
    stream_function_dy_surface, stream_function_sum_dy_surface, wave_speed_slope, PhysicalParams,
};

/// Default expansion-parameter cap; beyond it [`evaluate_expansion`] flags
/// a warning.
pub const EPS_MAX_DEFAULT: f64 = 0.1;

/// Relative tail threshold: harmonic-extension input must decay to
/// `1e-12 * max|zeta|` at the grid edge.
pub const DECAY_THRESHOLD: f64 = 1e-12;

/// Cubic coefficient of the surface trace at a point: for a single vortex
/// `-eta2 (c1 + Phi_y(., 0))`, for several `-eta2 (1 + Phi_y^gamma(., 0))`.
pub fn trace_cubic<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    let eta = profile_value(spec, x)?;
    Ok(-eta * trace_factor(spec, x))
}

fn trace_factor<T: Real>(spec: &ProfileSpec<T>, x: T) -> T {
    if spec.is_single() {
        let theta = spec.config().theta(0);
        wave_speed_slope(spec.params(), theta)
            + stream_function_dy_surface(spec.params(), theta, x)
    } else {
        T::one() + stream_function_sum_dy_surface(spec.params(), spec.config(), x)
    }
}

/// Grid half-width on which the profile (and hence the cubic trace) has
/// decayed to the `1e-12` threshold: the slower of the geometric rate
/// `pi/h` and the gravity-capillary rate `m pi/h`, plus margin.
pub fn decay_half_width<T: Real>(spec: &ProfileSpec<T>) -> T {
    let h = spec.params().h();
    let rate = T::PI() / h * spec.m().min(T::one());
    T::of(27.7) / rate + T::of(2.0) * h
}

/// Samples the cubic trace coefficient on a symmetric grid wide enough for
/// the harmonic-extension transform.
pub fn trace_cubic_profile<T: Real>(
    spec: &ProfileSpec<T>,
    samples_per_h: usize,
) -> Result<Profile<T>> {
    let h = spec.params().h();
    let x_max = decay_half_width(spec);
    let n_half = (x_max / h * T::of_usize(samples_per_h))
        .ceil()
        .as_f64() as usize;
    Profile::sample_even(|x| trace_cubic(spec, x), x_max, n_half)
}

/// Vertical derivative of the flat-strip harmonic extension of `zeta`
/// (Dirichlet data at `y = 0`, zero at `y = -h`) at `(0, -(1-theta_eval) h)`.
///
/// The cosine transform integrates the cubic-spline interpolant of the
/// samples with a composite Gauss rule per knot interval; the frequency
/// integral is adaptive with the multiplier's `e^{-xi h (1-theta)}`
/// envelope truncated at 1e-16.
pub fn harmonic_extension_dy<T: Real>(
    zeta: &Profile<T>,
    params: &PhysicalParams<T>,
    theta_eval: T,
) -> Result<T> {
    if !(theta_eval > T::zero() && theta_eval < T::one()) {
        return Err(Error::Domain {
            what: "theta_eval",
            value: theta_eval.as_f64(),
            bounds: "(0, 1)",
        });
    }
    let tail = zeta.edge_abs();
    let threshold = T::of(DECAY_THRESHOLD) * zeta.max_abs().max(T::epsilon());
    if tail > threshold {
        return Err(Error::InsufficientDecay {
            tail: tail.as_f64(),
            threshold: threshold.as_f64(),
        });
    }

    let h = params.h();
    let spline = CubicSpline::natural(zeta.xs().to_vec(), zeta.values().to_vec());
    // knots on [0, x_max]
    let knots: Vec<T> = spline
        .knots()
        .iter()
        .copied()
        .filter(|&x| x >= T::zero())
        .collect();

    // full-line cosine transform of the even data: 2 int_0^xmax
    let cosine_transform = |xi: T| -> T {
        let mut acc = T::zero();
        for w in knots.windows(2) {
            acc = acc + quad::gauss7(&|x| spline.eval(x) * (xi * x).cos(), w[0], w[1]);
        }
        T::of(2.0) * acc
    };

    // xi cosh(xi theta h)/sinh(xi h), stable at 0 and for large xi h
    let multiplier = |xi: T| -> T {
        let u = xi * h;
        if u > T::of(30.0) {
            let decay = (-u * (T::one() - theta_eval)).exp();
            xi * decay * (T::one() + (-T::of(2.0) * u * theta_eval).exp())
                / (T::one() - (-T::of(2.0) * u).exp())
        } else {
            u_over_sinh_u(u) / h * (u * theta_eval).cosh()
        }
    };

    // the multiplier envelope e^{-xi h (1 - theta)} reaches 1e-16 here
    let xi_max = T::of(40.0) / (h * (T::one() - theta_eval));
    let integral = quad::integrate(
        |xi| multiplier(xi) * cosine_transform(xi),
        T::zero(),
        xi_max,
        T::of(1e-11),
    )?;
    Ok(integral.value / T::PI())
}

/// Cubic wave-speed coefficient of the single-vortex expansion:
/// `-[H(0) zeta3]_y(0, -(1-theta) h)`. Negative for `theta <= 1/2`.
pub fn wave_speed_cubic<T: Real>(spec: &ProfileSpec<T>) -> Result<T> {
    let theta = spec.theta()?;
    let zeta = trace_cubic_profile(spec, 40)?;
    Ok(-harmonic_extension_dy(&zeta, spec.params(), theta)?)
}

/// Cubic strength corrections of the multi-vortex expansion: the solution
/// of the interaction system with right-hand side
/// `([H(0) zeta3]_y(0, -(1-theta_i) h))_i`.
pub fn strengths_cubic<T: Real>(spec: &ProfileSpec<T>) -> Result<Vec<T>> {
    if spec.is_single() {
        return Err(Error::InvalidConfig(
            "strengths_cubic requires a multi-vortex spec".into(),
        ));
    }
    let zeta = trace_cubic_profile(spec, 40)?;
    let mut rhs = Vec::with_capacity(spec.config().n());
    for i in 0..spec.config().n() {
        rhs.push(harmonic_extension_dy(
            &zeta,
            spec.params(),
            spec.config().theta(i),
        )?);
    }
    let matrix = crate::interaction::InteractionMatrix::build(spec.config(), spec.params().h())?;
    matrix.solve(&rhs)
}

/// Speed-like part of an assembled expansion.
#[derive(Debug, Clone)]
pub enum SpeedExpansion<T> {
    /// Single vortex: `c(eps) = c1 eps + c3 eps^3`.
    Single { c1: T, c3: T, c: T },
    /// Several vortices: `gamma(eps) = gamma1 eps + gamma3 eps^3`.
    Multi {
        gamma1: Vec<T>,
        gamma3: Vec<T>,
        gamma: Vec<T>,
    },
}

/// Truncated expansion at a given parameter value.
#[derive(Debug, Clone)]
pub struct Expansion<T> {
    pub eta: Profile<T>,
    pub zeta: Profile<T>,
    pub speed: SpeedExpansion<T>,
    /// Set when `|eps|` exceeds [`EPS_MAX_DEFAULT`].
    pub eps_warning: bool,
    /// Largest surface elevation, for the clearance check against the
    /// mirror line `(1 - theta_1) h`.
    pub max_eta: T,
}

/// Assembles the truncated expansions `eta = eta2 eps^2`,
/// `zeta = zeta3 eps^3`, and the speed (or strengths) through cubic order,
/// on the profile's natural decay grid.
pub fn evaluate_expansion<T: Real>(spec: &ProfileSpec<T>, eps: T) -> Result<Expansion<T>> {
    let eps_warning = eps.abs() > T::of(EPS_MAX_DEFAULT);
    let eta2 = Profile::sample_even(
        |x| profile_value(spec, x),
        decay_half_width(spec),
        (decay_half_width(spec) / spec.params().h()).as_f64() as usize * 20,
    )?;
    let zeta3 = trace_cubic_profile(spec, 20)?;

    let eta = eta2.scaled(eps * eps);
    let zeta = zeta3.scaled(eps * eps * eps);
    let speed = if spec.is_single() {
        let theta = spec.theta()?;
        let c1 = wave_speed_slope(spec.params(), theta);
        let c3 = wave_speed_cubic(spec)?;
        SpeedExpansion::Single {
            c1,
            c3,
            c: c1 * eps + c3 * eps * eps * eps,
        }
    } else {
        let gamma1 = spec
            .config()
            .strengths()
            .expect("multi spec carries strengths")
            .to_vec();
        let gamma3 = strengths_cubic(spec)?;
        let gamma = gamma1
            .iter()
            .zip(&gamma3)
            .map(|(&g1, &g3)| g1 * eps + g3 * eps * eps * eps)
            .collect();
        SpeedExpansion::Multi {
            gamma1,
            gamma3,
            gamma,
        }
    };
    let max_eta = eta.values().iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    Ok(Expansion {
        eta,
        zeta,
        speed,
        eps_warning,
        max_eta,
    })
}

/// Order-by-order residuals of the governing equations evaluated on the
/// computed coefficients.
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyReport<T> {
    /// `max |Phi(x, 0)|`: the order-eps kinematic residual (identically 0).
    pub kinematic1: T,
    /// `max |g eta2 - alpha^2 eta2'' + chi|` with a stencil second
    /// derivative: the order-eps^2 dynamic residual.
    pub bernoulli2: T,
    /// `max |c1 eta2 + zeta3 + Phi_y(., 0) eta2|` (multi: `1 + Phi_y^gamma`
    /// in place of `c1 + Phi_y`): the order-eps^3 kinematic residual.
    pub kinematic3: T,
}

/// Evaluates the consistency residuals on a fixed grid.
pub fn consistency_residuals<T: Real>(spec: &ProfileSpec<T>) -> Result<ConsistencyReport<T>> {
    let params = spec.params();
    let h = params.h();
    let step = T::of(0.0025) * h;

    let mut kinematic1 = T::zero();
    let mut bernoulli2 = T::zero();
    let mut kinematic3 = T::zero();
    for i in 0..=40 {
        let x = T::of(0.25) * T::of_usize(i) * h;

        // order eps: the stream function vanishes on the surface
        let surf = if spec.is_single() {
            crate::stream::stream_function(
                params,
                spec.config().theta(0),
                crate::stream::Point2::new(x, T::zero()),
            )?
        } else {
            crate::stream::stream_function_sum(
                params,
                spec.config(),
                crate::stream::Point2::new(x, T::zero()),
            )?
        };
        kinematic1 = kinematic1.max(surf.abs());

        // order eps^2: defining ODE with 5-point stencil second derivative
        let eta = profile_value(spec, x)?;
        let two = T::of(2.0);
        let eta_xx = (-profile_value(spec, x + two * step)?
            + T::of(16.0) * profile_value(spec, x + step)?
            - T::of(30.0) * eta
            + T::of(16.0) * profile_value(spec, (x - step).abs())?
            - profile_value(spec, (x - two * step).abs())?)
            / (T::of(12.0) * step * step);
        let res2 = params.g() * eta - params.alpha2() * eta_xx + forcing(spec, x);
        bernoulli2 = bernoulli2.max(res2.abs());

        // order eps^3: definition of the cubic trace (algebraic identity)
        let res3 = trace_factor(spec, x) * eta + trace_cubic(spec, x)?;
        kinematic3 = kinematic3.max(res3.abs());
    }
    Ok(ConsistencyReport {
        kinematic1,
        bernoulli2,
        kinematic3,
    })
}
