//! The leading-order surface profile: the forcing term and its
//! antiderivatives, the two series branches, the elementary integer-m
//! form, a quadrature convolution oracle, the coefficient identities, and
//! the sign/asymptotic classification.
//!
//! The profile solves `(g - alpha^2 d_xx) eta = -forcing`, equivalently the
//! convolution `eta = -(1/(2 alpha sqrt(g))) e^{-sqrt(g)|.|/alpha} * forcing`.
//! The dimensionless number `m = sqrt(g) h / (pi alpha)` compares the
//! geometric decay rate `pi/h` with the gravity-capillary rate
//! `sqrt(g)/alpha`; integer `m` admits an elementary closed form.

use crate::error::{Error, Result};
use crate::interaction::InteractionMatrix;
use crate::numerics::quad;
use crate::numerics::trig::{cospi, ln_cosh, sech, sinpi};
use crate::numerics::KahanSum;
use crate::scalar::Real;
use crate::stream::{stream_function_sum_dy_surface, PhysicalParams, VortexConfig};

/// Tolerance for classifying `m` as an integer.
pub const M_INTEGER_TOL: f64 = 1e-6;

/// Outer edge of the near-integer conditioning-warning band.
pub const M_WARNING_BAND: f64 = 1e-3;

/// Default series truncation.
pub const DEFAULT_SERIES_TERMS: usize = 60;

/// Below `|x| < NEAR_ORIGIN_FACTOR * h` the composite evaluator switches
/// from the series to the convolution oracle.
pub const NEAR_ORIGIN_FACTOR: f64 = 0.05;

/// Which series branch applies for the current `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    NonIntegerM,
    IntegerM,
}

/// An even function sampled on a strictly increasing grid symmetric about 0.
#[derive(Debug, Clone)]
pub struct Profile<T> {
    xs: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> Profile<T> {
    /// Validates the grid (strictly increasing, symmetric about 0) and the
    /// evenness of the values to `1e-12` relative to the largest magnitude.
    pub fn new(xs: Vec<T>, values: Vec<T>) -> Result<Self> {
        if xs.len() != values.len() || xs.len() < 3 {
            return Err(Error::InvalidConfig(
                "profile needs matching xs/values with at least 3 samples".into(),
            ));
        }
        let n = xs.len();
        for i in 1..n {
            if !(xs[i] > xs[i - 1]) {
                return Err(Error::InvalidConfig(format!(
                    "profile grid not strictly increasing at index {i}"
                )));
            }
        }
        let scale = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        let grid_scale = xs[n - 1].abs().max(xs[0].abs());
        for i in 0..n {
            let j = n - 1 - i;
            if (xs[i] + xs[j]).abs() > T::of(1e-12) * grid_scale {
                return Err(Error::InvalidConfig(format!(
                    "grid not symmetric about 0 at index {i}"
                )));
            }
            if (values[i] - values[j]).abs() > T::of(1e-12) * scale.max(T::one()) {
                return Err(Error::InvalidConfig(format!(
                    "values not even at index {i}"
                )));
            }
        }
        Ok(Profile { xs, values })
    }

    /// Samples an even function on `2 n_half + 1` equispaced points in
    /// `[-x_max, x_max]`; evenness is enforced by sampling `|x|`.
    pub fn sample_even(f: impl Fn(T) -> Result<T>, x_max: T, n_half: usize) -> Result<Self> {
        let n = 2 * n_half + 1;
        let mut xs = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        let step = x_max / T::of_usize(n_half);
        for i in 0..n {
            let x = (T::of_usize(i) - T::of_usize(n_half)) * step;
            xs.push(x);
            values.push(f(x.abs())?);
        }
        Profile::new(xs, values)
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn x_max(&self) -> T {
        *self.xs.last().unwrap()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Magnitude at the outer grid edge, relative decay proxy.
    pub fn edge_abs(&self) -> T {
        self.values.last().unwrap().abs()
    }

    /// Scales every value by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Profile {
            xs: self.xs.clone(),
            values: self.values.iter().map(|&v| factor * v).collect(),
        }
    }
}

/// Everything needed to evaluate the leading-order profile: physical
/// parameters, the vortex configuration (with leading-order strengths for
/// the multi-vortex case), and the derived branch selection.
#[derive(Debug, Clone)]
pub struct ProfileSpec<T> {
    params: PhysicalParams<T>,
    config: VortexConfig<T>,
    m: T,
    branch: Branch,
}

impl<T: Real> ProfileSpec<T> {
    /// Single-vortex spec; closed forms and both series branches apply.
    pub fn single(params: PhysicalParams<T>, theta: T) -> Result<Self> {
        let config = VortexConfig::single(theta)?;
        Ok(Self::from_parts(params, config))
    }

    /// Multi-vortex spec; the strengths are the leading-order solution of
    /// the interaction system, and only the convolution oracle applies.
    pub fn multi(params: PhysicalParams<T>, config: VortexConfig<T>) -> Result<Self> {
        let matrix = InteractionMatrix::build(&config, params.h())?;
        let gamma1 = matrix.leading_strengths()?;
        let config = config.strengthened(gamma1)?;
        Ok(Self::from_parts(params, config))
    }

    fn from_parts(params: PhysicalParams<T>, config: VortexConfig<T>) -> Self {
        let m = params.m();
        let branch = if (m - m.round()).abs() < T::of(M_INTEGER_TOL) && m.round() >= T::one() {
            Branch::IntegerM
        } else {
            Branch::NonIntegerM
        };
        ProfileSpec {
            params,
            config,
            m,
            branch,
        }
    }

    pub fn params(&self) -> &PhysicalParams<T> {
        &self.params
    }

    pub fn config(&self) -> &VortexConfig<T> {
        &self.config
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn is_single(&self) -> bool {
        self.config.strengths().is_none()
    }

    /// Sole vortex height; errors for multi-vortex specs.
    pub fn theta(&self) -> Result<T> {
        if self.config.n() == 1 && self.is_single() {
            Ok(self.config.theta(0))
        } else {
            Err(Error::InvalidConfig(
                "operation requires the single-vortex closed forms (n = 1)".into(),
            ))
        }
    }

    /// True in the band `1e-6 < |m - round(m)| < 1e-3` where the
    /// non-integer branch suffers cancellation in `pi cos(m pi theta)/sin(m pi)`.
    pub fn near_integer_warning(&self) -> bool {
        let gap = (self.m - self.m.round()).abs();
        self.m.round() >= T::one()
            && gap > T::of(M_INTEGER_TOL)
            && gap < T::of(M_WARNING_BAND)
    }

    /// Overflow/cancellation guard for the elementary form. The pieces grow
    /// like `e^{(m-1) pi x / h}`, so the guard keeps the relative
    /// amplification of roundoff below ~1e5 (and far from `cosh` overflow).
    pub fn elementary_x_max(&self) -> T {
        let h = self.params.h();
        let m = self.m.max(T::one());
        let growth = (self.m - T::one()).max(T::of(0.1));
        let overflow = T::of(0.95 * 700.0) / (T::PI() * m);
        let cancellation = T::of(12.0) / (T::PI() * growth);
        h * overflow.min(cancellation)
    }
}

/// Surface forcing `chi`: for a single vortex
/// `(1 + cos(pi theta) cosh(pi x/h)) / (8 h^2 (cosh(pi x/h) + cos(pi theta))^2)`,
/// for several vortices `w + w^2/2` with `w` the weighted surface trace of
/// the vertical stream-function derivative.
pub fn forcing<T: Real>(spec: &ProfileSpec<T>, x: T) -> T {
    if spec.is_single() {
        let h = spec.params.h();
        let theta = spec.config.theta(0);
        let s = sech(T::PI() * x / h);
        let c = (T::PI() * theta).cos();
        let denom = T::one() + c * s;
        (s * s + c * s) / (T::of(8.0) * h * h * denom * denom)
    } else {
        let w = stream_function_sum_dy_surface(&spec.params, &spec.config, x);
        w + T::of(0.5) * w * w
    }
}

/// First antiderivative of the forcing (odd, vanishes at 0). Closed form
/// for a single vortex, quadrature from 0 otherwise.
pub fn forcing_antiderivative<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    if spec.is_single() {
        let h = spec.params.h();
        let theta = spec.config.theta(0);
        let u = T::PI() * x / h;
        let c = (T::PI() * theta).cos();
        Ok(u.tanh() / (T::one() + c * sech(u)) / (T::of(8.0) * T::PI() * h))
    } else {
        let r = quad::integrate(|t| forcing(spec, t), T::zero(), x, T::of(1e-13))?;
        Ok(r.value)
    }
}

/// Second antiderivative of the forcing. Closed form
/// `log(cosh(pi x/h) + cos(pi theta)) / (8 pi^2)` for a single vortex;
/// for several vortices normalized so the value at 0 is 0.
pub fn forcing_antiderivative2<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    if spec.is_single() {
        let h = spec.params.h();
        let theta = spec.config.theta(0);
        let u = T::PI() * x / h;
        let c = (T::PI() * theta).cos();
        Ok((ln_cosh(u) + (c * sech(u)).ln_1p()) / (T::of(8.0) * T::PI() * T::PI()))
    } else {
        // int_0^x (x - t) chi(t) dt has derivative int_0^x chi = ad1
        let r = quad::integrate(|t| (x - t) * forcing(spec, t), T::zero(), x, T::of(1e-13))?;
        Ok(r.value)
    }
}

/// Series value together with the analytic bound on the dropped tail.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval<T> {
    pub value: T,
    pub tail_bound: T,
}

/// Series evaluation of the profile in powers of `e^{-pi |x|/h}`, using the
/// branch selected by the spec. `n_terms` is the last retained index.
pub fn profile_series<T: Real>(spec: &ProfileSpec<T>, x: T, n_terms: usize) -> Result<T> {
    profile_series_with_tail(spec, x, n_terms).map(|s| s.value)
}

/// As [`profile_series`], also reporting the tail bound
/// `2 m^2 q^{N+1} / ((N+1) |m^2-(N+1)^2| (1-q))` (scaled by the prefactor).
pub fn profile_series_with_tail<T: Real>(
    spec: &ProfileSpec<T>,
    x: T,
    n_terms: usize,
) -> Result<SeriesEval<T>> {
    let theta = spec.theta()?;
    if n_terms == 0 {
        return Err(Error::Domain {
            what: "n_terms",
            value: 0.0,
            bounds: "[1, inf)",
        });
    }
    let params = &spec.params;
    let h = params.h();
    let m = spec.m;
    let ax = x.abs();
    let q = (-T::PI() * ax / h).exp();
    let c = cospi(theta);
    let prefactor = T::one() / (T::of(8.0) * T::PI() * T::PI() * params.alpha2());

    // log(1 + 2 cos(pi theta) q + q^2)
    let log_term = (q * (T::of(2.0) * c + q)).ln_1p();
    // e^{-sqrt(g) |x| / alpha} = e^{-m pi |x| / h}
    let grav = (-m * T::PI() * ax / h).exp();

    let mut sum = KahanSum::new();
    let m_int = if spec.branch == Branch::IntegerM {
        Some(m.round().as_f64() as usize)
    } else {
        None
    };
    let m2 = m * m;
    let mut q_pow = T::one();
    for k in 1..=n_terms {
        q_pow = q_pow * q;
        if Some(k) == m_int {
            continue;
        }
        let kt = T::of_usize(k);
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        sum.add(sign * cospi(kt * theta) / (kt * (m2 - kt * kt)) * q_pow);
    }
    let series = T::of(2.0) * m2 * sum.value();

    let mode = match spec.branch {
        Branch::NonIntegerM => {
            // -pi cos(m pi theta)/sin(m pi) e^{-sqrt(g)|x|/alpha}
            -T::PI() * cospi(m * theta) / sinpi(m) * grav
        }
        Branch::IntegerM => {
            let mi = m.round();
            let sign = if (mi.as_f64() as i64) % 2 == 0 {
                T::one()
            } else {
                -T::one()
            };
            sign * (T::of(3.0) * cospi(mi * theta) / (T::of(2.0) * mi)
                + T::PI() * theta * sinpi(mi * theta)
                + cospi(mi * theta) * T::PI() * ax / h)
                * grav
        }
    };

    let value = prefactor * (log_term + mode + series);

    let np1 = T::of_usize(n_terms + 1);
    let gap = (m2 - np1 * np1).abs().max(T::epsilon());
    let tail_bound = if q < T::one() {
        prefactor * T::of(2.0) * m2 * q.powi((n_terms + 1) as i32)
            / (np1 * gap * (T::one() - q))
    } else {
        // x = 0: fall back to the k^-3 envelope of the remaining terms
        prefactor * T::of(2.0) * m2 / (np1 * gap)
    };

    Ok(SeriesEval { value, tail_bound })
}

/// Elementary closed form for integer `m`, valid for
/// `|x| <= elementary_x_max()`.
pub fn profile_elementary<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    let theta = spec.theta()?;
    if spec.branch != Branch::IntegerM {
        return Err(Error::InvalidConfig(format!(
            "elementary form requires integer m, got m = {}",
            spec.m.as_f64()
        )));
    }
    let x_max = spec.elementary_x_max();
    if x.abs() > x_max {
        return Err(Error::ElementaryOverflow {
            x: x.as_f64(),
            x_max: x_max.as_f64(),
        });
    }
    let params = &spec.params;
    let h = params.h();
    let m_int = spec.m.round().as_f64() as usize;
    let m = T::of_usize(m_int);
    let prefactor = T::one() / (T::of(8.0) * T::PI() * T::PI() * params.alpha2());

    let mut acc = T::one() / m;
    for k in 1..m_int {
        let mk = T::of_usize(m_int - k);
        let sign = if (m_int - k) % 2 == 0 { T::one() } else { -T::one() };
        acc = acc
            + T::of(2.0) * sign * cospi(mk * theta) / T::of_usize(k)
                * (mk * T::PI() * x / h).cosh();
    }

    let r = |z: T| -> T {
        // z = e^{+- pi x / h} > 0
        let sign = if m_int % 2 == 0 { T::one() } else { -T::one() };
        let c = cospi(theta);
        let s = sinpi(theta);
        let z_pow = z.powi(-(m_int as i32));
        // log(1 + 2 cos(pi theta) z + z^2), stable for large and small z
        let log_part = if z > T::one() {
            T::of(2.0) * z.ln() + ((T::of(2.0) * c + T::one() / z) / z).ln_1p()
        } else {
            (z * (T::of(2.0) * c + z)).ln_1p()
        };
        // arctan(cot(pi theta) + csc(pi theta) z) - pi (1/2 - theta)
        // rewritten through the angle-difference identity; the naive form
        // cancels catastrophically for small z before the z^{-m} blow-up
        let arctan_part = (z * s).atan2(T::one() + z * c);
        sign * z_pow * (T::of(0.5) * cospi(m * theta) * log_part + sinpi(m * theta) * arctan_part)
    };

    let u = T::PI() * x / h;
    Ok(prefactor * (acc + r(u.exp()) + r((-u).exp())))
}

/// Convolution oracle: adaptive quadrature of
/// `-(1/(2 alpha sqrt(g))) (e^{-sqrt(g)|.|/alpha} * chi)(x)`, split as the
/// two one-sided kernels. Works for any number of vortices, independent of
/// the series and elementary routes.
pub fn profile_oracle<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    profile_oracle_with_error(spec, x).map(|(value, _)| value)
}

/// As [`profile_oracle`], also reporting the accumulated absolute
/// quadrature error estimate.
pub fn profile_oracle_with_error<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<(T, T)> {
    let params = &spec.params;
    let k = params.g().sqrt() / params.alpha(); // gravity-capillary rate
    let rate = k + T::PI() / params.h();
    // both the kernel and the forcing decay; 37/rate + h of margin below
    // the slower of {evaluation point, origin} truncates the tail at 1e-16
    let margin = T::of(37.0) / rate + params.h();

    let one_sided = |s: T| -> Result<quad::QuadResult<T>> {
        // J(s) = int_{lo}^{s} e^{-k (s - y)} chi(y) dy
        let lo = s.min(T::zero()) - margin;
        quad::integrate(
            |y| (-k * (s - y)).exp() * forcing(spec, y),
            lo,
            s,
            T::of(1e-12),
        )
    };

    let j_plus = one_sided(x)?;
    let j_minus = one_sided(-x)?;
    let scale = T::of(2.0) * params.alpha() * params.g().sqrt();
    Ok((
        -(j_plus.value + j_minus.value) / scale,
        (j_plus.abs_error + j_minus.abs_error) / scale,
    ))
}

/// Composite evaluator: the convolution oracle near the origin (where the
/// series converges slowly) and for multi-vortex specs, the series branch
/// elsewhere.
pub fn profile_value<T: Real>(spec: &ProfileSpec<T>, x: T) -> Result<T> {
    if !spec.is_single() || x.abs() < T::of(NEAR_ORIGIN_FACTOR) * spec.params.h() {
        profile_oracle(spec, x)
    } else {
        profile_series(spec, x, DEFAULT_SERIES_TERMS)
    }
}

/// Closed form of the mode-coefficient identity: for non-integer `m`
/// `pi cos(m pi theta)/sin(m pi)`, for integer `m`
/// `-(-1)^m (cos(m pi theta)/(2m) + pi theta sin(m pi theta))`.
pub fn mode_coefficient_closed<T: Real>(m: T, theta: T) -> Result<T> {
    check_mode_args(m, theta)?;
    if (m - m.round()).abs() < T::of(M_INTEGER_TOL) && m.round() >= T::one() {
        let mi = m.round();
        let sign = if (mi.as_f64() as i64) % 2 == 0 {
            T::one()
        } else {
            -T::one()
        };
        Ok(-sign * (cospi(mi * theta) / (T::of(2.0) * mi) + T::PI() * theta * sinpi(mi * theta)))
    } else {
        Ok(T::PI() * cospi(m * theta) / sinpi(m))
    }
}

/// Partial sum `1/m + 2m sum_k (-1)^k cos(k pi theta)/(m^2 - k^2)` through
/// `n_terms`, with the oscillatory tail damped by iterated averaging of the
/// last partial sums. Skips `k = m` for integer `m`.
pub fn mode_coefficient_series<T: Real>(m: T, theta: T, n_terms: usize) -> Result<T> {
    check_mode_args(m, theta)?;
    let m_int = if (m - m.round()).abs() < T::of(M_INTEGER_TOL) && m.round() >= T::one() {
        Some(m.round().as_f64() as usize)
    } else {
        None
    };
    let m2 = m * m;
    let term = |k: usize| -> T {
        let kt = T::of_usize(k);
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        sign * cospi(kt * theta) / (m2 - kt * kt)
    };

    let mut sum = KahanSum::new();
    for k in 1..=n_terms {
        if Some(k) == m_int {
            continue;
        }
        sum.add(term(k));
    }

    // tail acceleration: 12-fold binomial averaging of successive partial
    // sums damps both oscillation frequencies of (-1)^k cos(k pi theta)
    const EXTRA: usize = 12;
    let mut partials = Vec::with_capacity(EXTRA + 1);
    partials.push(sum.value());
    let mut rolling = sum;
    for k in (n_terms + 1)..=(n_terms + EXTRA) {
        if Some(k) == m_int {
            partials.push(*partials.last().unwrap());
            continue;
        }
        rolling.add(term(k));
        partials.push(rolling.value());
    }
    let mut level = partials;
    while level.len() > 1 {
        level = level.windows(2).map(|w| T::of(0.5) * (w[0] + w[1])).collect();
    }

    Ok(T::one() / m + T::of(2.0) * m * level[0])
}

/// Integral form `int_0^inf y^{m-1} (cos(pi theta) y + 1)/(y^2 + 2 cos(pi theta) y + 1) dy`,
/// defined for `m` in (0, 1). The endpoint singularities are removed by the
/// substitutions `y = t^{1/m}` on (0, 1) and `u = s^{1/(1-m)}` on the
/// inverted half.
pub fn mode_coefficient_integral<T: Real>(m: T, theta: T) -> Result<T> {
    check_mode_args(m, theta)?;
    if !(m < T::one()) {
        return Err(Error::Domain {
            what: "m",
            value: m.as_f64(),
            bounds: "(0, 1)",
        });
    }
    let c = cospi(theta);
    let integrand = |y: T| (c * y + T::one()) / (y * y + T::of(2.0) * c * y + T::one());

    // int_0^1 y^{m-1} g(y) dy = (1/m) int_0^1 g(t^{1/m}) dt
    let lower = quad::integrate(
        |t: T| integrand(t.powf(T::one() / m)),
        T::zero(),
        T::one(),
        T::of(1e-12),
    )?;
    // int_1^inf y^{m-1} g(y) dy = int_0^1 u^{-m} (u + c)/(u^2 + 2cu + 1) du
    //                           = (1/(1-m)) int_0^1 hh(s^{1/(1-m)}) ds
    let upper_integrand = |u: T| (u + c) / (u * u + T::of(2.0) * c * u + T::one());
    let upper = quad::integrate(
        |s: T| upper_integrand(s.powf(T::one() / (T::one() - m))),
        T::zero(),
        T::one(),
        T::of(1e-12),
    )?;
    Ok(lower.value / m + upper.value / (T::one() - m))
}

fn check_mode_args<T: Real>(m: T, theta: T) -> Result<()> {
    if !(m > T::zero()) {
        return Err(Error::Domain {
            what: "m",
            value: m.as_f64(),
            bounds: "(0, inf)",
        });
    }
    if !(theta > T::zero() && theta < T::one()) {
        return Err(Error::Domain {
            what: "theta",
            value: theta.as_f64(),
            bounds: "(0, 1)",
        });
    }
    Ok(())
}

/// Far-field decay class of the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayRate {
    /// `eta ~ constant * e^{-pi x/h}` (m > 1, and the edge case m = 1/(2 theta)).
    Geometric,
    /// `eta ~ constant * (pi x/h) e^{-pi x/h}` (m = 1).
    GeometricLinear,
    /// `eta ~ constant * e^{-sqrt(g) x/alpha}` (m < 1).
    GravityCapillary,
}

/// Decay classification with the exponential rate and the limit constant.
#[derive(Debug, Clone, Copy)]
pub struct FarFieldDecay<T> {
    pub rate: DecayRate,
    /// Exponential rate: `pi/h` for the geometric classes, `sqrt(g)/alpha`
    /// for the gravity-capillary class.
    pub exponent: T,
    pub constant: T,
}

/// Far-field decay rate and limit constant of the profile.
pub fn far_field_decay<T: Real>(spec: &ProfileSpec<T>) -> Result<FarFieldDecay<T>> {
    let theta = spec.theta()?;
    let params = &spec.params;
    let m = spec.m;
    let denom = T::of(8.0) * T::PI() * T::PI() * params.alpha2();
    let geometric = T::PI() / params.h();
    let capillary = params.g().sqrt() / params.alpha();
    let tol = T::of(M_INTEGER_TOL);

    let edge = (m - T::one() / (T::of(2.0) * theta)).abs() < T::of(1e-12);
    if m > T::one() + tol || (edge && m < T::one()) {
        // the m > 1 limit also covers the vanishing-constant edge case
        Ok(FarFieldDecay {
            rate: DecayRate::Geometric,
            exponent: geometric,
            constant: -T::of(2.0) / (m * m - T::one()) * cospi(theta) / denom,
        })
    } else if (m - T::one()).abs() <= tol {
        Ok(FarFieldDecay {
            rate: DecayRate::GeometricLinear,
            exponent: geometric,
            constant: -cospi(theta) / denom,
        })
    } else {
        Ok(FarFieldDecay {
            rate: DecayRate::GravityCapillary,
            exponent: capillary,
            constant: -T::PI() / sinpi(m) * cospi(m * theta) / denom,
        })
    }
}

/// Sign of the profile for large `|x|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSign {
    PositiveTail,
    NegativeTail,
}

/// Tail-sign classification: everywhere negative for `theta <= 1/2`; for
/// `theta > 1/2` positive iff `m > 1/(2 theta)`, with the crossover
/// classified negative.
pub fn tail_sign<T: Real>(spec: &ProfileSpec<T>) -> Result<TailSign> {
    let theta = spec.theta()?;
    if theta <= T::of(0.5) {
        return Ok(TailSign::NegativeTail);
    }
    if spec.m > T::one() / (T::of(2.0) * theta) {
        Ok(TailSign::PositiveTail)
    } else {
        Ok(TailSign::NegativeTail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::diff::{derivative4, second_derivative5};
    use crate::stream::{stream_function_dy_surface, wave_speed_slope};

    fn spec_m(m: f64, theta: f64) -> ProfileSpec<f64> {
        let params = PhysicalParams::with_m(1.0, 1.0, m).unwrap();
        ProfileSpec::single(params, theta).unwrap()
    }

    #[test]
    fn branch_selection() {
        assert_eq!(spec_m(1.0, 0.3).branch(), Branch::IntegerM);
        assert_eq!(spec_m(2.5, 0.3).branch(), Branch::NonIntegerM);
        assert!(!spec_m(2.5, 0.3).near_integer_warning());
        assert!(spec_m(2.0 + 1e-4, 0.3).near_integer_warning());
        assert_eq!(spec_m(2.0 + 1e-4, 0.3).branch(), Branch::NonIntegerM);
    }

    #[test]
    fn forcing_closed_form_values() {
        let s = spec_m(1.0, 0.3);
        // chi(0) = 1/(8 h^2 (1 + cos(pi theta)))
        let expected = 1.0 / (8.0 * (1.0 + (std::f64::consts::PI * 0.3).cos()));
        assert!((forcing(&s, 0.0) - expected).abs() < 1e-15);
        assert_eq!(forcing_antiderivative(&s, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn forcing_positive_below_midline() {
        for &theta in &[0.2, 0.5] {
            let s = spec_m(1.7, theta);
            for i in 0..60 {
                let x = -6.0 + 12.0 * i as f64 / 59.0;
                assert!(forcing(&s, x) > 0.0, "chi <= 0 at x={x}, theta={theta}");
            }
        }
    }

    #[test]
    fn forcing_matches_velocity_identity() {
        // chi = c1 Phi_y + Phi_y^2/2 built from the stream module directly
        let s = spec_m(1.3, 0.4);
        let c1 = wave_speed_slope(s.params(), 0.4);
        for &x in &[0.0, 0.7, 2.3, 15.0] {
            let w = stream_function_dy_surface(s.params(), 0.4, x);
            let expected = c1 * w + 0.5 * w * w;
            assert!((forcing(&s, x) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn antiderivative_chain() {
        for single in [true, false] {
            let s = if single {
                spec_m(1.0, 0.35)
            } else {
                let params = PhysicalParams::with_m(1.0, 1.0, 1.0).unwrap();
                let config = VortexConfig::new(vec![0.6, 0.25]).unwrap();
                ProfileSpec::multi(params, config).unwrap()
            };
            for &x in &[0.3, 1.1, 2.7] {
                let d1 = derivative4(|t| forcing_antiderivative(&s, t).unwrap(), x, 1e-3);
                assert!((d1 - forcing(&s, x)).abs() < 1e-8, "ad1' != chi at {x}");
                let d2 = derivative4(|t| forcing_antiderivative2(&s, t).unwrap(), x, 1e-3);
                assert!(
                    (d2 - forcing_antiderivative(&s, x).unwrap()).abs() < 1e-8,
                    "ad2' != ad1 at {x}"
                );
            }
        }
    }

    #[test]
    fn series_is_even_and_matches_oracle() {
        for &(m, theta) in &[(0.5, 0.25), (2.5, 0.75), (0.5, 0.5)] {
            let s = spec_m(m, theta);
            for &x in &[0.1, 0.5, 1.0, 3.0, 10.0] {
                let a = profile_series(&s, x, 60).unwrap();
                assert_eq!(a, profile_series(&s, -x, 60).unwrap());
                let b = profile_oracle(&s, x).unwrap();
                assert!(
                    (a - b).abs() < 1e-8,
                    "series {a} vs oracle {b} at x={x}, m={m}, theta={theta}"
                );
            }
        }
    }

    #[test]
    fn oracle_error_estimate_is_honest() {
        let s = spec_m(2.5, 0.4);
        for &x in &[0.0, 0.7, 3.0] {
            let (value, estimate) = profile_oracle_with_error(&s, x).unwrap();
            assert!(estimate < 1e-10, "estimate {estimate:e} at x={x}");
            // the high-accuracy series is well inside the reported band
            if x > 0.05 {
                let series = profile_series(&s, x, 200).unwrap();
                assert!((value - series).abs() < estimate.max(1e-12));
            }
        }
    }

    #[test]
    fn series_tail_bound_is_honest() {
        let s = spec_m(2.5, 0.4);
        let x = 0.5;
        let coarse = profile_series_with_tail(&s, x, 20).unwrap();
        let fine = profile_series(&s, x, 200).unwrap();
        assert!((coarse.value - fine).abs() <= coarse.tail_bound * 1.01);
    }

    #[test]
    fn small_theta_limit_integer_m() {
        // m = 1, theta -> 0 limit in elementary terms
        let s = spec_m(1.0, 1e-6);
        let limit = |x: f64| {
            let e = (std::f64::consts::PI * x).exp();
            (1.0 - e * (1.0 + 1.0 / e).ln() - (1.0 / e) * (1.0 + e).ln())
                / (8.0 * std::f64::consts::PI * std::f64::consts::PI * s.params().alpha2())
        };
        for &x in &[0.2, 1.0, 3.0] {
            let v = profile_series(&s, x, 200).unwrap();
            assert!((v - limit(x)).abs() < 1e-5, "limit mismatch at {x}");
        }
    }

    #[test]
    fn elementary_matches_series_and_oracle() {
        let s = spec_m(1.0, 0.3);
        for i in 0..25 {
            let x = 0.1 + 4.9 * i as f64 / 24.0;
            let e = profile_elementary(&s, x).unwrap();
            let srs = profile_series(&s, x, 80).unwrap();
            assert!((e - srs).abs() < 1e-9, "elem vs series at {x}: {e} {srs}");
            let o = profile_oracle(&s, x).unwrap();
            assert!((e - o).abs() < 1e-8, "elem vs oracle at {x}");
        }
        // evenness
        assert!((profile_elementary(&s, 1.3).unwrap() - profile_elementary(&s, -1.3).unwrap())
            .abs()
            < 1e-12);
        // overflow guard
        assert!(matches!(
            profile_elementary(&s, 1e4),
            Err(Error::ElementaryOverflow { .. })
        ));
    }

    #[test]
    fn oracle_depression_at_origin() {
        for &(m, theta) in &[(0.5, 0.25), (1.0, 0.5), (2.0, 0.75), (2.5, 0.25)] {
            let s = spec_m(m, theta);
            let at0 = profile_oracle(&s, 0.0).unwrap();
            assert!(at0 < 0.0, "eta(0) = {at0} not negative for m={m}");
            let dd = second_derivative5(|x| profile_oracle(&s, x).unwrap(), 0.0, 0.02);
            assert!(dd > 0.0, "eta''(0) = {dd} not positive for m={m}");
        }
    }

    #[test]
    fn oracle_satisfies_defining_ode() {
        let s = spec_m(1.4, 0.35);
        let g = s.params().g();
        let a2 = s.params().alpha2();
        for &x in &[0.5, 1.0, 2.0] {
            let eta = profile_oracle(&s, x).unwrap();
            let eta_xx = second_derivative5(|t| profile_oracle(&s, t).unwrap(), x, 0.02);
            let residual = g * eta - a2 * eta_xx + forcing(&s, x);
            assert!(residual.abs() < 1e-6, "ODE residual {residual:e} at {x}");
        }
    }

    #[test]
    fn mode_coefficient_identities() {
        // m = 1/2: closed form is pi cos(pi theta / 2)
        for &theta in &[0.2, 0.5, 0.8] {
            let closed = mode_coefficient_closed(0.5, theta).unwrap();
            let expected = std::f64::consts::PI * (std::f64::consts::PI * theta / 2.0).cos();
            assert!((closed - expected).abs() < 1e-13);
            let series = mode_coefficient_series(0.5, theta, 10_000).unwrap();
            assert!((series - closed).abs() < 1e-6, "series gap at theta={theta}");
        }
        // integral form on (0, 1)
        let closed = mode_coefficient_closed(0.5_f64, 1.0 / 3.0).unwrap();
        let integral = mode_coefficient_integral(0.5, 1.0 / 3.0).unwrap();
        assert!((closed - integral).abs() < 1e-8);
    }

    #[test]
    fn integer_mode_coefficient_is_the_limit() {
        // integer form vs the k = m - punctured non-integer closed form,
        // approached symmetrically to cancel the O(delta) term
        let theta = 0.4;
        let m0 = 2.0_f64;
        let integer = mode_coefficient_closed(m0, theta).unwrap();
        let punctured = |m: f64| {
            let full = std::f64::consts::PI * (m * std::f64::consts::PI * theta).cos()
                / (m * std::f64::consts::PI).sin();
            let k_term = 2.0 * m * (m0 * std::f64::consts::PI * theta).cos()
                / (m * m - m0 * m0);
            full - k_term
        };
        let delta = 1e-5;
        let limit = 0.5 * (punctured(m0 + delta) + punctured(m0 - delta));
        assert!(
            (integer - limit).abs() < 1e-6,
            "integer {integer} vs limit {limit}"
        );
    }

    #[test]
    fn far_field_constants() {
        // m = 2, theta = 1/4
        let s = spec_m(2.0, 0.25);
        let d = far_field_decay(&s).unwrap();
        assert_eq!(d.rate, DecayRate::Geometric);
        let expected = -(2.0 / 3.0) * (std::f64::consts::PI * 0.25).cos()
            / (8.0 * std::f64::consts::PI * std::f64::consts::PI * s.params().alpha2());
        assert!((d.constant - expected).abs() < 1e-14);

        // m = 1/2, theta = 1/3
        let s = spec_m(0.5, 1.0 / 3.0);
        let d = far_field_decay(&s).unwrap();
        assert_eq!(d.rate, DecayRate::GravityCapillary);
        let expected = -std::f64::consts::PI * (std::f64::consts::PI / 6.0).cos()
            / (8.0 * std::f64::consts::PI * std::f64::consts::PI * s.params().alpha2());
        assert!((d.constant - expected).abs() < 1e-14);

        // measured at x = 12 h via the series, within 2 percent
        for &(m, theta) in &[(2.0, 0.25), (1.0, 0.25), (0.5, 1.0 / 3.0)] {
            let s = spec_m(m, theta);
            let d = far_field_decay(&s).unwrap();
            let x = 12.0;
            let eta = profile_series(&s, x, 200).unwrap();
            let measured = match d.rate {
                DecayRate::GeometricLinear => {
                    eta * (d.exponent * x).exp() / (d.exponent * x)
                }
                _ => eta * (d.exponent * x).exp(),
            };
            let rel = ((measured - d.constant) / d.constant).abs();
            assert!(rel < 0.02, "decay constant off by {rel} for m={m}");
        }
    }

    #[test]
    fn crossover_edge_case_uses_geometric_decay() {
        // m = 1/(2 theta) with m < 1: cos(m pi theta) = 0 kills the
        // gravity-capillary constant and the geometric limit takes over
        let s = spec_m(2.0 / 3.0, 0.75);
        let d = far_field_decay(&s).unwrap();
        assert_eq!(d.rate, DecayRate::Geometric);
        assert!(d.constant < 0.0);
        let x = 12.0;
        let eta = profile_series(&s, x, 200).unwrap();
        let measured = eta * (std::f64::consts::PI * x).exp();
        assert!(((measured - d.constant) / d.constant).abs() < 0.02);
        assert_eq!(tail_sign(&s).unwrap(), TailSign::NegativeTail);
    }

    #[test]
    fn vanishing_constant_edge_case() {
        // m = 1, theta = 1/2: the linear-factor constant vanishes and the
        // scaled profile decays like 1/x towards it (the mode term is
        // -(pi/2) e^{-pi x/h}, without the linear factor)
        let s = spec_m(1.0, 0.5);
        let unit = 1.0 / (8.0 * std::f64::consts::PI * std::f64::consts::PI * s.params().alpha2());
        let scaled = |x: f64| {
            let eta = profile_series(&s, x, 200).unwrap();
            (eta * (std::f64::consts::PI * x).exp() / (std::f64::consts::PI * x)).abs()
        };
        let s12 = scaled(12.0);
        let s24 = scaled(24.0);
        assert!(s12 < 0.05 * unit, "scaled value {s12:e} vs unit {unit:e}");
        assert!((s24 / s12 - 0.5).abs() < 0.05, "not decaying like 1/x");
    }

    #[test]
    fn tail_sign_classification() {
        // theta = 0.75, m = 2 > 1/(2 theta): positive tail
        let s = spec_m(2.0, 0.75);
        assert_eq!(tail_sign(&s).unwrap(), TailSign::PositiveTail);
        assert!(profile_series(&s, 10.0, 100).unwrap() > 0.0);

        // theta = 0.75, m = 0.5 <= 2/3: negative tail
        let s = spec_m(0.5, 0.75);
        assert_eq!(tail_sign(&s).unwrap(), TailSign::NegativeTail);
        assert!(profile_series(&s, 10.0, 100).unwrap() < 0.0);

        // theta <= 1/2: everywhere negative
        let s = spec_m(1.5, 0.4);
        assert_eq!(tail_sign(&s).unwrap(), TailSign::NegativeTail);
        for i in 0..40 {
            let x = 0.25 * i as f64;
            assert!(profile_value(&s, x).unwrap() < 0.0, "eta >= 0 at {x}");
        }
    }

    #[test]
    fn monotone_below_midline() {
        let s = spec_m(1.5, 0.4);
        let mut prev = profile_oracle(&s, 0.0).unwrap();
        for i in 1..=40 {
            let x = 10.0 * i as f64 / 40.0;
            let v = profile_oracle(&s, x).unwrap();
            assert!(v > prev, "not increasing at x={x}");
            prev = v;
        }
    }

    #[test]
    fn multi_vortex_matches_rescaled_single() {
        // n = 1 through the multi pipeline equals the single pipeline
        // rescaled by 1/c1^2 (strength parametrization vs speed)
        let params = PhysicalParams::with_m(1.0, 1.0, 1.5).unwrap();
        let theta = 0.3;
        let single = ProfileSpec::single(params, theta).unwrap();
        let multi =
            ProfileSpec::multi(params, VortexConfig::single(theta).unwrap()).unwrap();
        let c1 = wave_speed_slope(&params, theta);
        for &x in &[0.0, 0.8, 2.0] {
            let a: f64 = profile_oracle(&multi, x).unwrap();
            let b = profile_oracle(&single, x).unwrap() / (c1 * c1);
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "at x={x}: {a} vs {b}");
        }
    }
}
