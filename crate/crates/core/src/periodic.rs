//! Periodic waves with a point vortex on infinite depth: the lattice
//! stream function, its conformal map, the leading-order wave speed, the
//! periodic forcing, and the Fourier-series surface profile.
//!
//! The fluid domain for the trivial surface is `R x (-inf, 1)` with unit
//! vortices at `2 pi L Z x {0}` and period `2 pi L`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::diff::complex_derivatives;
use crate::scalar::Real;
use crate::stream::Point2;

/// Period scale, gravity and surface tension for the periodic problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicParams<T> {
    l: T,
    g: T,
    alpha2: T,
}

impl<T: Real> PeriodicParams<T> {
    pub fn new(l: T, g: T, alpha2: T) -> Result<Self> {
        for (what, v) in [("L", l), ("g", g), ("alpha2", alpha2)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::Domain {
                    what,
                    value: v.as_f64(),
                    bounds: "(0, inf)",
                });
            }
        }
        Ok(PeriodicParams { l, g, alpha2 })
    }

    pub fn l(&self) -> T {
        self.l
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn alpha2(&self) -> T {
        self.alpha2
    }

    /// Wave period `2 pi L`.
    pub fn period(&self) -> T {
        T::of(2.0) * T::PI() * self.l
    }
}

/// Stream function of the vortex lattice, vanishing on the surface
/// `y = 1`:
/// `(1/4 pi) log((cos(x/L) - cosh(y/L)) / (cos(x/L) - cosh((y-2)/L)))`,
/// evaluated with the exponentials factored so it is stable for `y -> -inf`.
pub fn periodic_stream_function<T: Real>(pp: &PeriodicParams<T>, p: Point2<T>) -> Result<T> {
    let l = pp.l();
    if !(p.y < T::one()) {
        return Err(Error::Domain {
            what: "p.y",
            value: p.y.as_f64(),
            bounds: "(-inf, 1)",
        });
    }
    let c = (p.x / l).cos();
    let a = (p.y / l).exp();
    let b = ((p.y - T::of(2.0)) / l).exp();
    // cos - cosh(y/L) = -(1 - 2 a cos + a^2)/(2a), same for the shifted line
    let num = T::one() - T::of(2.0) * a * c + a * a;
    let den = T::one() - T::of(2.0) * b * c + b * b;
    if num == T::zero() {
        return Err(Error::SingularPoint {
            index: 0,
            x: p.x.as_f64(),
            y: p.y.as_f64(),
        });
    }
    Ok((-T::of(2.0) / l + num.ln() - den.ln()) / (T::of(4.0) * T::PI()))
}

/// Conformal bijection from the half strip `(-pi L, pi L) x (-inf, 1)`
/// onto the slit unit disk, fixing the origin:
/// `f(z) = (tanh(1/2L) - tanh((1+iz)/2L)) / (tanh(1/2L) + tanh((1+iz)/2L))`.
pub fn halfstrip_to_disk_map<T: Real>(pp: &PeriodicParams<T>, z: Complex<T>) -> Complex<T> {
    let two_l = T::of(2.0) * pp.l();
    let t0 = Complex::new((T::one() / two_l).tanh(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let w = ((Complex::new(T::one(), T::zero()) + i * z)
        / Complex::new(two_l, T::zero()))
    .tanh();
    (t0 - w) / (t0 + w)
}

/// Leading-order wave speed per unit strength: `-coth(1/L) / (4 pi L)`.
pub fn periodic_wave_speed_slope<T: Real>(pp: &PeriodicParams<T>) -> T {
    let l = pp.l();
    -T::one() / (T::one() / l).tanh() / (T::of(4.0) * T::PI() * l)
}

/// The same speed through the regularized-gradient route: the real part of
/// `(i/4 pi) conj(f''(0)/f'(0))` with the derivatives of the conformal map
/// taken by Richardson-refined central differences.
pub fn periodic_wave_speed_gradient_route<T: Real>(pp: &PeriodicParams<T>) -> T {
    let step = T::of(4e-3) * pp.l();
    let (d1, d2) = complex_derivatives(
        |z| halfstrip_to_disk_map(pp, z),
        Complex::new(T::zero(), T::zero()),
        Complex::new(T::one(), T::zero()),
        step,
    );
    let ratio = d2 / d1;
    // Re[(i/4pi) conj(r)] = Im(r)/(4 pi)
    ratio.im / (T::of(4.0) * T::PI())
}

/// Periodic forcing
/// `(cosh(1/L) cos(x/L) - 1) / (8 pi^2 L^2 (cos(x/L) - cosh(1/L))^2)`.
pub fn periodic_forcing<T: Real>(pp: &PeriodicParams<T>, x: T) -> T {
    let l = pp.l();
    let c = (x / l).cos();
    let ch = (T::one() / l).cosh();
    let gap = c - ch; // strictly negative
    (ch * c - T::one()) / (T::of(8.0) * T::PI() * T::PI() * l * l * gap * gap)
}

/// Elementary antiderivative of the periodic forcing:
/// `-sin(x/L) / (8 pi^2 L (cos(x/L) - cosh(1/L)))`.
pub fn periodic_forcing_antiderivative<T: Real>(pp: &PeriodicParams<T>, x: T) -> T {
    let l = pp.l();
    let c = (x / l).cos();
    let ch = (T::one() / l).cosh();
    -(x / l).sin() / (T::of(8.0) * T::PI() * T::PI() * l * (c - ch))
}

/// Integral of the forcing over one period, from the antiderivative
/// endpoints: vanishes identically.
pub fn forcing_period_mean<T: Real>(pp: &PeriodicParams<T>) -> T {
    let half = T::PI() * pp.l();
    (periodic_forcing_antiderivative(pp, half) - periodic_forcing_antiderivative(pp, -half))
        / pp.period()
}

/// Truncation for the profile series so that the `n e^{-n/L}` envelope of
/// the dropped tail is below 1e-12, iterated twice.
pub fn periodic_profile_default_terms<T: Real>(pp: &PeriodicParams<T>) -> usize {
    let l = pp.l().as_f64();
    let base = 12.0 * std::f64::consts::LN_10;
    let mut n = (l * base).ceil().max(4.0);
    for _ in 0..2 {
        n = (l * (base + n.ln())).ceil().max(4.0);
    }
    n as usize
}

/// Surface-profile partial sum
/// `-(1/4 pi^2) sum_{n=1}^{N} n/(g L^2 + alpha^2 n^2) e^{-n/L} cos(n x/L)`.
pub fn periodic_profile<T: Real>(pp: &PeriodicParams<T>, x: T, n_terms: usize) -> T {
    periodic_profile_with_tail(pp, x, n_terms).0
}

/// As [`periodic_profile`], with the tail bound
/// `(1/4 pi^2) sum_{n>N} n e^{-n/L} / (g L^2)` in closed form.
pub fn periodic_profile_with_tail<T: Real>(
    pp: &PeriodicParams<T>,
    x: T,
    n_terms: usize,
) -> (T, T) {
    let l = pp.l();
    let mut acc = T::zero();
    for n in 1..=n_terms {
        let nt = T::of_usize(n);
        acc = acc
            + nt / (pp.g() * l * l + pp.alpha2() * nt * nt) * (-nt / l).exp()
                * (nt * x / l).cos();
    }
    let quarter_pi2 = T::of(4.0) * T::PI() * T::PI();
    let value = -acc / quarter_pi2;

    // sum_{n>N} n rho^n = rho^{N+1} ((N+1)(1-rho) + rho)/(1-rho)^2
    let rho = (-T::one() / l).exp();
    let np1 = T::of_usize(n_terms + 1);
    let tail_sum = rho.powi((n_terms + 1) as i32) * ((np1) * (T::one() - rho) + rho)
        / ((T::one() - rho) * (T::one() - rho));
    let tail = tail_sum / (pp.g() * l * l) / quarter_pi2;
    (value, tail)
}

/// Independent profile oracle: discrete Fourier analysis of the sampled
/// closed-form forcing over one period (`m_samples` equispaced points),
/// dividing mode `n` by `g + alpha^2 n^2 / L^2`.
pub fn periodic_profile_oracle<T: Real>(pp: &PeriodicParams<T>, x: T, m_samples: usize) -> T {
    let l = pp.l();
    let m = m_samples;
    let half = T::PI() * l;
    let step = pp.period() / T::of_usize(m);

    let samples: Vec<T> = (0..m)
        .map(|j| periodic_forcing(pp, -half + step * T::of_usize(j)))
        .collect();

    let mut acc = T::zero();
    for n in 1..(m / 2) {
        let nt = T::of_usize(n);
        // cosine coefficient of the sampled forcing
        let mut coeff = T::zero();
        for (j, &s) in samples.iter().enumerate() {
            let xj = -half + step * T::of_usize(j);
            coeff = coeff + s * (nt * xj / l).cos();
        }
        coeff = coeff * T::of(2.0) / T::of_usize(m);
        acc = acc + coeff / (pp.g() + pp.alpha2() * nt * nt / (l * l)) * (nt * x / l).cos();
    }
    -acc
}
