//! Explicit leading-order solutions of the solitary gravity-capillary
//! water-wave problem with point vortices on finite depth, the periodic
//! infinite-depth analogue, and independent numerical oracles for every
//! closed form.
//!
//! The crate is organized around the objects of the small-amplitude
//! expansion: the finite-depth vortex [`stream`] functions, the
//! [`interaction`] matrix coupling several vortices, the leading-order
//! surface [`profile`] with its three evaluation routes, the cubic
//! [`bifurcation`] coefficients, steady-frame [`streamlines`], the
//! [`periodic`] deep-water analogue, and conformal-map [`greens`]-function
//! verification.
//!
//! All numerics are generic over the scalar type through [`Real`]
//! (`f32`/`f64`); the `*64` aliases below fix the common instantiation.
//! Quoted tolerances assume `f64`.
//!
//! ```
//! use vortexwave::profile::{profile_series, profile_oracle, ProfileSpec};
//! use vortexwave::stream::PhysicalParams;
//!
//! // a vortex 30% of the way up the water column, with m = 1
//! let params = PhysicalParams::with_m(1.0_f64, 1.0, 1.0)?;
//! let spec = ProfileSpec::single(params, 0.3)?;
//!
//! // the surface dips at the origin, and the independent evaluation
//! // routes agree
//! let series = profile_series(&spec, 0.5, 60)?;
//! let oracle = profile_oracle(&spec, 0.5)?;
//! assert!(series < 0.0);
//! assert!((series - oracle).abs() < 1e-8);
//! # Ok::<(), vortexwave::Error>(())
//! ```

#![allow(clippy::needless_range_loop)] // index-heavy stencil/matrix code reads better this way
#![allow(clippy::excessive_precision)] // quadrature nodes are stored at full published precision

pub mod bifurcation;
pub mod error;
pub mod fd_laplace;
pub mod greens;
pub mod interaction;
pub mod numerics;
pub mod periodic;
pub mod profile;
pub mod scalar;
pub mod stream;
pub mod streamlines;

pub use error::{Error, Result};
pub use scalar::Real;
pub use stream::{PhysicalParams, Point2, VortexConfig};

/// `f64` instantiations of the core domain types.
pub type Point2_64 = stream::Point2<f64>;
pub type PhysicalParams64 = stream::PhysicalParams<f64>;
pub type VortexConfig64 = stream::VortexConfig<f64>;
pub type InteractionMatrix64 = interaction::InteractionMatrix<f64>;
pub type Profile64 = profile::Profile<f64>;
pub type ProfileSpec64 = profile::ProfileSpec<f64>;
pub type PeriodicParams64 = periodic::PeriodicParams<f64>;
pub type StreamPath64 = streamlines::StreamPath<f64>;

/// `f32` instantiations, for callers trading accuracy for size.
pub type Point2_32 = stream::Point2<f32>;
pub type PhysicalParams32 = stream::PhysicalParams<f32>;
pub type VortexConfig32 = stream::VortexConfig<f32>;
