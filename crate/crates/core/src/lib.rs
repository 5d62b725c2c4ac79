//! Heat kernels, resolvents and maximal functions on real and complex hyperbolic spaces,
//! Damek–Ricci (AN) groups and H-type groups. All numerics are generic over [`Real`];
//! the `*64` aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod green;
pub mod inequalities;
pub mod kernels;
pub mod maximal;
pub mod parallel;
pub mod profile;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};
pub use quadrature::{EndpointSubstitution, QuadratureSpec};
pub use scalar::Real;

pub type Quadrature64 = QuadratureSpec<f64>;
pub type HnPoint64 = geometry::HnPoint<f64>;
pub type ANPoint64 = geometry::ANPoint<f64>;
pub type ANBall64 = geometry::ANBall<f64>;
pub type HTypeDescriptor64 = geometry::HTypeDescriptor<f64>;
pub type HTypePoint64 = geometry::HTypePoint<f64>;
pub type HnHeat64 = kernels::HnHeat<f64>;
pub type HcHeat64 = kernels::HcHeat<f64>;
pub type AnHeat64 = kernels::AnHeat<f64>;
pub type RadialKernelExpr64 = kernels::RadialKernelExpr<f64>;
pub type SpectralParams64 = green::SpectralParams<f64>;
pub type AlphaParams64 = green::AlphaParams<f64>;
pub type LegendreParams64 = special_fn::LegendreParams<f64>;
pub type Profile64 = profile::Profile<f64>;
pub type HalfSpaceGrid64 = maximal::HalfSpaceGrid<f64>;
pub type Decomposition64 = maximal::Decomposition<f64>;
pub type TestFunction64 = maximal::TestFunction<f64>;
pub type OpnormProbe64 = maximal::OpnormProbe<f64>;
pub type SphereQuadrature64 = maximal::SphereQuadrature<f64>;
pub type SampledField64 = maximal::SampledField<f64>;
pub type Thresholds64 = inequalities::Thresholds<f64>;
pub type Calibration64 = inequalities::Calibration<f64>;
