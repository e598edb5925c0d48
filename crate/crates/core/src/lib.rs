//! Numerics for comparing Riemann's ξ function with characteristic functions
//! of one- and two-dimensional Schrödinger-type operators.
//!
//! All numerical code is generic over a [`Real`] scalar (`f32` or `f64`);
//! the aliases at the crate root fix it to `f64`.

pub mod cusp;
pub mod error;
pub mod grid;
pub mod ode;
pub mod quadrature;
pub mod real;
pub mod riemann_siegel;
pub mod roots;
pub mod semiclassical;
pub mod shooting;
pub mod special;

pub use error::{Error, Result};
pub use real::{Cx, Real};

/// Special-function configuration in double precision.
pub type Config = special::QuadratureConfig<f64>;
/// Complex double.
pub type Complex64 = Cx<f64>;
/// Shooting configuration in double precision.
pub type ShootingConfig = shooting::ShootingConfig<f64>;
/// Potential in double precision.
pub type Potential = shooting::PotentialSpec<f64>;
/// Width function in double precision.
pub type Width = semiclassical::WidthFunction<f64>;
/// Cusp coefficient policy in double precision.
pub type Policy = cusp::CoefficientPolicy<f64>;
/// Frequency grid in double precision.
pub type Grid = grid::FrequencyGrid<f64>;
