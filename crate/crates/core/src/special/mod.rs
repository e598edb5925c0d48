//! Analytic building blocks: theta series, two independent routes to ξ,
//! complex log-gamma, ζ on and near the critical line, Bessel K and
//! Whittaker W of complex order, and the scaling functions f, Z and S.

mod bessel;
mod config;
mod gamma;
mod polya;
mod scaling;
mod theta;
mod whittaker;
mod xi;
mod zeta;

pub use bessel::{bessel_k, bessel_k_scaled};
pub use config::{QuadratureConfig, Scaled, WhittakerConfig, ZetaConfig};
pub use gamma::{digamma, log_gamma};
pub use polya::{polya_fake_xi, PolyaOrder};
pub use scaling::{big_z, log_scaling_s, prefactor_f, riemann_siegel_theta, scaling_s};
pub use theta::{jacobi_psi, jacobi_theta, phi};
pub use whittaker::{
    whittaker_w, whittaker_w_grid, whittaker_w_real, whittaker_w_scaled, WhittakerIndex,
};
pub use xi::{xi_fourier, xi_zeta, xi_zeta_ln};
pub use zeta::{zeta, zeta_critical};

pub(crate) use gamma::{BERNOULLI_2K, BERNOULLI_2K_OVER_FACT};
