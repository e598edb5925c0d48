//! Named real functions of one real argument, evaluable on a grid.

use std::f64::consts::PI;

use clap::ValueEnum;
use xi_spectral::cusp::characteristic_sum;
use xi_spectral::riemann_siegel::{rs_jumps, rs_main_sum};
use xi_spectral::shooting::{characteristic_one_sided, PotentialSpec};
use xi_spectral::special::{
    big_z, bessel_k, jacobi_theta, phi, polya_fake_xi, scaling_s, whittaker_w_real, xi_fourier, xi_zeta, PolyaOrder,
    QuadratureConfig, WhittakerIndex,
};
use xi_spectral::{Cx, Policy, Potential, Result, ShootingConfig};

use crate::config::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// ξ(ω) through ζ.
    #[value(name = "xi")]
    Xi,
    /// ξ(ω) as the Fourier transform of Φ.
    #[value(name = "xi_fourier")]
    XiFourier,
    /// S(ω)ξ(ω).
    #[value(name = "sxi")]
    SXi,
    /// Hardy's Z(ω).
    #[value(name = "Z")]
    Z,
    /// The scaling S(ω).
    #[value(name = "S")]
    S,
    /// K_{iω/2}(z), z = 2π unless `--z` is given.
    #[value(name = "K")]
    K,
    /// W_{κ,iω/2}(z), κ = 9/4 and z = 4π unless given.
    #[value(name = "W")]
    W,
    /// Φ(t).
    #[value(name = "phi")]
    Phi,
    /// θ(x) = Σ e^{−πn²x} over all integers n.
    #[value(name = "theta")]
    Theta,
    /// Riemann–Siegel main sum for −Z(ω).
    #[value(name = "rs")]
    Rs,
    /// Whittaker mode sum with a_n = N^{−3/2} at n = N² and zero elsewhere.
    #[value(name = "sumw")]
    SumW,
    /// Pólya's fake ξ*(ω).
    #[value(name = "polyafake")]
    PolyaFake,
    /// Shooting characteristic P(ω²/4) for V = 4π²e^{2x} − 4πκe^x + γ on x ≥ 0.
    #[value(name = "morse_shoot")]
    MorseShoot,
    /// Shooting characteristic P(ω²/4) for V = 4π²e^{2x} on x ≥ 0.
    #[value(name = "exp_shoot")]
    ExpShoot,
}

/// Optional parameters shared by the registry.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Params {
    pub kappa: Option<f64>,
    pub z: Option<f64>,
    pub gamma: Option<f64>,
}

/// A function with its parameters and configurations bound.
pub struct Bound {
    pub function: Function,
    quad: QuadratureConfig<f64>,
    shooting: ShootingConfig,
    n_max: usize,
    kappa: f64,
    z: f64,
    potential: Option<Potential>,
}

impl Bound {
    pub fn new(function: Function, params: Params, cfg: &RunConfig) -> Result<Self> {
        let (kappa, z) = match function {
            Function::K => (0.0, params.z.unwrap_or(2.0 * PI)),
            _ => (params.kappa.unwrap_or(2.25), params.z.unwrap_or(4.0 * PI)),
        };
        let potential = match function {
            Function::MorseShoot => Some(PotentialSpec::morse(kappa, params.gamma.unwrap_or(0.0))?),
            Function::ExpShoot => Some(PotentialSpec::exp_one_sided()),
            _ => None,
        };
        Ok(Self {
            function,
            quad: cfg.quadrature(),
            shooting: cfg.shooting(),
            n_max: cfg.cusp.n_max,
            kappa,
            z,
            potential,
        })
    }

    /// Name of the argument column.
    pub fn argument(&self) -> &'static str {
        match self.function {
            Function::Phi => "t",
            Function::Theta => "x",
            _ => "omega",
        }
    }

    pub fn value_name(&self) -> &'static str {
        match self.function {
            Function::Xi | Function::XiFourier => "xi",
            Function::SXi => "S_xi",
            Function::Z => "Z",
            Function::S => "S",
            Function::K => "K",
            Function::W => "W",
            Function::Phi => "Phi",
            Function::Theta => "theta",
            Function::Rs => "rs",
            Function::SumW => "P",
            Function::PolyaFake => "xi_star",
            Function::MorseShoot | Function::ExpShoot => "P",
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let q = &self.quad;
        let w = Cx::new(x, 0.0);
        match self.function {
            Function::Xi => Ok(xi_zeta(w, q)?.re),
            Function::XiFourier => Ok(xi_fourier(w, q)?.re),
            Function::SXi => Ok(scaling_s(x) * xi_zeta(w, q)?.re),
            Function::Z => big_z(x, q),
            Function::S => Ok(scaling_s(x)),
            Function::K => Ok(bessel_k(Cx::new(0.0, 0.5 * x), self.z, q)?.re),
            Function::W => whittaker_w_real(self.kappa, WhittakerIndex::Imaginary(0.5 * x), self.z, q),
            Function::Phi => phi(x, q),
            Function::Theta => jacobi_theta(x, q),
            Function::Rs => Ok(rs_main_sum(x)),
            Function::SumW => characteristic_sum(&Policy::square_only(), x, self.n_max, q),
            Function::PolyaFake => polya_fake_xi(x, PolyaOrder::First, q),
            Function::MorseShoot | Function::ExpShoot => {
                let pot = self.potential.as_ref().expect("shooting functions carry a potential");
                characteristic_one_sided(pot, 0.25 * x * x, &self.shooting)?.value()
            }
        }
    }

    /// Left end of the region where the function is not identically zero.
    pub fn support_start(&self) -> f64 {
        match self.function {
            Function::Rs => 2.0 * PI,
            _ => f64::NEG_INFINITY,
        }
    }

    /// Points inside `(lo, hi]` where the function jumps rather than
    /// crossing zero; sign changes there are not zeros.
    pub fn jumps(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self.function {
            Function::Rs => rs_jumps(lo, hi),
            _ => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(f: Function) -> Bound {
        Bound::new(f, Params::default(), &RunConfig::default()).unwrap()
    }

    #[test]
    fn scaling_at_zero() {
        assert!((bound(Function::S).eval(0.0).unwrap() - 0.6316).abs() < 1e-4);
    }

    #[test]
    fn routes_agree() {
        let a = bound(Function::Xi).eval(20.0).unwrap();
        let b = bound(Function::XiFourier).eval(20.0).unwrap();
        assert!((a - b).abs() <= 1e-10 * a.abs());
    }

    #[test]
    fn shooting_zero_matches_bessel_zero() {
        // First zero of K_{iω/2}(2π) in ω.
        let w0 = 19.53754016701996;
        let k = bound(Function::K);
        let p = bound(Function::ExpShoot);
        let slope = |b: &Bound| b.eval(w0 + 1e-3).unwrap() - b.eval(w0 - 1e-3).unwrap();
        assert!(k.eval(w0).unwrap().abs() < 1e-9 * slope(&k).abs());
        assert!(p.eval(w0).unwrap().abs() < 1e-6 * slope(&p).abs());
    }

    #[test]
    fn only_rs_has_jumps() {
        assert_eq!(bound(Function::Rs).jumps(0.0, 30.0).len(), 2);
        assert!(bound(Function::Z).jumps(0.0, 30.0).is_empty());
        let rs = bound(Function::Rs);
        assert_eq!(rs.eval(rs.support_start() * 0.999).unwrap(), 0.0);
    }
}
