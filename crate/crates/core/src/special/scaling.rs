use super::gamma::log_gamma;
use super::zeta::zeta_critical;
use super::QuadratureConfig;
use crate::error::{Error, Result};
use crate::real::{cx, Cx, Real};

fn finite<T: Real>(omega: T) -> Result<()> {
    if omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain("non-finite omega".into()))
    }
}

/// log Γ(¼ + iω/2).
fn ln_gamma_quarter<T: Real>(omega: T) -> Result<Cx<T>> {
    log_gamma(cx(T::lit(0.25), omega * T::lit(0.5)))
}

/// θ(ω) = arg Γ(¼ + iω/2) − (ω/2) log π, continuous in ω.
pub fn riemann_siegel_theta<T: Real>(omega: T) -> Result<T> {
    finite(omega)?;
    Ok(ln_gamma_quarter(omega)?.im - omega * T::lit(0.5) * T::PI().ln())
}

/// f(ω) = ½ π^{−1/4} (ω² + ¼) |Γ(¼ + iω/2)|, positive on the real line.
pub fn prefactor_f<T: Real>(omega: T) -> Result<T> {
    finite(omega)?;
    let ln = ln_gamma_quarter(omega)?.re - T::lit(0.25) * T::PI().ln()
        + (omega * omega + T::lit(0.25)).ln()
        - T::LN_2();
    Ok(ln.exp())
}

/// Z(ω) = e^{iθ(ω)} ζ(½ + iω), real on the real line, with ξ = −f Z.
pub fn big_z<T: Real>(omega: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let theta = riemann_siegel_theta(omega)?;
    let z = Cx::from_polar(T::one(), theta) * zeta_critical(omega, cfg)?;
    Ok(z.re)
}

/// log S(ω) with S(ω) = 2^{3/2} cosh(πω/4) / (π^{1/4} (ω² + 4)^{7/8}).
pub fn log_scaling_s<T: Real>(omega: T) -> T {
    let x = (T::PI() * omega * T::lit(0.25)).abs();
    let ln_cosh = x + ((T::one() + (-(x + x)).exp()) * T::lit(0.5)).ln();
    T::lit(1.5) * T::LN_2() + ln_cosh
        - T::lit(0.25) * T::PI().ln()
        - T::lit(0.875) * (omega * omega + T::lit(4.0)).ln()
}

/// S(ω); overflows to +∞ beyond |ω| ≈ 900 in double precision.
pub fn scaling_s<T: Real>(omega: T) -> T {
    log_scaling_s(omega).exp()
}
