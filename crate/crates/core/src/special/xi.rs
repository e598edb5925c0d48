use super::gamma::log_gamma;
use super::theta::{phi, phi_complex};
use super::zeta::zeta_times_s_minus_one;
use super::QuadratureConfig;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod, Tolerance};
use crate::real::{cx, Cx, Real};

/// Representative of {ω, −ω} with Im ≤ 0, and Re ≥ 0 on the real axis.
fn canonical<T: Real>(omega: Cx<T>) -> Cx<T> {
    if omega.im > T::zero() || (omega.im == T::zero() && omega.re < T::zero()) {
        -omega
    } else {
        omega
    }
}

/// ξ(ω) = 2∫₀^∞ cos(ωt) Φ(t) dt.
///
/// The range is cut where the envelope |Φ(t)| cosh(Im ω · t) falls below
/// ε/100 of its peak; beyond that point the envelope decays doubly
/// exponentially, so the discarded tail is below the same fraction.
///
/// For |Re ω| > 10/π the integral over the real line cancels down to
/// ξ ~ e^{−π|ω|/4}; it is then taken along t + iα with α = π/4 − 5/(2|ω|),
/// which leaves a cancellation of order |ω|^{3/4} only.
pub fn xi_fourier<T: Real>(omega: Cx<T>, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    if !omega.re.is_finite() || !omega.im.is_finite() {
        return Err(Error::Domain("non-finite omega".into()));
    }
    let omega = canonical(omega);
    let alpha = T::FRAC_PI_4() - T::lit(2.5) / omega.re.abs();
    if alpha > T::zero() {
        // Evenness: shift towards the half-plane where e^{iωt} decays.
        let w = if omega.re < T::zero() { -omega } else { omega };
        return xi_fourier_shifted(w, alpha, cfg);
    }
    let growth = omega.im.abs();
    let envelope = |t: T| -> Result<T> { Ok(phi(t, cfg)?.abs() * (growth * t).cosh()) };
    let threshold = T::epsilon() * T::lit(1e-2);
    let dt = T::lit(0.05);
    let mut peak = envelope(T::zero())?;
    let mut t = T::zero();
    let mut cut = None;
    while t < cfg.truncation_t {
        t = (t + dt).min(cfg.truncation_t);
        let e = envelope(t)?;
        if !e.is_finite() {
            return Err(Error::Range {
                what: "xi_fourier envelope overflow".into(),
                limit: t.to_f64_lossy(),
            });
        }
        if e > peak {
            peak = e;
        } else if e <= threshold * peak {
            cut = Some(t);
            break;
        }
    }
    let cut = match cut {
        Some(c) => c,
        None => {
            let tail = envelope(cfg.truncation_t)? * T::lit(2.0);
            return Err(Error::Convergence {
                what: "xi_fourier integrand not negligible at truncation_t".into(),
                estimate: tail.to_f64_lossy(),
            });
        }
    };
    let cycles = (omega.re.abs() * cut / T::PI()).ceil().to_usize().unwrap_or(1);
    let panels = (2 * cycles).max(8);
    let tol = Tolerance::new(cfg.abs_tol * peak, cfg.rel_tol);
    let two = T::lit(2.0);
    let q = gauss_kronrod(
        |t: T| -> Cx<T> {
            let p = phi(t, cfg).unwrap_or(T::nan());
            (omega * t).cos() * (two * p)
        },
        T::zero(),
        cut,
        panels,
        tol,
        cfg.max_panels.max(panels),
    )?;
    Ok(q.value)
}

/// e^{−ωα}∫ e^{iωt}Φ(t + iα) dt over the whole line, Re ω > 0, α > 0.
fn xi_fourier_shifted<T: Real>(omega: Cx<T>, alpha: T, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    let i = cx(T::zero(), T::one());
    let integrand = |t: T| -> Result<Cx<T>> { Ok((i * omega * t).exp() * phi_complex(cx(t, alpha), cfg)?) };
    let envelope = |t: T| -> Result<T> { integrand(t).map(|v| v.norm()) };
    let threshold = T::epsilon() * T::lit(1e-2);
    let dt = T::lit(0.05);
    let mut peak = envelope(T::zero())?;
    let mut ends = [T::zero(); 2];
    for (k, dir) in [T::one(), -T::one()].into_iter().enumerate() {
        let mut t = T::zero();
        loop {
            t += dt;
            if t > cfg.truncation_t {
                return Err(Error::Convergence {
                    what: "shifted xi_fourier integrand not negligible at truncation_t".into(),
                    estimate: envelope(dir * t)?.to_f64_lossy(),
                });
            }
            let e = envelope(dir * t)?;
            if !e.is_finite() {
                return Err(Error::Range {
                    what: "xi_fourier envelope overflow".into(),
                    limit: t.to_f64_lossy(),
                });
            }
            peak = peak.max(e);
            if e <= threshold * peak {
                ends[k] = dir * t;
                break;
            }
        }
    }
    let (lo, hi) = (ends[1], ends[0]);
    // Phase rate is about |ω| + 2πe^{2t} from the n = 1 term.
    let rate = omega.norm() + T::two_pi() * (T::lit(2.0) * hi.abs().max(lo.abs())).exp();
    let panels = ((rate * (hi - lo) / T::PI()).ceil().to_usize().unwrap_or(1)).max(16);
    let tol = Tolerance::new(cfg.abs_tol * peak, cfg.rel_tol);
    let q = gauss_kronrod(
        |t: T| integrand(t).unwrap_or(cx(T::nan(), T::nan())),
        lo,
        hi,
        panels,
        tol,
        cfg.max_panels.max(4 * panels),
    )?;
    Ok(q.value * (-omega * alpha).exp())
}

/// Complex logarithm of ξ(ω) from ½s(s−1)Γ(s/2)π^{−s/2}ζ(s), s = ½ + iω.
///
/// Evaluated at whichever of ±ω has Im ω ≤ 0, so Re s ≥ ½ and Γ(s/2) has no
/// poles; (s−1)ζ(s) is formed directly, so s = 1 is regular. A zero of ξ
/// returns real part −∞.
pub fn xi_zeta_ln<T: Real>(omega: Cx<T>, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    if !omega.re.is_finite() || !omega.im.is_finite() {
        return Err(Error::Domain("non-finite omega".into()));
    }
    let omega = canonical(omega);
    let half = T::lit(0.5);
    let s = cx(half - omega.im, omega.re);
    let zs = zeta_times_s_minus_one(s, &cfg.zeta)?;
    let ln_rest = (s * half).ln() + log_gamma(s * half)? - s * half * T::PI().ln();
    if zs.re == T::zero() && zs.im == T::zero() {
        return Ok(cx(T::neg_infinity(), T::zero()));
    }
    Ok(ln_rest + zs.ln())
}

/// ξ(ω) through ζ and Γ; see [`xi_zeta_ln`].
pub fn xi_zeta<T: Real>(omega: Cx<T>, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    let ln = xi_zeta_ln(omega, cfg)?;
    if ln.re == T::neg_infinity() {
        return Ok(cx(T::zero(), T::zero()));
    }
    if ln.re > T::max_value().ln() {
        return Err(Error::Range {
            what: "xi overflows; use xi_zeta_ln".into(),
            limit: T::max_value().ln().to_f64_lossy(),
        });
    }
    Ok(ln.exp())
}
