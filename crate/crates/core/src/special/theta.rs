use super::QuadratureConfig;
use crate::error::{Error, Result};
use crate::real::{cx, Cx, Real};

/// ψ(x) = Σ_{n≥1} e^{−πn²x}.
pub fn jacobi_psi<T: Real>(x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "jacobi_psi needs x > 0, got {}",
            x.to_f64_lossy()
        )));
    }
    let mut sum = T::zero();
    for n in 1..=cfg.series_cutoff {
        let nn = T::from_usize_lossy(n * n);
        let term = (-T::PI() * nn * x).exp();
        sum += term;
        if term <= T::epsilon() * sum {
            return Ok(sum);
        }
    }
    let tail = (-T::PI() * T::from_usize_lossy(cfg.series_cutoff * cfg.series_cutoff) * x).exp();
    if tail <= cfg.abs_tol * sum {
        Ok(sum)
    } else {
        Err(Error::Convergence {
            what: "psi series cutoff reached".into(),
            estimate: tail.to_f64_lossy(),
        })
    }
}

/// θ(x) = 1 + 2ψ(x).
pub fn jacobi_theta<T: Real>(x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    Ok(T::one() + T::lit(2.0) * jacobi_psi(x, cfg)?)
}

/// Φ(t) = Σ_{n≥1} (4π²n⁴e^{9t/2} − 6πn²e^{5t/2}) e^{−πn²e^{2t}}, even in t.
///
/// Each term is formed as exp(5t/2 − πn²e^{2t}) · (4π²n⁴e^{2t} − 6πn²) so
/// that e^{9t/2} never overflows before the Gaussian factor underflows.
pub fn phi<T: Real>(t: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !t.is_finite() {
        return Err(Error::Domain("phi needs finite t".into()));
    }
    let t = t.abs();
    let limit = T::max_value().ln() * T::lit(0.5);
    if t >= limit {
        return Err(Error::Range {
            what: "e^{2t} overflows in phi".into(),
            limit: limit.to_f64_lossy(),
        });
    }
    let u = (t + t).exp();
    let pi = T::PI();
    let mut sum = T::zero();
    for n in 1..=cfg.series_cutoff {
        let n2 = T::from_usize_lossy(n * n);
        let poly = T::lit(4.0) * pi * pi * n2 * n2 * u - T::lit(6.0) * pi * n2;
        let term = (T::lit(2.5) * t - pi * n2 * u).exp() * poly;
        sum += term;
        // Terms decrease monotonically in n once the Gaussian dominates.
        if term.abs() <= T::epsilon() * sum.abs() || term == T::zero() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        what: "phi series cutoff reached".into(),
        estimate: sum.abs().to_f64_lossy(),
    })
}

/// Φ(z) for complex z in the strip |Im z| < π/4 where it is analytic.
/// Evaluated at whichever of ±z has Re ≥ 0, where the series converges
/// like a Gaussian in n with rate Re e^{2z} = e^{2 Re z} cos(2 Im z).
pub(crate) fn phi_complex<T: Real>(z: Cx<T>, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    if !z.re.is_finite() || !z.im.is_finite() || !(z.im.abs() < T::FRAC_PI_4()) {
        return Err(Error::Domain("phi needs |Im z| < π/4".into()));
    }
    let z = if z.re < T::zero() { -z } else { z };
    let limit = T::max_value().ln() * T::lit(0.5);
    if z.re >= limit {
        return Err(Error::Range {
            what: "e^{2t} overflows in phi".into(),
            limit: limit.to_f64_lossy(),
        });
    }
    let u = (z + z).exp();
    let pi = T::PI();
    let mut sum = cx(T::zero(), T::zero());
    let mut scale = T::zero();
    let mut prev = T::infinity();
    for n in 1..=cfg.series_cutoff {
        let n2 = T::from_usize_lossy(n * n);
        let poly = u * (T::lit(4.0) * pi * pi * n2 * n2) - cx(T::lit(6.0) * pi * n2, T::zero());
        let term = (z * T::lit(2.5) - u * (pi * n2)).exp() * poly;
        let mag = term.norm();
        sum += term;
        scale = scale.max(mag).max(sum.norm());
        // Past the peak of the magnitudes the tail is dominated by the
        // current term.
        if mag < prev && (mag <= T::epsilon() * scale || mag == T::zero()) {
            return Ok(sum);
        }
        prev = mag;
    }
    Err(Error::Convergence {
        what: "complex phi series cutoff reached".into(),
        estimate: prev.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn psi_matches_high_precision_series() {
        // mpmath, 40 digits
        let c = cfg();
        assert!((jacobi_psi(1.0, &c).unwrap() - 0.043_217_405_606_654_01).abs() < 1e-16);
        assert!((jacobi_psi(0.25, &c).unwrap() - 0.500_006_974_684_712_4).abs() < 1e-14);
    }

    #[test]
    fn theta_functional_equation() {
        let c = cfg();
        for v in [0.25f64, 0.5, 1.0, 2.0, 4.0] {
            let lhs = v.powf(0.25) * jacobi_theta(v, &c).unwrap();
            let rhs = v.powf(-0.25) * jacobi_theta(1.0 / v, &c).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "v = {v}");
        }
    }

    #[test]
    fn psi_rejects_non_positive() {
        assert!(matches!(jacobi_psi(0.0, &cfg()), Err(Error::Domain(_))));
        assert!(matches!(jacobi_psi(-1.0, &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_even_and_reference_values() {
        let c = cfg();
        assert_eq!(phi(3.0, &c).unwrap(), phi(-3.0, &c).unwrap());
        // mpmath, 40 digits
        let p0 = phi(0.0, &c).unwrap();
        assert!((p0 - 0.893_393_800_934_246_9).abs() < 1e-14 * p0);
        let p5 = phi(0.5, &c).unwrap();
        assert!((p5 - 0.060_377_451_784_348_66).abs() < 1e-13 * p5);
    }

    #[test]
    fn phi_from_theta_by_finite_differences() {
        // Φ = ½(∂_t² − ¼)(e^{t/2} θ(e^{2t}))
        let c = cfg();
        let g = |t: f64| (t / 2.0).exp() * jacobi_theta((2.0 * t).exp(), &c).unwrap();
        let h = 1e-4;
        for k in 0..=8 {
            let t = 0.25 * k as f64;
            let d2 = (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h);
            let fd = 0.5 * (d2 - 0.25 * g(t));
            let p = phi(t, &c).unwrap();
            assert!((fd - p).abs() < 1e-6, "t = {t}: {fd} vs {p}");
        }
    }

    #[test]
    fn phi_range_error_reports_limit() {
        match phi(400.0, &cfg()) {
            Err(Error::Range { limit, .. }) => assert!((limit - 354.89).abs() < 0.01),
            other => panic!("{other:?}"),
        }
        assert_eq!(phi(50.0, &cfg()).unwrap(), 0.0);
    }
}
