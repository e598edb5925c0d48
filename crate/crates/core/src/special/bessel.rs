use super::{QuadratureConfig, Scaled};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod_breakpoints, Tolerance};
use crate::real::{cx, Cx, Real};

/// Returns (g, I) with K_ν(z) = e^g · I.
///
/// K_ν(z) = ½∫_{−∞}^{∞} exp(νt − z cosh t) dt, integrated along the
/// horizontal line t = u + iα. For ν = a + iμ the factor e^{−μα} with
/// α → sign(μ)·π/2 brings the integrand down to the size of the result,
/// which removes the e^{π|μ|/2} cancellation on the real axis; keeping
/// π/2 − |α| ≥ 3/|μ| preserves enough decay in cosh for the cutoffs.
fn bessel_k_parts<T: Real>(nu: Cx<T>, z: T, cfg: &QuadratureConfig<T>) -> Result<(T, Cx<T>)> {
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::Domain(format!("bessel_k needs z > 0, got {}", z.to_f64_lossy())));
    }
    if !nu.re.is_finite() || !nu.im.is_finite() {
        return Err(Error::Domain("non-finite order".into()));
    }
    // K is even in ν.
    let nu = if nu.re < T::zero() || (nu.re == T::zero() && nu.im < T::zero()) {
        -nu
    } else {
        nu
    };
    let a = nu.re;
    let mu = nu.im;
    let half_pi = T::FRAC_PI_2();
    let alpha = if mu == T::zero() {
        T::zero()
    } else {
        (half_pi - T::lit(3.0) / mu.abs()).max(T::zero()) * mu.signum()
    };
    let (sa, ca) = alpha.sin_cos();
    let g = |u: T| a * u - mu * alpha - z * ca * u.cosh();
    let u_peak = (a / (z * ca)).asinh();
    let g_peak = g(u_peak);
    let drop = -T::epsilon().ln() + T::lit(6.0);
    let reach = |dir: T| -> T {
        let mut step = T::lit(0.25);
        let mut u = u_peak;
        while g(u) > g_peak - drop {
            u += dir * step;
            step = step * T::lit(1.5);
        }
        u
    };
    let u_lo = reach(-T::one());
    let u_hi = reach(T::one());
    let width = u_hi - u_lo;
    // Phase speed |μ − z sin α sinh u| bounds the oscillation count.
    let phase_span = mu.abs() * width + z * sa.abs() * (u_hi.abs().max(u_lo.abs())).sinh() * T::lit(2.0);
    let panels = (phase_span / T::PI()).ceil().to_usize().unwrap_or(16).clamp(16, 4000);
    let pts: Vec<T> = (0..=panels)
        .map(|i| u_lo + width * T::from_usize_lossy(i) / T::from_usize_lossy(panels))
        .collect();
    let shift = cx(T::zero(), alpha);
    let q = gauss_kronrod_breakpoints(
        |u: T| -> Cx<T> {
            let t = shift + u;
            let h = nu * t - t.cosh() * z;
            (h - g_peak).exp() * T::lit(0.5)
        },
        &pts,
        Tolerance::new(cfg.abs_tol, cfg.rel_tol),
        cfg.max_panels.max(panels * 4),
    )?;
    let mut value = q.value;
    if a == T::zero() {
        value.im = T::zero();
    }
    Ok((g_peak, value))
}

/// K_ν(z) for complex order and z > 0. Raises a range error when the value
/// leaves the floating-point range; [`bessel_k_scaled`] covers that case.
pub fn bessel_k<T: Real>(nu: Cx<T>, z: T, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    let (g, v) = bessel_k_parts(nu, z, cfg)?;
    let ln_abs = g + v.norm().ln();
    if ln_abs > T::max_value().ln() || (ln_abs < T::min_positive_value().ln() && v.norm() > T::zero()) {
        return Err(Error::Range {
            what: format!("|K| = e^{} outside floating-point range", ln_abs.to_f64_lossy()),
            limit: T::max_value().ln().to_f64_lossy(),
        });
    }
    Ok(v * g.exp())
}

/// K_ν(z) as mantissa × 10^exponent.
pub fn bessel_k_scaled<T: Real>(nu: Cx<T>, z: T, cfg: &QuadratureConfig<T>) -> Result<Scaled<T>> {
    let (g, v) = bessel_k_parts(nu, z, cfg)?;
    let mut s = Scaled::from_value(v);
    let e = (g / T::LN_10()).floor();
    s.mantissa = s.mantissa * (g - e * T::LN_10()).exp();
    s.exp10 += e.to_i32().unwrap_or(i32::MAX);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    fn k(re: f64, im: f64, z: f64) -> Cx<f64> {
        bessel_k(Cx::new(re, im), z, &cfg()).unwrap()
    }

    #[test]
    fn reference_values() {
        // mpmath.besselk, 30 digits
        let cases = [
            ((0.0, 2.5, 2.0 * PI), Cx::new(5.741_231_761_711_712e-4, 0.0)),
            ((0.0, 0.0, 2.0 * PI), Cx::new(9.165_843_609_043_703e-4, 0.0)),
            ((2.25, 10.0, 2.0 * PI), Cx::new(3.322_560_865_771_824_4e-7, -6.216_549_404_475_563e-7)),
            ((1.0, 0.0, 0.5), Cx::new(1.656_441_120_003_300_9, 0.0)),
            ((0.0, 30.0, 2.0 * PI), Cx::new(1.417_325_609_920_373_8e-21, 0.0)),
        ];
        for ((re, im, z), want) in cases {
            let got = k(re, im, z);
            assert!((got - want).norm() < 1e-12 * want.norm(), "ν = {re}+{im}i: {got} vs {want}");
        }
    }

    #[test]
    fn even_in_order_and_real_for_imaginary_order() {
        let a = k(0.0, 3.5, 2.0 * PI);
        let b = k(0.0, -3.5, 2.0 * PI);
        assert_eq!(a, b);
        assert_eq!(a.im, 0.0);
        let c = k(1.3, 4.0, 3.0);
        let d = k(-1.3, -4.0, 3.0);
        assert_eq!(c, d);
    }

    #[test]
    fn conjugate_order_gives_conjugate_value() {
        let a = k(2.25, 10.0, 2.0 * PI);
        let b = k(2.25, -10.0, 2.0 * PI);
        assert!((a - b.conj()).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn scaled_form_beyond_range() {
        let s = bessel_k_scaled(Cx::new(0.0, 500.0), 2.0 * PI, &cfg()).unwrap();
        assert!(s.exp10 < -300);
        assert!(matches!(
            bessel_k(Cx::new(0.0, 500.0), 2.0 * PI, &cfg()),
            Err(Error::Range { .. })
        ));
        let t = bessel_k_scaled(Cx::new(2.0, 3.0), 1.0, &cfg()).unwrap();
        let v = k(2.0, 3.0, 1.0);
        assert!((t.value() - v).norm() < 1e-14 * v.norm());
    }

    #[test]
    fn rejects_bad_argument() {
        assert!(matches!(
            bessel_k(Cx::new(0.0, 1.0), 0.0, &cfg()),
            Err(Error::Domain(_))
        ));
    }
}
