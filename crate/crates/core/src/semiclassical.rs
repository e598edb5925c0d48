//! Semiclassical inverse spectral machinery: width functions, the Weyl
//! action W(E), Abel inversion back to a width, the imaginary time T(E) and
//! the negative-energy asymptotics that fix β = 4πκ and γ = 0.
//!
//! Conventions: a width function w(v) is the length of {x : V(x) ≤ v}.
//! W(E) = 2∫√(E − v) dw(v) and T(E) = ½∫ dw(v)/√(v − E), both
//! Riemann–Stieltjes integrals over the width.

use crate::error::{Error, Result};
use crate::quadrature::{exp_sinh, gauss_kronrod_breakpoints, tanh_sinh, Tolerance};
use crate::real::{cx, Real};
use crate::special::{xi_zeta_ln, QuadratureConfig};

const MAX_LEVEL: usize = 12;

/// Monotone width function.
#[derive(Debug, Clone, PartialEq)]
pub enum WidthFunction<T> {
    /// Inverse width v(w) = 4π²e^{2w} − βe^w + γ on w ≥ 0 (hard wall at w = 0).
    Exponential { beta: T, gamma: T },
    Sampled(SampledWidth<T>),
}

/// Piecewise-linear w(v) through the samples, zero below the first height.
/// Repeated heights encode jumps (plateaux of V). Above the last sample the
/// width continues as w_n + ½ log(v/v_n), the leading growth of every width
/// in this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWidth<T> {
    v: Vec<T>,
    w: Vec<T>,
}

impl<T: Real> SampledWidth<T> {
    pub fn new(v: Vec<T>, w: Vec<T>) -> Result<Self> {
        if v.len() != w.len() || v.len() < 2 {
            return Err(Error::Validation(
                "width table needs at least two (v, w) pairs of equal length".into(),
            ));
        }
        if v.iter().chain(&w).any(|x| !x.is_finite()) {
            return Err(Error::Validation("width table has non-finite entries".into()));
        }
        if w[0] < T::zero() {
            return Err(Error::Validation("width must be non-negative".into()));
        }
        for i in 1..v.len() {
            if v[i] < v[i - 1] || w[i] < w[i - 1] || (v[i] == v[i - 1] && w[i] == w[i - 1]) {
                return Err(Error::Validation(format!(
                    "width table not monotone at index {i}"
                )));
            }
        }
        if !(v[v.len() - 1] > T::zero()) || v[v.len() - 1] == v[0] {
            return Err(Error::Validation(
                "width table must span a positive height range ending above 0".into(),
            ));
        }
        Ok(Self { v, w })
    }

    pub fn heights(&self) -> &[T] {
        &self.v
    }

    pub fn widths(&self) -> &[T] {
        &self.w
    }

    fn last(&self) -> (T, T) {
        (self.v[self.v.len() - 1], self.w[self.w.len() - 1])
    }

    fn width(&self, v: T) -> T {
        if v < self.v[0] {
            return T::zero();
        }
        let (vn, wn) = self.last();
        if v >= vn {
            return wn + (v / vn).ln() * T::lit(0.5);
        }
        // Last index with v_i <= v; a jump takes its upper value.
        let i = self.v.partition_point(|x| *x <= v) - 1;
        let (v0, v1) = (self.v[i], self.v[i + 1]);
        self.w[i] + (self.w[i + 1] - self.w[i]) * (v - v0) / (v1 - v0)
    }
}

fn four_pi_sq<T: Real>() -> T {
    T::lit(4.0) * T::PI() * T::PI()
}

impl<T: Real> WidthFunction<T> {
    /// The exponential-quadratic family; β ≤ 8π² keeps v(w) increasing.
    pub fn exponential(beta: T, gamma: T) -> Result<Self> {
        if !beta.is_finite() || !gamma.is_finite() {
            return Err(Error::Validation("non-finite width parameters".into()));
        }
        if beta > T::lit(2.0) * four_pi_sq::<T>() {
            return Err(Error::Validation(format!(
                "beta = {} exceeds 8π², v(w) would not be monotone",
                beta.to_f64_lossy()
            )));
        }
        Ok(Self::Exponential { beta, gamma })
    }

    pub fn sampled(v: Vec<T>, w: Vec<T>) -> Result<Self> {
        Ok(Self::Sampled(SampledWidth::new(v, w)?))
    }

    /// Bottom of the potential, v(0).
    pub fn v_min(&self) -> T {
        match self {
            Self::Exponential { beta, gamma } => four_pi_sq::<T>() - *beta + *gamma,
            Self::Sampled(s) => s.v[0],
        }
    }

    /// w(v).
    pub fn width(&self, v: T) -> T {
        match self {
            Self::Exponential { beta, gamma } => {
                if v <= self.v_min() {
                    return T::zero();
                }
                // e^w is the larger root of 4π²u² − βu + γ − v = 0.
                let disc = *beta * *beta + T::lit(4.0) * four_pi_sq::<T>() * (v - *gamma);
                let u = (*beta + disc.sqrt()) / (T::lit(2.0) * four_pi_sq::<T>());
                u.ln().max(T::zero())
            }
            Self::Sampled(s) => s.width(v),
        }
    }

    /// v(w) for w ≥ 0.
    pub fn height(&self, w: T) -> Result<T> {
        if !(w >= T::zero()) {
            return Err(Error::Domain("height needs w >= 0".into()));
        }
        match self {
            Self::Exponential { beta, gamma } => {
                let u = w.exp();
                Ok(four_pi_sq::<T>() * u * u - *beta * u + *gamma)
            }
            Self::Sampled(s) => {
                let (vn, wn) = s.last();
                if w >= wn {
                    return Ok(vn * (T::lit(2.0) * (w - wn)).exp());
                }
                if w <= s.w[0] {
                    return Ok(s.v[0]);
                }
                let i = s.w.partition_point(|x| *x <= w) - 1;
                let (w0, w1) = (s.w[i], s.w[i + 1]);
                Ok(s.v[i] + (s.v[i + 1] - s.v[i]) * (w - w0) / (w1 - w0))
            }
        }
    }
}

fn tol<T: Real>(cfg: &QuadratureConfig<T>) -> Tolerance<T> {
    Tolerance::new(cfg.abs_tol, cfg.rel_tol)
}

/// ∫_{v_n}^{E} √(E − v) dv / v, the Weyl contribution of the logarithmic tail.
fn log_tail_action<T: Real>(vn: T, e: T) -> T {
    if e <= vn {
        return T::zero();
    }
    let r = (T::one() - vn / e).sqrt();
    T::lit(2.0) * e.sqrt() * (r.atanh() - r)
}

/// Weyl action W(E) = 2∫√(E − v) dw(v); zero for E ≤ v(0).
pub fn weyl_action<T: Real>(width: &WidthFunction<T>, e: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !e.is_finite() {
        return Err(Error::Domain("non-finite energy".into()));
    }
    let v0 = width.v_min();
    if e <= v0 {
        return Ok(T::zero());
    }
    match width {
        WidthFunction::Exponential { .. } => {
            // By parts, W(E) = ∫ w(v)/√(E − v) dv; v = E − (E − v0)s² removes
            // the endpoint singularity.
            let span = e - v0;
            let q = tanh_sinh(
                |s: T| width.width(e - span * s * s),
                T::zero(),
                T::one(),
                tol(cfg),
                MAX_LEVEL,
            )?;
            Ok(T::lit(2.0) * span.sqrt() * q.value)
        }
        WidthFunction::Sampled(s) => {
            let two_thirds = T::lit(2.0) / T::lit(3.0);
            let up = |v: T| (e - v).max(T::zero());
            let mut acc = s.w[0] * up(s.v[0]).sqrt();
            for i in 0..s.v.len() - 1 {
                let (a, b) = (s.v[i], s.v[i + 1]);
                let dw = s.w[i + 1] - s.w[i];
                if a >= e {
                    break;
                }
                if a == b {
                    acc += dw * up(a).sqrt();
                } else {
                    acc += dw / (b - a) * two_thirds * (up(a).powf(T::lit(1.5)) - up(b).powf(T::lit(1.5)));
                }
            }
            let (vn, _) = s.last();
            Ok(T::lit(2.0) * acc + log_tail_action(vn, e))
        }
    }
}

/// A counting-type function W(E) to be Abel inverted.
#[derive(Debug, Clone, PartialEq)]
pub enum CountingFunction<T> {
    /// 2√E log(√E/(πe)) + c·log(1 + E) for E > 0, zero otherwise. The
    /// logarithmic correction is written with 1 + E so W stays continuous at 0.
    Leading { log_correction: T },
    Sampled(SampledCounting<T>),
}

/// Monotone cubic (Fritsch–Carlson) interpolant of (E_i, W_i). W is taken to
/// vanish below E_0, so a nonzero W_0 is a jump there.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCounting<T> {
    e: Vec<T>,
    w: Vec<T>,
    d: Vec<T>,
}

impl<T: Real> SampledCounting<T> {
    pub fn new(e: Vec<T>, w: Vec<T>) -> Result<Self> {
        if e.len() != w.len() || e.len() < 3 {
            return Err(Error::Validation(
                "counting table needs at least three (E, W) pairs of equal length".into(),
            ));
        }
        if e.iter().chain(&w).any(|x| !x.is_finite()) {
            return Err(Error::Validation("counting table has non-finite entries".into()));
        }
        for i in 1..e.len() {
            if !(e[i] > e[i - 1]) {
                return Err(Error::Validation(format!("energies not increasing at index {i}")));
            }
            if w[i] < w[i - 1] {
                return Err(Error::Validation(format!("counting function decreases at index {i}")));
            }
        }
        let n = e.len();
        let delta: Vec<T> = (0..n - 1).map(|i| (w[i + 1] - w[i]) / (e[i + 1] - e[i])).collect();
        let mut d = vec![T::zero(); n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] > T::zero() {
                let h0 = e[i] - e[i - 1];
                let h1 = e[i + 1] - e[i];
                let w1 = T::lit(2.0) * h1 + h0;
                let w2 = h1 + T::lit(2.0) * h0;
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        let end = |h0: T, h1: T, d0: T, d1: T| -> T {
            let s = ((T::lit(2.0) * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if s * d0 <= T::zero() {
                T::zero()
            } else if d0 * d1 <= T::zero() && s.abs() > (T::lit(3.0) * d0).abs() {
                T::lit(3.0) * d0
            } else {
                s
            }
        };
        d[0] = end(e[1] - e[0], e[2] - e[1], delta[0], delta[1]);
        d[n - 1] = end(e[n - 1] - e[n - 2], e[n - 2] - e[n - 3], delta[n - 2], delta[n - 3]);
        Ok(Self { e, w, d })
    }

    /// Samples the Weyl action of `width` on `energies`.
    pub fn from_width(width: &WidthFunction<T>, energies: Vec<T>, cfg: &QuadratureConfig<T>) -> Result<Self> {
        let w = energies
            .iter()
            .map(|e| weyl_action(width, *e, cfg))
            .collect::<Result<Vec<_>>>()?;
        Self::new(energies, w)
    }

    fn segment(&self, x: T) -> usize {
        (self.e.partition_point(|v| *v <= x).max(1) - 1).min(self.e.len() - 2)
    }

    pub fn value(&self, x: T) -> T {
        if x < self.e[0] {
            return T::zero();
        }
        let i = self.segment(x);
        let h = self.e[i + 1] - self.e[i];
        let t = (x - self.e[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        self.w[i] * (two * t3 - three * t2 + T::one())
            + self.d[i] * h * (t3 - two * t2 + t)
            + self.w[i + 1] * (three * t2 - two * t3)
            + self.d[i + 1] * h * (t3 - t2)
    }

    pub fn derivative(&self, x: T) -> T {
        if x < self.e[0] {
            return T::zero();
        }
        let i = self.segment(x);
        let h = self.e[i + 1] - self.e[i];
        let t = (x - self.e[i]) / h;
        let six = T::lit(6.0);
        let t2 = t * t;
        (self.w[i + 1] - self.w[i]) / h * six * (t - t2)
            + self.d[i] * (T::lit(3.0) * t2 - T::lit(4.0) * t + T::one())
            + self.d[i + 1] * (T::lit(3.0) * t2 - T::lit(2.0) * t)
    }
}

impl<T: Real> CountingFunction<T> {
    pub fn value(&self, e: T) -> T {
        match self {
            Self::Leading { log_correction } => {
                if e <= T::zero() {
                    return T::zero();
                }
                let r = e.sqrt();
                T::lit(2.0) * r * (r / T::PI()).ln() - T::lit(2.0) * r + *log_correction * e.ln_1p()
            }
            Self::Sampled(s) => s.value(e),
        }
    }
}

/// Abel inversion w(v) = (1/π)∫ dW(E)/√(v − E), with E = e₀ + (v − e₀)sin²θ
/// taking the inverse-square-root endpoint out of the integrand.
pub fn abel_invert<T: Real>(counting: &CountingFunction<T>, v: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !v.is_finite() {
        return Err(Error::Domain("non-finite height".into()));
    }
    let two_over_pi = T::lit(2.0) / T::PI();
    match counting {
        CountingFunction::Leading { log_correction } => {
            if v <= T::zero() {
                return Ok(T::zero());
            }
            let c = *log_correction;
            let rv = v.sqrt();
            // W'(E)·2√E = 2 log(√E/π) + 2c√E/(1 + E).
            let q = tanh_sinh(
                |th: T| {
                    let s = th.sin();
                    (rv * s / T::PI()).ln() + c * rv * s / (T::one() + v * s * s)
                },
                T::zero(),
                T::FRAC_PI_2(),
                tol(cfg),
                MAX_LEVEL,
            )?;
            Ok(two_over_pi * q.value)
        }
        CountingFunction::Sampled(s) => {
            let e0 = s.e[0];
            if v <= e0 {
                return Ok(T::zero());
            }
            let last = s.e[s.e.len() - 1];
            if v > last {
                return Err(Error::Domain(format!(
                    "height {} beyond the counting table (last energy {})",
                    v.to_f64_lossy(),
                    last.to_f64_lossy()
                )));
            }
            let below = s.e.partition_point(|x| *x <= v);
            if below < 3 {
                return Err(Error::Resolution(format!(
                    "only {below} counting samples at or below v = {}",
                    v.to_f64_lossy()
                )));
            }
            let span = v - e0;
            let mut pts: Vec<T> = s.e[..below]
                .iter()
                .map(|x| ((*x - e0) / span).sqrt().min(T::one()).asin())
                .collect();
            if *pts.last().unwrap() < T::FRAC_PI_2() {
                pts.push(T::FRAC_PI_2());
            }
            let q = gauss_kronrod_breakpoints(
                |th: T| {
                    let sn = th.sin();
                    s.derivative(e0 + span * sn * sn) * sn
                },
                &pts,
                tol(cfg),
                cfg.max_panels.max(4 * pts.len()),
            )?;
            let jump = s.w[0] / (T::PI() * span.sqrt());
            Ok(two_over_pi * span.sqrt() * q.value + jump)
        }
    }
}

/// T(E) for the exponential family in closed form. With p = √(γ − E) and
/// q = √(v(0) − E) the integral ½∫₁^∞ du/(u√(4π²u² − βu + γ − E)) equals
/// atanh(p/(q + 2π))/p, continued to atan(|p|/(q + 2π))/|p| for E > γ.
fn time_closed_form<T: Real>(beta: T, gamma: T, e: T) -> T {
    let v0 = four_pi_sq::<T>() - beta + gamma;
    let q = (v0 - e).sqrt();
    let a = gamma - e;
    let den = q + T::two_pi();
    if a > T::zero() {
        let p = a.sqrt();
        (p / den).atanh() / p
    } else if a < T::zero() {
        let p = (-a).sqrt();
        (p / den).atan() / p
    } else {
        den.recip()
    }
}

/// Imaginary time T(E) = ½∫ dw(v)/√(v − E) for E below the bottom of the
/// potential. Uses the closed form for the exponential family.
pub fn imaginary_time<T: Real>(width: &WidthFunction<T>, e: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    check_below(width, e)?;
    match width {
        WidthFunction::Exponential { beta, gamma } => Ok(time_closed_form(*beta, *gamma, e)),
        WidthFunction::Sampled(_) => imaginary_time_quadrature(width, e, cfg),
    }
}

fn check_below<T: Real>(width: &WidthFunction<T>, e: T) -> Result<()> {
    if !e.is_finite() || e >= width.v_min() {
        return Err(Error::Domain(format!(
            "imaginary time needs E < v(0) = {}, got {}",
            width.v_min().to_f64_lossy(),
            e.to_f64_lossy()
        )));
    }
    Ok(())
}

/// T(E) by direct quadrature over the width, independent of the closed form.
pub fn imaginary_time_quadrature<T: Real>(
    width: &WidthFunction<T>,
    e: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    check_below(width, e)?;
    let half = T::lit(0.5);
    match width {
        WidthFunction::Exponential { beta, gamma } => {
            // 1/√(v(w) − E) with e^{2w} factored out so large w cannot overflow.
            let q = exp_sinh(
                |w: T| {
                    let d = (-w).exp();
                    d / (four_pi_sq::<T>() - *beta * d + (*gamma - e) * d * d).sqrt()
                },
                T::zero(),
                tol(cfg),
                MAX_LEVEL,
            )?;
            Ok(half * q.value)
        }
        WidthFunction::Sampled(s) => {
            let root = |v: T| (v - e).sqrt();
            let mut acc = s.w[0] / root(s.v[0]);
            for i in 0..s.v.len() - 1 {
                let dw = s.w[i + 1] - s.w[i];
                // Exact for linear w; the sum form avoids cancellation.
                acc += T::lit(2.0) * dw / (root(s.v[i]) + root(s.v[i + 1]));
            }
            let (vn, _) = s.last();
            // ½∫ dw/√(v_n e^{2(w−w_n)} − E) over the logarithmic tail.
            let r = e / vn;
            let g = if r < T::zero() {
                let x = (-r).sqrt();
                x.asinh() / x
            } else if r > T::zero() {
                let x = r.sqrt();
                x.asin() / x
            } else {
                T::one()
            };
            Ok(half * (acc + g / vn.sqrt()))
        }
    }
}

/// Target large-(−E) form of T: (1/(2√−E)) log(√−E/π) − κ/(2E).
pub fn imaginary_time_asymptotic<T: Real>(e: T, kappa: T) -> Result<T> {
    if !(e < T::zero()) {
        return Err(Error::Domain("asymptotic T needs E < 0".into()));
    }
    let a = -e;
    let r = a.sqrt();
    Ok((r / T::PI()).ln() / (T::lit(2.0) * r) + kappa / (T::lit(2.0) * a))
}

/// κ read off T(E): √(−E)·(2√(−E)T − log(√(−E)/π)), which tends to β/(4π).
pub fn effective_kappa<T: Real>(width: &WidthFunction<T>, e: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let t = imaginary_time(width, e, cfg)?;
    let r = (-e).sqrt();
    Ok(r * (T::lit(2.0) * r * t - (r / T::PI()).ln()))
}

/// β = 4πκ, after checking monotonicity and that the residual of T against
/// its target asymptotics falls faster than 1/|E| between E = −10⁴ and −10⁶.
/// At the right β the scaled residual |E|·r drops tenfold over that range;
/// at any other β it tends to the constant β/(8π) − κ/2.
pub fn fit_beta<T: Real>(kappa: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(kappa >= T::zero()) {
        return Err(Error::Validation("kappa must be non-negative".into()));
    }
    let beta = T::lit(4.0) * T::PI() * kappa;
    let width = WidthFunction::exponential(beta, T::zero())?;
    let scaled = |e: T| -> Result<T> {
        Ok((imaginary_time(&width, e, cfg)? - imaginary_time_asymptotic(e, kappa)?) * e.abs())
    };
    let near = scaled(T::lit(-1.0e4))?.abs();
    let far = scaled(T::lit(-1.0e6))?.abs();
    if !(far <= near * T::lit(0.25)) {
        return Err(Error::Validation(format!(
            "T(E) residual does not decay faster than 1/|E| at beta = {}",
            beta.to_f64_lossy()
        )));
    }
    Ok(beta)
}

/// Leading zero count (Ω/2π) log(Ω/2πe), plus 7/8 for the smoothed count.
pub fn riemann_count<T: Real>(omega: T, smoothed: bool) -> Result<T> {
    if !(omega > T::zero()) {
        return Err(Error::Domain("riemann_count needs Omega > 0".into()));
    }
    let two_pi = T::two_pi();
    let lead = omega / two_pi * (omega / (two_pi * T::E())).ln();
    Ok(if smoothed { lead + T::lit(0.875) } else { lead })
}

/// −(1/(2√−E)) log(√−E/π) + 7/(8E).
pub fn xi_logderiv_asymptotic<T: Real>(e: T) -> Result<T> {
    if !(e < T::zero()) {
        return Err(Error::Domain("asymptotic log-derivative needs E < 0".into()));
    }
    let r = (-e).sqrt();
    Ok(-(r / T::PI()).ln() / (T::lit(2.0) * r) + T::lit(0.875) / e)
}

/// The ξ form plus the γ term (γ/(4(−E)^{3/2})) log(√−E/(πe)).
pub fn whittaker_logderiv_asymptotic<T: Real>(e: T, gamma: T) -> Result<T> {
    let base = xi_logderiv_asymptotic(e)?;
    let a = -e;
    let r = a.sqrt();
    Ok(base + gamma / (T::lit(4.0) * a * r) * (r / (T::PI() * T::E())).ln())
}

/// log Ξ(E) for E < 0, where Ξ(E) = ξ(2√E) = ξ(i√(−4E)) is real and positive.
pub fn log_big_xi<T: Real>(e: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    if !(e < T::zero()) {
        return Err(Error::Domain("log Ξ here needs E < 0".into()));
    }
    Ok(xi_zeta_ln(cx(T::zero(), T::lit(2.0) * (-e).sqrt()), cfg)?.re)
}

/// ∂_E log Ξ(E) for E < 0 by a five-point centred difference with step
/// h = |E|/1000; truncation is then below 1e-14 relative for |E| ≥ 10.
pub fn xi_logderiv<T: Real>(e: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let h = e.abs() * T::lit(1e-3);
    five_point(|x| log_big_xi(x, cfg), e, h)
}

pub(crate) fn five_point<T: Real, F: FnMut(T) -> Result<T>>(mut f: F, x: T, h: T) -> Result<T> {
    let f1 = f(x + h)? - f(x - h)?;
    let f2 = f(x + h * T::lit(2.0))? - f(x - h * T::lit(2.0))?;
    Ok((T::lit(8.0) * f1 - f2) / (T::lit(12.0) * h))
}
