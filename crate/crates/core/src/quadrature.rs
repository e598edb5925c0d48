//! Numerical integration: adaptive Gauss–Kronrod for smooth or oscillatory
//! integrands on finite intervals, and double-exponential rules (tanh-sinh,
//! exp-sinh) for endpoint singularities and half-infinite ranges.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::real::{Cx, Real};

/// Value type an integrand may return.
pub trait Integrand<T: Real>:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> + Zero
{
    fn magnitude(self) -> T;
    fn finite(self) -> bool;
}

impl<T: Real> Integrand<T> for T {
    #[inline]
    fn magnitude(self) -> T {
        self.abs()
    }
    #[inline]
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> Integrand<T> for Cx<T> {
    #[inline]
    fn magnitude(self) -> T {
        self.norm()
    }
    #[inline]
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Absolute/relative error target. Convergence means
/// `error <= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Self {
        Self { abs, rel }
    }

    #[inline]
    fn target(&self, value: T) -> T {
        self.abs.max(self.rel * value)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature<V, T> {
    pub value: V,
    pub error: T,
    pub evals: usize,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK21: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WG10: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];
const WGK21: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

struct Panel<V, T> {
    a: T,
    b: T,
    value: V,
    error: T,
    at_floor: bool,
}

fn kronrod21<T, V, F>(f: &mut F, a: T, b: T) -> Result<Panel<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    let center = (a + b) * T::lit(0.5);
    let half = (b - a) * T::lit(0.5);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK21[10]);
    let mut gauss = V::zero();
    let mut abs_sum = fc.magnitude() * T::lit(WGK21[10]);
    for j in 0..10 {
        let dx = half * T::lit(XGK21[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        if !f1.finite() || !f2.finite() {
            return Err(Error::NonFinite(format!(
                "integrand near x = {}",
                (center - dx).to_f64_lossy()
            )));
        }
        let pair = f1 + f2;
        kronrod = kronrod + pair * T::lit(WGK21[j]);
        abs_sum += (f1.magnitude() + f2.magnitude()) * T::lit(WGK21[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG10[j / 2]);
        }
    }
    if !fc.finite() {
        return Err(Error::NonFinite(format!(
            "integrand at x = {}",
            center.to_f64_lossy()
        )));
    }
    let value = kronrod * half;
    let raw = (kronrod - gauss).magnitude() * half.abs();
    // Roundoff floor keeps the estimate honest when |f| >> |integral|.
    let floor = T::lit(50.0) * T::epsilon() * abs_sum * half.abs();
    Ok(Panel {
        a,
        b,
        value,
        error: raw.max(floor),
        at_floor: raw <= floor,
    })
}

/// Globally adaptive 21-point Gauss–Kronrod integration over the union of
/// consecutive intervals given by `breakpoints` (at least two, increasing).
pub fn gauss_kronrod_breakpoints<T, V, F>(
    mut f: F,
    breakpoints: &[T],
    tol: Tolerance<T>,
    max_panels: usize,
) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    if breakpoints.len() < 2 {
        return Err(Error::Domain("need at least two breakpoints".into()));
    }
    let mut panels = Vec::with_capacity(max_panels.max(breakpoints.len()));
    for w in breakpoints.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        panels.push(kronrod21(&mut f, w[0], w[1])?);
    }
    let mut evals = 21 * panels.len();
    loop {
        let (value, error) = panels
            .iter()
            .fold((V::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error));
        // A sum at the rounding floor everywhere cannot be refined further.
        if error <= tol.target(value.magnitude()) || panels.iter().all(|p| p.at_floor) {
            return Ok(Quadrature { value, error, evals });
        }
        if panels.len() >= max_panels {
            return Err(Error::Convergence {
                what: "adaptive Gauss-Kronrod panel limit reached".into(),
                estimate: error.to_f64_lossy(),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, p)| {
                if p.error > be {
                    (i, p.error)
                } else {
                    (bi, be)
                }
            });
        let p = panels.swap_remove(worst);
        let mid = (p.a + p.b) * T::lit(0.5);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            return Err(Error::Convergence {
                what: "panel width below machine resolution".into(),
                estimate: error.to_f64_lossy(),
            });
        }
        panels.push(kronrod21(&mut f, p.a, mid)?);
        panels.push(kronrod21(&mut f, mid, p.b)?);
        evals += 42;
    }
}

/// Adaptive Gauss–Kronrod over `[a, b]` split into `initial` equal panels.
pub fn gauss_kronrod<T, V, F>(
    f: F,
    a: T,
    b: T,
    initial: usize,
    tol: Tolerance<T>,
    max_panels: usize,
) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    let n = initial.max(1);
    let pts: Vec<T> = (0..=n)
        .map(|i| a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(n))
        .collect();
    gauss_kronrod_breakpoints(f, &pts, tol, max_panels.max(n))
}

const MIN_LEVELS: usize = 3;

/// Tanh-sinh rule on `[a, b]`. The integrand is never evaluated at `a` or
/// `b`; nodes that round onto an endpoint contribute nothing. For endpoint
/// singularities whose strength depends on the distance to the endpoint use
/// [`tanh_sinh_complement`].
pub fn tanh_sinh<T, V, F>(
    mut f: F,
    a: T,
    b: T,
    tol: Tolerance<T>,
    max_level: usize,
) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    tanh_sinh_complement(
        |x: T, _: T, _: T| if x == a || x == b { V::zero() } else { f(x) },
        a,
        b,
        tol,
        max_level,
    )
}

/// Tanh-sinh rule whose integrand receives `(x, x − a, b − x)` with the two
/// endpoint distances computed exactly (for `a < b`), so singular factors
/// like `1/√(b − x)` keep full relative accuracy next to the endpoint.
pub fn tanh_sinh_complement<T, V, F>(
    mut f: F,
    a: T,
    b: T,
    tol: Tolerance<T>,
    max_level: usize,
) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T, T, T) -> V,
{
    if a == b {
        return Ok(Quadrature {
            value: V::zero(),
            error: T::zero(),
            evals: 0,
        });
    }
    let half = (b - a) * T::lit(0.5);
    let len = (b - a).abs();
    let mid = (a + b) * T::lit(0.5);
    let pi2 = T::FRAC_PI_2();
    let eps = T::epsilon();
    let mut evals = 0usize;

    // Node contributions at t = t0 + k*step, k >= 0; t = 0 is added once.
    let node_sum = |f: &mut F, t0: T, step: T, evals: &mut usize| -> Result<V> {
        let mut acc = V::zero();
        let mut t = t0;
        loop {
            let u = pi2 * t.sinh();
            let q = (-(u + u)).exp();
            let dist = len * q / (T::one() + q);
            if dist <= T::zero() || !q.is_finite() {
                break;
            }
            let w = pi2 * t.cosh() * T::lit(4.0) * q / ((T::one() + q) * (T::one() + q));
            let (f_lo, f_hi) = if half > T::zero() {
                (f(a + dist, dist, len - dist), f(b - dist, len - dist, dist))
            } else {
                (f(a - dist, dist, len - dist), f(b + dist, len - dist, dist))
            };
            *evals += 2;
            if !f_lo.finite() || !f_hi.finite() {
                return Err(Error::NonFinite(format!(
                    "tanh-sinh integrand near t = {}",
                    t.to_f64_lossy()
                )));
            }
            let term = (f_lo + f_hi) * (w * half);
            acc = acc + term;
            if term.magnitude() <= eps * eps * acc.magnitude() && t > T::one() {
                break;
            }
            t += step;
        }
        Ok(acc)
    };

    let mut step = T::one();
    let f_mid = f(mid, half.abs(), half.abs());
    evals += 1;
    let mut total = f_mid * (pi2 * half) + node_sum(&mut f, step, step, &mut evals)?;
    let mut estimate = total * step;
    let mut prev_err = T::infinity();
    for level in 1..=max_level {
        let new = node_sum(&mut f, step * T::lit(0.5), step, &mut evals)?;
        total = total + new;
        step = step * T::lit(0.5);
        let next = total * step;
        let err = (next - estimate).magnitude();
        estimate = next;
        if level >= MIN_LEVELS && err <= tol.target(estimate.magnitude()) {
            // Quadratic convergence: the next difference is roughly err^2/prev.
            let refined = if prev_err.is_finite() && prev_err > T::zero() {
                (err * err / prev_err).max(eps * estimate.magnitude())
            } else {
                err
            };
            return Ok(Quadrature {
                value: estimate,
                error: refined,
                evals,
            });
        }
        prev_err = err;
    }
    Err(Error::Convergence {
        what: "tanh-sinh level limit reached".into(),
        estimate: prev_err.to_f64_lossy(),
    })
}

/// Exp-sinh rule on `[a, ∞)` for integrands decaying at infinity.
pub fn exp_sinh<T, V, F>(
    mut f: F,
    a: T,
    tol: Tolerance<T>,
    max_level: usize,
) -> Result<Quadrature<V, T>>
where
    T: Real,
    V: Integrand<T>,
    F: FnMut(T) -> V,
{
    let pi2 = T::FRAC_PI_2();
    let eps = T::epsilon();
    let mut evals = 0usize;

    let side = |f: &mut F, t0: T, step: T, dir: T, evals: &mut usize| -> Result<V> {
        let mut acc = V::zero();
        let mut t = t0;
        let mut small = 0;
        loop {
            let tt = dir * t;
            let e = (pi2 * tt.sinh()).exp();
            if !e.is_finite() || e <= T::zero() {
                break;
            }
            let x = a + e;
            if x == a && dir < T::zero() {
                break;
            }
            let w = pi2 * tt.cosh() * e;
            let fx = f(x);
            *evals += 1;
            if !fx.finite() {
                return Err(Error::NonFinite(format!(
                    "exp-sinh integrand at x = {}",
                    x.to_f64_lossy()
                )));
            }
            let term = fx * w;
            acc = acc + term;
            if term.magnitude() <= eps * eps * acc.magnitude() {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
            if t > T::lit(8.0) {
                break;
            }
            t += step;
        }
        Ok(acc)
    };

    let mut step = T::one();
    let f0 = f(a + T::one());
    evals += 1;
    let mut total = f0 * pi2
        + side(&mut f, step, step, T::one(), &mut evals)?
        + side(&mut f, step, step, -T::one(), &mut evals)?;
    let mut estimate = total * step;
    let mut prev_err = T::infinity();
    for level in 1..=max_level {
        let h2 = step * T::lit(0.5);
        let new = side(&mut f, h2, step, T::one(), &mut evals)?
            + side(&mut f, h2, step, -T::one(), &mut evals)?;
        total = total + new;
        step = h2;
        let next = total * step;
        let err = (next - estimate).magnitude();
        estimate = next;
        if level >= MIN_LEVELS && err <= tol.target(estimate.magnitude()) {
            let refined = if prev_err.is_finite() && prev_err > T::zero() {
                (err * err / prev_err).max(eps * estimate.magnitude())
            } else {
                err
            };
            return Ok(Quadrature {
                value: estimate,
                error: refined,
                evals,
            });
        }
        prev_err = err;
    }
    Err(Error::Convergence {
        what: "exp-sinh level limit reached".into(),
        estimate: prev_err.to_f64_lossy(),
    })
}
