use super::{QuadratureConfig, Scaled};
use crate::error::{Error, Result};
use crate::ode::{Dop853, OdeOptions, OdeState};
use crate::real::{cx, Cx, Real};

/// Second Whittaker index μ. Only real and purely imaginary values are
/// admitted, which keeps μ² real and Whittaker's equation real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WhittakerIndex<T> {
    Real(T),
    /// μ = i·m
    Imaginary(T),
}

impl<T: Real> WhittakerIndex<T> {
    pub fn from_complex(mu: Cx<T>) -> Result<Self> {
        if !mu.re.is_finite() || !mu.im.is_finite() {
            return Err(Error::Domain("non-finite Whittaker index".into()));
        }
        if mu.im == T::zero() {
            Ok(Self::Real(mu.re))
        } else if mu.re == T::zero() {
            Ok(Self::Imaginary(mu.im))
        } else {
            Err(Error::Domain(
                "Whittaker index must be real or purely imaginary".into(),
            ))
        }
    }

    pub fn mu_squared(self) -> T {
        match self {
            Self::Real(m) => m * m,
            Self::Imaginary(m) => -m * m,
        }
    }
}

/// Log of W and of its derivative ratio at the seed point from the
/// large-z series W ~ e^{−z/2} z^κ Σ_k c_k z^{−k},
/// c_k = c_{k−1} (μ² − (½ − κ + k − 1)²)/k.
fn seed<T: Real>(kappa: T, mu_sq: T, z0: T, max_terms: usize) -> Result<(T, T, T)> {
    let half = T::lit(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    let mut dsum = T::zero();
    let mut converged = false;
    for k in 1..=max_terms {
        let kt = T::from_usize_lossy(k);
        let b = half - kappa + kt - T::one();
        let ratio = (mu_sq - b * b) / (kt * z0);
        let next = term * ratio;
        if next.abs() > term.abs() && k > 1 {
            // Smallest term of the divergent series reached.
            if term.abs() <= T::epsilon() * T::lit(100.0) * sum.abs() {
                converged = true;
                break;
            }
            return Err(Error::Convergence {
                what: format!(
                    "asymptotic seed series diverges at z0 = {}; increase the seed point",
                    z0.to_f64_lossy()
                ),
                estimate: (term.abs() / sum.abs()).to_f64_lossy(),
            });
        }
        term = next;
        sum += term;
        dsum -= term * kt / z0;
        if term.abs() <= T::epsilon() * T::lit(0.1) * sum.abs() {
            converged = true;
            break;
        }
    }
    if !converged || sum <= T::zero() {
        return Err(Error::Convergence {
            what: "asymptotic seed series did not settle".into(),
            estimate: (term.abs() / sum.abs()).to_f64_lossy(),
        });
    }
    let ln_w = -z0 * half + kappa * z0.ln() + sum.ln();
    let dlog = -half + kappa / z0 + dsum / sum;
    Ok((ln_w, T::one(), dlog))
}

/// W at every point of `zs` in one inward sweep. Output order matches
/// `zs`; every entry is returned as (mantissa, natural-log scale).
fn sweep<T: Real>(
    kappa: T,
    index: WhittakerIndex<T>,
    zs: &[T],
    cfg: &QuadratureConfig<T>,
) -> Result<Vec<(T, T)>> {
    if !kappa.is_finite() {
        return Err(Error::Domain("non-finite kappa".into()));
    }
    if zs.iter().any(|z| !(*z > T::zero()) || !z.is_finite()) {
        return Err(Error::Domain("Whittaker W needs z > 0".into()));
    }
    if zs.is_empty() {
        return Ok(Vec::new());
    }
    let mu_sq = index.mu_squared();
    let w = &cfg.whittaker;
    let z_max = zs.iter().fold(T::zero(), |m, z| m.max(*z));
    let z0 = w
        .seed_min
        .max(w.seed_scale * mu_sq.abs())
        .max(z_max * T::lit(2.0));
    let (ln_w0, w0, dlog0) = seed(kappa, mu_sq, z0, w.series_terms)?;
    let quarter = T::lit(0.25);
    let mut rhs = |z: T, y: &[T; 2]| -> [T; 2] {
        let q = quarter - kappa / z + (mu_sq - quarter) / (z * z);
        [y[1], q * y[0]]
    };
    let mut state = OdeState {
        x: z0,
        y: [w0, dlog0],
        log_scale: ln_w0,
    };
    let mut ode = Dop853::new(OdeOptions::new(w.ode_rtol, w.ode_rtol));
    let mut order: Vec<usize> = (0..zs.len()).collect();
    order.sort_by(|a, b| zs[*b].partial_cmp(&zs[*a]).unwrap());
    let mut out = vec![(T::zero(), T::zero()); zs.len()];
    for i in order {
        ode.advance(&mut rhs, &mut state, zs[i])?;
        out[i] = (state.y[0], state.log_scale);
    }
    Ok(out)
}

fn to_scaled<T: Real>((m, l): (T, T)) -> Scaled<T> {
    let mut s = Scaled::from_value(cx(m, T::zero()));
    let e = (l / T::LN_10()).floor();
    s.mantissa = s.mantissa * (l - e * T::LN_10()).exp();
    s.exp10 += e.to_i32().unwrap_or(i32::MAX);
    s
}

fn to_real<T: Real>((m, l): (T, T)) -> Result<T> {
    let v = m * l.exp();
    if !v.is_finite() {
        return Err(Error::Range {
            what: "Whittaker W overflows; use whittaker_w_scaled".into(),
            limit: T::max_value().ln().to_f64_lossy(),
        });
    }
    Ok(v)
}

/// W_{κ,μ}(z) by inward integration of W'' = (¼ − κ/z + (μ² − ¼)/z²) W from
/// an asymptotic seed. Even in μ; real for real or imaginary μ.
pub fn whittaker_w<T: Real>(kappa: T, mu: Cx<T>, z: T, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    let v = whittaker_w_real(kappa, WhittakerIndex::from_complex(mu)?, z, cfg)?;
    Ok(cx(v, T::zero()))
}

/// Real-valued form of [`whittaker_w`].
pub fn whittaker_w_real<T: Real>(
    kappa: T,
    index: WhittakerIndex<T>,
    z: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    to_real(sweep(kappa, index, &[z], cfg)?[0])
}

/// W_{κ,μ}(z) as mantissa × 10^exponent.
pub fn whittaker_w_scaled<T: Real>(
    kappa: T,
    mu: Cx<T>,
    z: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Scaled<T>> {
    Ok(to_scaled(
        sweep(kappa, WhittakerIndex::from_complex(mu)?, &[z], cfg)?[0],
    ))
}

/// W_{κ,μ} at several z from a single integration.
pub fn whittaker_w_grid<T: Real>(
    kappa: T,
    index: WhittakerIndex<T>,
    zs: &[T],
    cfg: &QuadratureConfig<T>,
) -> Result<Vec<Scaled<T>>> {
    Ok(sweep(kappa, index, zs, cfg)?.into_iter().map(to_scaled).collect())
}
