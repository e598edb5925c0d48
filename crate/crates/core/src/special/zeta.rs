use super::{QuadratureConfig, ZetaConfig, BERNOULLI_2K_OVER_FACT};
use crate::error::{Error, Result};
use crate::real::{cx, Cx, Real};

/// (s − 1)ζ(s) by Euler–Maclaurin summation; entire, so s = 1 is regular.
///
/// With N ≥ |s| directly summed terms the Bernoulli remainder after M terms
/// is bounded by roughly ((|s| + 2M)/(2πN))^{2M}, far below rounding for the
/// default M = 25.
pub(crate) fn zeta_times_s_minus_one<T: Real>(s: Cx<T>, cfg: &ZetaConfig<T>) -> Result<Cx<T>> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain("non-finite argument to zeta".into()));
    }
    if s.im.abs() > cfg.max_abs_omega {
        return Err(Error::Range {
            what: format!("|Im s| = {} exceeds zeta maximum", s.im.to_f64_lossy()),
            limit: cfg.max_abs_omega.to_f64_lossy(),
        });
    }
    let one = T::one();
    let n_terms = s
        .norm()
        .ceil()
        .to_usize()
        .unwrap_or(usize::MAX)
        .max(cfg.min_direct_terms)
        .max(2);
    let sm1 = s - one;
    let mut direct = cx(T::zero(), T::zero());
    for n in 1..n_terms {
        direct += (-s * T::from_usize_lossy(n).ln()).exp();
    }
    let big_n = T::from_usize_lossy(n_terms);
    let ln_n = big_n.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let mut tail = n_pow * T::lit(0.5);
    let mut poch = s;
    let mut pw = n_pow / big_n;
    let n2 = big_n * big_n;
    for k in 1..=cfg.bernoulli_terms {
        let term = poch * pw * T::lit(BERNOULLI_2K_OVER_FACT[k - 1]);
        tail += term;
        if term.norm() <= T::epsilon() * T::lit(1e-3) * (direct + tail).norm() {
            break;
        }
        let kk = T::from_usize_lossy(2 * k);
        poch = poch * (s + kk - one) * (s + kk);
        pw = pw / n2;
    }
    Ok(sm1 * (direct + tail) + n_pow * big_n)
}

/// ζ(s) for s ≠ 1. Accurate for Re s ≥ 0; |Im s| is bounded by the config.
pub fn zeta<T: Real>(s: Cx<T>, cfg: &ZetaConfig<T>) -> Result<Cx<T>> {
    let sm1 = s - T::one();
    if sm1.re == T::zero() && sm1.im == T::zero() {
        return Err(Error::Domain("zeta pole at s = 1".into()));
    }
    Ok(zeta_times_s_minus_one(s, cfg)? / sm1)
}

/// ζ(½ + iω).
pub fn zeta_critical<T: Real>(omega: T, cfg: &QuadratureConfig<T>) -> Result<Cx<T>> {
    if omega.abs() > cfg.zeta.max_abs_omega {
        return Err(Error::Range {
            what: format!("|omega| = {} exceeds zeta maximum", omega.to_f64_lossy()),
            limit: cfg.zeta.max_abs_omega.to_f64_lossy(),
        });
    }
    zeta(cx(T::lit(0.5), omega), &cfg.zeta)
}
