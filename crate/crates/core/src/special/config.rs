use crate::error::{Error, Result};
use crate::quadrature::Tolerance;
use crate::real::{cx, Cx, Real};

/// Euler–Maclaurin parameters for ζ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig<T> {
    /// Largest |ω| accepted on the critical line.
    pub max_abs_omega: T,
    /// Bernoulli correction terms (at most 30).
    pub bernoulli_terms: usize,
    /// Lower bound on the number of directly summed terms.
    pub min_direct_terms: usize,
}

/// Seeding and integration parameters for the Whittaker ODE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerConfig<T> {
    /// Seed point is `max(seed_min, seed_scale * |μ|², 2 z)`.
    pub seed_min: T,
    pub seed_scale: T,
    /// Cap on asymptotic series terms at the seed point.
    pub series_terms: usize,
    pub ode_rtol: T,
}

/// Tolerances and truncations shared by the special functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    /// Upper limit of t-integrals over Φ.
    pub truncation_t: T,
    /// Maximum n in the Φ and ψ series.
    pub series_cutoff: usize,
    pub abs_tol: T,
    pub rel_tol: T,
    /// Panel budget for adaptive Gauss–Kronrod.
    pub max_panels: usize,
    pub zeta: ZetaConfig<T>,
    pub whittaker: WhittakerConfig<T>,
}

impl<T: Real> Default for ZetaConfig<T> {
    fn default() -> Self {
        Self {
            max_abs_omega: T::lit(500.0),
            bernoulli_terms: 25,
            min_direct_terms: 20,
        }
    }
}

impl<T: Real> Default for WhittakerConfig<T> {
    fn default() -> Self {
        Self {
            seed_min: T::lit(40.0),
            seed_scale: T::lit(4.0),
            series_terms: 200,
            ode_rtol: (T::epsilon() * T::lit(2.0e3)).max(T::lit(1e-13)),
        }
    }
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            truncation_t: T::lit(3.0),
            series_cutoff: 1000,
            abs_tol: eps * T::lit(500.0),
            rel_tol: eps * T::lit(5000.0),
            max_panels: 2000,
            zeta: ZetaConfig::default(),
            whittaker: WhittakerConfig::default(),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: T| x > T::zero() && x.is_finite();
        if !pos(self.truncation_t) {
            return Err(Error::Validation("truncation_t must be positive".into()));
        }
        if self.series_cutoff < 1 {
            return Err(Error::Validation("series_cutoff must be at least 1".into()));
        }
        if !pos(self.abs_tol) || !pos(self.rel_tol) {
            return Err(Error::Validation("tolerances must be positive".into()));
        }
        if self.max_panels < 1 {
            return Err(Error::Validation("max_panels must be at least 1".into()));
        }
        if self.zeta.bernoulli_terms > super::BERNOULLI_2K.len() {
            return Err(Error::Validation(format!(
                "at most {} Bernoulli terms available",
                super::BERNOULLI_2K.len()
            )));
        }
        if !pos(self.zeta.max_abs_omega) {
            return Err(Error::Validation("zeta.max_abs_omega must be positive".into()));
        }
        let w = &self.whittaker;
        if !pos(w.seed_min) || !pos(w.seed_scale) || !pos(w.ode_rtol) || w.series_terms < 1 {
            return Err(Error::Validation("whittaker parameters must be positive".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance<T> {
        Tolerance::new(self.abs_tol, self.rel_tol)
    }
}

/// A value represented as `mantissa * 10^exp10`, for magnitudes outside the
/// floating-point range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<T> {
    pub mantissa: Cx<T>,
    pub exp10: i32,
}

impl<T: Real> Scaled<T> {
    /// From the complex logarithm of the value; `ln.re = -∞` encodes zero.
    pub fn from_ln(ln: Cx<T>) -> Self {
        if ln.re == T::neg_infinity() {
            return Self {
                mantissa: Cx::new(T::zero(), T::zero()),
                exp10: 0,
            };
        }
        let e = (ln.re / T::LN_10()).floor();
        let rest = ln.re - e * T::LN_10();
        Self {
            mantissa: Cx::from_polar(rest.exp(), ln.im),
            exp10: e.to_i32().unwrap_or(i32::MAX),
        }
    }

    pub fn from_value(v: Cx<T>) -> Self {
        if v.re == T::zero() && v.im == T::zero() {
            return Self::from_ln(cx(T::neg_infinity(), T::zero()));
        }
        Self::from_ln(v.ln())
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(&self) -> T {
        self.mantissa.norm().ln() + T::from_i32(self.exp10).unwrap() * T::LN_10()
    }

    /// Back to an ordinary value; may overflow to infinity or underflow to 0.
    pub fn value(&self) -> Cx<T> {
        self.mantissa * T::lit(10.0).powi(self.exp10)
    }
}
