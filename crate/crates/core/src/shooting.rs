//! Shooting characteristic functions of 1D Schrödinger operators
//! H = −∂² + V on a half-line with a hard wall, or on the whole line.
//!
//! The solution decaying at infinity is normalised so that ψ_E/ψ_ref → 1
//! there, where ψ_ref is the decaying solution at the reference energy. It
//! is seeded from the Liouville–Green form at a point x₀ deep in the
//! forbidden region and integrated inward; the magnitude is carried as a
//! separate logarithm because P(E) spans thousands of orders of magnitude.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ode::{Dop853, OdeOptions, OdeState};
use crate::quadrature::{exp_sinh, gauss_kronrod, tanh_sinh, Integrand, Tolerance};
use crate::real::{cx, Cx, Real};
use crate::roots::bisect;
use crate::semiclassical::{imaginary_time, WidthFunction};
use crate::special::QuadratureConfig;

/// Energy-like scalar: real or complex.
pub trait Energy<T: Real>:
    Integrand<T> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self> + fmt::Debug + Send + Sync
{
    fn from_real(x: T) -> Self;
    fn e_sqrt(self) -> Self;
    fn e_ln(self) -> Self;
    fn e_exp(self) -> Self;
    fn re_part(self) -> T;
    fn im_part(self) -> T;
}

impl<T: Real> Energy<T> for T {
    fn from_real(x: T) -> Self {
        x
    }
    fn e_sqrt(self) -> Self {
        self.sqrt()
    }
    fn e_ln(self) -> Self {
        self.ln()
    }
    fn e_exp(self) -> Self {
        self.exp()
    }
    fn re_part(self) -> T {
        self
    }
    fn im_part(self) -> T {
        T::zero()
    }
}

impl<T: Real> Energy<T> for Cx<T> {
    fn from_real(x: T) -> Self {
        cx(x, T::zero())
    }
    fn e_sqrt(self) -> Self {
        self.sqrt()
    }
    fn e_ln(self) -> Self {
        self.ln()
    }
    fn e_exp(self) -> Self {
        self.exp()
    }
    fn re_part(self) -> T {
        self.re
    }
    fn im_part(self) -> T {
        self.im
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    /// Hard wall at the left end of the domain, V → ∞ to the right.
    One,
    /// V → ∞ in both directions.
    Two,
}

/// Direction in which a solution decays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    fn dir<T: Real>(self) -> T {
        match self {
            Side::Right => T::one(),
            Side::Left => -T::one(),
        }
    }
}

/// User-supplied potential; derivatives are taken by central differences.
#[derive(Clone)]
pub struct CustomPotential<T> {
    pub name: String,
    f: Arc<dyn Fn(T) -> T + Send + Sync>,
}

impl<T> fmt::Debug for CustomPotential<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomPotential({})", self.name)
    }
}

#[derive(Debug, Clone)]
pub enum PotentialKind<T> {
    /// 4π²e^{2x}
    ExpOneSided,
    /// 4π²e^{2x} − 4πκe^x + γ
    Morse { kappa: T, gamma: T },
    /// 4π²e^{4|x|}
    ExpTwoSided,
    /// 8π² cosh 4x
    Cosh,
    /// 4π²2^{−2/3}(2e^{3x} + e^{−6x})
    Tzitzeica,
    Custom(CustomPotential<T>),
}

/// A potential with its sidedness. One-sided potentials have the hard wall
/// at `wall` and must increase away from it; two-sided potentials decrease
/// to a single minimum at `x_min` and increase beyond it.
#[derive(Debug, Clone)]
pub struct PotentialSpec<T> {
    pub kind: PotentialKind<T>,
    pub sidedness: Sidedness,
    /// Wall position (one-sided) or location of the minimum (two-sided).
    pub x_min: T,
    pub reference_energy: T,
}

impl<T: Real> PotentialSpec<T> {
    fn new(kind: PotentialKind<T>, sidedness: Sidedness) -> Self {
        Self {
            kind,
            sidedness,
            x_min: T::zero(),
            reference_energy: T::zero(),
        }
    }

    pub fn exp_one_sided() -> Self {
        Self::new(PotentialKind::ExpOneSided, Sidedness::One)
    }

    /// Morse potential with hard wall at 0. κ < 2π keeps it increasing there.
    pub fn morse(kappa: T, gamma: T) -> Result<Self> {
        if !kappa.is_finite() || !gamma.is_finite() || kappa >= T::two_pi() {
            return Err(Error::Validation(
                "Morse potential needs finite kappa < 2π and finite gamma".into(),
            ));
        }
        Ok(Self::new(PotentialKind::Morse { kappa, gamma }, Sidedness::One))
    }

    pub fn exp_two_sided() -> Self {
        Self::new(PotentialKind::ExpTwoSided, Sidedness::Two)
    }

    pub fn cosh() -> Self {
        Self::new(PotentialKind::Cosh, Sidedness::Two)
    }

    pub fn tzitzeica() -> Self {
        Self::new(PotentialKind::Tzitzeica, Sidedness::Two)
    }

    /// `x_min` is the wall (one-sided) or the minimum (two-sided).
    pub fn custom<F>(name: &str, sidedness: Sidedness, x_min: T, f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        let mut s = Self::new(
            PotentialKind::Custom(CustomPotential {
                name: name.into(),
                f: Arc::new(f),
            }),
            sidedness,
        );
        s.x_min = x_min;
        s
    }

    pub fn with_reference_energy(mut self, e: T) -> Self {
        self.reference_energy = e;
        self
    }

    /// (V, V', V'') at x.
    pub fn eval(&self, x: T) -> (T, T, T) {
        let pi = T::PI();
        let four_pi_sq = T::lit(4.0) * pi * pi;
        match &self.kind {
            PotentialKind::ExpOneSided => {
                let e = (T::lit(2.0) * x).exp();
                (four_pi_sq * e, T::lit(2.0) * four_pi_sq * e, T::lit(4.0) * four_pi_sq * e)
            }
            PotentialKind::Morse { kappa, gamma } => {
                let e1 = x.exp();
                let e2 = e1 * e1;
                let b = T::lit(4.0) * pi * *kappa;
                (
                    four_pi_sq * e2 - b * e1 + *gamma,
                    T::lit(2.0) * four_pi_sq * e2 - b * e1,
                    T::lit(4.0) * four_pi_sq * e2 - b * e1,
                )
            }
            PotentialKind::ExpTwoSided => {
                let e = (T::lit(4.0) * x.abs()).exp();
                let s = if x < T::zero() { -T::one() } else { T::one() };
                (four_pi_sq * e, s * T::lit(4.0) * four_pi_sq * e, T::lit(16.0) * four_pi_sq * e)
            }
            PotentialKind::Cosh => {
                let y = T::lit(4.0) * x;
                let c = T::lit(2.0) * four_pi_sq;
                (c * y.cosh(), T::lit(4.0) * c * y.sinh(), T::lit(16.0) * c * y.cosh())
            }
            PotentialKind::Tzitzeica => {
                let c = four_pi_sq * T::lit(2.0).powf(T::lit(-2.0 / 3.0));
                let a = (T::lit(3.0) * x).exp();
                let b = (T::lit(-6.0) * x).exp();
                (
                    c * (T::lit(2.0) * a + b),
                    c * T::lit(6.0) * (a - b),
                    c * (T::lit(18.0) * a + T::lit(36.0) * b),
                )
            }
            PotentialKind::Custom(p) => {
                let h = T::lit(1e-3) * (T::one() + x.abs());
                let (vm, v0, vp) = ((p.f)(x - h), (p.f)(x), (p.f)(x + h));
                (v0, (vp - vm) / (T::lit(2.0) * h), (vp - T::lit(2.0) * v0 + vm) / (h * h))
            }
        }
    }

    pub fn v(&self, x: T) -> T {
        self.eval(x).0
    }

    /// The width function when it has a closed form.
    pub fn closed_width(&self) -> Option<WidthFunction<T>> {
        match &self.kind {
            PotentialKind::ExpOneSided | PotentialKind::ExpTwoSided => {
                Some(WidthFunction::Exponential { beta: T::zero(), gamma: T::zero() })
            }
            PotentialKind::Morse { kappa, gamma } => Some(WidthFunction::Exponential {
                beta: T::lit(4.0) * T::PI() * *kappa,
                gamma: *gamma,
            }),
            _ => None,
        }
    }

    /// Turning point on `side` where V = e, by bracket expansion from the
    /// wall or minimum and bisection.
    pub fn turning_point(&self, e: T, side: Side) -> Result<T> {
        let dir: T = side.dir();
        let start = self.x_min;
        if self.v(start) >= e {
            return Ok(start);
        }
        let mut step = T::lit(0.125);
        let mut lo = start;
        let mut hi = start + dir * step;
        for _ in 0..200 {
            let v = self.v(hi);
            if !v.is_finite() || v >= e {
                break;
            }
            lo = hi;
            step = step * T::lit(1.5);
            hi = hi + dir * step;
        }
        let mut g = |x: T| -> Result<T> {
            let v = self.v(x);
            Ok(if v.is_finite() { v - e } else { T::max_value() })
        };
        let glo = g(lo)?;
        if !(g(hi)? >= T::zero()) {
            return Err(Error::UnsupportedShape("no turning point found".into()));
        }
        bisect(&mut g, lo, hi, glo, T::epsilon() * T::lit(4.0) * (T::one() + hi.abs()))
    }

    /// Width w(v) from the turning points.
    pub fn width(&self, v: T) -> Result<T> {
        if v <= self.v(self.x_min) {
            return Ok(T::zero());
        }
        let right = self.turning_point(v, Side::Right)?;
        Ok(match self.sidedness {
            Sidedness::One => right - self.x_min,
            Sidedness::Two => right - self.turning_point(v, Side::Left)?,
        })
    }
}

/// Tolerances for shooting and the asymptotic-regime checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ShootingConfig<T> {
    pub quad: QuadratureConfig<T>,
    /// Largest admissible |V'|/(V − E)^{3/2} at the seed point.
    pub seed_tol: T,
    /// The seed needs V − E ≥ margin · max(1, |E|, |E_ref|).
    pub energy_margin: T,
    pub ode_rtol: T,
    /// Largest admissible |V'|/(V − E)^{3/2} anywhere for the negative-E
    /// asymptotics, and |V''|/|V'|^{4/3} at turning points.
    pub regime_tol: T,
}

impl<T: Real> Default for ShootingConfig<T> {
    fn default() -> Self {
        Self {
            quad: QuadratureConfig::default(),
            seed_tol: T::lit(1e-3),
            energy_margin: T::lit(100.0),
            ode_rtol: (T::epsilon() * T::lit(1e4)).max(T::lit(1e-12)),
            regime_tol: T::lit(0.5),
        }
    }
}

/// Solution state at x; ψ = psi·e^{log_scale}, ψ' = dpsi·e^{log_scale}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingState<V, T> {
    pub x: T,
    pub psi: V,
    pub dpsi: V,
    pub log_scale: T,
}

/// Characteristic value mantissa·e^{log_scale}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Characteristic<V, T> {
    pub mantissa: V,
    pub log_scale: T,
}

impl<V: Energy<T>, T: Real> Characteristic<V, T> {
    pub fn ln_abs(&self) -> T {
        self.mantissa.magnitude().ln() + self.log_scale
    }

    pub fn value(&self) -> Result<V> {
        let v = self.mantissa * self.log_scale.exp();
        if !v.finite() {
            return Err(Error::Range {
                what: format!("characteristic value e^{} overflows", self.ln_abs().to_f64_lossy()),
                limit: T::max_value().ln().to_f64_lossy(),
            });
        }
        Ok(v)
    }
}

fn tol<T: Real>(cfg: &ShootingConfig<T>) -> Tolerance<T> {
    Tolerance::new(cfg.quad.abs_tol, cfg.quad.rel_tol)
}

/// First Liouville–Green correction to the log-derivative for q = V − E:
/// ψ'/ψ = ∓√q − q'/(4q) ∓ σ', σ' = q''/(8q^{3/2}) − 5q'²/(32q^{5/2}).
fn sigma_prime<V: Energy<T>, T: Real>(q: V, d1: T, d2: T) -> V {
    // Grouped as (q''/q − (5/4)(q'/q)²)/(8√q) to stay finite for huge q.
    let a = V::from_real(d1) / q;
    let b = V::from_real(d2) / q;
    (b - a * a * T::lit(1.25)) * T::lit(0.125) / q.e_sqrt()
}

fn seed_ok<T: Real>(v: T, d1: T, e_re: T, need: T, seed_tol: T) -> bool {
    let q = v - e_re;
    v.is_finite() && q > need && d1.abs() / q.powf(T::lit(1.5)) <= seed_tol
}

impl<T: Real> PotentialSpec<T> {
    fn check_side(&self, side: Side) -> Result<()> {
        if self.sidedness == Sidedness::One && side == Side::Left {
            return Err(Error::Domain("one-sided potential has no left decaying solution".into()));
        }
        Ok(())
    }

    fn seed_need<V: Energy<T>>(&self, e: V, cfg: &ShootingConfig<T>) -> T {
        cfg.energy_margin
            * T::one()
                .max(e.magnitude())
                .max(self.reference_energy.abs())
    }

    /// Automatic seed point on `side`: the first point outward from the wall
    /// or minimum passing the seed-validity test.
    pub fn seed_point<V: Energy<T>>(&self, e: V, side: Side, cfg: &ShootingConfig<T>) -> Result<T> {
        self.check_side(side)?;
        let dir: T = side.dir();
        let need = self.seed_need(e, cfg);
        let eref = self.reference_energy;
        for k in 1..=400usize {
            let reach = if k <= 80 {
                T::lit(0.25) * T::from_usize_lossy(k)
            } else {
                T::lit(20.0) * T::lit(1.1).powi((k - 80) as i32)
            };
            let x = self.x_min + dir * reach;
            let (v, d1, _) = self.eval(x);
            if !v.is_finite() {
                break;
            }
            if seed_ok(v, d1, e.re_part(), need, cfg.seed_tol)
                && seed_ok(v, d1, eref, need, cfg.seed_tol)
            {
                return Ok(x);
            }
        }
        Err(Error::Seed(format!(
            "no point where V ≫ |E| = {} and V' ≪ (V − E)^(3/2) before V overflows",
            e.magnitude().to_f64_lossy()
        )))
    }

    /// Complex log of ψ_E(x₀) and ψ'/ψ there, for the normalised decaying
    /// solution: −¼ log q_E − ∫_{x_min}^{x₀}√q_ref + ∫_{x₀}^{∞}(√q_E − √q_ref + σ'_E).
    fn seed<V: Energy<T>>(&self, e: V, side: Side, x0: T, cfg: &ShootingConfig<T>) -> Result<(V, V)> {
        let dir: T = side.dir();
        let eref = self.reference_energy;
        let (v0, d1, d2) = self.eval(x0);
        let need = self.seed_need(e, cfg);
        if !seed_ok(v0, d1, e.re_part(), need, cfg.seed_tol) || !seed_ok(v0, d1, eref, need, cfg.seed_tol) {
            return Err(Error::Seed(format!(
                "seed point x0 = {} fails V ≫ |E| or V' ≪ (V − E)^(3/2)",
                x0.to_f64_lossy()
            )));
        }
        let span = (x0 - self.x_min).abs();
        let anchor = gauss_kronrod(
            |t: T| {
                let v = self.v(self.x_min + dir * t);
                (v - eref).max(T::zero()).sqrt()
            },
            T::zero(),
            span,
            8,
            tol(cfg),
            cfg.quad.max_panels,
        )?
        .value;
        let de = V::from_real(eref) - e;
        let tail = exp_sinh(
            |t: T| -> V {
                let (v, d1, d2) = self.eval(x0 + dir * t);
                // Beyond V ~ 1e154 complex division overflows; the integrand
                // is below 1e-77 there.
                if !(v * v).is_finite() || !(d1 * d1).is_finite() || !(d2 * d2).is_finite() {
                    return V::zero();
                }
                let qe = V::from_real(v) - e;
                let qr = V::from_real(v - eref);
                de / (qe.e_sqrt() + qr.e_sqrt()) + sigma_prime(qe, d1, d2)
            },
            T::zero(),
            tol(cfg),
            12,
        )?
        .value;
        let q = V::from_real(v0) - e;
        let ln_psi = -(q.e_ln() * T::lit(0.25)) - V::from_real(anchor) + tail;
        let dlog = -(q.e_sqrt() * dir) - V::from_real(d1 * T::lit(0.25)) / q - sigma_prime(q, d1, d2) * dir;
        Ok((ln_psi, dlog))
    }

    fn integrate<V: Energy<T>>(
        &self,
        e: V,
        mut state: OdeState<V, T, 2>,
        stops: &[T],
        cfg: &ShootingConfig<T>,
    ) -> Result<OdeState<V, T, 2>> {
        let mut ode = Dop853::new(OdeOptions::new(cfg.ode_rtol, cfg.ode_rtol * T::lit(1e-3)));
        let mut rhs = |x: T, y: &[V; 2]| -> [V; 2] { [y[1], y[0] * (V::from_real(self.v(x)) - e)] };
        for x in stops {
            ode.advance(&mut rhs, &mut state, *x)?;
        }
        Ok(state)
    }
}

/// Decaying solution on `side` integrated to `x_stop` from the automatic
/// seed point.
pub fn decaying_solution<V: Energy<T>, T: Real>(
    pot: &PotentialSpec<T>,
    e: V,
    side: Side,
    x_stop: T,
    cfg: &ShootingConfig<T>,
) -> Result<ShootingState<V, T>> {
    let x0 = pot.seed_point(e, side, cfg)?;
    decaying_solution_from(pot, e, side, x0, x_stop, cfg)
}

/// As [`decaying_solution`] with an explicit seed point, which is rejected
/// with a seed error when the Liouville–Green form is not valid there.
pub fn decaying_solution_from<V: Energy<T>, T: Real>(
    pot: &PotentialSpec<T>,
    e: V,
    side: Side,
    x0: T,
    x_stop: T,
    cfg: &ShootingConfig<T>,
) -> Result<ShootingState<V, T>> {
    pot.check_side(side)?;
    if !e.finite() {
        return Err(Error::Domain("non-finite energy".into()));
    }
    let dir: T = side.dir();
    if (x0 - x_stop) * dir < T::zero() {
        return Err(Error::Domain("x_stop lies beyond the seed point".into()));
    }
    let (ln_psi, dlog) = pot.seed(e, side, x0, cfg)?;
    let phase = (ln_psi - V::from_real(ln_psi.re_part())).e_exp();
    let state = OdeState {
        x: x0,
        y: [phase, phase * dlog],
        log_scale: ln_psi.re_part(),
    };
    // Pass through a kink at the minimum as a leg boundary.
    let mut stops = Vec::new();
    if (x0 - pot.x_min) * dir > T::zero() && (x_stop - pot.x_min) * dir < T::zero() {
        stops.push(pot.x_min);
    }
    stops.push(x_stop);
    let s = pot.integrate(e, state, &stops, cfg)?;
    Ok(ShootingState {
        x: s.x,
        psi: s.y[0],
        dpsi: s.y[1],
        log_scale: s.log_scale,
    })
}

/// P(E) = ψ_E⁺ at the wall.
pub fn characteristic_one_sided<V: Energy<T>, T: Real>(
    pot: &PotentialSpec<T>,
    e: V,
    cfg: &ShootingConfig<T>,
) -> Result<Characteristic<V, T>> {
    if pot.sidedness != Sidedness::One {
        return Err(Error::Domain("characteristic_one_sided needs a one-sided potential".into()));
    }
    let s = decaying_solution(pot, e, Side::Right, pot.x_min, cfg)?;
    Ok(Characteristic {
        mantissa: s.psi,
        log_scale: s.log_scale,
    })
}

/// Wronskian ψ⁺∂ψ⁻ − ψ⁻∂ψ⁺ evaluated at x = 0.
pub fn characteristic_two_sided<V: Energy<T>, T: Real>(
    pot: &PotentialSpec<T>,
    e: V,
    cfg: &ShootingConfig<T>,
) -> Result<Characteristic<V, T>> {
    wronskian_at(pot, e, T::zero(), cfg)
}

/// The two-sided Wronskian evaluated at an arbitrary x.
pub fn wronskian_at<V: Energy<T>, T: Real>(
    pot: &PotentialSpec<T>,
    e: V,
    x: T,
    cfg: &ShootingConfig<T>,
) -> Result<Characteristic<V, T>> {
    if pot.sidedness != Sidedness::Two {
        return Err(Error::Domain("Wronskian characteristic needs a two-sided potential".into()));
    }
    let p = decaying_solution(pot, e, Side::Right, x, cfg)?;
    let m = decaying_solution(pot, e, Side::Left, x, cfg)?;
    Ok(Characteristic {
        mantissa: p.psi * m.dpsi - m.psi * p.dpsi,
        log_scale: p.log_scale + m.log_scale,
    })
}

/// Where the negative- and positive-energy asymptotics take their data from.
#[derive(Debug, Clone, Copy)]
pub enum LgwkbSource<'a, T> {
    Potential(&'a PotentialSpec<T>),
    Width(&'a WidthFunction<T>, Sidedness),
}

fn check_regime_negative<T: Real>(pot: &PotentialSpec<T>, e: T, cfg: &ShootingConfig<T>) -> Result<()> {
    let sides: &[Side] = match pot.sidedness {
        Sidedness::One => &[Side::Right],
        Sidedness::Two => &[Side::Right, Side::Left],
    };
    for side in sides {
        let dir: T = side.dir();
        for k in 0..400 {
            let x = pot.x_min + dir * T::lit(0.05) * T::from_usize_lossy(k);
            let (v, d1, _) = pot.eval(x);
            if !v.is_finite() {
                break;
            }
            let ratio = d1.abs() / (v - e).powf(T::lit(1.5));
            if !(ratio <= cfg.regime_tol) {
                return Err(Error::AsymptoticRegime(format!(
                    "V'/(V − E)^(3/2) = {} at x = {}",
                    ratio.to_f64_lossy(),
                    x.to_f64_lossy()
                )));
            }
            if v - e > T::lit(1e6) * (T::one() + e.abs()) {
                break;
            }
        }
    }
    Ok(())
}

/// ½∫ dx/√(V − E) over the domain of the potential.
fn potential_time<T: Real>(pot: &PotentialSpec<T>, e: T, cfg: &ShootingConfig<T>) -> Result<T> {
    let one_side = |side: Side| -> Result<T> {
        let dir: T = side.dir();
        Ok(exp_sinh(
            |t: T| {
                let v = pot.v(pot.x_min + dir * t);
                if v.is_finite() {
                    (v - e).sqrt().recip()
                } else {
                    T::zero()
                }
            },
            T::zero(),
            tol(cfg),
            12,
        )?
        .value)
    };
    let mut total = one_side(Side::Right)?;
    if pot.sidedness == Sidedness::Two {
        total += one_side(Side::Left)?;
    }
    Ok(total * T::lit(0.5))
}

/// R(E) = ∂_E log P(E) for large negative E: −1/(4E) − T(E) one-sided,
/// −T(E) two-sided. From a potential the regime V' ≪ (V − E)^{3/2} is
/// checked; from a width only the shape is used.
pub fn lgwkb_r<T: Real>(src: LgwkbSource<'_, T>, e: T, cfg: &ShootingConfig<T>) -> Result<T> {
    if !(e < T::zero()) {
        return Err(Error::Domain("negative-energy asymptotics need E < 0".into()));
    }
    let (t, sided) = match src {
        LgwkbSource::Potential(pot) => {
            let vmin = pot.v(pot.x_min);
            if e >= vmin {
                return Err(Error::Domain("E must lie below the potential".into()));
            }
            check_regime_negative(pot, e, cfg)?;
            (potential_time(pot, e, cfg)?, pot.sidedness)
        }
        LgwkbSource::Width(w, s) => (imaginary_time(w, e, &cfg.quad)?, s),
    };
    Ok(match sided {
        Sidedness::One => -(T::lit(4.0) * e).recip() - t,
        Sidedness::Two => -t,
    })
}

/// The three ingredients of P̃: ∫√V below E, ∫(√(V − E) − √V) above E and
/// the phase ∫√(E − V), all in the shifted variables V − E_ref, E − E_ref.
struct OscillatoryParts<T> {
    under: T,
    over: T,
    phase: T,
}

fn oscillatory_from_potential<T: Real>(
    pot: &PotentialSpec<T>,
    e: T,
    cfg: &ShootingConfig<T>,
) -> Result<(OscillatoryParts<T>, T)> {
    let eref = pot.reference_energy;
    let es = e - eref;
    let sides: Vec<Side> = match pot.sidedness {
        Sidedness::One => vec![Side::Right],
        Sidedness::Two => vec![Side::Right, Side::Left],
    };
    let v_floor = pot.v(pot.x_min);
    if v_floor < eref {
        return Err(Error::AsymptoticRegime(
            "reference energy must not exceed the minimum of V".into(),
        ));
    }
    if e <= v_floor {
        return Err(Error::Domain("E must lie above the bottom of the potential".into()));
    }
    let mut parts = OscillatoryParts {
        under: T::zero(),
        over: T::zero(),
        phase: T::zero(),
    };
    for side in sides {
        let dir: T = side.dir();
        let a = pot.turning_point(e, side)?;
        let len = (a - pot.x_min).abs();
        // A single turning point: V increases monotonically out to 2·len.
        let n = 64;
        let mut prev = v_floor;
        for k in 1..=2 * n {
            let x = pot.x_min + dir * len * T::from_usize_lossy(k) / T::from_usize_lossy(n);
            let v = pot.v(x);
            if !v.is_finite() {
                break;
            }
            if v < prev {
                return Err(Error::UnsupportedShape(format!(
                    "V is not monotone away from x = {} (several turning points)",
                    pot.x_min.to_f64_lossy()
                )));
            }
            prev = v;
        }
        let (_, d1, d2) = pot.eval(a);
        let jr = d2.abs() / d1.abs().powf(T::lit(4.0 / 3.0));
        if !(jr <= cfg.regime_tol) {
            return Err(Error::AsymptoticRegime(format!(
                "V''/|V'|^(4/3) = {} at the turning point",
                jr.to_f64_lossy()
            )));
        }
        let at = |t: T| pot.x_min + dir * t;
        parts.under += tanh_sinh(|t: T| (pot.v(at(t)) - eref).max(T::zero()).sqrt(), T::zero(), len, tol(cfg), 12)?.value;
        parts.phase += tanh_sinh(|t: T| (e - pot.v(at(t))).max(T::zero()).sqrt(), T::zero(), len, tol(cfg), 12)?.value;
        parts.over += exp_sinh(
            |t: T| {
                let v = pot.v(at(len + t));
                if !v.is_finite() {
                    return T::zero();
                }
                let vs = (v - eref).max(T::zero());
                -es / ((vs - es).max(T::zero()).sqrt() + vs.sqrt())
            },
            T::zero(),
            tol(cfg),
            12,
        )?
        .value;
    }
    Ok((parts, v_floor - eref))
}

fn oscillatory_from_width<T: Real>(w: &WidthFunction<T>, e: T, cfg: &ShootingConfig<T>) -> Result<(OscillatoryParts<T>, T)> {
    let v_floor = w.v_min();
    if v_floor < T::zero() {
        return Err(Error::AsymptoticRegime("width-only form needs V ≥ 0".into()));
    }
    if e <= v_floor {
        return Err(Error::Domain("E must lie above the bottom of the potential".into()));
    }
    let we = w.width(e);
    let mut breaks = vec![T::zero()];
    if let WidthFunction::Sampled(s) = w {
        breaks.extend(s.widths().iter().copied().filter(|x| *x > T::zero() && *x < we));
    }
    breaks.push(we);
    breaks.dedup();
    let height = |x: T| w.height(x).unwrap_or(T::nan());
    let q = tol(cfg);
    let mut under = T::zero();
    let mut phase = T::zero();
    for pair in breaks.windows(2) {
        under += tanh_sinh(|x: T| height(x).max(T::zero()).sqrt(), pair[0], pair[1], q, 12)?.value;
        phase += tanh_sinh(|x: T| (e - height(x)).max(T::zero()).sqrt(), pair[0], pair[1], q, 12)?.value;
    }
    let over_at = |x: T| {
        let v = height(x);
        if !v.is_finite() {
            return T::zero();
        }
        -e / ((v - e).max(T::zero()).sqrt() + v.sqrt())
    };
    // Sampled widths have kinks at the nodes: panels up to the last node,
    // then the smooth logarithmic continuation.
    let mut start = we;
    let mut over = T::zero();
    if let WidthFunction::Sampled(s) = w {
        let mut nodes = vec![we];
        nodes.extend(s.widths().iter().copied().filter(|x| *x > we));
        if nodes.len() >= 2 {
            over += crate::quadrature::gauss_kronrod_breakpoints(over_at, &nodes, q, cfg.quad.max_panels.max(4 * nodes.len()))?.value;
            start = *nodes.last().unwrap_or(&we);
        }
    }
    over += exp_sinh(|t: T| over_at(start + t), T::zero(), q, 12)?.value;
    Ok((OscillatoryParts { under, over, phase }, v_floor))
}

/// P̃(E) for large positive E, whose real part approximates the shooting
/// function. One-sided: 2(E − V(0))^{−1/4}e^{−∫√V}e^{∫(√(V−E)−√V)}e^{i(Φ − π/4)}.
/// Two-sided: 4e^{−∫√V}e^{∫(√(V−E)−√V)}e^{iΦ}, Φ = ∫√(E − V) between the
/// turning points.
pub fn lgwkb_oscillatory<T: Real>(src: LgwkbSource<'_, T>, e: T, cfg: &ShootingConfig<T>) -> Result<Cx<T>> {
    let (parts, v_floor, sided, es) = match src {
        LgwkbSource::Potential(pot) => {
            let (p, f) = oscillatory_from_potential(pot, e, cfg)?;
            (p, f, pot.sidedness, e - pot.reference_energy)
        }
        LgwkbSource::Width(w, s) => {
            let (p, f) = oscillatory_from_width(w, e, cfg)?;
            (p, f, s, e)
        }
    };
    let magnitude = (parts.over - parts.under).exp();
    let (amp, shift) = match sided {
        Sidedness::One => (T::lit(2.0) * (es - v_floor).powf(T::lit(-0.25)), -T::FRAC_PI_4()),
        Sidedness::Two => (T::lit(4.0), T::zero()),
    };
    Ok(Cx::from_polar(amp * magnitude, parts.phase + shift))
}

/// Provenance of a sampled characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Shooting,
    ClosedForm,
    Asymptotic,
    ModeSum,
    Reconstructed,
}

/// Characteristic values on a grid, stored as sign and log-magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicSamples<T> {
    pub energies: Vec<T>,
    pub ln_abs: Vec<T>,
    pub sign: Vec<T>,
    pub provenance: Provenance,
}

impl<T: Real> CharacteristicSamples<T> {
    pub fn value(&self, i: usize) -> T {
        self.sign[i] * self.ln_abs[i].exp()
    }
}

/// ∫₀^τ of the cubic Hermite interpolant on one panel, in units of the panel.
fn hermite_integral<T: Real>(y0: T, y1: T, d0: T, d1: T, h: T, tau: T) -> T {
    let t2 = tau * tau;
    let t3 = t2 * tau;
    let t4 = t3 * tau;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let h00 = t4 / two - t3 + tau;
    let h10 = t4 / T::lit(4.0) - two * t3 / three + t2 / two;
    let h01 = -t4 / two + t3;
    let h11 = t4 / T::lit(4.0) - t3 / three;
    h * (y0 * h00 + h * d0 * h10 + y1 * h01 + h * d1 * h11)
}

struct Pole<T> {
    at: T,
    order: T,
}

/// P(E) = C exp ∫_{E₀}^E R from samples of R = ∂_E log P.
///
/// Simple poles of R between nodes (R jumps from large negative to large
/// positive with residue m ≥ 1) are located from the two bracketing values
/// and integrated exactly: the integer residue contributes m log|E − E*| and
/// a sign flip for odd m. The smooth remainder is integrated with cubic
/// Hermite panels using finite-difference slopes.
pub fn reconstruct_characteristic<T: Real>(energies: &[T], r: &[T], e0: T, c: T) -> Result<CharacteristicSamples<T>> {
    let n = energies.len();
    if n < 3 || r.len() != n {
        return Err(Error::Grid("need at least three (E, R) samples".into()));
    }
    for i in 0..n {
        if !r[i].is_finite() || !energies[i].is_finite() {
            return Err(Error::Grid(format!(
                "R is not finite at E = {}; shift the grid off the pole",
                energies[i].to_f64_lossy()
            )));
        }
        if i > 0 && !(energies[i] > energies[i - 1]) {
            return Err(Error::Grid("energies must increase".into()));
        }
    }
    if !(e0 >= energies[0] && e0 <= energies[n - 1]) {
        return Err(Error::Grid("E0 must lie inside the sample range".into()));
    }
    if c == T::zero() || !c.is_finite() {
        return Err(Error::Domain("normalisation constant must be finite and nonzero".into()));
    }
    // Locate poles, refining each against the smooth part seen by the
    // neighbouring nodes.
    let mut poles: Vec<Pole<T>> = Vec::new();
    for i in 0..n - 1 {
        let (a, b) = (energies[i], energies[i + 1]);
        if !(r[i] < T::zero() && r[i + 1] > T::zero()) {
            continue;
        }
        let mut sa = T::zero();
        let mut sb = T::zero();
        let mut found: Option<Pole<T>> = None;
        for _ in 0..30 {
            let (ra, rb) = (r[i] - sa, r[i + 1] - sb);
            if !(ra < T::zero() && rb > T::zero()) {
                break;
            }
            let m = (a - b) / (ra.recip() - rb.recip());
            if !(m >= T::lit(0.5)) {
                break;
            }
            let m = m.round();
            // With m fixed each side gives a location; weight the nearer one.
            let (ea, eb) = (a - m / ra, b - m / rb);
            let (wa, wb) = (rb.abs(), ra.abs());
            let at = (ea * wa + eb * wb) / (wa + wb);
            if !(at > a && at < b) {
                break;
            }
            let moved = found.as_ref().map_or(T::infinity(), |p| (p.at - at).abs());
            found = Some(Pole { at, order: m });
            if moved <= T::epsilon() * (b - a) {
                break;
            }
            // Smooth part at a and b from a polynomial through neighbours.
            let nb: Vec<usize> = [i.wrapping_sub(2), i.wrapping_sub(1), i + 2, i + 3]
                .into_iter()
                .filter(|j| *j < n)
                .collect();
            if nb.len() < 2 {
                break;
            }
            let smooth = |j: usize| r[j] - m / (energies[j] - at);
            let interp = |x: T| {
                nb.iter().fold(T::zero(), |acc, &j| {
                    let l = nb
                        .iter()
                        .filter(|&&k| k != j)
                        .fold(T::one(), |p, &k| p * (x - energies[k]) / (energies[j] - energies[k]));
                    acc + l * smooth(j)
                })
            };
            sa = interp(a);
            sb = interp(b);
        }
        if let Some(p) = found {
            poles.push(p);
        }
    }
    let smooth: Vec<T> = (0..n)
        .map(|j| {
            r[j] - poles
                .iter()
                .fold(T::zero(), |acc, p| acc + p.order / (energies[j] - p.at))
        })
        .collect();
    let slope = |j: usize| -> T {
        if j == 0 {
            (smooth[1] - smooth[0]) / (energies[1] - energies[0])
        } else if j == n - 1 {
            (smooth[n - 1] - smooth[n - 2]) / (energies[n - 1] - energies[n - 2])
        } else {
            (smooth[j + 1] - smooth[j - 1]) / (energies[j + 1] - energies[j - 1])
        }
    };
    let d: Vec<T> = (0..n).map(slope).collect();
    let mut cum = vec![T::zero(); n];
    for i in 0..n - 1 {
        let h = energies[i + 1] - energies[i];
        cum[i + 1] = cum[i] + hermite_integral(smooth[i], smooth[i + 1], d[i], d[i + 1], h, T::one());
    }
    let k = (energies.partition_point(|x| *x <= e0).max(1) - 1).min(n - 2);
    let h = energies[k + 1] - energies[k];
    let at_e0 = cum[k] + hermite_integral(smooth[k], smooth[k + 1], d[k], d[k + 1], h, (e0 - energies[k]) / h);
    let pole_part = |e: T| -> Result<(T, T)> {
        let mut ln = T::zero();
        let mut sign = T::one();
        for p in &poles {
            let (u, u0) = (e - p.at, e0 - p.at);
            if u0 == T::zero() {
                return Err(Error::Grid("E0 sits on a zero of P".into()));
            }
            ln += p.order * (u.abs() / u0.abs()).ln();
            if (u < T::zero()) != (u0 < T::zero()) && (p.order.to_i64().unwrap_or(1) % 2 != 0) {
                sign = -sign;
            }
        }
        Ok((ln, sign))
    };
    let mut ln_abs = Vec::with_capacity(n);
    let mut sign = Vec::with_capacity(n);
    for j in 0..n {
        let (lp, sp) = pole_part(energies[j])?;
        ln_abs.push(c.abs().ln() + cum[j] - at_e0 + lp);
        sign.push(c.signum() * sp);
    }
    Ok(CharacteristicSamples {
        energies: energies.to_vec(),
        ln_abs,
        sign,
        provenance: Provenance::Reconstructed,
    })
}
