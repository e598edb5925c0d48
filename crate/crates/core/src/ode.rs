//! Explicit Runge–Kutta integration of 8th order (Dormand–Prince 8(5,3))
//! for small fixed-size linear systems, with optional renormalisation of
//! the state after every accepted step.
//!
//! Renormalisation is only meaningful for linear homogeneous equations: the
//! state is divided by its largest component magnitude and the logarithm of
//! that factor is accumulated in [`OdeState::log_scale`]. The true solution
//! is `exp(log_scale) * y`.

use crate::error::{Error, Result};
use crate::quadrature::Integrand;
use crate::real::Real;

const A: [[f64; 12]; 12] = [
    [0.0; 12],
    [
        5.260_015_195_876_773E-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        1.972_505_698_453_79E-2,
        5.917_517_095_361_37E-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2.958_758_547_680_685E-2,
        0.0,
        8.876_275_643_042_054E-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        2.413_651_341_592_667E-1,
        0.0,
        -8.845_494_793_282_861E-1,
        9.248_340_032_617_92E-1,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        3.703_703_703_703_703_5E-2,
        0.0,
        0.0,
        1.708_286_087_294_738_6E-1,
        1.254_676_875_668_224_2E-1,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        3.7109375E-2,
        0.0,
        0.0,
        1.702_522_110_195_440_5E-1,
        6.021_653_898_045_596E-2,
        -1.7578125E-2,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        3.709_200_011_850_479E-2,
        0.0,
        0.0,
        1.703_839_257_122_399_8E-1,
        1.072_620_304_463_732_8E-1,
        -1.531_943_774_862_440_2E-2,
        8.273_789_163_814_023E-3,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        6.241_109_587_160_757E-1,
        0.0,
        0.0,
        -3.360_892_629_446_941_4,
        -8.682_193_468_417_26E-1,
        2.759_209_969_944_671E1,
        2.015_406_755_047_789_4E1,
        -4.348_988_418_106_996E1,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        4.776_625_364_382_643_4E-1,
        0.0,
        0.0,
        -2.488_114_619_971_667_7,
        -5.902_908_268_368_43E-1,
        2.123_005_144_818_119_3E1,
        1.527_923_363_288_242_3E1,
        -3.328_821_096_898_486E1,
        -2.033_120_170_850_862_7E-2,
        0.0,
        0.0,
        0.0,
    ],
    [
        -9.371_424_300_859_873E-1,
        0.0,
        0.0,
        5.186_372_428_844_064,
        1.091_437_348_996_729_5,
        -8.149_787_010_746_927,
        -1.852_006_565_999_696E1,
        2.273_948_709_935_050_5E1,
        2.493_605_552_679_652_3,
        -3.046_764_471_898_219_6,
        0.0,
        0.0,
    ],
    [
        2.273_310_147_516_538,
        0.0,
        0.0,
        -1.053_449_546_673_725E1,
        -2.000_872_058_224_862_5,
        -1.795_893_186_311_88E1,
        2.794_888_452_941_996E1,
        -2.858_998_277_135_023_5,
        -8.872_856_933_530_63,
        1.236_056_717_579_430_3E1,
        6.433_927_460_157_636E-1,
        0.0,
    ],
];

const C: [f64; 12] = [
    0.0,
    5.260_015_195_876_773E-2,
    7.890_022_793_815_16E-2,
    1.183_503_419_072_274E-1,
    2.816_496_580_927_726E-1,
    3.333_333_333_333_333E-1,
    0.25,
    3.076_923_076_923_077E-1,
    6.512_820_512_820_513E-1,
    0.6,
    8.571_428_571_428_571E-1,
    1.0,
];

const B: [f64; 12] = [
    5.429_373_411_656_876_5E-2,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450_312_892_752_409,
    1.891_517_899_314_500_3,
    -5.801_203_960_010_585,
    3.111_643_669_578_199E-1,
    -1.521_609_496_625_161E-1,
    2.013_654_008_040_303_4E-1,
    4.471_061_572_777_259E-2,
];

const ER: [f64; 12] = [
    1.312_004_499_419_488E-2,
    0.0,
    0.0,
    0.0,
    0.0,
    -1.225_156_446_376_204_4,
    -4.957_589_496_572_502E-1,
    1.664_377_182_454_986_4,
    -3.503_288_487_499_736_6E-1,
    3.341_791_187_130_175E-1,
    8.192_320_648_511_571E-2,
    -2.235_530_786_388_629_4E-2,
];

const BHH: [f64; 3] = [
    2.440_944_881_889_764E-1,
    7.338_466_882_816_118E-1,
    2.205_882_352_941_176_6E-2,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
    /// Largest admissible step; `None` means the whole interval.
    pub h_max: Option<T>,
    /// Rescale the state after every accepted step (linear systems only).
    pub renormalize: bool,
}

impl<T: Real> OdeOptions<T> {
    pub fn new(rtol: T, atol: T) -> Self {
        Self {
            rtol,
            atol,
            max_steps: 200_000,
            h_max: None,
            renormalize: true,
        }
    }
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        let tol = T::epsilon() * T::lit(1.0e4);
        Self::new(tol, tol)
    }
}

/// Position, (normalised) state and accumulated log-scale of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeState<V, T, const N: usize> {
    pub x: T,
    pub y: [V; N],
    pub log_scale: T,
}

impl<V, T, const N: usize> OdeState<V, T, N>
where
    T: Real,
    V: Integrand<T>,
{
    pub fn new(x: T, y: [V; N]) -> Self {
        Self {
            x,
            y,
            log_scale: T::zero(),
        }
    }

    fn renormalize(&mut self) {
        let m = self
            .y
            .iter()
            .fold(T::zero(), |m, v| m.max(v.magnitude()));
        if m > T::zero() && m.is_finite() {
            let inv = m.recip();
            for v in self.y.iter_mut() {
                *v = *v * inv;
            }
            self.log_scale += m.ln();
        }
    }
}

/// Stateful stepper: remembers the last accepted step size so that a
/// trajectory split into several legs does not restart from scratch.
#[derive(Debug, Clone)]
pub struct Dop853<T> {
    pub options: OdeOptions<T>,
    h: Option<T>,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

#[inline]
fn axpy<V, T, const N: usize>(y: &[V; N], terms: &[(T, &[V; N])]) -> [V; N]
where
    T: Real,
    V: Integrand<T>,
{
    let mut out = *y;
    for (c, k) in terms {
        if *c == T::zero() {
            continue;
        }
        for i in 0..N {
            out[i] = out[i] + k[i] * *c;
        }
    }
    out
}

impl<T: Real> Dop853<T> {
    pub fn new(options: OdeOptions<T>) -> Self {
        Self {
            options,
            h: None,
            steps_accepted: 0,
            steps_rejected: 0,
        }
    }

    fn initial_step<V, F, const N: usize>(&self, f: &mut F, s: &OdeState<V, T, N>, span: T) -> T
    where
        V: Integrand<T>,
        F: FnMut(T, &[V; N]) -> [V; N],
    {
        let k0 = f(s.x, &s.y);
        let mut d0 = T::zero();
        let mut d1 = T::zero();
        for i in 0..N {
            let sk = self.options.atol + self.options.rtol * s.y[i].magnitude();
            d0 += (s.y[i].magnitude() / sk).powi(2);
            d1 += (k0[i].magnitude() / sk).powi(2);
        }
        let h = if d0 <= T::lit(1e-10) || d1 <= T::lit(1e-10) {
            T::lit(1e-6)
        } else {
            T::lit(0.01) * (d0 / d1).sqrt()
        };
        h.min(span.abs())
    }

    /// Advances `state` to `x_end`. The sign of `x_end - state.x` sets the
    /// direction of integration.
    pub fn advance<V, F, const N: usize>(
        &mut self,
        f: &mut F,
        state: &mut OdeState<V, T, N>,
        x_end: T,
    ) -> Result<()>
    where
        V: Integrand<T>,
        F: FnMut(T, &[V; N]) -> [V; N],
    {
        let span = x_end - state.x;
        if span == T::zero() {
            return Ok(());
        }
        let dir = span.signum();
        let h_max = self.options.h_max.unwrap_or(span.abs()).min(span.abs());
        let mut h = match self.h {
            Some(h) => h.abs().min(h_max),
            None => self.initial_step(f, state, span).min(h_max),
        };
        let tiny = T::epsilon() * T::lit(16.0) * (state.x.abs() + x_end.abs() + T::one());
        let mut k1 = f(state.x, &state.y);
        let mut steps = 0usize;
        loop {
            let remaining = (x_end - state.x) * dir;
            if remaining <= tiny {
                state.x = x_end;
                break;
            }
            if steps >= self.options.max_steps {
                return Err(Error::Integration {
                    at: state.x.to_f64_lossy(),
                    reason: "step limit reached".into(),
                });
            }
            steps += 1;
            let last = h >= remaining;
            if last {
                h = remaining;
            }
            if h <= tiny {
                return Err(Error::Integration {
                    at: state.x.to_f64_lossy(),
                    reason: "step size underflow".into(),
                });
            }
            let hs = h * dir;
            let (y_new, err) = self.step(f, state.x, &state.y, &k1, hs);
            if !err.is_finite() || y_new.iter().any(|v| !v.finite()) {
                if h <= tiny * T::lit(1e3) {
                    return Err(Error::Integration {
                        at: state.x.to_f64_lossy(),
                        reason: "non-finite state".into(),
                    });
                }
                h = h * T::lit(0.25);
                self.steps_rejected += 1;
                continue;
            }
            let fac = T::lit(0.9) * err.max(T::lit(1e-30)).powf(T::lit(-0.125));
            if err <= T::one() {
                self.steps_accepted += 1;
                state.x = if last { x_end } else { state.x + hs };
                state.y = y_new;
                if self.options.renormalize {
                    state.renormalize();
                }
                k1 = f(state.x, &state.y);
                let grow = fac.min(T::lit(6.0)).max(T::lit(0.333));
                let h_next = (h * grow).min(h_max);
                // A truncated final leg should not shrink the remembered step.
                self.h = Some(if last { h_next.max(self.h.unwrap_or(h_next)) } else { h_next });
                if last {
                    break;
                }
                h = h_next;
            } else {
                self.steps_rejected += 1;
                h = h * fac.max(T::lit(0.2)).min(T::one());
            }
        }
        Ok(())
    }

    fn step<V, F, const N: usize>(
        &self,
        f: &mut F,
        x: T,
        y: &[V; N],
        k1: &[V; N],
        h: T,
    ) -> ([V; N], T)
    where
        V: Integrand<T>,
        F: FnMut(T, &[V; N]) -> [V; N],
    {
        let a = |i: usize, j: usize| T::lit(A[i][j]) * h;
        let c = |i: usize| x + T::lit(C[i]) * h;
        let mut k: [[V; N]; 12] = [[V::zero(); N]; 12];
        k[0] = *k1;
        for i in 1..12 {
            let terms: Vec<(T, &[V; N])> = (0..i).map(|j| (a(i, j), &k[j])).collect();
            let yi = axpy(y, &terms);
            k[i] = f(c(i), &yi);
        }
        let mut y_new = *y;
        let mut err = T::zero();
        let mut err2 = T::zero();
        for n in 0..N {
            let mut incr = V::zero();
            let mut e = V::zero();
            for i in 0..12 {
                incr = incr + k[i][n] * T::lit(B[i]);
                e = e + k[i][n] * T::lit(ER[i]);
            }
            y_new[n] = y[n] + incr * h;
            let e2 = incr - k[0][n] * T::lit(BHH[0]) - k[8][n] * T::lit(BHH[1]) - k[11][n] * T::lit(BHH[2]);
            let sk = self.options.atol + self.options.rtol * y[n].magnitude().max(y_new[n].magnitude());
            err += (e.magnitude() / sk).powi(2);
            err2 += (e2.magnitude() / sk).powi(2);
        }
        let mut deno = err + T::lit(0.01) * err2;
        if deno <= T::zero() {
            deno = T::one();
        }
        let err = h.abs() * err / (deno * T::from_usize_lossy(N)).sqrt();
        (y_new, err)
    }
}
