use crate::error::{Error, Result};
use crate::real::{cx, Cx, Real};

/// B_{2k}, k = 1..=30.
pub(crate) const BERNOULLI_2K: [f64; 30] = [
    1.666_666_666_666_666_7E-1,
    -3.333_333_333_333_333_3E-2,
    2.380_952_380_952_381E-2,
    -3.333_333_333_333_333_3E-2,
    7.575_757_575_757_575_8E-2,
    -2.531_135_531_135_531_1E-1,
    1.166_666_666_666_666_7,
    -7.092_156_862_745_098,
    5.497_117_794_486_215_5E1,
    -5.291_242_424_242_424_2E2,
    6.192_123_188_405_797_1E3,
    -8.658_025_311_355_311_4E4,
    1.425_517_166_666_666_7E6,
    -2.729_823_106_781_609_2E7,
    6.015_808_739_006_423_7E8,
    -1.511_631_576_709_215_7E10,
    4.296_146_430_611_666_7E11,
    -1.371_165_520_508_833_3E13,
    4.883_323_189_735_931_7E14,
    -1.929_657_934_194_006_8E16,
    8.416_930_475_736_826_2E17,
    -4.033_807_185_405_945_5E19,
    2.115_074_863_808_199_2E21,
    -1.208_662_652_229_652_6E23,
    7.500_866_746_076_964_4E24,
    -5.038_778_101_481_068_9E26,
    3.652_877_648_481_812_3E28,
    -2.849_876_930_245_088_2E30,
    2.386_542_749_968_362_8E32,
    -2.139_994_925_722_533_4E34,
];

/// B_{2k}/(2k)!, k = 1..=30.
pub(crate) const BERNOULLI_2K_OVER_FACT: [f64; 30] = [
    8.333_333_333_333_333_3E-2,
    -1.388_888_888_888_888_9E-3,
    3.306_878_306_878_306_9E-5,
    -8.267_195_767_195_767_2E-7,
    2.087_675_698_786_809_9E-8,
    -5.284_190_138_687_493_2E-10,
    1.338_253_653_068_467_9E-11,
    -3.389_680_296_322_582_9E-13,
    8.586_062_056_277_844_6E-15,
    -2.174_868_698_558_061_9E-16,
    5.509_002_828_360_229_5E-18,
    -1.395_446_468_581_252_3E-19,
    3.534_707_039_629_467_5E-21,
    -8.953_517_427_037_546_9E-23,
    2.267_952_452_337_683_1E-24,
    -5.744_790_668_872_202_4E-26,
    1.455_172_475_614_864_9E-27,
    -3.685_994_940_665_310_2E-29,
    9.336_734_257_095_044_7E-31,
    -2.365_022_415_700_629_9E-32,
    5.990_671_762_482_134_3E-34,
    -1.517_454_884_468_290_3E-35,
    3.843_758_125_454_188_2E-37,
    -9.736_353_072_646_691E-39,
    2.466_247_044_200_681E-40,
    -6.247_076_741_820_743_7E-42,
    1.582_403_024_464_491_4E-43,
    -4.008_273_685_948_936E-45,
    1.015_307_585_556_955_6E-46,
    -2.571_804_158_241_871_7E-48,
];

const STIRLING_MIN_ABS: f64 = 15.0;
const STIRLING_TERMS: usize = 12;

fn check_pole<T: Real>(z: Cx<T>) -> Result<()> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::Domain(format!(
            "gamma pole at z = {}",
            z.re.to_f64_lossy()
        )));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    Ok(())
}

/// Number of unit shifts moving `z` into the Stirling region.
fn shift_count<T: Real>(z: Cx<T>) -> usize {
    let mut w = z;
    let mut m = 0;
    while w.norm() < T::lit(STIRLING_MIN_ABS) || w.re < T::one() {
        w.re += T::one();
        m += 1;
    }
    m
}

/// log Γ(z) on the branch continuous in the plane cut along the negative
/// real axis, real for z > 0. Uses log Γ(z) = log Γ(z+m) − Σ_{k<m} log(z+k)
/// with principal logs, which preserves that branch.
pub fn log_gamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    check_pole(z)?;
    let m = shift_count(z);
    let mut w = z;
    let mut shift = cx(T::zero(), T::zero());
    for _ in 0..m {
        shift += w.ln();
        w.re += T::one();
    }
    let half = T::lit(0.5);
    let mut s = (w - half) * w.ln() - w + half * (T::two_pi()).ln();
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let mut p = w_inv;
    for k in 1..=STIRLING_TERMS {
        let c = T::lit(BERNOULLI_2K[k - 1]) / T::from_usize_lossy((2 * k) * (2 * k - 1));
        s += p * c;
        p *= w_inv2;
    }
    Ok(s - shift)
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma<T: Real>(z: Cx<T>) -> Result<Cx<T>> {
    check_pole(z)?;
    let m = shift_count(z);
    let mut w = z;
    let mut shift = cx(T::zero(), T::zero());
    for _ in 0..m {
        shift += w.inv();
        w.re += T::one();
    }
    let w_inv = w.inv();
    let w_inv2 = w_inv * w_inv;
    let mut s = w.ln() - w_inv * T::lit(0.5);
    let mut p = w_inv2;
    for k in 1..=STIRLING_TERMS {
        s -= p * (T::lit(BERNOULLI_2K[k - 1]) / T::from_usize_lossy(2 * k));
        p *= w_inv2;
    }
    Ok(s - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn log_gamma_reference_values() {
        assert_eq!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15, true);
        let g = log_gamma(c(0.25, 0.0)).unwrap().exp();
        assert!((g.re - 3.625_609_908_221_908_3).abs() < 1e-14);
        // mpmath.loggamma, 30 digits
        let cases = [
            (c(0.25, 7.0), c(-10.562_953_339_040_002, 6.230_160_500_529_651)),
            (c(-3.7, 0.2), c(-1.636_433_092_562_456_4, -12.663_282_679_635_772)),
            (c(-20.5, -3.0), c(-51.225_303_676_603_397, 56.829_458_531_801_58)),
            (c(0.25, 500.0), c(-786.032_876_857_599_2, 2_606.911_370_962_731_6)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            assert!((got - want).norm() < 2e-12 * want.norm().max(1.0), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn poles_are_domain_errors() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Domain(_))));
            assert!(matches!(digamma(c(n, 0.0)), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn digamma_reference_and_asymptotics() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler).abs() < 1e-14);
        let z = 50.0f64;
        let asym = z.ln() - 1.0 / (2.0 * z) - 1.0 / (12.0 * z * z);
        assert!((digamma(c(z, 0.0)).unwrap().re - asym).abs() < 1e-6);
        // mpmath.digamma(0.25+10j)
        let d = digamma(c(0.25, 10.0)).unwrap();
        assert!((d - c(2.302_480_880_694_233_8, 1.595_812_001_000_744_1)).norm() < 1e-13);
    }

    #[test]
    fn single_precision_log_gamma() {
        let g = log_gamma(Cx::new(0.25f32, 0.0)).unwrap().exp();
        assert!((g.re - 3.625_61).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn recurrence_holds(re in -30.0f64..30.0, im in 0.1f64..60.0) {
            let z = c(re, im);
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            prop_assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0));
        }

        #[test]
        fn conjugate_symmetry(re in -30.0f64..30.0, im in 0.1f64..60.0) {
            let z = c(re, im);
            let a = log_gamma(z).unwrap();
            let b = log_gamma(z.conj()).unwrap();
            prop_assert!((a - b.conj()).norm() < 1e-12 * a.norm().max(1.0));
        }

        #[test]
        fn digamma_is_derivative(re in 0.5f64..20.0, im in -20.0f64..20.0) {
            let z = c(re, im);
            let h = 1e-5;
            let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
            prop_assert!((digamma(z).unwrap() - fd).norm() < 1e-7);
        }
    }
}
