use super::bessel::bessel_k;
use super::QuadratureConfig;
use crate::error::Result;
use crate::real::{cx, Real};

/// Which of Polya's approximations to ξ to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyaOrder {
    /// 4π²(K_{iω/2+9/4}(2π) + K_{iω/2−9/4}(2π))
    First,
    /// First order plus −6π(K_{iω/2+5/4}(2π) + K_{iω/2−5/4}(2π))
    Second,
}

/// Polya's ξ*(ω). The two orders in each pair are ν and −ν̄, whose K values
/// are complex conjugates for real z, so the result is twice a real part.
pub fn polya_fake_xi<T: Real>(omega: T, order: PolyaOrder, cfg: &QuadratureConfig<T>) -> Result<T> {
    let two_pi = T::two_pi();
    let pi = T::PI();
    let half_w = omega * T::lit(0.5);
    let pair = |shift: f64| -> Result<T> {
        let k = bessel_k(cx(T::lit(shift), half_w), two_pi, cfg)?;
        Ok(T::lit(2.0) * k.re)
    };
    let mut v = T::lit(4.0) * pi * pi * pair(2.25)?;
    if order == PolyaOrder::Second {
        v -= T::lit(6.0) * pi * pair(1.25)?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Cx;
    use std::f64::consts::PI;

    #[test]
    fn origin_is_twice_a_single_term() {
        let c = QuadratureConfig::default();
        let v = polya_fake_xi(0.0, PolyaOrder::First, &c).unwrap();
        let k = bessel_k(Cx::new(2.25, 0.0), 2.0 * PI, &c).unwrap().re;
        assert!((v - 8.0 * PI * PI * k).abs() < 1e-15 * v.abs());
        assert!((v - 0.105_028_996_939_772).abs() < 1e-13);
    }

    #[test]
    fn sum_of_conjugates_is_the_explicit_pair() {
        let c = QuadratureConfig::default();
        let w = 20.0;
        let a = bessel_k(Cx::new(2.25, w / 2.0), 2.0 * PI, &c).unwrap();
        let b = bessel_k(Cx::new(-2.25, w / 2.0), 2.0 * PI, &c).unwrap();
        let sum = (a + b) * (4.0 * PI * PI);
        assert!(sum.im.abs() < 1e-14 * sum.norm());
        let v = polya_fake_xi(w, PolyaOrder::First, &c).unwrap();
        assert!((v - sum.re).abs() < 1e-13 * sum.norm());
    }

    #[test]
    fn second_order_reference() {
        let c = QuadratureConfig::default();
        let p2 = polya_fake_xi(0.0f64, PolyaOrder::Second, &c).unwrap();
        assert!((p2 - 0.066_242_145_639_406_44).abs() < 1e-13);
    }
}
