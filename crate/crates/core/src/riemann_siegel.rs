//! Main sum of the Riemann–Siegel formula for −Z(ω), without the remainder.

use crate::error::Result;
use crate::grid::FrequencyGrid;
use crate::real::{cx, Real};
use crate::roots::{find_zeros, match_zeros, ZeroMatching};
use crate::special::{big_z, log_gamma, scaling_s, xi_zeta, QuadratureConfig};

/// arg Γ(¼ + iω/2) on the branch continuous from arg Γ(¼) = 0.
pub fn rs_phase<T: Real>(omega: T) -> T {
    log_gamma(cx(T::lit(0.25), omega * T::lit(0.5))).map_or(T::nan(), |l| l.im)
}

/// Number of terms, #{N ≥ 1 : 2πN² < ω}.
pub fn rs_term_count<T: Real>(omega: T) -> usize {
    let mut n = 0usize;
    while T::two_pi() * T::from_usize_lossy((n + 1) * (n + 1)) < omega {
        n += 1;
    }
    n
}

/// Frequencies 2πN² in (lo, hi] where the main sum gains a term.
pub fn rs_jumps<T: Real>(lo: T, hi: T) -> Vec<T> {
    (1..)
        .map(|n: usize| T::two_pi() * T::from_usize_lossy(n * n))
        .skip_while(|w| *w <= lo)
        .take_while(|w| *w <= hi)
        .collect()
}

/// 2 Σ_{1 ≤ N < √(ω/2π)} N^{−1/2} cos(arg Γ(¼ + iω/2) − (ω/2) log πN² + π).
pub fn rs_main_sum<T: Real>(omega: T) -> T {
    let n = rs_term_count(omega);
    if n == 0 {
        return T::zero();
    }
    let phase = rs_phase(omega);
    let half = omega * T::lit(0.5);
    let ln_pi = T::PI().ln();
    let sum = (1..=n).fold(T::zero(), |acc, k| {
        let kk = T::from_usize_lossy(k);
        acc + kk.sqrt().recip() * (phase - half * (ln_pi + T::lit(2.0) * kk.ln()) + T::PI()).cos()
    });
    T::lit(2.0) * sum
}

/// Paired series and zero comparison between S·ξ and the main sum.
#[derive(Debug, Clone, PartialEq)]
pub struct RsComparison<T> {
    pub omega: Vec<T>,
    pub s_xi: Vec<T>,
    pub rs: Vec<T>,
    /// Zeros of Z (equivalently of ξ) in the grid range.
    pub reference_zeros: Vec<T>,
    /// Zeros of the main sum, excluding sign changes at the jumps.
    pub rs_zeros: Vec<T>,
    /// Sign changes of the main sum that happen across a jump.
    pub jump_sign_changes: Vec<T>,
    pub matching: ZeroMatching<T>,
    pub max_displacement: T,
}

/// Nearest-neighbour pairing cap for zero lists.
pub const RS_MATCH_CAP: f64 = 0.5;

/// Evaluates both series on the grid and compares their zeros over
/// [first, last] grid point, scanning at the grid's largest gap.
pub fn rs_compare<T: Real>(grid: &FrequencyGrid<T>, cfg: &QuadratureConfig<T>) -> Result<RsComparison<T>> {
    let pts = grid.points();
    let mut s_xi = Vec::with_capacity(pts.len());
    let mut rs = Vec::with_capacity(pts.len());
    for w in pts {
        s_xi.push(scaling_s(*w) * xi_zeta(cx(*w, T::zero()), cfg)?.re);
        rs.push(rs_main_sum(*w));
    }
    let empty = || RsComparison {
        omega: pts.to_vec(),
        s_xi: s_xi.clone(),
        rs: rs.clone(),
        reference_zeros: Vec::new(),
        rs_zeros: Vec::new(),
        jump_sign_changes: Vec::new(),
        matching: match_zeros(&[], &[], T::lit(RS_MATCH_CAP)),
        max_displacement: T::zero(),
    };
    if pts.len() < 2 {
        return Ok(empty());
    }
    let (lo, hi) = (pts[0], pts[pts.len() - 1]);
    let step = grid.max_step().min(T::lit(0.05));
    let xtol = T::epsilon().sqrt() * T::lit(1e-3) * hi.max(T::one());
    let reference_zeros = find_zeros(|w| big_z(w, cfg), lo, hi, step, xtol, usize::MAX)?.zeros;
    let jumps = rs_jumps(lo, hi);
    let crossings = find_zeros(|w| Ok(rs_main_sum(w)), lo, hi, step, xtol, usize::MAX)?.zeros;
    let near_jump = |z: &T| jumps.iter().any(|j| (*j - *z).abs() <= T::lit(4.0) * xtol);
    let (jump_sign_changes, rs_zeros): (Vec<T>, Vec<T>) = crossings.into_iter().partition(near_jump);
    let matching = match_zeros(&reference_zeros, &rs_zeros, T::lit(RS_MATCH_CAP));
    let max_displacement = matching.max_displacement();
    Ok(RsComparison {
        reference_zeros,
        rs_zeros,
        jump_sign_changes,
        matching,
        max_displacement,
        ..empty()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn phase_is_continuous_and_asymptotic() {
        assert_eq!(rs_phase(0.0f64), 0.0);
        let stirling = |w: f64| 0.5 * w * (w / (2.0 * std::f64::consts::E)).ln() - PI / 8.0;
        assert!((rs_phase(50.0) - stirling(50.0)).abs() < 0.01);
        let mut prev = rs_phase(0.0f64);
        for i in 1..=10_000 {
            let p = rs_phase(i as f64 * 0.01);
            assert!((p - prev).abs() < 0.05, "jump at {}", i as f64 * 0.01);
            prev = p;
        }
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(rs_main_sum(6.0f64), 0.0);
        assert_eq!(rs_term_count(100.0f64), 3);
        assert_eq!(rs_term_count(2.0 * PI * 4.0), 1);
        assert_eq!(rs_term_count(2.0 * PI * 4.0 + 1e-12), 2);
        let j = rs_jumps(0.0f64, 100.0);
        assert_eq!(j, vec![2.0 * PI, 8.0 * PI, 18.0 * PI]);
    }

    #[test]
    fn jump_size_at_onset() {
        for n in [2usize, 3] {
            let w = 2.0 * PI * (n * n) as f64;
            let before = rs_main_sum(w);
            let after = rs_main_sum(w * (1.0 + 1e-14));
            let nn = n as f64;
            let term = 2.0 / nn.sqrt() * (rs_phase(w) - 0.5 * w * (PI * nn * nn).ln() + PI).cos();
            assert!(((after - before) - term).abs() < 1e-9);
            assert!(term.abs() <= 2.0 / nn.sqrt());
        }
    }

    #[test]
    fn first_term_phase_matches_saddle_point() {
        let w = 80.0f64;
        let arg = rs_phase(w) - 0.5 * w * PI.ln() + PI;
        let saddle = 0.5 * w * (w / (2.0 * PI * std::f64::consts::E)).ln() + 7.0 * PI / 8.0;
        assert!((arg - saddle).abs() < 0.02);
    }

    #[test]
    fn main_sum_tracks_minus_z() {
        let cfg = QuadratureConfig::default();
        // Away from zeros the sign of the main sum is that of −Z.
        for w in [20.0f64, 35.0, 45.0, 70.0] {
            let z = big_z(w, &cfg).unwrap();
            if z.abs() > 0.5 {
                assert_eq!(rs_main_sum(w).signum(), -z.signum(), "{w}");
            }
        }
    }

    #[test]
    fn comparison_counts_and_pairs() {
        let cfg = QuadratureConfig::default();
        let grid = FrequencyGrid::range(2.0 * PI, 100.0, 0.05).unwrap();
        let c = rs_compare(&grid, &cfg).unwrap();
        assert_eq!(c.omega.len(), c.s_xi.len());
        assert_eq!(c.omega.len(), c.rs.len());
        // 29 zeros of ζ on the critical line below height 100.
        assert_eq!(c.reference_zeros.len(), 29);
        assert!((c.reference_zeros[0] - 14.134725141734695).abs() < 1e-8);
        assert!(c.max_displacement <= RS_MATCH_CAP);
        assert_eq!(
            c.matching.pairs.len() + c.matching.unpaired_reference.len(),
            c.reference_zeros.len()
        );
    }
}
