//! Sign-change root location on a sampling grid, and nearest-neighbour
//! pairing of two zero lists.

use crate::error::{Error, Result};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList<T> {
    pub zeros: Vec<T>,
    /// True when `max_count` stopped the scan before the end of the range.
    pub truncated: bool,
}

impl<T> ZeroList<T> {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// Scans `[lo, hi]` with spacing at most `step`, brackets every sign change
/// and bisects it down to width `xtol`. A sample that is exactly zero is
/// reported as a root. Roots closer together than `step` may be missed.
pub fn find_zeros<T, F>(
    mut f: F,
    lo: T,
    hi: T,
    step: T,
    xtol: T,
    max_count: usize,
) -> Result<ZeroList<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(step > T::zero()) {
        return Err(Error::Grid("sampling step must be positive".into()));
    }
    let mut out = ZeroList {
        zeros: Vec::new(),
        truncated: false,
    };
    if hi <= lo || max_count == 0 {
        return Ok(out);
    }
    let mut eval = |x: T| -> Result<T> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("f({}) = {}", x.to_f64_lossy(), v)))
        }
    };
    let n = ((hi - lo) / step).ceil().to_usize().unwrap_or(1).max(1);
    let h = (hi - lo) / T::from_usize_lossy(n);
    let mut a = lo;
    let mut fa = eval(a)?;
    if fa == T::zero() {
        out.zeros.push(a);
    }
    for i in 1..=n {
        let b = if i == n { hi } else { lo + h * T::from_usize_lossy(i) };
        let fb = eval(b)?;
        if fb == T::zero() {
            out.zeros.push(b);
        } else if fa != T::zero() && (fa < T::zero()) != (fb < T::zero()) {
            out.zeros.push(bisect(&mut eval, a, b, fa, xtol)?);
        }
        if out.zeros.len() >= max_count {
            out.zeros.truncate(max_count);
            out.truncated = i < n;
            return Ok(out);
        }
        a = b;
        fa = fb;
    }
    Ok(out)
}

/// Bisection on a bracket with `f(a) = fa` of opposite sign to `f(b)`.
pub fn bisect<T, F>(f: &mut F, mut a: T, mut b: T, mut fa: T, xtol: T) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    for _ in 0..200 {
        let m = (a + b) * T::lit(0.5);
        if (b - a).abs() <= xtol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m)?;
        if fm == T::zero() {
            return Ok(m);
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok((a + b) * T::lit(0.5))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroMatching<T> {
    /// `(reference, candidate)` pairs sorted by reference position.
    pub pairs: Vec<(T, T)>,
    pub unpaired_reference: Vec<T>,
    pub unpaired_candidate: Vec<T>,
}

impl<T: Real> ZeroMatching<T> {
    /// Largest `|candidate - reference|` over the pairs (zero if none).
    pub fn max_displacement(&self) -> T {
        self.pairs
            .iter()
            .fold(T::zero(), |m, (r, c)| m.max((*c - *r).abs()))
    }
}

/// Greedy nearest-neighbour pairing: closest pairs are fixed first and each
/// zero is used at most once. Pairs farther apart than `cap` are not formed.
pub fn match_zeros<T: Real>(reference: &[T], candidate: &[T], cap: T) -> ZeroMatching<T> {
    let mut edges: Vec<(T, usize, usize)> = Vec::new();
    for (i, r) in reference.iter().enumerate() {
        for (j, c) in candidate.iter().enumerate() {
            let d = (*c - *r).abs();
            if d <= cap {
                edges.push((d, i, j));
            }
        }
    }
    edges.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut used_r = vec![false; reference.len()];
    let mut used_c = vec![false; candidate.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in edges {
        if !used_r[i] && !used_c[j] {
            used_r[i] = true;
            used_c[j] = true;
            pairs.push((reference[i], candidate[j]));
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    ZeroMatching {
        pairs,
        unpaired_reference: reference
            .iter()
            .zip(&used_r)
            .filter(|(_, u)| !**u)
            .map(|(r, _)| *r)
            .collect(),
        unpaired_candidate: candidate
            .iter()
            .zip(&used_c)
            .filter(|(_, u)| !**u)
            .map(|(c, _)| *c)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root_exact() {
        let z = find_zeros(|x: f64| Ok(3.0 * x - 1.0), -2.0, 2.0, 0.3, 1e-14, 10).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z.zeros[0] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn sine_roots_and_truncation() {
        let z = find_zeros(|x: f64| Ok(x.sin()), 0.5, 20.0, 0.1, 1e-12, 100).unwrap();
        assert_eq!(z.len(), 6);
        for (k, r) in z.zeros.iter().enumerate() {
            assert!((r - (k as f64 + 1.0) * std::f64::consts::PI).abs() < 1e-11);
        }
        let t = find_zeros(|x: f64| Ok(x.sin()), 0.5, 20.0, 0.1, 1e-12, 2).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.truncated);
    }

    #[test]
    fn empty_range_and_non_finite() {
        assert!(find_zeros(|x: f64| Ok(x), 1.0, 1.0, 0.1, 1e-10, 5)
            .unwrap()
            .is_empty());
        let e = find_zeros(|x: f64| Ok(1.0 / (x - 0.537)), 0.0, 1.0, 0.1, 1e-10, 5);
        assert!(e.is_ok());
        let e = find_zeros(|x: f64| Ok((x - 0.5).ln()), 0.0, 1.0, 0.1, 1e-10, 5);
        assert!(matches!(e, Err(Error::NonFinite(_))));
    }

    #[test]
    fn matching_reports_unpaired() {
        let m = match_zeros(&[1.0f64, 2.0, 5.0], &[1.05, 2.3, 9.0], 0.5);
        assert_eq!(m.pairs, vec![(1.0, 1.05), (2.0, 2.3)]);
        assert_eq!(m.unpaired_reference, vec![5.0]);
        assert_eq!(m.unpaired_candidate, vec![9.0]);
        assert!((m.max_displacement() - 0.3).abs() < 1e-15);
    }
}
