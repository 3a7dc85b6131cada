//! Bracketed root finding.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum BisectError {
    #[error("no sign change on [{a}, {b}]")]
    NoSignChange { a: f64, b: f64 },
    #[error("function is not finite at {x}")]
    NotFinite { x: f64 },
}

/// Bisection on `[a, b]` until the bracket is narrower than `tol` or
/// `max_iter` halvings were made. Returns the bracket midpoint.
pub fn bisect<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    tol: T,
    max_iter: usize,
) -> Result<T, BisectError> {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    for (x, v) in [(lo, f_lo), (hi, f_hi)] {
        if !v.is_finite() {
            return Err(BisectError::NotFinite { x: x.to_f64_lossy() });
        }
    }
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if (f_lo < T::zero()) == (f_hi < T::zero()) {
        return Err(BisectError::NoSignChange {
            a: lo.to_f64_lossy(),
            b: hi.to_f64_lossy(),
        });
    }
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if !fm.is_finite() {
            return Err(BisectError::NotFinite { x: mid.to_f64_lossy() });
        }
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_same_sign() {
        assert!(matches!(
            bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-10, 100),
            Err(BisectError::NoSignChange { .. })
        ));
    }
}
