//! Large-argument behaviour of `S(w) = sum_{n>=1} n^(-r) w^n / n!` and the
//! partial sums `T(w, n1, n2) = e^(-w) sum_{n=n1}^{n2} (w/n)^r w^n / n!`.
//!
//! The coefficients `w^n/n!` form a Gaussian of width `sqrt(w)` around
//! `n = w`, so `n^(-r)` may be replaced by `w^(-r)` there and
//! `w^r e^(-w) S(w) = T(w, 1, inf) -> 1`. Every sum is accumulated in log
//! space relative to its largest term.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{CompensatedSum, Real};
use crate::special::{ln_gamma, SpecialError};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum AsymptoticError {
    #[error("argument out of range: {0}")]
    Domain(&'static str),
    #[error("sum not converged after {max_terms} terms")]
    TermCap { max_terms: usize },
    #[error("sandwich violated: {lower} <= {total} <= {upper} fails")]
    SandwichViolated { lower: f64, total: f64, upper: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
}

pub const MAX_TERMS: usize = 1_000_000;

/// `ln(w^n / n!)`.
fn ln_poisson_weight<T: Real>(omega: T, n: u64) -> Result<T, SpecialError> {
    let nf = T::from_u64(n).expect("term index representable");
    Ok(nf * omega.ln() - ln_gamma(nf + T::one())?.ln_abs)
}

/// Exact and Gaussian forms of `c_n(w) = w^n / n!`, kept as logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPeak<T> {
    pub ln_exact: T,
    pub ln_gaussian: T,
}

impl<T: Real> CoefficientPeak<T> {
    /// `None` when the value does not fit the scalar type.
    pub fn exact(&self) -> Option<T> {
        finite_exp(self.ln_exact)
    }

    pub fn gaussian(&self) -> Option<T> {
        finite_exp(self.ln_gaussian)
    }

    pub fn ratio(&self) -> T {
        (self.ln_exact - self.ln_gaussian).exp()
    }
}

fn finite_exp<T: Real>(x: T) -> Option<T> {
    let v = x.exp();
    v.is_finite().then_some(v)
}

/// `w^n/n!` against `e^w / sqrt(2 pi w) exp(-(n - w)^2 / (2w))`.
pub fn coefficient_peak<T: Real>(omega: T, n: u64) -> Result<CoefficientPeak<T>, AsymptoticError> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(AsymptoticError::Domain("omega must be positive"));
    }
    let ln_exact = ln_poisson_weight(omega, n)?;
    let d = T::from_u64(n).expect("representable") - omega;
    let ln_gaussian =
        omega - T::lit(0.5) * (T::lit(2.0) * T::PI() * omega).ln() - d * d / (T::lit(2.0) * omega);
    Ok(CoefficientPeak {
        ln_exact,
        ln_gaussian,
    })
}

/// Upper summation limit of a partial sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UpperLimit {
    Finite(u64),
    /// Realized as `n2 = w + 40 sqrt(w)`, far past the Gaussian peak.
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSumSpec {
    pub n1: u64,
    pub n2: UpperLimit,
}

impl PartialSumSpec {
    pub fn new(n1: u64, n2: UpperLimit) -> Result<Self, AsymptoticError> {
        if n1 < 1 {
            return Err(AsymptoticError::Domain("n1 must be at least 1"));
        }
        if let UpperLimit::Finite(n2) = n2 {
            if n2 < n1 {
                return Err(AsymptoticError::Domain("n1 must not exceed n2"));
            }
        }
        Ok(Self { n1, n2 })
    }

    pub fn full() -> Self {
        Self {
            n1: 1,
            n2: UpperLimit::Infinity,
        }
    }

    pub fn resolve<T: Real>(&self, omega: T) -> u64 {
        match self.n2 {
            UpperLimit::Finite(n) => n,
            UpperLimit::Infinity => infinity_cutoff(omega).max(self.n1),
        }
    }
}

pub fn infinity_cutoff<T: Real>(omega: T) -> u64 {
    (omega + T::lit(40.0) * omega.sqrt()).ceil().to_u64().unwrap_or(u64::MAX)
}

/// `ln sum_{n=n1}^{n2} exp(f(n))` with a max shift.
fn log_sum<T: Real>(
    n1: u64,
    n2: u64,
    f: impl Fn(u64) -> Result<T, SpecialError>,
) -> Result<T, AsymptoticError> {
    if n2 < n1 {
        return Ok(T::neg_infinity());
    }
    let count = (n2 - n1 + 1) as usize;
    if count > MAX_TERMS {
        return Err(AsymptoticError::TermCap { max_terms: MAX_TERMS });
    }
    let logs = (n1..=n2).map(&f).collect::<Result<Vec<T>, _>>()?;
    let shift = logs.iter().fold(T::neg_infinity(), |m, v| m.max(*v));
    if shift == T::neg_infinity() {
        return Ok(shift);
    }
    let sum: CompensatedSum<T> = logs.iter().map(|v| (*v - shift).exp()).collect();
    Ok(shift + sum.value().ln())
}

/// `T(w, n1, n2) = e^(-w) sum (w/n)^r w^n / n!`.
pub fn partial_sum_t<T: Real>(omega: T, r: T, spec: PartialSumSpec) -> Result<T, AsymptoticError> {
    Ok(ln_partial_sum_t(omega, r, spec)?.exp())
}

pub fn ln_partial_sum_t<T: Real>(omega: T, r: T, spec: PartialSumSpec) -> Result<T, AsymptoticError> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(AsymptoticError::Domain("omega must be positive"));
    }
    if !r.is_finite() {
        return Err(AsymptoticError::Domain("r must be finite"));
    }
    let n2 = spec.resolve(omega);
    let ln_w = omega.ln();
    log_sum(spec.n1, n2, |n| {
        let nf = T::from_u64(n).expect("representable");
        Ok(r * (ln_w - nf.ln()) + ln_poisson_weight(omega, n)? - omega)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport<T> {
    pub omega: T,
    pub r: T,
    /// `w^r e^(-w) S(w)`.
    pub normalized_ratio: T,
    pub ln_s: T,
    pub terms_used: usize,
}

/// Sums `S(w)` from `n = 1` until the remaining tail is below `1e-18` of the sum.
pub fn series_s<T: Real>(omega: T, r: T) -> Result<AsymptoticReport<T>, AsymptoticError> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(AsymptoticError::Domain("omega must be positive"));
    }
    if !r.is_finite() {
        return Err(AsymptoticError::Domain("r must be finite"));
    }
    let ln_w = omega.ln();
    let ln_term = |n: u64| -> Result<T, SpecialError> {
        let nf = T::from_u64(n).expect("representable");
        Ok(ln_poisson_weight(omega, n)? - r * nf.ln())
    };
    // the peak of n^(-r) w^n/n! lies within a few widths of w
    let mut n2 = infinity_cutoff(omega).max(8);
    loop {
        if n2 as usize > MAX_TERMS {
            return Err(AsymptoticError::TermCap { max_terms: MAX_TERMS });
        }
        let ln_sum = log_sum(1, n2, ln_term)?;
        let n_next = T::from_u64(n2 + 1).expect("representable");
        // successive term ratio beyond n2 is below q; bound the tail geometrically
        let q = omega / n_next;
        let ln_last = ln_term(n2)?;
        let tail_ok = q < T::lit(0.9)
            && ln_last + ln_w - n_next.ln() - (T::one() - q).ln() - ln_sum < T::lit(-18.0) * T::LN_10();
        if tail_ok {
            return Ok(AsymptoticReport {
                omega,
                r,
                normalized_ratio: (ln_sum + r * ln_w - omega).exp(),
                ln_s: ln_sum,
                terms_used: n2 as usize,
            });
        }
        n2 *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichRecord<T> {
    pub lower: T,
    pub upper: T,
    /// `T(w, 1, inf)`.
    pub total: T,
    /// `T(w, 1, [lambda w])`.
    pub head_vanishes: T,
    /// `e^(-w) sum_{n > [sigma w]} w^n / n!`.
    pub tail_vanishes: T,
}

impl<T: Real> SandwichRecord<T> {
    pub fn holds(&self) -> bool {
        self.lower <= self.total && self.total <= self.upper
    }

    pub fn width(&self) -> T {
        self.upper - self.lower
    }
}

/// Bounds on `T(w, 1, inf)` for `r > 0`: splitting at `[lambda w]` gives
/// `T <= T(w, 1, [lambda w]) + lambda^(-r)`, and `(w/n)^r >= sigma^(-r)` for
/// `n <= [sigma w]` gives `T >= sigma^(-r) e^(-w) sum_{1}^{[sigma w]} w^n/n!`.
pub fn sandwich_check<T: Real>(
    omega: T,
    r: T,
    lambda: T,
    sigma: T,
) -> Result<SandwichRecord<T>, AsymptoticError> {
    if !(r > T::zero()) {
        return Err(AsymptoticError::Domain("the sandwich bounds need r > 0"));
    }
    if !(lambda > T::zero() && lambda < T::one()) {
        return Err(AsymptoticError::Domain("lambda must lie in (0, 1)"));
    }
    if !(sigma > T::one()) || !sigma.is_finite() {
        return Err(AsymptoticError::Domain("sigma must exceed 1"));
    }
    let split_lo = (lambda * omega).floor().to_u64().unwrap_or(0);
    let split_hi = (sigma * omega).floor().to_u64().unwrap_or(0).max(1);
    let total = partial_sum_t(omega, r, PartialSumSpec::full())?;
    let head = if split_lo >= 1 {
        partial_sum_t(omega, r, PartialSumSpec::new(1, UpperLimit::Finite(split_lo))?)?
    } else {
        T::zero()
    };
    let poisson = |n1: u64, n2: u64| -> Result<T, AsymptoticError> {
        Ok(log_sum(n1, n2, |n| Ok(ln_poisson_weight(omega, n)? - omega))?.exp())
    };
    let body = poisson(1, split_hi)?;
    let far = infinity_cutoff(omega).max(split_hi + 1);
    let tail = poisson(split_hi + 1, far)?;
    let record = SandwichRecord {
        lower: sigma.recip().powf(r) * body,
        upper: head + lambda.recip().powf(r),
        total,
        head_vanishes: head,
        tail_vanishes: tail,
    };
    if !record.holds() {
        return Err(AsymptoticError::SandwichViolated {
            lower: record.lower.to_f64_lossy(),
            total: total.to_f64_lossy(),
            upper: record.upper.to_f64_lossy(),
        });
    }
    Ok(record)
}
