//! Power series of the radial hydrogen problem
//! `u'' = (1 - xi/rho + L(L+1)/rho^2) u`, `u = rho^(L+1) e^(-rho) F(rho)`,
//! `F = sum c_n rho^n`, with
//! `c_{n+1} = c_n (2(n + L + 1) - xi) / ((n + 1)(n + 2L + 2))`.
//!
//! In the units of [`crate::numerov::RadialCoulomb`] (`-u'' - k u / r = E u`)
//! the map is `rho = sqrt(-E) r` and `xi = k / sqrt(-E)`, so termination at
//! `xi = 2(N + L + 1)` is the level `E = -k^2 / (4 (N + L + 1)^2)`.
//!
//! A non-terminating series grows like
//! `c0 Gamma(2L+2)/Gamma(L+1-xi/2) e^(2 rho) (2 rho)^(-xi/2-L-1)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;
use crate::special::{is_gamma_pole, ln_gamma, SpecialError};
use crate::weber::CoeffRoute;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum HydrogenError {
    #[error("xi = {xi} terminates the series for L = {l}; the growth law does not apply")]
    Terminating { xi: f64, l: u32 },
    #[error("argument out of range: {0}")]
    Domain(&'static str),
    #[error("c_{{N+1}} = {value} is not zero at xi = {xi}")]
    NoTermination { xi: f64, value: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn real<T: Real>(n: usize) -> T {
    T::from_usize_lossy(n)
}

/// One step of the coefficient recurrence: `c_{n+1}` from `c_n`.
pub fn radial_recurrence<T: Real>(c_n: T, n: usize, l: u32, xi: T) -> T {
    let (nf, lf) = (real::<T>(n), real::<T>(l as usize));
    let two = T::lit(2.0);
    c_n * (-xi + two * lf + two + two * nf) / ((nf + T::one()) * (two * lf + two + nf))
}

/// `a = L + 1 - xi/2`, the Pochhammer base of the closed form.
fn pochhammer_base<T: Real>(l: u32, xi: T) -> T {
    real::<T>(l as usize) + T::one() - xi * T::lit(0.5)
}

/// Whether `xi = 2(N + L + 1)` for some integer `N >= 0`.
pub fn is_terminating<T: Real>(l: u32, xi: T) -> bool {
    let a = pochhammer_base(l, xi);
    a <= T::zero() && a == a.round()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCoefficient<T> {
    pub value: T,
    pub route: CoeffRoute,
}

/// `c_n = c0 (2^n/n!) Gamma(2L+2)/Gamma(a) Gamma(a+n)/Gamma(2L+n+2)` with
/// `a = L + 1 - xi/2`, in log space. At terminating `xi` the Gamma ratio is
/// `0/0`-like and the recurrence is used instead.
pub fn radial_coeff_closed<T: Real>(n: usize, l: u32, xi: T, c0: T) -> RadialCoefficient<T> {
    if n == 0 {
        return RadialCoefficient {
            value: c0,
            route: CoeffRoute::ClosedForm,
        };
    }
    let a = pochhammer_base(l, xi);
    let nf = real::<T>(n);
    let l2 = real::<T>(2 * l as usize);
    if c0 == T::zero() {
        return RadialCoefficient {
            value: T::zero(),
            route: CoeffRoute::ClosedForm,
        };
    }
    if is_gamma_pole(a) || is_gamma_pole(a + nf) {
        return RadialCoefficient {
            value: iterate(c0, 0, n, l, xi),
            route: CoeffRoute::RecurrenceFallback,
        };
    }
    let parts = (|| -> Result<(T, bool), SpecialError> {
        let g_a = ln_gamma(a)?;
        let g_an = ln_gamma(a + nf)?;
        let ln = nf * T::LN_2() - ln_gamma(nf + T::one())?.ln_abs + ln_gamma(l2 + T::lit(2.0))?.ln_abs
            - g_a.ln_abs
            + g_an.ln_abs
            - ln_gamma(l2 + nf + T::lit(2.0))?.ln_abs;
        Ok((ln, g_a.negative != g_an.negative))
    })();
    match parts {
        Ok((ln, negative)) => {
            let mag = c0.abs() * ln.exp();
            let neg = negative != (c0 < T::zero());
            RadialCoefficient {
                value: if neg { -mag } else { mag },
                route: CoeffRoute::ClosedForm,
            }
        }
        Err(_) => RadialCoefficient {
            value: iterate(c0, 0, n, l, xi),
            route: CoeffRoute::RecurrenceFallback,
        },
    }
}

fn iterate<T: Real>(c: T, from: usize, to: usize, l: u32, xi: T) -> T {
    (from..to).fold(c, |c, n| radial_recurrence(c, n, l, xi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSeries<T> {
    pub l: u32,
    pub xi: T,
    pub c0: T,
    pub c: Vec<T>,
}

impl<T: Real> RadialSeries<T> {
    /// The first `count` coefficients by recurrence.
    pub fn new(l: u32, xi: T, c0: T, count: usize) -> Self {
        let mut c = Vec::with_capacity(count);
        let mut cur = c0;
        for n in 0..count {
            c.push(cur);
            cur = radial_recurrence(cur, n, l, xi);
        }
        Self { l, xi, c0, c }
    }

    pub fn is_terminating(&self) -> bool {
        is_terminating(self.l, self.xi)
    }
}

/// `F(rho)` against the growth law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialAsymptotic<T> {
    pub rho: T,
    pub ln_series: T,
    pub ln_predicted: T,
    /// `Gamma(2L+2) / Gamma(L+1-xi/2)`, the amplitude of the growth law.
    pub prefactor: T,
    /// `F(rho) / (c0 e^(2 rho) (2 rho)^(-xi/2-L-1))`.
    pub ratio: T,
    /// `ratio / prefactor`, which tends to one.
    pub normalized_ratio: T,
    pub terms: usize,
}

impl<T: Real> RadialAsymptotic<T> {
    pub fn series_value(&self) -> T {
        self.ratio.signum() * self.ln_series.exp()
    }

    pub fn predicted(&self) -> T {
        self.ln_predicted.exp()
    }

    /// `ln |u(rho)|` for `u = rho^(L+1) e^(-rho) F(rho)`.
    pub fn ln_wavefunction(&self, l: u32) -> T {
        real::<T>(l as usize + 1) * self.rho.ln() - self.rho + self.ln_series
    }
}

/// Sums `F(rho)` to `n = 2 rho + 40 sqrt(2 rho) + 100` in log space and
/// compares it with `c0 e^(2 rho) (2 rho)^(-xi/2-L-1)`.
pub fn radial_asymptotic<T: Real>(
    rho: T,
    l: u32,
    xi: T,
    c0: T,
) -> Result<RadialAsymptotic<T>, HydrogenError> {
    if is_terminating(l, xi) {
        return Err(HydrogenError::Terminating {
            xi: xi.to_f64_lossy(),
            l,
        });
    }
    if !(rho >= T::one()) || !rho.is_finite() {
        return Err(HydrogenError::Domain("rho must be at least 1"));
    }
    if !(c0 > T::zero()) {
        return Err(HydrogenError::Domain("c0 must be positive"));
    }
    let two_rho = T::lit(2.0) * rho;
    let terms = (two_rho + T::lit(40.0) * two_rho.sqrt() + T::lit(100.0))
        .ceil()
        .to_usize()
        .ok_or(HydrogenError::Domain("rho too large"))?;

    // ln |c_n rho^n| by the recurrence in log form (signs tracked separately)
    let mut logs = Vec::with_capacity(terms + 1);
    let mut signs = Vec::with_capacity(terms + 1);
    let (mut ln_c, mut neg) = (c0.ln(), false);
    let ln_rho = rho.ln();
    for n in 0..=terms {
        logs.push(ln_c + real::<T>(n) * ln_rho);
        signs.push(neg);
        let step = radial_recurrence(T::one(), n, l, xi);
        ln_c = ln_c + step.abs().ln();
        neg ^= step < T::zero();
    }
    let shift = logs.iter().fold(T::neg_infinity(), |m, v| m.max(*v));
    let mut acc = crate::scalar::CompensatedSum::new();
    for (lv, s) in logs.iter().zip(&signs) {
        let v = (*lv - shift).exp();
        acc.add(if *s { -v } else { v });
    }
    let sum = acc.value();
    let ln_series = shift + sum.abs().ln();
    let ln_predicted = c0.ln() + two_rho - (xi * T::lit(0.5) + real::<T>(l as usize) + T::one()) * two_rho.ln();
    let ratio = sum.signum() * (ln_series - ln_predicted).exp();
    let prefactor = growth_prefactor(l, xi)?;
    Ok(RadialAsymptotic {
        rho,
        ln_series,
        ln_predicted,
        prefactor,
        ratio,
        normalized_ratio: ratio / prefactor,
        terms: terms + 1,
    })
}

/// `Gamma(2L+2) / Gamma(L+1-xi/2)`; zero at terminating `xi`.
pub fn growth_prefactor<T: Real>(l: u32, xi: T) -> Result<T, HydrogenError> {
    let a = pochhammer_base(l, xi);
    if is_gamma_pole(a) {
        return Ok(T::zero());
    }
    let num = ln_gamma(real::<T>(2 * l as usize + 2))?;
    let den = ln_gamma(a)?;
    let v = (num.ln_abs - den.ln_abs).exp();
    Ok(if den.negative { -v } else { v })
}

/// `c_n / (c0 2^n/n! n^(-xi/2-L-1))`, which tends to [`growth_prefactor`].
/// Evaluated in log space since `c_n` itself underflows for large `n`.
pub fn coefficient_growth_ratio<T: Real>(n: usize, l: u32, xi: T) -> Result<T, HydrogenError> {
    if n == 0 {
        return Err(HydrogenError::Domain("n must be positive"));
    }
    let a = pochhammer_base(l, xi);
    let nf = real::<T>(n);
    let b = real::<T>(2 * l as usize + 2);
    let k = growth_prefactor(l, xi)?;
    if k == T::zero() {
        return Ok(T::zero());
    }
    let g_an = ln_gamma(a + nf)?;
    let ln = g_an.ln_abs - ln_gamma(b + nf)?.ln_abs + (b - a) * nf.ln();
    let v = k * ln.exp();
    Ok(if g_an.negative { -v } else { v })
}

/// `xi = 2(N + L + 1)`, checked to zero `c_{N+1}` exactly.
pub fn quantization_check<T: Real>(l: u32, radial: u32) -> Result<T, HydrogenError> {
    let xi = T::lit(2.0) * real::<T>(radial as usize + l as usize + 1);
    let c = iterate(T::one(), 0, radial as usize + 1, l, xi);
    if c != T::zero() {
        return Err(HydrogenError::NoTermination {
            xi: xi.to_f64_lossy(),
            value: c.to_f64_lossy(),
        });
    }
    Ok(xi)
}

/// `xi` for a bound energy `E < 0` of `-u'' - k u / r = E u`.
pub fn xi_from_energy<T: Real>(k: T, energy: T) -> T {
    k / (-energy).sqrt()
}

pub fn energy_from_xi<T: Real>(k: T, xi: T) -> T {
    -(k / xi).powi(2)
}
