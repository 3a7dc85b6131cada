//! Even/odd power series of the harmonic-wall equation
//! `psi'' + (E - y^2/4) psi = 0` and the decaying combination of them.
//!
//! With `psi(y) = exp(-y^2/4) [a0 S_even(y) + a1 S_odd(y)]` the coefficients obey
//! `a_{n+2} = a_n (n - E + 1/2) / ((n+1)(n+2))`. Both series grow like
//! `exp(y^2/2)` unless they terminate; the unique seed ratio
//! `a1/a0 = -sqrt(2) Gamma(3/4 - E/2) / Gamma(1/4 - E/2)` cancels that growth
//! and yields the parabolic cylinder function `D_{E-1/2}` up to normalization.
//!
//! The seeds are normalized as `a0 = 1/Gamma(3/4 - E/2)`,
//! `a1 = -sqrt(2)/Gamma(1/4 - E/2)`, which stays finite at every energy. This
//! differs from the textbook `D_nu(0) = 2^(nu/2) sqrt(pi)/Gamma((1-nu)/2)` by
//! the E-dependent factor `2^(nu/2) sqrt(pi)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{CompensatedSum, Real};
use crate::special::{self, ln_gamma, reciprocal_gamma, SignedLog, SpecialError};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum WeberError {
    #[error("series cancellation at y = {y} costs {digits:.1} digits, over the budget of {budget:.1}")]
    PrecisionLoss { y: f64, digits: f64, budget: f64 },
    #[error("evaluation point y = {y} must be finite and non-negative")]
    NegativeArgument { y: f64 },
    #[error("series did not converge within {max_terms} terms at y = {y}")]
    TermCap { y: f64, max_terms: usize },
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Dimensionless energy `E` (in units of the oscillator quantum).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Energy<T>(T);

impl<T: Real> Energy<T> {
    pub fn new(e: T) -> Result<Self, SpecialError> {
        if e.is_finite() {
            Ok(Self(e))
        } else {
            Err(SpecialError::Domain { x: e.to_f64_lossy() })
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// Weber order `sigma = E - 1/2`.
    #[inline]
    pub fn order(self) -> T {
        self.0 - T::lit(0.5)
    }

    /// `E = m + 1/2` with integer `m >= 0`, where one of the series is a polynomial.
    pub fn terminating_index(self) -> Option<u64> {
        let m = self.order();
        if m >= T::zero() && m == m.round() {
            m.to_u64()
        } else {
            None
        }
    }
}

/// Seeds `(a0, a1) = (D(0), D'(0))` of the decaying solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeberPair<T> {
    pub a0: T,
    pub a1: T,
}

impl<T: Real> WeberPair<T> {
    /// Projective ratio `a1/a0`.
    pub fn ratio(&self) -> ProjectiveRatio<T> {
        if self.a0 == T::zero() {
            ProjectiveRatio::Infinite
        } else {
            ProjectiveRatio::Finite(self.a1 / self.a0)
        }
    }
}

/// A real number or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ProjectiveRatio<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> ProjectiveRatio<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }
}

/// How the series sums are truncated and where the evaluation switches to the
/// leading asymptotic form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy<T> {
    /// Stop once `|term| < term_tol * (1 + |partial sum|)` ...
    pub term_tol: T,
    /// ... for this many consecutive terms past the peak term.
    pub consecutive: usize,
    pub max_terms: usize,
    pub y_switch: T,
    /// Largest tolerated cancellation (decimal digits) on the series side.
    pub max_cancellation_digits: T,
}

impl<T: Real> Default for SeriesPolicy<T> {
    fn default() -> Self {
        Self {
            term_tol: T::lit(1e-16),
            consecutive: 3,
            max_terms: 20_000,
            y_switch: T::lit(6.0),
            max_cancellation_digits: T::lit(10.0),
        }
    }
}

impl<T: Real> SeriesPolicy<T> {
    /// Switch point actually used at this energy. Never inside the classically
    /// allowed region `y^2 < 4E`, where the leading asymptotic form is meaningless.
    pub fn switch_point(&self, energy: Energy<T>) -> T {
        let e = energy.value().max(T::zero());
        self.y_switch.max(T::lit(2.0) * e.sqrt() + T::lit(2.0))
    }
}

/// Coefficient lists `a_{2n}` and `a_{2n+1}` for `n < count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients<T> {
    pub energy: Energy<T>,
    pub even: Vec<T>,
    pub odd: Vec<T>,
    pub count: usize,
}

impl<T: Real> SeriesCoefficients<T> {
    pub fn from_recurrence(energy: Energy<T>, seeds: WeberPair<T>, count: usize) -> Self {
        let mut even = Vec::with_capacity(count);
        let mut odd = Vec::with_capacity(count);
        let (mut ae, mut ao) = (seeds.a0, seeds.a1);
        for n in 0..count {
            even.push(ae);
            odd.push(ao);
            ae = recurrence_step(ae, 2 * n, energy);
            ao = recurrence_step(ao, 2 * n + 1, energy);
        }
        Self {
            energy,
            even,
            odd,
            count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffRoute {
    ClosedForm,
    /// The Gamma closed form is 0/0 at this energy; iterated recurrence used.
    RecurrenceFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient<T> {
    pub value: T,
    pub route: CoeffRoute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Decaying,
    Growing,
}

/// Constants in `S(y) ~ pref * [y^2/2]^(-E/2-1/4) exp(y^2/2)`.
/// A prefactor is zero when its series terminates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPrefactors<T> {
    pub even: T,
    pub odd: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalRegion {
    Series,
    Polynomial,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayingValue<T> {
    pub psi: T,
    pub dpsi: T,
    pub region: EvalRegion,
}

/// Raw sums of a seeded series at one point, before the Gaussian factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<T> {
    pub sum: T,
    pub derivative: T,
    pub abs_sum: T,
    pub terms: usize,
}

impl<T: Real> SeriesSum<T> {
    /// Decimal digits lost to cancellation, estimated from the sum of
    /// magnitudes. The derivative stands in near zeros of the sum.
    pub fn cancellation_digits(&self, y: T) -> T {
        let scale = self
            .sum
            .abs()
            .max(self.derivative.abs() / (T::one() + y));
        if self.abs_sum == T::zero() {
            T::zero()
        } else if scale == T::zero() {
            T::infinity()
        } else {
            (self.abs_sum / scale).log10().max(T::zero())
        }
    }
}

/// `a_{n+2}` from `a_n`.
#[inline]
pub fn recurrence_step<T: Real>(a_n: T, n: usize, energy: Energy<T>) -> T {
    let nf = T::from_usize_lossy(n);
    a_n * (nf - energy.value() + T::lit(0.5)) / ((nf + T::one()) * (nf + T::lit(2.0)))
}

fn iterate_recurrence<T: Real>(seed: T, first: usize, steps: usize, energy: Energy<T>) -> T {
    (0..steps).fold(seed, |a, k| recurrence_step(a, first + 2 * k, energy))
}

/// Gamma closed form shared by both parities:
/// `seed / (2^n n!) * Gamma(base)/Gamma(shift) * Gamma(shift+n)/Gamma(base+n)`.
fn closed_form<T: Real>(n: usize, shift: T, base: T, seed: T) -> Result<T, SpecialError> {
    let nf = T::from_usize_lossy(n);
    let ln_pow_fact = nf * T::LN_2() + ln_gamma(nf + T::one())?.ln_abs;
    let v = SignedLog::from_value(seed) * ln_gamma(base)? / ln_gamma(shift)? * ln_gamma(shift + nf)?
        / ln_gamma(base + nf)?;
    Ok(v.scale_ln(-ln_pow_fact).value())
}

/// `a_{2n}` from the Gamma closed form, in log space with sign tracking.
pub fn coeff_even_closed<T: Real>(n: usize, energy: Energy<T>, a0: T) -> Coefficient<T> {
    coeff_closed(n, energy, a0, T::lit(0.25), T::lit(0.5), 0)
}

/// `a_{2n+1}` from the Gamma closed form.
pub fn coeff_odd_closed<T: Real>(n: usize, energy: Energy<T>, a1: T) -> Coefficient<T> {
    coeff_closed(n, energy, a1, T::lit(0.75), T::lit(1.5), 1)
}

fn coeff_closed<T: Real>(
    n: usize,
    energy: Energy<T>,
    seed: T,
    offset: T,
    base: T,
    first: usize,
) -> Coefficient<T> {
    if n == 0 || seed == T::zero() {
        return Coefficient {
            value: seed,
            route: CoeffRoute::ClosedForm,
        };
    }
    let shift = offset - energy.value() * T::lit(0.5);
    if special::is_gamma_pole(shift) {
        return Coefficient {
            value: iterate_recurrence(seed, first, n, energy),
            route: CoeffRoute::RecurrenceFallback,
        };
    }
    match closed_form(n, shift, base, seed) {
        Ok(value) => Coefficient {
            value,
            route: CoeffRoute::ClosedForm,
        },
        Err(_) => Coefficient {
            value: iterate_recurrence(seed, first, n, energy),
            route: CoeffRoute::RecurrenceFallback,
        },
    }
}

/// Canonical pole-free seeds `a0 = 1/Gamma(3/4 - E/2)`, `a1 = -sqrt(2)/Gamma(1/4 - E/2)`.
pub fn weber_pair<T: Real>(energy: Energy<T>) -> WeberPair<T> {
    let half_e = energy.value() * T::lit(0.5);
    let a0 = reciprocal_gamma(T::lit(0.75) - half_e).expect("finite energy");
    let a1 = -T::SQRT_2() * reciprocal_gamma(T::lit(0.25) - half_e).expect("finite energy");
    WeberPair { a0, a1 }
}

/// The cancelling ratio `a* = a1/a0`; infinite at `E = 2n + 3/2`, zero at `E = 2n + 1/2`.
pub fn a_star<T: Real>(energy: Energy<T>) -> ProjectiveRatio<T> {
    weber_pair(energy).ratio()
}

/// `(beta, gamma)` of `psi ~ y^gamma exp(beta y^2)`.
pub fn asymptotic_exponents<T: Real>(energy: Energy<T>, branch: Branch) -> (T, T) {
    let e = energy.value();
    match branch {
        Branch::Decaying => (T::lit(-0.25), e - T::lit(0.5)),
        Branch::Growing => (T::lit(0.25), -e - T::lit(0.5)),
    }
}

pub fn series_asymptotic_prefactors<T: Real>(energy: Energy<T>) -> SeriesPrefactors<T> {
    let half_e = energy.value() * T::lit(0.5);
    let sqrt_pi = T::PI().sqrt();
    let even = sqrt_pi * reciprocal_gamma(T::lit(0.25) - half_e).expect("finite energy");
    let odd = T::SQRT_2() * sqrt_pi * T::lit(0.5)
        * reciprocal_gamma(T::lit(0.75) - half_e).expect("finite energy");
    SeriesPrefactors { even, odd }
}

/// Sums `a0 S_even(y) + a1 S_odd(y)` and its derivative with compensated
/// accumulation. No Gaussian factor is applied.
pub fn sum_series<T: Real>(
    energy: Energy<T>,
    seeds: WeberPair<T>,
    y: T,
    policy: &SeriesPolicy<T>,
) -> Result<SeriesSum<T>, WeberError> {
    if !(y >= T::zero()) || !y.is_finite() {
        return Err(WeberError::NegativeArgument { y: y.to_f64_lossy() });
    }
    if y == T::zero() {
        return Ok(SeriesSum {
            sum: seeds.a0,
            derivative: seeds.a1,
            abs_sum: seeds.a0.abs(),
            terms: 1,
        });
    }
    let y2 = y * y;
    // terms shrink monotonically only once n exceeds ~ y^2 + |E|
    let peak = (y2 + energy.value().abs() + T::lit(2.0))
        .to_usize()
        .unwrap_or(usize::MAX);

    let mut sum = CompensatedSum::new();
    let mut dsum = CompensatedSum::new();
    let mut abs_sum = CompensatedSum::new();
    // t_n = a_n y^n, carried separately for each parity
    let mut term = [seeds.a0, seeds.a1 * y];
    let mut small_run = 0;
    for n in 0..policy.max_terms {
        let parity = n % 2;
        let t = term[parity];
        sum.add(t);
        dsum.add(t * T::from_usize_lossy(n) / y);
        abs_sum.add(t.abs());

        let nf = T::from_usize_lossy(n);
        term[parity] = t * y2 * (nf - energy.value() + T::lit(0.5))
            / ((nf + T::one()) * (nf + T::lit(2.0)));

        if t.abs() < policy.term_tol * (T::one() + sum.value().abs()) {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if n > peak && small_run >= policy.consecutive {
            return Ok(SeriesSum {
                sum: sum.value(),
                derivative: dsum.value(),
                abs_sum: abs_sum.value(),
                terms: n + 1,
            });
        }
    }
    Err(WeberError::TermCap {
        y: y.to_f64_lossy(),
        max_terms: policy.max_terms,
    })
}

/// Unit-seed sums `(S_even(y), S_odd(y))`.
pub fn raw_series<T: Real>(
    energy: Energy<T>,
    y: T,
    policy: &SeriesPolicy<T>,
) -> Result<(T, T), WeberError> {
    let even = sum_series(energy, WeberPair { a0: T::one(), a1: T::zero() }, y, policy)?;
    let odd = sum_series(energy, WeberPair { a0: T::zero(), a1: T::one() }, y, policy)?;
    Ok((even.sum, odd.sum))
}

fn is_polynomial<T: Real>(energy: Energy<T>, pair: &WeberPair<T>) -> bool {
    match energy.terminating_index() {
        Some(m) if m % 2 == 0 => pair.a1 == T::zero(),
        Some(_) => pair.a0 == T::zero(),
        None => false,
    }
}

fn series_point<T: Real>(
    energy: Energy<T>,
    pair: WeberPair<T>,
    y: T,
    policy: &SeriesPolicy<T>,
    check_budget: bool,
) -> Result<(T, T), WeberError> {
    let s = sum_series(energy, pair, y, policy)?;
    if check_budget {
        let digits = s.cancellation_digits(y);
        if digits > policy.max_cancellation_digits {
            return Err(WeberError::PrecisionLoss {
                y: y.to_f64_lossy(),
                digits: digits.to_f64_lossy(),
                budget: policy.max_cancellation_digits.to_f64_lossy(),
            });
        }
    }
    let g = (-y * y * T::lit(0.25)).exp();
    Ok((g * s.sum, g * (s.derivative - y * T::lit(0.5) * s.sum)))
}

/// The decaying solution `psi(y)` and `psi'(y)` for `y >= 0`, built on the
/// canonical [`weber_pair`].
///
/// Inside the switch point the series are summed term by term (the derivative
/// from the differentiated series). Beyond it the leading form
/// `C y^(E-1/2) exp(-y^2/4)` takes over, with `C` fixed by continuity. At
/// terminating energies the solution is a polynomial times the Gaussian and is
/// evaluated directly everywhere.
pub fn eval_decaying<T: Real>(
    energy: Energy<T>,
    y: T,
    policy: &SeriesPolicy<T>,
) -> Result<DecayingValue<T>, WeberError> {
    eval_decaying_with(energy, weber_pair(energy), y, policy)
}

pub(crate) fn eval_decaying_with<T: Real>(
    energy: Energy<T>,
    pair: WeberPair<T>,
    y: T,
    policy: &SeriesPolicy<T>,
) -> Result<DecayingValue<T>, WeberError> {
    if !(y >= T::zero()) || !y.is_finite() {
        return Err(WeberError::NegativeArgument { y: y.to_f64_lossy() });
    }
    if is_polynomial(energy, &pair) {
        let (psi, dpsi) = series_point(energy, pair, y, policy, false)?;
        return Ok(DecayingValue {
            psi,
            dpsi,
            region: EvalRegion::Polynomial,
        });
    }
    let y_s = policy.switch_point(energy);
    if y <= y_s {
        let (psi, dpsi) = series_point(energy, pair, y, policy, true)?;
        return Ok(DecayingValue {
            psi,
            dpsi,
            region: EvalRegion::Series,
        });
    }
    let (psi_s, _) = series_point(energy, pair, y_s, policy, true)?;
    let (_, gamma_exp) = asymptotic_exponents(energy, Branch::Decaying);
    let quarter = T::lit(0.25);
    // psi(y)/psi(y_s) in log form
    let ln_ratio = gamma_exp * (y / y_s).ln() - (y * y - y_s * y_s) * quarter;
    let psi = psi_s * ln_ratio.exp();
    let dpsi = psi * (gamma_exp / y - y * T::lit(0.5));
    Ok(DecayingValue {
        psi,
        dpsi,
        region: EvalRegion::Asymptotic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{PI, SQRT_2};

    fn en(e: f64) -> Energy<f64> {
        Energy::new(e).unwrap()
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(recurrence_step(1.0, 0, en(0.5)), 0.0);
        assert_eq!(recurrence_step(1.0, 1, en(1.5)), 0.0);
        assert_eq!(recurrence_step(1.0, 0, en(1.0)), -0.25);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(coeff_even_closed(0, en(0.7), 1.3).value, 1.3);
        assert_relative_eq!(coeff_even_closed(1, en(1.0), 1.0).value, -0.25, max_relative = 1e-13);
        let rec = iterate_recurrence(1.0, 0, 5, en(0.7));
        let c = coeff_even_closed(5, en(0.7), 1.0);
        assert_eq!(c.route, CoeffRoute::ClosedForm);
        assert_relative_eq!(c.value, rec, max_relative = 1e-12);

        assert_eq!(coeff_odd_closed(0, en(0.7), -2.0).value, -2.0);
        let z = coeff_odd_closed(1, en(1.5), 1.0);
        assert_eq!(z.value, 0.0);
        assert_eq!(z.route, CoeffRoute::RecurrenceFallback);
        let rec = iterate_recurrence(1.0, 1, 4, en(0.7));
        assert_relative_eq!(coeff_odd_closed(4, en(0.7), 1.0).value, rec, max_relative = 1e-12);
    }

    #[test]
    fn a_star_values() {
        assert_eq!(a_star(en(0.5)), ProjectiveRatio::Finite(0.0));
        assert_eq!(a_star(en(3.5)), ProjectiveRatio::Infinite);
        assert_eq!(a_star(en(1.5)), ProjectiveRatio::Infinite);
        let v = a_star(en(1.0)).finite().unwrap();
        // -sqrt(2) Gamma(1/4)/Gamma(-1/4)
        assert_relative_eq!(v, 1.046_049_620_053_101_6, max_relative = 1e-13);
    }

    #[test]
    fn pair_values() {
        let p = weber_pair(en(0.5));
        assert_relative_eq!(p.a0, 1.0 / PI.sqrt(), max_relative = 1e-14);
        assert_eq!(p.a1, 0.0);
        let p = weber_pair(en(1.5));
        assert_eq!(p.a0, 0.0);
        // -sqrt(2)/Gamma(-1/2) = sqrt(2)/(2 sqrt(pi))
        assert_relative_eq!(p.a1, SQRT_2 / (2.0 * PI.sqrt()), max_relative = 1e-14);
        let p = weber_pair(en(1.0));
        assert!(p.a0.is_finite() && p.a1.is_finite());
        assert_relative_eq!(p.a1 / p.a0, 1.046_049_620_053_101_6, max_relative = 1e-13);
    }

    #[test]
    fn exponents() {
        assert_eq!(asymptotic_exponents(en(0.5), Branch::Decaying), (-0.25, 0.0));
        assert_eq!(asymptotic_exponents(en(0.5), Branch::Growing), (0.25, -1.0));
        let (b, g) = asymptotic_exponents(en(2.3), Branch::Decaying);
        assert_eq!(b, -0.25);
        assert_relative_eq!(g, 1.8, max_relative = 1e-15);
    }

    #[test]
    fn prefactors() {
        let p = series_asymptotic_prefactors(en(1.0));
        assert_relative_eq!(p.even, -0.361_602_271_158_019_3, max_relative = 1e-12);
        assert_relative_eq!(p.odd, 0.345_683_669_518_146_7, max_relative = 1e-12);
        let p = series_asymptotic_prefactors(en(0.5));
        assert_eq!(p.even, 0.0);
    }

    #[test]
    fn ground_state_is_gaussian() {
        let pol = SeriesPolicy::default();
        let v = eval_decaying(en(0.5), 2.0, &pol).unwrap();
        assert_eq!(v.region, EvalRegion::Polynomial);
        assert_relative_eq!(v.psi, (-1.0_f64).exp() / PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(v.dpsi, -v.psi, max_relative = 1e-14);
        let v = eval_decaying(en(0.5), 0.0, &pol).unwrap();
        assert_relative_eq!(v.psi, 1.0 / PI.sqrt(), max_relative = 1e-14);
        assert_eq!(v.dpsi, 0.0);
    }

    #[test]
    fn negative_argument_rejected() {
        let pol = SeriesPolicy::default();
        assert!(matches!(
            eval_decaying(en(1.0), -0.1, &pol),
            Err(WeberError::NegativeArgument { .. })
        ));
        assert!(eval_decaying(en(1.0), f64::NAN, &pol).is_err());
    }

    #[test]
    fn precision_budget_enforced() {
        let pol = SeriesPolicy {
            y_switch: 11.0,
            ..SeriesPolicy::default()
        };
        assert!(matches!(
            eval_decaying(en(0.3), 10.0, &pol),
            Err(WeberError::PrecisionLoss { .. })
        ));
    }

    #[test]
    fn asymptotic_branch_is_continuous() {
        let pol = SeriesPolicy::default();
        let e = en(1.2);
        let ys = pol.switch_point(e);
        let below = eval_decaying(e, ys, &pol).unwrap();
        let above = eval_decaying(e, ys * (1.0 + 1e-12), &pol).unwrap();
        assert_eq!(below.region, EvalRegion::Series);
        assert_eq!(above.region, EvalRegion::Asymptotic);
        assert_relative_eq!(below.psi, above.psi, max_relative = 1e-9);
    }

    #[test]
    fn coefficient_list_matches_recurrence() {
        let e = en(0.9);
        let c = SeriesCoefficients::from_recurrence(e, WeberPair { a0: 1.0, a1: 1.0 }, 10);
        assert_eq!(c.even.len(), 10);
        for n in 0..10 {
            assert_relative_eq!(c.even[n], coeff_even_closed(n, e, 1.0).value, max_relative = 1e-12);
            assert_relative_eq!(c.odd[n], coeff_odd_closed(n, e, 1.0).value, max_relative = 1e-12);
        }
        // a_{n+2}/a_n = (n - E + 1/2)/(...) keeps one sign once n > E - 1/2
        for w in c.even.windows(2).skip(1) {
            assert!(w[0] * w[1] > 0.0);
        }
        assert!(c.even[0] * c.even[1] < 0.0);
    }

    #[test]
    fn exact_rational_recurrence_terminates() {
        use num_rational::Ratio;
        // same step in exact arithmetic: (n - E + 1/2)/((n+1)(n+2)) with E = 9/2
        let e = Ratio::new(9_i64, 2);
        let half = Ratio::new(1_i64, 2);
        let mut a = Ratio::from_integer(1_i64);
        let mut coeffs = vec![a];
        for n in (0..8).step_by(2) {
            let nr = Ratio::from_integer(n as i64);
            a = a * (nr - e + half) / ((nr + 1) * (nr + 2));
            coeffs.push(a);
        }
        assert_eq!(coeffs[2], Ratio::new(1, 3));
        assert_eq!(coeffs[3], Ratio::from_integer(0));
        let f = SeriesCoefficients::from_recurrence(en(4.5), WeberPair { a0: 1.0, a1: 0.0 }, 4);
        for (x, r) in f.even.iter().zip(&coeffs) {
            assert_eq!(*x, *r.numer() as f64 / *r.denom() as f64);
        }
    }
}
