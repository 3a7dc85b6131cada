//! Numerov integration of `psi'' = (V(x) - E) psi` and shooting solvers built
//! on it. Independent of the series machinery; used to cross-check it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bathtub::{Parity, PiecewisePotential};
use crate::roots::{bisect, BisectError};
use crate::scalar::Real;
use crate::special::SpecialError;
use crate::weber::Energy;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NumerovError {
    #[error("grid [{start}, {end}] with step {h} does not have an integer number (>= 10) of steps")]
    InvalidGrid { start: f64, end: f64, h: f64 },
    #[error("seed values must not both be zero")]
    ZeroSeed,
    #[error("mismatch has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("integration produced a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("parameter out of range: {0}")]
    Parameter(&'static str),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

impl From<BisectError> for NumerovError {
    fn from(e: BisectError) -> Self {
        match e {
            BisectError::NoSignChange { a, b } => NumerovError::NoSignChange { lo: a, hi: b },
            BisectError::NotFinite { x } => NumerovError::NonFinite { x },
        }
    }
}

/// Uniform grid `start + i h`, `i = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    pub z_start: T,
    pub z_end: T,
    pub h: T,
    steps: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(z_start: T, z_end: T, h: T) -> Result<Self, NumerovError> {
        let bad = || NumerovError::InvalidGrid {
            start: z_start.to_f64_lossy(),
            end: z_end.to_f64_lossy(),
            h: h.to_f64_lossy(),
        };
        if !(h > T::zero()) || !(z_end > z_start) || !z_end.is_finite() || !z_start.is_finite() {
            return Err(bad());
        }
        let q = (z_end - z_start) / h;
        let steps = q.round();
        if (q - steps).abs() > T::lit(1e-6) * steps.max(T::one()) || steps < T::lit(10.0) {
            return Err(bad());
        }
        Ok(Self {
            z_start,
            z_end,
            h,
            steps: steps.to_usize().ok_or_else(bad)?,
        })
    }

    /// Grid from `z_start` with `steps` steps of `h`.
    pub fn with_steps(z_start: T, h: T, steps: usize) -> Result<Self, NumerovError> {
        Self::new(z_start, z_start + h * T::from_usize_lossy(steps), h)
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> T {
        self.z_start + T::from_usize_lossy(i) * self.h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// From `z_end` towards `z_start`; the seed holds the values at `z_end` and `z_end - h`.
    Left,
    /// From `z_start` towards `z_end`; the seed holds the values at `z_start` and `z_start + h`.
    Right,
}

/// Potential in `psi'' = (V - E) psi`.
pub trait Potential<T: Real>: Sync {
    fn value(&self, x: T) -> T;

    /// `lim (V(x) - E) psi(x)` at a grid point where `psi` vanishes and `V` is
    /// singular, given the neighbouring point `(x1, psi1)`.
    fn singular_product(&self, _x0: T, _x1: T, _psi1: T, _energy: T) -> T {
        T::zero()
    }
}

impl<T: Real> Potential<T> for PiecewisePotential<T> {
    fn value(&self, z: T) -> T {
        PiecewisePotential::value(self, z)
    }
}

/// `V(x) = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantPotential<T>(pub T);

impl<T: Real> Potential<T> for ConstantPotential<T> {
    fn value(&self, _x: T) -> T {
        self.0
    }
}

/// Effective radial potential `-k / max(r, R) + L(L+1)/r^2` in units where
/// the kinetic term is `-u''`; pure Coulomb levels are `-k^2 / (4 n^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialCoulomb<T> {
    pub k: T,
    pub r_core: T,
    pub angular_momentum: u32,
}

impl<T: Real> RadialCoulomb<T> {
    pub fn new(k: T, r_core: T, angular_momentum: u32) -> Result<Self, NumerovError> {
        if !(k > T::zero()) || !k.is_finite() {
            return Err(NumerovError::Parameter("k must be positive"));
        }
        if !(r_core >= T::zero()) || !r_core.is_finite() {
            return Err(NumerovError::Parameter("R must be non-negative"));
        }
        Ok(Self {
            k,
            r_core,
            angular_momentum,
        })
    }

    fn centrifugal(&self) -> T {
        let l = T::from_usize_lossy(self.angular_momentum as usize);
        l * (l + T::one())
    }

    /// Coefficient `b` of the regular solution `r^(L+1) (1 + b r + ...)`.
    fn regular_slope(&self) -> T {
        if self.r_core > T::zero() {
            T::zero()
        } else {
            let l = T::from_usize_lossy(self.angular_momentum as usize);
            -self.k / (T::lit(2.0) * (l + T::one()))
        }
    }

    /// Regular solution near the origin, normalized to `r^(L+1)` leading order.
    pub fn regular_seed(&self, r: T) -> T {
        r.powi(self.angular_momentum as i32 + 1) * (T::one() + self.regular_slope() * r)
    }

    /// Pure-Coulomb level with principal number `n >= 1`.
    pub fn hydrogen_level(&self, n: usize) -> T {
        let n = T::from_usize_lossy(n);
        -self.k * self.k / (T::lit(4.0) * n * n)
    }
}

impl<T: Real> Potential<T> for RadialCoulomb<T> {
    fn value(&self, r: T) -> T {
        if r <= T::zero() {
            return T::infinity();
        }
        -self.k / r.max(self.r_core) + self.centrifugal() / (r * r)
    }

    fn singular_product(&self, x0: T, x1: T, psi1: T, _energy: T) -> T {
        if x0 != T::zero() {
            return T::zero();
        }
        // psi ~ c r^(L+1): (V - E) psi -> c (L(L+1) r^(L-1) - k r^L) at r = 0
        let c = psi1 / self.regular_seed(x1);
        match self.angular_momentum {
            0 if self.r_core == T::zero() => -self.k * c,
            1 => T::lit(2.0) * c,
            _ => T::zero(),
        }
    }
}

/// Numerov solution on a grid. True values are `values[i] * 2^log2_scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct Integration<T> {
    pub grid: GridSpec<T>,
    pub values: Vec<T>,
    pub log2_scale: i32,
    /// Sign changes along the direction of travel, counted before any
    /// rescaling could flush small values to zero.
    pub sign_changes: usize,
}

impl<T: Real> Integration<T> {

    /// Values with the rescaling undone (may overflow to infinity).
    pub fn unscaled(&self) -> Vec<T> {
        let s = T::lit(2.0).powi(self.log2_scale);
        self.values.iter().map(|v| *v * s).collect()
    }
}

fn rescale_exponent<T: Real>() -> i32 {
    (T::max_value().log2() / T::lit(4.0)).floor().to_i32().unwrap_or(30)
}

/// Fourth-order Numerov recursion for `psi'' = (V - E) psi`.
pub fn integrate<T: Real, P: Potential<T> + ?Sized>(
    potential: &P,
    energy: Energy<T>,
    grid: &GridSpec<T>,
    direction: Direction,
    seed: (T, T),
) -> Result<Integration<T>, NumerovError> {
    if seed.0 == T::zero() && seed.1 == T::zero() {
        return Err(NumerovError::ZeroSeed);
    }
    let n = grid.len();
    let e = energy.value();
    let h = grid.h;
    let h2 = h * h;
    let c12 = h2 / T::lit(12.0);
    // position of the j-th step along the direction of travel
    let idx = |j: usize| match direction {
        Direction::Right => j,
        Direction::Left => n - 1 - j,
    };
    let x = |j: usize| grid.point(idx(j));

    let exp = rescale_exponent::<T>();
    let big = T::lit(2.0).powi(exp);
    let shrink = T::lit(2.0).powi(-exp);

    let mut vals = vec![T::zero(); n];
    vals[idx(0)] = seed.0;
    vals[idx(1)] = seed.1;

    let product = |j: usize, psi: T, x_next: T, psi_next: T| -> T {
        if psi == T::zero() {
            potential.singular_product(x(j), x_next, psi_next, e)
        } else {
            (potential.value(x(j)) - e) * psi
        }
    };

    let g0 = product(0, seed.0, x(1), seed.1);
    let g1 = if seed.1 == T::zero() {
        T::zero()
    } else {
        (potential.value(x(1)) - e) * seed.1
    };
    let mut w_prev = seed.0 - c12 * g0;
    let mut w_cur = seed.1 - c12 * g1;
    let mut g_cur = g1;
    let mut log2_scale = 0;
    let mut sign_changes = 0;
    let mut last_negative = [seed.0, seed.1]
        .iter()
        .rev()
        .find(|v| **v != T::zero())
        .map(|v| *v < T::zero());
    if seed.0 != T::zero() && seed.1 != T::zero() && (seed.0 < T::zero()) != (seed.1 < T::zero()) {
        sign_changes += 1;
    }

    for j in 1..n - 1 {
        let w_next = T::lit(2.0) * w_cur - w_prev + h2 * g_cur;
        let f_next = potential.value(x(j + 1)) - e;
        let psi_next = w_next / (T::one() - c12 * f_next);
        if !psi_next.is_finite() {
            return Err(NumerovError::NonFinite {
                x: x(j + 1).to_f64_lossy(),
            });
        }
        vals[idx(j + 1)] = psi_next;
        if psi_next != T::zero() {
            let neg = psi_next < T::zero();
            if last_negative.is_some_and(|p| p != neg) {
                sign_changes += 1;
            }
            last_negative = Some(neg);
        }
        w_prev = w_cur;
        w_cur = w_next;
        g_cur = f_next * psi_next;
        if psi_next.abs() > big {
            for jj in 0..=j + 1 {
                vals[idx(jj)] = vals[idx(jj)] * shrink;
            }
            w_prev = w_prev * shrink;
            w_cur = w_cur * shrink;
            g_cur = g_cur * shrink;
            log2_scale += exp;
            log::debug!("numerov rescale by 2^-{exp} at x = {}", x(j + 1));
        }
    }
    Ok(Integration {
        grid: *grid,
        values: vals,
        log2_scale,
        sign_changes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootResult<T> {
    pub energy: Energy<T>,
    /// Normalized mismatch of the two sides at the matching point.
    pub mismatch: T,
    pub converged: bool,
}

/// A family of trial solutions whose mismatch is continuous in `E` and
/// vanishes exactly at eigenvalues.
pub trait ShootingProblem<T: Real> {
    fn mismatch(&self, energy: T) -> Result<T, NumerovError>;
}

/// Parity-restricted problem for a symmetric piecewise potential, integrated
/// inward from the decaying tail to `z = -h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricWell<T> {
    pub potential: PiecewisePotential<T>,
    pub parity: Parity,
    pub grid: GridSpec<T>,
}

impl<T: Real> SymmetricWell<T> {
    /// Outer boundary `l + max(12, 2 sqrt(2 e_max) + 8)`, snapped to the grid.
    pub fn new(
        potential: PiecewisePotential<T>,
        parity: Parity,
        h: T,
        e_max: T,
    ) -> Result<Self, NumerovError> {
        let reach = T::lit(12.0).max(T::lit(2.0) * (T::lit(2.0) * e_max.max(T::zero())).sqrt() + T::lit(8.0));
        let z_max = potential.l + reach;
        let steps = (z_max / h).ceil().to_usize().ok_or(NumerovError::Parameter("h"))? + 1;
        let grid = GridSpec::with_steps(-h, h, steps)?;
        Ok(Self {
            potential,
            parity,
            grid,
        })
    }

    /// Decaying-tail seed `y^(E-1/2) exp(-y^2/4)` at the last two grid points.
    fn seed(&self, energy: T) -> (T, T) {
        let h = self.grid.h;
        let y = self.grid.z_end - self.potential.l;
        let gamma = energy - T::lit(0.5);
        let ln_ratio = gamma * ((y - h) / y).ln() + (y * y - (y - h) * (y - h)) * T::lit(0.25);
        (T::one(), ln_ratio.exp())
    }

    pub fn solve(&self, energy: T) -> Result<Integration<T>, NumerovError> {
        let e = Energy::new(energy)?;
        integrate(&self.potential, e, &self.grid, Direction::Left, self.seed(energy))
    }
}

impl<T: Real> ShootingProblem<T> for SymmetricWell<T> {
    fn mismatch(&self, energy: T) -> Result<T, NumerovError> {
        let sol = self.solve(energy)?;
        let (m1, p0, p1) = (sol.values[0], sol.values[1], sol.values[2]);
        let slope = (p1 - m1) / (T::lit(2.0) * self.grid.h);
        let norm = (p0 * p0 + slope * slope).sqrt();
        Ok(match self.parity {
            Parity::Even => slope / norm,
            Parity::Odd => p0 / norm,
        })
    }
}

/// Radial problem on `(0, r_max]`: outward from the origin and inward from
/// `r_max`, compared through their discrete Wronskian at a fixed matching index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWell<T> {
    pub potential: RadialCoulomb<T>,
    pub grid: GridSpec<T>,
    pub match_index: usize,
}

impl<T: Real> RadialWell<T> {
    pub fn new(potential: RadialCoulomb<T>, h: T, r_max: T, r_match: T) -> Result<Self, NumerovError> {
        let steps = (r_max / h).ceil().to_usize().ok_or(NumerovError::Parameter("r_max"))?;
        let grid = GridSpec::with_steps(T::zero(), h, steps)?;
        let m = (r_match / h).round().to_usize().unwrap_or(1).clamp(2, steps - 2);
        Ok(Self {
            potential,
            grid,
            match_index: m,
        })
    }

    pub fn outward(&self, energy: T, up_to: usize) -> Result<Integration<T>, NumerovError> {
        let e = Energy::new(energy)?;
        let h = self.grid.h;
        let grid = GridSpec::with_steps(T::zero(), h, up_to.max(10))?;
        integrate(
            &self.potential,
            e,
            &grid,
            Direction::Right,
            (T::zero(), self.potential.regular_seed(h)),
        )
    }

    fn inward(&self, energy: T) -> Result<Integration<T>, NumerovError> {
        let e = Energy::new(energy)?;
        let h = self.grid.h;
        let start = self.grid.point(self.match_index - 1);
        let steps = self.grid.steps() - (self.match_index - 1);
        let grid = GridSpec::with_steps(start, h, steps)?;
        let kappa = (-energy).max(T::zero()).sqrt();
        integrate(&self.potential, e, &grid, Direction::Left, (T::one(), (kappa * h).exp()))
    }

    /// Zeros of the outward solution on `(0, r_max)`: the number of
    /// Dirichlet levels below `energy`.
    pub fn node_count(&self, energy: T) -> Result<usize, NumerovError> {
        Ok(self.outward(energy, self.grid.steps())?.sign_changes)
    }
}

impl<T: Real> ShootingProblem<T> for RadialWell<T> {
    fn mismatch(&self, energy: T) -> Result<T, NumerovError> {
        let m = self.match_index;
        let out = self.outward(energy, m + 1)?;
        let inn = self.inward(energy)?;
        let (a0, a1) = (out.values[m], out.values[m + 1]);
        // inward grid starts at m - 1
        let (b0, b1) = (inn.values[1], inn.values[2]);
        let h = self.grid.h;
        let (sa, sb) = ((a1 - a0) / h, (b1 - b0) / h);
        let na = (a0 * a0 + sa * sa).sqrt();
        let nb = (b0 * b0 + sb * sb).sqrt();
        // discrete Wronskian of the two unit-normalized solutions
        Ok((a0 * sb - b0 * sa) / (na * nb))
    }
}

/// Bisection on the mismatch until the bracket is narrower than `tol`.
pub fn shoot_eigenvalue<T: Real, S: ShootingProblem<T> + ?Sized>(
    problem: &S,
    bracket: (T, T),
    tol: T,
) -> Result<ShootResult<T>, NumerovError> {
    let (lo, hi) = bracket;
    let f_lo = problem.mismatch(lo)?;
    let f_hi = problem.mismatch(hi)?;
    if (f_lo < T::zero()) == (f_hi < T::zero()) && f_lo != T::zero() && f_hi != T::zero() {
        return Err(NumerovError::NoSignChange {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let mut failure = None;
    let e = bisect(
        |e| match problem.mismatch(e) {
            Ok(v) => v,
            Err(err) => {
                failure.get_or_insert(err);
                T::nan()
            }
        },
        lo,
        hi,
        tol,
        200,
    );
    if let Some(err) = failure {
        return Err(err);
    }
    let e = e?;
    let mismatch = problem.mismatch(e)?;
    Ok(ShootResult {
        energy: Energy::new(e)?,
        mismatch,
        converged: mismatch.abs() < T::lit(1e-9),
    })
}

/// Roots of a continuous function on a `sqrt(E - floor)` grid, ascending.
fn scan_roots<T: Real>(
    mut f: impl FnMut(T) -> Result<T, NumerovError>,
    floor: T,
    e_max: T,
    k_step: T,
    count: usize,
) -> Result<Vec<(T, T)>, NumerovError> {
    let k_max = (e_max - floor).max(T::zero()).sqrt();
    let steps = (k_max / k_step).ceil().to_usize().unwrap_or(1).max(1);
    let mut out = Vec::new();
    let first = floor + k_step * k_step * T::lit(1e-4);
    let mut prev = (first, f(first)?);
    for i in 1..=steps {
        let k = T::from_usize_lossy(i) * k_step;
        let e = floor + k * k;
        let v = f(e)?;
        if (prev.1 < T::zero()) != (v < T::zero()) {
            out.push((prev.0, e));
            if out.len() == count {
                break;
            }
        }
        prev = (e, v);
    }
    Ok(out)
}

/// The `n_max + 1` lowest levels of a symmetric piecewise potential by pure
/// shooting, parities alternating from even.
pub fn symmetric_levels<T: Real>(
    potential: PiecewisePotential<T>,
    n_max: usize,
    h: T,
    tol: T,
) -> Result<Vec<ShootResult<T>>, NumerovError> {
    let floor = match potential.inner {
        crate::bathtub::InnerRegion::Constant(c) => c,
    };
    let e_max = floor.max(T::zero()) + T::from_usize_lossy(n_max) + T::lit(2.0);
    let k_step = T::lit(0.02).min(T::PI() / (T::lit(8.0) * (potential.l + T::one())));
    let mut per_parity = Vec::new();
    for (parity, count) in [(Parity::Even, n_max / 2 + 1), (Parity::Odd, n_max.div_ceil(2))] {
        let well = SymmetricWell::new(potential, parity, h, e_max)?;
        let brackets = scan_roots(|e| well.mismatch(e), floor, e_max, k_step, count)?;
        if brackets.len() < count {
            return Err(NumerovError::NoSignChange {
                lo: floor.to_f64_lossy(),
                hi: e_max.to_f64_lossy(),
            });
        }
        let levels = brackets
            .into_iter()
            .map(|b| shoot_eigenvalue(&well, b, tol))
            .collect::<Result<Vec<_>, _>>()?;
        per_parity.push(levels);
    }
    Ok((0..=n_max)
        .map(|n| per_parity[n % 2][n / 2])
        .collect())
}

/// Radial grid step used unless overridden.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Lowest `n_levels` bound states with angular momentum `L` in
/// `V = -k / max(r, R)`, by node-count bracketing then shooting.
pub fn coulomb_piecewise_levels<T: Real>(
    k: T,
    r_core: T,
    angular_momentum: u32,
    n_levels: usize,
) -> Result<Vec<ShootResult<T>>, NumerovError> {
    coulomb_piecewise_levels_with(k, r_core, angular_momentum, n_levels, T::lit(DEFAULT_STEP))
}

pub fn coulomb_piecewise_levels_with<T: Real>(
    k: T,
    r_core: T,
    angular_momentum: u32,
    n_levels: usize,
    h: T,
) -> Result<Vec<ShootResult<T>>, NumerovError> {
    let pot = RadialCoulomb::new(k, r_core, angular_momentum)?;
    let mut levels = Vec::with_capacity(n_levels);
    for radial in 0..n_levels {
        let principal = radial + angular_momentum as usize + 1;
        // the flattened core only raises levels: hydrogen is a lower bound
        let lo = pot.hydrogen_level(principal) * T::lit(1.001);
        let hi = pot.hydrogen_level(principal + 2);
        let kappa_hi = (-hi).sqrt();
        let r_max = (T::lit(40.0) + T::lit(2.0) * T::from_usize_lossy(principal)) / kappa_hi;
        let probe = RadialWell::new(pot, h, r_max, r_max * T::lit(0.5))?;
        let wanted = radial + 1;
        if probe.node_count(hi)? < wanted {
            log::warn!(
                "only {} bound levels found for k = {k}, R = {r_core}, L = {angular_momentum}",
                levels.len()
            );
            break;
        }
        // Dirichlet level `radial` sits where the node count steps past it
        let (mut a, mut b) = (lo, hi);
        while (b - a) > T::lit(1e-6) * (-a) {
            let mid = (a + b) * T::lit(0.5);
            if probe.node_count(mid)? >= wanted {
                b = mid;
            } else {
                a = mid;
            }
        }
        let e_mid = (a + b) * T::lit(0.5);
        // match at the outer classical turning point of the estimate
        let r_turn = outer_turning_point(&pot, e_mid, r_max);
        let well = RadialWell::new(pot, h, r_max, r_turn)?;
        let widen = (b - a) * T::lit(4.0);
        let result = shoot_eigenvalue(&well, (a - widen, b + widen), T::lit(1e-12));
        match result {
            Ok(r) => levels.push(r),
            Err(NumerovError::NoSignChange { .. }) => {
                log::debug!("shooting bracket lost the root; keeping the node-count level");
                levels.push(ShootResult {
                    energy: Energy::new(e_mid)?,
                    mismatch: well.mismatch(e_mid)?,
                    converged: false,
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(levels)
}

fn outer_turning_point<T: Real>(pot: &RadialCoulomb<T>, e: T, r_max: T) -> T {
    // V_eff is increasing beyond its minimum; scan down from r_max
    let mut r = r_max * T::lit(0.5);
    let step = r_max / T::lit(2000.0);
    while r > step && pot.value(r) > e {
        r = r - step;
    }
    r.max(step * T::lit(4.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weber::{eval_decaying, SeriesPolicy};

    fn en(e: f64) -> Energy<f64> {
        Energy::new(e).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 1.0, 0.1).is_ok());
        assert!(GridSpec::new(0.0, 1.0, 0.3).is_err());
        assert!(GridSpec::new(0.0, 0.5, 0.1).is_err());
        assert!(GridSpec::new(1.0, 0.0, 0.1).is_err());
        assert_eq!(GridSpec::new(0.0, 1.0, 0.01).unwrap().len(), 101);
    }

    #[test]
    fn free_particle_sine() {
        let h = 1e-3;
        let steps = (std::f64::consts::PI / h).round() as usize;
        let grid = GridSpec::with_steps(0.0, h, steps).unwrap();
        let sol = integrate(&ConstantPotential(0.0), en(1.0), &grid, Direction::Right, (0.0, h.sin())).unwrap();
        for (i, v) in sol.values.iter().enumerate() {
            assert!((v - grid.point(i).sin()).abs() < 1e-10);
        }
    }

    #[test]
    fn harmonic_ground_state_inward() {
        let h = 1e-3;
        let grid = GridSpec::new(0.0, 10.0, h).unwrap();
        let g = |z: f64| (-z * z / 4.0).exp();
        let pot = PiecewisePotential::bathtub(0.0).unwrap();
        let sol = integrate(&pot, en(0.5), &grid, Direction::Left, (g(10.0), g(10.0 - h))).unwrap();
        let vals = sol.unscaled();
        assert!((vals[0] - 1.0).abs() < 1e-7, "{}", vals[0]);
    }

    #[test]
    fn agrees_with_series_outside_wall() {
        let (l, e, h) = (1.0_f64, 0.9, 1e-3);
        let pot = PiecewisePotential::bathtub(l).unwrap();
        let well = SymmetricWell::new(pot, Parity::Even, h, e).unwrap();
        let sol = well.solve(e).unwrap().unscaled();
        let policy = SeriesPolicy::default();
        // normalize at the wall
        let i_l = (l / h).round() as usize + 1;
        let ref_l = eval_decaying(en(e), 0.0, &policy).unwrap().psi;
        let scale = ref_l / sol[i_l];
        let mut worst = 0.0_f64;
        let mut max = 0.0_f64;
        for j in 0..=5000 {
            let y = j as f64 * h;
            let num = sol[i_l + j] * scale;
            let ser = eval_decaying(en(e), y, &policy).unwrap().psi;
            worst = worst.max((num - ser).abs());
            max = max.max(ser.abs());
        }
        assert!(worst < 1e-6 * max, "{worst}");
    }

    #[test]
    fn linear_in_seed() {
        let grid = GridSpec::new(0.0, 30.0, 1e-2).unwrap();
        let pot = PiecewisePotential::bathtub(0.5).unwrap();
        let a = integrate(&pot, en(3.3), &grid, Direction::Right, (1.0, 1.01)).unwrap();
        let b = integrate(&pot, en(3.3), &grid, Direction::Right, (4.0, 4.04)).unwrap();
        // the solution grows enough to trigger rescaling
        assert!(a.log2_scale > 0);
        let (ua, ub) = (a.unscaled(), b.unscaled());
        for (x, y) in ua.iter().zip(&ub) {
            if x.is_finite() {
                assert!((4.0 * x - y).abs() <= 1e-12 * y.abs());
            }
        }
        assert!(matches!(
            integrate(&pot, en(1.0), &grid, Direction::Right, (0.0, 0.0)),
            Err(NumerovError::ZeroSeed)
        ));
    }

    #[test]
    fn harmonic_levels_by_shooting() {
        let pot = PiecewisePotential::bathtub(0.0).unwrap();
        let levels = symmetric_levels(pot, 3, 1e-3, 1e-11).unwrap();
        for (n, r) in levels.iter().enumerate() {
            assert!((r.energy.value() - (n as f64 + 0.5)).abs() < 1e-6, "{r:?}");
            assert!(r.converged, "{r:?}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let pot = PiecewisePotential::bathtub(0.0).unwrap();
        let err = |h: f64| {
            let well = SymmetricWell::new(pot, Parity::Even, h, 3.0).unwrap();
            (shoot_eigenvalue(&well, (2.3, 2.7), 1e-13).unwrap().energy.value() - 2.5).abs()
        };
        let ratio = err(0.04) / err(0.02);
        assert!((ratio - 16.0).abs() < 2.0, "{ratio}");
    }

    #[test]
    fn no_sign_change() {
        let pot = PiecewisePotential::bathtub(0.0).unwrap();
        let well = SymmetricWell::new(pot, Parity::Even, 1e-2, 2.0).unwrap();
        assert!(matches!(
            shoot_eigenvalue(&well, (0.6, 0.9), 1e-9),
            Err(NumerovError::NoSignChange { .. })
        ));
    }

    #[test]
    fn hydrogen_limit() {
        let levels = coulomb_piecewise_levels(1.0, 0.0, 0, 3).unwrap();
        for (i, r) in levels.iter().enumerate() {
            let exact = -0.25 / ((i + 1) * (i + 1)) as f64;
            assert!(((r.energy.value() - exact) / exact).abs() < 1e-5, "{r:?}");
        }
        let p = coulomb_piecewise_levels(1.0_f64, 0.0, 1, 1).unwrap();
        assert!(((p[0].energy.value() + 0.0625) / 0.0625).abs() < 1e-5, "{p:?}");
    }

    #[test]
    fn core_raises_levels() {
        let a = coulomb_piecewise_levels(1.0, 0.0, 0, 2).unwrap();
        let b = coulomb_piecewise_levels(1.0, 2.0, 0, 2).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(y.energy.value() > x.energy.value());
        }
    }
}
