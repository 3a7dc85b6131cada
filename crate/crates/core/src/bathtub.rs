//! Bound states of the piecewise potential that is harmonic outside `|z| > l`
//! (`V = (|z| - l)^2 / 4`) and flat inside.
//!
//! Matching `B cos(kz)` (even) or `C sin(kz)` (odd), `k = sqrt(E)`, to the
//! decaying Weber solution at `z = l` only needs that solution's value and slope
//! at `y = 0`, which are the seeds `(a0, a1)`. The quantization conditions
//! `k tan(kl) = -a1/a0` and `k cot(kl) = a1/a0` are used multiplied through,
//! which removes every pole:
//!
//! ```text
//! even: a0 k sin(kl) + a1 cos(kl) = 0
//! odd:  a0 k cos(kl) - a1 sin(kl) = 0
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::roots::{bisect, BisectError};
use crate::scalar::Real;
use crate::weber::{eval_decaying_with, weber_pair, Energy, SeriesPolicy, WeberError, WeberPair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BathtubError {
    #[error("half-width l = {l} must be finite and non-negative")]
    InvalidLength { l: f64 },
    #[error("found {found} of {wanted} {parity} roots below E = {e_max} at l = {l}")]
    BracketMiss {
        l: f64,
        parity: Parity,
        found: usize,
        wanted: usize,
        e_max: f64,
    },
    #[error("state n = {n} at l = {l} has {nodes} nodes")]
    NodeMismatch { l: f64, n: usize, nodes: usize },
    #[error("matching residual {residual:e} at z = ±l exceeds tolerance")]
    MatchingResidual { residual: f64 },
    #[error("grid step must be positive and the range non-empty")]
    InvalidGrid,
    #[error("l values must be sorted ascending")]
    UnsortedLengths,
    #[error(transparent)]
    Weber(#[from] WeberError),
    #[error(transparent)]
    Bisect(#[from] BisectError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_index(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shape of the potential for `|z| < l`. Only a constant floor is supported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InnerRegion<T> {
    Constant(T),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePotential<T> {
    pub l: T,
    pub inner: InnerRegion<T>,
}

impl<T: Real> PiecewisePotential<T> {
    pub fn bathtub(l: T) -> Result<Self, BathtubError> {
        Self::new(l, InnerRegion::Constant(T::zero()))
    }

    pub fn new(l: T, inner: InnerRegion<T>) -> Result<Self, BathtubError> {
        if !(l >= T::zero()) || !l.is_finite() {
            return Err(BathtubError::InvalidLength { l: l.to_f64_lossy() });
        }
        Ok(Self { l, inner })
    }

    pub fn value(&self, z: T) -> T {
        let d = z.abs() - self.l;
        if d > T::zero() {
            d * d * T::lit(0.25)
        } else {
            match self.inner {
                InnerRegion::Constant(c) => c,
            }
        }
    }

    fn floor(&self) -> T {
        match self.inner {
            InnerRegion::Constant(c) => c,
        }
    }

    /// Pole-free matching function; zero exactly at eigenvalues of `parity`.
    /// Below the floor the interior solutions are `cosh`/`sinh`.
    pub fn root_fn(&self, parity: Parity, energy: Energy<T>) -> T {
        let pair = weber_pair(energy);
        let k2 = energy.value() - self.floor();
        let l = self.l;
        if k2 >= T::zero() {
            let k = k2.sqrt();
            let (s, c) = (k * l).sin_cos();
            match parity {
                Parity::Even => pair.a0 * k * s + pair.a1 * c,
                Parity::Odd => pair.a0 * k * c - pair.a1 * s,
            }
        } else {
            let kappa = (-k2).sqrt();
            let (s, c) = ((kappa * l).sinh(), (kappa * l).cosh());
            match parity {
                Parity::Even => pair.a0 * kappa * s - pair.a1 * c,
                Parity::Odd => pair.a0 * kappa * c - pair.a1 * s,
            }
        }
    }

    /// Interior solution and slope for unit amplitude.
    fn interior(&self, parity: Parity, energy: T, z: T) -> (T, T) {
        let k2 = energy - self.floor();
        if k2 >= T::zero() {
            let k = k2.sqrt();
            let (s, c) = (k * z).sin_cos();
            match parity {
                Parity::Even => (c, -k * s),
                Parity::Odd => (s, k * c),
            }
        } else {
            let kappa = (-k2).sqrt();
            let (s, c) = ((kappa * z).sinh(), (kappa * z).cosh());
            match parity {
                Parity::Even => (c, kappa * s),
                Parity::Odd => (s, kappa * c),
            }
        }
    }
}

/// Even-state condition for the flat-bottom potential.
pub fn root_fn_even<T: Real>(energy: Energy<T>, l: T) -> T {
    PiecewisePotential {
        l,
        inner: InnerRegion::Constant(T::zero()),
    }
    .root_fn(Parity::Even, energy)
}

/// Odd-state condition for the flat-bottom potential.
pub fn root_fn_odd<T: Real>(energy: Energy<T>, l: T) -> T {
    PiecewisePotential {
        l,
        inner: InnerRegion::Constant(T::zero()),
    }
    .root_fn(Parity::Odd, energy)
}

/// Amplitudes of the piecewise solution: `A` left of `-l`, `B cos + C sin`
/// inside, `F` right of `l`, where the outer pieces are the decaying solution
/// built on the canonical [`WeberPair`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchingConstants<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub f: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenstate<T> {
    pub n: usize,
    pub parity: Parity,
    pub energy: Energy<T>,
    pub constants: MatchingConstants<T>,
    pub potential: PiecewisePotential<T>,
    pub nodes: usize,
}

impl<T: Real> Eigenstate<T> {
    pub fn l(&self) -> T {
        self.potential.l
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledWavefunction<T> {
    pub grid: Vec<T>,
    pub values: Vec<T>,
    pub norm: T,
}

impl<T: Real> SampledWavefunction<T> {
    /// Number of sign changes, ignoring samples below `1e-10 * max|psi|`.
    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.values)
    }

    /// Positions of sign changes (linear interpolation between samples).
    pub fn node_positions(&self) -> Vec<T> {
        let thresh = self.max_abs() * T::lit(1e-10);
        let mut out = Vec::new();
        let mut last: Option<(T, T)> = None;
        for (&z, &v) in self.grid.iter().zip(&self.values) {
            if v.abs() <= thresh {
                continue;
            }
            if let Some((z0, v0)) = last {
                if (v0 < T::zero()) != (v < T::zero()) {
                    out.push(z0 + (z - z0) * v0 / (v0 - v));
                }
            }
            last = Some((z, v));
        }
        out
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Rescales so the largest magnitude is one (the convention of plots that
    /// compare shapes across `l`).
    pub fn max_normalized(mut self) -> Self {
        let m = self.max_abs();
        if m > T::zero() {
            for v in self.values.iter_mut() {
                *v = *v / m;
            }
            self.norm = self.norm / (m * m);
        }
        self
    }
}

pub(crate) fn count_sign_changes<T: Real>(values: &[T]) -> usize {
    let max = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let thresh = max * T::lit(1e-10);
    let mut changes = 0;
    let mut last_negative: Option<bool> = None;
    for &v in values {
        if v.abs() <= thresh {
            continue;
        }
        let neg = v < T::zero();
        if let Some(prev) = last_negative {
            if prev != neg {
                changes += 1;
            }
        }
        last_negative = Some(neg);
    }
    changes
}

/// Tunables for the eigenvalue search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T> {
    /// Largest step of the `sqrt(E)` scan.
    pub k_step: T,
    pub energy_tol: T,
    /// Step of the coarse grid used to count nodes.
    pub node_grid_step: T,
    pub series: SeriesPolicy<T>,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            k_step: T::lit(0.02),
            energy_tol: T::lit(1e-10),
            node_grid_step: T::lit(0.01),
            series: SeriesPolicy::default(),
        }
    }
}

impl<T: Real> SolverOptions<T> {
    fn scan_step(&self, l: T) -> T {
        self.k_step
            .min(T::PI() / (T::lit(8.0) * (l + T::one())))
    }
}

/// Ascending roots of the matching function of one parity, `count` of them,
/// scanning `sqrt(E - floor)` up to `sqrt(e_max - floor)`.
fn parity_roots<T: Real>(
    pot: &PiecewisePotential<T>,
    parity: Parity,
    count: usize,
    e_max: T,
    step: T,
    tol: T,
) -> Result<Vec<T>, BathtubError> {
    let floor = pot.floor();
    let f = |k: T| {
        let e = Energy::new(floor + k * k).expect("finite scan energy");
        pot.root_fn(parity, e)
    };
    let k_max = (e_max - floor).max(T::zero()).sqrt();
    let mut roots = Vec::with_capacity(count);
    if count == 0 {
        return Ok(roots);
    }
    let steps = (k_max / step).ceil().to_usize().unwrap_or(0).max(1);
    let mut k_prev = T::zero();
    let mut f_prev = f(k_prev);
    for i in 1..=steps {
        let k = (T::from_usize_lossy(i) * step).min(k_max);
        let fk = f(k);
        if f_prev == T::zero() && k_prev > T::zero() {
            roots.push(floor + k_prev * k_prev);
        } else if (f_prev < T::zero()) != (fk < T::zero()) && fk != T::zero() {
            // bisection in k until the bracket is narrower than tol in E
            let k_tol = tol / (T::lit(2.0) * k.max(T::lit(1e-3)));
            let kr = bisect(f, k_prev, k, k_tol, 200)?;
            roots.push(floor + kr * kr);
        }
        if roots.len() == count {
            return Ok(roots);
        }
        k_prev = k;
        f_prev = fk;
    }
    if f_prev == T::zero() {
        roots.push(floor + k_prev * k_prev);
    }
    Ok(roots)
}

fn matching_constants<T: Real>(
    pot: &PiecewisePotential<T>,
    parity: Parity,
    energy: Energy<T>,
    pair: WeberPair<T>,
) -> MatchingConstants<T> {
    // F = 1; interior amplitude from projecting (a0, a1) on (u(l), u'(l)),
    // exact when the matching condition holds
    let (u, du) = pot.interior(parity, energy.value(), pot.l);
    let amp = (pair.a0 * u + pair.a1 * du) / (u * u + du * du);
    let amp = {
        // for oscillatory interiors (u, du/k) is a unit vector; use it directly
        let k2 = energy.value() - pot.floor();
        if k2 > T::zero() {
            let k = k2.sqrt();
            pair.a0 * u + pair.a1 * du / (k * k)
        } else {
            amp
        }
    };
    match parity {
        Parity::Even => MatchingConstants {
            a: T::one(),
            b: amp,
            c: T::zero(),
            f: T::one(),
        },
        Parity::Odd => MatchingConstants {
            a: -T::one(),
            b: T::zero(),
            c: amp,
            f: T::one(),
        },
    }
}

/// Unnormalized `(psi, psi')` of a state at `z`.
fn state_value<T: Real>(
    pot: &PiecewisePotential<T>,
    parity: Parity,
    energy: Energy<T>,
    pair: WeberPair<T>,
    consts: &MatchingConstants<T>,
    z: T,
    policy: &SeriesPolicy<T>,
) -> Result<(T, T), WeberError> {
    let l = pot.l;
    if z > l {
        let v = eval_decaying_with(energy, pair, z - l, policy)?;
        Ok((consts.f * v.psi, consts.f * v.dpsi))
    } else if z < -l {
        let v = eval_decaying_with(energy, pair, -z - l, policy)?;
        Ok((consts.a * v.psi, -consts.a * v.dpsi))
    } else {
        let (u, du) = pot.interior(parity, energy.value(), z);
        let amp = match parity {
            Parity::Even => consts.b,
            Parity::Odd => consts.c,
        };
        Ok((amp * u, amp * du))
    }
}

fn build_state<T: Real>(
    pot: PiecewisePotential<T>,
    n: usize,
    energy: Energy<T>,
    opts: &SolverOptions<T>,
) -> Result<Eigenstate<T>, BathtubError> {
    let parity = Parity::of_index(n);
    let pair = weber_pair(energy);
    let constants = matching_constants(&pot, parity, energy, pair);
    let mut state = Eigenstate {
        n,
        parity,
        energy,
        constants,
        potential: pot,
        nodes: 0,
    };
    let reach = default_reach(energy.value(), pot.l);
    let wf = sample(&state, -reach, reach, opts.node_grid_step, &opts.series)?;
    state.nodes = wf.sign_changes();
    if state.nodes != n {
        return Err(BathtubError::NodeMismatch {
            l: pot.l.to_f64_lossy(),
            n,
            nodes: state.nodes,
        });
    }
    Ok(state)
}

/// Half-extent beyond which a state of energy `e` is negligible.
pub fn default_reach<T: Real>(e: T, l: T) -> T {
    l + T::lit(2.0) * e.max(T::zero()).sqrt() + T::lit(8.0)
}

/// The `n_max + 1` lowest states for a general piecewise potential, parities
/// alternating from even.
pub fn eigenstates<T: Real>(
    pot: PiecewisePotential<T>,
    n_max: usize,
    opts: &SolverOptions<T>,
) -> Result<Vec<Eigenstate<T>>, BathtubError> {
    let wanted_even = n_max / 2 + 1;
    let wanted_odd = n_max.div_ceil(2);
    let mut e_max = pot.floor().max(T::zero()) + T::from_usize_lossy(n_max) + T::lit(2.0);
    let base_step = opts.scan_step(pot.l);

    let mut search = |parity: Parity, wanted: usize| -> Result<Vec<T>, BathtubError> {
        let mut step = base_step;
        // refine the scan a few times, then extend the range once
        for attempt in 0..6 {
            let roots = parity_roots(&pot, parity, wanted, e_max, step, opts.energy_tol)?;
            if roots.len() >= wanted {
                return Ok(roots);
            }
            if attempt == 4 {
                e_max = e_max * T::lit(2.0);
            } else {
                step = step * T::lit(0.5);
            }
            log::debug!("rescanning {parity} roots at l = {}", pot.l);
        }
        let roots = parity_roots(&pot, parity, wanted, e_max, step, opts.energy_tol)?;
        if roots.len() >= wanted {
            return Ok(roots);
        }
        Err(BathtubError::BracketMiss {
            l: pot.l.to_f64_lossy(),
            parity,
            found: roots.len(),
            wanted,
            e_max: e_max.to_f64_lossy(),
        })
    };
    let even = search(Parity::Even, wanted_even)?;
    let odd = search(Parity::Odd, wanted_odd)?;

    (0..=n_max)
        .map(|n| {
            let e = if n % 2 == 0 { even[n / 2] } else { odd[n / 2] };
            build_state(pot, n, Energy::new(e).expect("finite root"), opts)
        })
        .collect()
}

/// The `n_max + 1` lowest bathtub states at half-width `l`.
pub fn eigenvalues<T: Real>(l: T, n_max: usize) -> Result<Vec<Eigenstate<T>>, BathtubError> {
    eigenstates(PiecewisePotential::bathtub(l)?, n_max, &SolverOptions::default())
}

/// Samples the state on `z_min + i h` without normalizing.
fn sample<T: Real>(
    state: &Eigenstate<T>,
    z_min: T,
    z_max: T,
    h: T,
    policy: &SeriesPolicy<T>,
) -> Result<SampledWavefunction<T>, BathtubError> {
    if !(h > T::zero()) || !(z_max > z_min) {
        return Err(BathtubError::InvalidGrid);
    }
    let pair = weber_pair(state.energy);
    let count = ((z_max - z_min) / h + T::lit(1e-9)).floor().to_usize().unwrap_or(0) + 1;
    let mut grid = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for i in 0..count {
        let z = z_min + T::from_usize_lossy(i) * h;
        let (psi, _) = state_value(
            &state.potential,
            state.parity,
            state.energy,
            pair,
            &state.constants,
            z,
            policy,
        )?;
        grid.push(z);
        values.push(psi);
    }
    Ok(SampledWavefunction {
        grid,
        values,
        norm: T::nan(),
    })
}

/// Composite Simpson on a uniform grid; a trailing odd interval uses the 3/8 rule.
pub fn simpson<T: Real>(values: &[T], h: T) -> T {
    let n = values.len();
    if n < 2 {
        return T::zero();
    }
    if n == 2 {
        return (values[0] + values[1]) * h * T::lit(0.5);
    }
    let intervals = n - 1;
    let (simpson_end, tail) = if intervals % 2 == 0 {
        (n - 1, false)
    } else if intervals >= 3 {
        (n - 4, true)
    } else {
        (0, true)
    };
    let mut acc = crate::scalar::CompensatedSum::new();
    let mut i = 0;
    while i + 2 <= simpson_end {
        acc.add((values[i] + T::lit(4.0) * values[i + 1] + values[i + 2]) * h / T::lit(3.0));
        i += 2;
    }
    if tail {
        let j = simpson_end;
        if j + 3 < n {
            acc.add(
                (values[j] + T::lit(3.0) * (values[j + 1] + values[j + 2]) + values[j + 3])
                    * T::lit(3.0)
                    * h
                    / T::lit(8.0),
            );
        }
    }
    acc.value()
}

/// Samples an eigenstate on `[z_min, z_max]` with step `h` and normalizes it
/// to unit `L2` norm on that grid.
pub fn assemble_wavefunction<T: Real>(
    state: &Eigenstate<T>,
    z_min: T,
    z_max: T,
    h: T,
) -> Result<SampledWavefunction<T>, BathtubError> {
    let policy = SeriesPolicy::default();
    check_matching(state, &policy)?;
    let mut wf = sample(state, z_min, z_max, h, &policy)?;
    let sq: Vec<T> = wf.values.iter().map(|v| *v * *v).collect();
    let norm = simpson(&sq, h);
    let scale = norm.sqrt().recip();
    for v in wf.values.iter_mut() {
        *v = *v * scale;
    }
    let sq: Vec<T> = wf.values.iter().map(|v| *v * *v).collect();
    wf.norm = simpson(&sq, h);
    Ok(wf)
}

/// Largest jump of `psi` or `psi'` at `z = ±l`, relative to the interior scale.
pub fn matching_residual<T: Real>(
    state: &Eigenstate<T>,
    policy: &SeriesPolicy<T>,
) -> Result<T, BathtubError> {
    let pot = &state.potential;
    let pair = weber_pair(state.energy);
    let mut worst = T::zero();
    let (u, du) = pot.interior(state.parity, state.energy.value(), pot.l);
    let amp = match state.parity {
        Parity::Even => state.constants.b,
        Parity::Odd => state.constants.c,
    };
    let scale = amp.abs().max(state.constants.f.abs() * pair.a0.abs().max(pair.a1.abs()));
    for side in [T::one(), -T::one()] {
        let (u_in, du_in) = (amp * u, amp * du);
        // mirror for the left edge
        let (u_in, du_in) = match (state.parity, side < T::zero()) {
            (_, false) => (u_in, du_in),
            (Parity::Even, true) => (u_in, -du_in),
            (Parity::Odd, true) => (-u_in, du_in),
        };
        let outer = if side > T::zero() {
            let v = eval_decaying_with(state.energy, pair, T::zero(), policy)?;
            (state.constants.f * v.psi, state.constants.f * v.dpsi)
        } else {
            let v = eval_decaying_with(state.energy, pair, T::zero(), policy)?;
            (state.constants.a * v.psi, -state.constants.a * v.dpsi)
        };
        worst = worst
            .max((outer.0 - u_in).abs())
            .max((outer.1 - du_in).abs());
    }
    Ok(worst / scale)
}

fn check_matching<T: Real>(
    state: &Eigenstate<T>,
    policy: &SeriesPolicy<T>,
) -> Result<(), BathtubError> {
    let r = matching_residual(state, policy)?;
    if r > T::lit(1e-8) {
        return Err(BathtubError::MatchingResidual {
            residual: r.to_f64_lossy(),
        });
    }
    Ok(())
}

/// One row of a spectrum table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow<T> {
    pub l: T,
    pub n: usize,
    pub parity: Parity,
    pub energy: T,
    pub ratio_to_ground: T,
}

/// Eigenvalues for every `l`, rows ordered by `(l, n)` whatever the thread count.
pub fn spectrum_sweep<T: Real>(
    l_values: &[T],
    n_max: usize,
) -> Result<Vec<SpectrumRow<T>>, BathtubError> {
    if l_values.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(BathtubError::UnsortedLengths);
    }
    let per_l: Vec<Result<Vec<SpectrumRow<T>>, BathtubError>> = l_values
        .par_iter()
        .map(|&l| {
            let states = eigenvalues(l, n_max)?;
            let e0 = states[0].energy.value();
            Ok(states
                .iter()
                .map(|s| SpectrumRow {
                    l,
                    n: s.n,
                    parity: s.parity,
                    energy: s.energy.value(),
                    ratio_to_ground: s.energy.value() / e0,
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::with_capacity(l_values.len() * (n_max + 1));
    for r in per_l {
        rows.extend(r?);
    }
    Ok(rows)
}

/// The half-width at which level `n` has energy `target`, by bisection on the
/// decreasing function `E_n(l)` inside `[l_lo, l_hi]`.
pub fn length_for_level<T: Real>(
    n: usize,
    target: T,
    l_lo: T,
    l_hi: T,
    tol: T,
) -> Result<T, BathtubError> {
    let f = |l: T| -> Result<T, BathtubError> {
        let states = eigenvalues(l, n)?;
        Ok(states[n].energy.value() - target)
    };
    let (mut lo, mut hi) = (l_lo, l_hi);
    let (mut f_lo, f_hi) = (f(lo)?, f(hi)?);
    if (f_lo < T::zero()) == (f_hi < T::zero()) {
        return Err(BisectError::NoSignChange {
            a: lo.to_f64_lossy(),
            b: hi.to_f64_lossy(),
        }
        .into());
    }
    while hi - lo > tol {
        let mid = (lo + hi) * T::lit(0.5);
        let fm = f(mid)?;
        if (fm < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}
