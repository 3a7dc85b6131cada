use proptest::prelude::*;
use weberbox::bathtub::{Parity, PiecewisePotential};
use weberbox::numerov::SymmetricWell;
use weberbox::weber::{
    coeff_even_closed, coeff_odd_closed, eval_decaying, raw_series, recurrence_step,
    series_asymptotic_prefactors, Energy, EvalRegion, SeriesPolicy,
};

fn en(e: f64) -> Energy<f64> {
    Energy::new(e).unwrap()
}

fn iterate(a: f64, start: usize, steps: usize, e: Energy<f64>) -> f64 {
    (0..steps).fold(a, |a, k| recurrence_step(a, start + 2 * k, e))
}

fn near_terminating(e: f64) -> bool {
    let m = e - 0.5;
    (m - m.round()).abs() < 1e-6 && m > -0.5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_equals_recurrence(e in -3.0_f64..6.0, n in 0_usize..=50, odd in any::<bool>()) {
        prop_assume!(!near_terminating(e));
        let energy = en(e);
        let (closed, rec) = if odd {
            (coeff_odd_closed(n, energy, 1.0).value, iterate(1.0, 1, n, energy))
        } else {
            (coeff_even_closed(n, energy, 1.0).value, iterate(1.0, 0, n, energy))
        };
        prop_assert!((closed - rec).abs() <= 1e-10 * rec.abs(), "E = {e}, n = {n}: {closed:e} vs {rec:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ode_residual(e in 0.0_f64..5.0) {
        let policy = SeriesPolicy::default();
        let energy = en(e);
        let psi = |y: f64| eval_decaying(energy, y, &policy).unwrap().psi;
        let d = 1e-2;
        let mut max = 0.0_f64;
        let mut worst = 0.0_f64;
        for i in 20..=5000 {
            let y = i as f64 * 1e-3;
            let c = psi(y);
            let second = (-psi(y - 2.0 * d) + 16.0 * psi(y - d) - 30.0 * c + 16.0 * psi(y + d) - psi(y + 2.0 * d))
                / (12.0 * d * d);
            worst = worst.max((second + (e - y * y / 4.0) * c).abs());
            max = max.max(c.abs());
        }
        prop_assert!(worst <= 1e-6 * max, "E = {e}: {worst:e} vs {max:e}");
    }
}

#[test]
fn derivative_matches_difference() {
    let policy = SeriesPolicy::default();
    for e in [0.3, 1.0, 2.6] {
        for y in [0.5, 2.0, 4.0, 7.5] {
            let v = eval_decaying(en(e), y, &policy).unwrap();
            let d = 1e-5;
            let fd = (eval_decaying(en(e), y + d, &policy).unwrap().psi
                - eval_decaying(en(e), y - d, &policy).unwrap().psi)
                / (2.0 * d);
            assert!((v.dpsi - fd).abs() < 1e-7 * v.psi.abs().max(v.dpsi.abs()), "E={e} y={y}");
        }
    }
}

#[test]
fn decaying_envelope_constant() {
    let policy = SeriesPolicy::default();
    for e in [0.3, 1.0, 2.7, 4.1] {
        let g = |y: f64| {
            let v = eval_decaying(en(e), y, &policy).unwrap();
            v.psi * (y * y / 4.0).exp() / y.powf(e - 0.5)
        };
        assert!((g(8.0) / g(10.0) - 1.0).abs() < 0.02, "E={e}");
    }
}

#[test]
fn matches_numerov_from_far_tail() {
    // wall at l = 0: the outer region is the whole half-line
    let (e, h) = (1.0, 1e-3);
    let pot = PiecewisePotential::bathtub(0.0).unwrap();
    let well = SymmetricWell::new(pot, Parity::Even, h, e).unwrap();
    let sol = well.solve(e).unwrap().unscaled();
    let idx = |y: f64| (y / h).round() as usize + 1;
    let policy = SeriesPolicy::default();
    let reference = |y: f64| eval_decaying(en(e), y, &policy).unwrap().psi;
    // common scale fixed at y = 1
    let scale = reference(1.0) / sol[idx(1.0)];
    let y = 3.0;
    let num = sol[idx(y)] * scale;
    assert!(((num - reference(y)) / reference(y)).abs() < 1e-6);
}

#[test]
fn raw_series_grow() {
    let policy = SeriesPolicy::default();
    for e in [0.3, 1.0, 2.2, 3.7] {
        for y in [10.0_f64, 11.0, 12.0] {
            let (se, so) = raw_series(en(e), y, &policy).unwrap();
            let g = (-y * y / 4.0).exp();
            let bound = (y * y / 8.0).exp();
            assert!((g * se).abs() > bound && (g * so).abs() > bound, "E={e} y={y}");
        }
    }
}

#[test]
fn raw_series_ratio_tends_to_prefactor_ratio() {
    let policy = SeriesPolicy::default();
    for e in [0.3, 1.0, 2.2] {
        let (se, so) = raw_series(en(e), 12.0, &policy).unwrap();
        let p = series_asymptotic_prefactors(en(e));
        let r = (se / so) / (p.even / p.odd);
        assert!((r - 1.0).abs() < 0.02, "E={e}: {r}");
    }
}

#[test]
fn polynomial_region_at_terminating_energy() {
    let policy = SeriesPolicy::default();
    // E = 5/2: D_2 ~ (y^2 - 1) exp(-y^2/4)
    let v0 = eval_decaying(en(2.5), 0.0, &policy).unwrap();
    for y in [0.5, 3.0, 9.0, 20.0] {
        let v = eval_decaying(en(2.5), y, &policy).unwrap();
        assert_eq!(v.region, EvalRegion::Polynomial);
        let expect = (1.0 - y * y) * (-y * y / 4.0).exp();
        assert!((v.psi / v0.psi - expect).abs() < 1e-12 * expect.abs().max(1e-300) + 1e-14);
    }
}

#[test]
fn single_precision_gaussian() {
    let policy = SeriesPolicy::<f32>::default();
    let e = Energy::new(0.5_f32).unwrap();
    let p0 = eval_decaying(e, 0.0, &policy).unwrap().psi;
    for i in 0..=50 {
        let y = i as f32 * 0.1;
        let v = eval_decaying(e, y, &policy).unwrap().psi / p0;
        assert!((v - (-y * y / 4.0).exp()).abs() < 1e-5);
    }
}
