use proptest::prelude::*;
use weberbox::hydrogen::{
    growth_prefactor, is_terminating, radial_asymptotic, radial_coeff_closed, radial_recurrence,
    RadialSeries,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_equals_recurrence(n in 0_usize..=50, l in 0_u32..=3, xi in 0.1_f64..5.0) {
        prop_assume!(!is_terminating(l, xi));
        let series = RadialSeries::new(l, xi, 1.0, n + 1);
        let rec = series.c[n];
        let closed = radial_coeff_closed(n, l, xi, 1.0).value;
        prop_assert!((closed - rec).abs() <= 1e-10 * rec.abs(), "n={n} L={l} xi={xi}: {closed:e} vs {rec:e}");
    }
}

#[test]
fn coefficient_ratio_tends_to_two_over_n() {
    for (l, xi) in [(0, 1.3), (1, 0.9), (3, 4.7)] {
        let n = 200;
        let r = radial_recurrence(1.0, n, l, xi) * n as f64 / 2.0;
        assert!((r - 1.0).abs() < 0.05, "L={l} xi={xi}: {r}");
    }
}

#[test]
fn growth_exceeds_bare_exponential_only_by_power() {
    let (l, xi) = (0, 1.3_f64);
    let k = growth_prefactor(l, xi).unwrap();
    let mut prev = f64::INFINITY;
    for rho in [25.0_f64, 50.0, 100.0, 200.0] {
        let a = radial_asymptotic(rho, l, xi, 1.0).unwrap();
        // against the bare exponential the series falls behind as a power
        let bare = (a.ln_series - 2.0 * rho).exp();
        assert!(bare < prev);
        prev = bare;
        assert!(((a.ratio / k) - 1.0).abs() < 0.05, "rho={rho}: {}", a.ratio / k);
    }
    assert!(prev < 1e-2);
}

#[test]
fn unacceptable_wavefunction_grows() {
    for (l, xi) in [(0, 1.3), (1, 0.9), (2, 7.1)] {
        let vals: Vec<f64> = (0..40)
            .map(|i| {
                let rho = 10.0 + 5.0 * i as f64;
                radial_asymptotic(rho, l, xi, 1.0).unwrap().ln_wavefunction(l)
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]), "L={l} xi={xi}");
    }
}

#[test]
fn terminating_energies_rejected() {
    assert!(radial_asymptotic(50.0, 1, 4.0, 1.0).is_err());
    assert_eq!(growth_prefactor(1, 4.0_f64).unwrap(), 0.0);
}
