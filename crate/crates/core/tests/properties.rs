use proptest::prelude::*;

use whitham_mi::floquet::{bloch_matrix, bloch_spectrum, unmodulated_spectrum};
use whitham_mi::stability::{delta_mi, wilton_condition};
use whitham_mi::waves::{expansion_wave, galilean_shift, refine_wave, residual};
use whitham_mi::{Branch, DispersionModel};

fn model() -> impl Strategy<Value = DispersionModel> {
    prop_oneof![
        Just(DispersionModel::gravity()),
        (0.34f64..3.0).prop_map(|t| DispersionModel::capillary(t).unwrap()),
        (-8.0f64..8.0, any::<bool>()).prop_map(|(v, plus)| {
            DispersionModel::vorticity(v, if plus { Branch::Plus } else { Branch::Minus }).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symbol_is_even(m in model(), z in 1e-4f64..60.0) {
        prop_assert_eq!(m.value(z), m.value(-z));
    }

    #[test]
    fn minus_branch_is_reflected_plus(varpi in -10.0f64..10.0, z in 0.01f64..30.0) {
        let minus = DispersionModel::vorticity(varpi, Branch::Minus).unwrap();
        let plus = DispersionModel::vorticity(-varpi, Branch::Plus).unwrap();
        let tol = |x: f64| 1e-12 * x.abs().max(1.0);
        let (a, b) = (minus.symbol(z).unwrap(), plus.symbol(z).unwrap());
        prop_assert!((a + b).abs() <= tol(a));
        let (rm, rp) = (delta_mi(&minus, z).unwrap(), delta_mi(&plus, z).unwrap());
        prop_assert!((rm.delta_bf + rp.delta_bf).abs() <= tol(rm.delta_bf));
        let (im, ip) = (rm.delta_mi.unwrap(), rp.delta_mi.unwrap());
        prop_assert!((im - ip).abs() <= tol(im));
        prop_assert_eq!(rm.verdict, rp.verdict);
    }

    #[test]
    fn wilton_sign_matches_harmonic_gap(tau in 0.0f64..1.0, z in 0.1f64..10.0) {
        let m = DispersionModel::capillary(tau).unwrap();
        let gap = m.value(z) - m.value(2.0 * z);
        let w = wilton_condition(&m, z).unwrap();
        prop_assume!(gap.abs() > 1e-9 && w.abs() > 1e-9);
        prop_assert_eq!(gap > 0.0, w < 0.0);
    }

    #[test]
    fn galilean_round_trip(k in 0.3f64..3.0, a in -0.03f64..0.03, v in -0.5f64..0.5) {
        let m = DispersionModel::gravity();
        let w = expansion_wave(&m, k, a, 0.0).unwrap();
        let back = galilean_shift(&galilean_shift(&w, v).unwrap(), -v).unwrap();
        prop_assert!((back.c - w.c).abs() < 1e-14);
        prop_assert!(back.b.abs() < 1e-13);
        for (x, y) in back.cosine_coeffs.iter().zip(&w.cosine_coeffs) {
            prop_assert!((x - y).abs() < 1e-14);
        }
        let shifted = galilean_shift(&w, v).unwrap();
        prop_assert!((residual(&shifted) - residual(&w)).abs() < 1e-12);
    }

    #[test]
    fn expansion_profile_is_even_and_speed_even_in_a(k in 0.2f64..4.0, a in 0.0f64..0.05, z in -3.0f64..3.0) {
        let m = DispersionModel::gravity();
        let w = expansion_wave(&m, k, a, 0.0).unwrap();
        let wn = expansion_wave(&m, k, -a, 0.0).unwrap();
        prop_assert!((w.profile(z) - w.profile(-z)).abs() < 1e-15);
        prop_assert_eq!(w.c, wn.c);
    }

    #[test]
    fn zero_amplitude_eigenvalues_are_exact(m in model(), k in 0.2f64..5.0, xi in -0.5f64..0.5) {
        let flat = expansion_wave(&m, k, 0.0, 0.0).unwrap();
        let mut got = bloch_spectrum(&flat, xi, 12, None).unwrap().eigenvalues;
        let mut want = unmodulated_spectrum(&m, k, xi, 12);
        got.sort_by(|x, y| x.im.total_cmp(&y.im));
        want.sort_by(|x, y| x.im.total_cmp(&y.im));
        for (x, y) in got.iter().zip(&want) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn bloch_matrix_conjugate_flips(k in 0.3f64..3.0, xi in 0.01f64..0.49) {
        let m = DispersionModel::gravity();
        let w = refine_wave(&expansion_wave(&m, k, 0.01, 0.0).unwrap(), 10, 1e-12).unwrap();
        let n_f = 12;
        let a = bloch_matrix(&w, xi, n_f).unwrap();
        let b = bloch_matrix(&w, -xi, n_f).unwrap();
        let dim = 2 * n_f + 1;
        for r in 0..dim {
            for s in 0..dim {
                prop_assert!((b[(r, s)] - a[(dim - 1 - r, dim - 1 - s)].conj()).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn spectrum_serializes_losslessly() {
    let m = DispersionModel::capillary(0.5).unwrap();
    let w = refine_wave(&expansion_wave(&m, 2.0, 0.01, 0.0).unwrap(), 12, 1e-13).unwrap();
    let sp = bloch_spectrum(&w, 0.05, 16, None).unwrap();
    let text = serde_json::to_string(&sp).unwrap();
    let back: whitham_mi::SpectrumResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, sp);
    let wave_text = serde_json::to_string(&w).unwrap();
    assert_eq!(serde_json::from_str::<whitham_mi::TravelingWave>(&wave_text).unwrap(), w);
}
