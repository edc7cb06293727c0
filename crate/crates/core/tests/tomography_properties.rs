mod common;

use common::qubit_state;
use proptest::prelude::*;
use vdc::linalg::{hermiticity_error, trace};
use vdc::state::to_density_matrix;
use vdc::tomography::{
    estimate_vdc_from_rho, linear_inversion, mle_reconstruct, sample_all_settings, MleOptions,
    MleStart,
};
use vdc::vdc_triple;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pure_state_readout_matches_closed_form(s in qubit_state()) {
        let est = estimate_vdc_from_rho(&to_density_matrix(&s)).unwrap();
        for (a, b) in est.as_array().iter().zip(vdc_triple(&s).as_array()) {
            prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn identical_seeds_give_identical_counts(s in qubit_state(), seed in any::<u64>(), shots in 1u64..100_000) {
        let rho = to_density_matrix(&s);
        let a = sample_all_settings(&rho, shots, seed).unwrap();
        prop_assert_eq!(&a, &sample_all_settings(&rho, shots, seed).unwrap());
        for r in &a {
            prop_assert_eq!(r.counts.iter().sum::<u64>(), shots);
        }
    }

    #[test]
    fn mle_is_physical(s in qubit_state(), seed in any::<u64>(), shots in 100u64..5_000, mixed in any::<bool>()) {
        let records = sample_all_settings(&to_density_matrix(&s), shots, seed).unwrap();
        let start = if mixed { MleStart::MaximallyMixed } else { MleStart::LinearInversion };
        let r = mle_reconstruct(&records, MleOptions { start, ..Default::default() }).unwrap();
        prop_assert!(r.rho_hat.eigenvalues()[0] >= -1e-10);
        prop_assert!((trace(r.rho_hat.entries()).re - 1.0).abs() < 1e-10);
        prop_assert!(hermiticity_error(r.rho_hat.entries()) < 1e-10);

        let lin = linear_inversion(&records).unwrap();
        prop_assert!(hermiticity_error(lin.rho_hat.entries()) < 1e-10);
        prop_assert!((trace(lin.rho_hat.entries()).re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn likelihood_never_decreases(s in qubit_state(), seed in any::<u64>(), mixed in any::<bool>()) {
        let records = sample_all_settings(&to_density_matrix(&s), 1_000, seed).unwrap();
        let start = if mixed { MleStart::MaximallyMixed } else { MleStart::LinearInversion };
        let mut last = f64::NEG_INFINITY;
        for k in 1..=12 {
            let r = mle_reconstruct(&records, MleOptions { max_iter: k, tol: 0.0, start }).unwrap();
            prop_assert!(r.log_likelihood >= last, "step {k}: {} < {last}", r.log_likelihood);
            last = r.log_likelihood;
        }
    }
}

#[test]
fn mle_error_scales_as_inverse_root_shots() {
    use rayon::prelude::*;
    let states: Vec<_> = vdc::default_scenarios()
        .iter()
        .map(|s| s.state().unwrap())
        .collect();
    let mean_errors = |shots: u64| -> [f64; 3] {
        let errs: Vec<[f64; 3]> = states
            .par_iter()
            .flat_map(|s| {
                let truth = vdc_triple(s).as_array();
                let rho = to_density_matrix(s);
                (0..128u64).into_par_iter().map(move |seed| {
                    let records = sample_all_settings(&rho, shots, seed).unwrap();
                    let r = mle_reconstruct(&records, MleOptions::default()).unwrap();
                    let est = estimate_vdc_from_rho(&r.rho_hat).unwrap().as_array();
                    [0, 1, 2].map(|k| (est[k] - truth[k]).abs())
                })
            })
            .collect();
        [0, 1, 2].map(|k| errs.iter().map(|e| e[k]).sum::<f64>() / errs.len() as f64)
    };
    let (low, high) = (mean_errors(10_000), mean_errors(40_000));
    for k in 0..3 {
        let ratio = low[k] / high[k];
        assert!((1.7..=2.3).contains(&ratio), "component {k}: ratio {ratio}");
    }
}
