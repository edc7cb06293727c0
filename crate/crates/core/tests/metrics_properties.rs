mod common;

use common::{any_state, qubit_state};
use proptest::prelude::*;
use vdc::metrics::{distinguishability, entanglement, path_probabilities};
use vdc::{vdc_triple, TwoPathState};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn identity_holds(s in any_state()) {
        prop_assert!(vdc_triple(&s).residual.abs() < 1e-10);
    }

    #[test]
    fn components_are_in_unit_interval(s in any_state()) {
        for x in vdc_triple(&s).as_array() {
            prop_assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn wave_particle_bound_is_tight_only_without_entanglement(s in any_state()) {
        let t = vdc_triple(&s);
        let gap = 1.0 - t.wave_particle_sum();
        prop_assert!(gap >= -1e-12);
        prop_assert!((gap - t.c * t.c).abs() < 1e-10);
    }

    #[test]
    fn distinguishability_forms_agree(s in any_state()) {
        let d = distinguishability(&s);
        prop_assert!((d - path_probabilities(&s).distinguishability()).abs() < 1e-12);
    }

    #[test]
    fn entanglement_matches_schmidt(s in qubit_state()) {
        prop_assert!((entanglement(&s) - s.schmidt_decompose().concurrence()).abs() < 1e-9);
    }

    #[test]
    fn exclusivity_is_monotone_in_overlap(p_a in 0.01f64..0.99) {
        let grid: Vec<_> = (0..=20)
            .map(|k| vdc_triple(&TwoPathState::with_overlap(p_a, k as f64 / 20.0).unwrap()))
            .collect();
        for w in grid.windows(2) {
            prop_assert!(w[1].v > w[0].v);
            prop_assert!(w[1].c < w[0].c);
            prop_assert!((w[1].d - w[0].d).abs() < 1e-12);
        }
    }
}
