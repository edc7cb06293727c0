use vdc::pipeline::{run_pipeline, with_overrides};
use vdc::{default_scenarios, run_scenarios};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

#[test]
fn defaults_lie_on_the_unit_sphere() {
    for sc in default_scenarios() {
        let t = vdc::vdc_triple(&sc.state().unwrap());
        assert!((t.radius_squared() - 1.0).abs() < 1e-12, "{}", sc.name);
    }
}

#[test]
fn estimated_radius_is_near_one() {
    for r in run_scenarios(&default_scenarios()).unwrap() {
        assert!(
            (r.estimated.radius_squared() - 1.0).abs() <= 0.05,
            "{}: {:?}",
            r.name,
            r.estimated
        );
        for x in r.estimated.as_array() {
            assert!(
                x.is_finite() && (0.0..=1.05).contains(&x),
                "{}: {x}",
                r.name
            );
        }
    }
}

#[test]
fn radius_error_shrinks_with_shots() {
    let seeds: Vec<u64> = (0..31).collect();
    for sc in default_scenarios() {
        let err = |shots| {
            median(
                seeds
                    .iter()
                    .map(|&seed| {
                        let sc =
                            &with_overrides(std::slice::from_ref(&sc), Some(shots), Some(seed))[0];
                        (run_pipeline(sc).unwrap().estimated.radius_squared().sqrt() - 1.0).abs()
                    })
                    .collect(),
            )
        };
        let (low, high) = (err(10_000), err(400_000));
        assert!(high <= low, "{}: {high} > {low}", sc.name);
    }
}

#[test]
fn reports_follow_input_order() {
    let mut scenarios = default_scenarios();
    scenarios.reverse();
    let names: Vec<_> = run_scenarios(&scenarios)
        .unwrap()
        .into_iter()
        .map(|r| r.name)
        .collect();
    let expected: Vec<_> = scenarios.into_iter().map(|s| s.name).collect();
    assert_eq!(names, expected);
}
