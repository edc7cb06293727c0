//! End-to-end simulated experiment for one scenario: analytic triple, noisy
//! fringe scan, arm blocking, tomography, and the resulting estimates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interferometer::{self, uniform_grid};
use crate::metrics::{self, DualityTriple};
use crate::scenario::Scenario;
use crate::state::{self, PathLabel};
use crate::tomography::{self, MleOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// RMS residual of the fringe fit.
    pub fit_rmse: f64,
    pub theta0_hat: f64,
    /// Estimated surviving-path probabilities from arm blocking.
    pub p_a_hat: f64,
    pub p_b_hat: f64,
    pub mle_iterations: usize,
    pub mle_converged: bool,
    pub log_likelihood: f64,
    /// `<psi| rho_hat |psi>` against the scenario's true state.
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub name: String,
    pub seed: u64,
    pub shots: u64,
    pub phase_points: usize,
    pub illustrative: bool,
    /// Closed-form triple of the true state.
    pub analytic: DualityTriple,
    /// Fringe `V`, arm-blocking `D` and tomographic `C`, unclamped.
    pub estimated: DualityTriple,
    /// All three components read from the reconstructed density matrix.
    pub tomographic: DualityTriple,
    pub diagnostics: Diagnostics,
}

impl RunReport {
    fn check_finite(&self) -> Result<()> {
        let d = &self.diagnostics;
        let values = [
            self.analytic.as_array().as_slice(),
            &[self.analytic.residual],
            self.estimated.as_array().as_slice(),
            &[self.estimated.residual],
            self.tomographic.as_array().as_slice(),
            &[self.tomographic.residual],
            &[
                d.fit_rmse,
                d.theta0_hat,
                d.p_a_hat,
                d.p_b_hat,
                d.log_likelihood,
                d.fidelity,
            ],
        ]
        .concat();
        if values.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite("run report"))
        }
    }
}

fn with_context<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Validation { .. } => e,
        e => Error::Scenario {
            scenario: name.to_string(),
            source: Box::new(e),
        },
    })
}

pub fn run_pipeline(sc: &Scenario) -> Result<RunReport> {
    run_pipeline_with(sc, MleOptions::default())
}

pub fn run_pipeline_with(sc: &Scenario, mle: MleOptions) -> Result<RunReport> {
    sc.validate()?;
    with_context(&sc.name, run_inner(sc, mle))
}

fn run_inner(sc: &Scenario, mle: MleOptions) -> Result<RunReport> {
    let s = sc.state()?;
    let analytic = metrics::vdc_triple(&s);

    let scan =
        interferometer::sample_fringe_scan(&s, &uniform_grid(sc.phase_points), sc.shots, sc.seed)?;
    let fit = interferometer::extract_visibility(&scan)?;

    // Blocking B leaves path A and vice versa.
    let p_a_hat = interferometer::sample_block_arm(&s, PathLabel::B, sc.shots, sc.seed)?;
    let p_b_hat = interferometer::sample_block_arm(&s, PathLabel::A, sc.shots, sc.seed)?;

    let rho = state::to_density_matrix(&s);
    let records = tomography::sample_all_settings(&rho, sc.shots, sc.seed)?;
    let tomo = tomography::mle_reconstruct(&records, mle)?;
    let tomographic = tomography::estimate_vdc_from_rho(&tomo.rho_hat)?;
    let fidelity = tomo.rho_hat.fidelity_with_pure(&s)?;

    let report = RunReport {
        name: sc.name.clone(),
        seed: sc.seed,
        shots: sc.shots,
        phase_points: sc.phase_points,
        illustrative: sc.illustrative,
        analytic,
        estimated: DualityTriple::new(
            fit.raw_visibility,
            (p_a_hat - p_b_hat).abs(),
            tomographic.c,
            None,
        ),
        tomographic,
        diagnostics: Diagnostics {
            fit_rmse: fit.rmse,
            theta0_hat: fit.theta0,
            p_a_hat,
            p_b_hat,
            mle_iterations: tomo.iterations,
            mle_converged: tomo.converged,
            log_likelihood: tomo.log_likelihood,
            fidelity,
        },
    };
    report.check_finite()?;
    Ok(report)
}

/// Runs every scenario; scenarios execute in parallel and reports keep the
/// input order.
pub fn run_scenarios(scenarios: &[Scenario]) -> Result<Vec<RunReport>> {
    scenarios.par_iter().map(run_pipeline).collect()
}

/// Same scenarios with shots and/or seed replaced.
pub fn with_overrides(
    scenarios: &[Scenario],
    shots: Option<u64>,
    seed: Option<u64>,
) -> Vec<Scenario> {
    scenarios
        .iter()
        .map(|sc| Scenario {
            shots: shots.unwrap_or(sc.shots),
            seed: seed.unwrap_or(sc.seed),
            ..sc.clone()
        })
        .collect()
}

/// A point on the unit sphere with coordinates `(V, D, C)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub name: String,
    pub analytic: [f64; 3],
    /// Estimated coordinates clamped to the first octant's unit cube.
    pub estimated: [f64; 3],
}

impl SpherePoint {
    pub fn analytic_radius(&self) -> f64 {
        self.analytic.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn estimated_radius(&self) -> f64 {
        self.estimated.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub fn sphere_points(reports: &[RunReport]) -> Vec<SpherePoint> {
    reports
        .iter()
        .map(|r| SpherePoint {
            name: r.name.clone(),
            analytic: r.analytic.as_array(),
            estimated: r.estimated.as_array().map(|x| x.clamp(0.0, 1.0)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::default_scenarios;
    use crate::state::TwoPathState;

    #[test]
    fn point_one_pipeline() {
        let sc = default_scenarios().remove(0);
        let r = run_pipeline(&sc).unwrap();
        assert_eq!(r.analytic.as_array(), [0.0, 0.0, 1.0]);
        assert!(r.estimated.residual.abs() <= 0.05, "{:?}", r.estimated);
        assert!(r.diagnostics.fidelity >= 0.98);
    }

    #[test]
    fn separable_scenario_has_small_concurrence() {
        let sc = default_scenarios().remove(4);
        assert_eq!(sc.name, "balanced-g1.00");
        let r = run_pipeline(&sc).unwrap();
        assert!(r.estimated.c <= 0.05, "{:?}", r.estimated);
    }

    #[test]
    fn repeat_runs_are_identical() {
        let sc = default_scenarios().remove(2);
        assert_eq!(run_pipeline(&sc).unwrap(), run_pipeline(&sc).unwrap());
    }

    #[test]
    fn errors_carry_scenario_name() {
        let mut sc = default_scenarios().remove(0);
        sc.shots = 10;
        assert!(
            matches!(run_pipeline(&sc), Err(Error::Validation { field, .. }) if field == "shots")
        );
    }

    #[test]
    fn sphere_examples() {
        let v1 = Scenario::from_state("v1", &TwoPathState::with_overlap(0.5, 1.0).unwrap());
        let reports = run_scenarios(&[default_scenarios().remove(0), v1]).unwrap();
        let pts = sphere_points(&reports);
        assert_eq!(pts[0].analytic, [0.0, 0.0, 1.0]);
        assert!((pts[1].analytic[0] - 1.0).abs() < 1e-12);
        assert!(pts[1].analytic[1].abs() < 1e-12 && pts[1].analytic[2].abs() < 1e-12);
        for p in &pts {
            assert!(p.estimated.iter().all(|x| (0.0..=1.0).contains(x)));
            assert!((p.analytic_radius() - 1.0).abs() < 1e-10);
        }
    }
}
