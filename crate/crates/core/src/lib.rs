//! Wave, particle and self-entanglement measures of a single photon.
//!
//! A photon split over the two arms of a Mach-Zehnder interferometer, with an
//! internal degree of freedom tagged to each arm, has fringe visibility `V`,
//! which-way distinguishability `D` and path/internal concurrence `C`
//! satisfying `V^2 + D^2 + C^2 = 1` for every pure state.
//!
//! - [`state`]: two-path states, Schmidt decomposition, density matrices,
//!   Wootters concurrence.
//! - [`metrics`]: closed-form `V`, `D`, `C` and the identity residual.
//! - [`interferometer`]: fringes, visibility fits, arm blocking, arm-local
//!   internal rotations.
//! - [`tomography`]: shot-noise sampling, linear inversion and
//!   maximum-likelihood reconstruction.
//! - [`scenario`], [`pipeline`], [`report`]: scenario files, the end-to-end
//!   simulated experiment and CSV/JSON output.

pub mod error;
pub mod interferometer;
pub mod linalg;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod sampling;
pub mod scenario;
pub mod state;
pub mod tomography;

pub use error::{Error, Result};
pub use metrics::{vdc_triple, DualityTriple, PathProbabilities};
pub use pipeline::{run_pipeline, run_scenarios, sphere_points, RunReport, SpherePoint};
pub use scenario::{default_scenarios, load_scenarios, Scenario};
pub use state::{DensityMatrix, InternalState, PathLabel, SchmidtDecomposition, TwoPathState};
