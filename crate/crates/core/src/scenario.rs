//! Scenario definitions and the JSON scenario file.
//!
//! A scenario file is a JSON document with a top-level `scenarios` array:
//!
//! ```json
//! { "scenarios": [
//!   { "name": "balanced-g0.00",
//!     "c_a": [0.7071067811865476, 0.0], "c_b": [0.7071067811865476, 0.0],
//!     "phi_a": [[1.0, 0.0], [0.0, 0.0]], "phi_b": [[0.0, 0.0], [1.0, 0.0]],
//!     "shots": 100000, "phase_points": 64, "seed": 42 }
//! ] }
//! ```
//!
//! Complex numbers are `[re, im]` pairs.

use std::collections::HashSet;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interferometer::{DEFAULT_PHASE_POINTS, MIN_SCAN_POINTS};
use crate::state::{InternalState, TwoPathState};

pub const MIN_SHOTS: u64 = 100;
pub const DEFAULT_SHOTS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub c_a: [f64; 2],
    pub c_b: [f64; 2],
    pub phi_a: Vec<[f64; 2]>,
    pub phi_b: Vec<[f64; 2]>,
    pub shots: u64,
    pub phase_points: usize,
    pub seed: u64,
    /// Set on built-in scenarios whose parameters are constructed stand-ins
    /// rather than measured values.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub illustrative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scenarios: Vec<Scenario>,
}

fn complex(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Scenario {
    /// Scenario for `state` with the default shot count, grid and seed.
    pub fn from_state(name: impl Into<String>, state: &TwoPathState) -> Self {
        let vec = |phi: &InternalState| phi.amplitudes().iter().map(|&z| pair(z)).collect();
        Self {
            name: name.into(),
            c_a: pair(state.c_a()),
            c_b: pair(state.c_b()),
            phi_a: vec(state.phi_a()),
            phi_b: vec(state.phi_b()),
            shots: DEFAULT_SHOTS,
            phase_points: DEFAULT_PHASE_POINTS,
            seed: DEFAULT_SEED,
            illustrative: false,
        }
    }

    fn internal(&self, field: &str, amps: &[[f64; 2]]) -> Result<InternalState> {
        if amps.len() != 2 {
            return Err(Error::validation(
                &self.name,
                field,
                format!("expected 2 complex amplitudes, got {}", amps.len()),
            ));
        }
        InternalState::new(amps.iter().map(|&p| complex(p)).collect())
            .map_err(|e| Error::validation(&self.name, field, e.to_string()))
    }

    /// The two-path state described by this scenario.
    pub fn state(&self) -> Result<TwoPathState> {
        let phi_a = self.internal("phi_a", &self.phi_a)?;
        let phi_b = self.internal("phi_b", &self.phi_b)?;
        TwoPathState::new(complex(self.c_a), complex(self.c_b), phi_a, phi_b)
            .map_err(|e| Error::validation(&self.name, "c_a/c_b", e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::validation(&self.name, "name", "must not be empty"));
        }
        if self.shots < MIN_SHOTS {
            return Err(Error::validation(
                &self.name,
                "shots",
                format!("{} is below the minimum of {MIN_SHOTS}", self.shots),
            ));
        }
        if self.phase_points < MIN_SCAN_POINTS {
            return Err(Error::validation(
                &self.name,
                "phase_points",
                format!(
                    "{} is below the minimum of {MIN_SCAN_POINTS}",
                    self.phase_points
                ),
            ));
        }
        self.state().map(|_| ())
    }
}

/// Validates a list of scenarios: non-empty, unique names, every scenario valid.
pub fn validate_scenarios(scenarios: &[Scenario]) -> Result<()> {
    if scenarios.is_empty() {
        return Err(Error::validation(
            "",
            "scenarios",
            "at least one scenario is required",
        ));
    }
    let mut names = HashSet::new();
    for sc in scenarios {
        if !names.insert(sc.name.as_str()) {
            return Err(Error::validation(
                &sc.name,
                "name",
                "duplicate scenario name",
            ));
        }
        sc.validate()?;
    }
    Ok(())
}

pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate_scenarios(&file.scenarios)?;
    Ok(file.scenarios)
}

pub fn load_scenarios(path: impl AsRef<Path>) -> Result<Vec<Scenario>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    parse_scenarios(&text)
}

pub fn to_json(scenarios: &[Scenario]) -> Result<String> {
    serde_json::to_string_pretty(&ScenarioFile {
        scenarios: scenarios.to_vec(),
    })
    .map_err(|e| Error::Serialize(e.to_string()))
}

/// Overlap magnitudes of the balanced default family, in order.
pub const BALANCED_OVERLAPS: [f64; 5] = [0.0, 0.38, 0.71, 0.92, 1.0];
/// Path-A probability of the two unbalanced defaults.
pub const UNBALANCED_P_A: f64 = 0.85;

/// The seven built-in scenarios: five balanced states whose `|gamma|` walks
/// the `D = 0` arc from (0, 0, 1) to (1, 0, 0), and two states with
/// `p_a = 0.85` and `|gamma|` in {0, 1}. The first is the `V = D = 0` point.
pub fn default_scenarios() -> Vec<Scenario> {
    let balanced = BALANCED_OVERLAPS
        .iter()
        .map(|&g| (format!("balanced-g{g:.2}"), 0.5, g));
    let unbalanced = [0.0, 1.0].into_iter().map(|g| {
        (
            format!("unbalanced-pa{UNBALANCED_P_A:.2}-g{g:.2}"),
            UNBALANCED_P_A,
            g,
        )
    });
    balanced
        .chain(unbalanced)
        .map(|(name, p_a, g)| {
            let state =
                TwoPathState::with_overlap(p_a, g).expect("default parameters are in range");
            Scenario {
                illustrative: true,
                ..Scenario::from_state(name, &state)
            }
        })
        .collect()
}
