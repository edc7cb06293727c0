//! Visibility, distinguishability and concurrence of a two-path state, and
//! the residual of `V^2 + D^2 + C^2 = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::state::TwoPathState;

/// A (V, D, C) point together with the overlap that produced it and the
/// signed residual `V^2 + D^2 + C^2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityTriple {
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// Internal-state overlap; absent for estimates that do not resolve it.
    pub gamma: Option<Complex64>,
    pub residual: f64,
}

impl DualityTriple {
    pub fn new(v: f64, d: f64, c: f64, gamma: Option<Complex64>) -> Self {
        Self {
            v,
            d,
            c,
            gamma,
            residual: v * v + d * d + c * c - 1.0,
        }
    }

    pub fn radius_squared(&self) -> f64 {
        self.v * self.v + self.d * self.d + self.c * self.c
    }

    /// `V^2 + D^2`, the two-term budget that ignores entanglement.
    pub fn wave_particle_sum(&self) -> f64 {
        self.v * self.v + self.d * self.d
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.v, self.d, self.c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathProbabilities {
    pub p_a: f64,
    pub p_b: f64,
}

impl PathProbabilities {
    /// Which-way distinguishability `|p_a - p_b|`.
    pub fn distinguishability(&self) -> f64 {
        (self.p_a - self.p_b).abs()
    }
}

pub fn path_probabilities(s: &TwoPathState) -> PathProbabilities {
    PathProbabilities {
        p_a: s.c_a().norm_sqr(),
        p_b: s.c_b().norm_sqr(),
    }
}

/// `2 |c_a c_b|` for the state renormalized to unit path norm.
fn amplitude_product(s: &TwoPathState) -> f64 {
    let p = path_probabilities(s);
    2.0 * s.c_a().norm() * s.c_b().norm() / (p.p_a + p.p_b)
}

/// `V = 2 |c_a c_b gamma|`.
pub fn visibility(s: &TwoPathState) -> f64 {
    (amplitude_product(s) * s.overlap().norm()).min(1.0)
}

/// `D = sqrt(1 - 4 |c_a c_b|^2)`.
///
/// For normalized amplitudes the radicand equals `(p_a - p_b)^2 / (p_a + p_b)^2`;
/// that form is used because the literal difference cancels catastrophically
/// near balanced amplitudes.
pub fn distinguishability(s: &TwoPathState) -> f64 {
    let p = path_probabilities(s);
    ((p.p_a - p.p_b) / (p.p_a + p.p_b)).abs().min(1.0)
}

/// `C = 2 |c_a c_b| sqrt(1 - |gamma|^2)`.
pub fn entanglement(s: &TwoPathState) -> f64 {
    (amplitude_product(s) * s.overlap_complement().sqrt()).min(1.0)
}

pub fn vdc_triple(s: &TwoPathState) -> DualityTriple {
    DualityTriple::new(
        visibility(s),
        distinguishability(s),
        entanglement(s),
        Some(s.overlap()),
    )
}
