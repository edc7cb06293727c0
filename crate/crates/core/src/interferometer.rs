//! Ideal Mach-Zehnder interferometer.
//!
//! Both beam splitters are lossless and balanced; detectors are perfectly
//! efficient. The relative arm phase `phi` multiplies the path-A amplitude,
//! and the `Plus` port receives `(e^{i phi} psi_a + psi_b) / sqrt 2`, giving
//! `p(phi) = (1 + V cos(phi + theta0)) / 2` with
//! `theta0 = arg(c_a conj(c_b) conj(gamma))`. The `Minus` port carries the
//! complementary fringe.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::sampling::{self, Stream};
use crate::state::{InternalState, PathLabel, TwoPathState};

/// Minimum number of points in a fringe scan.
pub const MIN_SCAN_POINTS: usize = 8;
/// Default number of phase points per scan.
pub const DEFAULT_PHASE_POINTS: usize = 64;
const UNITARY_TOLERANCE: f64 = 1e-10;

/// Relative propagation phase between the arms, in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhaseSetting(pub f64);

impl PhaseSetting {
    /// Phase reduced to `[0, 2 pi)`.
    pub fn reduced(self) -> f64 {
        self.0.rem_euclid(TAU)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputPort {
    Plus,
    Minus,
}

/// `n` uniformly spaced phases on `[0, 2 pi)`.
pub fn uniform_grid(n: usize) -> Vec<PhaseSetting> {
    (0..n)
        .map(|k| PhaseSetting(TAU * k as f64 / n as f64))
        .collect()
}

/// Probability of a click at `port` for relative phase `phi`.
pub fn port_probability(s: &TwoPathState, phi: PhaseSetting, port: OutputPort) -> f64 {
    let sign = match port {
        OutputPort::Plus => 1.0,
        OutputPort::Minus => -1.0,
    };
    let shift = Complex64::from_polar(1.0, phi.0);
    let a = s.phi_a().amplitudes() * (shift * s.c_a());
    let b = s.phi_b().amplitudes() * (s.c_b() * sign);
    (0.5 * (a + b).norm_squared()).clamp(0.0, 1.0)
}

/// Detection probability at the `Plus` port.
pub fn detection_probability(s: &TwoPathState, phi: PhaseSetting) -> f64 {
    port_probability(s, phi, OutputPort::Plus)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringePoint {
    pub phi: PhaseSetting,
    pub p: f64,
}

/// Detection probabilities (exact or estimated) sampled over the phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FringeScan {
    points: Vec<FringePoint>,
    noisy: bool,
    shots_per_point: u64,
}

impl FringeScan {
    pub fn new(points: Vec<FringePoint>, noisy: bool, shots_per_point: u64) -> Result<Self> {
        validate_grid(points.iter().map(|pt| pt.phi))?;
        if let Some(bad) = points.iter().find(|pt| !(0.0..=1.0).contains(&pt.p)) {
            return Err(Error::InvalidScan(format!(
                "probability {} outside [0, 1]",
                bad.p
            )));
        }
        Ok(Self {
            points,
            noisy,
            shots_per_point,
        })
    }

    pub fn points(&self) -> &[FringePoint] {
        &self.points
    }

    pub fn is_noisy(&self) -> bool {
        self.noisy
    }

    pub fn shots_per_point(&self) -> u64 {
        self.shots_per_point
    }
}

fn validate_grid(phases: impl Iterator<Item = PhaseSetting>) -> Result<()> {
    let phases: Vec<f64> = phases.map(|p| p.0).collect();
    if phases.len() < MIN_SCAN_POINTS {
        return Err(Error::InvalidScan(format!(
            "{} points, need at least {MIN_SCAN_POINTS}",
            phases.len()
        )));
    }
    if phases.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidScan("non-finite phase".into()));
    }
    if phases.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidScan(
            "phases must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Exact fringe over the given grid.
pub fn fringe_scan(s: &TwoPathState, grid: &[PhaseSetting]) -> Result<FringeScan> {
    validate_grid(grid.iter().copied())?;
    let points = grid
        .par_iter()
        .map(|&phi| FringePoint {
            phi,
            p: detection_probability(s, phi),
        })
        .collect();
    FringeScan::new(points, false, 0)
}

/// Fringe estimated from `shots` photons per phase point. Point `k` draws
/// from its own stream derived from `seed`.
pub fn sample_fringe_scan(
    s: &TwoPathState,
    grid: &[PhaseSetting],
    shots: u64,
    seed: u64,
) -> Result<FringeScan> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    validate_grid(grid.iter().copied())?;
    let points = grid
        .par_iter()
        .enumerate()
        .map(|(k, &phi)| {
            let mut rng =
                sampling::rng_from_seed(sampling::derive_seed(seed, Stream::Fringe, k as u64));
            let clicks = sampling::binomial(&mut rng, shots, detection_probability(s, phi));
            FringePoint {
                phi,
                p: clicks as f64 / shots as f64,
            }
        })
        .collect();
    FringeScan::new(points, true, shots)
}

/// Least-squares fit of `A + B cos(phi + theta)` to a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibilityFit {
    /// `B / A` clamped to `[0, 1]`.
    pub visibility: f64,
    /// Unclamped `B / A`.
    pub raw_visibility: f64,
    pub theta0: f64,
    pub offset: f64,
    pub amplitude: f64,
    /// Root-mean-square fit residual.
    pub rmse: f64,
}

/// Fits `p(phi) = A + b1 cos(phi) + b2 sin(phi)` by linear least squares and
/// returns `B = |(b1, b2)|`, `theta = atan2(-b2, b1)` and `V = B / A`.
pub fn extract_visibility(scan: &FringeScan) -> Result<VisibilityFit> {
    let pts = scan.points();
    let first = pts.first().map(|p| p.phi.0).unwrap_or(0.0);
    let last = pts.last().map(|p| p.phi.0).unwrap_or(0.0);
    if last - first < TAU * 7.0 / 8.0 {
        return Err(Error::InvalidScan(format!(
            "phase span {:.4} is shorter than 7/8 of a period",
            last - first
        )));
    }
    let n = pts.len();
    let design = DMatrix::from_fn(n, 3, |r, c| match c {
        0 => 1.0,
        1 => pts[r].phi.0.cos(),
        _ => pts[r].phi.0.sin(),
    });
    let target = DVector::from_iterator(n, pts.iter().map(|p| p.p));
    let qr = design.clone().qr();
    let r = qr.r();
    let scale = r.diagonal().iter().map(|x| x.abs()).fold(0.0, f64::max);
    if r.diagonal()
        .iter()
        .any(|x| x.abs() <= 1e-10 * scale.max(1.0))
    {
        return Err(Error::FitFailed(
            "phase grid does not resolve a single harmonic".into(),
        ));
    }
    let rhs = qr.q().transpose() * &target;
    let coef = r
        .solve_upper_triangular(&rhs)
        .ok_or_else(|| Error::FitFailed("singular least-squares system".into()))?;
    let (offset, b1, b2) = (coef[0], coef[1], coef[2]);
    if offset.abs() < 1e-12 {
        return Err(Error::FitFailed("fringe offset is zero".into()));
    }
    let amplitude = b1.hypot(b2);
    let raw_visibility = amplitude / offset;
    let residual = &design * &coef - &target;
    Ok(VisibilityFit {
        visibility: raw_visibility.clamp(0.0, 1.0),
        raw_visibility,
        theta0: (-b2).atan2(b1),
        offset,
        amplitude,
        rmse: (residual.norm_squared() / n as f64).sqrt(),
    })
}

/// Probability that a photon reaches the detectors when `blocked` is
/// obstructed, i.e. the probability of the surviving path.
pub fn block_arm(s: &TwoPathState, blocked: PathLabel) -> f64 {
    s.amplitude(blocked.other()).norm_sqr()
}

/// Estimated surviving-path probability from `shots` photons.
pub fn sample_block_arm(
    s: &TwoPathState,
    blocked: PathLabel,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut rng = sampling::rng_from_seed(sampling::derive_seed(
        seed,
        Stream::ArmBlock,
        blocked.index() as u64,
    ));
    Ok(sampling::binomial(&mut rng, shots, block_arm(s, blocked)) as f64 / shots as f64)
}

/// Unitary acting on the internal state of one arm.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmUnitary {
    matrix: CMatrix,
    arm: PathLabel,
}

impl ArmUnitary {
    pub fn new(matrix: CMatrix, arm: PathLabel) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        let n = matrix.nrows();
        let dev = linalg::max_abs(&(matrix.adjoint() * &matrix - CMatrix::identity(n, n)));
        if dev > UNITARY_TOLERANCE || !dev.is_finite() {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { matrix, arm })
    }

    /// Real rotation by `beta` in a two-dimensional internal space
    /// (a half-wave-plate style polarization rotation).
    pub fn rotation(arm: PathLabel, beta: f64) -> Self {
        let (s, c) = beta.sin_cos();
        let m = CMatrix::from_row_slice(2, 2, &[c.into(), (-s).into(), s.into(), c.into()]);
        Self { matrix: m, arm }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn arm(&self) -> PathLabel {
        self.arm
    }
}

/// Rotates the internal state of one arm; path amplitudes are untouched.
pub fn apply_arm_unitary(s: &TwoPathState, u: &ArmUnitary) -> Result<TwoPathState> {
    let current = s.internal(u.arm);
    if u.matrix.nrows() != current.dim() {
        return Err(Error::DimensionMismatch {
            left: u.matrix.nrows(),
            right: current.dim(),
        });
    }
    let rotated = &u.matrix * current.amplitudes();
    Ok(s.with_internal(u.arm, InternalState::from_vector_unchecked(rotated)))
}
