//! Pauli-basis tomography of the path (x) polarization two-qubit state.
//!
//! Each measurement setting is a pair of Pauli operators, one on the path
//! qubit and one on the internal qubit, measured jointly with four outcomes
//! `(e_path, e_internal)` in `{+1, -1}^2`. An identity factor always reads
//! `+1`. The fifteen settings other than `(I, I)` form a complete set.

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, kron2, Pauli};
use crate::metrics::DualityTriple;
use crate::sampling::{self, Stream};
use crate::state::{self, DensityMatrix, PathLabel, PSD_TOLERANCE};

type M4 = Matrix4<Complex64>;

/// Joint outcomes in storage order.
pub const OUTCOMES: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub path_op: Pauli,
    pub internal_op: Pauli,
}

impl MeasurementSetting {
    pub fn new(path_op: Pauli, internal_op: Pauli) -> Self {
        Self {
            path_op,
            internal_op,
        }
    }

    /// The fifteen settings other than `(I, I)`, path operator major.
    pub fn all_nontrivial() -> Vec<MeasurementSetting> {
        Pauli::ALL
            .iter()
            .flat_map(|&p| {
                Pauli::ALL
                    .iter()
                    .map(move |&q| MeasurementSetting::new(p, q))
            })
            .filter(|m| !m.is_trivial())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.path_op == Pauli::I && self.internal_op == Pauli::I
    }

    pub fn operator(&self) -> M4 {
        kron2(&self.path_op.matrix(), &self.internal_op.matrix())
    }

    /// Joint eigenprojectors in [`OUTCOMES`] order.
    pub fn projectors(&self) -> [M4; 4] {
        OUTCOMES.map(|(e1, e2)| {
            kron2(
                &self.path_op.eigenprojector(e1),
                &self.internal_op.eigenprojector(e2),
            )
        })
    }
}

impl fmt::Display for MeasurementSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.path_op.label(), self.internal_op.label())
    }
}

/// Outcome counts for one setting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub setting: MeasurementSetting,
    /// Counts in [`OUTCOMES`] order.
    pub counts: [u64; 4],
    pub shots: u64,
    pub seed: u64,
}

impl CountRecord {
    pub fn count(&self, outcome: (i8, i8)) -> u64 {
        OUTCOMES
            .iter()
            .position(|&o| o == outcome)
            .map_or(0, |k| self.counts[k])
    }

    /// Empirical expectation of the setting's product observable.
    pub fn expectation(&self) -> f64 {
        Observation::from(self).expectation()
    }
}

/// Outcome frequencies for one setting with a statistical weight (the number
/// of shots). Built from a [`CountRecord`] or from exact probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub setting: MeasurementSetting,
    pub frequencies: [f64; 4],
    pub weight: f64,
}

impl Observation {
    /// Infinite-shot data: frequencies equal the exact outcome probabilities.
    pub fn exact(rho: &DensityMatrix, setting: MeasurementSetting, weight: f64) -> Result<Self> {
        let m = qubit_pair(rho)?;
        Ok(Self {
            setting,
            frequencies: outcome_probabilities(&m, setting),
            weight,
        })
    }

    pub fn expectation(&self) -> f64 {
        OUTCOMES
            .iter()
            .zip(self.frequencies)
            .map(|(&(e1, e2), f)| f64::from(e1 * e2) * f)
            .sum()
    }
}

impl From<&CountRecord> for Observation {
    fn from(r: &CountRecord) -> Self {
        let n = r.shots.max(1) as f64;
        Self {
            setting: r.setting,
            frequencies: r.counts.map(|c| c as f64 / n),
            weight: r.shots as f64,
        }
    }
}

/// Exact observations for all fifteen settings.
pub fn exact_observations(rho: &DensityMatrix) -> Result<Vec<Observation>> {
    MeasurementSetting::all_nontrivial()
        .into_iter()
        .map(|m| Observation::exact(rho, m, 1.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    LinearInversion,
    Mle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TomographyResult {
    pub rho_hat: DensityMatrix,
    pub method: Method,
    pub iterations: usize,
    pub log_likelihood: f64,
    pub converged: bool,
}

/// Largest step multiplier `t` tried by [`mle_reconstruct_from`].
pub const MAX_STEP: f64 = 1e6;
const MIN_STEP: f64 = 1e-12;

/// Weight of `I / 4` mixed into a linear-inversion start so it has full rank.
pub const START_MIXING: f64 = 1e-7;

/// Initial state of the maximum-likelihood iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MleStart {
    /// `I / 4`.
    MaximallyMixed,
    /// Linear-inversion estimate projected onto the physical states, mixed
    /// with [`START_MIXING`] of `I / 4`.
    #[default]
    LinearInversion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleOptions {
    pub max_iter: usize,
    /// Convergence threshold on the per-shot log-likelihood gain.
    pub tol: f64,
    pub start: MleStart,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            max_iter: 2000,
            tol: 1e-10,
            start: MleStart::default(),
        }
    }
}

fn qubit_pair(rho: &DensityMatrix) -> Result<M4> {
    if rho.internal_dim() != 2 {
        return Err(Error::RequiresQubit(rho.internal_dim()));
    }
    Ok(linalg::to_static4(rho.entries()))
}

fn trace_product(a: &M4, b: &M4) -> f64 {
    let mut t = Complex64::new(0.0, 0.0);
    for r in 0..4 {
        for c in 0..4 {
            t += a[(r, c)] * b[(c, r)];
        }
    }
    t.re
}

fn outcome_probabilities(rho: &M4, setting: MeasurementSetting) -> [f64; 4] {
    setting
        .projectors()
        .map(|p| trace_product(rho, &p).clamp(0.0, 1.0))
}

/// `Tr(rho (sigma_path (x) sigma_internal))`.
pub fn pauli_expectation(rho: &DensityMatrix, m: MeasurementSetting) -> Result<f64> {
    let r = qubit_pair(rho)?;
    Ok(trace_product(&r, &m.operator()))
}

/// Draws `shots` joint outcomes for one setting. Deterministic in `seed`.
pub fn sample_counts(
    rho: &DensityMatrix,
    m: MeasurementSetting,
    shots: u64,
    seed: u64,
) -> Result<CountRecord> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let r = qubit_pair(rho)?;
    let probs = outcome_probabilities(&r, m);
    let mut rng = sampling::rng_from_seed(seed);
    let counts = sampling::multinomial(&mut rng, shots, &probs)?;
    Ok(CountRecord {
        setting: m,
        counts,
        shots,
        seed,
    })
}

/// Samples all fifteen settings, each from a seed derived from `seed` and
/// the setting index.
pub fn sample_all_settings(rho: &DensityMatrix, shots: u64, seed: u64) -> Result<Vec<CountRecord>> {
    MeasurementSetting::all_nontrivial()
        .into_par_iter()
        .enumerate()
        .map(|(k, m)| {
            sample_counts(
                rho,
                m,
                shots,
                sampling::derive_seed(seed, Stream::Tomography, k as u64),
            )
        })
        .collect()
}

fn check_complete(obs: &[Observation]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for o in obs {
        if o.setting.is_trivial() {
            continue;
        }
        if !seen.insert(o.setting) {
            return Err(Error::DuplicateSetting(o.setting.to_string()));
        }
    }
    for m in MeasurementSetting::all_nontrivial() {
        if !seen.contains(&m) {
            return Err(Error::MissingSetting(m.to_string()));
        }
    }
    Ok(())
}

fn log_likelihood(rho: &M4, obs: &[Observation]) -> f64 {
    obs.iter()
        .map(|o| {
            let probs = outcome_probabilities(rho, o.setting);
            o.frequencies
                .iter()
                .zip(probs)
                .filter(|(f, _)| **f > 0.0)
                .map(|(f, p)| o.weight * f * p.max(1e-300).ln())
                .sum::<f64>()
        })
        .sum()
}

fn to_result(
    m: &M4,
    method: Method,
    iterations: usize,
    log_likelihood: f64,
    converged: bool,
) -> Result<TomographyResult> {
    let dyn_m = linalg::hermitize(&linalg::to_dynamic(m));
    let rho_hat = match method {
        Method::Mle => DensityMatrix::new(dyn_m, 2)?,
        Method::LinearInversion => DensityMatrix::hermitian_unit_trace(dyn_m, 2)?,
    };
    Ok(TomographyResult {
        rho_hat,
        method,
        iterations,
        log_likelihood,
        converged,
    })
}

/// `rho = (1/4) sum_ij <sigma_i (x) sigma_j> sigma_i (x) sigma_j` with `<I (x) I> = 1`.
pub fn linear_inversion(records: &[CountRecord]) -> Result<TomographyResult> {
    let obs: Vec<Observation> = records.iter().map(Observation::from).collect();
    linear_inversion_from(&obs)
}

pub fn linear_inversion_from(obs: &[Observation]) -> Result<TomographyResult> {
    check_complete(obs)?;
    let rho = linear_inversion_matrix(obs);
    let ll = log_likelihood(&rho, obs);
    to_result(&rho, Method::LinearInversion, 0, ll, true)
}

fn linear_inversion_matrix(obs: &[Observation]) -> M4 {
    let mut rho = MeasurementSetting::new(Pauli::I, Pauli::I).operator();
    for o in obs.iter().filter(|o| !o.setting.is_trivial()) {
        rho += o.setting.operator() * Complex64::from(o.expectation());
    }
    rho * Complex64::from(0.25)
}

/// Closest density matrix in Frobenius norm: eigenvalues are projected onto
/// the probability simplex, eigenvectors kept.
pub fn physical_projection(m: &M4) -> M4 {
    let (values, vectors) = linalg::hermitian_eigen(&linalg::to_dynamic(m));
    let mut sorted = values.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut shift = 0.0;
    let mut cumulative = 0.0;
    for (k, v) in sorted.iter().enumerate() {
        cumulative += v;
        let candidate = (cumulative - 1.0) / (k + 1) as f64;
        if v - candidate > 0.0 {
            shift = candidate;
        }
    }
    let mut out = M4::zeros();
    for (k, v) in values.iter().enumerate() {
        let w = (v - shift).max(0.0);
        if w > 0.0 {
            let col = vectors.column(k);
            out += M4::from_fn(|r, c| col[r] * col[c].conj()) * Complex64::from(w);
        }
    }
    out
}

/// Maximum-likelihood reconstruction with the `R rho R` fixed-point iteration.
pub fn mle_reconstruct(records: &[CountRecord], options: MleOptions) -> Result<TomographyResult> {
    let obs: Vec<Observation> = records.iter().map(Observation::from).collect();
    mle_reconstruct_from(&obs, options)
}

/// Starting from `options.start`, each step forms
/// `R = sum_j (f_j / p_j) Pi_j` (weighted by shots and normalized so that
/// `R = I` at the fixed point) and moves to `M rho M / Tr(...)` with
/// `M = (1 - t) I + t R`. `M` is Hermitian, so every iterate stays positive
/// semidefinite. A step is accepted only if the log-likelihood does not
/// decrease; otherwise `t` is halved and the step retried. After an accepted
/// step `t` doubles (up to [`MAX_STEP`]), which keeps convergence geometric
/// near rank-deficient optima where the plain `t = 1` iteration crawls.
/// Iteration stops when the per-shot gain drops below `tol`.
pub fn mle_reconstruct_from(obs: &[Observation], options: MleOptions) -> Result<TomographyResult> {
    check_complete(obs)?;
    let obs: Vec<Observation> = obs
        .iter()
        .filter(|o| !o.setting.is_trivial())
        .cloned()
        .collect();
    let total_weight: f64 = obs.iter().map(|o| o.weight).sum();
    if total_weight.is_nan() || total_weight <= 0.0 {
        return Err(Error::ZeroShots);
    }
    let projectors: Vec<[M4; 4]> = obs.iter().map(|o| o.setting.projectors()).collect();
    let identity = M4::identity();

    let mixed = identity * Complex64::from(0.25);
    let mut rho = match options.start {
        MleStart::MaximallyMixed => mixed,
        MleStart::LinearInversion => {
            let projected = physical_projection(&linear_inversion_matrix(&obs));
            projected * Complex64::from(1.0 - START_MIXING) + mixed * Complex64::from(START_MIXING)
        }
    };
    let mut ll = log_likelihood(&rho, &obs);
    let mut iterations = 0;
    let mut converged = false;
    let mut t = 1.0;

    while iterations < options.max_iter {
        iterations += 1;
        let mut r_op = M4::zeros();
        for (o, projs) in obs.iter().zip(&projectors) {
            for (f, proj) in o.frequencies.iter().zip(projs) {
                if *f <= 0.0 {
                    continue;
                }
                let p = trace_product(&rho, proj);
                if p > 1e-300 {
                    r_op += proj * Complex64::from(o.weight * f / p);
                }
            }
        }
        r_op /= Complex64::from(total_weight);

        let mut accepted = None;
        while t >= MIN_STEP {
            let m = identity * Complex64::from(1.0 - t) + r_op * Complex64::from(t);
            let mut next = m * rho * m;
            let tr = next.trace().re;
            if tr > 0.0 && tr.is_finite() {
                next /= Complex64::from(tr);
                next = (next + next.adjoint()) * Complex64::from(0.5);
                let next_ll = log_likelihood(&next, &obs);
                if next_ll >= ll {
                    accepted = Some((next, next_ll));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((next, next_ll)) = accepted else {
            converged = true;
            break;
        };
        let gain = (next_ll - ll) / total_weight;
        rho = next;
        ll = next_ll;
        if gain < options.tol {
            converged = true;
            break;
        }
        t = (2.0 * t).min(MAX_STEP);
    }
    to_result(&rho, Method::Mle, iterations, ll, converged)
}

/// Reads (V, D, C) off a two-qubit density matrix: `D = |Tr rho_AA - Tr rho_BB|`,
/// `V = 2 |Tr rho_AB|` and `C` from the Wootters formula. The residual is
/// reported, not enforced.
pub fn estimate_vdc_from_rho(rho: &DensityMatrix) -> Result<DualityTriple> {
    if rho.internal_dim() != 2 {
        return Err(Error::RequiresQubit(rho.internal_dim()));
    }
    let min = linalg::min_eigenvalue(rho.entries());
    if min < -PSD_TOLERANCE {
        return Err(Error::NonPhysical(min));
    }
    let p_a = linalg::trace(&rho.path_block(PathLabel::A, PathLabel::A)).re;
    let p_b = linalg::trace(&rho.path_block(PathLabel::B, PathLabel::B)).re;
    let coherence = linalg::trace(&rho.path_block(PathLabel::A, PathLabel::B));
    let c = state::wootters_concurrence(rho)?;
    Ok(DualityTriple::new(
        2.0 * coherence.norm(),
        (p_a - p_b).abs(),
        c,
        None,
    ))
}
