//! Two-path single-photon states and their bipartite structure.
//!
//! A photon in a two-arm interferometer is described by
//! `|Psi> = c_a |1_a> (x) |phi_a> + c_b |1_b> (x) |phi_b>`, where the path
//! qubit carries the which-arm label and `|phi_a>`, `|phi_b>` are normalized
//! states of every remaining internal degree of freedom (polarization when
//! `d = 2`).
//!
//! Tensor index convention: path major, internal minor. Basis index
//! `path * d + k` with path A = 0 and path B = 1.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

/// Absolute tolerance used when validating normalization of inputs.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Hermiticity and trace tolerance for density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Eigenvalues of a physical density matrix may dip this far below zero.
pub const PSD_TOLERANCE: f64 = 1e-8;
/// Eigenvalues of a Wootters input at or above `-WOOTTERS_CLAMP` are clamped to zero.
pub const WOOTTERS_CLAMP: f64 = 1e-9;

/// Which arm of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathLabel {
    A,
    B,
}

impl PathLabel {
    pub fn index(self) -> usize {
        match self {
            PathLabel::A => 0,
            PathLabel::B => 1,
        }
    }

    pub fn other(self) -> PathLabel {
        match self {
            PathLabel::A => PathLabel::B,
            PathLabel::B => PathLabel::A,
        }
    }
}

/// Normalized internal state of dimension `d >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct InternalState {
    amplitudes: DVector<Complex64>,
}

impl InternalState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = amplitudes.len();
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("internal state"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                what: "internal state",
                norm_sq,
            });
        }
        Ok(Self {
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Convenience constructor from real amplitudes.
    pub fn real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::from(x)).collect())
    }

    /// Basis vector `|k>` in dimension `d`.
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return Err(Error::DimensionMismatch { left: k, right: d });
        }
        let mut v = vec![ZERO; d];
        v[k] = Complex64::from(1.0);
        Self::new(v)
    }

    /// Haar-random state drawn from normalized complex Gaussians.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        loop {
            let v: Vec<Complex64> = (0..d)
                .map(|_| {
                    Complex64::new(
                        StandardNormal.sample(&mut *rng),
                        StandardNormal.sample(&mut *rng),
                    )
                })
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                return Self::new(v.into_iter().map(|z| z / norm).collect());
            }
        }
    }

    pub(crate) fn from_vector_unchecked(amplitudes: DVector<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &InternalState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }
}

/// Pure single-photon state over two paths and an internal degree of freedom.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPathState {
    c_a: Complex64,
    c_b: Complex64,
    phi_a: InternalState,
    phi_b: InternalState,
}

impl TwoPathState {
    pub fn new(
        c_a: Complex64,
        c_b: Complex64,
        phi_a: InternalState,
        phi_b: InternalState,
    ) -> Result<Self> {
        if phi_a.dim() != phi_b.dim() {
            return Err(Error::DimensionMismatch {
                left: phi_a.dim(),
                right: phi_b.dim(),
            });
        }
        if ![c_a.re, c_a.im, c_b.re, c_b.im]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(Error::NonFinite("path amplitudes"));
        }
        let norm_sq = c_a.norm_sqr() + c_b.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                what: "path amplitudes",
                norm_sq,
            });
        }
        Ok(Self {
            c_a,
            c_b,
            phi_a,
            phi_b,
        })
    }

    /// Qubit state with real amplitudes `sqrt(p_a)`, `sqrt(1 - p_a)`,
    /// `phi_a = |0>` and `phi_b = gamma |0> + sqrt(1 - gamma^2) |1>`, so that
    /// the overlap equals `gamma` for `gamma` in `[0, 1]`.
    pub fn with_overlap(p_a: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_a) {
            return Err(Error::OutOfRange {
                what: "p_a",
                value: p_a,
            });
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange {
                what: "gamma",
                value: gamma,
            });
        }
        Self::new(
            Complex64::from(p_a.sqrt()),
            Complex64::from((1.0 - p_a).sqrt()),
            InternalState::real(&[1.0, 0.0])?,
            InternalState::real(&[gamma, (1.0 - gamma * gamma).max(0.0).sqrt()])?,
        )
    }

    /// Random state: `|c_a|^2` uniform on `[0, 1]`, random phases on both
    /// amplitudes, Haar-random internal states of dimension `d`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Self> {
        let p_a: f64 = rng.random();
        let alpha = rng.random::<f64>() * std::f64::consts::TAU;
        let beta = rng.random::<f64>() * std::f64::consts::TAU;
        Self::new(
            Complex64::from_polar(p_a.sqrt(), alpha),
            Complex64::from_polar((1.0 - p_a).sqrt(), beta),
            InternalState::random(rng, d)?,
            InternalState::random(rng, d)?,
        )
    }

    pub fn c_a(&self) -> Complex64 {
        self.c_a
    }

    pub fn c_b(&self) -> Complex64 {
        self.c_b
    }

    pub fn phi_a(&self) -> &InternalState {
        &self.phi_a
    }

    pub fn phi_b(&self) -> &InternalState {
        &self.phi_b
    }

    pub fn amplitude(&self, path: PathLabel) -> Complex64 {
        match path {
            PathLabel::A => self.c_a,
            PathLabel::B => self.c_b,
        }
    }

    pub fn internal(&self, path: PathLabel) -> &InternalState {
        match path {
            PathLabel::A => &self.phi_a,
            PathLabel::B => &self.phi_b,
        }
    }

    pub fn internal_dim(&self) -> usize {
        self.phi_a.dim()
    }

    /// Overlap `gamma = <phi_a|phi_b>` of the internal states.
    pub fn overlap(&self) -> Complex64 {
        self.phi_a.amplitudes.dotc(&self.phi_b.amplitudes)
    }

    /// `1 - |gamma|^2`, evaluated through the Lagrange identity
    /// `|a|^2 |b|^2 - |<a|b>|^2 = sum_{i<j} |a_i b_j - a_j b_i|^2` so that it
    /// stays accurate when the internal states are nearly parallel.
    pub fn overlap_complement(&self) -> f64 {
        let a = &self.phi_a.amplitudes;
        let b = &self.phi_b.amplitudes;
        let d = a.len();
        let mut sum = 0.0;
        for i in 0..d {
            for j in i + 1..d {
                sum += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
            }
        }
        (sum / (a.norm_squared() * b.norm_squared())).min(1.0)
    }

    /// The same state multiplied by a global phase `e^{i theta}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let w = Complex64::from_polar(1.0, theta);
        Self {
            c_a: self.c_a * w,
            c_b: self.c_b * w,
            phi_a: self.phi_a.clone(),
            phi_b: self.phi_b.clone(),
        }
    }

    pub(crate) fn with_internal(&self, path: PathLabel, state: InternalState) -> Self {
        let mut out = self.clone();
        match path {
            PathLabel::A => out.phi_a = state,
            PathLabel::B => out.phi_b = state,
        }
        out
    }

    /// 2 x d coefficient matrix; row A is `c_a phi_a`, row B is `c_b phi_b`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        let d = self.internal_dim();
        DMatrix::from_fn(2, d, |r, k| match r {
            0 => self.c_a * self.phi_a.amplitudes[k],
            _ => self.c_b * self.phi_b.amplitudes[k],
        })
    }

    /// State vector in the path-major product basis (length `2d`).
    pub fn state_vector(&self) -> DVector<Complex64> {
        let m = self.coefficient_matrix();
        let d = self.internal_dim();
        DVector::from_fn(2 * d, |i, _| m[(i / d, i % d)])
    }

    pub fn schmidt_decompose(&self) -> SchmidtDecomposition {
        schmidt_decompose(self)
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        to_density_matrix(self)
    }
}

/// Schmidt form `sum_k lambda_k |u_k> (x) |v_k>` of a two-path state.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Orthonormal path vectors `u_1`, `u_2`.
    pub path_basis: [DVector<Complex64>; 2],
    /// Orthonormal internal vectors `v_1`, `v_2`.
    pub internal_basis: [DVector<Complex64>; 2],
}

impl SchmidtDecomposition {
    pub fn coefficients(&self) -> (f64, f64) {
        (self.lambda1, self.lambda2)
    }

    /// Pure-state concurrence `2 lambda1 lambda2`.
    pub fn concurrence(&self) -> f64 {
        concurrence_pure(self)
    }

    /// Rebuilds the 2 x d coefficient matrix from the Schmidt form.
    pub fn reconstruct(&self) -> CMatrix {
        let d = self.internal_basis[0].len();
        let lambdas = [self.lambda1, self.lambda2];
        DMatrix::from_fn(2, d, |r, k| {
            (0..2)
                .map(|s| self.path_basis[s][r] * self.internal_basis[s][k] * lambdas[s])
                .sum()
        })
    }
}

/// Schmidt decomposition via the singular value decomposition of the
/// 2 x d coefficient matrix. Singular values are returned in descending order.
pub fn schmidt_decompose(s: &TwoPathState) -> SchmidtDecomposition {
    let m = s.coefficient_matrix();
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order = [0usize, 1];
    if svd.singular_values[1] > svd.singular_values[0] {
        order.swap(0, 1);
    }
    // M = sum_k sigma_k u_k (v_t row k), so row k of V^H holds the internal vector as-is.
    let path = |k: usize| u.column(k).into_owned();
    let internal = |k: usize| v_t.row(k).transpose();
    SchmidtDecomposition {
        lambda1: svd.singular_values[order[0]],
        lambda2: svd.singular_values[order[1]],
        path_basis: [path(order[0]), path(order[1])],
        internal_basis: [internal(order[0]), internal(order[1])],
    }
}

/// Concurrence of a pure bipartite state from its Schmidt coefficients.
pub fn concurrence_pure(sd: &SchmidtDecomposition) -> f64 {
    (2.0 * sd.lambda1 * sd.lambda2).clamp(0.0, 1.0)
}

/// Which factor of the path (x) internal product to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Path,
    Internal,
}

/// Density operator on the path (x) internal space, dimension `2d x 2d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    internal_dim: usize,
}

impl DensityMatrix {
    /// Builds a physical density matrix: Hermitian, unit trace and
    /// positive semidefinite within the crate tolerances.
    pub fn new(entries: CMatrix, internal_dim: usize) -> Result<Self> {
        let rho = Self::hermitian_unit_trace(entries, internal_dim)?;
        let min = linalg::min_eigenvalue(&rho.entries);
        if min < -PSD_TOLERANCE {
            return Err(Error::NonPhysical(min));
        }
        Ok(rho)
    }

    /// Builds a Hermitian unit-trace matrix that need not be positive
    /// semidefinite (e.g. a linear-inversion estimate).
    pub fn hermitian_unit_trace(entries: CMatrix, internal_dim: usize) -> Result<Self> {
        if internal_dim < 2 {
            return Err(Error::DimensionTooSmall(internal_dim));
        }
        let n = 2 * internal_dim;
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: n,
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = linalg::hermiticity_error(&entries);
        if herm > DENSITY_TOLERANCE {
            return Err(Error::NotHermitian(herm));
        }
        let tr = linalg::trace(&entries);
        if (tr.re - 1.0).abs() > DENSITY_TOLERANCE || tr.im.abs() > DENSITY_TOLERANCE {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(Self {
            entries,
            internal_dim,
        })
    }

    /// Rank-one projector onto a normalized vector of length `2d`.
    pub fn from_pure(psi: &DVector<Complex64>, internal_dim: usize) -> Result<Self> {
        Self::new(psi * psi.adjoint(), internal_dim)
    }

    /// Maximally mixed state `I / 2d`.
    pub fn maximally_mixed(internal_dim: usize) -> Self {
        let n = 2 * internal_dim;
        Self {
            entries: CMatrix::identity(n, n) * Complex64::from(1.0 / n as f64),
            internal_dim,
        }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn internal_dim(&self) -> usize {
        self.internal_dim
    }

    pub fn dim(&self) -> usize {
        2 * self.internal_dim
    }

    pub fn purity(&self) -> f64 {
        linalg::trace(&(&self.entries * &self.entries)).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigen(&self.entries).0
    }

    pub fn is_physical(&self) -> bool {
        linalg::min_eigenvalue(&self.entries) >= -PSD_TOLERANCE
    }

    /// `d x d` block `<path_row| rho |path_col>` acting on the internal space.
    pub fn path_block(&self, row: PathLabel, col: PathLabel) -> CMatrix {
        let d = self.internal_dim;
        self.entries
            .view((row.index() * d, col.index() * d), (d, d))
            .into_owned()
    }

    pub fn partial_trace(&self, keep: Subsystem) -> CMatrix {
        partial_trace(self, keep)
    }

    /// Uhlmann fidelity with another density matrix of the same shape.
    pub fn fidelity(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(linalg::fidelity(&self.entries, &other.entries))
    }

    /// `<psi| rho |psi>` for a pure state.
    pub fn fidelity_with_pure(&self, s: &TwoPathState) -> Result<f64> {
        if s.internal_dim() != self.internal_dim {
            return Err(Error::DimensionMismatch {
                left: s.internal_dim(),
                right: self.internal_dim,
            });
        }
        let psi = s.state_vector();
        Ok((psi.adjoint() * &self.entries * &psi)[(0, 0)].re)
    }
}

/// Rank-one projector `|Psi><Psi|` of a two-path state.
pub fn to_density_matrix(s: &TwoPathState) -> DensityMatrix {
    let psi = s.state_vector();
    let entries = linalg::hermitize(&(&psi * psi.adjoint()));
    DensityMatrix {
        entries,
        internal_dim: s.internal_dim(),
    }
}

/// Reduced density matrix on the kept subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> CMatrix {
    let d = rho.internal_dim;
    let m = &rho.entries;
    match keep {
        Subsystem::Path => {
            CMatrix::from_fn(2, 2, |p, q| (0..d).map(|k| m[(p * d + k, q * d + k)]).sum())
        }
        Subsystem::Internal => {
            CMatrix::from_fn(d, d, |j, k| (0..2).map(|p| m[(p * d + j, p * d + k)]).sum())
        }
    }
}

fn spin_flip() -> CMatrix {
    let yy = linalg::kron2(&linalg::Pauli::Y.matrix(), &linalg::Pauli::Y.matrix());
    linalg::to_dynamic(&yy)
}

/// Wootters concurrence of a two-qubit density matrix (`d = 2`).
///
/// With `rho = X X^H` and `X = V diag(sqrt(mu))` from the eigendecomposition
/// of `rho`, the square roots of the eigenvalues of `rho * rho_tilde` are the
/// singular values of `tau = X^T (Y (x) Y) X`. Working with `tau` keeps the
/// small roots accurate for nearly pure inputs.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.internal_dim != 2 {
        return Err(Error::RequiresQubit(rho.internal_dim));
    }
    let (mu, vectors) = linalg::hermitian_eigen(&rho.entries);
    if mu[0] < -WOOTTERS_CLAMP {
        return Err(Error::NonPhysical(mu[0]));
    }
    let x = CMatrix::from_fn(4, 4, |r, k| vectors[(r, k)] * mu[k].max(0.0).sqrt());
    let tau = x.transpose() * spin_flip() * &x;
    let mut roots: Vec<f64> = tau.singular_values().iter().copied().collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(x: f64) -> Complex64 {
        Complex64::from(x)
    }

    fn state(c_a: f64, c_b: f64, phi_a: &[f64], phi_b: &[f64]) -> TwoPathState {
        TwoPathState::new(
            c(c_a),
            c(c_b),
            InternalState::real(phi_a).unwrap(),
            InternalState::real(phi_b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn overlap_examples() {
        assert!((state(H, H, &[1.0, 0.0], &[1.0, 0.0]).overlap() - 1.0).norm() < 1e-15);
        assert!(state(H, H, &[1.0, 0.0], &[0.0, 1.0]).overlap().norm() < 1e-15);
        let g = state(H, H, &[1.0, 0.0], &[H, H]).overlap();
        assert!((g - c(0.5f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn inner_rejects_dimension_mismatch() {
        let a = InternalState::basis(2, 0).unwrap();
        let b = InternalState::basis(3, 0).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::DimensionMismatch { .. })));
        assert!(TwoPathState::new(c(1.0), c(0.0), a, b).is_err());
    }

    #[test]
    fn constructors_reject_unnormalized_input() {
        assert!(matches!(
            InternalState::real(&[1.0, 0.1]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            InternalState::real(&[1.0]),
            Err(Error::DimensionTooSmall(1))
        ));
        let phi = InternalState::basis(2, 0).unwrap();
        assert!(matches!(
            TwoPathState::new(c(0.8), c(0.8), phi.clone(), phi.clone()),
            Err(Error::NotNormalized { .. })
        ));
        // within tolerance is accepted as-is, beyond it is rejected
        assert!(TwoPathState::new(c(1.0 + 1e-11), c(0.0), phi.clone(), phi.clone()).is_ok());
        assert!(TwoPathState::new(c(1.0 + 1e-8), c(0.0), phi.clone(), phi).is_err());
    }

    #[test]
    fn degenerate_amplitudes_keep_overlap() {
        let s = state(1.0, 0.0, &[1.0, 0.0], &[0.0, 1.0]);
        assert_eq!(s.overlap(), c(0.0));
    }

    #[test]
    fn schmidt_examples() {
        let product = state(1.0, 0.0, &[1.0, 0.0], &[0.0, 1.0]).schmidt_decompose();
        assert!((product.lambda1 - 1.0).abs() < 1e-12 && product.lambda2.abs() < 1e-12);
        assert!(product.concurrence().abs() < 1e-12);

        let bell = state(H, H, &[1.0, 0.0], &[0.0, 1.0]).schmidt_decompose();
        assert!((bell.lambda1 - H).abs() < 1e-12 && (bell.lambda2 - H).abs() < 1e-12);
        assert!((bell.concurrence() - 1.0).abs() < 1e-12);

        // Oracle: squared Schmidt coefficients are the eigenvalues of the
        // 2x2 Gram matrix M M^H = [[1/2, 1/(2 sqrt 2)], [1/(2 sqrt 2), 1/2]],
        // i.e. 1/2 +- 1/(2 sqrt 2).
        let partial = state(H, H, &[1.0, 0.0], &[H, H]).schmidt_decompose();
        let l1 = (0.5 + 0.5 * H).sqrt();
        let l2 = (0.5 - 0.5 * H).sqrt();
        assert!((partial.lambda1 - l1).abs() < 1e-12);
        assert!((partial.lambda2 - l2).abs() < 1e-12);
        assert!((partial.lambda1 - 0.923_88).abs() < 1e-5);
        assert!((partial.lambda2 - 0.382_68).abs() < 1e-5);
        assert!((partial.lambda1 * partial.lambda2 - 0.5 * (1.0 - 0.5f64).sqrt()).abs() < 1e-12);
        assert!((partial.concurrence() - H).abs() < 1e-12);
    }

    #[test]
    fn schmidt_bases_are_orthonormal_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in [2, 3, 5] {
            let s = TwoPathState::random(&mut rng, d).unwrap();
            let sd = s.schmidt_decompose();
            assert!(sd.lambda1 >= sd.lambda2 && sd.lambda2 >= 0.0);
            assert!((sd.lambda1.powi(2) + sd.lambda2.powi(2) - 1.0).abs() < 1e-10);
            for basis in [&sd.path_basis, &sd.internal_basis] {
                assert!((basis[0].norm() - 1.0).abs() < 1e-12);
                assert!((basis[1].norm() - 1.0).abs() < 1e-12);
                assert!(basis[0].dotc(&basis[1]).norm() < 1e-12);
            }
            let err = (sd.reconstruct() - s.coefficient_matrix()).norm();
            assert!(err < 1e-10, "d={d} err={err}");
        }
    }

    #[test]
    fn density_matrix_examples() {
        let rho = state(1.0, 0.0, &[1.0, 0.0], &[0.0, 1.0]).density_matrix();
        for r in 0..4 {
            for k in 0..4 {
                let expected = if (r, k) == (0, 0) { 1.0 } else { 0.0 };
                assert!((rho.entries()[(r, k)] - c(expected)).norm() < 1e-15);
            }
        }

        let bell = state(H, H, &[1.0, 0.0], &[0.0, 1.0]).density_matrix();
        for r in 0..4 {
            for k in 0..4 {
                let expected = if [0, 3].contains(&r) && [0, 3].contains(&k) {
                    0.5
                } else {
                    0.0
                };
                assert!((bell.entries()[(r, k)] - c(expected)).norm() < 1e-15);
            }
        }
        assert!((bell.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_examples() {
        let s = state(0.7f64.sqrt(), 0.3f64.sqrt(), &[1.0, 0.0], &[1.0, 0.0]);
        let red = s.density_matrix().partial_trace(Subsystem::Path);
        assert!((red[(0, 0)] - c(0.7)).norm() < 1e-12);
        assert!((red[(1, 1)] - c(0.3)).norm() < 1e-12);
        assert!((linalg::trace(&red) - c(1.0)).norm() < 1e-12);

        let bell = state(H, H, &[1.0, 0.0], &[0.0, 1.0]).density_matrix();
        let red = bell.partial_trace(Subsystem::Path);
        let expected = CMatrix::identity(2, 2) * c(0.5);
        assert!(linalg::max_abs(&(red - expected)) < 1e-15);

        let internal = bell.partial_trace(Subsystem::Internal);
        assert_eq!(internal.nrows(), 2);
        assert!((linalg::trace(&internal) - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn wootters_examples() {
        let bell = state(H, H, &[1.0, 0.0], &[0.0, 1.0]).density_matrix();
        assert!((wootters_concurrence(&bell).unwrap() - 1.0).abs() < 1e-10);
        let product = state(0.6, 0.8, &[H, H], &[H, H]).density_matrix();
        assert!(wootters_concurrence(&product).unwrap() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!(wootters_concurrence(&mixed).unwrap().abs() < 1e-12);
    }

    #[test]
    fn wootters_rejects_bad_inputs() {
        let qutrit = state(H, H, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).density_matrix();
        assert!(matches!(
            wootters_concurrence(&qutrit),
            Err(Error::RequiresQubit(3))
        ));

        let diag =
            DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.1), c(-0.1), c(0.0), c(0.0)]));
        let bad = DensityMatrix::hermitian_unit_trace(diag.clone(), 2).unwrap();
        assert!(matches!(
            wootters_concurrence(&bad),
            Err(Error::NonPhysical(_))
        ));
        assert!(matches!(
            DensityMatrix::new(diag, 2),
            Err(Error::NonPhysical(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let mut m = CMatrix::identity(4, 4) * c(0.25);
        m[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix::new(m, 2),
            Err(Error::NotHermitian(_))
        ));
        let m = CMatrix::identity(4, 4) * c(0.3);
        assert!(matches!(DensityMatrix::new(m, 2), Err(Error::BadTrace(_))));
        let m = CMatrix::identity(3, 3) * c(1.0 / 3.0);
        assert!(matches!(
            DensityMatrix::new(m, 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
