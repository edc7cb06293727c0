//! Small dense complex linear algebra used across the crate.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-qubit Pauli operators.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Matrix2<Complex64> {
        match self {
            Pauli::I => Matrix2::new(ONE, ZERO, ZERO, ONE),
            Pauli::X => Matrix2::new(ZERO, ONE, ONE, ZERO),
            Pauli::Y => Matrix2::new(ZERO, -I, I, ZERO),
            Pauli::Z => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        }
    }

    /// Projector onto the eigenspace with eigenvalue `sign` (+1 or -1).
    /// The identity has only the +1 eigenvalue, so its -1 projector is zero.
    pub fn eigenprojector(self, sign: i8) -> Matrix2<Complex64> {
        let id = Pauli::I.matrix();
        match self {
            Pauli::I if sign > 0 => id,
            Pauli::I => Matrix2::zeros(),
            p => (id + p.matrix() * Complex64::from(f64::from(sign))) * Complex64::from(0.5),
        }
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Kronecker product of two 2x2 matrices, first factor major.
pub fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)])
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry-wise deviation from Hermiticity.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::from(0.5)
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = hermitize(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigen(m).0.first().copied().unwrap_or(0.0)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Negative eigenvalues are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let n = m.nrows();
    let diag = CMatrix::from_fn(n, n, |r, c| {
        if r == c {
            Complex64::from(values[r].max(0.0).sqrt())
        } else {
            ZERO
        }
    });
    &vectors * diag * vectors.adjoint()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn to_dynamic(m: &Matrix4<Complex64>) -> CMatrix {
    CMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

pub fn to_static4(m: &CMatrix) -> Matrix4<Complex64> {
    Matrix4::from_fn(|r, c| m[(r, c)])
}

/// Uhlmann fidelity `(Tr sqrt(sqrt(a) b sqrt(a)))^2` between two density operators.
pub fn fidelity(a: &CMatrix, b: &CMatrix) -> f64 {
    let sa = psd_sqrt(a);
    let inner = &sa * b * &sa;
    let (values, _) = hermitian_eigen(&inner);
    let root: f64 = values.iter().map(|v| v.max(0.0).sqrt()).sum();
    root * root
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_projectors_resolve_identity() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let sum = p.eigenprojector(1) + p.eigenprojector(-1);
            assert!((sum - Pauli::I.matrix()).norm() < 1e-15);
            let diff = p.eigenprojector(1) - p.eigenprojector(-1);
            assert!((diff - p.matrix()).norm() < 1e-15);
        }
        assert_eq!(Pauli::I.eigenprojector(-1), Matrix2::zeros());
    }

    #[test]
    fn kron_is_path_major() {
        let m = kron2(&Pauli::Z.matrix(), &Pauli::I.matrix());
        let diag: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.7, 0.0),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(0.3, 0.0),
            ],
        );
        let s = psd_sqrt(&m);
        assert!(max_abs(&(&s * &s - &m)) < 1e-12);
    }

    #[test]
    fn fidelity_of_identical_states_is_one() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::from(0.25),
            Complex64::from(0.75),
        ]));
        assert!((fidelity(&m, &m) - 1.0).abs() < 1e-12);
    }
}
