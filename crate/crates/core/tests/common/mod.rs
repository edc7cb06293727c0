#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;
use vdc::sampling::rng_from_seed;
use vdc::TwoPathState;

pub fn random_state(seed: u64, d: usize) -> TwoPathState {
    TwoPathState::random(&mut rng_from_seed(seed), d).unwrap()
}

/// Random qubit-pair state from a proptest-chosen seed.
pub fn qubit_state() -> impl Strategy<Value = TwoPathState> {
    any::<u64>().prop_map(|seed| random_state(seed, 2))
}

/// Random state with internal dimension 2..=4.
pub fn any_state() -> impl Strategy<Value = TwoPathState> {
    (any::<u64>(), 2usize..=4).prop_map(|(seed, d)| random_state(seed, d))
}

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
pub fn random_unitary(seed: u64, d: usize) -> DMatrix<Complex64> {
    let mut rng = rng_from_seed(seed);
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..d {
        let z = r[(k, k)];
        let phase = if z.norm() > 0.0 {
            z / z.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let col = q.column(k) * phase;
        q.set_column(k, &col);
    }
    q
}
