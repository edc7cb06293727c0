//! Three routes to the path/internal entanglement of one state: the closed
//! form, the Schmidt coefficients, and the Wootters formula on the density
//! matrix.

use vdc::metrics::entanglement;
use vdc::state::{self, InternalState, Subsystem};
use vdc::TwoPathState;

fn main() -> vdc::Result<()> {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let s = TwoPathState::new(
        c.into(),
        c.into(),
        InternalState::real(&[1.0, 0.0])?,
        InternalState::real(&[c, c])?,
    )?;

    let sd = s.schmidt_decompose();
    let (l1, l2) = sd.coefficients();
    let rho = s.density_matrix();
    println!("gamma            = {:.6}", s.overlap());
    println!("schmidt          = ({l1:.9}, {l2:.9})");
    println!("C closed form    = {:.12}", entanglement(&s));
    println!("C from schmidt   = {:.12}", sd.concurrence());
    println!(
        "C from wootters  = {:.12}",
        state::wootters_concurrence(&rho)?
    );

    let err = (sd.reconstruct() - s.coefficient_matrix()).norm();
    println!("reconstruction error = {err:.2e}");

    let path = rho.partial_trace(Subsystem::Path);
    println!("reduced path state:\n{path:.6}");
    Ok(())
}
