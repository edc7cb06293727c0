//! Sweeps |gamma| and the path balance and prints (V, D, C) with the
//! residual of V^2 + D^2 + C^2 - 1.

use vdc::{vdc_triple, TwoPathState};

fn main() -> vdc::Result<()> {
    println!(
        "{:>5} {:>6} {:>9} {:>9} {:>9} {:>10}",
        "p_a", "|g|", "V", "D", "C", "residual"
    );
    for p_a in [0.5, 0.7, 0.9] {
        for k in 0..=4 {
            let g = k as f64 / 4.0;
            let t = vdc_triple(&TwoPathState::with_overlap(p_a, g)?);
            println!(
                "{p_a:>5.2} {g:>6.2} {:>9.6} {:>9.6} {:>9.6} {:>10.2e}",
                t.v, t.d, t.c, t.residual
            );
        }
    }

    let mut rng = vdc::sampling::rng_from_seed(7);
    let worst = (0..10_000)
        .map(|_| TwoPathState::random(&mut rng, 2).map(|s| vdc_triple(&s).residual.abs()))
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))?;
    println!("\nlargest |residual| over 10000 random states: {worst:.3e}");
    Ok(())
}
