//! Rotating the internal state in one arm trades visibility for which-way
//! entanglement while D stays fixed. Blocking an arm measures D directly.

use vdc::interferometer::{apply_arm_unitary, block_arm, sample_block_arm, ArmUnitary};
use vdc::{vdc_triple, PathLabel, TwoPathState};

fn main() -> vdc::Result<()> {
    let start = TwoPathState::with_overlap(0.7, 1.0)?;
    println!(
        "{:>6} {:>8} {:>8} {:>8} {:>8}",
        "beta", "V", "D", "C", "V^2+D^2"
    );
    for k in 0..=8 {
        let beta = k as f64 * std::f64::consts::PI / 16.0;
        let s = apply_arm_unitary(&start, &ArmUnitary::rotation(PathLabel::B, beta))?;
        let t = vdc_triple(&s);
        println!(
            "{beta:>6.3} {:>8.5} {:>8.5} {:>8.5} {:>8.5}",
            t.v,
            t.d,
            t.c,
            t.wave_particle_sum()
        );
    }

    let p_a = block_arm(&start, PathLabel::B);
    let est_a = sample_block_arm(&start, PathLabel::B, 100_000, 11)?;
    let est_b = sample_block_arm(&start, PathLabel::A, 100_000, 11)?;
    println!("\nblocking B: p_a = {p_a:.4}, measured {est_a:.4}");
    println!("D from blocking = {:.4}", (est_a - est_b).abs());
    Ok(())
}
