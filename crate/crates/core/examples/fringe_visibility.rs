//! Exact and shot-noise fringes, and the visibility recovered from each by a
//! sinusoidal fit.

use vdc::interferometer::{extract_visibility, fringe_scan, sample_fringe_scan, uniform_grid};
use vdc::metrics::visibility;
use vdc::TwoPathState;

fn main() -> vdc::Result<()> {
    let grid = uniform_grid(64);
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10}",
        "|g|", "V", "V exact", "V 1e3", "V 1e5"
    );
    for g in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let s = TwoPathState::with_overlap(0.5, g)?;
        let exact = extract_visibility(&fringe_scan(&s, &grid)?)?;
        let low = extract_visibility(&sample_fringe_scan(&s, &grid, 1_000, 1)?)?;
        let high = extract_visibility(&sample_fringe_scan(&s, &grid, 100_000, 1)?)?;
        println!(
            "{g:>5.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            visibility(&s),
            exact.visibility,
            low.raw_visibility,
            high.raw_visibility
        );
    }

    let s = TwoPathState::with_overlap(0.5, 0.6)?;
    let scan = sample_fringe_scan(&s, &uniform_grid(16), 10_000, 3)?;
    println!("\nphi       p");
    for p in scan.points() {
        println!(
            "{:.4}  {:.4}  {}",
            p.phi.0,
            p.p,
            "#".repeat((p.p * 40.0).round() as usize)
        );
    }
    Ok(())
}
