//! Runs the built-in scenarios end to end and prints analytic and estimated
//! points on the (V, D, C) sphere.

use vdc::{default_scenarios, run_scenarios, sphere_points};

fn main() -> vdc::Result<()> {
    let reports = run_scenarios(&default_scenarios())?;
    println!(
        "{:<24} {:>22} {:>22} {:>7} {:>8}",
        "scenario", "analytic (V,D,C)", "estimated (V,D,C)", "|r|", "fidelity"
    );
    for (p, r) in sphere_points(&reports).iter().zip(&reports) {
        let fmt = |x: [f64; 3]| format!("({:.3},{:.3},{:.3})", x[0], x[1], x[2]);
        println!(
            "{:<24} {:>22} {:>22} {:>7.4} {:>8.5}",
            p.name,
            fmt(p.analytic),
            fmt(p.estimated),
            p.estimated_radius(),
            r.diagnostics.fidelity
        );
    }
    Ok(())
}
