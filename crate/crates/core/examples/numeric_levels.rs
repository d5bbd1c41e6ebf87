//! Finite-difference levels with eigenfunctions and ODE residuals.

use curved_kepler::{numeric_spectrum, ManifoldKind, ModelParams, PseudoSign};

fn main() -> curved_kepler::Result<()> {
    let p = ModelParams::natural();
    let levels = numeric_spectrum(ManifoldKind::Sphere, &p, 0, 0, 5, 2000, None)?;
    for lv in &levels {
        println!(
            "sphere level {}: E = {:.10}, nodes {}, residual {:.2e}",
            lv.index,
            lv.energy,
            lv.eigenvector.sign_changes(),
            lv.residual
        );
    }

    // a truncated pseudosphere at fixed step: only the ground level is
    // bound, the rest sit above the continuum edge and move with theta_max
    let kind = ManifoldKind::Pseudosphere(PseudoSign::Plus);
    for theta_max in [15.0, 20.0, 30.0] {
        let intervals = (200.0 * theta_max) as usize;
        let levels = numeric_spectrum(kind, &p, 0, 0, 2, intervals, Some(theta_max))?;
        println!(
            "pseudosphere theta_max {theta_max}: {:.8} {:.8}",
            levels[0].energy, levels[1].energy
        );
    }
    Ok(())
}
