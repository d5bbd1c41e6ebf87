//! Closed-form energies and polynomial radial functions.

use std::sync::Arc;

use curved_kepler::analytic::wavefunction_upper_limit;
use curved_kepler::{
    analytic_samples, analytic_spectrum, build_grid, ManifoldKind, ModelParams, Normalization, PseudoSign,
    QuantumNumbers,
};

fn main() -> curved_kepler::Result<()> {
    let p = ModelParams::natural();
    let kinds = [
        ManifoldKind::Sphere,
        ManifoldKind::Pseudosphere(PseudoSign::Plus),
        ManifoldKind::Pseudosphere(PseudoSign::Minus),
    ];
    for kind in kinds {
        for (n, l) in [(0, 0), (1, 0), (1, -2)] {
            let levels = analytic_spectrum(kind, &p, n, l, 3)?;
            let energies: Vec<f64> = levels.iter().map(|lv| lv.energy).collect();
            let kn = levels[0].kappa_nu;
            println!("{kind} n={n} l={l} (kappa {}, nu {}): {energies:?}", kn.kappa, kn.nu);
        }
    }

    // a heavier, more strongly coupled rotor
    let heavy = ModelParams {
        mass: 2.0,
        alpha: 1.5,
        ..p
    };
    let levels = analytic_spectrum(ManifoldKind::Sphere, &heavy, 0, 0, 2)?;
    println!(
        "sphere m=2 alpha=1.5: {:?}",
        levels.iter().map(|lv| lv.energy).collect::<Vec<_>>()
    );

    let kind = ManifoldKind::Sphere;
    let grid = build_grid(kind, 400, None)?.restrict_to(wavefunction_upper_limit(kind));
    let grid = Arc::new(grid);
    for k in 0..3 {
        let f = analytic_samples(
            kind,
            &p,
            QuantumNumbers::new(1, 0, k),
            grid.clone(),
            Normalization::UnitNorm,
        )?;
        println!("k = {k}: {} interior sign changes on (0, pi/2]", f.sign_changes());
    }
    Ok(())
}
