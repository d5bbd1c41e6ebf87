//! Richardson refinement studies of the finite-difference levels.

use curved_kepler::{convergence_study, ManifoldKind, ModelParams, PseudoSign};

fn main() -> curved_kepler::Result<()> {
    let p = ModelParams::natural();
    let cases = [
        ("sphere", ManifoldKind::Sphere, None, 0, 0),
        ("sphere", ManifoldKind::Sphere, None, 1, -2),
        (
            "pseudosphere",
            ManifoldKind::Pseudosphere(PseudoSign::Plus),
            Some(20.0),
            0,
            0,
        ),
    ];
    for (name, kind, theta_max, n, l) in cases {
        for level in 0..2 {
            let r = convergence_study(kind, &p, n, l, level, 500, theta_max)?;
            println!(
                "{name} ({n},{l}) level {level}: N {:?} -> E {:?}, order {:.3}, E* {:.12}",
                r.grid_sizes, r.estimates, r.order, r.extrapolated
            );
        }
    }
    Ok(())
}
