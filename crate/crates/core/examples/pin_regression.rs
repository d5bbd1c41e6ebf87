//! Regenerates `tests/fixtures/pinned_levels.json`: ground and first-excited
//! energies from a 1000/2000/4000 Richardson study for the sphere and the
//! pseudosphere (plus branch, theta_max = 20), n = l = 0, natural units.
//!
//! cargo run --release --example pin_regression > tests/fixtures/pinned_levels.json

use curved_kepler::report::format_g17;
use curved_kepler::{convergence_study, ManifoldKind, ModelParams, PseudoSign};

fn main() -> curved_kepler::Result<()> {
    let p = ModelParams::natural();
    let cases = [
        ("sphere", ManifoldKind::Sphere, None),
        (
            "pseudosphere_plus",
            ManifoldKind::Pseudosphere(PseudoSign::Plus),
            Some(20.0),
        ),
    ];
    let mut entries = Vec::new();
    for (name, kind, theta_max) in cases {
        for level in 0..2 {
            let study = convergence_study(kind, &p, 0, 0, level, 1000, theta_max)?;
            eprintln!(
                "{name} level {level}: estimates {:?} order {:.4}",
                study.estimates, study.order
            );
            entries.push(format!(
                "  {{\"case\": \"{name}\", \"level\": {level}, \"energy\": {}, \"order\": {}}}",
                format_g17(study.extrapolated),
                format_g17(study.order)
            ));
        }
    }
    println!("[\n{}\n]", entries.join(",\n"));
    Ok(())
}
