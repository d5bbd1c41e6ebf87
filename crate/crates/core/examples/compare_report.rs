//! Closed-form and finite-difference levels side by side, as CSV and JSON.

use std::io::Write;

use curved_kepler::{compare_report, serialize_report, Format, ManifoldKind, ModelParams};

fn main() -> curved_kepler::Result<()> {
    let report = compare_report(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 2, 2000, None)?;
    let mut out = std::io::stdout().lock();
    out.write_all(&serialize_report(&report, Format::Csv)?).unwrap();
    out.write_all(&serialize_report(&report, Format::Json)?).unwrap();
    for row in &report.levels {
        if let Some(d) = row.rel_diff {
            writeln!(
                out,
                "level {}: closed form and oracle differ by {:.1}%",
                row.level,
                100.0 * d
            )
            .unwrap();
        }
    }
    Ok(())
}
