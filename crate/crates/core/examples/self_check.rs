//! The invariant suite behind the `check` subcommand.

use curved_kepler::checks::run_invariant_suite;

fn main() {
    let outcomes = run_invariant_suite();
    for o in &outcomes {
        println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
    }
    if outcomes.iter().any(|o| !o.passed) {
        std::process::exit(1);
    }
}
