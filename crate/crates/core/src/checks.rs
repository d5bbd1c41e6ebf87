//! Self-check suite behind the `check` subcommand: structural invariants
//! of both routes on the reference configuration.

use std::f64::consts::PI;

use crate::analytic::closed_form_energy;
use crate::error::Result;
use crate::grid::build_grid;
use crate::hypergeometric::gauss_2f1_terms;
use crate::model::{ManifoldKind, ModelParams, PseudoSign, QuantumNumbers};
use crate::operators::{apply_full_laplacian_mode, radial_operator_apply, SeparableMode};
use crate::oracle::{convergence_study, numeric_spectrum, quadrature_weighted};
use crate::report::{compare_report, serialize_report, Format};
use crate::tridiagonal::{eigen_tridiagonal, sturm_count};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &'static str, result: Result<(bool, String)>) -> Self {
        match result {
            Ok((passed, detail)) => Self { name, passed, detail },
            Err(e) => Self {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

/// Largest interior discrepancy between the full-operator route and the
/// radial-operator route for one profile.
pub fn transcription_discrepancy(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    profile: &dyn Fn(f64) -> f64,
    intervals: usize,
    theta_max: Option<f64>,
) -> Result<f64> {
    let grid = build_grid(kind, intervals, theta_max)?;
    let f: Vec<f64> = grid.nodes().iter().map(|&t| profile(t)).collect();
    let full = apply_full_laplacian_mode(kind, p, &SeparableMode::new(&f, n, l, &grid)?)?;
    let radial = radial_operator_apply(kind, p, n, l, &f, &grid)?;
    Ok(full.iter().zip(&radial).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `2F1(-k, b; c; x)` summed from explicitly formed Pochhammer products.
pub fn naive_2f1(k: u32, b: f64, c: f64, x: f64) -> f64 {
    let mut total = 0.0;
    for j in 0..=k {
        let (mut num, mut den) = (1.0, 1.0);
        for i in 0..j {
            let i = i as f64;
            num *= (i - k as f64) * (b + i);
            den *= (c + i) * (i + 1.0);
        }
        total += num / den * x.powi(j as i32);
    }
    total
}

fn hypergeometric_check() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let mut terms_ok = true;
    for k in 0..=10u32 {
        for s in 0..10 {
            let t = (s * 10 + k as usize) as f64;
            let b = 5.0 * (0.37 * t).sin();
            let c = 0.5 + 4.0 * (0.53 * t).sin().abs();
            let x = (0.71 * t).cos();
            let terms = gauss_2f1_terms(k, b, c, x)?;
            terms_ok &= terms.len() == k as usize + 1;
            let fast = crate::hypergeometric::gauss_2f1_polynomial(k, b, c, x)?;
            let slow = naive_2f1(k, b, c, x);
            // the f64 reference itself is only good to eps·Σ|t_j|
            let magnitude: f64 = terms.iter().map(|t| t.abs()).sum();
            worst = worst.max((fast - slow).abs() / magnitude);
        }
    }
    Ok((terms_ok && worst < 1e-12, format!("max err / sum|terms| {worst:.3e}")))
}

fn energy_symmetry_check() -> Result<(bool, String)> {
    let p = ModelParams::natural();
    let mut ok = true;
    for kind in [ManifoldKind::Sphere, ManifoldKind::Pseudosphere(PseudoSign::Plus)] {
        for n in -3..=3 {
            for l in -3..=3 {
                for k in 0..4 {
                    let qn = QuantumNumbers::new(n, l, k);
                    let a = closed_form_energy(kind, &p, qn)?;
                    let b = closed_form_energy(kind, &p, qn.flipped())?;
                    ok &= a.to_bits() == b.to_bits();
                }
            }
        }
    }
    Ok((ok, "exact equality over |n|,|l| <= 3, k < 4".into()))
}

fn transcription_check() -> Result<(bool, String)> {
    let p = ModelParams::natural();
    let mut worst_ratio = (f64::INFINITY, f64::NEG_INFINITY);
    for (kind, tmax) in [
        (ManifoldKind::Sphere, None),
        (ManifoldKind::Pseudosphere(PseudoSign::Plus), Some(10.0)),
    ] {
        let span = tmax.unwrap_or(PI);
        let profile = move |t: f64| 1.0 + 0.5 * (PI * t / span).cos() - 0.3 * (2.0 * PI * t / span).cos();
        for (n, l) in [(0, 0), (1, -2), (3, 1)] {
            let coarse = transcription_discrepancy(kind, &p, n, l, &profile, 400, tmax)?;
            let fine = transcription_discrepancy(kind, &p, n, l, &profile, 800, tmax)?;
            let ratio = coarse / fine;
            worst_ratio = (worst_ratio.0.min(ratio), worst_ratio.1.max(ratio));
        }
    }
    let ok = worst_ratio.0 >= 3.5 && worst_ratio.1 <= 4.5;
    Ok((
        ok,
        format!("refinement ratios in [{:.3}, {:.3}]", worst_ratio.0, worst_ratio.1),
    ))
}

fn order_check() -> Result<(bool, String)> {
    let rep = convergence_study(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 0, 250, None)?;
    Ok((
        (1.8..=2.2).contains(&rep.order),
        format!("order {:.4}, extrapolated {:.12}", rep.order, rep.extrapolated),
    ))
}

fn structure_check() -> Result<(bool, String)> {
    let levels = numeric_spectrum(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 5, 1000, None)?;
    let grid = &levels[0].eigenvector.grid;
    let rho = grid.measure_weights();
    let mut off: f64 = 0.0;
    let mut diag: f64 = 0.0;
    let mut nodes_ok = true;
    for (i, a) in levels.iter().enumerate() {
        nodes_ok &= a.eigenvector.sign_changes() == i;
        for b in &levels[i..] {
            let ip = quadrature_weighted(&a.eigenvector.values, &b.eigenvector.values, grid, &rho)?;
            if a.index == b.index {
                diag = diag.max((ip - 1.0).abs());
            } else {
                off = off.max(ip.abs());
            }
        }
    }
    let ascending = levels.windows(2).all(|w| w[1].energy > w[0].energy);
    Ok((
        nodes_ok && ascending && off < 1e-6 && diag < 1e-8,
        format!("max |<i|j>| {off:.2e}, max |<i|i>-1| {diag:.2e}"),
    ))
}

fn numeric_symmetry_check() -> Result<(bool, String)> {
    let p = ModelParams {
        mass: 1.3,
        inertia: 0.6,
        radius: 0.9,
        alpha: 0.8,
        hbar: 1.1,
    };
    let a = numeric_spectrum(ManifoldKind::Sphere, &p, 1, 2, 3, 400, None)?;
    let b = numeric_spectrum(ManifoldKind::Sphere, &p, -1, -2, 3, 400, None)?;
    Ok((a == b, "(1,2) vs (-1,-2) at N = 400".into()))
}

fn sturm_consistency_check() -> Result<(bool, String)> {
    let g = build_grid(ManifoldKind::Sphere, 300, None)?;
    let form = crate::operators::sturm_liouville_form(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, &g)?;
    let values = eigen_tridiagonal(&form.diag, &form.offdiag, 6)?;
    let ok = values.windows(2).all(|w| {
        let sigma = 0.5 * (w[0] + w[1]);
        sturm_count(&form.diag, &form.offdiag, sigma) == values.iter().filter(|&&v| v < sigma).count()
    });
    Ok((ok, "counts at midpoints between the six lowest eigenvalues".into()))
}

fn determinism_check() -> Result<(bool, String)> {
    let run = || -> Result<Vec<u8>> {
        let r = compare_report(ManifoldKind::Sphere, &ModelParams::natural(), 0, 0, 2, 500, None)?;
        serialize_report(&r, Format::Json)
    };
    Ok((run()? == run()?, "two compare runs serialize identically".into()))
}

/// Runs every check; the suite passes iff all outcomes pass.
pub fn run_invariant_suite() -> Vec<CheckOutcome> {
    vec![
        CheckOutcome::from_result("hypergeometric-termination", hypergeometric_check()),
        CheckOutcome::from_result("closed-form-flip-symmetry", energy_symmetry_check()),
        CheckOutcome::from_result("operator-transcription", transcription_check()),
        CheckOutcome::from_result("richardson-order", order_check()),
        CheckOutcome::from_result("spectral-structure", structure_check()),
        CheckOutcome::from_result("numeric-flip-symmetry", numeric_symmetry_check()),
        CheckOutcome::from_result("sturm-count-consistency", sturm_consistency_check()),
        CheckOutcome::from_result("determinism", determinism_check()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_sum_agrees_on_small_case() {
        assert!((naive_2f1(2, 4.0, 2.0, 0.5) + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn suite_passes() {
        for outcome in run_invariant_suite() {
            assert!(outcome.passed, "{outcome:?}");
        }
    }
}
