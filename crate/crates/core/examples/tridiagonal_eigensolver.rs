//! Sturm-count bisection and inverse iteration on a symmetric tridiagonal matrix.

use std::f64::consts::PI;

use curved_kepler::tridiagonal::bisect_eigenvalues;
use curved_kepler::{eigenvector_inverse_iteration, sturm_count};

fn main() -> curved_kepler::Result<()> {
    // second-difference matrix: eigenvalues 2 - 2cos(j·pi/(n+1))
    let n = 100;
    let diag = vec![2.0; n];
    let off = vec![-1.0; n - 1];

    let found = bisect_eigenvalues(&diag, &off, 4)?;
    for (j, lam) in found.values.iter().enumerate() {
        let exact = 2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 1) as f64).cos();
        println!("lambda_{j} = {lam:.15e}  error {:.1e}", (lam - exact).abs());
    }
    println!("eigenvalues below 0.01: {}", sturm_count(&diag, &off, 0.01));

    let v = eigenvector_inverse_iteration(&diag, &off, found.values[0])?;
    let peak = v.iter().cloned().fold(f64::MIN, f64::max);
    println!("ground vector: unit norm, first {:.6}, peak {peak:.6}", v[0]);
    Ok(())
}
