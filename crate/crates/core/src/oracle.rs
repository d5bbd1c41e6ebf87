//! Finite-difference ground truth for the radial eigenproblems:
//! spectra with eigenfunctions, weighted quadrature, ODE residuals and
//! Richardson convergence studies.

use std::sync::Arc;

use crate::analytic::{Normalization, WavefunctionSamples};
use crate::error::{Error, Result};
use crate::grid::{build_grid, RadialGrid};
use crate::model::{require_valid, ManifoldKind, ModelParams};
use crate::operators::{radial_apply_unchecked, sturm_liouville_form, MIN_STENCIL_NODES};
use crate::tridiagonal::{bisect_eigenvalues, eigenvector_inverse_iteration};

/// One computed level, `index` counting from the ground state.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericLevel {
    pub index: usize,
    pub energy: f64,
    pub eigenvector: WavefunctionSamples,
    pub residual: f64,
}

/// Trapezoidal `∫ f g ρ dθ` over the grid span, with zero values at the two
/// ends of the span.
pub fn quadrature_weighted(f: &[f64], g: &[f64], grid: &RadialGrid, rho: &[f64]) -> Result<f64> {
    let n = grid.len();
    for len in [f.len(), g.len(), rho.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    let sum: f64 = f.iter().zip(g).zip(rho).map(|((a, b), r)| a * b * r).sum();
    Ok(grid.step() * sum)
}

/// Weighted 2-norm over interior nodes of
/// `f'' + w f' - W f + (2mR²/ħ²)(E - V) f`, zero for an exact eigenpair.
pub fn ode_residual(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    energy: f64,
    f: &[f64],
    grid: &RadialGrid,
) -> Result<f64> {
    require_valid(p)?;
    if grid.len() < MIN_STENCIL_NODES {
        return Err(Error::GridTooSmall {
            nodes: grid.len(),
            required: MIN_STENCIL_NODES,
        });
    }
    if f.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: f.len(),
        });
    }
    let lhs = radial_apply_unchecked(kind, p, n, l, f, grid);
    let eigen = energy / p.energy_scale();
    let coupling = 2.0 * p.reduced_coupling();
    let nodes = grid.nodes();
    let h = grid.step();
    let sum: f64 = (1..nodes.len() - 1)
        .map(|i| {
            let t = nodes[i];
            let reduced_v = -coupling * kind.log_derivative(t);
            let r = lhs[i - 1] + (eigen - reduced_v) * f[i];
            kind.measure_density(t) * r * r
        })
        .sum();
    Ok((h * sum).sqrt())
}

/// The `count` lowest levels of the `(n, l)` mode on an `intervals`-step
/// grid. `theta_max` must be given exactly for the pseudosphere.
pub fn numeric_spectrum(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    count: usize,
    intervals: usize,
    theta_max: Option<f64>,
) -> Result<Vec<NumericLevel>> {
    require_valid(p)?;
    let grid = Arc::new(build_grid(kind, intervals, theta_max)?);
    numeric_spectrum_on(kind, p, n, l, count, grid)
}

pub fn numeric_spectrum_on(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    count: usize,
    grid: Arc<RadialGrid>,
) -> Result<Vec<NumericLevel>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let form = sturm_liouville_form(kind, p, n, l, &grid)?;
    let eigen = bisect_eigenvalues(&form.diag, &form.offdiag, count)?;
    if eigen.cluster_warning {
        return Err(Error::Numerical(
            "eigenvalues of a Jacobi matrix coincided at the bisection tolerance".into(),
        ));
    }
    let h = grid.step();
    eigen
        .values
        .iter()
        .enumerate()
        .map(|(index, &lambda)| {
            let g = eigenvector_inverse_iteration(&form.diag, &form.offdiag, lambda)?;
            let values: Vec<f64> = g
                .iter()
                .zip(&form.weight)
                .map(|(x, rho)| x / (h * rho).sqrt())
                .collect();
            let energy = form.scale * lambda;
            let residual = ode_residual(kind, p, n, l, energy, &values, &grid)?;
            Ok(NumericLevel {
                index,
                energy,
                eigenvector: WavefunctionSamples::new(grid.clone(), values, Normalization::UnitNorm)?,
                residual,
            })
        })
        .collect()
}

/// Three-grid refinement summary.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub grid_sizes: Vec<usize>,
    pub estimates: Vec<f64>,
    pub order: f64,
    pub extrapolated: f64,
}

/// Richardson analysis of estimates on grids `N`, `2N`, `4N`:
/// `order = log2(|E_h - E_{h/2}| / |E_{h/2} - E_{h/4}|)` and
/// `E* = E_{h/4} + (E_{h/4} - E_{h/2}) / (2^order - 1)`.
pub fn richardson(grid_sizes: [usize; 3], estimates: [f64; 3]) -> Result<ConvergenceReport> {
    let [coarse, mid, fine] = estimates;
    let d1 = coarse - mid;
    let d2 = mid - fine;
    if d2 == 0.0 || d1 == 0.0 {
        return Err(Error::Numerical(
            "refinement produced identical estimates; order is undefined".into(),
        ));
    }
    let order = (d1.abs() / d2.abs()).log2();
    let extrapolated = fine + (fine - mid) / (2f64.powf(order) - 1.0);
    if !extrapolated.is_finite() {
        return Err(Error::Numerical(format!(
            "Richardson extrapolation diverged (order {order})"
        )));
    }
    Ok(ConvergenceReport {
        grid_sizes: grid_sizes.to_vec(),
        estimates: estimates.to_vec(),
        order,
        extrapolated,
    })
}

/// Runs `solve` on `N₀`, `2N₀`, `4N₀` and extrapolates.
pub fn convergence_study_with<F>(base: usize, mut solve: F) -> Result<ConvergenceReport>
where
    F: FnMut(usize) -> Result<f64>,
{
    let sizes = [base, 2 * base, 4 * base];
    let estimates = [solve(sizes[0])?, solve(sizes[1])?, solve(sizes[2])?];
    richardson(sizes, estimates)
}

pub const MIN_STUDY_BASE: usize = 250;

/// Richardson study of one level of the `(n, l)` radial problem.
pub fn convergence_study(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    level: usize,
    base: usize,
    theta_max: Option<f64>,
) -> Result<ConvergenceReport> {
    if base < MIN_STUDY_BASE {
        return Err(Error::BadGridSpec(format!(
            "convergence studies start at N0 >= {MIN_STUDY_BASE}, got {base}"
        )));
    }
    convergence_study_with(base, |intervals| {
        let grid = build_grid(kind, intervals, theta_max)?;
        let form = sturm_liouville_form(kind, p, n, l, &grid)?;
        let values = bisect_eigenvalues(&form.diag, &form.offdiag, level + 1)?.values;
        Ok(form.scale * values[level])
    })
}
