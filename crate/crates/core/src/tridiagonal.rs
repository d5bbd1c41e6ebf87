//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for
//! eigenvalues and inverse iteration for eigenvectors.
//!
//! `diag` has length `N`, `offdiag` length `N - 1` (sub = super diagonal).

use crate::error::{Error, Result};

pub const BISECTION_REL_TOL: f64 = 1e-12;
pub const BISECTION_ABS_TOL: f64 = 1e-14;
pub const INVERSE_ITERATION_RESIDUAL: f64 = 1e-9;
pub const INVERSE_ITERATION_MAX: usize = 50;

/// Eigenvalues from [`bisect_eigenvalues`]. `cluster_warning` is set when
/// two neighbours could not be separated at the bisection tolerance; those
/// values are reported as equal.
#[derive(Clone, Debug, PartialEq)]
pub struct BisectionResult {
    pub values: Vec<f64>,
    pub cluster_warning: bool,
}

fn check_shape(diag: &[f64], offdiag: &[f64]) -> Result<()> {
    let expected = diag.len().saturating_sub(1);
    if offdiag.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: offdiag.len(),
        });
    }
    Ok(())
}

fn pivot_floor(offdiag: &[f64]) -> f64 {
    let max_e2 = offdiag.iter().fold(0.0_f64, |m, e| m.max(e * e));
    (f64::MIN_POSITIVE * max_e2.max(1.0)).max(f64::MIN_POSITIVE)
}

/// Number of eigenvalues strictly below `sigma`: the count of negative
/// pivots in the `LDLᵀ` factorization of `T - sigma·I`.
pub fn sturm_count(diag: &[f64], offdiag: &[f64], sigma: f64) -> usize {
    sturm_count_with(diag, offdiag, sigma, pivot_floor(offdiag))
}

fn sturm_count_with(diag: &[f64], offdiag: &[f64], sigma: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 {
            d - sigma
        } else {
            let e = offdiag[i - 1];
            d - sigma - e * e / q
        };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin enclosure of the whole spectrum.
pub fn gershgorin_bounds(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) * n as f64 + BISECTION_ABS_TOL;
    (lo - pad, hi + pad)
}

/// Infinity norm of the symmetric tridiagonal matrix.
pub fn tridiagonal_norm_inf(diag: &[f64], offdiag: &[f64]) -> f64 {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
            diag[i].abs() + left + right
        })
        .fold(0.0, f64::max)
}

/// The `count` smallest eigenvalues in ascending order, with the
/// cluster flag.
pub fn bisect_eigenvalues(diag: &[f64], offdiag: &[f64], count: usize) -> Result<BisectionResult> {
    check_shape(diag, offdiag)?;
    let n = diag.len();
    if count == 0 || count > n {
        return Err(Error::CountOutOfRange { count, size: n });
    }
    let pivmin = pivot_floor(offdiag);
    let (glo, ghi) = gershgorin_bounds(diag, offdiag);

    let mut values: Vec<f64> = Vec::with_capacity(count);
    let mut lo = glo;
    for index in 0..count {
        // the index-th eigenvalue is the smallest x with count(x) > index
        let mut a = lo;
        let mut b = ghi;
        loop {
            let width = b - a;
            let tol = (BISECTION_REL_TOL * a.abs().max(b.abs())).max(BISECTION_ABS_TOL);
            let mid = 0.5 * (a + b);
            if width <= tol || mid <= a || mid >= b {
                break;
            }
            if sturm_count_with(diag, offdiag, mid, pivmin) > index {
                b = mid;
            } else {
                a = mid;
            }
        }
        values.push(0.5 * (a + b));
        lo = a;
    }

    let mut cluster_warning = false;
    for i in 1..values.len() {
        let tol = (BISECTION_REL_TOL * values[i].abs()).max(BISECTION_ABS_TOL);
        if values[i] - values[i - 1] < tol {
            values[i] = values[i - 1];
            cluster_warning = true;
        }
    }
    Ok(BisectionResult {
        values,
        cluster_warning,
    })
}

/// The `count` smallest eigenvalues, ascending. A `count` of zero yields an
/// empty list only through [`crate::numeric_spectrum`]; here it is an error.
pub fn eigen_tridiagonal(diag: &[f64], offdiag: &[f64], count: usize) -> Result<Vec<f64>> {
    bisect_eigenvalues(diag, offdiag, count).map(|r| r.values)
}

/// LU factors of a tridiagonal matrix with partial pivoting (the `gttrf`
/// layout: `du2` holds the fill-in second superdiagonal).
struct TridiagonalLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(diag: &[f64], offdiag: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl = offdiag.to_vec();
        let mut du = offdiag.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1].abs() < tiny {
            d[n - 1] = tiny;
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * b[i + 2];
            }
            b[i] = s / self.d[i];
        }
    }
}

fn apply_shifted(diag: &[f64], offdiag: &[f64], shift: f64, v: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut s = (diag[i] - shift) * v[i];
            if i > 0 {
                s += offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += offdiag[i] * v[i + 1];
            }
            s
        })
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Unit eigenvector for the eigenvalue approximated by `lambda`.
///
/// The sign is fixed so that the first component that is not negligible
/// (above `1e-12` of the largest) is positive.
pub fn eigenvector_inverse_iteration(diag: &[f64], offdiag: &[f64], lambda: f64) -> Result<Vec<f64>> {
    check_shape(diag, offdiag)?;
    let n = diag.len();
    if n == 0 {
        return Err(Error::CountOutOfRange { count: 1, size: 0 });
    }
    let norm = tridiagonal_norm_inf(diag, offdiag).max(f64::MIN_POSITIVE);
    let lu = TridiagonalLu::factor(diag, offdiag, lambda, f64::EPSILON * norm);
    let target = INVERSE_ITERATION_RESIDUAL * norm;

    // fixed, non-symmetric start so no eigenvector is missed by symmetry
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
        .collect();
    let s = norm2(&v);
    v.iter_mut().for_each(|x| *x /= s);

    for _ in 0..INVERSE_ITERATION_MAX {
        lu.solve_in_place(&mut v);
        let s = norm2(&v);
        if !s.is_finite() || s == 0.0 {
            return Err(Error::Numerical(
                "inverse iteration produced a non-finite iterate".into(),
            ));
        }
        v.iter_mut().for_each(|x| *x /= s);
        let residual = norm2(&apply_shifted(diag, offdiag, lambda, &v));
        if residual <= target {
            fix_sign(&mut v);
            return Ok(v);
        }
    }
    Err(Error::NoConvergence(INVERSE_ITERATION_MAX))
}

fn fix_sign(v: &mut [f64]) {
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
