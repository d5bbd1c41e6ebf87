//! Laplace-Beltrami operators on separable modes, the radial operator, and
//! its self-adjoint (flux-form) discretization.
//!
//! The full operators on the sphere and pseudosphere read
//!
//! ```text
//! Δ = ∂²_r + (1/R) cot(r/R) ∂_r - 2cos/(R² sin²) ∂_φ∂_ψ
//!     + (mR² sin² + I cos²)/(I R² sin²) ∂²_ψ + 1/(R² sin²) ∂²_φ
//! ```
//!
//! (sinh/cosh/coth on the pseudosphere). The `(m/I)` term sits on `∂²_ψ`
//! while the radial eigenequation attaches it to `n²`, so a mode
//! `f(θ)·e^{i n ψ}·e^{i l φ}` is what reduces `R²Δ` to the radial operator
//! `f'' + cot θ f' - W(θ) f` with [`centrifugal_coefficient`]'s `W`.
//!
//! [`centrifugal_coefficient`]: crate::model::centrifugal_coefficient

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::model::{centrifugal_unchecked, require_valid, ManifoldKind, ModelParams};

pub const MIN_STENCIL_NODES: usize = 5;

/// Radial profile of the separable state `f(θ)·e^{i n ψ}·e^{i l φ}`.
#[derive(Clone, Copy, Debug)]
pub struct SeparableMode<'a> {
    pub samples: &'a [f64],
    pub n: i64,
    pub l: i64,
    pub grid: &'a RadialGrid,
}

impl<'a> SeparableMode<'a> {
    pub fn new(samples: &'a [f64], n: i64, l: i64, grid: &'a RadialGrid) -> Result<Self> {
        check_samples(samples, grid)?;
        Ok(Self { samples, n, l, grid })
    }
}

fn check_samples(samples: &[f64], grid: &RadialGrid) -> Result<()> {
    if grid.len() < MIN_STENCIL_NODES {
        return Err(Error::GridTooSmall {
            nodes: grid.len(),
            required: MIN_STENCIL_NODES,
        });
    }
    if samples.len() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            actual: samples.len(),
        });
    }
    Ok(())
}

/// `R²·Δ[f e^{i n ψ} e^{i l φ}] / e^{i(nψ + lφ)}` at interior nodes (every
/// node but the first and last).
///
/// The `r` part uses the metric form `(1/√G) ∂_r(√G ∂_r f)` with
/// `√G ∝ sin(r/R)` (resp. `sinh`), differenced on half nodes; the angular
/// derivatives are exact.
pub fn apply_full_laplacian_mode(kind: ManifoldKind, p: &ModelParams, mode: &SeparableMode<'_>) -> Result<Vec<f64>> {
    require_valid(p)?;
    check_samples(mode.samples, mode.grid)?;
    let f = mode.samples;
    let nodes = mode.grid.nodes();
    let r2 = p.radius * p.radius;
    let dr = p.radius * mode.grid.step();
    let half = 0.5 * mode.grid.step();
    let d_psi = Complex64::new(0.0, mode.n as f64);
    let d_phi = Complex64::new(0.0, mode.l as f64);

    let mut out = Vec::with_capacity(nodes.len() - 2);
    for i in 1..nodes.len() - 1 {
        let theta = nodes[i];
        let (s, c) = kind.trig(theta);
        let s_plus = kind.measure_density(theta + half);
        let s_minus = kind.measure_density(theta - half);
        let radial = (s_plus * (f[i + 1] - f[i]) - s_minus * (f[i] - f[i - 1])) / (dr * dr * s);

        let r2s2 = r2 * s * s;
        let mixed = -2.0 * c / r2s2;
        let spin = (p.mass * r2 * s * s + p.inertia * c * c) / (p.inertia * r2s2);
        let orbital = 1.0 / r2s2;
        let angular = mixed * d_phi * d_psi + spin * d_psi * d_psi + orbital * d_phi * d_phi;
        assert_eq!(angular.im, 0.0, "separable mode picked up an imaginary part");

        out.push(r2 * (radial + angular.re * f[i]));
    }
    Ok(out)
}

/// `f'' + w f' - W f` at interior nodes by central differences, with
/// `w = cot θ` (sphere) or `coth θ` (pseudosphere).
pub fn radial_operator_apply(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    f: &[f64],
    grid: &RadialGrid,
) -> Result<Vec<f64>> {
    require_valid(p)?;
    check_samples(f, grid)?;
    Ok(radial_apply_unchecked(kind, p, n, l, f, grid))
}

pub(crate) fn radial_apply_unchecked(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    f: &[f64],
    grid: &RadialGrid,
) -> Vec<f64> {
    let h = grid.step();
    let nodes = grid.nodes();
    (1..nodes.len() - 1)
        .map(|i| {
            let theta = nodes[i];
            let second = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
            let first = (f[i + 1] - f[i - 1]) / (2.0 * h);
            second + kind.log_derivative(theta) * first - centrifugal_unchecked(kind, p, n, l, theta) * f[i]
        })
        .collect()
}

/// Symmetric tridiagonal image of the discretized radial operator
///
/// ```text
/// M f = -f'' - w f' + W f + (2mR²/ħ²) V f
/// ```
///
/// in flux form with weight `ρ = sin θ` (`sinh θ`). Its eigenvalues `λ`
/// give energies `E = scale·λ`, `scale = ħ²/(2mR²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmLiouvilleForm {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub weight: Vec<f64>,
    pub scale: f64,
    pub step: f64,
}

/// Closure at one end of the grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EndClosure {
    /// No flux through the half node next to a pole where `ρ` vanishes.
    /// The payload is `lim ρ·q` at the pole, added as the missing
    /// trapezoidal half cell (`None` when the solution vanishes there).
    Regular(Option<f64>),
    /// Homogeneous Dirichlet value at the next grid point.
    Dirichlet,
}

impl SturmLiouvilleForm {
    /// Assembles the form for a reaction term `q_i` sampled at the nodes of
    /// `grid`.
    pub fn assemble(
        grid: &RadialGrid,
        reaction: &[f64],
        left: EndClosure,
        right: EndClosure,
        scale: f64,
    ) -> Result<Self> {
        let kind = grid.manifold();
        let nodes = grid.nodes();
        if nodes.len() < 2 {
            return Err(Error::GridTooSmall {
                nodes: nodes.len(),
                required: 2,
            });
        }
        if reaction.len() != nodes.len() {
            return Err(Error::LengthMismatch {
                expected: nodes.len(),
                actual: reaction.len(),
            });
        }
        let h = grid.step();
        let half = 0.5 * h;
        let last = nodes.len() - 1;
        for &t in nodes {
            kind.check(t)?;
        }
        kind.check(nodes[0] - half)?;
        kind.check(nodes[last] + half)?;

        let weight = grid.measure_weights();
        let h2 = h * h;
        let mut diag = Vec::with_capacity(nodes.len());
        for (i, &t) in nodes.iter().enumerate() {
            let rho = weight[i];
            let minus = kind.measure_density(t - half);
            let plus = kind.measure_density(t + half);
            let mut d = reaction[i];
            let mut flux = plus + minus;
            if i == 0 {
                if let EndClosure::Regular(limit) = left {
                    flux -= minus;
                    d += limit.unwrap_or(0.0) / (2.0 * rho);
                }
            }
            if i == last {
                if let EndClosure::Regular(limit) = right {
                    flux -= plus;
                    d += limit.unwrap_or(0.0) / (2.0 * rho);
                }
            }
            diag.push(d + flux / (h2 * rho));
        }
        let offdiag = (0..last)
            .map(|i| {
                let mid = kind.measure_density(nodes[i] + half);
                -mid / (h2 * (weight[i] * weight[i + 1]).sqrt())
            })
            .collect();
        Ok(Self {
            diag,
            offdiag,
            weight,
            scale,
            step: h,
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Applies the un-symmetrized operator `P^{-1/2} S P^{1/2}` to `f`.
    pub fn apply_flux(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: f.len(),
            });
        }
        let n = f.len();
        let g: Vec<f64> = f.iter().zip(&self.weight).map(|(x, r)| x * r.sqrt()).collect();
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * g[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * g[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * g[i + 1];
                }
                s / self.weight[i].sqrt()
            })
            .collect())
    }
}

/// Flux-form discretization of the `(n, l)` radial eigenproblem on `grid`.
///
/// Interior rows are
/// `[ρ_{i+½}(f_i - f_{i+1}) + ρ_{i-½}(f_i - f_{i-1})]/(h²ρ_i) + (W_i + Ṽ_i) f_i`.
/// At a pole (`θ = 0`, and `θ = π` on the sphere) the flux through the
/// first half node is dropped; when the mode does not vanish there
/// (`n = l` at `θ = 0`, `n = -l` at `θ = π`) the half cell of the Coulomb
/// term, `lim ρṼ = ∓2α̃`, is restored. The pseudosphere is cut at
/// `θ_max` with a Dirichlet condition.
pub fn sturm_liouville_form(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    grid: &RadialGrid,
) -> Result<SturmLiouvilleForm> {
    require_valid(p)?;
    if grid.manifold() != kind {
        return Err(Error::BadGridSpec(format!(
            "grid built for {} used with {}",
            grid.manifold(),
            kind
        )));
    }
    let coupling = 2.0 * p.reduced_coupling();
    let reaction: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&t| centrifugal_unchecked(kind, p, n, l, t) - coupling * kind.log_derivative(t))
        .collect();
    let left = EndClosure::Regular((n == l).then_some(-coupling));
    let right = match kind {
        ManifoldKind::Sphere => EndClosure::Regular((n == -l).then_some(coupling)),
        ManifoldKind::Pseudosphere(_) => EndClosure::Dirichlet,
    };
    SturmLiouvilleForm::assemble(grid, &reaction, left, right, p.energy_scale())
}
