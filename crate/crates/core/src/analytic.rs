//! Closed-form levels and radial wavefunctions of the Kepler-Coulomb
//! models, as produced by the polynomial (terminating-series) method.
//!
//! Energies follow
//!
//! ```text
//! sphere:        E = -ħ²/(2mR²) [ (k + κν) - ( ((m/I)R² + 1) n² - 4nl - 2α̃ ) ]
//! pseudosphere:  E = -ħ²/(2mR²) [ (k + κν) + ( (±(m/I)R² + 1) n² - 4nl - 2α̃ ) ]
//! ```
//!
//! with `κ = |n + l|`, `ν = |n - l|` and the dimensionless coupling
//! `α̃ = mRα/ħ²` (see [`ModelParams::reduced_coupling`]). These expressions
//! are evaluated exactly as written. They are linear in `k`, which does not
//! match the numerically computed spectrum; [`crate::report`] puts the two
//! side by side instead of reconciling them.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::hypergeometric::gauss_2f1_polynomial;
use crate::model::{require_valid, KappaNu, ManifoldKind, ModelParams, QuantumNumbers};
use crate::oracle::quadrature_weighted;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticLevel {
    pub qn: QuantumNumbers,
    pub energy: f64,
    pub kappa_nu: KappaNu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    Raw,
    /// Unit norm under the measure-weighted trapezoidal product.
    UnitNorm,
}

/// Radial function sampled at every node of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WavefunctionSamples {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<f64>,
    pub normalization: Normalization,
}

impl WavefunctionSamples {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>, normalization: Normalization) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(Self {
            grid,
            values,
            normalization,
        })
    }

    /// Weighted self inner product `<f|f>`.
    pub fn norm_squared(&self) -> Result<f64> {
        let rho = self.grid.measure_weights();
        quadrature_weighted(&self.values, &self.values, &self.grid, &rho)
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm2 = self.norm_squared()?;
        if !(norm2.is_finite() && norm2 > 0.0) {
            return Err(Error::Numerical(format!(
                "cannot normalize a function with squared norm {norm2}"
            )));
        }
        let inv = norm2.sqrt().recip();
        self.values.iter_mut().for_each(|v| *v *= inv);
        self.normalization = Normalization::UnitNorm;
        Ok(self)
    }

    /// Number of sign changes, ignoring samples below `1e-12` of the peak.
    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.values)
    }
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = 1e-12 * peak;
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in values.iter().filter(|v| v.abs() > floor) {
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// Closed-form energy of the state `qn`.
pub fn closed_form_energy(kind: ManifoldKind, p: &ModelParams, qn: QuantumNumbers) -> Result<f64> {
    require_valid(p)?;
    Ok(energy_unchecked(kind, p, qn))
}

fn energy_unchecked(kind: ManifoldKind, p: &ModelParams, qn: QuantumNumbers) -> f64 {
    let KappaNu { kappa, nu } = qn.kappa_nu();
    let degree = qn.k as f64 + (kappa * nu) as f64;
    let n2 = (qn.n * qn.n) as f64;
    let nl = (qn.n * qn.l) as f64;
    let coupling = 2.0 * p.reduced_coupling();
    let bracket = match kind {
        ManifoldKind::Sphere => degree - ((p.spin_ratio() + 1.0) * n2 - 4.0 * nl - coupling),
        ManifoldKind::Pseudosphere(sign) => {
            degree + ((sign.factor() * p.spin_ratio() + 1.0) * n2 - 4.0 * nl - coupling)
        }
    };
    // `+ 0.0` turns a vanishing bracket's -0 into +0
    -p.energy_scale() * bracket + 0.0
}

/// Closed-form levels `k = 0..=k_max` of the `(n, l)` mode, ascending in `k`.
pub fn analytic_spectrum(
    kind: ManifoldKind,
    p: &ModelParams,
    n: i64,
    l: i64,
    k_max: u32,
) -> Result<Vec<AnalyticLevel>> {
    require_valid(p)?;
    Ok((0..=k_max)
        .map(|k| {
            let qn = QuantumNumbers::new(n, l, k);
            AnalyticLevel {
                qn,
                energy: energy_unchecked(kind, p, qn),
                kappa_nu: qn.kappa_nu(),
            }
        })
        .collect())
}

/// Upper end of the interval on which the closed-form radial function is
/// evaluated: `pi/2` on the sphere (where `sin` is monotone), unbounded on
/// the pseudosphere.
pub fn wavefunction_upper_limit(kind: ManifoldKind) -> f64 {
    match kind {
        ManifoldKind::Sphere => FRAC_PI_2,
        ManifoldKind::Pseudosphere(_) => f64::INFINITY,
    }
}

/// Unnormalized `s^κ c^ν 2F1(-k, k + κ + ν; 1 + κ; s)` with
/// `(s, c) = (sin θ, cos θ)` or `(sinh θ, cosh θ)`.
pub fn radial_wavefunction_value(kind: ManifoldKind, p: &ModelParams, qn: QuantumNumbers, theta: f64) -> Result<f64> {
    require_valid(p)?;
    wavefunction_unchecked(kind, qn, theta)
}

fn wavefunction_unchecked(kind: ManifoldKind, qn: QuantumNumbers, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= wavefunction_upper_limit(kind) && theta.is_finite()) {
        return Err(Error::Domain {
            theta,
            manifold: kind.name(),
        });
    }
    let KappaNu { kappa, nu } = qn.kappa_nu();
    let (s, c) = kind.trig(theta);
    let b = (qn.k as u64 + kappa + nu) as f64;
    let poly = gauss_2f1_polynomial(qn.k, b, 1.0 + kappa as f64, s)?;
    Ok(powu(s, kappa) * powu(c, nu) * poly)
}

fn powu(x: f64, e: u64) -> f64 {
    match i32::try_from(e) {
        Ok(e) => x.powi(e),
        Err(_) => x.powf(e as f64),
    }
}

/// Samples the closed-form radial function at every node of `grid`.
pub fn analytic_samples(
    kind: ManifoldKind,
    p: &ModelParams,
    qn: QuantumNumbers,
    grid: Arc<RadialGrid>,
    normalization: Normalization,
) -> Result<WavefunctionSamples> {
    require_valid(p)?;
    let values = grid
        .nodes()
        .iter()
        .map(|&t| wavefunction_unchecked(kind, qn, t))
        .collect::<Result<Vec<_>>>()?;
    let samples = WavefunctionSamples::new(grid, values, Normalization::Raw)?;
    match normalization {
        Normalization::Raw => Ok(samples),
        Normalization::UnitNorm => samples.normalized(),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;
    use crate::grid::build_grid;
    use crate::model::PseudoSign;

    const SPHERE: ManifoldKind = ManifoldKind::Sphere;
    const PSEUDO: ManifoldKind = ManifoldKind::Pseudosphere(PseudoSign::Plus);

    fn e(kind: ManifoldKind, n: i64, l: i64, k: u32) -> f64 {
        closed_form_energy(kind, &ModelParams::natural(), QuantumNumbers::new(n, l, k)).unwrap()
    }

    #[test]
    fn substitution_values() {
        assert_eq!(e(SPHERE, 0, 0, 0), -1.0);
        assert_eq!(e(SPHERE, 0, 0, 1), -1.5);
        assert_eq!(e(SPHERE, 1, 1, 0), -2.0);
        assert_eq!(e(PSEUDO, 0, 0, 0), 1.0);
        assert_eq!(e(PSEUDO, 0, 0, 1), 0.5);
    }

    #[test]
    fn coupling_enters_in_reduced_form() {
        // α̃ = mRα/ħ² = 2·3·0.5/1 = 3, scale = 1/(2·2·9) = 1/36
        let p = ModelParams {
            mass: 2.0,
            inertia: 1.0,
            radius: 3.0,
            alpha: 0.5,
            hbar: 1.0,
        };
        let got = closed_form_energy(SPHERE, &p, QuantumNumbers::new(0, 0, 0)).unwrap();
        assert_relative_eq!(got, -(1.0 / 36.0) * 6.0, max_relative = 1e-15);
    }

    #[test]
    fn spectrum_lists() {
        let p = ModelParams::natural();
        let s: Vec<f64> = analytic_spectrum(SPHERE, &p, 0, 0, 2)
            .unwrap()
            .iter()
            .map(|lv| lv.energy)
            .collect();
        assert_eq!(s, vec![-1.0, -1.5, -2.0]);
        assert_eq!(analytic_spectrum(SPHERE, &p, 2, -1, 0).unwrap().len(), 1);
        let ps: Vec<f64> = analytic_spectrum(PSEUDO, &p, 0, 0, 1)
            .unwrap()
            .iter()
            .map(|lv| lv.energy)
            .collect();
        assert_eq!(ps, vec![1.0, 0.5]);
        let lv = analytic_spectrum(SPHERE, &p, 2, -1, 3).unwrap();
        assert!(lv.iter().all(|x| x.kappa_nu == KappaNu { kappa: 1, nu: 3 }));
        assert!(lv.iter().enumerate().all(|(i, x)| x.qn.k == i as u32));
        for level in &lv {
            assert_eq!(
                level.energy.to_bits(),
                closed_form_energy(SPHERE, &p, level.qn).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn rejects_invalid_params() {
        let p = ModelParams {
            hbar: 0.0,
            ..ModelParams::natural()
        };
        assert!(matches!(
            closed_form_energy(SPHERE, &p, QuantumNumbers::new(0, 0, 0)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn wavefunction_values() {
        let p = ModelParams::natural();
        for theta in [0.1, 1.0, FRAC_PI_2] {
            assert_eq!(
                radial_wavefunction_value(SPHERE, &p, QuantumNumbers::new(0, 0, 0), theta).unwrap(),
                1.0
            );
        }
        assert_eq!(
            radial_wavefunction_value(PSEUDO, &p, QuantumNumbers::new(0, 0, 0), 7.0).unwrap(),
            1.0
        );
        assert_relative_eq!(
            radial_wavefunction_value(SPHERE, &p, QuantumNumbers::new(1, 1, 0), FRAC_PI_4).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        // F(-1, 1; 1; 1/2) = 1 - 1/2
        assert_relative_eq!(
            radial_wavefunction_value(SPHERE, &p, QuantumNumbers::new(0, 0, 1), FRAC_PI_6).unwrap(),
            0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn wavefunction_domain() {
        let p = ModelParams::natural();
        let qn = QuantumNumbers::new(1, 0, 1);
        assert!(radial_wavefunction_value(SPHERE, &p, qn, 0.0).is_err());
        assert!(radial_wavefunction_value(SPHERE, &p, qn, FRAC_PI_2 + 1e-9).is_err());
        assert!(radial_wavefunction_value(PSEUDO, &p, qn, -1.0).is_err());
        assert!(radial_wavefunction_value(PSEUDO, &p, qn, 25.0).is_ok());
    }

    #[test]
    fn samples_on_half_sphere() {
        let p = ModelParams::natural();
        let grid = Arc::new(build_grid(SPHERE, 64, None).unwrap().restrict_to(FRAC_PI_2));
        let qn = QuantumNumbers::new(1, 0, 2);
        let raw = analytic_samples(SPHERE, &p, qn, grid.clone(), Normalization::Raw).unwrap();
        assert_eq!(raw.values.len(), grid.len());
        let unit = analytic_samples(SPHERE, &p, qn, grid, Normalization::UnitNorm).unwrap();
        assert_relative_eq!(unit.norm_squared().unwrap(), 1.0, epsilon = 1e-10);
        assert_eq!(unit.normalization, Normalization::UnitNorm);

        let full = Arc::new(build_grid(SPHERE, 64, None).unwrap());
        assert!(analytic_samples(SPHERE, &p, qn, full, Normalization::Raw).is_err());
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(count_sign_changes(&[1.0, 2.0, 3.0]), 0);
        assert_eq!(count_sign_changes(&[1.0, -2.0, 0.0, 3.0]), 2);
        assert_eq!(count_sign_changes(&[1.0, 1e-20, -1e-20, 1.0]), 0);
    }

    proptest! {
        #[test]
        fn energy_even_under_joint_flip(
            n in -8i64..=8, l in -8i64..=8, k in 0u32..20,
            mass in 0.1f64..5.0, inertia in 0.1f64..5.0, radius in 0.1f64..5.0,
            alpha in 0.1f64..5.0, hbar in 0.1f64..5.0, minus in any::<bool>(),
        ) {
            let p = ModelParams { mass, inertia, radius, alpha, hbar };
            let sign = if minus { PseudoSign::Minus } else { PseudoSign::Plus };
            for kind in [SPHERE, ManifoldKind::Pseudosphere(sign)] {
                let qn = QuantumNumbers::new(n, l, k);
                let a = closed_form_energy(kind, &p, qn).unwrap();
                let b = closed_form_energy(kind, &p, qn.flipped()).unwrap();
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }

        #[test]
        fn sphere_energy_linear_in_k(
            n in -5i64..=5, l in -5i64..=5, k in 0u32..30,
            mass in 0.5f64..2.0, radius in 0.5f64..2.0, hbar in 0.5f64..2.0,
        ) {
            let p = ModelParams { mass, radius, hbar, ..ModelParams::natural() };
            let e0 = closed_form_energy(SPHERE, &p, QuantumNumbers::new(n, l, k)).unwrap();
            let e1 = closed_form_energy(SPHERE, &p, QuantumNumbers::new(n, l, k + 1)).unwrap();
            prop_assert!(e1 < e0);
            let slope = -p.energy_scale();
            prop_assert!(((e1 - e0) - slope).abs() <= 1e-9 * (1.0 + e0.abs()));
        }

        #[test]
        fn ground_polynomial_is_bare_prefactor(n in -4i64..=4, l in -4i64..=4, theta in 0.01f64..1.57) {
            let p = ModelParams::natural();
            let qn = QuantumNumbers::new(n, l, 0);
            let kn = qn.kappa_nu();
            let (s, c) = SPHERE.trig(theta);
            let bare = s.powi(kn.kappa as i32) * c.powi(kn.nu as i32);
            prop_assert_eq!(radial_wavefunction_value(SPHERE, &p, qn, theta).unwrap(), bare);
        }

        #[test]
        fn vanishes_at_origin_when_kappa_positive(n in -4i64..=4, l in -4i64..=4, k in 0u32..5) {
            prop_assume!(n + l != 0);
            let p = ModelParams::natural();
            let qn = QuantumNumbers::new(n, l, k);
            let near = radial_wavefunction_value(SPHERE, &p, qn, 1e-8).unwrap();
            prop_assert!(near.abs() < 1e-7);
        }
    }
}
