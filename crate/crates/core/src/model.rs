//! Physical parameters, quantum numbers, the cot/coth potentials and the
//! centrifugal coefficient shared by both radial eigenequations.
//!
//! Angles are the dimensionless radial variable `theta = r / R`. The sphere
//! lives on `(0, pi)`, the pseudosphere on `(0, inf)`; endpoints are
//! singular and always rejected.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Param, ParamError, Result};

/// Branch of the `±(m/I)R²` term that only the pseudosphere carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PseudoSign {
    #[default]
    Plus,
    Minus,
}

impl PseudoSign {
    pub fn factor(self) -> f64 {
        match self {
            PseudoSign::Plus => 1.0,
            PseudoSign::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PseudoSign::Plus => "plus",
            PseudoSign::Minus => "minus",
        }
    }
}

/// Constant-curvature configuration manifold. The sign branch is carried by
/// the pseudosphere only, so it cannot be set (or misread) for the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ManifoldKind {
    Sphere,
    Pseudosphere(PseudoSign),
}

impl ManifoldKind {
    pub fn name(self) -> &'static str {
        match self {
            ManifoldKind::Sphere => "sphere",
            ManifoldKind::Pseudosphere(_) => "pseudosphere",
        }
    }

    pub fn sign(self) -> Option<PseudoSign> {
        match self {
            ManifoldKind::Sphere => None,
            ManifoldKind::Pseudosphere(sign) => Some(sign),
        }
    }

    pub fn is_sphere(self) -> bool {
        matches!(self, ManifoldKind::Sphere)
    }

    /// Whether `theta` lies in the open radial domain.
    pub fn contains(self, theta: f64) -> bool {
        match self {
            ManifoldKind::Sphere => theta > 0.0 && theta < PI,
            ManifoldKind::Pseudosphere(_) => theta > 0.0 && theta.is_finite(),
        }
    }

    pub(crate) fn check(self, theta: f64) -> Result<()> {
        if self.contains(theta) {
            Ok(())
        } else {
            Err(Error::Domain {
                theta,
                manifold: self.name(),
            })
        }
    }

    /// `(sin, cos)` on the sphere, `(sinh, cosh)` on the pseudosphere.
    pub fn trig(self, theta: f64) -> (f64, f64) {
        match self {
            // Separate libm calls. A fused sincos can differ from sin in the
            // last bit, and whether the optimizer fuses depends on the build
            // profile, which would make output profile dependent.
            ManifoldKind::Sphere => (theta.sin(), std::hint::black_box(theta).cos()),
            ManifoldKind::Pseudosphere(_) => (theta.sinh(), theta.cosh()),
        }
    }

    /// Radial density of the invariant measure: `sin` or `sinh`.
    pub fn measure_density(self, theta: f64) -> f64 {
        self.trig(theta).0
    }

    /// Coefficient of the first derivative in the radial operator: `cot` or `coth`.
    pub fn log_derivative(self, theta: f64) -> f64 {
        let (s, c) = self.trig(theta);
        c / s
    }
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldKind::Sphere => f.write_str("sphere"),
            ManifoldKind::Pseudosphere(sign) => write!(f, "pseudosphere({})", sign.name()),
        }
    }
}

/// Mass, moment of inertia, curvature radius, Kepler coupling and Planck
/// constant. The mass appearing in the kinetic term and in the radial
/// equations is one and the same parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mass: f64,
    pub inertia: f64,
    pub radius: f64,
    pub alpha: f64,
    pub hbar: f64,
}

impl Default for ModelParams {
    /// Natural units: every constant equal to one.
    fn default() -> Self {
        Self::natural()
    }
}

impl ModelParams {
    pub const fn natural() -> Self {
        Self {
            mass: 1.0,
            inertia: 1.0,
            radius: 1.0,
            alpha: 1.0,
            hbar: 1.0,
        }
    }

    pub fn is_natural(&self) -> bool {
        *self == Self::natural()
    }

    pub fn validate(self) -> std::result::Result<Self, Vec<ParamError>> {
        validate_params(self)
    }

    /// `(m/I)·R²`, the rotational coupling multiplying `n²`.
    pub fn spin_ratio(&self) -> f64 {
        self.mass / self.inertia * self.radius * self.radius
    }

    /// Dimensionless coupling `m·R·α/ħ²`, the combination that
    /// `2mR²V/ħ²` produces from `-(α/R)·cot`.
    pub fn reduced_coupling(&self) -> f64 {
        self.mass * self.radius * self.alpha / (self.hbar * self.hbar)
    }

    /// `ħ²/(2mR²)`: converts radial eigenvalues into energies.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass * self.radius * self.radius)
    }
}

/// Checks that every constant is finite and strictly positive, reporting
/// each violation.
pub fn validate_params(p: ModelParams) -> std::result::Result<ModelParams, Vec<ParamError>> {
    let fields = [
        (Param::Mass, p.mass),
        (Param::Inertia, p.inertia),
        (Param::Radius, p.radius),
        (Param::Alpha, p.alpha),
        (Param::Hbar, p.hbar),
    ];
    let errors: Vec<_> = fields
        .into_iter()
        .filter(|(_, value)| !(value.is_finite() && *value > 0.0))
        .map(|(field, _)| ParamError::NonPositiveParameter(field))
        .collect();
    if errors.is_empty() {
        Ok(p)
    } else {
        Err(errors)
    }
}

pub(crate) fn require_valid(p: &ModelParams) -> Result<()> {
    validate_params(*p).map(|_| ()).map_err(Error::InvalidParams)
}

/// The triple labelling a stationary state: azimuthal numbers `n`, `l`
/// and the radial (polynomial degree) number `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: i64,
    pub l: i64,
    pub k: u32,
}

impl QuantumNumbers {
    pub const fn new(n: i64, l: i64, k: u32) -> Self {
        Self { n, l, k }
    }

    pub fn kappa_nu(&self) -> KappaNu {
        KappaNu::from_mode(self.n, self.l)
    }

    pub fn flipped(&self) -> Self {
        Self::new(-self.n, -self.l, self.k)
    }
}

/// `kappa = |n + l|`, `nu = |n - l|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KappaNu {
    pub kappa: u64,
    pub nu: u64,
}

impl KappaNu {
    pub fn from_mode(n: i64, l: i64) -> Self {
        Self {
            kappa: (n + l).unsigned_abs(),
            nu: (n - l).unsigned_abs(),
        }
    }
}

/// Kepler-Coulomb potential `-(α/R)·cot θ` (sphere) or `-(α/R)·coth θ`
/// (pseudosphere).
pub fn potential_value(kind: ManifoldKind, p: &ModelParams, theta: f64) -> Result<f64> {
    kind.check(theta)?;
    Ok(-p.alpha / p.radius * kind.log_derivative(theta))
}

/// The `(n, l)`-dependent term `W(θ)` of the radial equation,
///
/// ```text
/// sphere:        [((m/I)R² sin²θ + cos²θ) n² + l² - 2nl cos θ] / sin²θ
/// pseudosphere:  [(±(m/I)R² sinh²θ + cosh²θ) n² + l² - 2nl cosh θ] / sinh²θ
/// ```
pub fn centrifugal_coefficient(kind: ManifoldKind, p: &ModelParams, n: i64, l: i64, theta: f64) -> Result<f64> {
    kind.check(theta)?;
    Ok(centrifugal_unchecked(kind, p, n, l, theta))
}

pub(crate) fn centrifugal_unchecked(kind: ManifoldKind, p: &ModelParams, n: i64, l: i64, theta: f64) -> f64 {
    let (s, c) = kind.trig(theta);
    let spin = match kind {
        ManifoldKind::Sphere => p.spin_ratio(),
        ManifoldKind::Pseudosphere(sign) => sign.factor() * p.spin_ratio(),
    };
    let n2 = (n * n) as f64;
    let l2 = (l * l) as f64;
    let nl = (n * l) as f64;
    ((spin * s * s + c * c) * n2 + l2 - 2.0 * nl * c) / (s * s)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;
    use std::f64::consts::FRAC_PI_4;

    use approx::assert_relative_eq;
    use proptest::prelude::*;

    use super::*;

    const SPHERE: ManifoldKind = ManifoldKind::Sphere;
    const PSEUDO: ManifoldKind = ManifoldKind::Pseudosphere(PseudoSign::Plus);

    #[test]
    fn validates_parameter_sets() {
        assert!(validate_params(ModelParams::natural()).is_ok());
        let generic = ModelParams {
            radius: 2.0,
            alpha: 0.5,
            ..ModelParams::natural()
        };
        assert_eq!(validate_params(generic), Ok(generic));

        let zero_mass = ModelParams {
            mass: 0.0,
            ..ModelParams::natural()
        };
        assert_eq!(
            validate_params(zero_mass),
            Err(vec![ParamError::NonPositiveParameter(Param::Mass)])
        );
    }

    #[test]
    fn reports_every_bad_field() {
        let p = ModelParams {
            mass: -1.0,
            inertia: f64::NAN,
            radius: 1.0,
            alpha: 0.0,
            hbar: f64::INFINITY,
        };
        let errs = validate_params(p).unwrap_err();
        let fields: Vec<_> = errs.iter().map(|ParamError::NonPositiveParameter(f)| *f).collect();
        assert_eq!(fields, vec![Param::Mass, Param::Inertia, Param::Alpha, Param::Hbar]);
    }

    #[test]
    fn potential_values() {
        let p = ModelParams::natural();
        assert!(potential_value(SPHERE, &p, FRAC_PI_2).unwrap().abs() < 1e-16);
        assert_relative_eq!(potential_value(SPHERE, &p, FRAC_PI_4).unwrap(), -1.0, epsilon = 1e-15);
        assert_relative_eq!(potential_value(PSEUDO, &p, 30.0).unwrap(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn potential_rejects_endpoints() {
        let p = ModelParams::natural();
        for theta in [0.0, -0.1, PI, 4.0] {
            assert!(matches!(potential_value(SPHERE, &p, theta), Err(Error::Domain { .. })));
        }
        assert!(potential_value(PSEUDO, &p, 0.0).is_err());
        assert!(potential_value(PSEUDO, &p, f64::INFINITY).is_err());
        assert!(potential_value(PSEUDO, &p, 100.0).is_ok());
    }

    #[test]
    fn centrifugal_values() {
        let p = ModelParams::natural();
        for theta in [0.3, 1.0, 2.5] {
            assert_eq!(centrifugal_coefficient(SPHERE, &p, 0, 0, theta).unwrap(), 0.0);
            assert_eq!(centrifugal_coefficient(PSEUDO, &p, 0, 0, theta).unwrap(), 0.0);
        }
        assert_relative_eq!(
            centrifugal_coefficient(SPHERE, &p, 0, 1, FRAC_PI_2).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            centrifugal_coefficient(SPHERE, &p, 1, 0, FRAC_PI_2).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert!(centrifugal_coefficient(SPHERE, &p, 1, 1, 0.0).is_err());
    }

    #[test]
    fn pseudo_sign_changes_spin_term_only() {
        let p = ModelParams::natural();
        let minus = ManifoldKind::Pseudosphere(PseudoSign::Minus);
        let theta = 0.7_f64;
        let plus = centrifugal_coefficient(PSEUDO, &p, 2, 0, theta).unwrap();
        let minus = centrifugal_coefficient(minus, &p, 2, 0, theta).unwrap();
        assert_relative_eq!(plus - minus, 2.0 * 4.0, max_relative = 1e-12);
        let plus_l = centrifugal_coefficient(PSEUDO, &p, 0, 2, theta).unwrap();
        let minus_l = centrifugal_coefficient(ManifoldKind::Pseudosphere(PseudoSign::Minus), &p, 0, 2, theta).unwrap();
        assert_eq!(plus_l, minus_l);
    }

    #[test]
    fn kappa_nu_from_mode() {
        assert_eq!(KappaNu::from_mode(1, 2), KappaNu { kappa: 3, nu: 1 });
        assert_eq!(KappaNu::from_mode(-3, 1), KappaNu { kappa: 2, nu: 4 });
    }

    proptest! {
        #[test]
        fn centrifugal_even_under_joint_flip(
            n in -6i64..=6, l in -6i64..=6, theta in 0.01f64..3.13,
            mass in 0.1f64..5.0, inertia in 0.1f64..5.0, radius in 0.1f64..5.0,
            minus in any::<bool>(),
        ) {
            let p = ModelParams { mass, inertia, radius, ..ModelParams::natural() };
            let sign = if minus { PseudoSign::Minus } else { PseudoSign::Plus };
            for kind in [SPHERE, ManifoldKind::Pseudosphere(sign)] {
                let a = centrifugal_coefficient(kind, &p, n, l, theta).unwrap();
                let b = centrifugal_coefficient(kind, &p, -n, -l, theta).unwrap();
                prop_assert_eq!(a.to_bits(), b.to_bits());
                prop_assert!(a.is_finite());
            }
        }

        #[test]
        fn sphere_potential_antisymmetric(theta in 0.01f64..3.13, alpha in 0.1f64..5.0) {
            let p = ModelParams { alpha, ..ModelParams::natural() };
            let v = potential_value(SPHERE, &p, theta).unwrap();
            let w = potential_value(SPHERE, &p, PI - theta).unwrap();
            prop_assert!((v + w).abs() <= 1e-12 * v.abs().max(1.0));
        }

        #[test]
        fn pseudosphere_potential_increasing(a in 0.01f64..15.0, step in 1e-3f64..5.0) {
            let p = ModelParams::natural();
            let v0 = potential_value(PSEUDO, &p, a).unwrap();
            let v1 = potential_value(PSEUDO, &p, a + step).unwrap();
            prop_assert!(v1 >= v0);
            prop_assert!(v0 >= -p.alpha / p.radius * (1.0 / a.tanh()) * (1.0 + 1e-15));
        }
    }
}
