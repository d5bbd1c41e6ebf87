//! Spectra of the quantized Kepler-Coulomb rigid-body models on the sphere
//! and the pseudosphere (Lobachevsky plane).
//!
//! Two independent routes to the same levels live side by side:
//!
//! * [`analytic`]: closed-form energies and polynomial radial functions;
//! * [`oracle`]: a second-order finite-difference discretization of the
//!   radial eigenequation solved with an in-crate tridiagonal eigensolver
//!   ([`tridiagonal`]), with convergence studies.
//!
//! [`report`] lines the two up and serializes the comparison as CSV or
//! JSON; [`cli`] drives everything from the command line.
//!
//! ```
//! use curved_kepler::{closed_form_energy, numeric_spectrum, ManifoldKind, ModelParams, QuantumNumbers};
//!
//! let p = ModelParams::natural();
//! let closed = closed_form_energy(ManifoldKind::Sphere, &p, QuantumNumbers::new(0, 0, 0)).unwrap();
//! assert_eq!(closed, -1.0);
//!
//! let levels = numeric_spectrum(ManifoldKind::Sphere, &p, 0, 0, 2, 800, None).unwrap();
//! assert!(levels[0].energy < levels[1].energy);
//! ```

pub mod analytic;
pub mod checks;
pub mod cli;
pub mod error;
pub mod grid;
pub mod hypergeometric;
pub mod model;
pub mod operators;
pub mod oracle;
pub mod report;
pub mod tridiagonal;

pub use analytic::{
    analytic_samples, analytic_spectrum, closed_form_energy, radial_wavefunction_value, AnalyticLevel, Normalization,
    WavefunctionSamples,
};
pub use error::{Error, Param, ParamError, Result};
pub use grid::{build_grid, RadialGrid};
pub use hypergeometric::{gauss_2f1_polynomial, gauss_2f1_terms};
pub use model::{
    centrifugal_coefficient, potential_value, validate_params, KappaNu, ManifoldKind, ModelParams, PseudoSign,
    QuantumNumbers,
};
pub use operators::{
    apply_full_laplacian_mode, radial_operator_apply, sturm_liouville_form, SeparableMode, SturmLiouvilleForm,
};
pub use oracle::{
    convergence_study, convergence_study_with, numeric_spectrum, ode_residual, quadrature_weighted, ConvergenceReport,
    NumericLevel,
};

pub use report::{compare_report, oracle_report, serialize_report, spectrum_report, Format, LevelRow, SpectrumReport};
pub use tridiagonal::{eigen_tridiagonal, eigenvector_inverse_iteration, sturm_count};
