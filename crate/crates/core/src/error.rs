use std::fmt;

use thiserror::Error;

/// Names one of the five physical constants in [`crate::ModelParams`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Mass,
    Inertia,
    Radius,
    Alpha,
    Hbar,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Mass => "mass",
            Param::Inertia => "inertia",
            Param::Radius => "radius",
            Param::Alpha => "alpha",
            Param::Hbar => "hbar",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{0}` must be finite and strictly positive")]
    NonPositiveParameter(Param),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameters: {}", join(.0))]
    InvalidParams(Vec<ParamError>),

    #[error("theta = {theta} lies outside the open domain of the {manifold}")]
    Domain { theta: f64, manifold: &'static str },

    #[error("Pochhammer pole: (c)_j vanishes for c = {c} at term index j = {j}")]
    PochhammerPole { c: f64, j: usize },

    #[error("grid has {nodes} nodes, at least {required} are needed")]
    GridTooSmall { nodes: usize, required: usize },

    #[error("bad grid specification: {0}")]
    BadGridSpec(String),

    #[error("requested {count} eigenvalues of a {size}x{size} matrix")]
    CountOutOfRange { count: usize, size: usize },

    #[error("inverse iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{0}")]
    Numerical(String),
}

fn join(errors: &[ParamError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
