use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ManifoldKind;

pub const MIN_INTERVALS: usize = 8;

/// Uniform interior grid `theta_i = i·h`, `i = 1..N-1`.
///
/// On the sphere `h = pi/N`; on the pseudosphere the half-line is cut at
/// `theta_max` and `h = theta_max/N`. Endpoints are never nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    manifold: ManifoldKind,
    intervals: usize,
    step: f64,
    nodes: Vec<f64>,
    theta_max: Option<f64>,
}

/// Builds the interior grid for `kind` with `intervals` subintervals.
/// `theta_max` is required on the pseudosphere and rejected on the sphere.
pub fn build_grid(kind: ManifoldKind, intervals: usize, theta_max: Option<f64>) -> Result<RadialGrid> {
    if intervals < MIN_INTERVALS {
        return Err(Error::BadGridSpec(format!(
            "N = {intervals} is below the minimum of {MIN_INTERVALS}"
        )));
    }
    let length = match (kind, theta_max) {
        (ManifoldKind::Sphere, None) => PI,
        (ManifoldKind::Sphere, Some(_)) => {
            return Err(Error::BadGridSpec(
                "theta_max is only meaningful on the pseudosphere".into(),
            ))
        }
        (ManifoldKind::Pseudosphere(_), Some(t)) if t.is_finite() && t > 0.0 => t,
        (ManifoldKind::Pseudosphere(_), Some(t)) => {
            return Err(Error::BadGridSpec(format!("theta_max = {t} must be positive")))
        }
        (ManifoldKind::Pseudosphere(_), None) => {
            return Err(Error::BadGridSpec(
                "the pseudosphere grid needs a truncation radius theta_max".into(),
            ))
        }
    };
    let step = length / intervals as f64;
    let nodes = (1..intervals).map(|i| i as f64 * step).collect();
    Ok(RadialGrid {
        manifold: kind,
        intervals,
        step,
        nodes,
        theta_max,
    })
}

impl RadialGrid {
    pub fn manifold(&self) -> ManifoldKind {
        self.manifold
    }

    /// Number of subintervals `N`; there are `N - 1` nodes.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn theta_max(&self) -> Option<f64> {
        self.theta_max
    }

    /// The leading nodes with `theta <= upper`, same spacing. Used where a
    /// closed form is only defined on part of the domain.
    pub fn restrict_to(&self, upper: f64) -> RadialGrid {
        let nodes: Vec<f64> = self.nodes.iter().copied().take_while(|&t| t <= upper).collect();
        RadialGrid {
            manifold: self.manifold,
            intervals: self.intervals,
            step: self.step,
            nodes,
            theta_max: self.theta_max,
        }
    }

    /// `sin` / `sinh` at every node.
    pub fn measure_weights(&self) -> Vec<f64> {
        self.nodes.iter().map(|&t| self.manifold.measure_density(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PseudoSign;

    #[test]
    fn sphere_nodes() {
        let g = build_grid(ManifoldKind::Sphere, 8, None).unwrap();
        assert_eq!(g.len(), 7);
        for (i, &t) in g.nodes().iter().enumerate() {
            assert_eq!(t, (i + 1) as f64 * (PI / 8.0));
        }
        assert_eq!(g.theta_max(), None);
    }

    #[test]
    fn pseudosphere_nodes() {
        let g = build_grid(ManifoldKind::Pseudosphere(PseudoSign::Plus), 10, Some(20.0)).unwrap();
        let expected: Vec<f64> = (1..10).map(|i| 2.0 * i as f64).collect();
        assert_eq!(g.nodes(), expected.as_slice());
        assert_eq!(g.step(), 2.0);
    }

    #[test]
    fn rejects_bad_specs() {
        let pseudo = ManifoldKind::Pseudosphere(PseudoSign::Plus);
        assert!(matches!(
            build_grid(ManifoldKind::Sphere, 16, Some(20.0)),
            Err(Error::BadGridSpec(_))
        ));
        assert!(build_grid(ManifoldKind::Sphere, 7, None).is_err());
        assert!(build_grid(pseudo, 16, None).is_err());
        assert!(build_grid(pseudo, 16, Some(0.0)).is_err());
        assert!(build_grid(pseudo, 16, Some(f64::NAN)).is_err());
    }

    #[test]
    fn nodes_strictly_inside_domain() {
        let g = build_grid(ManifoldKind::Sphere, 1000, None).unwrap();
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
        assert!(g.nodes().iter().all(|&t| ManifoldKind::Sphere.contains(t)));
    }

    #[test]
    fn restriction_keeps_spacing() {
        let g = build_grid(ManifoldKind::Sphere, 8, None).unwrap();
        let half = g.restrict_to(PI / 2.0);
        assert_eq!(half.len(), 4);
        assert_eq!(half.step(), g.step());
    }
}
