//! Builtin coordinate systems with singularity-free sample domains.

use crate::expr::{parse, Expr, SampleDomain};
use crate::geometry::{
    metric_from_components, metric_from_map, CartesianMap, CoordinateSystem, DerivedMetric,
    GeometryError,
};

pub const BUILTIN_NAMES: [&str; 5] = [
    "cartesian",
    "cylindrical",
    "spherical",
    "minkowski",
    "two_sphere",
];

pub fn builtin(name: &str) -> Result<DerivedMetric, GeometryError> {
    match name {
        "cartesian" => cartesian(),
        "cylindrical" => cylindrical(),
        "spherical" => spherical(),
        "minkowski" => minkowski(),
        "two_sphere" => two_sphere(),
        other => Err(GeometryError::UnknownSymbol(other.to_string())),
    }
}

fn coords(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn p(text: &str) -> Expr {
    parse(text).expect("builtin expression")
}

/// Rectangular Cartesian x, y, z on [-2, 2]^3, built from the identity map.
pub fn cartesian() -> Result<DerivedMetric, GeometryError> {
    let domain = SampleDomain::new(vec![
        ("x".into(), -2.0, 2.0),
        ("y".into(), -2.0, 2.0),
        ("z".into(), -2.0, 2.0),
    ])?;
    let system = CoordinateSystem::new("cartesian", coords(&["x", "y", "z"]), domain)?;
    let map = CartesianMap::new(vec![p("x"), p("y"), p("z")], &system)?;
    metric_from_map(&map, &system)
}

/// Cylindrical (rho, phi, z); rho stays away from the axis.
pub fn cylindrical() -> Result<DerivedMetric, GeometryError> {
    let domain = SampleDomain::new(vec![
        ("rho".into(), 0.5, 2.0),
        ("phi".into(), 0.1, 3.0),
        ("z".into(), -1.0, 1.0),
    ])?;
    let system = CoordinateSystem::new("cylindrical", coords(&["rho", "phi", "z"]), domain)?;
    let map = CartesianMap::new(
        vec![p("rho*cos(phi)"), p("rho*sin(phi)"), p("z")],
        &system,
    )?;
    metric_from_map(&map, &system)
}

/// Spherical (r, theta, phi); theta stays away from the poles.
pub fn spherical() -> Result<DerivedMetric, GeometryError> {
    let domain = SampleDomain::new(vec![
        ("r".into(), 0.5, 2.0),
        ("theta".into(), 0.3, 2.8),
        ("phi".into(), 0.1, 6.0),
    ])?;
    let system = CoordinateSystem::new("spherical", coords(&["r", "theta", "phi"]), domain)?;
    let map = CartesianMap::new(
        vec![
            p("r*sin(theta)*cos(phi)"),
            p("r*sin(theta)*sin(phi)"),
            p("r*cos(theta)"),
        ],
        &system,
    )?;
    metric_from_map(&map, &system)
}

/// Minkowski metric diag(1, -1, -1, -1) over coordinates u0..u3.
pub fn minkowski() -> Result<DerivedMetric, GeometryError> {
    let domain = SampleDomain::new(
        ["u0", "u1", "u2", "u3"]
            .iter()
            .map(|c| (c.to_string(), -2.0, 2.0))
            .collect(),
    )?;
    let system = CoordinateSystem::new("minkowski", coords(&["u0", "u1", "u2", "u3"]), domain)?;
    let rows = diag(vec![p("1"), p("-1"), p("-1"), p("-1")]);
    metric_from_components(rows, &system)
}

/// Surface of the unit sphere: diag(1, sin(theta)^2) over (theta, phi).
/// The smallest system with non-vanishing curvature.
pub fn two_sphere() -> Result<DerivedMetric, GeometryError> {
    let domain = SampleDomain::new(vec![
        ("theta".into(), 0.3, 2.8),
        ("phi".into(), 0.1, 6.0),
    ])?;
    let system = CoordinateSystem::new("two_sphere", coords(&["theta", "phi"]), domain)?;
    let rows = diag(vec![p("1"), p("sin(theta)^2")]);
    metric_from_components(rows, &system)
}

fn diag(entries: Vec<Expr>) -> Vec<Vec<Expr>> {
    let n = entries.len();
    let mut rows = vec![vec![Expr::zero(); n]; n];
    for (i, e) in entries.into_iter().enumerate() {
        rows[i][i] = e;
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{equal_on_samples, DEFAULT_TOL};

    #[test]
    fn builtins_construct() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap_or_else(|e| panic!("builtin {name}: {e}"));
        }
    }

    #[test]
    fn cylindrical_metric_matches_scale_factor_squares() {
        let g = cylindrical().unwrap();
        assert!(g.is_orthogonal());
        let expected = [p("1"), p("rho^2"), p("1")];
        for (i, want) in expected.iter().enumerate() {
            let v = equal_on_samples(g.lower(i + 1, i + 1), want, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "g_{0}{0}: residual {1}", i + 1, v.max_residual);
        }
    }

    #[test]
    fn spherical_metric_matches_scale_factor_squares() {
        let g = spherical().unwrap();
        let expected = [p("1"), p("r^2"), p("r^2*sin(theta)^2")];
        for (i, want) in expected.iter().enumerate() {
            let v = equal_on_samples(g.lower(i + 1, i + 1), want, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "g_{0}{0}: residual {1}", i + 1, v.max_residual);
        }
    }

    #[test]
    fn minkowski_upper_equals_lower() {
        let g = minkowski().unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(g.lower(i, j), g.upper(i, j));
            }
        }
        assert!(g.is_orthogonal());
        assert!(g.scale_factors().is_err());
    }

    #[test]
    fn singular_metric_is_rejected() {
        let domain = SampleDomain::new(vec![
            ("a".into(), -1.0, 1.0),
            ("b".into(), -1.0, 1.0),
            ("c".into(), -1.0, 1.0),
        ])
        .unwrap();
        let system = CoordinateSystem::new("bad", coords(&["a", "b", "c"]), domain).unwrap();
        let rows = diag(vec![p("1"), p("0"), p("1")]);
        assert!(metric_from_components(rows, &system).is_err());
    }
}
