//! Coordinate systems and metrics: building a metric from a Cartesian map or
//! from explicit components, and reading off everything derived from it.

use tensorcalc::expr::parse;
use tensorcalc::field_ops::{line_element, volume_element};
use tensorcalc::geometry::{basis_vectors, jacobian, CartesianMap, CoordinateSystem};
use tensorcalc::systems;
use tensorcalc::SampleDomain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // builtin systems come with safe sample domains
    for name in systems::BUILTIN_NAMES {
        let g = systems::builtin(name)?;
        println!("== {name} (n = {}) ==", g.dim());
        for i in 1..=g.dim() {
            for j in 1..=g.dim() {
                if !g.lower(i, j).is_zero() {
                    println!("  g_{i}{j} = {}", g.lower(i, j));
                }
            }
        }
        println!("  det g  = {}", g.det());
        println!("  sqrt g = {}", g.sqrt_det());
        if let Ok(h) = g.scale_factors() {
            let hs: Vec<String> = h.iter().map(|e| e.to_string()).collect();
            println!("  h      = ({})", hs.join(", "));
        }
        println!("  (ds)^2 = {}", line_element(&g));
        println!("  dV     = {}", volume_element(&g));
        println!();
    }

    // the same machinery applies to a hand-built map: parabolic cylinder
    // coordinates x = (u^2 - v^2)/2, y = u v, z = z
    let domain = SampleDomain::new(vec![
        ("u".into(), 0.5, 2.0),
        ("v".into(), 0.5, 2.0),
        ("w".into(), -1.0, 1.0),
    ])?;
    let system = CoordinateSystem::new(
        "parabolic_cylinder",
        vec!["u".into(), "v".into(), "w".into()],
        domain,
    )?;
    let map = CartesianMap::new(
        vec![
            parse("(u^2 - v^2)/2")?,
            parse("u*v")?,
            parse("w")?,
        ],
        &system,
    )?;
    let jac = jacobian(&map, &system);
    println!("== parabolic cylinder coordinates ==");
    println!("  det J = {}", jac.det);
    let g = tensorcalc::geometry::metric_from_map(&map, &system)?;
    println!("  g_11 = {}", g.lower(1, 1));
    println!("  g_22 = {}", g.lower(2, 2));
    println!("  orthogonal: {}", g.is_orthogonal());

    // covariant basis columns and their dot products reproduce the metric
    let basis = basis_vectors(&map, &system);
    println!("  E_1 = ({}, {}, {})", basis[0][0], basis[0][1], basis[0][2]);
    Ok(())
}
