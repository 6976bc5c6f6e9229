//! The curvature chain on the unit 2-sphere, the smallest system with
//! non-vanishing curvature, against the flat builtins.

use tensorcalc::curvature::{
    flatness_test, riemann_counts, verify_bianchi, verify_riemann_symmetries, CurvatureBundle,
};
use tensorcalc::expr::DEFAULT_TOL;
use tensorcalc::systems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["cartesian", "cylindrical", "spherical", "minkowski", "two_sphere"] {
        let g = systems::builtin(name)?;
        println!("{name}: flat = {}", flatness_test(&g, DEFAULT_TOL)?);
    }
    println!();

    let g = systems::two_sphere()?;
    let bundle = CurvatureBundle::compute(&g)?;
    println!("unit 2-sphere:");
    println!("  R^1_212  = {}", bundle.riemann_mixed.get(&[1, 2, 1, 2]));
    println!("  R_1212   = {}", bundle.riemann_lower.get(&[1, 2, 1, 2]));
    println!("  Ricci    = [{}, {}; {}, {}]",
        bundle.ricci.get(&[1, 1]),
        bundle.ricci.get(&[1, 2]),
        bundle.ricci.get(&[2, 1]),
        bundle.ricci.get(&[2, 2]),
    );
    println!("  R        = {}", bundle.ricci_scalar);
    println!("  G_11     = {} (identically zero in two dimensions)", bundle.einstein_lower.get(&[1, 1]));
    println!();

    for check in verify_riemann_symmetries(&bundle, &g, DEFAULT_TOL)? {
        println!("  {} -> {}", check.name, if check.passed { "ok" } else { "FAIL" });
    }
    for check in verify_bianchi(&bundle, &g, DEFAULT_TOL)? {
        println!("  {} -> {}", check.name, if check.passed { "ok" } else { "FAIL" });
    }
    println!();

    for n in 2..=5u64 {
        let (n1, n2, n3, total) = riemann_counts(n);
        println!("n = {n}: {n1} + {n2} + {n3} = {total} independent Riemann components");
    }
    Ok(())
}
