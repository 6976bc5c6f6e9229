//! The sampling oracle on its own, and a user-defined coordinate system
//! loaded from the same definition format the CLI accepts.

use tensorcalc::connection::christoffel;
use tensorcalc::expr::{equal_on_samples, parse, SampleDomain, DEFAULT_TOL};
use tensorcalc::sysdef::parse_system_definition;

const OBLATE_ISH: &str = "\
# a scaled polar patch defined by its metric components
name = scaled_polar
dimension = 2
coordinates = s phi
metric.1.1 = 4
metric.2.2 = 4*s^2
domain.s = 0.5 2
domain.phi = 0.1 3
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the oracle certifies identities at seeded sample points
    let domain = SampleDomain::single("x", 0.1, 1.5)?;
    let a = parse("sin(x)^2 + cos(x)^2")?;
    let b = parse("1")?;
    let verdict = equal_on_samples(&a, &b, &domain, DEFAULT_TOL)?;
    println!(
        "sin^2 + cos^2 == 1: {} (max residual {:.3e})",
        verdict.equal, verdict.max_residual
    );

    // a deliberate perturbation is caught, with the worst point reported
    let c = parse("1 + 0.001")?;
    let verdict = equal_on_samples(&a, &c, &domain, DEFAULT_TOL)?;
    println!(
        "perturbed identity rejected: {} (residual {:.3e})",
        !verdict.equal, verdict.max_residual
    );
    println!();

    // a custom system goes through the full machinery
    let def = parse_system_definition(OBLATE_ISH)?;
    let g = def.build(0)?;
    println!("system '{}' with coordinates {:?}", g.system().name, g.system().coords());
    println!("  det g = {}", g.det());
    let gamma = christoffel(&g);
    for k in 1..=2 {
        for i in 1..=2 {
            for j in i..=2 {
                let e = gamma.second(k, i, j);
                if !e.is_zero() {
                    println!("  Gamma^{k}_{i}{j} = {e}");
                }
            }
        }
    }
    Ok(())
}
