//! Permutation tensors and generalized Kronecker deltas: exhaustive integer
//! identities plus the metric-generalized form certified by the oracle.

use tensorcalc::expr::DEFAULT_TOL;
use tensorcalc::special::{
    absolute_epsilon, epsilon, generalized_delta, metric_epsilon_delta,
    verify_epsilon_identities,
};
use tensorcalc::systems;
use tensorcalc::tensor::Variance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("eps(1,2,3) = {:+}", epsilon(&[1, 2, 3], 3)?);
    println!("eps(2,1,3) = {:+}", epsilon(&[2, 1, 3], 3)?);
    println!("eps(1,1,3) = {:+}", epsilon(&[1, 1, 3], 3)?);
    println!("delta^12_21 = {:+}", generalized_delta(&[1, 2], &[2, 1])?);
    println!();

    for n in [2, 3, 4] {
        println!("rank-{n} identities:");
        for check in verify_epsilon_identities(n)? {
            println!("  {} -> {}", check.name, if check.passed { "ok" } else { "FAIL" });
        }
    }
    println!();

    // absolute forms carry the sqrt-g factor
    let cyl = systems::cylindrical()?;
    let cov = absolute_epsilon(&cyl, Variance::Down)?;
    println!("cylindrical abs eps_123 = {}", cov.get(&[1, 2, 3]));
    let sph = systems::spherical()?;
    let con = absolute_epsilon(&sph, Variance::Up)?;
    println!("spherical   abs eps^123 = {}", con.get(&[1, 2, 3]));
    println!();

    for name in ["cartesian", "cylindrical", "spherical"] {
        let g = systems::builtin(name)?;
        let check = metric_epsilon_delta(&g, DEFAULT_TOL)?;
        println!(
            "{name}: {} -> {} (max residual {:.3e})",
            check.name,
            if check.passed { "ok" } else { "FAIL" },
            check.max_residual
        );
    }
    Ok(())
}
