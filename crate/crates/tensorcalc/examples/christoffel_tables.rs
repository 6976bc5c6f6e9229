//! Christoffel symbols of both kinds, the contracted symbol, and the
//! scale-factor shortcut that cross-checks the metric route.

use tensorcalc::connection::{
    christoffel, christoffel_count, contracted_christoffel, orthogonal_christoffel,
};
use tensorcalc::expr::{equal_on_samples, DEFAULT_TOL};
use tensorcalc::systems;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["cylindrical", "spherical"] {
        let g = systems::builtin(name)?;
        let gamma = christoffel(&g);
        println!("== {name}: non-zero Christoffel symbols ==");
        for k in 1..=3 {
            for i in 1..=3 {
                for j in i..=3 {
                    let e = gamma.second(k, i, j);
                    if !e.is_zero() {
                        println!("  Gamma^{k}_{i}{j} = {e}");
                    }
                }
            }
        }
        for i in 1..=3 {
            for j in i..=3 {
                for l in 1..=3 {
                    let e = gamma.first(i, j, l);
                    if !e.is_zero() {
                        println!("  [{i}{j},{l}]    = {e}");
                    }
                }
            }
        }

        let contracted = contracted_christoffel(&g);
        for (i, c) in contracted.iter().enumerate() {
            if !c.is_zero() {
                println!("  Gamma^a_{}a  = {c}", i + 1);
            }
        }

        // the orthogonal shortcut agrees with the metric route everywhere
        let short = orthogonal_christoffel(&g)?;
        let mut agreements = 0;
        for k in 1..=3usize {
            for i in 1..=3usize {
                for j in 1..=3usize {
                    let v = equal_on_samples(
                        &short[k - 1][i - 1][j - 1],
                        gamma.second(k, i, j),
                        g.domain(),
                        DEFAULT_TOL,
                    )?;
                    assert!(v.equal);
                    agreements += 1;
                }
            }
        }
        println!("  scale-factor shortcut agrees on {agreements}/27 components");
        println!();
    }

    println!(
        "independent symbols per kind: n=3 -> {}, n=4 -> {}",
        christoffel_count(3),
        christoffel_count(4)
    );
    Ok(())
}
