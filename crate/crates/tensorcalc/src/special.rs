//! Kronecker delta, generalized Kronecker delta and permutation tensors,
//! together with exhaustive integer checks of their identities.

use crate::expr::{equal_on_samples, normalize, Expr, OracleError};
use crate::geometry::DerivedMetric;
use crate::report::Check;
use crate::tensor::{index_tuples, TensorField, Variance};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SpecialError {
    #[error("permutation tensor over {n} dimensions takes {n} indices, got {got}")]
    Arity { n: usize, got: usize },
    #[error("index {0} out of range 1..={1}")]
    IndexRange(usize, usize),
    #[error("upper and lower index lists must have equal length")]
    MismatchedLists,
    #[error("the contravariant absolute permutation tensor is only defined for n = 3")]
    ContravariantDimension,
    #[error("operation requires dimension {expected}, system has {got}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Rank-n permutation symbol as the product of signs of index differences.
pub fn epsilon(indices: &[usize], n: usize) -> Result<i64, SpecialError> {
    if indices.len() != n {
        return Err(SpecialError::Arity {
            n,
            got: indices.len(),
        });
    }
    for &i in indices {
        if i == 0 || i > n {
            return Err(SpecialError::IndexRange(i, n));
        }
    }
    let mut sign = 1i64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = indices[j] as i64 - indices[i] as i64;
            sign *= d.signum();
            if sign == 0 {
                return Ok(0);
            }
        }
    }
    Ok(sign)
}

/// Generalized Kronecker delta as an integer determinant of ordinary deltas.
pub fn generalized_delta(upper: &[usize], lower: &[usize]) -> Result<i64, SpecialError> {
    if upper.len() != lower.len() {
        return Err(SpecialError::MismatchedLists);
    }
    let m = upper.len();
    let matrix: Vec<Vec<i64>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| if upper[a] == lower[b] { 1 } else { 0 })
                .collect()
        })
        .collect();
    Ok(int_det(&matrix))
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][j] * int_det(&minor);
    }
    acc
}

/// Absolute (weight-0) permutation tensor: sqrt(g) eps for the covariant
/// form, eps / sqrt(g) for the contravariant form (n = 3 only).
pub fn absolute_epsilon(
    g: &DerivedMetric,
    variance: Variance,
) -> Result<TensorField, SpecialError> {
    let n = g.dim();
    if variance == Variance::Up && n != 3 {
        return Err(SpecialError::ContravariantDimension);
    }
    let factor = match variance {
        Variance::Down => g.sqrt_det().clone(),
        Variance::Up => Expr::powi(g.sqrt_det().clone(), -1),
    };
    let comps: Result<Vec<Expr>, SpecialError> = index_tuples(n, n)
        .iter()
        .map(|idx| {
            let e = epsilon(idx, n)?;
            Ok(normalize(&Expr::Product(vec![
                Expr::integer(e),
                factor.clone(),
            ])))
        })
        .collect();
    TensorField::new(
        "abs_epsilon",
        n,
        vec![variance; n],
        0,
        comps?,
    )
    .map_err(|_| SpecialError::Arity { n, got: n })
}

/// Relative permutation tensor as a tensor field with declared weight -1
/// (covariant) or +1 (contravariant).
pub fn relative_epsilon(n: usize, variance: Variance) -> TensorField {
    let comps = index_tuples(n, n)
        .iter()
        .map(|idx| Expr::integer(epsilon(idx, n).unwrap()))
        .collect();
    let weight = match variance {
        Variance::Down => -1,
        Variance::Up => 1,
    };
    TensorField::new("epsilon", n, vec![variance; n], weight, comps)
        .unwrap()
}

/// Exhaustive integer identities tying epsilon and the generalized delta:
/// the rank-3 eps-eps determinant and contraction, the n! total contraction,
/// delta = eps x eps over all tuples, and the two-index reduction.
pub fn verify_epsilon_identities(n: usize) -> Result<Vec<Check>, SpecialError> {
    let mut checks = Vec::new();
    let tuples = index_tuples(n, n);

    if n == 3 {
        // eps^ijk eps_lmn equals the 3x3 delta determinant, all 729 combos
        let mut ok = true;
        for up in &tuples {
            for lo in &tuples {
                let lhs = epsilon(up, 3)? * epsilon(lo, 3)?;
                let rhs = generalized_delta(up, lo)?;
                ok &= lhs == rhs;
            }
        }
        checks.push(Check::exact("rank-3 eps pair equals delta determinant (729 cases)", ok));

        // eps^ijk eps_lmk = d^i_l d^j_m - d^i_m d^j_l, all 81 free combos
        let mut ok = true;
        for i in 1..=3usize {
            for j in 1..=3usize {
                for l in 1..=3usize {
                    for m in 1..=3usize {
                        let mut lhs = 0;
                        for k in 1..=3usize {
                            lhs += epsilon(&[i, j, k], 3)? * epsilon(&[l, m, k], 3)?;
                        }
                        let d = |a: usize, b: usize| i64::from(a == b);
                        let rhs = d(i, l) * d(j, m) - d(i, m) * d(j, l);
                        ok &= lhs == rhs;
                    }
                }
            }
        }
        checks.push(Check::exact("contracted eps-delta identity (81 cases)", ok));

        // delta^{ij}_{lm} = delta^{ijk}_{lmk}
        let mut ok = true;
        for i in 1..=3usize {
            for j in 1..=3usize {
                for l in 1..=3usize {
                    for m in 1..=3usize {
                        let lhs = generalized_delta(&[i, j], &[l, m])?;
                        let mut rhs = 0;
                        for k in 1..=3usize {
                            rhs += generalized_delta(&[i, j, k], &[l, m, k])?;
                        }
                        ok &= lhs == rhs;
                    }
                }
            }
        }
        checks.push(Check::exact("two-index delta equals contracted three-index delta", ok));
    }

    // total contraction eps^... eps_... = n!
    let mut total = 0i64;
    for t in &tuples {
        let e = epsilon(t, n)?;
        total += e * e;
    }
    let factorial: i64 = (1..=n as i64).product();
    checks.push(Check::exact(
        format!("eps contraction totals {n}! = {factorial}"),
        total == factorial,
    ));

    // generalized delta is the product of two permutation symbols
    let mut ok = true;
    for up in &tuples {
        for lo in &tuples {
            ok &= generalized_delta(up, lo)? == epsilon(up, n)? * epsilon(lo, n)?;
        }
    }
    checks.push(Check::exact("generalized delta equals eps product", ok));

    Ok(checks)
}

/// Metric-generalized identity g^ij eps_ikl eps_jmn = g_km g_ln - g_kn g_lm
/// with the absolute (underlined) epsilon, certified by the oracle on the
/// system's domain for all 81 index choices.
pub fn metric_epsilon_delta(g: &DerivedMetric, tol: f64) -> Result<Check, SpecialError> {
    if g.dim() != 3 {
        return Err(SpecialError::Dimension {
            expected: 3,
            got: g.dim(),
        });
    }
    let abs_cov = absolute_epsilon(g, Variance::Down)?;
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 1..=3usize {
        for l in 1..=3usize {
            for m in 1..=3usize {
                for n in 1..=3usize {
                    let mut terms = Vec::new();
                    for i in 1..=3usize {
                        for j in 1..=3usize {
                            terms.push(Expr::Product(vec![
                                g.upper(i, j).clone(),
                                abs_cov.get(&[i, k, l]).clone(),
                                abs_cov.get(&[j, m, n]).clone(),
                            ]));
                        }
                    }
                    let lhs = normalize(&Expr::Sum(terms));
                    let rhs = normalize(&Expr::Sum(vec![
                        Expr::Product(vec![g.lower(k, m).clone(), g.lower(l, n).clone()]),
                        Expr::Product(vec![
                            Expr::integer(-1),
                            g.lower(k, n).clone(),
                            g.lower(l, m).clone(),
                        ]),
                    ]));
                    let v = equal_on_samples(&lhs, &rhs, g.domain(), tol)?;
                    ok &= v.equal;
                    worst = worst.max(v.max_residual);
                }
            }
        }
    }
    Ok(Check::new("metric eps-delta identity (81 cases)", ok, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, DEFAULT_TOL};
    use crate::systems;

    #[test]
    fn epsilon_basic_values() {
        assert_eq!(epsilon(&[1, 2, 3], 3).unwrap(), 1);
        assert_eq!(epsilon(&[2, 1, 3], 3).unwrap(), -1);
        assert_eq!(epsilon(&[1, 1, 3], 3).unwrap(), 0);
    }

    #[test]
    fn epsilon_input_validation() {
        assert!(matches!(epsilon(&[1, 2], 3), Err(SpecialError::Arity { .. })));
        assert!(matches!(epsilon(&[1, 2, 4], 3), Err(SpecialError::IndexRange(4, 3))));
    }

    #[test]
    fn epsilon_agrees_with_parity_definition_and_superfactorial_formula() {
        // independent routes: sort-counting parity, and the product formula
        // divided by the superfactorial of n-1
        fn parity_eps(t: &[usize]) -> i64 {
            for (i, a) in t.iter().enumerate() {
                for b in &t[i + 1..] {
                    if a == b {
                        return 0;
                    }
                }
            }
            let mut v = t.to_vec();
            let mut swaps = 0;
            for i in 0..v.len() {
                while v[i] != i + 1 {
                    let target = v[i] - 1;
                    v.swap(i, target);
                    swaps += 1;
                }
            }
            if swaps % 2 == 0 {
                1
            } else {
                -1
            }
        }
        fn superfactorial(k: usize) -> i64 {
            (1..=k as i64).map(|i| (1..=i).product::<i64>()).product()
        }
        for n in 1..=4usize {
            let s = superfactorial(n - 1);
            for t in index_tuples(n, n) {
                let byproduct: i64 = {
                    let mut p = 1i64;
                    for i in 0..n {
                        for j in (i + 1)..n {
                            p *= t[j] as i64 - t[i] as i64;
                        }
                    }
                    p / s
                };
                assert_eq!(epsilon(&t, n).unwrap(), parity_eps(&t), "{t:?}");
                assert_eq!(epsilon(&t, n).unwrap(), byproduct, "{t:?}");
            }
        }
    }

    #[test]
    fn epsilon_antisymmetry_under_swaps() {
        for n in 2..=4usize {
            for t in index_tuples(n, n) {
                let base = epsilon(&t, n).unwrap();
                for a in 0..n {
                    for b in (a + 1)..n {
                        let mut s = t.clone();
                        s.swap(a, b);
                        assert_eq!(epsilon(&s, n).unwrap(), -base);
                    }
                }
            }
        }
    }

    #[test]
    fn generalized_delta_examples() {
        assert_eq!(generalized_delta(&[1, 2], &[1, 2]).unwrap(), 1);
        assert_eq!(generalized_delta(&[1, 2], &[2, 1]).unwrap(), -1);
        assert_eq!(generalized_delta(&[1, 2], &[1, 1]).unwrap(), 0);
        assert!(generalized_delta(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn full_rank_delta_reduces_to_epsilon() {
        for n in 1..=4usize {
            let identity: Vec<usize> = (1..=n).collect();
            for t in index_tuples(n, n) {
                assert_eq!(
                    generalized_delta(&identity, &t).unwrap(),
                    epsilon(&t, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn epsilon_identity_suites_pass() {
        for n in [2, 3, 4] {
            for check in verify_epsilon_identities(n).unwrap() {
                assert!(check.passed, "n={n}: {}", check.name);
            }
        }
    }

    #[test]
    fn absolute_epsilon_values() {
        let cyl = systems::cylindrical().unwrap();
        let cov = absolute_epsilon(&cyl, Variance::Down).unwrap();
        let v = equal_on_samples(cov.get(&[1, 2, 3]), &parse("rho").unwrap(), cyl.domain(), DEFAULT_TOL)
            .unwrap();
        assert!(v.equal);

        let cart = systems::cartesian().unwrap();
        for variance in [Variance::Down, Variance::Up] {
            let t = absolute_epsilon(&cart, variance).unwrap();
            assert_eq!(*t.get(&[1, 2, 3]), Expr::one());
        }

        let sph = systems::spherical().unwrap();
        let con = absolute_epsilon(&sph, Variance::Up).unwrap();
        let v = equal_on_samples(
            con.get(&[1, 2, 3]),
            &parse("1/(r^2*sin(theta))").unwrap(),
            sph.domain(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(v.equal);

        let mk = systems::minkowski().unwrap();
        assert!(matches!(
            absolute_epsilon(&mk, Variance::Up),
            Err(SpecialError::ContravariantDimension)
        ));
        assert!(absolute_epsilon(&mk, Variance::Down).is_ok());
    }

    #[test]
    fn metric_epsilon_delta_on_builtins() {
        for g in [
            systems::cartesian().unwrap(),
            systems::cylindrical().unwrap(),
            systems::spherical().unwrap(),
        ] {
            let check = metric_epsilon_delta(&g, DEFAULT_TOL).unwrap();
            assert!(check.passed, "{}: residual {}", g.system().name, check.max_residual);
        }
    }

    #[test]
    fn metric_epsilon_delta_specific_values() {
        let g = systems::cylindrical().unwrap();
        let abs_cov = absolute_epsilon(&g, Variance::Down).unwrap();
        let lhs = |k: usize, l: usize, m: usize, n: usize| {
            let mut terms = Vec::new();
            for i in 1..=3usize {
                for j in 1..=3usize {
                    terms.push(Expr::Product(vec![
                        g.upper(i, j).clone(),
                        abs_cov.get(&[i, k, l]).clone(),
                        abs_cov.get(&[j, m, n]).clone(),
                    ]));
                }
            }
            normalize(&Expr::Sum(terms))
        };
        let v = equal_on_samples(&lhs(2, 3, 2, 3), &parse("rho^2").unwrap(), g.domain(), DEFAULT_TOL)
            .unwrap();
        assert!(v.equal);
        let v = equal_on_samples(&lhs(1, 2, 2, 1), &parse("-rho^2").unwrap(), g.domain(), DEFAULT_TOL)
            .unwrap();
        assert!(v.equal);
    }

    #[test]
    fn relative_epsilon_is_covariantly_constant_via_weight_term() {
        let g = systems::cylindrical().unwrap();
        let eps = relative_epsilon(3, Variance::Down);
        let d = crate::tensor::covariant_derivative(&eps, &g).unwrap();
        let v = crate::tensor::field_is_zero(&d, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }
}
