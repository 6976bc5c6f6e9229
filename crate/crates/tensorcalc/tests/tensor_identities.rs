//! Integration tests for the covariant-derivative invariants on randomized
//! tensor fields: linearity, product rule, metric bypass, gradient symmetry,
//! basis-vector derivatives, contraction commutation and the explicit
//! second-derivative expansion.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensorcalc::connection::christoffel;
use tensorcalc::expr::{
    differentiate, equal_on_samples, normalize, zero_on_samples, Expr, DEFAULT_TOL,
};
use tensorcalc::geometry::{basis_vectors, CartesianMap, CoordinateSystem};
use tensorcalc::systems;
use tensorcalc::tensor::{
    contract, covariant_derivative, fields_equal, lower_index, second_covariant_derivative,
    DerivOrder, TensorField, Variance,
};
use tensorcalc::verify::{random_scalar, random_vector};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn covariant_derivative_is_linear() {
    let g = systems::spherical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(1);
    for _ in 0..3 {
        let a = random_vector(&coords, Variance::Up, &mut r);
        let b = random_vector(&coords, Variance::Up, &mut r);
        let combo = a.scaled(&Expr::integer(3)).add(&b.scaled(&Expr::rational(-1, 2))).unwrap();
        let lhs = covariant_derivative(&combo, &g).unwrap();
        let rhs = covariant_derivative(&a, &g)
            .unwrap()
            .scaled(&Expr::integer(3))
            .add(&covariant_derivative(&b, &g).unwrap().scaled(&Expr::rational(-1, 2)))
            .unwrap();
        let v = fields_equal(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }
}

#[test]
fn covariant_derivative_satisfies_the_product_rule() {
    let g = systems::cylindrical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(2);
    for _ in 0..3 {
        let a = random_vector(&coords, Variance::Up, &mut r);
        let b = random_vector(&coords, Variance::Down, &mut r);
        let outer = a.outer(&b, "AB");
        let lhs = covariant_derivative(&outer, &g).unwrap();

        // (A;q) outer B + A outer (B;q), with the derivative slot moved last
        let da = covariant_derivative(&a, &g).unwrap(); // slots (i, q)
        let db = covariant_derivative(&b, &g).unwrap(); // slots (j, q)
        let term1 = da.outer(&b, "dAB").move_slot(1, 2); // (i, q, j) -> (i, j, q)
        let term2 = a.outer(&db, "AdB"); // (i, j, q) already
        let rhs = term1.add(&term2).unwrap();
        let v = fields_equal(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }
}

#[test]
fn covariant_derivative_bypasses_the_metric() {
    let g = systems::spherical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(3);
    for _ in 0..3 {
        let a = random_vector(&coords, Variance::Up, &mut r);
        // (g_ik A^k)_{;j}
        let lowered = lower_index(&a, 0, &g).unwrap();
        let lhs = covariant_derivative(&lowered, &g).unwrap();
        // g_ik A^k_{;j}
        let da = covariant_derivative(&a, &g).unwrap();
        let rhs = lower_index(&da, 0, &g).unwrap();
        let v = fields_equal(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }
}

#[test]
fn gradient_fields_have_symmetric_covariant_derivatives() {
    let g = systems::spherical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(4);
    for _ in 0..3 {
        let f = random_scalar(&coords, &mut r);
        let grad = TensorField::vector(
            "df",
            3,
            Variance::Down,
            (1..=3).map(|i| differentiate(&f, g.system().coord(i))).collect(),
        )
        .unwrap();
        let d = covariant_derivative(&grad, &g).unwrap();
        for i in 1..=3usize {
            for j in (i + 1)..=3usize {
                let v = equal_on_samples(d.get(&[i, j]), d.get(&[j, i]), g.domain(), DEFAULT_TOL)
                    .unwrap();
                assert!(v.equal, "A_({i};{j}) vs A_({j};{i})");
            }
        }
    }
}

#[test]
fn basis_vector_derivatives_expand_in_christoffel_symbols() {
    // d_j E_i = Gamma^k_ij E_k, checked on the Cartesian components of the
    // cylindrical and spherical basis columns
    for builder in [systems::cylindrical, systems::spherical] {
        let g = builder().unwrap();
        let (map, system) = rebuild_map(&g.system().name);
        let basis = basis_vectors(&map, &system);
        let gamma = christoffel(&g);
        let n = 3usize;
        for i in 1..=n {
            for j in 1..=n {
                for comp in 0..n {
                    let mut terms = vec![differentiate(
                        &basis[i - 1][comp],
                        g.system().coord(j),
                    )];
                    for k in 1..=n {
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(k, i, j).clone(),
                            basis[k - 1][comp].clone(),
                        ]));
                    }
                    let residual = normalize(&Expr::Sum(terms));
                    let v = zero_on_samples(&residual, g.domain(), DEFAULT_TOL).unwrap();
                    assert!(
                        v.equal,
                        "{}: dE_{i}/du^{j} component {comp}, residual {}",
                        g.system().name,
                        v.max_residual
                    );
                }
            }
        }
    }
}

fn rebuild_map(name: &str) -> (CartesianMap, CoordinateSystem) {
    use tensorcalc::expr::parse;
    let g = systems::builtin(name).unwrap();
    let system = CoordinateSystem::new(
        name,
        g.system().coords().to_vec(),
        g.domain().clone(),
    )
    .unwrap();
    let exprs = match name {
        "cylindrical" => vec!["rho*cos(phi)", "rho*sin(phi)", "z"],
        "spherical" => vec![
            "r*sin(theta)*cos(phi)",
            "r*sin(theta)*sin(phi)",
            "r*cos(theta)",
        ],
        _ => panic!("only map-based systems"),
    };
    let map = CartesianMap::new(
        exprs.into_iter().map(|t| parse(t).unwrap()).collect(),
        &system,
    )
    .unwrap();
    (map, system)
}

#[test]
fn contraction_commutes_with_covariant_differentiation() {
    let g = systems::cylindrical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(5);
    for _ in 0..3 {
        let t = random_vector(&coords, Variance::Up, &mut r)
            .outer(&random_vector(&coords, Variance::Down, &mut r), "T");
        // contract then differentiate
        let traced = contract(&t, 0, 1).unwrap();
        let lhs = covariant_derivative(&traced, &g).unwrap();
        // differentiate then contract
        let d = covariant_derivative(&t, &g).unwrap();
        let rhs = contract(&d, 0, 1).unwrap();
        let v = fields_equal(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "residual {}", v.max_residual);
    }
}

#[test]
fn divergence_is_the_contracted_covariant_derivative() {
    let g = systems::spherical().unwrap();
    let coords = g.system().coords().to_vec();
    let mut r = rng(6);
    let a = random_vector(&coords, Variance::Up, &mut r);
    let div = tensorcalc::field_ops::divergence(&a, &g).unwrap();
    let d = covariant_derivative(&a, &g).unwrap();
    let traced = contract(&d, 0, 1).unwrap();
    let v = equal_on_samples(&div, traced.get(&[]), g.domain(), DEFAULT_TOL).unwrap();
    assert!(v.equal, "residual {}", v.max_residual);
}

/// Explicit expanded second-derivative formulas (first ;j then ;k), used as
/// an independent check of the double-application route.
#[test]
fn second_covariant_derivative_matches_explicit_expansion() {
    let g = systems::two_sphere().unwrap();
    let coords = g.system().coords().to_vec();
    let gamma = christoffel(&g);
    let n = 2usize;
    let coord = |i: usize| g.system().coord(i).to_string();
    let mut r = rng(7);

    for _ in 0..2 {
        // covariant: A_i;jk = d_k d_j A_i - Gamma^a_ij d_k A_a - Gamma^a_ik d_j A_a
        //                  - Gamma^a_jk d_a A_i
        //                  - A_a (d_k Gamma^a_ij - Gamma^a_ib Gamma^b_jk - Gamma^b_ik Gamma^a_bj)
        let a = random_vector(&coords, Variance::Down, &mut r);
        let twice = second_covariant_derivative(&a, &g, DerivOrder::Jk).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let mut terms = vec![differentiate(
                        &differentiate(a.get(&[i]), &coord(j)),
                        &coord(k),
                    )];
                    for s in 1..=n {
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(s, i, j).clone(),
                            differentiate(a.get(&[s]), &coord(k)),
                        ]));
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(s, i, k).clone(),
                            differentiate(a.get(&[s]), &coord(j)),
                        ]));
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(s, j, k).clone(),
                            differentiate(a.get(&[i]), &coord(s)),
                        ]));
                        let mut bracket = vec![differentiate(gamma.second(s, i, j), &coord(k))];
                        for b in 1..=n {
                            bracket.push(Expr::Product(vec![
                                Expr::integer(-1),
                                gamma.second(s, i, b).clone(),
                                gamma.second(b, j, k).clone(),
                            ]));
                            bracket.push(Expr::Product(vec![
                                Expr::integer(-1),
                                gamma.second(b, i, k).clone(),
                                gamma.second(s, b, j).clone(),
                            ]));
                        }
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            a.get(&[s]).clone(),
                            Expr::Sum(bracket),
                        ]));
                    }
                    let explicit = normalize(&Expr::Sum(terms));
                    let v = equal_on_samples(&explicit, twice.get(&[i, j, k]), g.domain(), DEFAULT_TOL)
                        .unwrap();
                    assert!(v.equal, "covariant A_{i};{j}{k} residual {}", v.max_residual);
                }
            }
        }

        // contravariant: A^i_;jk = d_k d_j A^i + Gamma^i_ak d_j A^a - Gamma^a_jk d_a A^i
        //                        + Gamma^i_ja d_k A^a
        //                        + A^a (d_k Gamma^i_aj + Gamma^i_bk Gamma^b_aj - Gamma^b_jk Gamma^i_ba)
        let a = random_vector(&coords, Variance::Up, &mut r);
        let twice = second_covariant_derivative(&a, &g, DerivOrder::Jk).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let mut terms = vec![differentiate(
                        &differentiate(a.get(&[i]), &coord(j)),
                        &coord(k),
                    )];
                    for s in 1..=n {
                        terms.push(Expr::Product(vec![
                            gamma.second(i, s, k).clone(),
                            differentiate(a.get(&[s]), &coord(j)),
                        ]));
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(s, j, k).clone(),
                            differentiate(a.get(&[i]), &coord(s)),
                        ]));
                        terms.push(Expr::Product(vec![
                            gamma.second(i, j, s).clone(),
                            differentiate(a.get(&[s]), &coord(k)),
                        ]));
                        let mut bracket = vec![differentiate(gamma.second(i, s, j), &coord(k))];
                        for b in 1..=n {
                            bracket.push(Expr::Product(vec![
                                gamma.second(i, b, k).clone(),
                                gamma.second(b, s, j).clone(),
                            ]));
                            bracket.push(Expr::Product(vec![
                                Expr::integer(-1),
                                gamma.second(b, j, k).clone(),
                                gamma.second(i, b, s).clone(),
                            ]));
                        }
                        terms.push(Expr::Product(vec![a.get(&[s]).clone(), Expr::Sum(bracket)]));
                    }
                    let explicit = normalize(&Expr::Sum(terms));
                    let v = equal_on_samples(&explicit, twice.get(&[i, j, k]), g.domain(), DEFAULT_TOL)
                        .unwrap();
                    assert!(v.equal, "contravariant A^{i}_;{j}{k} residual {}", v.max_residual);
                }
            }
        }
    }
}

#[test]
fn relative_epsilon_and_weighted_scalars_are_covariantly_constant() {
    let g = systems::cylindrical().unwrap();

    // relative covariant epsilon, weight -1
    let eps = tensorcalc::special::relative_epsilon(3, Variance::Down);
    let d = covariant_derivative(&eps, &g).unwrap();
    let v = tensorcalc::tensor::field_is_zero(&d, g.domain(), DEFAULT_TOL).unwrap();
    assert!(v.equal, "epsilon residual {}", v.max_residual);

    // sqrt g as a relative scalar of weight +1
    let f = TensorField::scalar("sqrtg", 3, g.sqrt_det().clone()).with_weight(1);
    let d = covariant_derivative(&f, &g).unwrap();
    let v = tensorcalc::tensor::field_is_zero(&d, g.domain(), DEFAULT_TOL).unwrap();
    assert!(v.equal, "sqrt g residual {}", v.max_residual);

    // weight 0 reduces to the plain covariant derivative
    let coords = g.system().coords().to_vec();
    let mut r = rng(8);
    let a = random_vector(&coords, Variance::Up, &mut r);
    let plain = covariant_derivative(&a, &g).unwrap();
    let weighted = covariant_derivative(&a.clone().with_weight(0), &g).unwrap();
    let v = fields_equal(&plain, &weighted, g.domain(), DEFAULT_TOL).unwrap();
    assert!(v.equal);
}
