//! Riemann, Ricci and Einstein tensors with their symmetry, Bianchi and
//! divergence verifiers, plus the component-count combinatorics.

use crate::connection::christoffel;
use crate::expr::{
    differentiate, equal_on_samples, normalize, zero_on_samples, Expr, OracleError, UnaryFn,
};
use crate::geometry::DerivedMetric;
use crate::report::Check;
use crate::tensor::{
    contract, covariant_derivative, index_tuples, metric_upper_field, raise_index, TensorField,
    TensorError, Variance,
};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CurvatureError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Riemann (both kinds), Ricci, Ricci scalar and Einstein tensors for one
/// coordinate system.
#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    pub riemann_mixed: TensorField,
    pub riemann_lower: TensorField,
    pub ricci: TensorField,
    pub ricci_scalar: Expr,
    pub einstein_lower: TensorField,
    pub einstein_upper: TensorField,
    pub einstein_mixed: TensorField,
}

impl CurvatureBundle {
    pub fn compute(g: &DerivedMetric) -> Result<Self, CurvatureError> {
        let riemann_mixed = riemann_second(g);
        let riemann_lower = riemann_first(&riemann_mixed, g)?;
        let (ricci, ricci_scalar) = ricci(g)?;
        let (einstein_lower, einstein_upper, einstein_mixed) = einstein_tables(g, &ricci, &ricci_scalar)?;
        Ok(CurvatureBundle {
            riemann_mixed,
            riemann_lower,
            ricci,
            ricci_scalar,
            einstein_lower,
            einstein_upper,
            einstein_mixed,
        })
    }
}

/// Mixed Riemann tensor
/// R^i_jkl = d_k Gamma^i_jl - d_l Gamma^i_jk
///         + Gamma^r_jl Gamma^i_rk - Gamma^r_jk Gamma^i_rl.
pub fn riemann_second(g: &DerivedMetric) -> TensorField {
    let n = g.dim();
    let gamma = christoffel(g);
    let coord = |i: usize| g.system().coord(i).to_string();
    let sig = vec![Variance::Up, Variance::Down, Variance::Down, Variance::Down];
    let mut out = TensorField::zeros("riemann", n, sig);
    for idx in index_tuples(n, 4) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut terms = vec![
            differentiate(gamma.second(i, j, l), &coord(k)),
            Expr::Product(vec![
                Expr::integer(-1),
                differentiate(gamma.second(i, j, k), &coord(l)),
            ]),
        ];
        for r in 1..=n {
            terms.push(Expr::Product(vec![
                gamma.second(r, j, l).clone(),
                gamma.second(i, r, k).clone(),
            ]));
            terms.push(Expr::Product(vec![
                Expr::integer(-1),
                gamma.second(r, j, k).clone(),
                gamma.second(i, r, l).clone(),
            ]));
        }
        out.set(&idx, normalize(&Expr::Sum(terms)));
    }
    out
}

/// Covariant Riemann tensor by lowering the contravariant index.
pub fn riemann_first(
    mixed: &TensorField,
    g: &DerivedMetric,
) -> Result<TensorField, CurvatureError> {
    let mut lower = crate::tensor::lower_index(mixed, 0, g)?;
    lower.name = "riemann_lower".into();
    Ok(lower)
}

/// Covariant Riemann tensor established independently from second
/// derivatives of the metric and first-kind symbols:
/// R_ijkl = (d_j d_k g_il + d_i d_l g_jk - d_j d_l g_ik - d_i d_k g_jl)/2
///        + g^rs ([il,r][jk,s] - [ik,r][jl,s]).
pub fn riemann_first_direct(g: &DerivedMetric) -> TensorField {
    let n = g.dim();
    let gamma = christoffel(g);
    let coord = |i: usize| g.system().coord(i).to_string();
    let dd = |i: usize, j: usize, a: usize, b: usize| {
        differentiate(&differentiate(g.lower(a, b), &coord(j)), &coord(i))
    };
    let sig = vec![Variance::Down; 4];
    let mut out = TensorField::zeros("riemann_direct", n, sig);
    for idx in index_tuples(n, 4) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let half = Expr::Product(vec![
            Expr::rational(1, 2),
            Expr::Sum(vec![
                dd(j, k, i, l),
                dd(i, l, j, k),
                Expr::Product(vec![Expr::integer(-1), dd(j, l, i, k)]),
                Expr::Product(vec![Expr::integer(-1), dd(i, k, j, l)]),
            ]),
        ]);
        let mut terms = vec![half];
        for r in 1..=n {
            for s in 1..=n {
                terms.push(Expr::Product(vec![
                    g.upper(r, s).clone(),
                    gamma.first(i, l, r).clone(),
                    gamma.first(j, k, s).clone(),
                ]));
                terms.push(Expr::Product(vec![
                    Expr::integer(-1),
                    g.upper(r, s).clone(),
                    gamma.first(i, k, r).clone(),
                    gamma.first(j, l, s).clone(),
                ]));
            }
        }
        out.set(&idx, normalize(&Expr::Sum(terms)));
    }
    out
}

/// Ricci tensor R_ij (contraction of the mixed Riemann tensor on the
/// derivative slot, so the unit sphere carries positive curvature) and the
/// Ricci scalar R = g^ij R_ij.
pub fn ricci(g: &DerivedMetric) -> Result<(TensorField, Expr), CurvatureError> {
    let mixed = riemann_second(g);
    // R_jl = R^a_{jal}
    let mut table = contract(&mixed, 0, 2)?;
    table.name = "ricci".into();
    let n = g.dim();
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            terms.push(Expr::Product(vec![
                g.upper(i, j).clone(),
                table.get(&[i, j]).clone(),
            ]));
        }
    }
    let scalar = normalize(&Expr::Sum(terms));
    Ok((table, scalar))
}

/// Ricci tensor through the log-sqrt-determinant form, used as an
/// independent route for cross-checking [`ricci`]:
/// R_ij = (1/sqrt g) d_a (sqrt g Gamma^a_ij) - d_j d_i ln(sqrt g)
///      - Gamma^a_bj Gamma^b_ia.
pub fn ricci_log_form(g: &DerivedMetric) -> TensorField {
    let n = g.dim();
    let gamma = christoffel(g);
    let coord = |i: usize| g.system().coord(i).to_string();
    let log_sqrt = Expr::func(UnaryFn::Ln, g.sqrt_det().clone());
    let mut out = TensorField::zeros("ricci_log", n, vec![Variance::Down, Variance::Down]);
    for idx in index_tuples(n, 2) {
        let (i, j) = (idx[0], idx[1]);
        let mut terms = Vec::new();
        for a in 1..=n {
            let da = differentiate(
                &normalize(&Expr::Product(vec![
                    g.sqrt_det().clone(),
                    gamma.second(a, i, j).clone(),
                ])),
                &coord(a),
            );
            terms.push(Expr::quotient(da, g.sqrt_det().clone()));
        }
        terms.push(Expr::Product(vec![
            Expr::integer(-1),
            differentiate(&differentiate(&log_sqrt, &coord(i)), &coord(j)),
        ]));
        for a in 1..=n {
            for b in 1..=n {
                terms.push(Expr::Product(vec![
                    Expr::integer(-1),
                    gamma.second(a, b, j).clone(),
                    gamma.second(b, i, a).clone(),
                ]));
            }
        }
        out.set(&idx, normalize(&Expr::Sum(terms)));
    }
    out
}

fn einstein_tables(
    g: &DerivedMetric,
    ricci: &TensorField,
    scalar: &Expr,
) -> Result<(TensorField, TensorField, TensorField), CurvatureError> {
    let n = g.dim();
    let half_scalar = normalize(&Expr::Product(vec![Expr::rational(1, 2), scalar.clone()]));
    let mut lower = TensorField::zeros("einstein", n, vec![Variance::Down, Variance::Down]);
    for idx in index_tuples(n, 2) {
        let (m, q) = (idx[0], idx[1]);
        lower.set(
            &idx,
            normalize(&Expr::Sum(vec![
                ricci.get(&idx).clone(),
                Expr::Product(vec![
                    Expr::integer(-1),
                    g.lower(m, q).clone(),
                    half_scalar.clone(),
                ]),
            ])),
        );
    }
    let mut upper = raise_index(&raise_index(&lower, 0, g)?, 1, g)?;
    upper.name = "einstein_upper".into();
    let mut mixed = raise_index(&lower, 0, g)?;
    mixed.name = "einstein_mixed".into();
    Ok((lower, upper, mixed))
}

/// Einstein tensor in its three variance forms.
pub fn einstein(
    g: &DerivedMetric,
) -> Result<(TensorField, TensorField, TensorField), CurvatureError> {
    let (ricci_table, scalar) = ricci(g)?;
    einstein_tables(g, &ricci_table, &scalar)
}

/// Independent non-vanishing component counts of the Riemann tensor and
/// their total n^2 (n^2 - 1) / 12.
pub fn riemann_counts(n: u64) -> (u64, u64, u64, u64) {
    let n = n as i64;
    let n1 = n * (n - 1) / 2;
    let n2 = n * (n - 1) * (n - 2) / 2;
    let n3 = n * (n - 1) * (n - 2) * (n - 3) / 12;
    let total = n * n * (n * n - 1) / 12;
    (n1.max(0) as u64, n2.max(0) as u64, n3.max(0) as u64, total.max(0) as u64)
}

/// Independent Ricci entries n(n+1)/2.
pub fn ricci_count(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// True iff every mixed Riemann component vanishes on the sample domain.
pub fn flatness_test(g: &DerivedMetric, tol: f64) -> Result<bool, CurvatureError> {
    let mixed = riemann_second(g);
    let v = crate::tensor::field_is_zero(&mixed, g.domain(), tol)?;
    Ok(v.equal)
}

/// Symmetry relations of the Riemann tensor: block symmetry, the two
/// antisymmetries, the mixed antisymmetry, the vanishing contraction
/// R^i_ikl and the differential identity
/// R_ijkl;s + R_iljk;s = R_iksl;j + R_ikjs;l.
pub fn verify_riemann_symmetries(
    bundle: &CurvatureBundle,
    g: &DerivedMetric,
    tol: f64,
) -> Result<Vec<Check>, CurvatureError> {
    let n = g.dim();
    let dom = g.domain();
    let low = &bundle.riemann_lower;
    let mut checks = Vec::new();

    let mut pair_checks = vec![
        ("block symmetry R_ijkl = R_klij", true, 0.0f64),
        ("antisymmetry in the first pair", true, 0.0f64),
        ("antisymmetry in the last pair", true, 0.0f64),
        ("mixed antisymmetry in the last pair", true, 0.0f64),
    ];
    for idx in index_tuples(n, 4) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let cases: [(usize, Expr, Expr); 4] = [
            (0, low.get(&idx).clone(), low.get(&[k, l, i, j]).clone()),
            (
                1,
                low.get(&idx).clone(),
                Expr::neg(low.get(&[j, i, k, l]).clone()),
            ),
            (
                2,
                low.get(&idx).clone(),
                Expr::neg(low.get(&[i, j, l, k]).clone()),
            ),
            (
                3,
                bundle.riemann_mixed.get(&idx).clone(),
                Expr::neg(bundle.riemann_mixed.get(&[i, j, l, k]).clone()),
            ),
        ];
        for (slot, a, b) in cases {
            let v = equal_on_samples(&a, &normalize(&b), dom, tol)?;
            pair_checks[slot].1 &= v.equal;
            pair_checks[slot].2 = pair_checks[slot].2.max(v.max_residual);
        }
    }
    for (name, ok, worst) in pair_checks {
        checks.push(Check::new(name, ok, worst));
    }

    // R^i_ikl = 0
    let contracted = contract(&bundle.riemann_mixed, 0, 1)?;
    let v = crate::tensor::field_is_zero(&contracted, dom, tol)?;
    checks.push(Check::new(
        "first-index contraction vanishes",
        v.equal,
        v.max_residual,
    ));

    // differential identity
    let d = covariant_derivative(low, g)?;
    let mut ok = true;
    let mut worst = 0.0f64;
    for idx in index_tuples(n, 5) {
        let (i, j, k, l, s) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
        let lhs = Expr::Sum(vec![
            d.get(&[i, j, k, l, s]).clone(),
            d.get(&[i, l, j, k, s]).clone(),
        ]);
        let rhs = Expr::Sum(vec![
            d.get(&[i, k, s, l, j]).clone(),
            d.get(&[i, k, j, s, l]).clone(),
        ]);
        let v = equal_on_samples(&normalize(&lhs), &normalize(&rhs), dom, tol)?;
        ok &= v.equal;
        worst = worst.max(v.max_residual);
    }
    checks.push(Check::new(
        "paired covariant-derivative identity",
        ok,
        worst,
    ));

    Ok(checks)
}

/// First Bianchi identity in all four fixed-index cyclic variants (first
/// kind and mixed kind) and the second (differential) Bianchi identity for
/// both kinds.
pub fn verify_bianchi(
    bundle: &CurvatureBundle,
    g: &DerivedMetric,
    tol: f64,
) -> Result<Vec<Check>, CurvatureError> {
    let n = g.dim();
    let dom = g.domain();
    let low = &bundle.riemann_lower;
    let mut checks = Vec::new();

    type Cycle = fn(usize, usize, usize, usize) -> [[usize; 4]; 3];
    let variants: [(&str, Cycle); 4] = [
        ("first Bianchi identity, i fixed", |i, j, k, l| {
            [[i, j, k, l], [i, l, j, k], [i, k, l, j]]
        }),
        ("first Bianchi identity, j fixed", |i, j, k, l| {
            [[i, j, k, l], [l, j, i, k], [k, j, l, i]]
        }),
        ("first Bianchi identity, k fixed", |i, j, k, l| {
            [[i, j, k, l], [l, i, k, j], [j, l, k, i]]
        }),
        ("first Bianchi identity, l fixed", |i, j, k, l| {
            [[i, j, k, l], [k, i, j, l], [j, k, i, l]]
        }),
    ];
    for (name, cycle) in variants {
        let mut ok = true;
        let mut worst = 0.0f64;
        for idx in index_tuples(n, 4) {
            let picks = cycle(idx[0], idx[1], idx[2], idx[3]);
            let sum = Expr::Sum(picks.iter().map(|p| low.get(p).clone()).collect());
            let v = zero_on_samples(&normalize(&sum), dom, tol)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(name, ok, worst));
    }

    // mixed-kind first identity: R^i_jkl + R^i_ljk + R^i_klj = 0
    let mut ok = true;
    let mut worst = 0.0f64;
    for idx in index_tuples(n, 4) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let sum = Expr::Sum(vec![
            bundle.riemann_mixed.get(&[i, j, k, l]).clone(),
            bundle.riemann_mixed.get(&[i, l, j, k]).clone(),
            bundle.riemann_mixed.get(&[i, k, l, j]).clone(),
        ]);
        let v = zero_on_samples(&normalize(&sum), dom, tol)?;
        ok &= v.equal;
        worst = worst.max(v.max_residual);
    }
    checks.push(Check::new("first Bianchi identity, mixed kind", ok, worst));

    // second Bianchi identity, both kinds
    for (name, table) in [
        ("second Bianchi identity, first kind", low),
        ("second Bianchi identity, mixed kind", &bundle.riemann_mixed),
    ] {
        let d = covariant_derivative(table, g)?;
        let mut ok = true;
        let mut worst = 0.0f64;
        for idx in index_tuples(n, 5) {
            let (i, j, k, l, m) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
            let sum = Expr::Sum(vec![
                d.get(&[i, j, k, l, m]).clone(),
                d.get(&[i, j, l, m, k]).clone(),
                d.get(&[i, j, m, k, l]).clone(),
            ]);
            let v = zero_on_samples(&normalize(&sum), dom, tol)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(name, ok, worst));
    }

    Ok(checks)
}

/// Both contracted divergence forms of the Einstein tensor:
/// G^mn_;n = 0 and g^jk G_ki;j = 0.
pub fn einstein_divergence_check(
    g: &DerivedMetric,
    tol: f64,
) -> Result<Vec<Check>, CurvatureError> {
    let (lower, upper, _) = einstein(g)?;
    let dom = g.domain();
    let mut checks = Vec::new();

    let d_upper = covariant_derivative(&upper, g)?;
    let div = contract(&d_upper, 1, 2)?;
    let v = crate::tensor::field_is_zero(&div, dom, tol)?;
    checks.push(Check::new(
        "contravariant Einstein divergence vanishes",
        v.equal,
        v.max_residual,
    ));

    let d_lower = covariant_derivative(&lower, g)?;
    let n = g.dim();
    let mut ok = true;
    let mut worst = 0.0f64;
    let upper_metric = metric_upper_field(g);
    for i in 1..=n {
        let mut terms = Vec::new();
        for j in 1..=n {
            for k in 1..=n {
                terms.push(Expr::Product(vec![
                    upper_metric.get(&[j, k]).clone(),
                    d_lower.get(&[k, i, j]).clone(),
                ]));
            }
        }
        let v = zero_on_samples(&normalize(&Expr::Sum(terms)), dom, tol)?;
        ok &= v.equal;
        worst = worst.max(v.max_residual);
    }
    checks.push(Check::new(
        "covariant Einstein divergence vanishes",
        ok,
        worst,
    ));

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, DEFAULT_TOL};
    use crate::systems;
    use crate::tensor::{field_is_zero, fields_equal};

    #[test]
    fn flat_builtins_have_zero_riemann() {
        for g in [
            systems::cartesian().unwrap(),
            systems::cylindrical().unwrap(),
            systems::spherical().unwrap(),
            systems::minkowski().unwrap(),
        ] {
            assert!(
                flatness_test(&g, DEFAULT_TOL).unwrap(),
                "{} should be flat",
                g.system().name
            );
        }
    }

    #[test]
    fn two_sphere_riemann_components() {
        let g = systems::two_sphere().unwrap();
        let mixed = riemann_second(&g);
        let want = parse("sin(theta)^2").unwrap();
        let v = equal_on_samples(mixed.get(&[1, 2, 1, 2]), &want, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "R^1_212 residual {}", v.max_residual);

        let lower = riemann_first(&mixed, &g).unwrap();
        let v = equal_on_samples(lower.get(&[1, 2, 1, 2]), &want, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "R_1212 residual {}", v.max_residual);
        assert!(!flatness_test(&g, DEFAULT_TOL).unwrap());
    }

    #[test]
    fn lowered_riemann_matches_direct_formula() {
        for g in [systems::two_sphere().unwrap(), systems::spherical().unwrap()] {
            let mixed = riemann_second(&g);
            let lowered = riemann_first(&mixed, &g).unwrap();
            let direct = riemann_first_direct(&g);
            let v = fields_equal(&lowered, &direct, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "{}: residual {}", g.system().name, v.max_residual);
        }
    }

    #[test]
    fn two_sphere_ricci_and_scalar() {
        let g = systems::two_sphere().unwrap();
        let (table, scalar) = ricci(&g).unwrap();
        let v = equal_on_samples(table.get(&[1, 1]), &Expr::one(), g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "R_theta_theta residual {}", v.max_residual);
        let v = equal_on_samples(
            table.get(&[2, 2]),
            &parse("sin(theta)^2").unwrap(),
            g.domain(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(v.equal, "R_phi_phi residual {}", v.max_residual);
        let v = equal_on_samples(&scalar, &Expr::integer(2), g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal, "scalar residual {}", v.max_residual);
        // symmetry
        let v = equal_on_samples(table.get(&[1, 2]), table.get(&[2, 1]), g.domain(), DEFAULT_TOL)
            .unwrap();
        assert!(v.equal);
    }

    #[test]
    fn ricci_log_form_agrees() {
        for g in [
            systems::two_sphere().unwrap(),
            systems::spherical().unwrap(),
            systems::cylindrical().unwrap(),
        ] {
            let (table, _) = ricci(&g).unwrap();
            let log_form = ricci_log_form(&g);
            let v = fields_equal(&table, &log_form, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "{}: residual {}", g.system().name, v.max_residual);
        }
    }

    #[test]
    fn flat_space_ricci_vanishes() {
        let g = systems::spherical().unwrap();
        let (table, scalar) = ricci(&g).unwrap();
        let v = field_is_zero(&table, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal);
        let v = zero_on_samples(&scalar, g.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal);
    }

    #[test]
    fn einstein_vanishes_in_two_dimensions_and_flat_space() {
        let g = systems::two_sphere().unwrap();
        let (lower, upper, mixed) = einstein(&g).unwrap();
        for t in [&lower, &upper, &mixed] {
            let v = field_is_zero(t, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "{} residual {}", t.name, v.max_residual);
        }
        let flat = systems::cylindrical().unwrap();
        let (lower, _, _) = einstein(&flat).unwrap();
        let v = field_is_zero(&lower, flat.domain(), DEFAULT_TOL).unwrap();
        assert!(v.equal);
    }

    #[test]
    fn einstein_symmetry_on_a_curved_four_dimensional_metric() {
        // diag(1, r^2, r^2 sin^2(theta), f(r)) style metric would be ideal;
        // the two-sphere already exercises symmetry trivially, so use a
        // product metric two_sphere x line made by hand.
        let g = systems::two_sphere().unwrap();
        let (lower, _, _) = einstein(&g).unwrap();
        for i in 1..=2usize {
            for j in 1..=2usize {
                let v = equal_on_samples(
                    lower.get(&[i, j]),
                    lower.get(&[j, i]),
                    g.domain(),
                    DEFAULT_TOL,
                )
                .unwrap();
                assert!(v.equal);
            }
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(riemann_counts(2).3, 1);
        assert_eq!(riemann_counts(3).3, 6);
        assert_eq!(riemann_counts(4).3, 20);
        assert_eq!(riemann_counts(5).3, 50);
        assert_eq!(riemann_counts(1).3, 0);
        assert_eq!(ricci_count(4), 10);
        assert_eq!(crate::connection::christoffel_count(3), 18);
    }

    #[test]
    fn riemann_table_has_dense_size() {
        let g = systems::two_sphere().unwrap();
        let mixed = riemann_second(&g);
        assert_eq!(mixed.components().len(), 16);
    }

    #[test]
    fn identical_pair_components_vanish() {
        let g = systems::two_sphere().unwrap();
        let lower = riemann_first(&riemann_second(&g), &g).unwrap();
        for idx in index_tuples(2, 4) {
            if idx[0] == idx[1] || idx[2] == idx[3] {
                assert!(
                    lower.get(&idx).is_zero(),
                    "R_{idx:?} should vanish structurally"
                );
            }
        }
    }

    #[test]
    fn symmetry_suite_on_two_sphere() {
        let g = systems::two_sphere().unwrap();
        let bundle = CurvatureBundle::compute(&g).unwrap();
        for check in verify_riemann_symmetries(&bundle, &g, DEFAULT_TOL).unwrap() {
            assert!(check.passed, "{}: residual {}", check.name, check.max_residual);
        }
        // the four dependent components of the single independent entry
        let low = &bundle.riemann_lower;
        let want = parse("sin(theta)^2").unwrap();
        for (idx, sign) in [
            ([1usize, 2, 1, 2], 1),
            ([2, 1, 2, 1], 1),
            ([1, 2, 2, 1], -1),
            ([2, 1, 1, 2], -1),
        ] {
            let e = normalize(&Expr::Product(vec![Expr::integer(sign), want.clone()]));
            let v = equal_on_samples(low.get(&idx), &e, g.domain(), DEFAULT_TOL).unwrap();
            assert!(v.equal, "R_{idx:?}");
        }
    }

    #[test]
    fn bianchi_suite_on_two_sphere_and_cylindrical() {
        for g in [systems::two_sphere().unwrap(), systems::cylindrical().unwrap()] {
            let bundle = CurvatureBundle::compute(&g).unwrap();
            for check in verify_bianchi(&bundle, &g, DEFAULT_TOL).unwrap() {
                assert!(
                    check.passed,
                    "{}: {} residual {}",
                    g.system().name,
                    check.name,
                    check.max_residual
                );
            }
        }
    }

    #[test]
    fn einstein_divergence_vanishes_on_two_sphere() {
        let g = systems::two_sphere().unwrap();
        for check in einstein_divergence_check(&g, DEFAULT_TOL).unwrap() {
            assert!(check.passed, "{}: residual {}", check.name, check.max_residual);
        }
    }

    #[test]
    fn mixed_covariant_derivatives_commute_via_riemann() {
        use crate::tensor::{second_covariant_derivative, DerivOrder, TensorField};
        let g = systems::two_sphere().unwrap();
        let a = TensorField::vector(
            "A",
            2,
            Variance::Down,
            vec![parse("sin(theta)*phi").unwrap(), parse("theta^2").unwrap()],
        )
        .unwrap();
        let jk = second_covariant_derivative(&a, &g, DerivOrder::Jk).unwrap();
        let kj = second_covariant_derivative(&a, &g, DerivOrder::Kj).unwrap();
        let mixed = riemann_second(&g);
        // A_{j;kl} - A_{j;lk} = R^i_jkl A_i
        for j in 1..=2usize {
            for k in 1..=2usize {
                for l in 1..=2usize {
                    let lhs = normalize(&Expr::Sum(vec![
                        jk.get(&[j, k, l]).clone(),
                        Expr::Product(vec![Expr::integer(-1), kj.get(&[j, k, l]).clone()]),
                    ]));
                    let rhs = normalize(&Expr::Sum(
                        (1..=2usize)
                            .map(|i| {
                                Expr::Product(vec![
                                    mixed.get(&[i, j, k, l]).clone(),
                                    a.get(&[i]).clone(),
                                ])
                            })
                            .collect(),
                    ));
                    let v = equal_on_samples(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
                    assert!(v.equal, "commutator at ({j},{k},{l})");
                }
            }
        }
    }

    #[test]
    fn contravariant_commutator_uses_swapped_last_indices() {
        use crate::tensor::{second_covariant_derivative, DerivOrder, TensorField};
        let g = systems::two_sphere().unwrap();
        let a = TensorField::vector(
            "A",
            2,
            Variance::Up,
            vec![parse("theta*phi").unwrap(), parse("cos(theta)").unwrap()],
        )
        .unwrap();
        let jk = second_covariant_derivative(&a, &g, DerivOrder::Jk).unwrap();
        let kj = second_covariant_derivative(&a, &g, DerivOrder::Kj).unwrap();
        let mixed = riemann_second(&g);
        // A^j_{;kl} - A^j_{;lk} = R^j_{ilk} A^i
        for j in 1..=2usize {
            for k in 1..=2usize {
                for l in 1..=2usize {
                    let lhs = normalize(&Expr::Sum(vec![
                        jk.get(&[j, k, l]).clone(),
                        Expr::Product(vec![Expr::integer(-1), kj.get(&[j, k, l]).clone()]),
                    ]));
                    let rhs = normalize(&Expr::Sum(
                        (1..=2usize)
                            .map(|i| {
                                Expr::Product(vec![
                                    mixed.get(&[j, i, l, k]).clone(),
                                    a.get(&[i]).clone(),
                                ])
                            })
                            .collect(),
                    ));
                    let v = equal_on_samples(&lhs, &rhs, g.domain(), DEFAULT_TOL).unwrap();
                    assert!(v.equal, "commutator at ({j},{k},{l})");
                }
            }
        }
    }
}
