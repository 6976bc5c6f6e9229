//! Property tests for the expression core: parser/renderer stability,
//! normalization idempotence and value preservation, differentiation
//! linearity and commuting mixed partials.

use proptest::prelude::*;
use tensorcalc::expr::{
    differentiate, equal_on_samples, evaluate, normalize, parse, render, Expr, SampleDomain,
    SamplePoint, UnaryFn, DEFAULT_TOL,
};

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(Expr::integer),
        ((-6i64..=6), (1i64..=4)).prop_map(|(p, q)| Expr::rational(p, q)),
        prop_oneof![Just(0.5f64), Just(-1.25), Just(2.0), Just(0.125)].prop_map(Expr::real),
        prop_oneof![Just("x"), Just("y")].prop_map(Expr::symbol),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Sum),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Product),
            (inner.clone(), -3i64..=3).prop_map(|(b, k)| Expr::powi(b, k)),
            inner.clone().prop_map(Expr::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::quotient(a, b)),
            (
                prop_oneof![
                    Just(UnaryFn::Sin),
                    Just(UnaryFn::Cos),
                    Just(UnaryFn::Tan),
                    Just(UnaryFn::Cot),
                    Just(UnaryFn::Ln),
                    Just(UnaryFn::Sqrt),
                    Just(UnaryFn::Exp)
                ],
                inner
            )
                .prop_map(|(f, a)| Expr::func(f, a)),
        ]
    })
}

fn domain() -> SampleDomain {
    SampleDomain::new(vec![("x".into(), 0.4, 1.6), ("y".into(), 0.3, 1.2)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// One parse(render(.)) round reaches a fixed point of the AST.
    #[test]
    fn parse_render_reaches_fixed_point(e in arb_expr()) {
        let once = parse(&render(&e)).expect("render output parses");
        let twice = parse(&render(&once)).expect("second render parses");
        prop_assert_eq!(once, twice);
    }

    /// Normalized expressions round-trip through text exactly.
    #[test]
    fn normalized_forms_round_trip(e in arb_expr()) {
        let n = normalize(&e);
        let back = parse(&render(&n)).expect("render output parses");
        prop_assert_eq!(back, n);
    }

    #[test]
    fn normalize_is_idempotent(e in arb_expr()) {
        let once = normalize(&e);
        let twice = normalize(&once);
        prop_assert_eq!(once, twice);
    }

    /// Rendering and normalization never change the value.
    #[test]
    fn text_and_normalization_preserve_value(e in arb_expr()) {
        let point = SamplePoint::new(vec![("x".into(), 0.73), ("y".into(), 1.31)]);
        if let Ok(v) = evaluate(&e, &point) {
            let reparsed = parse(&render(&e)).expect("render output parses");
            let rv = evaluate(&reparsed, &point).expect("reparsed form evaluates");
            prop_assert!((v - rv).abs() <= 1e-9 * v.abs().max(1.0), "{v} vs {rv}");
            if let Ok(nv) = evaluate(&normalize(&e), &point) {
                prop_assert!((v - nv).abs() <= 1e-6 * v.abs().max(1.0), "{v} vs {nv}");
            }
        }
    }

    /// Differentiation is linear.
    #[test]
    fn differentiation_is_linear(a in arb_expr(), b in arb_expr()) {
        let sum = Expr::Sum(vec![a.clone(), b.clone()]);
        let lhs = differentiate(&sum, "x");
        let rhs = Expr::Sum(vec![differentiate(&a, "x"), differentiate(&b, "x")]);
        if let Ok(v) = equal_on_samples(&lhs, &rhs, &domain(), DEFAULT_TOL) {
            prop_assert!(v.equal, "residual {}", v.max_residual);
        }
    }

    /// Mixed partial derivatives commute.
    #[test]
    fn mixed_partials_commute(e in arb_expr()) {
        let xy = differentiate(&differentiate(&e, "x"), "y");
        let yx = differentiate(&differentiate(&e, "y"), "x");
        if let Ok(v) = equal_on_samples(&xy, &yx, &domain(), 1e-7) {
            prop_assert!(v.equal, "residual {}", v.max_residual);
        }
    }
}

/// The spec-level statement: source text that parses re-renders to the same
/// structure.
#[test]
fn source_round_trip_examples() {
    for t in [
        "rho^2",
        "r*sin(theta)",
        "1/(r^2*sin(theta))",
        "-r^2*sin(theta)*cos(theta)",
        "x + y - 1/2*z",
        "cot(theta)",
        "exp(-x^2)",
        "sqrt(x^2 + y^2)",
    ] {
        let e = parse(t).unwrap();
        assert_eq!(parse(&render(&e)).unwrap(), e, "{t}");
    }
}
