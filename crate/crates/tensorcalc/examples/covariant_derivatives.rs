//! Covariant and absolute differentiation: the metric-compatibility
//! identities, relative-tensor weight terms, and transport along a curve.

use tensorcalc::expr::{parse, DEFAULT_TOL};
use tensorcalc::systems;
use tensorcalc::tensor::{
    absolute_derivative, covariant_derivative, field_is_zero, kronecker_field,
    metric_lower_field, Curve, TensorField, Variance,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = systems::cylindrical()?;

    // the metric and the Kronecker delta are covariantly constant
    for (label, field) in [
        ("g_ij", metric_lower_field(&g)),
        ("delta^i_j", kronecker_field(3)),
    ] {
        let d = covariant_derivative(&field, &g)?;
        let v = field_is_zero(&d, g.domain(), DEFAULT_TOL)?;
        println!("{label};k == 0   (max residual {:.3e})", v.max_residual);
    }

    // a relative scalar of weight +1: sqrt(g)
    let sqrt_g = TensorField::scalar("sqrtg", 3, g.sqrt_det().clone()).with_weight(1);
    let d = covariant_derivative(&sqrt_g, &g)?;
    let v = field_is_zero(&d, g.domain(), DEFAULT_TOL)?;
    println!("sqrt(g);i == 0 with the weight term   (max residual {:.3e})", v.max_residual);

    // covariant derivative of a scalar is the plain gradient
    let f = TensorField::scalar("f", 3, parse("rho^2*sin(phi)")?);
    let grad = covariant_derivative(&f, &g)?;
    println!("grad components: ({}, {}, {})", grad.get(&[1]), grad.get(&[2]), grad.get(&[3]));

    // absolute derivative of the unit phi-direction field along a circle:
    // the direction rotates, so the radial component changes at rate -1
    let a = TensorField::vector(
        "A",
        3,
        Variance::Up,
        vec![parse("0")?, parse("1")?, parse("0")?],
    )?;
    let circle = Curve::new("t", vec![parse("1")?, parse("t")?, parse("0")?], (0.2, 2.8), &g)?;
    let transported = absolute_derivative(&a, &circle, &g)?;
    println!(
        "circle transport: dA^1/dt = {}, dA^2/dt = {}",
        transported.get(&[1]),
        transported.get(&[2])
    );

    // the metric passes through the absolute derivative
    let along = absolute_derivative(&metric_lower_field(&g), &circle, &g)?;
    let v = field_is_zero(&along, &circle.param_domain(), DEFAULT_TOL)?;
    println!("d(g_ij)/dt along the curve == 0   (max residual {:.3e})", v.max_residual);
    Ok(())
}
