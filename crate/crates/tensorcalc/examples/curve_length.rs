//! Arc length by adaptive quadrature of the metric line element.

use tensorcalc::expr::parse;
use tensorcalc::field_ops::curve_length;
use tensorcalc::systems;
use tensorcalc::tensor::Curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pi = std::f64::consts::PI;

    let cyl = systems::cylindrical()?;
    let circle = Curve::unchecked(
        "t",
        vec![parse("1.5")?, parse("t")?, parse("0")?],
        (0.0, 2.0 * pi),
    );
    println!(
        "circle rho = 1.5:       {:.10}  (3 pi = {:.10})",
        curve_length(&circle, &cyl)?,
        3.0 * pi
    );

    let helix = Curve::unchecked(
        "t",
        vec![parse("1")?, parse("t")?, parse("t/2")?],
        (0.0, 2.0 * pi),
    );
    println!(
        "helix on rho = 1:       {:.10}  (2 pi sqrt(5)/2 = {:.10})",
        curve_length(&helix, &cyl)?,
        2.0 * pi * (1.25f64).sqrt()
    );

    let sph = systems::spherical()?;
    let meridian = Curve::unchecked(
        "t",
        vec![parse("1")?, parse("t")?, parse("1/2")?],
        (0.0, pi / 2.0),
    );
    println!(
        "quarter meridian:       {:.10}  (pi/2 = {:.10})",
        curve_length(&meridian, &sph)?,
        pi / 2.0
    );

    // a latitude circle at theta0 has circumference 2 pi sin(theta0)
    let sphere = systems::two_sphere()?;
    let latitude = Curve::unchecked("t", vec![parse("1")?, parse("t")?], (0.0, 2.0 * pi));
    println!(
        "latitude theta = 1:     {:.10}  (2 pi sin 1 = {:.10})",
        curve_length(&latitude, &sphere)?,
        2.0 * pi * 1f64.sin()
    );
    Ok(())
}
