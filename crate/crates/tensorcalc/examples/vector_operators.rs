//! Gradient, divergence, curl and Laplacian in curvilinear systems, with
//! physical-component output matching the familiar vector-calculus forms.

use tensorcalc::expr::{parse, DEFAULT_TOL};
use tensorcalc::field_ops::{
    curl, divergence, divergence_by_contraction, gradient_scalar, laplacian_orthogonal,
    laplacian_scalar, physical_components,
};
use tensorcalc::systems;
use tensorcalc::expr::equal_on_samples;
use tensorcalc::tensor::{TensorField, Variance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = systems::cylindrical()?;
    let f = parse("rho^2*sin(phi) + z")?;

    let (grad_cov, grad_con) = gradient_scalar(&f, &g);
    println!("f = {f}");
    println!("covariant gradient:    ({}, {}, {})", grad_cov.get(&[1]), grad_cov.get(&[2]), grad_cov.get(&[3]));
    println!("contravariant:         ({}, {}, {})", grad_con.get(&[1]), grad_con.get(&[2]), grad_con.get(&[3]));
    let phys = physical_components(&grad_cov, &g)?;
    println!("physical components:   ({}, {}, {})", phys.get(&[1]), phys.get(&[2]), phys.get(&[3]));
    println!();

    // divergence: Voss-Weyl and the contraction route agree
    let a = TensorField::vector(
        "A",
        3,
        Variance::Up,
        vec![parse("rho*z")?, parse("sin(phi)")?, parse("rho^2")?],
    )?;
    let vw = divergence(&a, &g)?;
    let ct = divergence_by_contraction(&a, &g)?;
    let v = equal_on_samples(&vw, &ct, g.domain(), DEFAULT_TOL)?;
    println!("div A (Voss-Weyl)      = {vw}");
    println!("routes agree: {} (max residual {:.3e})", v.equal, v.max_residual);
    println!();

    // curl of a gradient vanishes
    let c = curl(&grad_cov, &g)?;
    println!("curl(grad f)           = ({}, {}, {})", c.get(&[1]), c.get(&[2]), c.get(&[3]));
    println!();

    // Laplacian: general and orthogonal forms
    let lap = laplacian_scalar(&parse("rho^2 + z^2")?, &g);
    println!("laplacian(rho^2 + z^2) = {lap}");
    let f2 = parse("rho^2*cos(phi)")?;
    let general = laplacian_scalar(&f2, &g);
    let ortho = laplacian_orthogonal(&f2, &g)?;
    let v = equal_on_samples(&general, &ortho, g.domain(), DEFAULT_TOL)?;
    println!("orthogonal form agrees: {} (max residual {:.3e})", v.equal, v.max_residual);

    // the same field expressed in spherical coordinates has the same Laplacian
    let s = systems::spherical()?;
    let lap_s = laplacian_scalar(&parse("r^2")?, &s);
    println!("spherical laplacian(r^2) = {lap_s}");
    Ok(())
}
