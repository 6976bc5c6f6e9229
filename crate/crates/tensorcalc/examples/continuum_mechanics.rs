//! Continuum-mechanics tensors over Cartesian coordinates: strain, traction,
//! deformation gradients and the velocity-gradient decomposition.

use tensorcalc::continuum::*;
use tensorcalc::expr::parse;

fn print_matrix(label: &str, m: &Matrix3) {
    println!("{label}:");
    for i in 1..=3 {
        let row: Vec<String> = (1..=3).map(|j| m.get(i, j).to_string()).collect();
        println!("  [ {} ]", row.join(", "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // infinitesimal strain of a shear displacement
    let d = FieldVector3::new(vec![parse("y")?, parse("0")?, parse("0")?])?;
    print_matrix("strain of d = (y, 0, 0)", &infinitesimal_strain(&d));

    // traction on a plane with a shear-only stress
    let sigma = Matrix3::from_rows([
        [parse("0")?, parse("tau")?, parse("0")?],
        [parse("tau")?, parse("0")?, parse("0")?],
        [parse("0")?, parse("0")?, parse("0")?],
    ]);
    let n = FieldVector3::new(vec![parse("0")?, parse("1")?, parse("0")?])?;
    let t = traction(&sigma, &n);
    println!("traction: ({}, {}, {})", t.get(1), t.get(2), t.get(3));
    println!();

    // simple shear motion with gamma = 7/10
    let shear = FieldVector3::new(vec![
        parse("xp + 7/10*yp")?,
        parse("yp")?,
        parse("zp")?,
    ])?;
    let (e, delta) = displacement_gradients(&shear)?;
    print_matrix("first displacement gradient", &e);
    print_matrix("second displacement gradient (inverse)", &delta);
    print_matrix("product (should be the identity)", &e.matmul(&delta));
    print_matrix("Finger strain tensor", &finger(&e));
    print_matrix("Cauchy strain tensor", &cauchy(&delta));
    println!();

    // velocity gradient splits into rate-of-strain and vorticity
    let v = FieldVector3::new(vec![parse("-y")?, parse("x")?, parse("0")?])?;
    let (s, sbar) = velocity_gradient_decompose(&v);
    print_matrix("rate of strain of v = (-y, x, 0)", &s);
    print_matrix("vorticity of v = (-y, x, 0)", &sbar);
    println!(
        "independent components: {} symmetric + {} antisymmetric = {}",
        symmetric_count(3),
        antisymmetric_count(3),
        symmetric_count(3) + antisymmetric_count(3)
    );
    Ok(())
}
