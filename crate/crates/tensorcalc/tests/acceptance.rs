//! Acceptance suite: one test per exit criterion, each printing a pass line.
//! Run with `cargo test -p tensorcalc --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use tensorcalc::cli;
use tensorcalc::connection::{christoffel, christoffel_count, orthogonal_christoffel};
use tensorcalc::curvature::{
    einstein_divergence_check, flatness_test, ricci, ricci_count, riemann_counts, riemann_first,
    riemann_second, verify_bianchi, CurvatureBundle,
};
use tensorcalc::expr::{equal_on_samples, evaluate, parse, Expr, SamplePoint};
use tensorcalc::report::all_passed;
use tensorcalc::systems;
use tensorcalc::verify::{run_suite, VerifyConfig};

const TOL: f64 = 1e-9;

fn assert_component(g: &tensorcalc::DerivedMetric, got: &Expr, want: &str, what: &str) {
    let want = parse(want).unwrap();
    let v = equal_on_samples(got, &want, g.domain(), TOL).unwrap();
    assert!(
        v.equal,
        "{what}: expected {want}, got {got} (residual {})",
        v.max_residual
    );
}

#[test]
fn criterion_01_second_kind_christoffel_tables() {
    let cyl = systems::cylindrical().unwrap();
    let gamma = christoffel(&cyl);
    assert_component(&cyl, gamma.second(1, 2, 2), "-rho", "cylindrical Gamma^1_22");
    assert_component(&cyl, gamma.second(2, 1, 2), "1/rho", "cylindrical Gamma^2_12");
    assert_component(&cyl, gamma.second(2, 2, 1), "1/rho", "cylindrical Gamma^2_21");
    let mut others = 0;
    for k in 1..=3usize {
        for i in 1..=3usize {
            for j in 1..=3usize {
                if (k, i, j) == (1, 2, 2) || (k == 2 && i + j == 3) {
                    continue;
                }
                assert_component(
                    &cyl,
                    gamma.second(k, i, j),
                    "0",
                    &format!("cylindrical Gamma^{k}_{i}{j}"),
                );
                others += 1;
            }
        }
    }
    assert_eq!(others, 24);

    let sph = systems::spherical().unwrap();
    let gamma = christoffel(&sph);
    let families = [
        ((1usize, 2usize, 2usize), "-r"),
        ((1, 3, 3), "-r*sin(theta)^2"),
        ((2, 1, 2), "1/r"),
        ((2, 3, 3), "-sin(theta)*cos(theta)"),
        ((3, 1, 3), "1/r"),
        ((3, 2, 3), "cot(theta)"),
    ];
    for ((k, i, j), want) in families {
        assert_component(&sph, gamma.second(k, i, j), want, "spherical second kind");
        assert_component(&sph, gamma.second(k, j, i), want, "spherical symmetry");
    }
    for k in 1..=3usize {
        for i in 1..=3usize {
            for j in i..=3usize {
                if families.iter().any(|((a, b, c), _)| {
                    *a == k && ((*b, *c) == (i, j) || (*c, *b) == (i, j))
                }) {
                    continue;
                }
                assert_component(&sph, gamma.second(k, i, j), "0", "spherical zero entry");
            }
        }
    }
    println!("PASS criterion 1: second-kind Christoffel tables match the reference lists");
}

#[test]
fn criterion_02_first_kind_christoffel_tables() {
    let cyl = systems::cylindrical().unwrap();
    let gamma = christoffel(&cyl);
    assert_component(&cyl, gamma.first(2, 2, 1), "-rho", "cylindrical [22,1]");
    assert_component(&cyl, gamma.first(1, 2, 2), "rho", "cylindrical [12,2]");
    for i in 1..=3usize {
        for j in i..=3usize {
            for l in 1..=3usize {
                if (i, j, l) == (2, 2, 1) || (i, j, l) == (1, 2, 2) {
                    continue;
                }
                assert_component(&cyl, gamma.first(i, j, l), "0", "cylindrical zero entry");
            }
        }
    }

    let sph = systems::spherical().unwrap();
    let gamma = christoffel(&sph);
    let listed = [
        ((2usize, 2usize, 1usize), "-r"),
        ((3, 3, 1), "-r*sin(theta)^2"),
        ((1, 2, 2), "r"),
        ((3, 3, 2), "-r^2*sin(theta)*cos(theta)"),
        ((1, 3, 3), "r*sin(theta)^2"),
        ((2, 3, 3), "r^2*sin(theta)*cos(theta)"),
    ];
    for ((i, j, l), want) in listed {
        assert_component(&sph, gamma.first(i, j, l), want, "spherical first kind");
        assert_component(&sph, gamma.first(j, i, l), want, "spherical pair symmetry");
    }
    println!("PASS criterion 2: first-kind Christoffel tables match the reference lists");
}

#[test]
fn criterion_03_orthogonal_shortcut_cross_check() {
    for g in [systems::cylindrical().unwrap(), systems::spherical().unwrap()] {
        let gamma = christoffel(&g);
        let short = orthogonal_christoffel(&g).unwrap();
        for k in 1..=3usize {
            for i in 1..=3usize {
                for j in 1..=3usize {
                    let v = equal_on_samples(
                        &short[k - 1][i - 1][j - 1],
                        gamma.second(k, i, j),
                        g.domain(),
                        TOL,
                    )
                    .unwrap();
                    assert!(
                        v.equal,
                        "{} Gamma^{k}_{i}{j} residual {}",
                        g.system().name,
                        v.max_residual
                    );
                }
            }
        }
    }
    println!("PASS criterion 3: scale-factor shortcut agrees on all 27 components");
}

#[test]
fn criterion_04_flat_builtins() {
    for name in ["cartesian", "cylindrical", "spherical", "minkowski"] {
        let g = systems::builtin(name).unwrap();
        assert!(flatness_test(&g, TOL).unwrap(), "{name} should be flat");
    }
    println!("PASS criterion 4: Riemann tensor vanishes on all flat builtins");
}

// ---------------------------------------------------------------------------
// Criterion 5: the unit-sphere curvature values are first confirmed by an
// independent finite-difference oracle built on a hand-written numeric
// metric, then matched against the symbolic pipeline.

mod fd_oracle {
    /// Numeric metric of the unit 2-sphere, written directly.
    pub fn metric(p: [f64; 2]) -> [[f64; 2]; 2] {
        let s = p[0].sin();
        [[1.0, 0.0], [0.0, s * s]]
    }

    fn inverse(m: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        [
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ]
    }

    const H_METRIC: f64 = 1e-5;
    const H_GAMMA: f64 = 1e-4;

    fn metric_derivative(p: [f64; 2], k: usize) -> [[f64; 2]; 2] {
        let mut hi = p;
        let mut lo = p;
        hi[k] += H_METRIC;
        lo[k] -= H_METRIC;
        let a = metric(hi);
        let b = metric(lo);
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (a[i][j] - b[i][j]) / (2.0 * H_METRIC);
            }
        }
        out
    }

    /// Christoffel symbols from numerically differentiated metric components.
    pub fn christoffel(p: [f64; 2]) -> [[[f64; 2]; 2]; 2] {
        let inv = inverse(metric(p));
        let dg: Vec<[[f64; 2]; 2]> = (0..2).map(|k| metric_derivative(p, k)).collect();
        let mut out = [[[0.0; 2]; 2]; 2];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let mut sum = 0.0;
                    for m in 0..2 {
                        sum += inv[k][m] * (dg[j][m][i] + dg[i][m][j] - dg[m][i][j]);
                    }
                    out[k][i][j] = 0.5 * sum;
                }
            }
        }
        out
    }

    fn christoffel_derivative(p: [f64; 2], l: usize) -> [[[f64; 2]; 2]; 2] {
        let mut hi = p;
        let mut lo = p;
        hi[l] += H_GAMMA;
        lo[l] -= H_GAMMA;
        let a = christoffel(hi);
        let b = christoffel(lo);
        let mut out = [[[0.0; 2]; 2]; 2];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    out[k][i][j] = (a[k][i][j] - b[k][i][j]) / (2.0 * H_GAMMA);
                }
            }
        }
        out
    }

    /// Mixed Riemann tensor R^i_jkl from finite-difference Christoffels.
    pub fn riemann(p: [f64; 2]) -> [[[[f64; 2]; 2]; 2]; 2] {
        let gamma = christoffel(p);
        let dgamma: Vec<[[[f64; 2]; 2]; 2]> =
            (0..2).map(|l| christoffel_derivative(p, l)).collect();
        let mut out = [[[[0.0; 2]; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut v = dgamma[k][i][j][l] - dgamma[l][i][j][k];
                        for r in 0..2 {
                            v += gamma[r][j][l] * gamma[i][r][k] - gamma[r][j][k] * gamma[i][r][l];
                        }
                        out[i][j][k][l] = v;
                    }
                }
            }
        }
        out
    }

    /// Ricci tensor (derivative-slot contraction) and scalar.
    pub fn ricci(p: [f64; 2]) -> ([[f64; 2]; 2], f64) {
        let riem = riemann(p);
        let mut table = [[0.0; 2]; 2];
        for j in 0..2 {
            for l in 0..2 {
                for a in 0..2 {
                    table[j][l] += riem[a][j][a][l];
                }
            }
        }
        let inv = inverse(metric(p));
        let mut scalar = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                scalar += inv[i][j] * table[i][j];
            }
        }
        (table, scalar)
    }
}

#[test]
fn criterion_05_two_sphere_curvature_with_fd_oracle() {
    let g = systems::two_sphere().unwrap();
    let mixed = riemann_second(&g);
    let lower = riemann_first(&mixed, &g).unwrap();
    let (ricci_table, ricci_scalar) = ricci(&g).unwrap();

    // five fixed points inside the sample domain
    let points = [
        [0.7, 1.1],
        [1.2, 2.5],
        [1.9, 0.4],
        [2.4, 4.8],
        [0.5, 5.5],
    ];
    for p in points {
        let sp = SamplePoint::new(vec![("theta".into(), p[0]), ("phi".into(), p[1])]);
        let fd_riem = fd_oracle::riemann(p);
        for i in 1..=2usize {
            for j in 1..=2usize {
                for k in 1..=2usize {
                    for l in 1..=2usize {
                        let sym = evaluate(mixed.get(&[i, j, k, l]), &sp).unwrap();
                        let fd = fd_riem[i - 1][j - 1][k - 1][l - 1];
                        assert!(
                            (sym - fd).abs() < 1e-5,
                            "R^{i}_{j}{k}{l} at {p:?}: symbolic {sym}, fd {fd}"
                        );
                    }
                }
            }
        }
        let (fd_ricci, fd_scalar) = fd_oracle::ricci(p);
        for i in 1..=2usize {
            for j in 1..=2usize {
                let sym = evaluate(ricci_table.get(&[i, j]), &sp).unwrap();
                assert!(
                    (sym - fd_ricci[i - 1][j - 1]).abs() < 1e-5,
                    "Ricci_{i}{j} at {p:?}"
                );
            }
        }
        let sym_scalar = evaluate(&ricci_scalar, &sp).unwrap();
        assert!((sym_scalar - fd_scalar).abs() < 1e-5, "scalar at {p:?}");
        // the finite-difference values themselves confirm the signs
        assert!((fd_ricci[0][0] - 1.0).abs() < 1e-4, "fd R_theta_theta at {p:?}");
        assert!((fd_scalar - 2.0).abs() < 1e-4, "fd scalar at {p:?}");
    }

    // then matched symbolically
    assert_component(&g, lower.get(&[1, 2, 1, 2]), "sin(theta)^2", "R_1212");
    assert_component(&g, ricci_table.get(&[1, 1]), "1", "R_theta_theta");
    assert_component(&g, ricci_table.get(&[2, 2]), "sin(theta)^2", "R_phi_phi");
    assert_component(&g, &ricci_scalar, "2", "Ricci scalar");
    println!("PASS criterion 5: unit-sphere curvature confirmed by finite differences and matched symbolically");
}

#[test]
fn criterion_06_component_counts() {
    assert_eq!(riemann_counts(2).3, 1);
    assert_eq!(riemann_counts(3).3, 6);
    assert_eq!(riemann_counts(4).3, 20);
    assert_eq!(riemann_counts(5).3, 50);
    assert_eq!(ricci_count(4), 10);
    assert_eq!(christoffel_count(3), 18);
    println!("PASS criterion 6: component-count formulas give the exact integers");
}

#[test]
fn criterion_07_ricci_theorem_suite() {
    let checks = run_suite("ricci-theorem", VerifyConfig::default()).unwrap();
    assert!(!checks.is_empty());
    for c in &checks {
        assert!(c.passed, "{} (residual {})", c.name, c.max_residual);
    }
    println!("PASS criterion 7: metric and Kronecker delta are covariantly constant on all builtins");
}

#[test]
fn criterion_08_epsilon_delta_suite() {
    use tensorcalc::special::{epsilon, generalized_delta};
    use tensorcalc::tensor::index_tuples;

    // all 729 six-index combinations of the rank-3 pair identity
    let mut count = 0;
    for up in index_tuples(3, 3) {
        for lo in index_tuples(3, 3) {
            assert_eq!(
                epsilon(&up, 3).unwrap() * epsilon(&lo, 3).unwrap(),
                generalized_delta(&up, &lo).unwrap()
            );
            count += 1;
        }
    }
    assert_eq!(count, 729);

    // contracted identity over all free indices
    for i in 1..=3usize {
        for j in 1..=3usize {
            for l in 1..=3usize {
                for m in 1..=3usize {
                    let mut lhs = 0;
                    for k in 1..=3usize {
                        lhs += epsilon(&[i, j, k], 3).unwrap() * epsilon(&[l, m, k], 3).unwrap();
                    }
                    let d = |a: usize, b: usize| i64::from(a == b);
                    assert_eq!(lhs, d(i, l) * d(j, m) - d(i, m) * d(j, l));
                }
            }
        }
    }

    // total contractions
    for (n, want) in [(2usize, 2i64), (3, 6), (4, 24)] {
        let total: i64 = index_tuples(n, n)
            .iter()
            .map(|t| {
                let e = epsilon(t, n).unwrap();
                e * e
            })
            .sum();
        assert_eq!(total, want, "n = {n}");
    }

    // delta = eps x eps over all tuples
    for n in [2usize, 3, 4] {
        for up in index_tuples(n, n) {
            for lo in index_tuples(n, n) {
                assert_eq!(
                    generalized_delta(&up, &lo).unwrap(),
                    epsilon(&up, n).unwrap() * epsilon(&lo, n).unwrap()
                );
            }
        }
    }
    println!("PASS criterion 8: epsilon/delta identities hold exhaustively (729 + 81 cases, n=2..4 contractions)");
}

#[test]
fn criterion_09_bianchi_identities() {
    for name in ["two_sphere", "cylindrical"] {
        let g = systems::builtin(name).unwrap();
        let bundle = CurvatureBundle::compute(&g).unwrap();
        let checks = verify_bianchi(&bundle, &g, TOL).unwrap();
        // four fixed-index first-identity variants + mixed form + two second-identity kinds
        assert_eq!(checks.len(), 7);
        for c in &checks {
            assert!(c.passed, "{name}: {} (residual {})", c.name, c.max_residual);
        }
    }
    println!("PASS criterion 9: first (all fixed-index variants) and second Bianchi identities hold");
}

#[test]
fn criterion_10_operator_equivalences() {
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use tensorcalc::field_ops::{
        curl, curl_full, divergence, divergence_by_contraction, laplacian_orthogonal,
        laplacian_scalar,
    };
    use tensorcalc::tensor::{fields_equal, Variance};
    use tensorcalc::verify::{random_scalar, random_vector};

    for name in systems::BUILTIN_NAMES {
        let g = systems::builtin(name).unwrap();
        let coords = g.system().coords().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let a = random_vector(&coords, Variance::Up, &mut rng);
            let vw = divergence(&a, &g).unwrap();
            let ct = divergence_by_contraction(&a, &g).unwrap();
            let v = equal_on_samples(&vw, &ct, g.domain(), TOL).unwrap();
            assert!(v.equal, "{name} divergence routes, residual {}", v.max_residual);

            if g.dim() == 3 {
                let c = random_vector(&coords, Variance::Down, &mut rng);
                let reduced = curl(&c, &g).unwrap();
                let full = curl_full(&c, &g).unwrap();
                let v = fields_equal(&reduced, &full, g.domain(), TOL).unwrap();
                assert!(v.equal, "{name} curl forms, residual {}", v.max_residual);
            }

            if g.scale_factors().is_ok() {
                let f = random_scalar(&coords, &mut rng);
                let general = laplacian_scalar(&f, &g);
                let ortho = laplacian_orthogonal(&f, &g).unwrap();
                let v = equal_on_samples(&general, &ortho, g.domain(), TOL).unwrap();
                assert!(v.equal, "{name} Laplacian forms, residual {}", v.max_residual);
            }
        }
    }
    println!("PASS criterion 10: divergence, curl and Laplacian routes agree on 5 random fields per builtin");
}

#[test]
fn criterion_11_physical_component_displays() {
    // the display comparisons live in the operators suite; the relevant
    // checks are the term-for-term reproductions over random fields
    let checks = run_suite("operators", VerifyConfig::default()).unwrap();
    let display_checks: Vec<_> = checks
        .iter()
        .filter(|c| c.name.contains("display matches"))
        .collect();
    assert_eq!(display_checks.len(), 14, "seven displays for each of two systems");
    for c in display_checks {
        assert!(c.passed, "{} (residual {})", c.name, c.max_residual);
    }
    println!("PASS criterion 11: cylindrical and spherical physical-component displays reproduced term-for-term");
}

#[test]
fn criterion_12_laplacian_invariance() {
    use tensorcalc::field_ops::laplacian_scalar;
    for (name, f) in [
        ("cartesian", "x^2 + y^2 + z^2"),
        ("cylindrical", "rho^2 + z^2"),
        ("spherical", "r^2"),
    ] {
        let g = systems::builtin(name).unwrap();
        let lap = laplacian_scalar(&parse(f).unwrap(), &g);
        let v = equal_on_samples(&lap, &Expr::integer(6), g.domain(), TOL).unwrap();
        assert!(v.equal, "{name}: residual {}", v.max_residual);
    }
    println!("PASS criterion 12: the squared radius has Laplacian 6 in all three representations");
}

#[test]
fn criterion_13_curve_lengths() {
    use tensorcalc::field_ops::curve_length;
    use tensorcalc::tensor::Curve;
    let pi = std::f64::consts::PI;

    let cyl = systems::cylindrical().unwrap();
    let circle = Curve::unchecked(
        "t",
        vec![parse("1.5").unwrap(), parse("t").unwrap(), parse("0").unwrap()],
        (0.0, 2.0 * pi),
    );
    let len = curve_length(&circle, &cyl).unwrap();
    assert!(
        (len - 3.0 * pi).abs() < 1e-6,
        "circle length {len} vs {}",
        3.0 * pi
    );

    let sph = systems::spherical().unwrap();
    let meridian = Curve::unchecked(
        "t",
        vec![parse("1").unwrap(), parse("t").unwrap(), parse("1/2").unwrap()],
        (0.0, pi / 2.0),
    );
    let len = curve_length(&meridian, &sph).unwrap();
    assert!((len - pi / 2.0).abs() < 1e-6, "meridian length {len}");
    println!("PASS criterion 13: circle and quarter-meridian lengths within 1e-6");
}

#[test]
fn criterion_14_continuum_suite() {
    use tensorcalc::continuum::*;
    use tensorcalc::expr::normalize;

    let shear = FieldVector3::new(vec![
        parse("xp + 7/10*yp").unwrap(),
        parse("yp").unwrap(),
        parse("zp").unwrap(),
    ])
    .unwrap();
    let (e, delta) = displacement_gradients(&shear).unwrap();
    let b = finger(&e);
    let b_inv = cauchy(&delta);
    let box_domain = cartesian_box(PAST_COORDS);
    let mut worst = 0.0f64;
    for point in box_domain.points() {
        for m in [e.matmul(&delta), b.matmul(&b_inv)] {
            for i in 1..=3 {
                for j in 1..=3 {
                    let got = evaluate(m.get(i, j), &point).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((got - want).abs());
                }
            }
        }
    }
    assert!(worst < 1e-12, "identity residual {worst}");

    let v = FieldVector3::new(vec![
        parse("x^2*y").unwrap(),
        parse("sin(z) + x").unwrap(),
        parse("y*z").unwrap(),
    ])
    .unwrap();
    let (s, sbar) = velocity_gradient_decompose(&v);
    let grad = velocity_gradient(&v);
    for i in 1..=3 {
        for j in 1..=3 {
            let sum = normalize(&Expr::Sum(vec![s.get(i, j).clone(), sbar.get(i, j).clone()]));
            assert_eq!(sum, *grad.get(i, j), "entry ({i},{j}) not exact");
        }
    }

    assert_eq!(symmetric_count(3), 6);
    assert_eq!(antisymmetric_count(3), 3);
    assert_eq!(symmetric_count(3) + antisymmetric_count(3), 9);
    println!("PASS criterion 14: shear-map inverses to 1e-12, exact decomposition, counts 6+3=9");
}

#[test]
fn criterion_15_einstein_divergence_on_two_sphere() {
    let g = systems::two_sphere().unwrap();
    let checks = einstein_divergence_check(&g, TOL).unwrap();
    assert_eq!(checks.len(), 2);
    for c in &checks {
        assert!(c.passed, "{} (residual {})", c.name, c.max_residual);
    }
    println!("PASS criterion 15: both Einstein divergence forms vanish on the 2-sphere");
}

#[test]
fn criterion_16_cli_determinism() {
    let args = ["tensorcalc", "verify", "--suite", "all", "--seed", "7"];
    let mut first = Vec::new();
    let code1 = cli::run(args, &mut first);
    let mut second = Vec::new();
    let code2 = cli::run(args, &mut second);
    assert_eq!(code1, 0, "verify --suite all must pass:\n{}", String::from_utf8_lossy(&first));
    assert_eq!(code2, 0);
    assert_eq!(first, second, "output must be byte-identical");
    assert!(!first.is_empty());
    println!("PASS criterion 16: two seeded verify runs are byte-identical with exit 0");
}

#[test]
fn all_verification_suites_pass() {
    let checks = run_suite("all", VerifyConfig::default()).unwrap();
    assert!(all_passed(&checks), "some checks failed");
    println!("PASS: full verification catalogue ({} checks)", checks.len());
}
