//! Named verification suites: each certifies a family of identities and
//! returns one [`Check`] per named relation. The CLI `verify` subcommand and
//! the acceptance tests both drive these.

use crate::connection::{
    christoffel, christoffel_count, contracted_christoffel, orthogonal_christoffel,
    verify_metric_derivative_identities,
};
use crate::continuum::{
    antisymmetric_count, cartesian_box, displacement_gradients, finger, cauchy,
    infinitesimal_strain, positive_definite_at, symmetric_count, traction,
    velocity_gradient, velocity_gradient_decompose, FieldVector3, Matrix3, PAST_COORDS,
};
use crate::curvature::{
    einstein, einstein_divergence_check, flatness_test, ricci, ricci_count, ricci_log_form,
    riemann_counts, riemann_first, riemann_first_direct, riemann_second, verify_bianchi,
    verify_riemann_symmetries, CurvatureBundle,
};
use crate::expr::{
    differentiate, equal_on_samples, evaluate, normalize, parse, zero_on_samples, Expr,
};
use crate::field_ops::{
    area_element, cross, curl, curl_full, curve_length, divergence, divergence_by_contraction,
    divergence_tensor, dot, field_from_physical, gradient_scalar, gradient_vector,
    laplacian_orthogonal, laplacian_scalar, laplacian_vector, line_element, magnitude_routes,
    physical_components, tensor_components, volume_element, PhysicalForm,
};
use crate::geometry::DerivedMetric;
use crate::report::Check;
use crate::special::{metric_epsilon_delta, verify_epsilon_identities};
use crate::systems;
use crate::tensor::{
    covariant_derivative, field_is_zero, fields_equal, kronecker_field, lower_index,
    metric_lower_field, metric_upper_field, Curve, TensorField, Variance,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const SUITE_NAMES: [&str; 7] = [
    "epsilon",
    "christoffel",
    "ricci-theorem",
    "curvature",
    "bianchi",
    "operators",
    "continuum",
];

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            tol: crate::expr::DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum VerifyError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("{0}")]
    Failed(String),
}

fn wrap<E: std::fmt::Display>(e: E) -> VerifyError {
    VerifyError::Failed(e.to_string())
}

pub fn run_suite(name: &str, cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    match name {
        "epsilon" => suite_epsilon(cfg),
        "christoffel" => suite_christoffel(cfg),
        "ricci-theorem" => suite_ricci_theorem(cfg),
        "curvature" => suite_curvature(cfg),
        "bianchi" => suite_bianchi(cfg),
        "operators" => suite_operators(cfg),
        "continuum" => suite_continuum(cfg),
        "all" => {
            let mut out = Vec::new();
            for s in SUITE_NAMES {
                out.extend(run_suite(s, cfg)?);
            }
            Ok(out)
        }
        other => Err(VerifyError::UnknownSuite(other.to_string())),
    }
}

fn seeded(name: &str, cfg: VerifyConfig) -> DerivedMetric {
    systems::builtin(name)
        .expect("builtin exists")
        .reseeded(cfg.seed)
}

fn p(text: &str) -> Expr {
    parse(text).expect("reference expression")
}

/// Random polynomial/trig scalar over the given coordinates.
pub fn random_scalar(coords: &[String], rng: &mut ChaCha8Rng) -> Expr {
    let nterms = rng.gen_range(2..=3);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let coeff = Expr::rational(rng.gen_range(-4i64..=4).max(1), rng.gen_range(1i64..=3));
        let c = coords[rng.gen_range(0..coords.len())].clone();
        let shape = rng.gen_range(0..4);
        let factor = match shape {
            0 => Expr::symbol(c),
            1 => Expr::powi(Expr::symbol(c), 2),
            2 => Expr::func(crate::expr::UnaryFn::Sin, Expr::symbol(c)),
            _ => Expr::func(crate::expr::UnaryFn::Cos, Expr::symbol(c)),
        };
        let other = coords[rng.gen_range(0..coords.len())].clone();
        let term = if rng.gen_bool(0.4) {
            Expr::Product(vec![coeff, factor, Expr::symbol(other)])
        } else {
            Expr::Product(vec![coeff, factor])
        };
        terms.push(term);
    }
    normalize(&Expr::Sum(terms))
}

pub fn random_vector(
    coords: &[String],
    variance: Variance,
    rng: &mut ChaCha8Rng,
) -> TensorField {
    let comps = (0..coords.len()).map(|_| random_scalar(coords, rng)).collect();
    TensorField::vector("A", coords.len(), variance, comps).expect("component count matches")
}

fn rng_for(cfg: VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
}

// ---------------------------------------------------------------- epsilon

fn suite_epsilon(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    for n in [2usize, 3, 4] {
        for c in verify_epsilon_identities(n).map_err(wrap)? {
            checks.push(Check::new(format!("epsilon: n={n} {}", c.name), c.passed, c.max_residual));
        }
    }
    for name in ["cartesian", "cylindrical", "spherical"] {
        let g = seeded(name, cfg);
        let c = metric_epsilon_delta(&g, cfg.tol).map_err(wrap)?;
        checks.push(Check::new(format!("epsilon: {name} {}", c.name), c.passed, c.max_residual));
    }
    // antisymmetry under swaps, all tuples, n <= 4
    let mut ok = true;
    for n in 2..=4usize {
        for t in crate::tensor::index_tuples(n, n) {
            let base = crate::special::epsilon(&t, n).map_err(wrap)?;
            for a in 0..n {
                for b in (a + 1)..n {
                    let mut s = t.clone();
                    s.swap(a, b);
                    ok &= crate::special::epsilon(&s, n).map_err(wrap)? == -base;
                }
            }
        }
    }
    checks.push(Check::exact("epsilon: antisymmetry under index swaps (n=2..4)", ok));
    Ok(checks)
}

// ------------------------------------------------------------- christoffel

struct GammaExpectation {
    second: Vec<((usize, usize, usize), &'static str)>,
    first: Vec<((usize, usize, usize), &'static str)>,
}

fn cylindrical_expectation() -> GammaExpectation {
    GammaExpectation {
        second: vec![
            ((1, 2, 2), "-rho"),
            ((2, 1, 2), "1/rho"),
            ((2, 2, 1), "1/rho"),
        ],
        // keyed (l, i, j) for the symbol [ij,l]
        first: vec![((1, 2, 2), "-rho"), ((2, 1, 2), "rho"), ((2, 2, 1), "rho")],
    }
}

fn spherical_expectation() -> GammaExpectation {
    GammaExpectation {
        second: vec![
            ((1, 2, 2), "-r"),
            ((1, 3, 3), "-r*sin(theta)^2"),
            ((2, 1, 2), "1/r"),
            ((2, 2, 1), "1/r"),
            ((2, 3, 3), "-sin(theta)*cos(theta)"),
            ((3, 1, 3), "1/r"),
            ((3, 3, 1), "1/r"),
            ((3, 2, 3), "cot(theta)"),
            ((3, 3, 2), "cot(theta)"),
        ],
        // keyed (l, i, j) for the symbol [ij,l]
        first: vec![
            ((1, 2, 2), "-r"),
            ((1, 3, 3), "-r*sin(theta)^2"),
            ((2, 1, 2), "r"),
            ((2, 2, 1), "r"),
            ((2, 3, 3), "-r^2*sin(theta)*cos(theta)"),
            ((3, 1, 3), "r*sin(theta)^2"),
            ((3, 3, 1), "r*sin(theta)^2"),
            ((3, 2, 3), "r^2*sin(theta)*cos(theta)"),
            ((3, 3, 2), "r^2*sin(theta)*cos(theta)"),
        ],
    }
}

fn check_gamma_table(
    g: &DerivedMetric,
    expectation: &GammaExpectation,
    cfg: VerifyConfig,
) -> Result<(Check, Check), VerifyError> {
    let gamma = christoffel(g);
    let n = g.dim();
    let name = &g.system().name;

    let run = |kind: &str,
                   listed: &[((usize, usize, usize), &'static str)],
                   table: &dyn Fn(usize, usize, usize) -> Expr|
     -> Result<Check, VerifyError> {
        let mut ok = true;
        let mut worst = 0.0f64;
        for k in 1..=n {
            for i in 1..=n {
                for j in 1..=n {
                    let want = listed
                        .iter()
                        .find(|((a, b, c), _)| (*a, *b, *c) == (k, i, j))
                        .map(|(_, s)| p(s))
                        .unwrap_or_else(Expr::zero);
                    let v = equal_on_samples(&table(k, i, j), &want, g.domain(), cfg.tol)
                        .map_err(wrap)?;
                    ok &= v.equal;
                    worst = worst.max(v.max_residual);
                }
            }
        }
        Ok(Check::new(
            format!("christoffel: {name} {kind} table matches reference"),
            ok,
            worst,
        ))
    };

    let second = run("second-kind", &expectation.second, &|k, i, j| {
        gamma.second(k, i, j).clone()
    })?;
    let first = run("first-kind", &expectation.first, &|l, i, j| {
        gamma.first(i, j, l).clone()
    })?;
    Ok((second, first))
}

fn suite_christoffel(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();

    let cyl = seeded("cylindrical", cfg);
    let (s, f) = check_gamma_table(&cyl, &cylindrical_expectation(), cfg)?;
    checks.push(s);
    checks.push(f);
    let sph = seeded("spherical", cfg);
    let (s, f) = check_gamma_table(&sph, &spherical_expectation(), cfg)?;
    checks.push(s);
    checks.push(f);

    for name in ["cartesian", "minkowski"] {
        let g = seeded(name, cfg);
        checks.push(Check::exact(
            format!("christoffel: {name} symbols vanish structurally"),
            christoffel(&g).is_structurally_zero(),
        ));
    }

    for g in [&cyl, &sph] {
        let gamma = christoffel(g);
        let short = orthogonal_christoffel(g).map_err(wrap)?;
        let mut ok = true;
        let mut worst = 0.0f64;
        for k in 1..=3usize {
            for i in 1..=3usize {
                for j in 1..=3usize {
                    let v = equal_on_samples(
                        &short[k - 1][i - 1][j - 1],
                        gamma.second(k, i, j),
                        g.domain(),
                        cfg.tol,
                    )
                    .map_err(wrap)?;
                    ok &= v.equal;
                    worst = worst.max(v.max_residual);
                }
            }
        }
        checks.push(Check::new(
            format!(
                "christoffel: {} scale-factor shortcut agrees on all 27 components",
                g.system().name
            ),
            ok,
            worst,
        ));
    }

    for g in [&cyl, &sph] {
        let gamma = christoffel(g);
        let contracted = contracted_christoffel(g);
        let mut ok = true;
        let mut worst = 0.0f64;
        for i in 1..=3usize {
            let direct = normalize(&Expr::Sum(
                (1..=3).map(|j| gamma.second(j, i, j).clone()).collect(),
            ));
            let v = equal_on_samples(&direct, &contracted[i - 1], g.domain(), cfg.tol)
                .map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(
            format!(
                "christoffel: {} contracted symbol equals log-derivative of sqrt g",
                g.system().name
            ),
            ok,
            worst,
        ));
    }

    checks.push(Check::exact(
        "christoffel: independent-count formula (n=1,3,4)",
        christoffel_count(1) == 1 && christoffel_count(3) == 18 && christoffel_count(4) == 40,
    ));

    for g in [&cyl, &sph] {
        for c in verify_metric_derivative_identities(g, cfg.tol).map_err(wrap)? {
            checks.push(Check::new(
                format!("christoffel: {} {}", g.system().name, c.name),
                c.passed,
                c.max_residual,
            ));
        }
    }

    Ok(checks)
}

// ------------------------------------------------------------ ricci theorem

fn suite_ricci_theorem(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    for name in systems::BUILTIN_NAMES {
        let g = seeded(name, cfg);
        let lower = covariant_derivative(&metric_lower_field(&g), &g).map_err(wrap)?;
        let v = field_is_zero(&lower, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("ricci-theorem: {name} covariant metric derivative vanishes"),
            v.equal,
            v.max_residual,
        ));
        let upper = covariant_derivative(&metric_upper_field(&g), &g).map_err(wrap)?;
        let v = field_is_zero(&upper, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("ricci-theorem: {name} contravariant metric derivative vanishes"),
            v.equal,
            v.max_residual,
        ));
        let delta = covariant_derivative(&kronecker_field(g.dim()), &g).map_err(wrap)?;
        let v = field_is_zero(&delta, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("ricci-theorem: {name} Kronecker delta derivative vanishes"),
            v.equal,
            v.max_residual,
        ));
    }
    Ok(checks)
}

// --------------------------------------------------------------- curvature

fn suite_curvature(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();

    for name in ["cartesian", "cylindrical", "spherical", "minkowski"] {
        let g = seeded(name, cfg);
        let mixed = riemann_second(&g);
        let v = field_is_zero(&mixed, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("curvature: {name} Riemann tensor vanishes"),
            v.equal,
            v.max_residual,
        ));
    }

    let sphere = seeded("two_sphere", cfg);
    let mixed = riemann_second(&sphere);
    let lower = riemann_first(&mixed, &sphere).map_err(wrap)?;
    let sin2 = p("sin(theta)^2");
    let v = equal_on_samples(mixed.get(&[1, 2, 1, 2]), &sin2, sphere.domain(), cfg.tol)
        .map_err(wrap)?;
    checks.push(Check::new("curvature: two_sphere mixed R^1_212 = sin(theta)^2", v.equal, v.max_residual));
    let v = equal_on_samples(lower.get(&[1, 2, 1, 2]), &sin2, sphere.domain(), cfg.tol)
        .map_err(wrap)?;
    checks.push(Check::new("curvature: two_sphere covariant R_1212 = sin(theta)^2", v.equal, v.max_residual));
    checks.push(Check::exact(
        "curvature: two_sphere is not flat",
        !flatness_test(&sphere, cfg.tol).map_err(wrap)?,
    ));

    let (table, scalar) = ricci(&sphere).map_err(wrap)?;
    let v = equal_on_samples(table.get(&[1, 1]), &Expr::one(), sphere.domain(), cfg.tol)
        .map_err(wrap)?;
    checks.push(Check::new("curvature: two_sphere Ricci theta-theta = 1", v.equal, v.max_residual));
    let v = equal_on_samples(table.get(&[2, 2]), &sin2, sphere.domain(), cfg.tol).map_err(wrap)?;
    checks.push(Check::new("curvature: two_sphere Ricci phi-phi = sin(theta)^2", v.equal, v.max_residual));
    let v = equal_on_samples(&scalar, &Expr::integer(2), sphere.domain(), cfg.tol).map_err(wrap)?;
    checks.push(Check::new("curvature: two_sphere Ricci scalar = 2", v.equal, v.max_residual));

    for name in ["two_sphere", "spherical"] {
        let g = seeded(name, cfg);
        let lowered = riemann_first(&riemann_second(&g), &g).map_err(wrap)?;
        let direct = riemann_first_direct(&g);
        let v = fields_equal(&lowered, &direct, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("curvature: {name} lowered Riemann matches second-derivative formula"),
            v.equal,
            v.max_residual,
        ));
    }

    for name in ["two_sphere", "cylindrical"] {
        let g = seeded(name, cfg);
        let (table, _) = ricci(&g).map_err(wrap)?;
        let log_form = ricci_log_form(&g);
        let v = fields_equal(&table, &log_form, g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("curvature: {name} Ricci log-determinant route agrees"),
            v.equal,
            v.max_residual,
        ));
    }

    let bundle = CurvatureBundle::compute(&sphere).map_err(wrap)?;
    for c in verify_riemann_symmetries(&bundle, &sphere, cfg.tol).map_err(wrap)? {
        checks.push(Check::new(format!("curvature: two_sphere {}", c.name), c.passed, c.max_residual));
    }

    checks.push(Check::exact(
        "curvature: Riemann independent-component totals (n=2..5)",
        riemann_counts(2).3 == 1
            && riemann_counts(3).3 == 6
            && riemann_counts(4).3 == 20
            && riemann_counts(5).3 == 50,
    ));
    checks.push(Check::exact(
        "curvature: Ricci independent count n=4",
        ricci_count(4) == 10,
    ));

    let (lower_e, upper_e, mixed_e) = einstein(&sphere).map_err(wrap)?;
    for t in [&lower_e, &upper_e, &mixed_e] {
        let v = field_is_zero(t, sphere.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("curvature: two_sphere {} vanishes (2D identity)", t.name),
            v.equal,
            v.max_residual,
        ));
    }
    let mut ok = true;
    let mut worst = 0.0f64;
    for i in 1..=2usize {
        for j in 1..=2usize {
            let v = equal_on_samples(lower_e.get(&[i, j]), lower_e.get(&[j, i]), sphere.domain(), cfg.tol)
                .map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
    }
    checks.push(Check::new("curvature: Einstein tensor symmetry", ok, worst));

    let flat = seeded("cylindrical", cfg);
    let (fl, _, _) = einstein(&flat).map_err(wrap)?;
    let v = field_is_zero(&fl, flat.domain(), cfg.tol).map_err(wrap)?;
    checks.push(Check::new("curvature: cylindrical Einstein tensor vanishes", v.equal, v.max_residual));

    for name in ["two_sphere", "spherical"] {
        let g = seeded(name, cfg);
        for c in einstein_divergence_check(&g, cfg.tol).map_err(wrap)? {
            checks.push(Check::new(format!("curvature: {name} {}", c.name), c.passed, c.max_residual));
        }
    }

    Ok(checks)
}

// ------------------------------------------------------------------ bianchi

fn suite_bianchi(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    for name in ["two_sphere", "cylindrical"] {
        let g = seeded(name, cfg);
        let bundle = CurvatureBundle::compute(&g).map_err(wrap)?;
        for c in verify_bianchi(&bundle, &g, cfg.tol).map_err(wrap)? {
            checks.push(Check::new(format!("bianchi: {name} {}", c.name), c.passed, c.max_residual));
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------- operators

const RANDOM_FIELDS: usize = 5;

fn suite_operators(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();

    // Voss-Weyl divergence equals contracted covariant derivative
    for name in systems::BUILTIN_NAMES {
        let g = seeded(name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 11);
        let mut ok = true;
        let mut worst = 0.0f64;
        for _ in 0..RANDOM_FIELDS {
            let a = random_vector(&coords, Variance::Up, &mut rng);
            let vw = divergence(&a, &g).map_err(wrap)?;
            let ct = divergence_by_contraction(&a, &g).map_err(wrap)?;
            let v = equal_on_samples(&vw, &ct, g.domain(), cfg.tol).map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(
            format!("operators: {name} Voss-Weyl divergence equals contraction route"),
            ok,
            worst,
        ));
    }

    // curl: full form equals reduced form; divergence of curl vanishes
    for name in ["cartesian", "cylindrical", "spherical"] {
        let g = seeded(name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 13);
        let mut ok_forms = true;
        let mut ok_divcurl = true;
        let mut worst = 0.0f64;
        for _ in 0..RANDOM_FIELDS {
            let a = random_vector(&coords, Variance::Down, &mut rng);
            let reduced = curl(&a, &g).map_err(wrap)?;
            let full = curl_full(&a, &g).map_err(wrap)?;
            let v = fields_equal(&reduced, &full, g.domain(), cfg.tol).map_err(wrap)?;
            ok_forms &= v.equal;
            worst = worst.max(v.max_residual);
            let div = divergence(&reduced, &g).map_err(wrap)?;
            let v = zero_on_samples(&div, g.domain(), cfg.tol).map_err(wrap)?;
            ok_divcurl &= v.equal;
        }
        checks.push(Check::new(
            format!("operators: {name} Christoffel terms cancel in the curl"),
            ok_forms,
            worst,
        ));
        checks.push(Check::new(
            format!("operators: {name} divergence of curl vanishes"),
            ok_divcurl,
            0.0,
        ));
    }

    // general Laplacian equals the orthogonal-coordinates formula
    for name in ["cartesian", "cylindrical", "spherical", "two_sphere"] {
        let g = seeded(name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 17);
        let mut ok = true;
        let mut worst = 0.0f64;
        for _ in 0..RANDOM_FIELDS {
            let f = random_scalar(&coords, &mut rng);
            let general = laplacian_scalar(&f, &g);
            let ortho = laplacian_orthogonal(&f, &g).map_err(wrap)?;
            let v = equal_on_samples(&general, &ortho, g.domain(), cfg.tol).map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(
            format!("operators: {name} Laplacian agrees with scale-factor form"),
            ok,
            worst,
        ));
    }

    // the same scalar field gives Laplacian 6 in three systems
    for (name, f) in [
        ("cartesian", "x^2 + y^2 + z^2"),
        ("cylindrical", "rho^2 + z^2"),
        ("spherical", "r^2"),
    ] {
        let g = seeded(name, cfg);
        let lap = laplacian_scalar(&p(f), &g);
        let v = equal_on_samples(&lap, &Expr::integer(6), g.domain(), cfg.tol).map_err(wrap)?;
        checks.push(Check::new(
            format!("operators: {name} Laplacian of the squared radius is 6"),
            v.equal,
            v.max_residual,
        ));
    }

    checks.extend(physical_display_checks(cfg)?);

    // physical/tensor round trip on random rank-1 and rank-2 tensors
    for name in ["cylindrical", "spherical"] {
        let g = seeded(name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 19);
        let mut ok = true;
        let mut worst = 0.0f64;
        for _ in 0..3 {
            let a = random_vector(&coords, Variance::Up, &mut rng);
            let phys = physical_components(&a, &g).map_err(wrap)?;
            let back = tensor_components(&phys, &g, "A").map_err(wrap)?;
            let v = fields_equal(&back, &a, g.domain(), cfg.tol).map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);

            let t = a.outer(&random_vector(&coords, Variance::Down, &mut rng), "T");
            let phys = physical_components(&t, &g).map_err(wrap)?;
            let back = tensor_components(&phys, &g, "T").map_err(wrap)?;
            let v = fields_equal(&back, &t, g.domain(), cfg.tol).map_err(wrap)?;
            ok &= v.equal;
            worst = worst.max(v.max_residual);
        }
        checks.push(Check::new(
            format!("operators: {name} physical components round-trip"),
            ok,
            worst,
        ));
    }

    checks.extend(element_checks(cfg)?);
    checks.extend(vector_algebra_checks(cfg)?);
    checks.extend(length_checks(cfg)?);

    Ok(checks)
}

/// Reference physical-component displays for cylindrical and spherical
/// systems, checked term-for-term against the engine's operators applied to
/// random fields.
fn physical_display_checks(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    let d = differentiate;

    for sys_name in ["cylindrical", "spherical"] {
        let g = seeded(sys_name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 23);

        let mut grad_scalar_ok = (true, 0.0f64);
        let mut grad_vec_ok = (true, 0.0f64);
        let mut div_ok = (true, 0.0f64);
        let mut div2_ok = (true, 0.0f64);
        let mut curl_ok = (true, 0.0f64);
        let mut lap_ok = (true, 0.0f64);
        let mut lapvec_ok = (true, 0.0f64);

        for _ in 0..3 {
            let f = random_scalar(&coords, &mut rng);
            let av: Vec<Expr> = (0..3).map(|_| random_scalar(&coords, &mut rng)).collect();
            let tv: Vec<Vec<Expr>> = (0..3)
                .map(|_| (0..3).map(|_| random_scalar(&coords, &mut rng)).collect())
                .collect();

            let display = match sys_name {
                "cylindrical" => cylindrical_displays(&f, &av, &tv),
                _ => spherical_displays(&f, &av, &tv),
            };

            // gradient of a scalar
            let (cov, _) = gradient_scalar(&f, &g);
            let phys = physical_components(&cov, &g).map_err(wrap)?;
            accumulate_vec(&mut grad_scalar_ok, phys.components(), &display.grad_scalar, &g, cfg)?;

            // gradient of a vector, derivative index first
            let a_cov = field_from_physical("A", av.clone(), Variance::Down, &g).map_err(wrap)?;
            let gv = gradient_vector(&a_cov, &g).map_err(wrap)?;
            let phys = physical_components(&gv, &g).map_err(wrap)?;
            accumulate_matrix(&mut grad_vec_ok, &phys, &display.grad_vector, &g, cfg)?;

            // divergence of a vector
            let a_up = field_from_physical("A", av.clone(), Variance::Up, &g).map_err(wrap)?;
            let dv = divergence(&a_up, &g).map_err(wrap)?;
            accumulate_one(&mut div_ok, &dv, &display.div_vector, &g, cfg)?;

            // divergence of a rank-2 tensor, contracted on the first slot
            let t_up = rank2_from_physical(&tv, &g)?;
            let dt = divergence_tensor(&t_up, 0, &g).map_err(wrap)?;
            let phys = physical_components(&dt, &g).map_err(wrap)?;
            accumulate_vec(&mut div2_ok, phys.components(), &display.div_tensor, &g, cfg)?;

            // curl
            let c = curl(&a_cov, &g).map_err(wrap)?;
            let phys = physical_components(&c, &g).map_err(wrap)?;
            accumulate_vec(&mut curl_ok, phys.components(), &display.curl, &g, cfg)?;

            // scalar Laplacian expansion
            let lap = laplacian_scalar(&f, &g);
            accumulate_one(&mut lap_ok, &lap, &display.lap_scalar, &g, cfg)?;

            // vector Laplacian
            let lv = laplacian_vector(&a_up, &g).map_err(wrap)?;
            let phys = physical_components(&lv, &g).map_err(wrap)?;
            accumulate_vec(&mut lapvec_ok, phys.components(), &display.lap_vector, &g, cfg)?;
        }

        let mk = |label: &str, acc: (bool, f64)| {
            Check::new(format!("operators: {sys_name} {label}"), acc.0, acc.1)
        };
        checks.push(mk("gradient display matches", grad_scalar_ok));
        checks.push(mk("gradient-of-vector display matches", grad_vec_ok));
        checks.push(mk("divergence display matches", div_ok));
        checks.push(mk("tensor-divergence display matches", div2_ok));
        checks.push(mk("curl determinant display matches", curl_ok));
        checks.push(mk("scalar-Laplacian display matches", lap_ok));
        checks.push(mk("vector-Laplacian display matches", lapvec_ok));
        let _ = d;
    }
    Ok(checks)
}

struct Displays {
    grad_scalar: Vec<Expr>,
    grad_vector: Vec<Vec<Expr>>,
    div_vector: Expr,
    div_tensor: Vec<Expr>,
    curl: Vec<Expr>,
    lap_scalar: Expr,
    lap_vector: Vec<Expr>,
}

fn q(a: Expr, b: Expr) -> Expr {
    Expr::quotient(a, b)
}

fn mul(v: Vec<Expr>) -> Expr {
    Expr::Product(v)
}

fn add(v: Vec<Expr>) -> Expr {
    Expr::Sum(v)
}

fn neg(e: Expr) -> Expr {
    Expr::neg(e)
}

/// Reference displays over physical components for (rho, phi, z).
fn cylindrical_displays(f: &Expr, a: &[Expr], t: &[Vec<Expr>]) -> Displays {
    let d = differentiate;
    let rho = || Expr::symbol("rho");
    let (ar, ap, az) = (a[0].clone(), a[1].clone(), a[2].clone());
    let e = |i: usize, j: usize| t[i - 1][j - 1].clone();

    let grad_scalar = vec![
        d(f, "rho"),
        q(d(f, "phi"), rho()),
        d(f, "z"),
    ];

    let grad_vector = vec![
        vec![d(&ar, "rho"), d(&ap, "rho"), d(&az, "rho")],
        vec![
            add(vec![q(d(&ar, "phi"), rho()), neg(q(ap.clone(), rho()))]),
            add(vec![q(d(&ap, "phi"), rho()), q(ar.clone(), rho())]),
            q(d(&az, "phi"), rho()),
        ],
        vec![d(&ar, "z"), d(&ap, "z"), d(&az, "z")],
    ];

    let div_vector = q(
        add(vec![
            d(&normalize(&mul(vec![rho(), ar.clone()])), "rho"),
            d(&ap, "phi"),
            mul(vec![rho(), d(&az, "z")]),
        ]),
        rho(),
    );

    let div_tensor = vec![
        add(vec![
            d(&e(1, 1), "rho"),
            q(add(vec![e(1, 1), neg(e(2, 2))]), rho()),
            q(d(&e(2, 1), "phi"), rho()),
            d(&e(3, 1), "z"),
        ]),
        add(vec![
            d(&e(1, 2), "rho"),
            q(mul(vec![Expr::integer(2), e(1, 2)]), rho()),
            q(d(&e(2, 2), "phi"), rho()),
            d(&e(3, 2), "z"),
            q(add(vec![e(2, 1), neg(e(1, 2))]), rho()),
        ]),
        add(vec![
            d(&e(1, 3), "rho"),
            q(e(1, 3), rho()),
            q(d(&e(2, 3), "phi"), rho()),
            d(&e(3, 3), "z"),
        ]),
    ];

    let curl = vec![
        add(vec![q(d(&az, "phi"), rho()), neg(d(&ap, "z"))]),
        add(vec![d(&ar, "z"), neg(d(&az, "rho"))]),
        q(
            add(vec![
                d(&normalize(&mul(vec![rho(), ap.clone()])), "rho"),
                neg(d(&ar, "phi")),
            ]),
            rho(),
        ),
    ];

    let lap_scalar = add(vec![
        d(&d(f, "rho"), "rho"),
        q(d(f, "rho"), rho()),
        q(d(&d(f, "phi"), "phi"), Expr::powi(rho(), 2)),
        d(&d(f, "z"), "z"),
    ]);

    let radial = |w: &Expr| {
        d(
            &normalize(&q(
                d(&normalize(&mul(vec![rho(), w.clone()])), "rho"),
                rho(),
            )),
            "rho",
        )
    };
    let lap_vector = vec![
        add(vec![
            radial(&ar),
            q(d(&d(&ar, "phi"), "phi"), Expr::powi(rho(), 2)),
            d(&d(&ar, "z"), "z"),
            neg(q(mul(vec![Expr::integer(2), d(&ap, "phi")]), Expr::powi(rho(), 2))),
        ]),
        add(vec![
            radial(&ap),
            q(d(&d(&ap, "phi"), "phi"), Expr::powi(rho(), 2)),
            d(&d(&ap, "z"), "z"),
            q(mul(vec![Expr::integer(2), d(&ar, "phi")]), Expr::powi(rho(), 2)),
        ]),
        add(vec![
            q(
                d(&normalize(&mul(vec![rho(), d(&az, "rho")])), "rho"),
                rho(),
            ),
            q(d(&d(&az, "phi"), "phi"), Expr::powi(rho(), 2)),
            d(&d(&az, "z"), "z"),
        ]),
    ];

    Displays {
        grad_scalar,
        grad_vector,
        div_vector,
        div_tensor,
        curl,
        lap_scalar,
        lap_vector,
    }
}

/// Reference displays over physical components for (r, theta, phi).
fn spherical_displays(f: &Expr, a: &[Expr], t: &[Vec<Expr>]) -> Displays {
    let d = differentiate;
    let r = || Expr::symbol("r");
    let r2 = || Expr::powi(Expr::symbol("r"), 2);
    let sin = || Expr::func(crate::expr::UnaryFn::Sin, Expr::symbol("theta"));
    let cot = || Expr::func(crate::expr::UnaryFn::Cot, Expr::symbol("theta"));
    let rsin = || mul(vec![r(), sin()]);
    let (ar, at, ap) = (a[0].clone(), a[1].clone(), a[2].clone());
    let e = |i: usize, j: usize| t[i - 1][j - 1].clone();

    let grad_scalar = vec![
        d(f, "r"),
        q(d(f, "theta"), r()),
        q(d(f, "phi"), rsin()),
    ];

    let grad_vector = vec![
        vec![d(&ar, "r"), d(&at, "r"), d(&ap, "r")],
        vec![
            add(vec![q(d(&ar, "theta"), r()), neg(q(at.clone(), r()))]),
            add(vec![q(d(&at, "theta"), r()), q(ar.clone(), r())]),
            q(d(&ap, "theta"), r()),
        ],
        vec![
            add(vec![q(d(&ar, "phi"), rsin()), neg(q(ap.clone(), r()))]),
            add(vec![
                q(d(&at, "phi"), rsin()),
                neg(q(mul(vec![ap.clone(), cot()]), r())),
            ]),
            add(vec![
                q(d(&ap, "phi"), rsin()),
                q(ar.clone(), r()),
                q(mul(vec![at.clone(), cot()]), r()),
            ]),
        ],
    ];

    let div_vector = q(
        add(vec![
            mul(vec![sin(), d(&normalize(&mul(vec![r2(), ar.clone()])), "r")]),
            mul(vec![r(), d(&normalize(&mul(vec![sin(), at.clone()])), "theta")]),
            mul(vec![r(), d(&ap, "phi")]),
        ]),
        mul(vec![r2(), sin()]),
    );

    let div_tensor = vec![
        add(vec![
            q(d(&normalize(&mul(vec![r2(), e(1, 1)])), "r"), r2()),
            q(d(&normalize(&mul(vec![e(2, 1), sin()])), "theta"), rsin()),
            q(d(&e(3, 1), "phi"), rsin()),
            neg(q(add(vec![e(2, 2), e(3, 3)]), r())),
        ]),
        add(vec![
            q(
                d(&normalize(&mul(vec![Expr::powi(r(), 3), e(1, 2)])), "r"),
                Expr::powi(r(), 3),
            ),
            q(d(&normalize(&mul(vec![e(2, 2), sin()])), "theta"), rsin()),
            q(d(&e(3, 2), "phi"), rsin()),
            q(
                add(vec![e(2, 1), neg(e(1, 2)), neg(mul(vec![e(3, 3), cot()]))]),
                r(),
            ),
        ]),
        add(vec![
            q(
                d(&normalize(&mul(vec![Expr::powi(r(), 3), e(1, 3)])), "r"),
                Expr::powi(r(), 3),
            ),
            q(d(&normalize(&mul(vec![e(2, 3), sin()])), "theta"), rsin()),
            q(d(&e(3, 3), "phi"), rsin()),
            q(
                add(vec![e(3, 1), neg(e(1, 3)), mul(vec![e(3, 2), cot()])]),
                r(),
            ),
        ]),
    ];

    let curl = vec![
        q(
            add(vec![
                d(&normalize(&mul(vec![sin(), ap.clone()])), "theta"),
                neg(d(&at, "phi")),
            ]),
            rsin(),
        ),
        add(vec![
            q(d(&ar, "phi"), rsin()),
            neg(q(d(&normalize(&mul(vec![r(), ap.clone()])), "r"), r())),
        ]),
        q(
            add(vec![
                d(&normalize(&mul(vec![r(), at.clone()])), "r"),
                neg(d(&ar, "theta")),
            ]),
            r(),
        ),
    ];

    let lap_scalar = add(vec![
        d(&d(f, "r"), "r"),
        q(mul(vec![Expr::integer(2), d(f, "r")]), r()),
        q(d(&d(f, "theta"), "theta"), r2()),
        q(
            mul(vec![
                Expr::func(crate::expr::UnaryFn::Cos, Expr::symbol("theta")),
                d(f, "theta"),
            ]),
            mul(vec![r2(), sin()]),
        ),
        q(d(&d(f, "phi"), "phi"), mul(vec![r2(), Expr::powi(sin(), 2)])),
    ]);

    let lap_vector = vec![
        add(vec![
            d(&normalize(&q(d(&normalize(&mul(vec![r2(), ar.clone()])), "r"), r2())), "r"),
            q(
                d(&normalize(&mul(vec![sin(), d(&ar, "theta")])), "theta"),
                mul(vec![r2(), sin()]),
            ),
            q(d(&d(&ar, "phi"), "phi"), mul(vec![r2(), Expr::powi(sin(), 2)])),
            neg(q(
                mul(vec![
                    Expr::integer(2),
                    d(&normalize(&mul(vec![at.clone(), sin()])), "theta"),
                ]),
                mul(vec![r2(), sin()]),
            )),
            neg(q(
                mul(vec![Expr::integer(2), d(&ap, "phi")]),
                mul(vec![r2(), sin()]),
            )),
        ]),
        add(vec![
            q(d(&normalize(&mul(vec![r2(), d(&at, "r")])), "r"), r2()),
            q(
                d(
                    &normalize(&q(
                        d(&normalize(&mul(vec![at.clone(), sin()])), "theta"),
                        sin(),
                    )),
                    "theta",
                ),
                r2(),
            ),
            q(d(&d(&at, "phi"), "phi"), mul(vec![r2(), Expr::powi(sin(), 2)])),
            q(mul(vec![Expr::integer(2), d(&ar, "theta")]), r2()),
            neg(q(
                mul(vec![Expr::integer(2), cot(), d(&ap, "phi")]),
                mul(vec![r2(), sin()]),
            )),
        ]),
        add(vec![
            q(d(&normalize(&mul(vec![r2(), d(&ap, "r")])), "r"), r2()),
            q(
                d(
                    &normalize(&q(
                        d(&normalize(&mul(vec![ap.clone(), sin()])), "theta"),
                        sin(),
                    )),
                    "theta",
                ),
                r2(),
            ),
            q(d(&d(&ap, "phi"), "phi"), mul(vec![r2(), Expr::powi(sin(), 2)])),
            q(mul(vec![Expr::integer(2), d(&ar, "phi")]), mul(vec![r2(), sin()])),
            q(
                mul(vec![Expr::integer(2), cot(), d(&at, "phi")]),
                mul(vec![r2(), sin()]),
            ),
        ]),
    ];

    Displays {
        grad_scalar,
        grad_vector,
        div_vector,
        div_tensor,
        curl,
        lap_scalar,
        lap_vector,
    }
}

fn rank2_from_physical(
    phys: &[Vec<Expr>],
    g: &DerivedMetric,
) -> Result<TensorField, VerifyError> {
    let n = g.dim();
    let mut flat = Vec::with_capacity(n * n);
    for row in phys {
        flat.extend(row.iter().cloned());
    }
    let form = PhysicalForm::from_parts(n, vec![Variance::Up, Variance::Up], flat);
    tensor_components(&form, g, "T").map_err(wrap)
}

fn accumulate_one(
    acc: &mut (bool, f64),
    got: &Expr,
    want: &Expr,
    g: &DerivedMetric,
    cfg: VerifyConfig,
) -> Result<(), VerifyError> {
    let v = equal_on_samples(got, &normalize(want), g.domain(), cfg.tol).map_err(wrap)?;
    acc.0 &= v.equal;
    acc.1 = acc.1.max(v.max_residual);
    Ok(())
}

fn accumulate_vec(
    acc: &mut (bool, f64),
    got: &[Expr],
    want: &[Expr],
    g: &DerivedMetric,
    cfg: VerifyConfig,
) -> Result<(), VerifyError> {
    for (a, b) in got.iter().zip(want.iter()) {
        accumulate_one(acc, a, b, g, cfg)?;
    }
    Ok(())
}

fn accumulate_matrix(
    acc: &mut (bool, f64),
    got: &PhysicalForm,
    want: &[Vec<Expr>],
    g: &DerivedMetric,
    cfg: VerifyConfig,
) -> Result<(), VerifyError> {
    for i in 1..=3usize {
        for j in 1..=3usize {
            accumulate_one(acc, got.get(&[i, j]), &want[i - 1][j - 1], g, cfg)?;
        }
    }
    Ok(())
}

fn element_checks(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();

    let cyl = seeded("cylindrical", cfg);
    let dom = cyl
        .domain()
        .extended("drho", -1.0, 1.0)
        .and_then(|d| d.extended("dphi", -1.0, 1.0))
        .and_then(|d| d.extended("dz", -1.0, 1.0))
        .map_err(wrap)?;
    let v = equal_on_samples(
        &line_element(&cyl),
        &p("drho^2 + rho^2*dphi^2 + dz^2"),
        &dom,
        cfg.tol,
    )
    .map_err(wrap)?;
    checks.push(Check::new("operators: cylindrical line element", v.equal, v.max_residual));
    let v = equal_on_samples(&volume_element(&cyl), &p("rho*drho*dphi*dz"), &dom, cfg.tol)
        .map_err(wrap)?;
    checks.push(Check::new("operators: cylindrical volume element", v.equal, v.max_residual));

    let sph = seeded("spherical", cfg);
    let sdom = sph
        .domain()
        .extended("dtheta", -1.0, 1.0)
        .and_then(|d| d.extended("dphi", -1.0, 1.0))
        .map_err(wrap)?;
    let v = equal_on_samples(
        &area_element(&sph, 1).map_err(wrap)?,
        &p("r^2*sin(theta)*dtheta*dphi"),
        &sdom,
        cfg.tol,
    )
    .map_err(wrap)?;
    checks.push(Check::new("operators: spherical area element on r = const", v.equal, v.max_residual));

    let mk = seeded("minkowski", cfg);
    let mut mdom = mk.domain().clone();
    for c in ["du0", "du1", "du2", "du3"] {
        mdom = mdom.extended(c, -1.0, 1.0).map_err(wrap)?;
    }
    let v = equal_on_samples(
        &line_element(&mk),
        &p("du0^2 - du1^2 - du2^2 - du3^2"),
        &mdom,
        cfg.tol,
    )
    .map_err(wrap)?;
    checks.push(Check::new("operators: minkowski squared line element", v.equal, v.max_residual));

    Ok(checks)
}

fn vector_algebra_checks(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    for name in ["cylindrical", "spherical"] {
        let g = seeded(name, cfg);
        let coords = g.system().coords().to_vec();
        let mut rng = rng_for(cfg, 29);

        let mut mag_ok = (true, 0.0f64);
        let mut dot_ok = (true, 0.0f64);
        let mut cross_ok = (true, 0.0f64);
        for _ in 0..3 {
            let a = random_vector(&coords, Variance::Up, &mut rng);
            let b = random_vector(&coords, Variance::Up, &mut rng);

            let (r1, r2, r3) = magnitude_routes(&a, &g).map_err(wrap)?;
            accumulate_one(&mut mag_ok, &r1, &r2, &g, cfg)?;
            accumulate_one(&mut mag_ok, &r1, &r3, &g, cfg)?;

            // dot invariance across the four variance pairings
            let a_low = lower_index(&a, 0, &g).map_err(wrap)?;
            let b_low = lower_index(&b, 0, &g).map_err(wrap)?;
            let base = dot(&a, &b, &g).map_err(wrap)?;
            for other in [
                dot(&a_low, &b_low, &g).map_err(wrap)?,
                dot(&a, &b_low, &g).map_err(wrap)?,
                dot(&a_low, &b, &g).map_err(wrap)?,
            ] {
                accumulate_one(&mut dot_ok, &base, &other, &g, cfg)?;
            }

            // cross antisymmetry and orthogonality to both arguments
            let axb = cross(&a, &b, &g).map_err(wrap)?;
            let bxa = cross(&b, &a, &g).map_err(wrap)?;
            let neg_bxa = bxa.map_components(|_, e| {
                normalize(&Expr::Product(vec![Expr::integer(-1), e.clone()]))
            });
            let v = fields_equal(&axb, &neg_bxa, g.domain(), cfg.tol).map_err(wrap)?;
            cross_ok.0 &= v.equal;
            cross_ok.1 = cross_ok.1.max(v.max_residual);
            let d = dot(&a, &axb, &g).map_err(wrap)?;
            accumulate_one(&mut cross_ok, &d, &Expr::zero(), &g, cfg)?;
        }
        checks.push(Check::new(
            format!("operators: {name} magnitude routes agree"),
            mag_ok.0,
            mag_ok.1,
        ));
        checks.push(Check::new(
            format!("operators: {name} dot product is pairing-invariant"),
            dot_ok.0,
            dot_ok.1,
        ));
        checks.push(Check::new(
            format!("operators: {name} cross product antisymmetric and orthogonal"),
            cross_ok.0,
            cross_ok.1,
        ));
    }
    Ok(checks)
}

fn length_checks(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    let pi = std::f64::consts::PI;

    let cyl = seeded("cylindrical", cfg);
    let circle = Curve::unchecked(
        "t",
        vec![p("1.5"), p("t"), p("0")],
        (0.0, 2.0 * pi),
    );
    let len = curve_length(&circle, &cyl).map_err(wrap)?;
    let err = (len - 3.0 * pi).abs();
    checks.push(Check::new(
        "operators: cylindrical circle of radius 3/2 has length 3 pi",
        err < 1e-6,
        err,
    ));

    let cart = seeded("cartesian", cfg);
    let segment = Curve::unchecked("t", vec![p("t"), p("0"), p("0")], (0.0, 1.0));
    let len = curve_length(&segment, &cart).map_err(wrap)?;
    let err = (len - 1.0).abs();
    checks.push(Check::new("operators: cartesian unit segment has length 1", err < 1e-9, err));

    let sph = seeded("spherical", cfg);
    let meridian = Curve::unchecked("t", vec![p("1"), p("t"), p("1/2")], (0.0, pi / 2.0));
    let len = curve_length(&meridian, &sph).map_err(wrap)?;
    let err = (len - pi / 2.0).abs();
    checks.push(Check::new(
        "operators: spherical quarter meridian has length pi/2",
        err < 1e-6,
        err,
    ));

    Ok(checks)
}

// ---------------------------------------------------------------- continuum

fn suite_continuum(cfg: VerifyConfig) -> Result<Vec<Check>, VerifyError> {
    let mut checks = Vec::new();
    let box_domain = cartesian_box(PAST_COORDS).with_seed(cfg.seed);

    // strain examples
    let strain = infinitesimal_strain(
        &FieldVector3::new(vec![p("y"), p("0"), p("0")]).map_err(wrap)?,
    );
    checks.push(Check::exact(
        "continuum: shear displacement gives half off-diagonal strain",
        *strain.get(1, 2) == Expr::rational(1, 2) && strain.get(1, 1).is_zero(),
    ));
    let rigid = infinitesimal_strain(
        &FieldVector3::new(vec![p("-y"), p("x"), p("0")]).map_err(wrap)?,
    );
    checks.push(Check::exact(
        "continuum: rigid rotation has zero strain",
        rigid == Matrix3::zero(),
    ));

    // traction
    let sigma = Matrix3::from_fn(|i, j| if i == j { p("p") } else { Expr::zero() });
    let t = traction(&sigma, &FieldVector3::new(vec![p("1"), p("0"), p("0")]).map_err(wrap)?);
    checks.push(Check::exact(
        "continuum: hydrostatic traction is pressure times the normal",
        *t.get(1) == p("p") && t.get(2).is_zero() && t.get(3).is_zero(),
    ));

    // shear map with gamma = 7/10
    let shear = FieldVector3::new(vec![p("xp + 7/10*yp"), p("yp"), p("zp")]).map_err(wrap)?;
    let (e, delta) = displacement_gradients(&shear).map_err(wrap)?;
    let b = finger(&e);
    let b_inv = cauchy(&delta);

    let mut worst = 0.0f64;
    for point in box_domain.points() {
        for (m, label) in [(e.matmul(&delta), "ED"), (b.matmul(&b_inv), "BB")] {
            let _ = label;
            for i in 1..=3 {
                for j in 1..=3 {
                    let got = evaluate(m.get(i, j), &point).map_err(wrap)?;
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((got - want).abs());
                }
            }
        }
    }
    checks.push(Check::new(
        "continuum: shear map inverse pairs multiply to identity (1e-12)",
        worst < 1e-12,
        worst,
    ));

    let expected_b = Matrix3::from_rows([
        [p("149/100"), p("7/10"), p("0")],
        [p("7/10"), p("1"), p("0")],
        [p("0"), p("0"), p("1")],
    ]);
    let mut ok = true;
    let mut res = 0.0f64;
    for i in 1..=3 {
        for j in 1..=3 {
            let v = equal_on_samples(b.get(i, j), expected_b.get(i, j), &box_domain, cfg.tol)
                .map_err(wrap)?;
            ok &= v.equal;
            res = res.max(v.max_residual);
        }
    }
    checks.push(Check::new("continuum: shear Finger tensor matches the closed form", ok, res));

    checks.push(Check::exact(
        "continuum: Finger and Cauchy tensors are symmetric",
        b.is_symmetric() && b_inv.is_symmetric(),
    ));

    let mut positive = true;
    for point in box_domain.points().iter().take(5) {
        positive &= positive_definite_at(&b, point) && positive_definite_at(&b_inv, point);
    }
    checks.push(Check::exact(
        "continuum: Finger and Cauchy tensors are positive definite at samples",
        positive,
    ));

    // rigid motion gives the unit tensor
    let rotation = FieldVector3::new(vec![
        p("cos(1/3)*xp - sin(1/3)*yp + 5"),
        p("sin(1/3)*xp + cos(1/3)*yp - 2"),
        p("zp + 1"),
    ])
    .map_err(wrap)?;
    let (re, _) = displacement_gradients(&rotation).map_err(wrap)?;
    let rb = finger(&re);
    let mut ok = true;
    let mut res = 0.0f64;
    for i in 1..=3 {
        for j in 1..=3 {
            let want = if i == j { Expr::one() } else { Expr::zero() };
            let v = equal_on_samples(rb.get(i, j), &want, &box_domain, cfg.tol).map_err(wrap)?;
            ok &= v.equal;
            res = res.max(v.max_residual);
        }
    }
    checks.push(Check::new("continuum: rigid motion gives the unit Finger tensor", ok, res));

    // velocity gradient decomposition
    let v = FieldVector3::new(vec![p("x^2*y"), p("sin(z) + x"), p("y*z")]).map_err(wrap)?;
    let (s, sbar) = velocity_gradient_decompose(&v);
    let grad = velocity_gradient(&v);
    let mut exact = s.is_symmetric() && sbar.is_antisymmetric();
    for i in 1..=3 {
        for j in 1..=3 {
            let sum = normalize(&Expr::Sum(vec![s.get(i, j).clone(), sbar.get(i, j).clone()]));
            exact &= sum == *grad.get(i, j);
        }
    }
    checks.push(Check::exact(
        "continuum: velocity gradient decomposition reassembles exactly",
        exact,
    ));

    checks.push(Check::exact(
        "continuum: independent component counts 6 + 3 = 9",
        symmetric_count(3) == 6
            && antisymmetric_count(3) == 3
            && symmetric_count(3) + antisymmetric_count(3) == 9,
    ));

    // S = d(gamma)/dt on a time-scaled displacement
    let vel = FieldVector3::new(vec![p("x*y"), p("z^2"), p("x + y")]).map_err(wrap)?;
    let displacement = FieldVector3::new(
        vel.components()
            .iter()
            .map(|c| normalize(&Expr::Product(vec![Expr::symbol("t"), c.clone()])))
            .collect(),
    )
    .map_err(wrap)?;
    let gamma = infinitesimal_strain(&displacement);
    let (s, _) = velocity_gradient_decompose(&vel);
    let mut exact = true;
    for i in 1..=3 {
        for j in 1..=3 {
            exact &= differentiate(gamma.get(i, j), "t") == *s.get(i, j);
        }
    }
    checks.push(Check::exact(
        "continuum: rate of strain is the time derivative of the strain",
        exact,
    ));

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn every_suite_passes_with_default_config() {
        for name in SUITE_NAMES {
            let checks = run_suite(name, VerifyConfig::default()).unwrap();
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.passed, "{name}: {} (residual {})", c.name, c.max_residual);
            }
            assert!(all_passed(&checks));
        }
    }

    #[test]
    fn suites_are_deterministic_for_a_seed() {
        let cfg = VerifyConfig { seed: 7, tol: 1e-9 };
        let a = run_suite("operators", cfg).unwrap();
        let b = run_suite("operators", cfg).unwrap();
        let fmt = |checks: &[Check]| {
            checks
                .iter()
                .map(|c| format!("{} {} {:.17e}", c.name, c.passed, c.max_residual))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(fmt(&a), fmt(&b));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", VerifyConfig::default()),
            Err(VerifyError::UnknownSuite(_))
        ));
    }
}
