//! Differential operators (gradient, divergence, curl, Laplacian), metric
//! geometry quantities (line/area/volume elements, magnitudes, angles, dot
//! and cross products, curve length) and physical-component conversion.
//!
//! Operator outputs are tensor components; conversion to physical components
//! is always an explicit step, never implicit, so the scale-factor
//! bookkeeping stays visible.

use crate::expr::{evaluate, normalize, EvalError, Expr, SamplePoint};
use crate::geometry::{DerivedMetric, GeometryError};
use crate::quadrature::adaptive_simpson;
use crate::special::epsilon;
use crate::tensor::{
    contract, covariant_derivative, index_tuples, lower_index, raise_index, Curve, TensorField,
    TensorError, Variance,
};
use thiserror::Error;

pub const QUADRATURE_TOL: f64 = 1e-8;
pub const QUADRATURE_MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Error)]
pub enum FieldOpsError {
    #[error("operation requires a rank-{expected} field, got rank {got}")]
    Rank { expected: usize, got: usize },
    #[error("operation requires a 3-dimensional system, got {0}")]
    NotThreeDimensional(usize),
    #[error("surface index {0} out of range")]
    BadSurfaceIndex(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("integrand failed at t = {t}: {detail}")]
    Integrand { t: f64, detail: String },
    #[error("arc-length integrand is negative at t = {t} (value {value:.3e})")]
    NegativeIntegrand { t: f64, value: f64 },
}

/// Gradient of a scalar: covariant components d_i f and the contravariant
/// form g^ij d_j f.
pub fn gradient_scalar(f: &Expr, g: &DerivedMetric) -> (TensorField, TensorField) {
    let n = g.dim();
    let covariant: Vec<Expr> = (1..=n)
        .map(|i| crate::expr::differentiate(f, g.system().coord(i)))
        .collect();
    let cov = TensorField::new("grad", n, vec![Variance::Down], 0, covariant).unwrap();
    let con = raise_index(&cov, 0, g).expect("slot 0 is covariant");
    (cov, con)
}

/// Gradient of a rank-1 or rank-2 field: covariant-derivative components
/// with the derivative index moved to the front.
pub fn gradient_vector(a: &TensorField, g: &DerivedMetric) -> Result<TensorField, FieldOpsError> {
    if a.rank() == 0 || a.rank() > 2 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank(),
        });
    }
    let d = covariant_derivative(a, g)?;
    Ok(d.move_slot(a.rank(), 0))
}

/// Voss-Weyl divergence (1/sqrt g) d_i (sqrt g A^i). Covariant input is
/// raised first.
pub fn divergence(a: &TensorField, g: &DerivedMetric) -> Result<Expr, FieldOpsError> {
    if a.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank(),
        });
    }
    let up = match a.signature()[0] {
        Variance::Up => a.clone(),
        Variance::Down => raise_index(a, 0, g)?,
    };
    let n = g.dim();
    let terms: Vec<Expr> = (1..=n)
        .map(|i| {
            let scaled = normalize(&Expr::Product(vec![
                g.sqrt_det().clone(),
                up.get(&[i]).clone(),
            ]));
            Expr::quotient(
                crate::expr::differentiate(&scaled, g.system().coord(i)),
                g.sqrt_det().clone(),
            )
        })
        .collect();
    Ok(normalize(&Expr::Sum(terms)))
}

/// Divergence route through the covariant derivative, kept as an
/// independent cross-check of the Voss-Weyl formula.
pub fn divergence_by_contraction(
    a: &TensorField,
    g: &DerivedMetric,
) -> Result<Expr, FieldOpsError> {
    if a.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank(),
        });
    }
    let up = match a.signature()[0] {
        Variance::Up => a.clone(),
        Variance::Down => raise_index(a, 0, g)?,
    };
    let d = covariant_derivative(&up, g)?;
    let traced = contract(&d, 0, 1)?;
    Ok(traced.get(&[]).clone())
}

/// Divergence of a general tensor with respect to its contravariant slot
/// `slot` (0-based): the covariant-derivative index contracted with it.
pub fn divergence_tensor(
    t: &TensorField,
    slot: usize,
    g: &DerivedMetric,
) -> Result<TensorField, FieldOpsError> {
    if slot >= t.rank() || t.signature()[slot] != Variance::Up {
        return Err(FieldOpsError::Tensor(TensorError::WrongVariance { slot }));
    }
    let d = covariant_derivative(t, g)?;
    Ok(contract(&d, slot, t.rank())?)
}

/// Curl of a covariant rank-1 field in 3 dimensions, reduced form
/// [curl A]^k = (eps^ijk / sqrt g) d_i A_j. Contravariant input is lowered
/// first.
pub fn curl(a: &TensorField, g: &DerivedMetric) -> Result<TensorField, FieldOpsError> {
    curl_impl(a, g, false)
}

/// Curl including the Christoffel terms of the covariant derivative,
/// [curl A]^k = (eps^ijk / sqrt g)(d_i A_j - Gamma^l_ji A_l). The terms
/// cancel by symmetry; this form exists to certify that cancellation.
pub fn curl_full(a: &TensorField, g: &DerivedMetric) -> Result<TensorField, FieldOpsError> {
    curl_impl(a, g, true)
}

fn curl_impl(
    a: &TensorField,
    g: &DerivedMetric,
    with_connection: bool,
) -> Result<TensorField, FieldOpsError> {
    let n = g.dim();
    if n != 3 {
        return Err(FieldOpsError::NotThreeDimensional(n));
    }
    if a.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank(),
        });
    }
    let down = match a.signature()[0] {
        Variance::Down => a.clone(),
        Variance::Up => lower_index(a, 0, g)?,
    };
    let gamma = crate::connection::christoffel(g);
    let mut comps = Vec::with_capacity(3);
    for k in 1..=3usize {
        let mut terms = Vec::new();
        for i in 1..=3usize {
            for j in 1..=3usize {
                let e = epsilon(&[i, j, k], 3).expect("indices in range");
                if e == 0 {
                    continue;
                }
                let mut inner = vec![crate::expr::differentiate(
                    down.get(&[j]),
                    g.system().coord(i),
                )];
                if with_connection {
                    for l in 1..=3usize {
                        inner.push(Expr::Product(vec![
                            Expr::integer(-1),
                            gamma.second(l, j, i).clone(),
                            down.get(&[l]).clone(),
                        ]));
                    }
                }
                terms.push(Expr::Product(vec![
                    Expr::integer(e),
                    Expr::powi(g.sqrt_det().clone(), -1),
                    Expr::Sum(inner),
                ]));
            }
        }
        comps.push(normalize(&Expr::Sum(terms)));
    }
    Ok(TensorField::new("curl", 3, vec![Variance::Up], 0, comps)?)
}

/// Laplacian of a scalar: (1/sqrt g) d_i (sqrt g g^ij d_j f).
pub fn laplacian_scalar(f: &Expr, g: &DerivedMetric) -> Expr {
    let n = g.dim();
    let mut terms = Vec::new();
    for i in 1..=n {
        let mut flux = Vec::new();
        for j in 1..=n {
            flux.push(Expr::Product(vec![
                g.sqrt_det().clone(),
                g.upper(i, j).clone(),
                crate::expr::differentiate(f, g.system().coord(j)),
            ]));
        }
        let flux = normalize(&Expr::Sum(flux));
        terms.push(Expr::quotient(
            crate::expr::differentiate(&flux, g.system().coord(i)),
            g.sqrt_det().clone(),
        ));
    }
    normalize(&Expr::Sum(terms))
}

/// Orthogonal-coordinates Laplacian: sum_i (1/H) d_i ((H / h_i^2) d_i f)
/// with H the product of the scale factors. Cross-checks the general form.
pub fn laplacian_orthogonal(f: &Expr, g: &DerivedMetric) -> Result<Expr, FieldOpsError> {
    let h = g.scale_factors()?;
    let big_h = normalize(&Expr::Product(h.to_vec()));
    let n = g.dim();
    let mut terms = Vec::new();
    for i in 1..=n {
        let inner = normalize(&Expr::Product(vec![
            big_h.clone(),
            Expr::powi(h[i - 1].clone(), -2),
            crate::expr::differentiate(f, g.system().coord(i)),
        ]));
        terms.push(Expr::quotient(
            crate::expr::differentiate(&inner, g.system().coord(i)),
            big_h.clone(),
        ));
    }
    Ok(normalize(&Expr::Sum(terms)))
}

/// Laplacian of a rank-1 field: the second covariant derivative contracted
/// with the contravariant metric, g^jk B_{;jk}. The result keeps the
/// variance of the input.
pub fn laplacian_vector(b: &TensorField, g: &DerivedMetric) -> Result<TensorField, FieldOpsError> {
    if b.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: b.rank(),
        });
    }
    let twice = covariant_derivative(&covariant_derivative(b, g)?, g)?;
    let n = g.dim();
    let mut out = TensorField::zeros(format!("lap({})", b.name), n, b.signature().to_vec());
    for i in 1..=n {
        let mut terms = Vec::new();
        for j in 1..=n {
            for k in 1..=n {
                terms.push(Expr::Product(vec![
                    g.upper(j, k).clone(),
                    twice.get(&[i, j, k]).clone(),
                ]));
            }
        }
        out.set(&[i], normalize(&Expr::Sum(terms)));
    }
    Ok(out)
}

/// Physical components: tensor components rescaled onto unit basis vectors,
/// multiplying by h per contravariant slot and dividing per covariant slot.
#[derive(Debug, Clone)]
pub struct PhysicalForm {
    dim: usize,
    signature: Vec<Variance>,
    components: Vec<Expr>,
}

impl PhysicalForm {
    /// Assemble a physical form directly from its parts.
    pub fn from_parts(dim: usize, signature: Vec<Variance>, components: Vec<Expr>) -> Self {
        debug_assert_eq!(components.len(), dim.pow(signature.len() as u32));
        PhysicalForm {
            dim,
            signature,
            components,
        }
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        let flat = idx.iter().fold(0, |acc, &i| acc * self.dim + (i - 1));
        &self.components[flat]
    }

    pub fn signature(&self) -> &[Variance] {
        &self.signature
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn indices(&self) -> Vec<Vec<usize>> {
        index_tuples(self.dim, self.signature.len())
    }
}

pub fn physical_components(
    t: &TensorField,
    g: &DerivedMetric,
) -> Result<PhysicalForm, FieldOpsError> {
    let h = g.scale_factors()?.to_vec();
    let mut components = Vec::with_capacity(t.components().len());
    for idx in t.indices() {
        let mut factors = vec![t.get(&idx).clone()];
        for (slot, variance) in t.signature().iter().enumerate() {
            let hi = h[idx[slot] - 1].clone();
            factors.push(match variance {
                Variance::Up => hi,
                Variance::Down => Expr::powi(hi, -1),
            });
        }
        components.push(normalize(&Expr::Product(factors)));
    }
    Ok(PhysicalForm {
        dim: t.dim(),
        signature: t.signature().to_vec(),
        components,
    })
}

/// Exact inverse of [`physical_components`].
pub fn tensor_components(
    p: &PhysicalForm,
    g: &DerivedMetric,
    name: impl Into<String>,
) -> Result<TensorField, FieldOpsError> {
    let h = g.scale_factors()?.to_vec();
    let n = g.dim();
    let mut components = Vec::with_capacity(p.components.len());
    for idx in index_tuples(n, p.signature.len()) {
        let mut factors = vec![p.get(&idx).clone()];
        for (slot, variance) in p.signature.iter().enumerate() {
            let hi = h[idx[slot] - 1].clone();
            factors.push(match variance {
                Variance::Up => Expr::powi(hi, -1),
                Variance::Down => hi,
            });
        }
        components.push(normalize(&Expr::Product(factors)));
    }
    Ok(TensorField::new(
        name,
        n,
        p.signature.clone(),
        0,
        components,
    )?)
}

/// Build a tensor field from physical components of the given variance.
pub fn field_from_physical(
    name: impl Into<String>,
    physical: Vec<Expr>,
    variance: Variance,
    g: &DerivedMetric,
) -> Result<TensorField, FieldOpsError> {
    let p = PhysicalForm {
        dim: g.dim(),
        signature: vec![variance],
        components: physical,
    };
    tensor_components(&p, g, name)
}

/// Squared line element g_ij du^i du^j over fresh differential symbols
/// named d<coordinate>.
pub fn line_element(g: &DerivedMetric) -> Expr {
    let n = g.dim();
    let du: Vec<Expr> = (1..=n)
        .map(|i| Expr::symbol(format!("d{}", g.system().coord(i))))
        .collect();
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            terms.push(Expr::Product(vec![
                g.lower(i, j).clone(),
                du[i - 1].clone(),
                du[j - 1].clone(),
            ]));
        }
    }
    normalize(&Expr::Sum(terms))
}

/// Area element on the surface u^i = const in a 3D system:
/// sqrt(g g^ii) du^j du^k.
pub fn area_element(g: &DerivedMetric, i: usize) -> Result<Expr, FieldOpsError> {
    let n = g.dim();
    if n != 3 {
        return Err(FieldOpsError::NotThreeDimensional(n));
    }
    if i == 0 || i > 3 {
        return Err(FieldOpsError::BadSurfaceIndex(i));
    }
    let others: Vec<usize> = (1..=3).filter(|&j| j != i).collect();
    let du = |j: usize| Expr::symbol(format!("d{}", g.system().coord(j)));
    Ok(normalize(&Expr::Product(vec![
        Expr::sqrt(Expr::Product(vec![g.det().clone(), g.upper(i, i).clone()])),
        du(others[0]),
        du(others[1]),
    ])))
}

/// Volume element sqrt(g) du^1 ... du^n.
pub fn volume_element(g: &DerivedMetric) -> Expr {
    let n = g.dim();
    let mut factors = vec![g.sqrt_det().clone()];
    for i in 1..=n {
        factors.push(Expr::symbol(format!("d{}", g.system().coord(i))));
    }
    normalize(&Expr::Product(factors))
}

/// Vector magnitude through the route matching the input variance.
pub fn magnitude(a: &TensorField, g: &DerivedMetric) -> Result<Expr, FieldOpsError> {
    Ok(magnitude_routes(a, g)?.0)
}

/// All three magnitude routes: metric-paired same-variance form, the
/// opposite-variance form, and the mixed contraction sqrt(A^i A_i).
pub fn magnitude_routes(
    a: &TensorField,
    g: &DerivedMetric,
) -> Result<(Expr, Expr, Expr), FieldOpsError> {
    if a.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank(),
        });
    }
    let n = g.dim();
    let opposite = match a.signature()[0] {
        Variance::Up => lower_index(a, 0, g)?,
        Variance::Down => raise_index(a, 0, g)?,
    };
    let mut same_terms = Vec::new();
    let mut opp_terms = Vec::new();
    let mut mixed_terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let metric_same = match a.signature()[0] {
                Variance::Up => g.lower(i, j),
                Variance::Down => g.upper(i, j),
            };
            let metric_opp = match a.signature()[0] {
                Variance::Up => g.upper(i, j),
                Variance::Down => g.lower(i, j),
            };
            same_terms.push(Expr::Product(vec![
                metric_same.clone(),
                a.get(&[i]).clone(),
                a.get(&[j]).clone(),
            ]));
            opp_terms.push(Expr::Product(vec![
                metric_opp.clone(),
                opposite.get(&[i]).clone(),
                opposite.get(&[j]).clone(),
            ]));
        }
        mixed_terms.push(Expr::Product(vec![
            a.get(&[i]).clone(),
            opposite.get(&[i]).clone(),
        ]));
    }
    Ok((
        normalize(&Expr::sqrt(Expr::Sum(same_terms))),
        normalize(&Expr::sqrt(Expr::Sum(opp_terms))),
        normalize(&Expr::sqrt(Expr::Sum(mixed_terms))),
    ))
}

/// Dot product with the metric inserted as required by the variance pairing.
pub fn dot(a: &TensorField, b: &TensorField, g: &DerivedMetric) -> Result<Expr, FieldOpsError> {
    if a.rank() != 1 || b.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank().max(b.rank()),
        });
    }
    let n = g.dim();
    let mut terms = Vec::new();
    match (a.signature()[0], b.signature()[0]) {
        (Variance::Up, Variance::Up) => {
            for i in 1..=n {
                for j in 1..=n {
                    terms.push(Expr::Product(vec![
                        g.lower(i, j).clone(),
                        a.get(&[i]).clone(),
                        b.get(&[j]).clone(),
                    ]));
                }
            }
        }
        (Variance::Down, Variance::Down) => {
            for i in 1..=n {
                for j in 1..=n {
                    terms.push(Expr::Product(vec![
                        g.upper(i, j).clone(),
                        a.get(&[i]).clone(),
                        b.get(&[j]).clone(),
                    ]));
                }
            }
        }
        _ => {
            for i in 1..=n {
                terms.push(Expr::Product(vec![a.get(&[i]).clone(), b.get(&[i]).clone()]));
            }
        }
    }
    Ok(normalize(&Expr::Sum(terms)))
}

/// Cosine of the angle between two non-null vectors.
pub fn angle_cos(
    a: &TensorField,
    b: &TensorField,
    g: &DerivedMetric,
) -> Result<Expr, FieldOpsError> {
    let num = dot(a, b, g)?;
    let ma = magnitude(a, g)?;
    let mb = magnitude(b, g)?;
    Ok(normalize(&Expr::quotient(
        num,
        Expr::Product(vec![ma, mb]),
    )))
}

/// Cross product in 3 dimensions. Contravariant inputs produce covariant
/// components sqrt(g) eps_ijk A^i B^j; covariant inputs produce
/// contravariant components (eps^ijk / sqrt g) A_i B_j. Mixed inputs are
/// aligned to the first argument's variance.
pub fn cross(
    a: &TensorField,
    b: &TensorField,
    g: &DerivedMetric,
) -> Result<TensorField, FieldOpsError> {
    let n = g.dim();
    if n != 3 {
        return Err(FieldOpsError::NotThreeDimensional(n));
    }
    if a.rank() != 1 || b.rank() != 1 {
        return Err(FieldOpsError::Rank {
            expected: 1,
            got: a.rank().max(b.rank()),
        });
    }
    let variance = a.signature()[0];
    let b = if b.signature()[0] == variance {
        b.clone()
    } else {
        match variance {
            Variance::Up => raise_index(b, 0, g)?,
            Variance::Down => lower_index(b, 0, g)?,
        }
    };
    let (factor, out_variance) = match variance {
        Variance::Up => (g.sqrt_det().clone(), Variance::Down),
        Variance::Down => (Expr::powi(g.sqrt_det().clone(), -1), Variance::Up),
    };
    let mut comps = Vec::with_capacity(3);
    for k in 1..=3usize {
        let mut terms = Vec::new();
        for i in 1..=3usize {
            for j in 1..=3usize {
                let e = epsilon(&[i, j, k], 3).expect("indices in range");
                if e == 0 {
                    continue;
                }
                terms.push(Expr::Product(vec![
                    Expr::integer(e),
                    factor.clone(),
                    a.get(&[i]).clone(),
                    b.get(&[j]).clone(),
                ]));
            }
        }
        comps.push(normalize(&Expr::Sum(terms)));
    }
    Ok(TensorField::new("cross", 3, vec![out_variance], 0, comps)?)
}

/// Arc length of a curve: the integral of sqrt(g_ij du^i/dt du^j/dt) by
/// adaptive Simpson quadrature. The squared integrand must be non-negative
/// where sampled.
pub fn curve_length(curve: &Curve, g: &DerivedMetric) -> Result<f64, FieldOpsError> {
    let n = g.dim();
    let bindings = curve.bindings(g);
    let velocities = curve.velocities();
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            terms.push(Expr::Product(vec![
                g.lower(i, j).substitute(&bindings),
                velocities[i - 1].clone(),
                velocities[j - 1].clone(),
            ]));
        }
    }
    let squared = normalize(&Expr::Sum(terms));

    let eval_squared = |t: f64| -> Result<f64, FieldOpsError> {
        let p = SamplePoint::new(vec![(curve.param.clone(), t)]);
        evaluate(&squared, &p).map_err(|e: EvalError| FieldOpsError::Integrand {
            t,
            detail: e.to_string(),
        })
    };
    // sign convention guard: the squared element must not be negative
    let (t0, t1) = curve.range;
    for k in 0..=20 {
        let t = t0 + (t1 - t0) * (k as f64) / 20.0;
        let v = eval_squared(t)?;
        if v < -1e-12 {
            return Err(FieldOpsError::NegativeIntegrand { t, value: v });
        }
    }
    adaptive_simpson(
        &|t| eval_squared(t).map(|v| v.max(0.0).sqrt()),
        t0,
        t1,
        QUADRATURE_TOL,
        QUADRATURE_MAX_DEPTH,
    )
}
