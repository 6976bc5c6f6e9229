//! Coordinate systems and metrics.
//!
//! A [`DerivedMetric`] is constructed either from an explicit component table
//! or from a Cartesian map x^k(u^1..u^n); it carries the covariant and
//! contravariant components, determinant, sqrt-determinant, orthogonality,
//! scale factors and (for map-built systems) the Jacobian.

use crate::connection::ChristoffelPair;
use crate::expr::domain::DomainError;
use crate::expr::{
    differentiate, equal_on_samples, evaluate, normalize, Expr, OracleError, SampleDomain,
    DEFAULT_TOL,
};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("coordinate names must be distinct")]
    DuplicateCoordinate,
    #[error("system has {expected} coordinates but got {got} expressions")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("sample domain does not cover coordinate '{0}'")]
    UncoveredCoordinate(String),
    #[error("expression uses symbol '{0}' which is not a coordinate of the system")]
    UnknownSymbol(String),
    #[error("metric table is not symmetric at ({i},{j})")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("{what} vanishes at a sample point (value {value:.3e})")]
    Singular { what: String, value: f64 },
    #[error("{what} could not be evaluated on the sample domain: {detail}")]
    Unevaluable { what: String, detail: String },
    #[error("metric is not orthogonal")]
    NotOrthogonal,
    #[error("metric is not positive along the diagonal; no real scale factors")]
    IndefiniteMetric,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Dimension, ordered coordinate names and the sampling domain.
#[derive(Debug, Clone)]
pub struct CoordinateSystem {
    pub name: String,
    coords: Vec<String>,
    domain: SampleDomain,
}

impl CoordinateSystem {
    pub fn new(
        name: impl Into<String>,
        coords: Vec<String>,
        domain: SampleDomain,
    ) -> Result<Self, GeometryError> {
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(GeometryError::DuplicateCoordinate);
            }
        }
        let names = domain.names();
        for c in &coords {
            if !names.contains(c) {
                return Err(GeometryError::UncoveredCoordinate(c.clone()));
            }
        }
        Ok(CoordinateSystem {
            name: name.into(),
            coords,
            domain,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    /// 1-based coordinate name.
    pub fn coord(&self, i: usize) -> &str {
        &self.coords[i - 1]
    }

    pub fn domain(&self) -> &SampleDomain {
        &self.domain
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.domain = self.domain.clone().with_seed(seed);
        self
    }
}

/// Cartesian map x^k = x^k(u^1..u^n); bijectivity is checked by requiring a
/// non-vanishing Jacobian determinant at every sample point.
#[derive(Debug, Clone)]
pub struct CartesianMap {
    exprs: Vec<Expr>,
}

impl CartesianMap {
    pub fn new(exprs: Vec<Expr>, system: &CoordinateSystem) -> Result<Self, GeometryError> {
        if exprs.len() != system.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: system.dim(),
                got: exprs.len(),
            });
        }
        for e in &exprs {
            for s in e.symbols() {
                if !system.coords().contains(&s) {
                    return Err(GeometryError::UnknownSymbol(s));
                }
            }
        }
        let map = CartesianMap { exprs };
        let jac = jacobian(&map, system);
        assert_nonzero_on_samples(&jac.det, system.domain(), "Jacobian determinant")?;
        Ok(map)
    }

    pub fn components(&self) -> &[Expr] {
        &self.exprs
    }
}

/// Jacobian matrix J[k][i] = dx^k/du^i and its determinant (sign preserved).
#[derive(Debug, Clone)]
pub struct Jacobian {
    matrix: Vec<Vec<Expr>>,
    pub det: Expr,
}

impl Jacobian {
    /// 1-based entry dx^row/du^col.
    pub fn entry(&self, row: usize, col: usize) -> &Expr {
        &self.matrix[row - 1][col - 1]
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }
}

pub fn jacobian(map: &CartesianMap, system: &CoordinateSystem) -> Jacobian {
    let n = system.dim();
    let matrix: Vec<Vec<Expr>> = map
        .exprs
        .iter()
        .map(|xk| {
            (1..=n)
                .map(|i| differentiate(xk, system.coord(i)))
                .collect()
        })
        .collect();
    let det = normalize(&det_expr(&matrix));
    Jacobian { matrix, det }
}

/// Covariant basis columns E_i (column i of the Jacobian).
pub fn basis_vectors(map: &CartesianMap, system: &CoordinateSystem) -> Vec<Vec<Expr>> {
    let jac = jacobian(map, system);
    let n = system.dim();
    (0..n)
        .map(|i| (0..n).map(|k| jac.matrix[k][i].clone()).collect())
        .collect()
}

/// Symbolic determinant by cofactor expansion along the first row.
fn det_expr(m: &[Vec<Expr>]) -> Expr {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut terms = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<Expr>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        terms.push(Expr::Product(vec![
            Expr::integer(sign),
            m[0][j].clone(),
            det_expr(&minor),
        ]));
    }
    Expr::Sum(terms)
}

/// Minor with row `r` and column `c` removed.
fn minor(m: &[Vec<Expr>], r: usize, c: usize) -> Vec<Vec<Expr>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn assert_nonzero_on_samples(
    e: &Expr,
    domain: &SampleDomain,
    what: &str,
) -> Result<(), GeometryError> {
    for p in domain.points() {
        match evaluate(e, &p) {
            Ok(v) => {
                if v.abs() <= 1e-12 {
                    return Err(GeometryError::Singular {
                        what: what.to_string(),
                        value: v,
                    });
                }
            }
            Err(err) => {
                return Err(GeometryError::Unevaluable {
                    what: what.to_string(),
                    detail: err.to_string(),
                })
            }
        }
    }
    Ok(())
}

/// Metric tensor with everything derived from it.
#[derive(Debug, Clone)]
pub struct DerivedMetric {
    system: CoordinateSystem,
    lower: Vec<Vec<Expr>>,
    upper: Vec<Vec<Expr>>,
    det: Expr,
    sqrt_det: Expr,
    orthogonal: bool,
    scale: Option<Vec<Expr>>,
    jacobian: Option<Jacobian>,
    pub(crate) christoffel_cache: OnceLock<ChristoffelPair>,
}

impl DerivedMetric {
    pub fn system(&self) -> &CoordinateSystem {
        &self.system
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    pub fn domain(&self) -> &SampleDomain {
        self.system.domain()
    }

    /// Covariant component g_ij (1-based).
    pub fn lower(&self, i: usize, j: usize) -> &Expr {
        &self.lower[i - 1][j - 1]
    }

    /// Contravariant component g^ij (1-based).
    pub fn upper(&self, i: usize, j: usize) -> &Expr {
        &self.upper[i - 1][j - 1]
    }

    pub fn det(&self) -> &Expr {
        &self.det
    }

    /// sqrt(det g); by the non-negativity convention this is sqrt(|det g|).
    pub fn sqrt_det(&self) -> &Expr {
        &self.sqrt_det
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonal
    }

    /// Scale factors h_i = sqrt(g_ii); present only for orthogonal metrics
    /// with a positive diagonal.
    pub fn scale_factors(&self) -> Result<&[Expr], GeometryError> {
        if !self.orthogonal {
            return Err(GeometryError::NotOrthogonal);
        }
        self.scale
            .as_deref()
            .ok_or(GeometryError::IndefiniteMetric)
    }

    pub fn jacobian(&self) -> Option<&Jacobian> {
        self.jacobian.as_ref()
    }

    /// Rebuild with a different oracle seed.
    pub fn reseeded(&self, seed: u64) -> DerivedMetric {
        let mut m = self.clone();
        m.system = m.system.with_seed(seed);
        m.christoffel_cache = OnceLock::new();
        m
    }
}

/// g_ij = sum_k (dx^k/du^i)(dx^k/du^j).
pub fn metric_from_map(
    map: &CartesianMap,
    system: &CoordinateSystem,
) -> Result<DerivedMetric, GeometryError> {
    let n = system.dim();
    let jac = jacobian(map, system);
    let mut lower = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let terms: Vec<Expr> = (0..n)
                .map(|k| {
                    Expr::Product(vec![jac.matrix[k][i].clone(), jac.matrix[k][j].clone()])
                })
                .collect();
            let entry = normalize(&Expr::Sum(terms));
            lower[i][j] = entry.clone();
            lower[j][i] = entry;
        }
    }
    build_metric(system.clone(), lower, Some(jac))
}

/// Metric given directly by its covariant components.
pub fn metric_from_components(
    rows: Vec<Vec<Expr>>,
    system: &CoordinateSystem,
) -> Result<DerivedMetric, GeometryError> {
    let n = system.dim();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            got: rows.len(),
        });
    }
    let lower: Vec<Vec<Expr>> = rows
        .iter()
        .map(|r| r.iter().map(normalize).collect())
        .collect();
    for (i, row) in lower.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            for s in e.symbols() {
                if !system.coords().contains(&s) {
                    return Err(GeometryError::UnknownSymbol(s));
                }
            }
            if *e != lower[j][i] {
                return Err(GeometryError::AsymmetricMetric { i: i + 1, j: j + 1 });
            }
        }
    }
    build_metric(system.clone(), lower, None)
}

/// Square root of `e`, preferring a radical-free form when one exists and
/// agrees numerically on the domain (where all later evaluation happens).
fn oracle_checked_sqrt(e: &Expr, domain: &SampleDomain) -> Expr {
    let fallback = normalize(&Expr::sqrt(e.clone()));
    let Some(candidate) = halved_exponents(e) else {
        return fallback;
    };
    let candidate = normalize(&candidate);
    match equal_on_samples(&fallback, &candidate, domain, DEFAULT_TOL) {
        Ok(v) if v.equal => candidate,
        _ => fallback,
    }
}

/// Formal square root by halving even integer exponents; None when the
/// expression is not a product of even powers and a constant.
fn halved_exponents(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Number(_) => Some(normalize(&Expr::sqrt(e.clone()))),
        Expr::Power(base, exp) => {
            let k = exp.as_number()?.as_integer()?;
            if k % 2 == 0 {
                Some(Expr::powi((**base).clone(), k / 2))
            } else {
                None
            }
        }
        Expr::Product(fs) => {
            let halved: Option<Vec<Expr>> = fs.iter().map(halved_exponents).collect();
            Some(Expr::Product(halved?))
        }
        _ => None,
    }
}

fn build_metric(
    system: CoordinateSystem,
    lower: Vec<Vec<Expr>>,
    jacobian: Option<Jacobian>,
) -> Result<DerivedMetric, GeometryError> {
    let n = system.dim();
    let det = normalize(&det_expr(&lower));
    assert_nonzero_on_samples(&det, system.domain(), "metric determinant")?;
    let sqrt_det = oracle_checked_sqrt(&det, system.domain());

    // inverse by adjugate / determinant
    let inv_det = Expr::powi(det.clone(), -1);
    let mut upper = vec![vec![Expr::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let cof = Expr::Product(vec![
                Expr::integer(sign),
                det_expr(&minor(&lower, j, i)),
                inv_det.clone(),
            ]);
            upper[i][j] = normalize(&cof);
        }
    }

    let orthogonal = (0..n).all(|i| (0..n).all(|j| i == j || lower[i][j].is_zero()));
    let scale = if orthogonal {
        let positive = (0..n).all(|i| {
            system
                .domain()
                .points()
                .iter()
                .all(|p| matches!(evaluate(&lower[i][i], p), Ok(v) if v > 0.0))
        });
        positive.then(|| {
            (0..n)
                .map(|i| oracle_checked_sqrt(&lower[i][i], system.domain()))
                .collect()
        })
    } else {
        None
    };

    Ok(DerivedMetric {
        system,
        lower,
        upper,
        det,
        sqrt_det,
        orthogonal,
        scale,
        jacobian,
        christoffel_cache: OnceLock::new(),
    })
}

/// Certify g^ik g_kj = delta^i_j on the metric's own domain.
pub fn check_inverse_metric(g: &DerivedMetric, tol: f64) -> Result<bool, GeometryError> {
    let n = g.dim();
    for i in 1..=n {
        for j in 1..=n {
            let sum = Expr::Sum(
                (1..=n)
                    .map(|k| Expr::Product(vec![g.upper(i, k).clone(), g.lower(k, j).clone()]))
                    .collect(),
            );
            let expected = if i == j { Expr::one() } else { Expr::zero() };
            let v = equal_on_samples(&normalize(&sum), &expected, g.domain(), tol)?;
            if !v.equal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl DerivedMetric {
    /// Convenience wrapper over [`check_inverse_metric`] with the default tolerance.
    pub fn inverse_is_consistent(&self) -> bool {
        check_inverse_metric(self, DEFAULT_TOL).unwrap_or(false)
    }
}
