//! Dense tensor fields over a coordinate system and the derivative
//! operations on them: covariant, contravariant, second-order and absolute
//! derivatives, index raising/lowering and contraction.

use crate::connection::christoffel;
use crate::expr::{
    differentiate, equal_on_samples, normalize, Expr, OracleError, SampleDomain, SamplePoint,
    Verdict,
};
use crate::geometry::DerivedMetric;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Up,
    Down,
}

impl Variance {
    pub fn letter(self) -> char {
        match self {
            Variance::Up => 'u',
            Variance::Down => 'd',
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum TensorError {
    #[error("component table has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("operation requires rank {expected}, tensor has rank {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("slot {0} out of range")]
    BadSlot(usize),
    #[error("slot {slot} has the wrong variance for this operation")]
    WrongVariance { slot: usize },
    #[error("tensor dimension {got} does not match system dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("curve component depends on '{0}', expected only the parameter")]
    CurveBadSymbol(String),
    #[error("curve leaves the sample domain at t = {t}")]
    CurveLeavesDomain { t: f64 },
    #[error("curve has {got} components, system needs {expected}")]
    CurveShape { expected: usize, got: usize },
}

/// All index tuples (1-based) of the given rank, in lexicographic order.
pub fn index_tuples(dim: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for i in 1..=dim {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Named multi-index table of expressions with a variance signature and an
/// integer relative weight.
#[derive(Debug, Clone)]
pub struct TensorField {
    pub name: String,
    signature: Vec<Variance>,
    pub weight: i64,
    dim: usize,
    components: Vec<Expr>,
}

impl TensorField {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        signature: Vec<Variance>,
        weight: i64,
        components: Vec<Expr>,
    ) -> Result<Self, TensorError> {
        let expected = dim.pow(signature.len() as u32);
        if components.len() != expected {
            return Err(TensorError::ShapeMismatch {
                expected,
                got: components.len(),
            });
        }
        Ok(TensorField {
            name: name.into(),
            signature,
            weight,
            dim,
            components,
        })
    }

    pub fn zeros(name: impl Into<String>, dim: usize, signature: Vec<Variance>) -> Self {
        let len = dim.pow(signature.len() as u32);
        TensorField {
            name: name.into(),
            signature,
            weight: 0,
            dim,
            components: vec![Expr::zero(); len],
        }
    }

    pub fn scalar(name: impl Into<String>, dim: usize, value: Expr) -> Self {
        TensorField {
            name: name.into(),
            signature: Vec::new(),
            weight: 0,
            dim,
            components: vec![value],
        }
    }

    pub fn vector(
        name: impl Into<String>,
        dim: usize,
        variance: Variance,
        components: Vec<Expr>,
    ) -> Result<Self, TensorError> {
        TensorField::new(name, dim, vec![variance], 0, components)
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[Variance] {
        &self.signature
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + (i - 1))
    }

    /// Component at a 1-based index tuple.
    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.components[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Expr) {
        let f = self.flat(idx);
        self.components[f] = value;
    }

    pub fn indices(&self) -> Vec<Vec<usize>> {
        index_tuples(self.dim, self.rank())
    }

    pub fn map_components(&self, mut f: impl FnMut(&[usize], &Expr) -> Expr) -> TensorField {
        let mut out = self.clone();
        for idx in self.indices() {
            let v = f(&idx, self.get(&idx));
            out.set(&idx, v);
        }
        out
    }

    pub fn scaled(&self, factor: &Expr) -> TensorField {
        self.map_components(|_, e| {
            normalize(&Expr::Product(vec![factor.clone(), e.clone()]))
        })
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        if self.signature != other.signature || self.dim != other.dim {
            return Err(TensorError::ShapeMismatch {
                expected: self.components.len(),
                got: other.components.len(),
            });
        }
        Ok(self.map_components(|idx, e| {
            normalize(&Expr::Sum(vec![e.clone(), other.get(idx).clone()]))
        }))
    }

    /// Outer product; signatures concatenate, weights add.
    pub fn outer(&self, other: &TensorField, name: impl Into<String>) -> TensorField {
        let mut signature = self.signature.clone();
        signature.extend_from_slice(&other.signature);
        let mut components = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                components.push(normalize(&Expr::Product(vec![a.clone(), b.clone()])));
            }
        }
        TensorField {
            name: name.into(),
            signature,
            weight: self.weight + other.weight,
            dim: self.dim,
            components,
        }
    }

    /// Move slot `from` to position `to`, keeping the other slots in order.
    pub fn move_slot(&self, from: usize, to: usize) -> TensorField {
        let rank = self.rank();
        assert!(from < rank && to < rank);
        let mut signature = self.signature.clone();
        let v = signature.remove(from);
        signature.insert(to, v);
        let mut out = TensorField {
            name: self.name.clone(),
            signature,
            weight: self.weight,
            dim: self.dim,
            components: vec![Expr::zero(); self.components.len()],
        };
        for idx in self.indices() {
            let mut new_idx = idx.clone();
            let i = new_idx.remove(from);
            new_idx.insert(to, i);
            out.set(&new_idx, self.get(&idx).clone());
        }
        out
    }
}

/// Covariant metric as a tensor field.
pub fn metric_lower_field(g: &DerivedMetric) -> TensorField {
    let n = g.dim();
    let comps = index_tuples(n, 2)
        .iter()
        .map(|idx| g.lower(idx[0], idx[1]).clone())
        .collect();
    TensorField::new("g", n, vec![Variance::Down, Variance::Down], 0, comps).unwrap()
}

/// Contravariant metric as a tensor field.
pub fn metric_upper_field(g: &DerivedMetric) -> TensorField {
    let n = g.dim();
    let comps = index_tuples(n, 2)
        .iter()
        .map(|idx| g.upper(idx[0], idx[1]).clone())
        .collect();
    TensorField::new("g_inv", n, vec![Variance::Up, Variance::Up], 0, comps).unwrap()
}

/// Mixed Kronecker delta as a tensor field.
pub fn kronecker_field(dim: usize) -> TensorField {
    let comps = index_tuples(dim, 2)
        .iter()
        .map(|idx| {
            if idx[0] == idx[1] {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
        .collect();
    TensorField::new("delta", dim, vec![Variance::Up, Variance::Down], 0, comps).unwrap()
}

/// Covariant derivative: one partial-derivative term, a positive Christoffel
/// term per contravariant slot, a negative one per covariant slot, and for
/// relative tensors the weight term -w T Gamma^a_aq. Appends a trailing
/// covariant slot; the result has the same weight.
pub fn covariant_derivative(
    field: &TensorField,
    g: &DerivedMetric,
) -> Result<TensorField, TensorError> {
    let n = g.dim();
    if field.dim() != n {
        return Err(TensorError::DimensionMismatch {
            expected: n,
            got: field.dim(),
        });
    }
    let gamma = christoffel(g);
    let mut signature = field.signature().to_vec();
    signature.push(Variance::Down);
    let mut out = TensorField::zeros(format!("{};", field.name), n, signature);
    out.weight = field.weight;

    for full_idx in out.indices() {
        let (idx, q) = full_idx.split_at(field.rank());
        let q = q[0];
        let uq = g.system().coord(q).to_string();
        let mut terms = vec![differentiate(field.get(idx), &uq)];
        for (slot, variance) in field.signature().iter().enumerate() {
            for a in 1..=n {
                let mut swapped = idx.to_vec();
                swapped[slot] = a;
                let component = field.get(&swapped).clone();
                if component.is_zero() {
                    continue;
                }
                let term = match variance {
                    Variance::Up => Expr::Product(vec![
                        gamma.second(idx[slot], a, q).clone(),
                        component,
                    ]),
                    Variance::Down => Expr::Product(vec![
                        Expr::integer(-1),
                        gamma.second(a, idx[slot], q).clone(),
                        component,
                    ]),
                };
                terms.push(term);
            }
        }
        if field.weight != 0 {
            let trace = Expr::Sum((1..=n).map(|a| gamma.second(a, a, q).clone()).collect());
            terms.push(Expr::Product(vec![
                Expr::integer(-field.weight),
                field.get(idx).clone(),
                trace,
            ]));
        }
        out.set(&full_idx, normalize(&Expr::Sum(terms)));
    }
    Ok(out)
}

/// Contravariant derivative: the covariant derivative with its
/// differentiation index raised. Appends a trailing contravariant slot.
pub fn contravariant_derivative(
    field: &TensorField,
    g: &DerivedMetric,
) -> Result<TensorField, TensorError> {
    let cov = covariant_derivative(field, g)?;
    raise_index(&cov, cov.rank() - 1, g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    /// Differentiate by j first, then k: A_{i;jk}.
    Jk,
    /// The opposite order A_{i;kj}, i.e. the last two slots transposed.
    Kj,
}

/// Second-order mixed covariant derivative of a rank-1 field.
pub fn second_covariant_derivative(
    field: &TensorField,
    g: &DerivedMetric,
    order: DerivOrder,
) -> Result<TensorField, TensorError> {
    if field.rank() != 1 {
        return Err(TensorError::RankMismatch {
            expected: 1,
            got: field.rank(),
        });
    }
    let twice = covariant_derivative(&covariant_derivative(field, g)?, g)?;
    Ok(match order {
        DerivOrder::Jk => twice,
        DerivOrder::Kj => twice.move_slot(2, 1),
    })
}

/// Contract slot `slot` (covariant) with the contravariant metric.
pub fn raise_index(
    field: &TensorField,
    slot: usize,
    g: &DerivedMetric,
) -> Result<TensorField, TensorError> {
    shift_index(field, slot, g, Variance::Down)
}

/// Contract slot `slot` (contravariant) with the covariant metric.
pub fn lower_index(
    field: &TensorField,
    slot: usize,
    g: &DerivedMetric,
) -> Result<TensorField, TensorError> {
    shift_index(field, slot, g, Variance::Up)
}

fn shift_index(
    field: &TensorField,
    slot: usize,
    g: &DerivedMetric,
    expect: Variance,
) -> Result<TensorField, TensorError> {
    if slot >= field.rank() {
        return Err(TensorError::BadSlot(slot));
    }
    if field.signature()[slot] != expect {
        return Err(TensorError::WrongVariance { slot });
    }
    let n = g.dim();
    let mut out = field.clone();
    out.signature[slot] = match expect {
        Variance::Down => Variance::Up,
        Variance::Up => Variance::Down,
    };
    for idx in field.indices() {
        let i = idx[slot];
        let mut terms = Vec::with_capacity(n);
        for a in 1..=n {
            let mut swapped = idx.clone();
            swapped[slot] = a;
            let metric_entry = match expect {
                Variance::Down => g.upper(i, a),
                Variance::Up => g.lower(i, a),
            };
            terms.push(Expr::Product(vec![
                metric_entry.clone(),
                field.get(&swapped).clone(),
            ]));
        }
        out.set(&idx, normalize(&Expr::Sum(terms)));
    }
    Ok(out)
}

/// Trace over one contravariant and one covariant slot.
pub fn contract(
    field: &TensorField,
    slot_up: usize,
    slot_down: usize,
) -> Result<TensorField, TensorError> {
    let rank = field.rank();
    if slot_up >= rank || slot_down >= rank || slot_up == slot_down {
        return Err(TensorError::BadSlot(slot_up.max(slot_down)));
    }
    if field.signature()[slot_up] != Variance::Up {
        return Err(TensorError::WrongVariance { slot: slot_up });
    }
    if field.signature()[slot_down] != Variance::Down {
        return Err(TensorError::WrongVariance { slot: slot_down });
    }
    let n = field.dim();
    let mut signature = Vec::new();
    for (s, v) in field.signature().iter().enumerate() {
        if s != slot_up && s != slot_down {
            signature.push(*v);
        }
    }
    let mut out = TensorField::zeros(format!("tr({})", field.name), n, signature);
    out.weight = field.weight;
    for rest in out.indices() {
        let mut terms = Vec::with_capacity(n);
        for a in 1..=n {
            let mut idx = Vec::with_capacity(rank);
            let mut rest_iter = rest.iter();
            for s in 0..rank {
                if s == slot_up || s == slot_down {
                    idx.push(a);
                } else {
                    idx.push(*rest_iter.next().unwrap());
                }
            }
            terms.push(field.get(&idx).clone());
        }
        out.set(&rest, normalize(&Expr::Sum(terms)));
    }
    Ok(out)
}

/// A t-parameterized curve u^i = u^i(t) inside a system's sample domain.
#[derive(Debug, Clone)]
pub struct Curve {
    pub param: String,
    components: Vec<Expr>,
    pub range: (f64, f64),
}

impl Curve {
    /// Checks the component count, that components depend only on the
    /// parameter, and that sampled curve points stay inside the domain.
    pub fn new(
        param: impl Into<String>,
        components: Vec<Expr>,
        range: (f64, f64),
        g: &DerivedMetric,
    ) -> Result<Self, TensorError> {
        let param = param.into();
        let curve = Curve::unchecked(param, components, range);
        curve.validate_shape(g.dim())?;
        for (t, point) in curve.sample_points(g, 20) {
            if !g.domain().contains(&point) {
                return Err(TensorError::CurveLeavesDomain { t });
            }
        }
        Ok(curve)
    }

    /// No domain-membership check; used by arc length, where only integrand
    /// evaluability matters.
    pub fn unchecked(param: impl Into<String>, components: Vec<Expr>, range: (f64, f64)) -> Self {
        Curve {
            param: param.into(),
            components,
            range,
        }
    }

    fn validate_shape(&self, dim: usize) -> Result<(), TensorError> {
        if self.components.len() != dim {
            return Err(TensorError::CurveShape {
                expected: dim,
                got: self.components.len(),
            });
        }
        for c in &self.components {
            for s in c.symbols() {
                if s != self.param {
                    return Err(TensorError::CurveBadSymbol(s));
                }
            }
        }
        Ok(())
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// Substitution bindings coordinate -> u^i(t).
    pub fn bindings(&self, g: &DerivedMetric) -> Vec<(String, Expr)> {
        g.system()
            .coords()
            .iter()
            .cloned()
            .zip(self.components.iter().cloned())
            .collect()
    }

    /// Velocities du^i/dt.
    pub fn velocities(&self) -> Vec<Expr> {
        self.components
            .iter()
            .map(|c| differentiate(c, &self.param))
            .collect()
    }

    /// Sample domain over the curve parameter.
    pub fn param_domain(&self) -> SampleDomain {
        SampleDomain::single(self.param.clone(), self.range.0, self.range.1)
            .expect("curve range is a valid interval")
    }

    fn sample_points(&self, g: &DerivedMetric, count: usize) -> Vec<(f64, SamplePoint)> {
        let (t0, t1) = self.range;
        (0..=count)
            .filter_map(|k| {
                let t = t0 + (t1 - t0) * (k as f64) / (count as f64);
                let tp = SamplePoint::new(vec![(self.param.clone(), t)]);
                let coords: Option<Vec<(String, f64)>> = g
                    .system()
                    .coords()
                    .iter()
                    .zip(&self.components)
                    .map(|(name, c)| {
                        crate::expr::evaluate(c, &tp).ok().map(|v| (name.clone(), v))
                    })
                    .collect();
                coords.map(|c| (t, SamplePoint::new(c)))
            })
            .collect()
    }
}

/// Absolute derivative along a curve: the covariant derivative contracted
/// with the tangent, composed onto the curve. The result is a field of the
/// same signature whose components are expressions in the curve parameter.
pub fn absolute_derivative(
    field: &TensorField,
    curve: &Curve,
    g: &DerivedMetric,
) -> Result<TensorField, TensorError> {
    curve.validate_shape(g.dim())?;
    let cov = covariant_derivative(field, g)?;
    let bindings = curve.bindings(g);
    let velocities = curve.velocities();
    let n = g.dim();
    let mut out = TensorField::zeros(format!("d({})/dt", field.name), n, field.signature().to_vec());
    out.weight = field.weight;
    for idx in field.indices() {
        let mut terms = Vec::with_capacity(n);
        for r in 1..=n {
            let mut full = idx.clone();
            full.push(r);
            terms.push(Expr::Product(vec![
                cov.get(&full).substitute(&bindings),
                velocities[r - 1].clone(),
            ]));
        }
        out.set(&idx, normalize(&Expr::Sum(terms)));
    }
    Ok(out)
}

/// Component-wise oracle equality of two tensor fields.
pub fn fields_equal(
    a: &TensorField,
    b: &TensorField,
    domain: &SampleDomain,
    tol: f64,
) -> Result<Verdict, OracleError> {
    let mut verdict = Verdict {
        equal: a.signature() == b.signature(),
        max_residual: 0.0,
        worst_point: None,
    };
    for idx in a.indices() {
        let v = equal_on_samples(a.get(&idx), b.get(&idx), domain, tol)?;
        if v.max_residual > verdict.max_residual {
            verdict.max_residual = v.max_residual;
            verdict.worst_point = v.worst_point;
        }
        verdict.equal &= v.equal;
    }
    Ok(verdict)
}

/// Component-wise oracle vanishing of a tensor field.
pub fn field_is_zero(
    a: &TensorField,
    domain: &SampleDomain,
    tol: f64,
) -> Result<Verdict, OracleError> {
    let zero = TensorField::zeros("0", a.dim(), a.signature().to_vec());
    fields_equal(a, &zero, domain, tol)
}
