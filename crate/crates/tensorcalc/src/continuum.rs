//! Continuum-mechanics tensors over Cartesian coordinates: infinitesimal
//! strain, stress/traction, displacement gradients, Finger/Cauchy strain
//! tensors and the velocity-gradient decomposition.

use crate::expr::{differentiate, evaluate, normalize, Expr, SampleDomain, SamplePoint};
use thiserror::Error;

pub const PRESENT_COORDS: [&str; 3] = ["x", "y", "z"];
pub const PAST_COORDS: [&str; 3] = ["xp", "yp", "zp"];

#[derive(Debug, Clone, Error)]
pub enum ContinuumError {
    #[error("expected 3 components, got {0}")]
    Shape(usize),
    #[error("deformation map is singular at a sample point (det {0:.3e})")]
    SingularMap(f64),
    #[error("map could not be evaluated on the sample box: {0}")]
    Unevaluable(String),
}

/// 3x3 table of expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix3 {
    entries: Vec<Expr>,
}

impl Matrix3 {
    pub fn from_rows(rows: [[Expr; 3]; 3]) -> Self {
        Matrix3 {
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity() -> Self {
        Matrix3::from_fn(|i, j| {
            if i == j {
                Expr::one()
            } else {
                Expr::zero()
            }
        })
    }

    pub fn zero() -> Self {
        Matrix3::from_fn(|_, _| Expr::zero())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Expr) -> Self {
        let mut entries = Vec::with_capacity(9);
        for i in 1..=3 {
            for j in 1..=3 {
                entries.push(f(i, j));
            }
        }
        Matrix3 { entries }
    }

    /// 1-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Expr {
        &self.entries[(i - 1) * 3 + (j - 1)]
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3::from_fn(|i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| {
            normalize(&Expr::Sum(
                (1..=3)
                    .map(|k| Expr::Product(vec![self.get(i, k).clone(), other.get(k, j).clone()]))
                    .collect(),
            ))
        })
    }

    pub fn det(&self) -> Expr {
        let e = |i: usize, j: usize| self.get(i, j).clone();
        let term = |s: i64, a: Expr, b: Expr, c: Expr| {
            Expr::Product(vec![Expr::integer(s), a, b, c])
        };
        normalize(&Expr::Sum(vec![
            term(1, e(1, 1), e(2, 2), e(3, 3)),
            term(-1, e(1, 1), e(2, 3), e(3, 2)),
            term(-1, e(1, 2), e(2, 1), e(3, 3)),
            term(1, e(1, 2), e(2, 3), e(3, 1)),
            term(1, e(1, 3), e(2, 1), e(3, 2)),
            term(-1, e(1, 3), e(2, 2), e(3, 1)),
        ]))
    }

    /// Symbolic inverse via adjugate over determinant.
    pub fn inverse(&self) -> Matrix3 {
        let det = self.det();
        let inv_det = Expr::powi(det, -1);
        let e = |i: usize, j: usize| self.get(i, j).clone();
        Matrix3::from_fn(|i, j| {
            // cofactor of the transposed position
            let (r, c) = (j, i);
            let rows: Vec<usize> = (1..=3).filter(|&k| k != r).collect();
            let cols: Vec<usize> = (1..=3).filter(|&k| k != c).collect();
            let m = Expr::Sum(vec![
                Expr::Product(vec![e(rows[0], cols[0]), e(rows[1], cols[1])]),
                Expr::Product(vec![
                    Expr::integer(-1),
                    e(rows[0], cols[1]),
                    e(rows[1], cols[0]),
                ]),
            ]);
            let sign = if (r + c) % 2 == 0 { 1 } else { -1 };
            normalize(&Expr::Product(vec![
                Expr::integer(sign),
                m,
                inv_det.clone(),
            ]))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=3).all(|i| (1..=3).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=3).all(|i| {
            (1..=3).all(|j| {
                let neg = normalize(&Expr::neg(self.get(j, i).clone()));
                *self.get(i, j) == neg
            })
        })
    }
}

/// Three expressions over Cartesian coordinates: displacement, velocity,
/// normal or traction depending on use.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldVector3 {
    components: Vec<Expr>,
}

impl FieldVector3 {
    pub fn new(components: Vec<Expr>) -> Result<Self, ContinuumError> {
        if components.len() != 3 {
            return Err(ContinuumError::Shape(components.len()));
        }
        Ok(FieldVector3 { components })
    }

    /// 1-based component access.
    pub fn get(&self, i: usize) -> &Expr {
        &self.components[i - 1]
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }
}

/// Sample box [-2, 2]^3 over the given coordinate names.
pub fn cartesian_box(coords: [&str; 3]) -> SampleDomain {
    SampleDomain::new(
        coords
            .iter()
            .map(|c| (c.to_string(), -2.0, 2.0))
            .collect(),
    )
    .expect("box intervals are valid")
}

/// Infinitesimal strain gamma_ij = (d_i d_j-displacement + d_j d_i)/2;
/// symmetric by construction.
pub fn infinitesimal_strain(d: &FieldVector3) -> Matrix3 {
    Matrix3::from_fn(|i, j| {
        let sum = Expr::Sum(vec![
            differentiate(d.get(j), PRESENT_COORDS[i - 1]),
            differentiate(d.get(i), PRESENT_COORDS[j - 1]),
        ]);
        normalize(&Expr::Product(vec![Expr::rational(1, 2), sum]))
    })
}

/// Traction vector T_i = sigma_ij n_j.
pub fn traction(sigma: &Matrix3, normal: &FieldVector3) -> FieldVector3 {
    FieldVector3::new(
        (1..=3)
            .map(|i| {
                normalize(&Expr::Sum(
                    (1..=3)
                        .map(|j| {
                            Expr::Product(vec![sigma.get(i, j).clone(), normal.get(j).clone()])
                        })
                        .collect(),
                ))
            })
            .collect(),
    )
    .expect("three components")
}

/// Displacement gradient tensors from the present-from-past motion
/// x_i(xp, yp, zp): E_ij = dx_i/dxp_j and its inverse.
pub fn displacement_gradients(
    present_from_past: &FieldVector3,
) -> Result<(Matrix3, Matrix3), ContinuumError> {
    let first = Matrix3::from_fn(|i, j| {
        differentiate(present_from_past.get(i), PAST_COORDS[j - 1])
    });
    // invertibility at samples
    let det = first.det();
    let box_domain = cartesian_box(PAST_COORDS);
    for p in box_domain.points() {
        match evaluate(&det, &p) {
            Ok(v) => {
                if v.abs() <= 1e-12 {
                    return Err(ContinuumError::SingularMap(v));
                }
            }
            Err(e) => return Err(ContinuumError::Unevaluable(e.to_string())),
        }
    }
    let second = first.inverse();
    Ok((first, second))
}

/// Finger strain tensor B = E E^T (left Cauchy-Green).
pub fn finger(first_gradient: &Matrix3) -> Matrix3 {
    first_gradient.matmul(&first_gradient.transpose())
}

/// Cauchy strain tensor B^-1 = Delta^T Delta (right Cauchy-Green).
pub fn cauchy(second_gradient: &Matrix3) -> Matrix3 {
    second_gradient.transpose().matmul(second_gradient)
}

/// Velocity gradient [grad v]_ij = d_i v_j split into the rate-of-strain
/// tensor (symmetric) and the vorticity tensor (antisymmetric); their sum
/// reproduces the gradient exactly.
pub fn velocity_gradient_decompose(v: &FieldVector3) -> (Matrix3, Matrix3) {
    let half = Expr::rational(1, 2);
    let grad = |i: usize, j: usize| differentiate(v.get(j), PRESENT_COORDS[i - 1]);
    let symmetric = Matrix3::from_fn(|i, j| {
        normalize(&Expr::Product(vec![
            half.clone(),
            Expr::Sum(vec![grad(i, j), grad(j, i)]),
        ]))
    });
    let antisymmetric = Matrix3::from_fn(|i, j| {
        normalize(&Expr::Product(vec![
            half.clone(),
            Expr::Sum(vec![grad(i, j), Expr::neg(grad(j, i))]),
        ]))
    });
    (symmetric, antisymmetric)
}

/// Velocity gradient itself.
pub fn velocity_gradient(v: &FieldVector3) -> Matrix3 {
    Matrix3::from_fn(|i, j| differentiate(v.get(j), PRESENT_COORDS[i - 1]))
}

/// Independent components of a symmetric rank-2 tensor in n dimensions.
pub fn symmetric_count(n: u64) -> u64 {
    n * (n + 1) / 2
}

/// Independent components of an antisymmetric rank-2 tensor in n dimensions.
pub fn antisymmetric_count(n: u64) -> u64 {
    n * (n - 1) / 2
}

/// Numeric positive-definiteness of a symbolic matrix at one point, via
/// leading principal minors.
pub fn positive_definite_at(m: &Matrix3, point: &SamplePoint) -> bool {
    let e = |i: usize, j: usize| evaluate(m.get(i, j), point).unwrap_or(f64::NAN);
    let m1 = e(1, 1);
    let m2 = e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1);
    let m3 = evaluate(&m.det(), point).unwrap_or(f64::NAN);
    m1 > 0.0 && m2 > 0.0 && m3 > 0.0
}
