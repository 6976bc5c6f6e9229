//! Christoffel symbols of both kinds, derived from the metric.
//!
//! Tables are memoized on the metric instance because the curvature chain
//! and covariant derivatives re-read them heavily; first access under
//! concurrency is safe through `OnceLock`.

use crate::expr::{
    differentiate, equal_on_samples, normalize, zero_on_samples, Expr, OracleError, UnaryFn,
};
use crate::geometry::{DerivedMetric, GeometryError};
use crate::report::Check;

/// First-kind [ij,l] and second-kind Gamma^k_ij tables, stored over i <= j.
#[derive(Debug, Clone)]
pub struct ChristoffelPair {
    dim: usize,
    first: Vec<Expr>,
    second: Vec<Expr>,
}

impl ChristoffelPair {
    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim;
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        // pairs (a,b) with a<=b, laid out row by row
        let pair = (a - 1) * (n + 1) - (a - 1) * a / 2 + (b - a);
        pair * n + (k - 1)
    }

    /// First kind [ij,l]; symmetric in i and j.
    pub fn first(&self, i: usize, j: usize, l: usize) -> &Expr {
        &self.first[self.slot(i, j, l)]
    }

    /// Second kind Gamma^k_ij; symmetric in i and j.
    pub fn second(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.second[self.slot(i, j, k)]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All second-kind components are literal zero after normalization.
    pub fn is_structurally_zero(&self) -> bool {
        self.first.iter().all(Expr::is_zero) && self.second.iter().all(Expr::is_zero)
    }
}

/// Memoized Christoffel tables for a metric.
pub fn christoffel(g: &DerivedMetric) -> &ChristoffelPair {
    g.christoffel_cache.get_or_init(|| compute_pair(g))
}

fn compute_pair(g: &DerivedMetric) -> ChristoffelPair {
    let n = g.dim();
    let npairs = n * (n + 1) / 2;
    let mut first = vec![Expr::zero(); npairs * n];
    let mut second = vec![Expr::zero(); npairs * n];
    let mut idx = 0;
    for i in 1..=n {
        for j in i..=n {
            for l in 1..=n {
                first[idx * n + (l - 1)] = first_kind(g, i, j, l);
            }
            idx += 1;
        }
    }
    let pair = ChristoffelPair {
        dim: n,
        first,
        second: Vec::new(),
    };
    let mut idx = 0;
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                let terms: Vec<Expr> = (1..=n)
                    .map(|l| {
                        Expr::Product(vec![g.upper(k, l).clone(), pair.first(i, j, l).clone()])
                    })
                    .collect();
                second[idx * n + (k - 1)] = normalize(&Expr::Sum(terms));
            }
            idx += 1;
        }
    }
    ChristoffelPair {
        dim: n,
        first: pair.first,
        second,
    }
}

/// [ij,l] = (d_j g_il + d_i g_jl - d_l g_ij) / 2.
fn first_kind(g: &DerivedMetric, i: usize, j: usize, l: usize) -> Expr {
    let ui = g.system().coord(i).to_string();
    let uj = g.system().coord(j).to_string();
    let ul = g.system().coord(l).to_string();
    let sum = Expr::Sum(vec![
        differentiate(g.lower(i, l), &uj),
        differentiate(g.lower(j, l), &ui),
        Expr::Product(vec![Expr::integer(-1), differentiate(g.lower(i, j), &ul)]),
    ]);
    normalize(&Expr::Product(vec![Expr::rational(1, 2), sum]))
}

/// First-kind table as a fresh computation (the memoized pair holds both).
pub fn christoffel_first(g: &DerivedMetric) -> &ChristoffelPair {
    christoffel(g)
}

/// Second-kind table Gamma^k_ij = g^kl [ij,l].
pub fn christoffel_second(g: &DerivedMetric) -> &ChristoffelPair {
    christoffel(g)
}

/// Contracted symbol Gamma^j_ij = d_i ln(sqrt g), one expression per i.
pub fn contracted_christoffel(g: &DerivedMetric) -> Vec<Expr> {
    let log_sqrt = Expr::func(UnaryFn::Ln, g.sqrt_det().clone());
    (1..=g.dim())
        .map(|i| differentiate(&log_sqrt, g.system().coord(i)))
        .collect()
}

/// Number of independent Christoffel symbols of each kind: n^2 (n+1) / 2.
pub fn christoffel_count(n: u64) -> u64 {
    n * n * (n + 1) / 2
}

/// Second-kind table from the scale-factor shortcut formulas for orthogonal
/// 3D systems. Serves as an independent cross-check of [`christoffel`].
pub fn orthogonal_christoffel(g: &DerivedMetric) -> Result<Vec<Vec<Vec<Expr>>>, GeometryError> {
    if g.dim() != 3 {
        return Err(GeometryError::DimensionMismatch {
            expected: 3,
            got: g.dim(),
        });
    }
    let h = g.scale_factors()?.to_vec();
    let n = 3usize;
    let coord = |i: usize| g.system().coord(i).to_string();
    let dh = |i: usize, j: usize| differentiate(&h[i - 1], &coord(j));

    let mut table = vec![vec![vec![Expr::zero(); n]; n]; n];
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                let e = if i != j && j != k && i != k {
                    Expr::zero()
                } else if k == i && k == j {
                    // Gamma^i_ii = h_{i,i} / h_i
                    Expr::quotient(dh(i, i), h[i - 1].clone())
                } else if k == i {
                    // Gamma^i_ij = h_{i,j} / h_i
                    Expr::quotient(dh(i, j), h[i - 1].clone())
                } else if k == j {
                    // Gamma^j_ij = h_{j,i} / h_j  (paper's Gamma^2_12 = h_{2,1}/h_2 pattern)
                    Expr::quotient(dh(j, i), h[j - 1].clone())
                } else {
                    // i == j != k: Gamma^k_ii = -h_i h_{i,k} / h_k^2
                    Expr::neg(Expr::quotient(
                        Expr::Product(vec![h[i - 1].clone(), dh(i, k)]),
                        Expr::powi(h[k - 1].clone(), 2),
                    ))
                };
                table[k - 1][i - 1][j - 1] = normalize(&e);
            }
        }
    }
    Ok(table)
}

/// Identities tying metric derivatives to the Christoffel symbols:
/// d_j g_il = [ij,l] + [jl,i], the inverse-metric derivative relation,
/// the sqrt-g relation and the derivative of the first-kind symbol.
pub fn verify_metric_derivative_identities(
    g: &DerivedMetric,
    tol: f64,
) -> Result<Vec<Check>, OracleError> {
    let n = g.dim();
    let gamma = christoffel(g);
    let dom = g.domain();
    let coord = |i: usize| g.system().coord(i).to_string();
    let mut checks = Vec::new();

    // d_j g_il = [ij,l] + [jl,i]
    let mut worst = 0.0f64;
    let mut ok = true;
    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                let lhs = differentiate(g.lower(i, l), &coord(j));
                let rhs = normalize(&Expr::Sum(vec![
                    gamma.first(i, j, l).clone(),
                    gamma.first(j, l, i).clone(),
                ]));
                let v = equal_on_samples(&lhs, &rhs, dom, tol)?;
                ok &= v.equal;
                worst = worst.max(v.max_residual);
            }
        }
    }
    checks.push(Check::new("metric derivative splits into first-kind symbols", ok, worst));

    // d_k g_ij = -g_mj g_ni d_k g^nm
    let mut worst = 0.0f64;
    let mut ok = true;
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                let lhs = differentiate(g.lower(i, j), &coord(k));
                let mut terms = Vec::new();
                for m in 1..=n {
                    for nn in 1..=n {
                        terms.push(Expr::Product(vec![
                            Expr::integer(-1),
                            g.lower(m, j).clone(),
                            g.lower(nn, i).clone(),
                            differentiate(g.upper(nn, m), &coord(k)),
                        ]));
                    }
                }
                let rhs = normalize(&Expr::Sum(terms));
                let v = equal_on_samples(&lhs, &rhs, dom, tol)?;
                ok &= v.equal;
                worst = worst.max(v.max_residual);
            }
        }
    }
    checks.push(Check::new("covariant vs contravariant metric derivatives", ok, worst));

    // (1/sqrt g) d_j (sqrt g g^ij) + g^kl Gamma^i_kl = 0
    let mut worst = 0.0f64;
    let mut ok = true;
    for i in 1..=n {
        let mut terms = Vec::new();
        for j in 1..=n {
            let dj = differentiate(
                &normalize(&Expr::Product(vec![
                    g.sqrt_det().clone(),
                    g.upper(i, j).clone(),
                ])),
                &coord(j),
            );
            terms.push(Expr::quotient(dj, g.sqrt_det().clone()));
        }
        for k in 1..=n {
            for l in 1..=n {
                terms.push(Expr::Product(vec![
                    g.upper(k, l).clone(),
                    gamma.second(i, k, l).clone(),
                ]));
            }
        }
        let v = zero_on_samples(&normalize(&Expr::Sum(terms)), dom, tol)?;
        ok &= v.equal;
        worst = worst.max(v.max_residual);
    }
    checks.push(Check::new("sqrt-g contraction identity vanishes", ok, worst));

    // d_j [ik,l] = g_la d_j Gamma^a_ik + Gamma^a_ik [lj,a] + Gamma^a_ik [aj,l]
    let mut worst = 0.0f64;
    let mut ok = true;
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                for j in 1..=n {
                    let lhs = differentiate(gamma.first(i, k, l), &coord(j));
                    let mut terms = Vec::new();
                    for a in 1..=n {
                        terms.push(Expr::Product(vec![
                            g.lower(l, a).clone(),
                            differentiate(gamma.second(a, i, k), &coord(j)),
                        ]));
                        terms.push(Expr::Product(vec![
                            gamma.second(a, i, k).clone(),
                            gamma.first(l, j, a).clone(),
                        ]));
                        terms.push(Expr::Product(vec![
                            gamma.second(a, i, k).clone(),
                            gamma.first(a, j, l).clone(),
                        ]));
                    }
                    let v = equal_on_samples(&lhs, &normalize(&Expr::Sum(terms)), dom, tol)?;
                    ok &= v.equal;
                    worst = worst.max(v.max_residual);
                }
            }
        }
    }
    checks.push(Check::new("derivative of first-kind symbol expands", ok, worst));

    Ok(checks)
}
