//! Line-oriented key-value files defining coordinate systems and curves.
//!
//! System definition:
//! ```text
//! name = shifted_polar          # optional
//! dimension = 3
//! coordinates = rho phi z
//! map.1 = rho*cos(phi)          # either map.<k> entries...
//! map.2 = rho*sin(phi)
//! map.3 = z
//! metric.1.1 = 1                # ...or metric.<i>.<j> entries (i <= j is
//! metric.2.2 = rho^2            # enough; symmetric entries are mirrored,
//! metric.3.3 = 1                # missing off-diagonals default to 0)
//! domain.rho = 0.5 2
//! domain.phi = 0.1 3
//! domain.z = -1 1
//! ```
//!
//! Curve definition:
//! ```text
//! parameter = t
//! curve.1 = 1.5
//! curve.2 = t
//! curve.3 = 0
//! interval = 0 6.2832
//! ```
//! Blank lines and lines starting with `#` are ignored.

use crate::expr::{parse, Expr, ParseError, SampleDomain};
use crate::geometry::{
    metric_from_components, metric_from_map, CartesianMap, CoordinateSystem, DerivedMetric,
    GeometryError,
};
use crate::tensor::Curve;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SysDefError {
    #[error("line {line}: expected 'key = value'")]
    BadLine { line: usize },
    #[error("line {line}: {detail}")]
    BadValue { line: usize, detail: String },
    #[error("line {line}: expression error: {source}")]
    BadExpr {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("missing required key '{0}'")]
    MissingKey(&'static str),
    #[error("definition must contain exactly one of map.* or metric.* entries")]
    MetricOrMap,
    #[error("coordinate count {got} does not match dimension {expected}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("domain missing for coordinate '{0}'")]
    MissingDomain(String),
    #[error("map.{0} entry missing")]
    MissingMapEntry(usize),
    #[error("metric entry index ({i},{j}) out of range")]
    MetricIndex { i: usize, j: usize },
    #[error("metric entries ({i},{j}) and ({j},{i}) disagree")]
    MetricConflict { i: usize, j: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Parsed system definition: dimension, coordinates, exactly one of a metric
/// table or a Cartesian map, and per-coordinate domain intervals.
#[derive(Debug, Clone)]
pub struct SystemDefinition {
    pub name: Option<String>,
    pub dimension: usize,
    pub coordinates: Vec<String>,
    pub metric: Option<Vec<Vec<Expr>>>,
    pub map: Option<Vec<Expr>>,
    pub domains: BTreeMap<String, (f64, f64)>,
}

impl SystemDefinition {
    /// Build the derived metric, applying the given oracle seed.
    pub fn build(&self, seed: u64) -> Result<DerivedMetric, SysDefError> {
        let mut intervals = Vec::new();
        for c in &self.coordinates {
            let (lo, hi) = self
                .domains
                .get(c)
                .ok_or_else(|| SysDefError::MissingDomain(c.clone()))?;
            intervals.push((c.clone(), *lo, *hi));
        }
        let domain = SampleDomain::new(intervals)
            .map_err(GeometryError::from)?
            .with_seed(seed);
        let name = self.name.clone().unwrap_or_else(|| "user".to_string());
        let system = CoordinateSystem::new(name, self.coordinates.clone(), domain)?;
        match (&self.map, &self.metric) {
            (Some(map), None) => {
                let map = CartesianMap::new(map.clone(), &system)?;
                Ok(metric_from_map(&map, &system)?)
            }
            (None, Some(rows)) => Ok(metric_from_components(rows.clone(), &system)?),
            _ => Err(SysDefError::MetricOrMap),
        }
    }
}

fn split_key_value(raw: &str, lineno: usize) -> Result<Option<(String, String)>, SysDefError> {
    let line = raw.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let (key, value) = line
        .split_once('=')
        .ok_or(SysDefError::BadLine { line: lineno })?;
    Ok(Some((key.trim().to_string(), value.trim().to_string())))
}

pub fn parse_system_definition(text: &str) -> Result<SystemDefinition, SysDefError> {
    let mut name = None;
    let mut dimension = None;
    let mut coordinates: Option<Vec<String>> = None;
    let mut map_entries: BTreeMap<usize, Expr> = BTreeMap::new();
    let mut metric_entries: BTreeMap<(usize, usize), Expr> = BTreeMap::new();
    let mut domains = BTreeMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let Some((key, value)) = split_key_value(raw, lineno)? else {
            continue;
        };
        let expr_at = |v: &str| {
            parse(v).map_err(|source| SysDefError::BadExpr {
                line: lineno,
                source,
            })
        };
        match key.as_str() {
            "name" => name = Some(value),
            "dimension" => {
                dimension = Some(value.parse::<usize>().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad dimension '{value}'"),
                })?)
            }
            "coordinates" => {
                coordinates = Some(value.split_whitespace().map(str::to_string).collect())
            }
            k if k.starts_with("map.") => {
                let idx: usize = k[4..].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad map index in '{k}'"),
                })?;
                map_entries.insert(idx, expr_at(&value)?);
            }
            k if k.starts_with("metric.") => {
                let mut it = k[7..].splitn(2, '.');
                let parse_idx = |s: Option<&str>| {
                    s.and_then(|x| x.parse::<usize>().ok())
                        .ok_or(SysDefError::BadValue {
                            line: lineno,
                            detail: format!("bad metric index in '{k}'"),
                        })
                };
                let i = parse_idx(it.next())?;
                let j = parse_idx(it.next())?;
                metric_entries.insert((i, j), expr_at(&value)?);
            }
            k if k.starts_with("domain.") => {
                let coord = k[7..].to_string();
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(SysDefError::BadValue {
                        line: lineno,
                        detail: "domain needs two bounds: 'lo hi'".into(),
                    });
                }
                let lo: f64 = parts[0].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad bound '{}'", parts[0]),
                })?;
                let hi: f64 = parts[1].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad bound '{}'", parts[1]),
                })?;
                domains.insert(coord, (lo, hi));
            }
            other => {
                return Err(SysDefError::BadValue {
                    line: lineno,
                    detail: format!("unknown key '{other}'"),
                })
            }
        }
    }

    let dimension = dimension.ok_or(SysDefError::MissingKey("dimension"))?;
    let coordinates = coordinates.ok_or(SysDefError::MissingKey("coordinates"))?;
    if coordinates.len() != dimension {
        return Err(SysDefError::CoordinateCount {
            expected: dimension,
            got: coordinates.len(),
        });
    }

    let map = if map_entries.is_empty() {
        None
    } else {
        let mut out = Vec::with_capacity(dimension);
        for k in 1..=dimension {
            out.push(
                map_entries
                    .get(&k)
                    .cloned()
                    .ok_or(SysDefError::MissingMapEntry(k))?,
            );
        }
        Some(out)
    };

    let metric = if metric_entries.is_empty() {
        None
    } else {
        let mut rows = vec![vec![Expr::zero(); dimension]; dimension];
        let mut seen = vec![vec![false; dimension]; dimension];
        for ((i, j), e) in metric_entries {
            if i == 0 || j == 0 || i > dimension || j > dimension {
                return Err(SysDefError::MetricIndex { i, j });
            }
            if seen[j - 1][i - 1] && rows[j - 1][i - 1] != e {
                return Err(SysDefError::MetricConflict { i, j });
            }
            rows[i - 1][j - 1] = e.clone();
            rows[j - 1][i - 1] = e;
            seen[i - 1][j - 1] = true;
            seen[j - 1][i - 1] = true;
        }
        Some(rows)
    };

    if map.is_some() == metric.is_some() {
        return Err(SysDefError::MetricOrMap);
    }

    Ok(SystemDefinition {
        name,
        dimension,
        coordinates,
        metric,
        map,
        domains,
    })
}

/// Parsed curve definition; built against a metric with [`CurveDefinition::build`].
#[derive(Debug, Clone)]
pub struct CurveDefinition {
    pub parameter: String,
    pub components: BTreeMap<usize, Expr>,
    pub interval: (f64, f64),
}

impl CurveDefinition {
    pub fn build(&self, g: &DerivedMetric) -> Result<Curve, SysDefError> {
        let mut comps = Vec::with_capacity(g.dim());
        for k in 1..=g.dim() {
            comps.push(
                self.components
                    .get(&k)
                    .cloned()
                    .ok_or(SysDefError::MissingMapEntry(k))?,
            );
        }
        Ok(Curve::unchecked(self.parameter.clone(), comps, self.interval))
    }
}

pub fn parse_curve_definition(text: &str) -> Result<CurveDefinition, SysDefError> {
    let mut parameter = None;
    let mut components = BTreeMap::new();
    let mut interval = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let Some((key, value)) = split_key_value(raw, lineno)? else {
            continue;
        };
        match key.as_str() {
            "parameter" => parameter = Some(value),
            k if k.starts_with("curve.") => {
                let idx: usize = k[6..].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad curve index in '{k}'"),
                })?;
                let e = parse(&value).map_err(|source| SysDefError::BadExpr {
                    line: lineno,
                    source,
                })?;
                components.insert(idx, e);
            }
            "interval" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(SysDefError::BadValue {
                        line: lineno,
                        detail: "interval needs two bounds: 'lo hi'".into(),
                    });
                }
                let lo: f64 = parts[0].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad bound '{}'", parts[0]),
                })?;
                let hi: f64 = parts[1].parse().map_err(|_| SysDefError::BadValue {
                    line: lineno,
                    detail: format!("bad bound '{}'", parts[1]),
                })?;
                interval = Some((lo, hi));
            }
            other => {
                return Err(SysDefError::BadValue {
                    line: lineno,
                    detail: format!("unknown key '{other}'"),
                })
            }
        }
    }

    Ok(CurveDefinition {
        parameter: parameter.ok_or(SysDefError::MissingKey("parameter"))?,
        components,
        interval: interval.ok_or(SysDefError::MissingKey("interval"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{equal_on_samples, DEFAULT_TOL};

    const CYLINDRICAL: &str = "\
# cylindrical coordinates from a Cartesian map
dimension = 3
coordinates = rho phi z
map.1 = rho*cos(phi)
map.2 = rho*sin(phi)
map.3 = z
domain.rho = 0.5 2
domain.phi = 0.1 3
domain.z = -1 1
";

    #[test]
    fn map_based_definition_builds() {
        let def = parse_system_definition(CYLINDRICAL).unwrap();
        let g = def.build(0).unwrap();
        assert_eq!(g.dim(), 3);
        let v = equal_on_samples(
            g.lower(2, 2),
            &parse("rho^2").unwrap(),
            g.domain(),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(v.equal);
        assert!(g.jacobian().is_some());
    }

    #[test]
    fn metric_based_definition_builds() {
        let text = "\
name = sphere_surface
dimension = 2
coordinates = theta phi
metric.1.1 = 1
metric.2.2 = sin(theta)^2
domain.theta = 0.3 2.8
domain.phi = 0.1 6
";
        let def = parse_system_definition(text).unwrap();
        assert_eq!(def.name.as_deref(), Some("sphere_surface"));
        let g = def.build(3).unwrap();
        assert!(g.is_orthogonal());
        assert!(g.jacobian().is_none());
    }

    #[test]
    fn both_metric_and_map_rejected() {
        let text = format!("{CYLINDRICAL}metric.1.1 = 1\n");
        assert!(matches!(
            parse_system_definition(&text),
            Err(SysDefError::MetricOrMap)
        ));
    }

    #[test]
    fn missing_domain_is_reported() {
        let text = "\
dimension = 2
coordinates = a b
metric.1.1 = 1
metric.2.2 = 1
domain.a = 0 1
";
        let def = parse_system_definition(text).unwrap();
        assert!(matches!(def.build(0), Err(SysDefError::MissingDomain(c)) if c == "b"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "\
dimension = 3
coordinates = a b c
map.1 = sin(
";
        match parse_system_definition(text) {
            Err(SysDefError::BadExpr { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected BadExpr, got {other:?}"),
        }
    }

    #[test]
    fn curve_definition_round_trip() {
        let text = "\
parameter = t
curve.1 = 1.5
curve.2 = t
curve.3 = 0
interval = 0 6.2832
";
        let def = parse_curve_definition(text).unwrap();
        assert_eq!(def.parameter, "t");
        assert_eq!(def.interval.0, 0.0);
        let g = crate::systems::cylindrical().unwrap();
        let curve = def.build(&g).unwrap();
        assert_eq!(curve.components().len(), 3);
    }
}
