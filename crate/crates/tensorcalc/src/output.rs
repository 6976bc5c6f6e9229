//! Structured output documents for the CLI: component tables, scalar values
//! and verification reports, in text or JSON form.

use crate::expr::{render, Expr};
use crate::report::Check;
use crate::tensor::{index_tuples, TensorField, Variance};
use serde::{Deserialize, Serialize};

/// One non-zero component: 1-based index tuple plus the rendered expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub index: Vec<usize>,
    pub expr: String,
}

/// A rendered component table. Zero components are omitted, which the
/// `zeros_omitted` marker makes explicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub system: String,
    pub operation: String,
    /// Variance signature as a token of 'u'/'d' letters, one per slot.
    pub signature: String,
    pub weight: i64,
    pub zeros_omitted: bool,
    pub entries: Vec<Entry>,
}

impl TableDoc {
    pub fn from_field(system: &str, operation: &str, field: &TensorField) -> TableDoc {
        let signature: String = field.signature().iter().map(|v| v.letter()).collect();
        let entries = field
            .indices()
            .into_iter()
            .filter(|idx| !field.get(idx).is_zero())
            .map(|idx| Entry {
                expr: render(field.get(&idx)),
                index: idx,
            })
            .collect();
        TableDoc {
            system: system.to_string(),
            operation: operation.to_string(),
            signature,
            weight: field.weight,
            zeros_omitted: true,
            entries,
        }
    }

    pub fn from_components(
        system: &str,
        operation: &str,
        signature: &str,
        dim: usize,
        components: &[Expr],
    ) -> TableDoc {
        let rank = signature.len();
        let entries = index_tuples(dim, rank)
            .into_iter()
            .zip(components.iter())
            .filter(|(_, e)| !e.is_zero())
            .map(|(idx, e)| Entry {
                index: idx,
                expr: render(e),
            })
            .collect();
        TableDoc {
            system: system.to_string(),
            operation: operation.to_string(),
            signature: signature.to_string(),
            weight: 0,
            zeros_omitted: true,
            entries,
        }
    }

    pub fn scalar(system: &str, operation: &str, value: &Expr) -> TableDoc {
        TableDoc::from_components(system, operation, "", 1, std::slice::from_ref(value))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} on {}  (signature '{}', weight {}, zeros omitted)\n",
            self.operation, self.system, self.signature, self.weight
        ));
        if self.entries.is_empty() {
            out.push_str("  all components are zero\n");
        }
        for e in &self.entries {
            if e.index.is_empty() {
                out.push_str(&format!("  value = {}\n", e.expr));
            } else {
                let idx: Vec<String> = e.index.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("  [{}] = {}\n", idx.join(","), e.expr));
            }
        }
        out
    }
}

/// Numeric result document (for curve lengths).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub system: String,
    pub operation: String,
    pub value: f64,
}

impl ValueDoc {
    pub fn to_text(&self) -> String {
        format!("# {} on {}\n  value = {:.12}\n", self.operation, self.system, self.value)
    }
}

/// Verification report document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            name: c.name.clone(),
            passed: c.passed,
            max_residual: c.max_residual,
        }
    }
}

pub fn checks_to_text(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        out.push_str(&format!(
            "{status}  {}  (max residual {:.3e})\n",
            c.name, c.max_residual
        ));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    out
}

/// Variance signature parsing, the inverse of the 'u'/'d' token.
pub fn signature_from_token(token: &str) -> Option<Vec<Variance>> {
    token
        .chars()
        .map(|c| match c {
            'u' => Some(Variance::Up),
            'd' => Some(Variance::Down),
            _ => None,
        })
        .collect()
}
