//! Pass/fail records produced by the verification suites.

/// One named check with its worst oracle residual.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, max_residual: f64) -> Self {
        Check {
            name: name.into(),
            passed,
            max_residual,
        }
    }

    /// Exact checks (integer identities, structural equalities).
    pub fn exact(name: impl Into<String>, passed: bool) -> Self {
        Check::new(name, passed, 0.0)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
