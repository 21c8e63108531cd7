//! Two-point quadrature rules for Riemann-Stieltjes integrals `∫ f du`,
//! with closed-form `L^p` error bounds and an empirical certification
//! harness that checks every bound against an independent integration
//! oracle, including equality at the extremal configurations where the
//! bounds are sharp.
//!
//! The crate is organized around seven modules:
//!
//! * [`catalog`] — concrete integrands/integrators with machine-checkable
//!   regularity metadata (Hölder/Lipschitz constants, monotonicity, ...).
//! * [`variation`] — oscillation and p-variation estimators.
//! * [`oracle`] — high-accuracy evaluation of `∫ f du`, independent of the
//!   quadrature rule implementation.
//! * [`rules`] — the two-point rule `Q = [u(x)-u(a)]f(t0) + [u(b)-u(x)]f(t1)`,
//!   node presets and composite refinements.
//! * [`bounds`] — every error-bound formula as a pure function.
//! * [`certify`] — rule + oracle + bound orchestrated into pass/fail
//!   certificates, node-grid sweeps and the sharpness suite.
//! * [`cli`] — the `rsquad` command-line front end.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod bounds;
pub mod catalog;
pub mod certify;
pub mod cli;
pub mod oracle;
pub mod quad;
pub mod rules;
pub mod variation;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported catalog kind: {0}")]
    UnsupportedKind(String),
    #[error("invalid catalog parameters: {0}")]
    InvalidParameters(String),
    #[error("point {point} outside domain [{a}, {b}]")]
    OutsideDomain { point: f64, a: f64, b: f64 },
    #[error("empty or inverted interval [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("integral does not exist: f and u share a discontinuity at {0}")]
    SharedDiscontinuity(f64),
    #[error("oracle did not converge within {evals} evaluations (gap {gap:e})")]
    NonConvergence { evals: u64, gap: f64 },
    #[error("invalid node triple: {0}")]
    BadNodes(String),
    #[error("hypothesis mismatch for {theorem}: {reason}")]
    HypothesisMismatch { theorem: &'static str, reason: String },
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A closed real interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::BadInterval(a, b));
        }
        Ok(Interval { a, b })
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.a <= t && t <= self.b
    }

    /// Subinterval check with a relative slop for endpoints produced by
    /// floating-point grid arithmetic.
    pub fn contains_interval(&self, c: f64, d: f64) -> bool {
        let eps = 1e-12 * self.length().max(1.0);
        c >= self.a - eps && d <= self.b + eps && c <= d
    }
}

/// Kahan compensated summation; fixed left-to-right order for determinism.
pub(crate) fn compensated_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for t in terms {
        let y = t - c;
        let s = sum + y;
        c = (s - sum) - y;
        sum = s;
    }
    sum
}
