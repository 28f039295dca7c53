//! Check outcomes: a [`DiagramReport`] collects every law violation found by a
//! validator, with a human-readable witness for each.

use serde::{Deserialize, Serialize};

/// A single violated law, with the data that witnesses the violation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    /// Which law or shape condition failed (e.g. `"associativity"`, `"NotIsomorphism"`).
    pub check: String,
    /// The objects/morphisms at which it failed.
    pub witness: String,
}

/// Outcome of an exhaustive diagram/law check.
///
/// `passed` is true exactly when `failures` is empty; warnings never affect it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

impl DiagramReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.failures.push(Failure {
            check: check.into(),
            witness: witness.into(),
        });
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    /// Fold another report into this one, prefixing its failures with `scope`.
    pub fn absorb(&mut self, scope: &str, other: DiagramReport) {
        for f in other.failures {
            self.failures.push(Failure {
                check: format!("{scope}/{}", f.check),
                witness: f.witness,
            });
        }
        for w in other.warnings {
            self.warnings.push(format!("{scope}: {w}"));
        }
    }

    /// Deterministic ordering regardless of how checks were scheduled.
    pub fn finish(mut self) -> Self {
        self.failures.sort();
        self.failures.dedup();
        self.warnings.sort();
        self.warnings.dedup();
        self
    }

    pub fn expect_pass(&self, what: &str) {
        assert!(
            self.passed(),
            "{what}: {} failure(s), first: {:?}",
            self.failures.len(),
            self.failures.first()
        );
    }
}

/// Structural errors: malformed tables, out-of-range indices, budget overruns.
/// Law violations are reported through [`DiagramReport`], not through this type.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum CatError {
    #[error("malformed spec: {0}")]
    MalformedSpec(String),
    #[error("non-composable adjacency at path index {index}: {detail}")]
    Composition { index: usize, detail: String },
    #[error("diagram shape error: {0}")]
    DiagramShape(String),
    #[error("component shape error: {0}")]
    ComponentShape(String),
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("not an equivalence: {0}")]
    NotEquivalence(String),
    #[error("no witness isomorphism found: {0}")]
    WitnessNotFound(String),
    #[error("relation witness not found: {0}")]
    RelationWitnessNotFound(String),
    #[error("closure exceeded cap of {cap} objects")]
    ClosureOverflow { cap: usize },
    #[error("search budget of {budget} exceeded: {context}")]
    SearchBudgetExceeded { budget: usize, context: String },
    #[error("partial-action data requires all domains full: {0}")]
    RequiresGlobal(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("grade domain error: {0}")]
    GradeDomainError(String),
    #[error("not a covariant pair: {0}")]
    NotCovariantPair(String),
    #[error("not continuous: {0}")]
    NotContinuous(String),
    #[error("invalid idempotent family: {0}")]
    InvalidIdempotentFamily(String),
    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, CatError>;
