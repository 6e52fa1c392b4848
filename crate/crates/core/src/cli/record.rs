//! JSON run records.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::game::{Assignment, ProjectionGame};
use crate::rational::{display, to_f64, Rational};
use crate::report::{AlgorithmRun, Guarantee, SolveReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteeRecord {
    /// `none`, `edges`, `fraction-of-optimum` or `optimal`.
    pub kind: &'static str,
    /// Exact rational, as `p/q` or an integer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_f64: Option<f64>,
    /// Human-readable form of the promise.
    pub statement: String,
}

impl GuaranteeRecord {
    pub fn new(g: &Guarantee) -> Self {
        let exact = |r: &Rational| (Some(display(r)), Some(to_f64(r)));
        let (kind, (value, value_f64), statement) = match g {
            Guarantee::None => ("none", (None, None), "no promise".to_string()),
            Guarantee::Edges(r) => ("edges", exact(r), format!("satisfied >= {}", display(r))),
            Guarantee::FractionOfOptimum(r) => (
                "fraction-of-optimum",
                exact(r),
                format!("satisfied >= {}*OPT", display(r)),
            ),
            Guarantee::Optimal => ("optimal", (None, None), "satisfied = OPT".to_string()),
        };
        GuaranteeRecord {
            kind,
            value,
            value_f64,
            statement,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakdownRecord {
    pub algorithm: String,
    pub satisfied: usize,
    pub guarantee: GuaranteeRecord,
    pub guarantee_met: Option<bool>,
}

impl BreakdownRecord {
    pub fn new(run: &AlgorithmRun) -> Self {
        BreakdownRecord {
            algorithm: run.algorithm.name().to_string(),
            satisfied: run.satisfied,
            guarantee: GuaranteeRecord::new(&run.guarantee),
            guarantee_met: run.guarantee.holds(run.satisfied, None),
        }
    }
}

/// One solver invocation on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    /// Hex SHA-256 of the instance file bytes.
    pub digest: String,
    pub algorithm: String,
    pub winner: Option<String>,
    pub satisfied: usize,
    pub edges: usize,
    pub guarantee: GuaranteeRecord,
    /// `null` when checking needs the optimum.
    pub guarantee_met: Option<bool>,
    pub seed: Option<u64>,
    pub assignment: Assignment,
    pub breakdown: Vec<BreakdownRecord>,
    /// Command-specific fields.
    pub details: Map<String, Value>,
    /// Present only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunRecord {
    pub fn new(
        command: String,
        instance: Option<String>,
        digest: String,
        game: &ProjectionGame,
        report: &SolveReport,
    ) -> Self {
        RunRecord {
            version: TOOL_VERSION,
            command,
            instance,
            digest,
            algorithm: report.algorithm.name().to_string(),
            winner: report.winner.map(|w| w.name().to_string()),
            satisfied: report.satisfied,
            edges: game.edge_count(),
            guarantee: GuaranteeRecord::new(&report.guarantee),
            guarantee_met: report.guarantee.holds(report.satisfied, None),
            seed: report.seed,
            assignment: report.assignment.clone(),
            breakdown: report.breakdown.iter().map(BreakdownRecord::new).collect(),
            details: Map::new(),
            elapsed_ms: None,
        }
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("plain data serializes"),
        );
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
