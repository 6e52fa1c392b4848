use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::game::Assignment;
use crate::rational::{meets, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "one-neighbor")]
    OneNeighbor,
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "kyn")]
    KnowYourNeighbors,
    #[serde(rename = "kynn")]
    KnowNeighborsNeighbors,
    #[serde(rename = "kynn-uniform")]
    KnowNeighborsNeighborsUniform,
    #[serde(rename = "dnc")]
    DivideAndConquer,
    #[serde(rename = "dnc-uniform")]
    DivideAndConquerUniform,
    #[serde(rename = "best")]
    BestOf,
    #[serde(rename = "exact")]
    BruteForce,
    #[serde(rename = "dp")]
    TreeDp,
    #[serde(rename = "smooth-exact")]
    SmoothExact,
    #[serde(rename = "smooth-approx")]
    SmoothApprox,
    #[serde(rename = "ptas")]
    Ptas,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::OneNeighbor => "one-neighbor",
            Algorithm::Greedy => "greedy",
            Algorithm::KnowYourNeighbors => "kyn",
            Algorithm::KnowNeighborsNeighbors => "kynn",
            Algorithm::KnowNeighborsNeighborsUniform => "kynn-uniform",
            Algorithm::DivideAndConquer => "dnc",
            Algorithm::DivideAndConquerUniform => "dnc-uniform",
            Algorithm::BestOf => "best",
            Algorithm::BruteForce => "exact",
            Algorithm::TreeDp => "dp",
            Algorithm::SmoothExact => "smooth-exact",
            Algorithm::SmoothApprox => "smooth-approx",
            Algorithm::Ptas => "ptas",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What an algorithm promises about its output on inputs meeting its preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guarantee {
    None,
    /// At least this many satisfied edges.
    Edges(Rational),
    /// At least this fraction of the optimum.
    FractionOfOptimum(Rational),
    /// Equal to the optimum.
    Optimal,
}

impl Guarantee {
    /// Checks the promise against a known optimum.
    pub fn holds(&self, satisfied: usize, optimum: Option<usize>) -> Option<bool> {
        match self {
            Guarantee::None => Some(true),
            Guarantee::Edges(r) => Some(meets(satisfied, r)),
            Guarantee::FractionOfOptimum(r) => {
                optimum.map(|opt| meets(satisfied, &(*r * crate::rational::int(opt))))
            }
            Guarantee::Optimal => optimum.map(|opt| satisfied == opt),
        }
    }
}

/// Score of one constituent algorithm inside a combined run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmRun {
    pub algorithm: Algorithm,
    pub satisfied: usize,
    pub guarantee: Guarantee,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub assignment: Assignment,
    pub satisfied: usize,
    pub algorithm: Algorithm,
    /// For combined runs, the constituent that produced the assignment.
    pub winner: Option<Algorithm>,
    pub guarantee: Guarantee,
    pub elapsed: Duration,
    pub seed: Option<u64>,
    pub breakdown: Vec<AlgorithmRun>,
}

impl SolveReport {
    pub fn new(
        algorithm: Algorithm,
        assignment: Assignment,
        satisfied: usize,
        guarantee: Guarantee,
    ) -> Self {
        SolveReport {
            assignment,
            satisfied,
            algorithm,
            winner: None,
            guarantee,
            elapsed: Duration::ZERO,
            seed: None,
            breakdown: Vec::new(),
        }
    }

    pub fn guarantee_met(&self) -> bool {
        self.guarantee.holds(self.satisfied, None).unwrap_or(true)
    }

    pub(crate) fn timed(mut self, start: std::time::Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}
