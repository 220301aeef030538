//! JSON report types. The layout is documented in `docs/report-schema.md`.

use serde::Serialize;

use aecolor::{Color, EdgeColoring, Girth, Graph, Rational, VertexId};

use crate::config::ExperimentConfig;

/// `[u, v, color]` per live edge, color 0 for uncolored.
pub fn coloring_triples(g: &Graph, c: &EdgeColoring) -> Vec<[usize; 3]> {
    g.edges()
        .map(|(e, u, v)| [u.0, v.0, c.get(e).unwrap_or(0) as usize])
        .collect()
}

pub fn edge_pairs(g: &Graph) -> Vec<[usize; 2]> {
    g.edges().map(|(_, u, v)| [u.0, v.0]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub girth: Girth,
    pub mad: Rational,
}

impl GraphStats {
    pub fn of(g: &Graph, mad: Rational) -> Self {
        GraphStats {
            n: g.vertex_count(),
            m: g.edge_count(),
            max_degree: g.max_degree(),
            girth: g.girth(),
            mad,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceOutcome {
    /// mad filter rejected the instance.
    Skipped,
    /// Bound confirmed, or the colorer succeeded without fallback.
    Success,
    FallbackSuccess,
    /// A bound or a coloring check failed.
    Violation,
    /// The exact solver ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub seed: u64,
    pub stats: GraphStats,
    pub outcome: InstanceOutcome,
    pub k: Color,
    pub elapsed_ms: f64,
    /// Present for every non-skipped instance, so results can be re-checked.
    pub edges: Option<Vec<[usize; 2]>>,
    pub coloring: Option<Vec<[usize; 3]>>,
    pub mad_witness: Option<Vec<VertexId>>,
    pub moves: Option<aecolor::colorer::MoveCounts>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub eligible: usize,
    pub success: usize,
    pub fallback_success: usize,
    pub violation: usize,
    pub unknown: usize,
    /// Share of eligible instances finished without the exact fallback.
    pub pure_rate: Option<f64>,
    pub elapsed_ms: f64,
}

impl Summary {
    pub fn of(records: &[InstanceRecord], elapsed_ms: f64) -> Self {
        let count = |o| records.iter().filter(|r| r.outcome == o).count();
        let eligible = records.len() - count(InstanceOutcome::Skipped);
        let success = count(InstanceOutcome::Success);
        Summary {
            instances: records.len(),
            eligible,
            success,
            fallback_success: count(InstanceOutcome::FallbackSuccess),
            violation: count(InstanceOutcome::Violation),
            unknown: count(InstanceOutcome::Unknown),
            pure_rate: (eligible > 0).then(|| success as f64 / eligible as f64),
            elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub experiment: &'static str,
    pub config: ExperimentConfig,
    pub records: Vec<InstanceRecord>,
    pub summary: Summary,
}
