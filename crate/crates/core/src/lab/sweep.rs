//! Exhaustive checks over all small connected graphs.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::coloring::Color;
use crate::exec::Execution;
use crate::graph::Graph;
use crate::lab::enumerate::connected_graphs;
use crate::lab::fact2::{fact2_verify, Fact2Check};
use crate::lab::lemmas::{lemma_suite, LemmaPredicateResult};
use crate::mad::mad_exact;
use crate::rational::Rational;
use crate::solver::{chi_a_exact, for_each_acyclic_coloring, is_critical, Criticality, Enumeration, SolveBudget};

/// One implication "mad below `threshold` gives index at most `Delta + extra`".
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub applies: bool,
    /// `None` if it does not apply or the index is unknown.
    pub holds: Option<bool>,
}

impl BoundCheck {
    fn new(mad: Rational, threshold: i64, chi: Option<Color>, limit: Color) -> Self {
        let applies = mad < Rational::from_integer(threshold);
        BoundCheck {
            applies,
            holds: if applies { chi.map(|c| c <= limit) } else { None },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub mad: Rational,
    pub chi_a: Option<Color>,
    pub mad_below_4: BoundCheck,
    pub mad_below_3: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremSweep {
    pub n_max: usize,
    pub graphs: usize,
    pub mad_below_4: usize,
    pub mad_below_3: usize,
    pub violations_mad4: Vec<String>,
    pub violations_mad3: Vec<String>,
    pub unknown: Vec<String>,
    #[serde(skip)]
    pub records: Vec<GraphRecord>,
}

impl TheoremSweep {
    pub fn passed(&self) -> bool {
        self.violations_mad4.is_empty() && self.violations_mad3.is_empty() && self.unknown.is_empty()
    }
}

pub fn graph_record(g: &Graph, budget: &SolveBudget) -> GraphRecord {
    let mad = mad_exact(g).mad;
    let chi = chi_a_exact(g, budget).value();
    let delta = g.max_degree();
    GraphRecord {
        graph6: g.graph6(),
        n: g.vertex_count(),
        m: g.edge_count(),
        delta,
        mad,
        chi_a: chi,
        mad_below_4: BoundCheck::new(mad, 4, chi, delta as Color + 2),
        mad_below_3: BoundCheck::new(mad, 3, chi, delta as Color + 1),
    }
}

/// Exact mad and acyclic chromatic index of every connected graph with at
/// least one edge on at most `n_max` vertices, checked against both bounds.
pub fn theorem_sweep(n_max: usize, budget: &SolveBudget, exec: Execution) -> TheoremSweep {
    let graphs: Vec<Graph> = connected_graphs(n_max).into_iter().filter(|g| g.edge_count() > 0).collect();
    let records = exec.map(&graphs, |g| graph_record(g, budget));
    let pick = |f: &dyn Fn(&GraphRecord) -> bool| -> Vec<String> {
        records.iter().filter(|r| f(r)).map(|r| r.graph6.clone()).collect()
    };
    TheoremSweep {
        n_max,
        graphs: records.len(),
        mad_below_4: records.iter().filter(|r| r.mad_below_4.applies).count(),
        mad_below_3: records.iter().filter(|r| r.mad_below_3.applies).count(),
        violations_mad4: pick(&|r| r.mad_below_4.holds == Some(false)),
        violations_mad3: pick(&|r| r.mad_below_3.holds == Some(false)),
        unknown: pick(&|r| r.chi_a.is_none()),
        records,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Fact2Summary {
    pub deletions: usize,
    /// Colorings checked, one per class under renaming colors.
    pub colorings: u64,
    pub violations: Vec<Fact2Check>,
    /// Colorings with no shared color and `d(u) + d(v) = k + 2`.
    pub tight_disjoint: u64,
    pub complete: bool,
}

/// Checks every acyclic `k`-coloring of every `g - e`. The degree sums do
/// not change when colors are renamed, so one coloring per renaming class
/// suffices.
pub fn fact2_over_deletions(g: &Graph, k: Color, budget: &SolveBudget) -> Fact2Summary {
    let mut s = Fact2Summary {
        complete: true,
        ..Fact2Summary::default()
    };
    for e in g.edge_ids() {
        let h = g.delete_edge(e).expect("live edge");
        s.deletions += 1;
        let outcome = for_each_acyclic_coloring(&h, k, budget, |c| {
            s.colorings += 1;
            match fact2_verify(g, k, e, c) {
                Ok(check) => {
                    if check.shared.is_empty() && check.u_side_sum == check.bound {
                        s.tight_disjoint += 1;
                    }
                    if !check.holds() {
                        s.violations.push(check);
                    }
                }
                Err(err) => panic!("enumerated coloring rejected: {err}"),
            }
            ControlFlow::Continue(())
        });
        if !matches!(outcome, Enumeration::Complete { .. }) {
            s.complete = false;
        }
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalFinding {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub k: Color,
    pub two_connected: bool,
    pub lemmas: Vec<LemmaPredicateResult>,
    pub fact2: Fact2Summary,
}

impl CriticalFinding {
    pub fn passed(&self) -> bool {
        self.two_connected
            && self.lemmas.iter().all(LemmaPredicateResult::holds)
            && self.fact2.violations.is_empty()
            && self.fact2.complete
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalSweep {
    pub n_max: usize,
    pub examined: usize,
    pub findings: Vec<CriticalFinding>,
    /// `(graph6, k)` pairs whose criticality could not be settled.
    pub unknown: Vec<(String, Color)>,
}

impl CriticalSweep {
    pub fn passed(&self) -> bool {
        self.unknown.is_empty() && self.findings.iter().all(CriticalFinding::passed)
    }

    pub fn count_at_offset(&self, offset: usize) -> usize {
        self.findings.iter().filter(|f| f.k as usize == f.delta + offset).count()
    }
}

/// Full analysis of a graph known to be `k`-critical.
pub fn analyze_critical(g: &Graph, k: Color, budget: &SolveBudget) -> CriticalFinding {
    CriticalFinding {
        graph6: g.graph6(),
        n: g.vertex_count(),
        m: g.edge_count(),
        delta: g.max_degree(),
        k,
        two_connected: g.is_2_connected(),
        lemmas: lemma_suite(g, k),
        fact2: fact2_over_deletions(g, k, budget),
    }
}

enum Found {
    Critical(CriticalFinding),
    Unknown(String, Color),
}

fn examine(g: &Graph, budget: &SolveBudget) -> Vec<Found> {
    let chi = chi_a_exact(g, budget).value();
    let delta = g.max_degree() as Color;
    let mut out = Vec::new();
    for k in [delta + 1, delta + 2] {
        match chi {
            Some(c) if c <= k => continue,
            None => {
                out.push(Found::Unknown(g.graph6(), k));
                continue;
            }
            Some(_) => {}
        }
        match is_critical(g, k, budget).criticality {
            Criticality::Critical => out.push(Found::Critical(analyze_critical(g, k, budget))),
            Criticality::Unknown => out.push(Found::Unknown(g.graph6(), k)),
            Criticality::NotCritical { .. } => {}
        }
    }
    out
}

/// Finds every connected graph on at most `n_max` vertices that is critical
/// at `Delta + 1` or `Delta + 2`, and runs the lemma suite and the degree-sum
/// check on each.
pub fn critical_sweep(n_max: usize, budget: &SolveBudget, exec: Execution) -> CriticalSweep {
    let graphs: Vec<Graph> = connected_graphs(n_max).into_iter().filter(|g| g.edge_count() > 0).collect();
    let results = exec.map(&graphs, |g| examine(g, budget));
    let mut sweep = CriticalSweep {
        n_max,
        examined: graphs.len(),
        findings: Vec::new(),
        unknown: Vec::new(),
    };
    for f in results.into_iter().flatten() {
        match f {
            Found::Critical(c) => sweep.findings.push(c),
            Found::Unknown(g6, k) => sweep.unknown.push((g6, k)),
        }
    }
    sweep
}
