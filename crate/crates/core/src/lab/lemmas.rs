//! Structural predicates that every acyclically edge `k`-critical graph must
//! satisfy. The predicates run on any graph; [`lemma_suite`] only picks the
//! ones whose degree hypotheses match `k`, and [`certified_lemma_suite`]
//! additionally certifies criticality so a violation means a real bug.
//!
//! Notation: a `d`-vertex has degree exactly `d`, a `d+`-vertex at least `d`,
//! and `n_d(v)` counts the neighbors of `v` of degree `d`.

use serde::Serialize;

use crate::coloring::Color;
use crate::graph::{Graph, VertexId};
use crate::solver::{is_critical, Criticality, SolveBudget};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    /// The graph is 2-connected.
    TwoConnected,
    /// `Delta >= 3` whenever `k > Delta`.
    MaxDegreeAtLeastThree,
    /// For `k <= 2 Delta - 2`: a vertex next to a 2-vertex has at least
    /// `k - Delta + 1` neighbors of degree at least `k - Delta + 2`.
    HeavyNeighborsNearTwoVertex,
    /// For `k > Delta`: neighbors of a 2-vertex are `(k - Delta + 3)+`-vertices.
    NeighborOfTwoVertex,
    /// For `k = Delta + 1`: `n_2(v) <= Delta - 2`.
    TwoVertexCount,
    /// For `k = Delta + 2`: `n_2(v) > 0` implies `n_2(v) + n_3(v) <= Delta - 3`.
    TwoAndThreeVertexCount,
    /// For `k >= Delta + 2`: neighbors of a 3-vertex are `(k - Delta + 2)+`-vertices.
    ThreeVertexNeighbors,
    /// For `k = Delta + 2`: a 3-vertex with a 4-neighbor `x` has its other
    /// neighbors `y`, `z` of degree 5+, one of them next to three 4+-vertices
    /// and the other next to two (three if its degree is 5).
    ThreeVertexNextToFour,
    /// For `k = Delta + 2`: a `t`-vertex with `t >= 5` has `n_2 <= t - 4`,
    /// and `n_2 = t - 4` forces `n_3 = 0`.
    BigVertexTwoCount,
    /// For `k = Delta + 2`: a 5-vertex has `n_2 + n_3 <= 3`.
    FiveVertex,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::TwoConnected,
        LemmaId::MaxDegreeAtLeastThree,
        LemmaId::HeavyNeighborsNearTwoVertex,
        LemmaId::NeighborOfTwoVertex,
        LemmaId::TwoVertexCount,
        LemmaId::TwoAndThreeVertexCount,
        LemmaId::ThreeVertexNeighbors,
        LemmaId::ThreeVertexNextToFour,
        LemmaId::BigVertexTwoCount,
        LemmaId::FiveVertex,
    ];

    /// `None` if the predicate's hypothesis on `k` holds for `g`, otherwise
    /// the reason it does not apply.
    pub fn inapplicable(self, g: &Graph, k: Color) -> Option<String> {
        let delta = g.max_degree() as i64;
        let k = k as i64;
        let (ok, needs) = match self {
            LemmaId::TwoConnected => (true, ""),
            LemmaId::MaxDegreeAtLeastThree | LemmaId::NeighborOfTwoVertex => (k > delta, "k > Delta"),
            LemmaId::HeavyNeighborsNearTwoVertex => (k <= 2 * delta - 2, "k <= 2 Delta - 2"),
            LemmaId::TwoVertexCount => (k == delta + 1, "k = Delta + 1"),
            LemmaId::ThreeVertexNeighbors => (k >= delta + 2, "k >= Delta + 2"),
            LemmaId::TwoAndThreeVertexCount
            | LemmaId::ThreeVertexNextToFour
            | LemmaId::BigVertexTwoCount
            | LemmaId::FiveVertex => (k == delta + 2, "k = Delta + 2"),
        };
        (!ok).then(|| format!("requires {needs}; k = {k}, Delta = {delta}"))
    }

    /// Evaluates the predicate ignoring its hypothesis on `k`.
    pub fn evaluate(self, g: &Graph, k: Color) -> Option<Witness> {
        match self {
            LemmaId::TwoConnected => two_connected_witness(g),
            LemmaId::MaxDegreeAtLeastThree => (g.max_degree() < 3).then(|| Witness {
                vertex: None,
                related: Vec::new(),
            }),
            _ => g.vertices().find_map(|v| self.violation_at(g, k, v)),
        }
    }

    /// The violation centered at `v`, for the per-vertex predicates.
    pub fn violation_at(self, g: &Graph, k: Color, v: VertexId) -> Option<Witness> {
        let delta = g.max_degree() as i64;
        let k = k as i64;
        let d = g.degree(v);
        let n2 = g.neighbors_of_degree(v, 2);
        let n3 = g.neighbors_of_degree(v, 3);
        let at = |related: Vec<VertexId>| {
            Some(Witness {
                vertex: Some(v),
                related,
            })
        };
        let low_neighbors = |threshold: i64| -> Vec<VertexId> {
            g.neighbors(v).filter(|&w| (g.degree(w) as i64) < threshold).collect()
        };
        match self {
            LemmaId::TwoConnected => {
                (!g.is_2_connected() && g.articulation_points().contains(&v)).then(|| Witness {
                    vertex: Some(v),
                    related: Vec::new(),
                })
            }
            LemmaId::MaxDegreeAtLeastThree => None,
            LemmaId::HeavyNeighborsNearTwoVertex => {
                if n2 == 0 {
                    return None;
                }
                let heavy = g
                    .neighbors(v)
                    .filter(|&w| g.degree(w) as i64 >= k - delta + 2)
                    .count() as i64;
                if heavy < k - delta + 1 {
                    at(g.neighbors(v).filter(|&w| g.degree(w) == 2).collect())
                } else {
                    None
                }
            }
            LemmaId::NeighborOfTwoVertex => {
                if d != 2 {
                    return None;
                }
                let low = low_neighbors(k - delta + 3);
                if low.is_empty() {
                    None
                } else {
                    at(low)
                }
            }
            LemmaId::TwoVertexCount => {
                if n2 as i64 > delta - 2 {
                    at(g.neighbors(v).filter(|&w| g.degree(w) == 2).collect())
                } else {
                    None
                }
            }
            LemmaId::TwoAndThreeVertexCount => {
                if n2 > 0 && (n2 + n3) as i64 > delta - 3 {
                    at(g.neighbors(v).filter(|&w| matches!(g.degree(w), 2 | 3)).collect())
                } else {
                    None
                }
            }
            LemmaId::ThreeVertexNeighbors => {
                if d != 3 {
                    return None;
                }
                let low = low_neighbors(k - delta + 2);
                if low.is_empty() {
                    None
                } else {
                    at(low)
                }
            }
            LemmaId::ThreeVertexNextToFour => three_next_to_four(g, v),
            LemmaId::BigVertexTwoCount => {
                if d < 5 {
                    return None;
                }
                let bad = n2 > d - 4 || (n2 == d - 4 && n3 > 0);
                if bad {
                    at(g.neighbors(v).filter(|&w| matches!(g.degree(w), 2 | 3)).collect())
                } else {
                    None
                }
            }
            LemmaId::FiveVertex => {
                if d == 5 && n2 + n3 > 3 {
                    at(g.neighbors(v).filter(|&w| matches!(g.degree(w), 2 | 3)).collect())
                } else {
                    None
                }
            }
        }
    }

    /// Whether `w` still demonstrates a violation of this predicate on `g`.
    pub fn recheck(self, g: &Graph, k: Color, w: &Witness) -> bool {
        match (self, w.vertex) {
            (LemmaId::TwoConnected, None) => !g.is_2_connected(),
            (LemmaId::MaxDegreeAtLeastThree, None) => g.max_degree() < 3,
            (_, Some(v)) => v.0 < g.vertex_count() && self.violation_at(g, k, v).as_ref() == Some(w),
            _ => false,
        }
    }
}

/// A cut vertex, or no vertex at all when the graph is disconnected or too
/// small to be 2-connected.
fn two_connected_witness(g: &Graph) -> Option<Witness> {
    if g.is_2_connected() {
        return None;
    }
    let vertex = g.articulation_points().first().copied();
    Some(Witness {
        vertex,
        related: Vec::new(),
    })
}

fn three_next_to_four(g: &Graph, v: VertexId) -> Option<Witness> {
    if g.degree(v) != 3 {
        return None;
    }
    let nbrs: Vec<VertexId> = g.neighbors(v).collect();
    let heavy = |w: VertexId| g.neighbors_of_degree_at_least(w, 4);
    // Second clause read symmetrically, since the naming of y and z is free.
    let first_ok = |y: VertexId| heavy(y) >= 3;
    let second_ok = |z: VertexId| heavy(z) >= if g.degree(z) == 5 { 3 } else { 2 };
    for (i, &x) in nbrs.iter().enumerate() {
        if g.degree(x) != 4 {
            continue;
        }
        let others: Vec<VertexId> = nbrs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| w)
            .collect();
        let (y, z) = (others[0], others[1]);
        let big = g.degree(y) >= 5 && g.degree(z) >= 5;
        let split = (first_ok(y) && second_ok(z)) || (first_ok(z) && second_ok(y));
        if !big || !split {
            return Some(Witness {
                vertex: Some(v),
                related: vec![x, y, z],
            });
        }
    }
    None
}

/// The vertex where a predicate fails and the neighbors that make it fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: Option<VertexId>,
    pub related: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LemmaStatus {
    Holds,
    Violated { witness: Witness },
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaPredicateResult {
    pub lemma: LemmaId,
    #[serde(flatten)]
    pub status: LemmaStatus,
}

impl LemmaPredicateResult {
    /// Holds, or does not apply.
    pub fn holds(&self) -> bool {
        !matches!(self.status, LemmaStatus::Violated { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            LemmaStatus::Violated { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Runs one predicate, honoring its hypothesis on `k`.
pub fn check(lemma: LemmaId, g: &Graph, k: Color) -> LemmaPredicateResult {
    let status = match lemma.inapplicable(g, k) {
        Some(reason) => LemmaStatus::NotApplicable { reason },
        None => match lemma.evaluate(g, k) {
            Some(witness) => LemmaStatus::Violated { witness },
            None => LemmaStatus::Holds,
        },
    };
    LemmaPredicateResult { lemma, status }
}

pub fn check_neighbor_of_2vertex(g: &Graph, k: Color) -> LemmaPredicateResult {
    check(LemmaId::NeighborOfTwoVertex, g, k)
}

/// In the `k = Delta + 1` setting.
pub fn check_2vertex_count(g: &Graph) -> LemmaPredicateResult {
    check(LemmaId::TwoVertexCount, g, g.max_degree() as Color + 1)
}

/// In the `k = Delta + 2` setting.
pub fn check_2and3_count(g: &Graph) -> LemmaPredicateResult {
    check(LemmaId::TwoAndThreeVertexCount, g, g.max_degree() as Color + 2)
}

pub fn check_3vertex_neighbors(g: &Graph, k: Color) -> LemmaPredicateResult {
    check(LemmaId::ThreeVertexNeighbors, g, k)
}

pub fn check_3adj4(g: &Graph) -> LemmaPredicateResult {
    check(LemmaId::ThreeVertexNextToFour, g, g.max_degree() as Color + 2)
}

pub fn check_tvertex_2s(g: &Graph) -> LemmaPredicateResult {
    check(LemmaId::BigVertexTwoCount, g, g.max_degree() as Color + 2)
}

pub fn check_5vertex(g: &Graph) -> LemmaPredicateResult {
    check(LemmaId::FiveVertex, g, g.max_degree() as Color + 2)
}

/// Every predicate at palette size `k`, inapplicable ones included.
pub fn lemma_suite(g: &Graph, k: Color) -> Vec<LemmaPredicateResult> {
    LemmaId::ALL.iter().map(|&l| check(l, g, k)).collect()
}

/// Predicates applicable at `k` that fail at `v`.
pub fn failing_at(g: &Graph, k: Color, v: VertexId) -> Vec<LemmaId> {
    LemmaId::ALL
        .iter()
        .copied()
        .filter(|l| l.inapplicable(g, k).is_none())
        .filter(|l| match l {
            LemmaId::MaxDegreeAtLeastThree => l.evaluate(g, k).is_some(),
            _ => l.violation_at(g, k, v).is_some(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaSuiteReport {
    pub graph_id: String,
    pub k: Color,
    pub criticality: Criticality,
    pub results: Vec<LemmaPredicateResult>,
}

impl LemmaSuiteReport {
    /// A predicate fails on a graph certified critical.
    pub fn contradicts(&self) -> bool {
        self.criticality == Criticality::Critical && self.results.iter().any(|r| !r.holds())
    }
}

/// Certifies criticality at `k` and evaluates the suite alongside.
pub fn certified_lemma_suite(g: &Graph, k: Color, budget: &SolveBudget) -> LemmaSuiteReport {
    let report = is_critical(g, k, budget);
    LemmaSuiteReport {
        graph_id: report.graph_id,
        k,
        criticality: report.criticality,
        results: lemma_suite(g, k),
    }
}
