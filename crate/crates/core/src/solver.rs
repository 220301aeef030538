//! Exact acyclic edge coloring by backtracking.
//!
//! Edges are colored in a fixed order: first the edges at one maximum-degree
//! vertex, whose colors are pinned to `1..=d` (any coloring can be renamed to
//! agree), then the rest by reverse smallest-last vertex order. Colors never
//! used so far are interchangeable, so only the smallest of them is tried.
//!
//! Giving `uv` the color `g` can only close a bichromatic cycle on a pair
//! `(g, m)` where `m` already appears at both `u` and `v`; for each such `m`
//! the search walks the single `(m, g)` path leaving `u`.
//!
//! Budget exhaustion is always reported as [`Decision::Unknown`], never as a
//! negative answer.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{is_acyclic, Color, EdgeColoring};
use crate::graph::{EdgeId, Graph, VertexId};

/// Largest palette the solver handles; colors are tracked in a `u128` mask.
pub const MAX_PALETTE: Color = 126;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("solve budget limits must be positive")]
pub struct InvalidBudget;

impl SolveBudget {
    pub fn new(max_nodes: u64, time_limit: Duration) -> Result<Self, InvalidBudget> {
        if max_nodes == 0 || time_limit.is_zero() {
            return Err(InvalidBudget);
        }
        Ok(SolveBudget {
            max_nodes,
            time_limit,
        })
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget {
            max_nodes: max_nodes.max(1),
            ..Self::default()
        }
    }

    pub fn unlimited() -> Self {
        SolveBudget {
            max_nodes: u64::MAX,
            time_limit: Duration::from_secs(60 * 60 * 24 * 365),
        }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            nodes_left: self.max_nodes,
            deadline: Instant::now().checked_add(self.time_limit),
            used: 0,
        }
    }
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_nodes: 200_000_000,
            time_limit: Duration::from_secs(120),
        }
    }
}

/// Budget being spent; shared by the subqueries of one top-level call.
#[derive(Clone, Debug)]
pub struct Meter {
    nodes_left: u64,
    deadline: Option<Instant>,
    used: u64,
}

impl Meter {
    #[inline]
    fn tick(&mut self) -> bool {
        if self.nodes_left == 0 {
            return false;
        }
        self.nodes_left -= 1;
        self.used += 1;
        if self.used.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.nodes_left = 0;
                    return false;
                }
            }
        }
        true
    }

    /// Search nodes expanded so far.
    pub fn nodes_used(&self) -> u64 {
        self.used
    }

    pub fn exhausted(&self) -> bool {
        self.nodes_left == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Colorable(EdgeColoring),
    NotColorable,
    Unknown,
}

impl Decision {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Decision::Colorable(_))
    }
}

/// Whether `g` has an acyclic edge coloring from `1..=k`.
pub fn is_acyclically_k_colorable(g: &Graph, k: Color, budget: &SolveBudget) -> Decision {
    decide(g, k, &mut budget.meter())
}

/// [`is_acyclically_k_colorable`] against a running meter.
pub fn decide(g: &Graph, k: Color, meter: &mut Meter) -> Decision {
    if let Some(d) = quick_refutation(g, k) {
        return d;
    }
    let mut search = Search::new(g, k);
    let mut found = None;
    let outcome = search.run(meter, &mut |s: &Search| {
        found = Some(s.to_coloring(g));
        ControlFlow::Break(())
    });
    match (outcome, found) {
        (_, Some(c)) => {
            debug_assert!(is_acyclic(g, &c) && c.is_total(g));
            Decision::Colorable(c)
        }
        (Outcome::Complete, None) => Decision::NotColorable,
        _ => Decision::Unknown,
    }
}

/// Cheap sound refutations and the edgeless case; `None` means search is needed.
fn quick_refutation(g: &Graph, k: Color) -> Option<Decision> {
    if g.edge_count() == 0 {
        return Some(Decision::Colorable(EdgeColoring::new(g, k)));
    }
    if (g.max_degree() as u64) > k as u64 {
        return Some(Decision::NotColorable);
    }
    if k > MAX_PALETTE {
        return Some(Decision::Unknown);
    }
    // Color classes are matchings, and two classes together form a forest,
    // so at most one class exceeds floor((n'-1)/2) edges.
    let active = g.vertices().filter(|&v| g.degree(v) > 0).count() as u64;
    let cap = active / 2 + (k as u64 - 1) * ((active - 1) / 2);
    if g.edge_count() as u64 > cap {
        return Some(Decision::NotColorable);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiOutcome {
    Exact { index: Color, coloring: EdgeColoring },
    /// Budget ran out. `refuted_below` is the largest `k` proven infeasible.
    Unknown { refuted_below: Option<Color> },
}

impl ChiOutcome {
    pub fn value(&self) -> Option<Color> {
        match self {
            ChiOutcome::Exact { index, .. } => Some(*index),
            ChiOutcome::Unknown { .. } => None,
        }
    }
}

/// The acyclic chromatic index, searching upward from `Delta(G)`.
pub fn chi_a_exact(g: &Graph, budget: &SolveBudget) -> ChiOutcome {
    chi_a_with_meter(g, &mut budget.meter())
}

pub fn chi_a_with_meter(g: &Graph, meter: &mut Meter) -> ChiOutcome {
    let mut k = g.max_degree() as Color;
    let mut refuted = None;
    loop {
        match decide(g, k, meter) {
            Decision::Colorable(coloring) => {
                return ChiOutcome::Exact { index: k, coloring };
            }
            Decision::NotColorable => refuted = Some(k),
            Decision::Unknown => {
                return ChiOutcome::Unknown {
                    refuted_below: refuted,
                };
            }
        }
        k += 1;
    }
}

/// Result of an exhaustive enumeration.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete { count: u64 },
    Stopped { count: u64 },
    Unknown { count: u64 },
}

/// Visits every acyclic `k`-coloring of `g` once per class under renaming of
/// colors.
pub fn for_each_acyclic_coloring<F>(g: &Graph, k: Color, budget: &SolveBudget, mut visit: F) -> Enumeration
where
    F: FnMut(&EdgeColoring) -> ControlFlow<()>,
{
    let mut count = 0;
    if g.edge_count() == 0 {
        let _ = visit(&EdgeColoring::new(g, k));
        return Enumeration::Complete { count: 1 };
    }
    match quick_refutation(g, k) {
        Some(Decision::NotColorable) => return Enumeration::Complete { count: 0 },
        Some(Decision::Unknown) => return Enumeration::Unknown { count: 0 },
        _ => {}
    }
    let mut search = Search::new(g, k);
    let mut meter = budget.meter();
    let outcome = search.run(&mut meter, &mut |s: &Search| {
        count += 1;
        visit(&s.to_coloring(g))
    });
    match outcome {
        Outcome::Complete => Enumeration::Complete { count },
        Outcome::Stopped => Enumeration::Stopped { count },
        Outcome::OutOfBudget => Enumeration::Unknown { count },
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Outcome {
    Complete,
    Stopped,
    OutOfBudget,
}

const NONE: u32 = u32::MAX;

struct Search {
    k: usize,
    stride: usize,
    /// Edges in search order as local vertex pairs.
    ends: Vec<(usize, usize)>,
    slot: Vec<EdgeId>,
    /// `at[v * stride + c]`: neighbor of `v` along its `c`-edge.
    at: Vec<u32>,
    used: Vec<u128>,
    color: Vec<Color>,
    /// Later edges sharing an endpoint with each edge, for forward checking.
    later: Vec<Vec<usize>>,
    pinned: usize,
    palette: u128,
}

impl Search {
    fn new(g: &Graph, k: Color) -> Self {
        let n = g.vertex_count();
        let k = k as usize;
        let stride = k + 1;
        let root = g
            .vertices()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("graph has edges");
        let mut rank = vec![0usize; n];
        let mut order: Vec<VertexId> = g.smallest_last_order();
        order.reverse();
        order.retain(|&v| v != root);
        order.insert(0, root);
        for (i, v) in order.iter().enumerate() {
            rank[v.0] = i;
        }
        let mut edges: Vec<(EdgeId, usize, usize)> = g.edges().map(|(e, u, v)| (e, u.0, v.0)).collect();
        edges.sort_by_key(|&(e, u, v)| {
            let (lo, hi) = (rank[u].min(rank[v]), rank[u].max(rank[v]));
            (lo != 0, hi, lo, e)
        });
        let pinned = g.degree(root);
        let ends: Vec<_> = edges.iter().map(|&(_, u, v)| (u, v)).collect();
        let slot = edges.iter().map(|&(e, _, _)| e).collect();
        let m = ends.len();
        let mut later = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = ends[i];
                let (c, d) = ends[j];
                if a == c || a == d || b == c || b == d {
                    later[i].push(j);
                }
            }
        }
        let palette = ((1u128 << stride) - 1) & !1;
        Search {
            k,
            stride,
            ends,
            slot,
            at: vec![NONE; n * stride],
            used: vec![0; n],
            color: vec![0; m],
            later,
            pinned,
            palette,
        }
    }

    #[inline]
    fn assign(&mut self, i: usize, c: usize) {
        let (u, v) = self.ends[i];
        self.at[u * self.stride + c] = v as u32;
        self.at[v * self.stride + c] = u as u32;
        self.used[u] |= 1 << c;
        self.used[v] |= 1 << c;
        self.color[i] = c as Color;
    }

    #[inline]
    fn unassign(&mut self, i: usize) {
        let (u, v) = self.ends[i];
        let c = self.color[i] as usize;
        self.at[u * self.stride + c] = NONE;
        self.at[v * self.stride + c] = NONE;
        self.used[u] &= !(1 << c);
        self.used[v] &= !(1 << c);
        self.color[i] = 0;
    }

    /// Whether coloring edge `i` with `c` closes a two-color cycle.
    #[inline]
    fn closes_cycle(&self, i: usize, c: usize) -> bool {
        let (u, v) = self.ends[i];
        let mut shared = self.used[u] & self.used[v];
        while shared != 0 {
            let mu = shared.trailing_zeros() as usize;
            shared &= shared - 1;
            let mut x = u;
            loop {
                let y = self.at[x * self.stride + mu];
                if y == NONE {
                    break;
                }
                let y = y as usize;
                if y == v {
                    return true;
                }
                let z = self.at[y * self.stride + c];
                if z == NONE {
                    break;
                }
                x = z as usize;
            }
        }
        false
    }

    #[inline]
    fn available(&self, i: usize) -> u128 {
        let (u, v) = self.ends[i];
        self.palette & !(self.used[u] | self.used[v])
    }

    fn run<F>(&mut self, meter: &mut Meter, on_leaf: &mut F) -> Outcome
    where
        F: FnMut(&Search) -> ControlFlow<()>,
    {
        if self.pinned > self.k {
            return Outcome::Complete;
        }
        for i in 0..self.pinned {
            self.assign(i, i + 1);
        }
        let r = self.dfs(self.pinned, self.pinned, meter, on_leaf);
        for i in 0..self.pinned {
            self.unassign(i);
        }
        r
    }

    fn dfs<F>(&mut self, pos: usize, max_used: usize, meter: &mut Meter, on_leaf: &mut F) -> Outcome
    where
        F: FnMut(&Search) -> ControlFlow<()>,
    {
        if pos == self.ends.len() {
            return match on_leaf(self) {
                ControlFlow::Break(()) => Outcome::Stopped,
                ControlFlow::Continue(()) => Outcome::Complete,
            };
        }
        let top = (max_used + 1).min(self.k);
        let mut cand = self.available(pos) & ((1u128 << (top + 1)) - 1);
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if !meter.tick() {
                return Outcome::OutOfBudget;
            }
            if self.closes_cycle(pos, c) {
                continue;
            }
            self.assign(pos, c);
            let dead = self.later[pos].iter().any(|&j| self.available(j) == 0);
            let r = if dead {
                Outcome::Complete
            } else {
                self.dfs(pos + 1, max_used.max(c), meter, on_leaf)
            };
            self.unassign(pos);
            if r != Outcome::Complete {
                return r;
            }
        }
        Outcome::Complete
    }

    fn to_coloring(&self, g: &Graph) -> EdgeColoring {
        let mut c = EdgeColoring::new(g, self.k as Color);
        for (i, &e) in self.slot.iter().enumerate() {
            c.set(e, self.color[i]).expect("search colors are in range");
        }
        c
    }
}

/// Why a graph is not `k`-critical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NonCriticalWitness {
    /// The graph itself has an acyclic `k`-coloring (per-slot colors).
    Colorable { coloring: Vec<Color> },
    /// Deleting this edge still leaves a graph needing more than `k` colors.
    EdgeStillHard { edge: EdgeId },
    /// Deleting an isolated vertex is a proper subgraph with the same index.
    IsolatedVertex { vertex: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Criticality {
    Critical,
    NotCritical { witness: NonCriticalWitness },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub graph_id: String,
    pub k: Color,
    #[serde(flatten)]
    pub criticality: Criticality,
    pub nodes: u64,
}

impl CriticalityReport {
    pub fn is_critical(&self) -> bool {
        self.criticality == Criticality::Critical
    }

    pub fn is_decided(&self) -> bool {
        self.criticality != Criticality::Unknown
    }
}

/// Whether `g` is acyclically edge `k`-critical: not `k`-colorable, while
/// every proper subgraph is. Colorability is monotone under subgraphs, so it
/// suffices to look at single-edge deletions (and isolated vertices).
pub fn is_critical(g: &Graph, k: Color, budget: &SolveBudget) -> CriticalityReport {
    let mut meter = budget.meter();
    let criticality = criticality_with_meter(g, k, &mut meter);
    CriticalityReport {
        graph_id: g.graph6(),
        k,
        criticality,
        nodes: meter.nodes_used(),
    }
}

fn criticality_with_meter(g: &Graph, k: Color, meter: &mut Meter) -> Criticality {
    match decide(g, k, meter) {
        Decision::Colorable(c) => {
            return Criticality::NotCritical {
                witness: NonCriticalWitness::Colorable {
                    coloring: c.slots().to_vec(),
                },
            }
        }
        Decision::Unknown => return Criticality::Unknown,
        Decision::NotColorable => {}
    }
    if let Some(vertex) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Criticality::NotCritical {
            witness: NonCriticalWitness::IsolatedVertex { vertex },
        };
    }
    let mut undecided = false;
    for e in g.edge_ids() {
        let h = g.delete_edge(e).expect("live edge");
        match decide(&h, k, meter) {
            Decision::Colorable(_) => {}
            Decision::NotColorable => {
                return Criticality::NotCritical {
                    witness: NonCriticalWitness::EdgeStillHard { edge: e },
                }
            }
            Decision::Unknown => undecided = true,
        }
    }
    if undecided {
        Criticality::Unknown
    } else {
        Criticality::Critical
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generate::gnp;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Plain enumeration over all `k^m` assignments; no pruning, no symmetry.
    fn brute_colorable(g: &Graph, k: Color) -> bool {
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        let m = edges.len();
        let total = (k as u64).pow(m as u32);
        (0..total).any(|mut code| {
            let mut c = EdgeColoring::new(g, k);
            for &e in &edges {
                c.set(e, (code % k as u64) as Color + 1).unwrap();
                code /= k as u64;
            }
            is_acyclic(g, &c)
        })
    }

    fn brute_chi(g: &Graph) -> Color {
        (g.max_degree() as Color..).find(|&k| brute_colorable(g, k)).unwrap()
    }

    fn solve(g: &Graph, k: Color) -> Decision {
        is_acyclically_k_colorable(g, k, &SolveBudget::default())
    }

    #[test]
    fn paper_examples() {
        assert!(solve(&Graph::cycle(5), 3).is_colorable());
        assert_eq!(solve(&Graph::complete(4), 4), Decision::NotColorable);
        assert!(solve(&Graph::complete_bipartite(3, 3), 5).is_colorable());
        let b = SolveBudget::default();
        assert_eq!(chi_a_exact(&Graph::cycle(7), &b).value(), Some(3));
        assert_eq!(chi_a_exact(&Graph::complete(4), &b).value(), Some(5));
    }

    #[test]
    fn petersen_needs_four() {
        let g = Graph::petersen();
        let out = chi_a_exact(&g, &SolveBudget::default());
        assert_eq!(out.value(), Some(4));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let g = gnp(5, 0.5, &mut rng);
            if g.edge_count() > 7 || g.edge_count() == 0 {
                continue;
            }
            let chi = chi_a_exact(&g, &SolveBudget::default()).value().unwrap();
            assert_eq!(chi, brute_chi(&g), "graph {}", g.graph6());
        }
        assert_eq!(brute_chi(&Graph::complete(4)), 5);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = Graph::petersen();
        let tiny = SolveBudget::nodes(3);
        assert_eq!(is_acyclically_k_colorable(&g, 4, &tiny), Decision::Unknown);
        assert!(matches!(chi_a_exact(&g, &tiny), ChiOutcome::Unknown { .. }));
        assert!(SolveBudget::new(0, Duration::from_secs(1)).is_err());
    }

    #[test]
    fn yes_answers_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let g = gnp(9, 0.35, &mut rng);
            if let ChiOutcome::Exact { index, coloring } = chi_a_exact(&g, &SolveBudget::default()) {
                assert!(is_proper(&g, &coloring));
                assert!(is_acyclic(&g, &coloring));
                assert!(coloring.is_total(&g));
                assert!(index as usize >= g.max_degree());
                assert!(coloring.colors_used(&g) <= index as usize);
                // Monotone in k.
                assert!(solve(&g, index + 1).is_colorable());
            }
        }
    }

    #[test]
    fn criticality_examples() {
        let b = SolveBudget::default();
        let r = is_critical(&Graph::complete(4), 4, &b);
        assert!(r.is_critical());
        let r = is_critical(&Graph::cycle(5), 3, &b);
        assert!(matches!(
            r.criticality,
            Criticality::NotCritical {
                witness: NonCriticalWitness::Colorable { .. }
            }
        ));
        let r = is_critical(&Graph::complete(4), 3, &b);
        let Criticality::NotCritical {
            witness: NonCriticalWitness::EdgeStillHard { edge },
        } = r.criticality
        else {
            panic!("K4 at k=3 should fail on an edge deletion: {r:?}");
        };
        let h = Graph::complete(4).delete_edge(edge).unwrap();
        assert!(!brute_colorable(&h, 3));

        let mut padded = Graph::complete(4).compact().0;
        padded = Graph::new(5, &padded.edges().map(|(_, u, v)| (u.0, v.0)).collect::<Vec<_>>()).unwrap();
        let r = is_critical(&padded, 4, &b);
        assert!(matches!(
            r.criticality,
            Criticality::NotCritical {
                witness: NonCriticalWitness::IsolatedVertex { .. }
            }
        ));
    }

    #[test]
    fn enumeration_counts_classes_under_renaming() {
        // P3 with k=2: colorings (1,2) and (2,1) are one class.
        let g = Graph::path(3);
        let e = for_each_acyclic_coloring(&g, 2, &SolveBudget::default(), |_| ControlFlow::Continue(()));
        assert_eq!(e, Enumeration::Complete { count: 1 });
        // P3 with k=3: still one class.
        let e = for_each_acyclic_coloring(&g, 3, &SolveBudget::default(), |_| ControlFlow::Continue(()));
        assert_eq!(e, Enumeration::Complete { count: 1 });
        // K4 - e at k = 4: every visited coloring is acyclic.
        let h = Graph::complete(4).delete_edge(EdgeId(0)).unwrap();
        let mut all_ok = true;
        let e = for_each_acyclic_coloring(&h, 4, &SolveBudget::default(), |c| {
            all_ok &= is_acyclic(&h, c) && c.is_total(&h);
            ControlFlow::Continue(())
        });
        assert!(all_ok);
        assert!(matches!(e, Enumeration::Complete { count } if count > 0));
    }

    #[test]
    fn counting_bound_refutes_dense_graphs() {
        assert_eq!(quick_refutation(&Graph::complete(4), 4), Some(Decision::NotColorable));
        assert_eq!(quick_refutation(&Graph::complete(6), 6), Some(Decision::NotColorable));
        assert_eq!(quick_refutation(&Graph::complete(4), 5), None);
    }
}
