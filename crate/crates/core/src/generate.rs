//! Seeded random instances: uniform `G(n, m)` graphs, `G(n, p)` graphs and
//! random proper colorings.

use rand::seq::index::sample;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{m} edges do not fit in a simple graph on {n} vertices")]
pub struct InfeasibleEdgeCount {
    pub n: usize,
    pub m: usize,
}

/// Maps a rank in `0..n(n-1)/2` to the pair it indexes in row-major order of
/// the strict upper triangle.
fn unrank_pair(n: usize, mut r: usize) -> (usize, usize) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if r < row {
            return (u, u + 1 + r);
        }
        r -= row;
        u += 1;
    }
}

/// A uniformly random simple graph with exactly `m` edges.
pub fn random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph, InfeasibleEdgeCount> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(InfeasibleEdgeCount { n, m });
    }
    let mut ranks = sample(rng, total, m).into_vec();
    ranks.sort_unstable();
    let pairs: Vec<_> = ranks.into_iter().map(|r| unrank_pair(n, r)).collect();
    Ok(Graph::new(n, &pairs).expect("distinct pairs form a simple graph"))
}

/// [`random_graph`] driven by a fixed-algorithm generator seeded with `seed`.
pub fn generate_sparse(n: usize, m: usize, seed: u64) -> Result<Graph, InfeasibleEdgeCount> {
    random_graph(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                pairs.push((u, v));
            }
        }
    }
    Graph::new(n, &pairs).expect("distinct pairs form a simple graph")
}

/// Colors edges in random order with a random color free at both ends.
/// Edges with no free color stay uncolored, so the result is always proper
/// but only guaranteed total when `k >= 2*Delta - 1`.
pub fn random_proper_coloring<R: Rng + ?Sized>(g: &Graph, k: Color, rng: &mut R) -> EdgeColoring {
    let mut c = EdgeColoring::new(g, k);
    let mut order: Vec<_> = g.edges().collect();
    order.shuffle(rng);
    let mut free = Vec::new();
    for (e, u, v) in order {
        let taken = |x: VertexId, col: Color| c.edge_with_color(g, x, col).is_some();
        free.clear();
        free.extend((1..=k).filter(|&col| !taken(u, col) && !taken(v, col)));
        if let Some(&col) = free.as_slice().choose(rng) {
            c.set(e, col).expect("color within palette");
        }
    }
    c
}
