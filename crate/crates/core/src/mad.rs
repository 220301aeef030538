//! Exact maximum average degree.
//!
//! `density_at_least` decides whether some nonempty vertex set `H` has
//! `2 e(H) / |H| >= g` with one min-cut computation: the source feeds each
//! edge node, edge nodes feed both endpoints with unbounded capacity, and
//! every vertex drains to the sink. With capacities scaled to integers by the
//! denominator of `g`, the cut falls short of the total source capacity
//! exactly when a dense enough `H` exists, and its source side is one.
//!
//! `mad_exact` binary searches on that test. Achievable densities are
//! fractions with denominator at most `n`, so any two differ by at least
//! `1/(n(n-1))`; once the bracket is narrower than that it holds exactly one
//! such fraction, which is the answer.

use serde::Serialize;
use thiserror::Error;

use crate::flow::{FlowNetwork, INF};
use crate::graph::{Girth, Graph, VertexId};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MadError {
    #[error("girth must be a finite value of at least 3, got {0}")]
    InvalidGirth(Girth),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MadResult {
    pub mad: Rational,
    /// A vertex set whose induced subgraph attains `mad`.
    pub witness: Vec<VertexId>,
}

/// `2 e(H) / |H|` for the subgraph induced by `set`.
pub fn induced_density(g: &Graph, set: &[VertexId]) -> Rational {
    if set.is_empty() {
        return Rational::ZERO;
    }
    let mut inside = vec![false; g.vertex_count()];
    for v in set {
        inside[v.0] = true;
    }
    let e = g.edges().filter(|(_, u, v)| inside[u.0] && inside[v.0]).count();
    Rational::new(2 * e as i64, set.len() as i64)
}

/// Some nonempty `H` with `2 e(H)/|H| >= target`, if one exists.
pub fn density_at_least(g: &Graph, target: Rational) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    if target <= Rational::ZERO {
        return Some(g.vertices().collect());
    }
    // Densities below `target` sit at least 1/(n q) under it, so ">= target"
    // is the same as "> target - 1/(2 n q)".
    let (p, q) = (target.numer() as i128, target.denom() as i128);
    let num = 2 * n as i128 * p - 1;
    let den = 2 * n as i128 * q;
    density_above(g, num, den)
}

/// Some `H` with `2 e(H)/|H| > num/den`, decided on the network with source
/// capacity `2 den` per edge and sink capacity `num` per vertex.
fn density_above(g: &Graph, num: i128, den: i128) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let edge_cap = i64::try_from(2 * den).expect("flow capacity fits in i64");
    let vertex_cap = i64::try_from(num).expect("flow capacity fits in i64");
    assert!(
        (edge_cap as i128) * (m as i128) < INF as i128,
        "flow capacities overflow"
    );
    let source = m + n;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, (_, u, v)) in g.edges().enumerate() {
        net.add_arc(source, i, edge_cap);
        net.add_arc(i, m + u.0, INF);
        net.add_arc(i, m + v.0, INF);
    }
    for v in 0..n {
        net.add_arc(m + v, sink, vertex_cap);
    }
    let flow = net.max_flow(source, sink);
    if flow as i128 >= edge_cap as i128 * m as i128 {
        return None;
    }
    let side = net.source_side(source);
    let witness: Vec<_> = (0..n).filter(|&v| side[m + v]).map(VertexId).collect();
    debug_assert!(!witness.is_empty());
    Some(witness)
}

/// Maximum over nonempty subgraphs of `2|E(H)|/|V(H)|`; zero without edges.
pub fn mad_exact(g: &Graph) -> MadResult {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return MadResult {
            mad: Rational::ZERO,
            witness: Vec::new(),
        };
    }
    let gap = Rational::new(1, (n * (n - 1)) as i64);
    let mut lo = Rational::new(2 * m as i64, n as i64);
    let mut hi = Rational::from_integer(g.max_degree() as i64 + 1);
    while hi - lo >= gap {
        let mid = (lo + hi) / Rational::from_integer(2);
        if density_at_least(g, mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mad = (1..=n as i64)
        .find_map(|b| {
            let r = Rational::new((lo * Rational::from_integer(b)).ceil(), b);
            (r < hi).then_some(r)
        })
        .expect("bracket holds an achievable density");
    let witness = density_at_least(g, mad).expect("mad is achieved");
    debug_assert_eq!(induced_density(g, &witness), mad);
    MadResult { mad, witness }
}

/// Upper bound `2g/(g-2)` on the mad of a planar graph of girth `g`.
pub fn planar_girth_bound(girth: Girth) -> Result<Rational, MadError> {
    match girth {
        Girth::Finite(g) if g >= 3 => Ok(Rational::new(2 * g as i64, g as i64 - 2)),
        other => Err(MadError::InvalidGirth(other)),
    }
}
