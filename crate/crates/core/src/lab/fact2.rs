//! Degree-sum check for colorings of `G - uv` in a `k`-critical graph `G`.
//!
//! Let `t` colors be shared by `u` and `v`, on edges `u u_i` and `v v_i`.
//! With `t = 0` the check is `d(u) + d(v) >= k + 2`; otherwise both
//! `sum d(v_i) + d(u) + d(v) >= k + t + 2` and the same with the `u_i`.
//! Degrees are taken in `G`.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{find_conflict, has_bichromatic_cycle, Color, ColoringError, EdgeColoring};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fact2Error {
    #[error("edge {0} must be left uncolored")]
    EdgeColored(EdgeId),
    #[error("edge {0} of G - uv is uncolored")]
    Uncolored(EdgeId),
    #[error("coloring is improper at vertex {0}")]
    Improper(VertexId),
    #[error("coloring has a bichromatic cycle through vertex {0}")]
    Cyclic(VertexId),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharedColor {
    pub color: Color,
    pub u_side: VertexId,
    pub v_side: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact2Check {
    pub u: VertexId,
    pub v: VertexId,
    pub k: Color,
    pub shared: Vec<SharedColor>,
    /// Required lower bound, `k + t + 2`.
    pub bound: usize,
    /// `d(u) + d(v)` plus the degrees of the `v_i`.
    pub v_side_sum: usize,
    /// `d(u) + d(v)` plus the degrees of the `u_i`.
    pub u_side_sum: usize,
}

impl Fact2Check {
    pub fn holds(&self) -> bool {
        self.v_side_sum >= self.bound && self.u_side_sum >= self.bound
    }

    /// Holds with equality somewhere.
    pub fn is_tight(&self) -> bool {
        self.holds() && (self.v_side_sum == self.bound || self.u_side_sum == self.bound)
    }
}

/// `c` is a coloring of `g`'s edge slots with `uv` left uncolored.
pub fn fact2_verify(g: &Graph, k: Color, uv: EdgeId, c: &EdgeColoring) -> Result<Fact2Check, Fact2Error> {
    let (u, v) = g.endpoints(uv).map_err(ColoringError::from)?;
    c.check_graph(g)?;
    if c.get(uv).is_some() {
        return Err(Fact2Error::EdgeColored(uv));
    }
    if let Some(e) = g.edge_ids().find(|&e| e != uv && c.get(e).is_none()) {
        return Err(Fact2Error::Uncolored(e));
    }
    if let Some(x) = find_conflict(g, c) {
        return Err(Fact2Error::Improper(x));
    }
    if let Some(cycle) = has_bichromatic_cycle(g, c)? {
        return Err(Fact2Error::Cyclic(cycle.vertices[0]));
    }
    if c.colors_used(g) > k as usize || c.palette() > k {
        return Err(ColoringError::ColorOutOfRange {
            color: c.palette(),
            k,
        }
        .into());
    }
    let mut shared = Vec::new();
    for color in c.present_at(g, u) {
        if let Some((v_side, _)) = c.edge_with_color(g, v, color) {
            let (u_side, _) = c.edge_with_color(g, u, color).expect("color present at u");
            shared.push(SharedColor {
                color,
                u_side,
                v_side,
            });
        }
    }
    let base = g.degree(u) + g.degree(v);
    Ok(Fact2Check {
        u,
        v,
        k,
        bound: k as usize + shared.len() + 2,
        v_side_sum: base + shared.iter().map(|s| g.degree(s.v_side)).sum::<usize>(),
        u_side_sum: base + shared.iter().map(|s| g.degree(s.u_side)).sum::<usize>(),
        shared,
    })
}
