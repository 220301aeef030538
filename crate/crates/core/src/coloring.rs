//! Edge colorings and the two-color machinery built on them: color sets at a
//! vertex, maximal bichromatic components, critical paths and Kempe-style
//! swaps.
//!
//! Colors are `1..=k`. The value `0` never appears inside an [`EdgeColoring`];
//! it only marks an uncolored edge in the on-disk format.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, VertexId};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("the two colors must differ (both are {0})")]
    SameColors(Color),
    #[error("color {color} outside the palette 1..={k}")]
    ColorOutOfRange { color: Color, k: Color },
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },
    #[error("edge {0} is uncolored")]
    Uncolored(EdgeId),
    #[error("coloring is not proper at vertex {vertex}")]
    Improper { vertex: VertexId },
    #[error("the two-color component at {0} is a cycle")]
    CycleComponent(VertexId),
    #[error("vertex {0} has no edge in either color")]
    NoComponent(VertexId),
    #[error("coloring covers {found} edge slots, graph has {expected}")]
    SizeMismatch { found: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partial assignment of colors from `1..=k` to edge slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EdgeColoring {
    k: Color,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// The empty coloring of `g` with palette `1..=k`.
    pub fn new(g: &Graph, k: Color) -> Self {
        EdgeColoring {
            k,
            colors: vec![0; g.edge_slots()],
        }
    }

    /// Builds a coloring from per-slot values, `0` meaning uncolored.
    pub fn from_slots(k: Color, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if let Some(&color) = colors.iter().find(|&&c| c > k) {
            return Err(ColoringError::ColorOutOfRange { color, k });
        }
        Ok(EdgeColoring { k, colors })
    }

    #[inline]
    pub fn palette(&self) -> Color {
        self.k
    }

    /// Per-slot values with `0` for uncolored.
    pub fn slots(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn get(&self, e: EdgeId) -> Option<Color> {
        match self.colors.get(e.0) {
            Some(&c) if c != 0 => Some(c),
            _ => None,
        }
    }

    pub fn set(&mut self, e: EdgeId, color: Color) -> Result<(), ColoringError> {
        if color == 0 || color > self.k {
            return Err(ColoringError::ColorOutOfRange { color, k: self.k });
        }
        self.colors[e.0] = color;
        Ok(())
    }

    pub fn clear(&mut self, e: EdgeId) {
        self.colors[e.0] = 0;
    }

    pub fn with_palette(&self, k: Color) -> Result<Self, ColoringError> {
        Self::from_slots(k, self.colors.clone())
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.edge_slots() {
            return Err(ColoringError::SizeMismatch {
                found: self.colors.len(),
                expected: g.edge_slots(),
            });
        }
        Ok(())
    }

    pub fn is_total(&self, g: &Graph) -> bool {
        g.edge_ids().all(|e| self.get(e).is_some())
    }

    pub fn colored_count(&self, g: &Graph) -> usize {
        g.edge_ids().filter(|&e| self.get(e).is_some()).count()
    }

    /// Number of distinct colors on live edges.
    pub fn colors_used(&self, g: &Graph) -> usize {
        g.edge_ids()
            .filter_map(|e| self.get(e))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// The edge at `v` carrying `color`, with its other endpoint. Takes the
    /// first match; properness is not checked here.
    #[inline]
    pub fn edge_with_color(&self, g: &Graph, v: VertexId, color: Color) -> Option<(VertexId, EdgeId)> {
        g.incident(v)
            .iter()
            .find(|&&(_, e)| self.colors[e.0] == color)
            .map(|&(w, e)| (VertexId(w), e))
    }

    /// Colors present at `v` (the set `F_v`).
    pub fn present_at(&self, g: &Graph, v: VertexId) -> BTreeSet<Color> {
        g.incident(v)
            .iter()
            .filter_map(|&(_, e)| self.get(e))
            .collect()
    }

    fn count_at(&self, g: &Graph, v: VertexId, color: Color) -> usize {
        g.incident(v)
            .iter()
            .filter(|&&(_, e)| self.colors[e.0] == color)
            .count()
    }
}

/// First vertex with two incident edges of one color, if any.
pub fn find_conflict(g: &Graph, c: &EdgeColoring) -> Option<VertexId> {
    let mut seen = Vec::new();
    for v in g.vertices() {
        seen.clear();
        for &(_, e) in g.incident(v) {
            if let Some(col) = c.get(e) {
                if seen.contains(&col) {
                    return Some(v);
                }
                seen.push(col);
            }
        }
    }
    None
}

/// No two colored edges sharing a vertex have the same color.
pub fn is_proper(g: &Graph, c: &EdgeColoring) -> bool {
    find_conflict(g, c).is_none()
}

/// `F_v`, `C_v` and optionally `S_uv` at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorSets {
    /// Colors appearing on edges at `v`.
    pub present: BTreeSet<Color>,
    /// `[k]` minus `present`.
    pub missing: BTreeSet<Color>,
    /// `present` minus the color of the queried edge `uv`.
    pub others: Option<BTreeSet<Color>>,
}

pub fn color_sets(
    g: &Graph,
    c: &EdgeColoring,
    v: VertexId,
    uv: Option<EdgeId>,
) -> Result<ColorSets, ColoringError> {
    g.check_vertex(v)?;
    let present = c.present_at(g, v);
    let missing = (1..=c.palette()).filter(|x| !present.contains(x)).collect();
    let others = match uv {
        None => None,
        Some(e) => {
            let (a, b) = g.endpoints(e)?;
            if a != v && b != v {
                return Err(ColoringError::NotIncident { edge: e, vertex: v });
            }
            let col = c.get(e).ok_or(ColoringError::Uncolored(e))?;
            let mut s = present.clone();
            s.remove(&col);
            Some(s)
        }
    };
    Ok(ColorSets {
        present,
        missing,
        others,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Path,
    Cycle,
}

/// A maximal two-colored component.
///
/// For a cycle the first and last vertex coincide and `edges.len()` equals
/// the cycle length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BichromaticTrace {
    pub colors: (Color, Color),
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub kind: TraceKind,
}

impl BichromaticTrace {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == TraceKind::Cycle
    }

    /// Checks the alternation and closure invariants against `c`.
    pub fn is_consistent(&self, g: &Graph, c: &EdgeColoring) -> bool {
        if self.vertices.len() != self.edges.len() + 1 {
            return false;
        }
        let cols: Vec<_> = self.edges.iter().map(|&e| c.get(e)).collect();
        let alternates = cols.windows(2).all(|w| w[0] != w[1])
            && cols
                .iter()
                .all(|&x| x == Some(self.colors.0) || x == Some(self.colors.1));
        let linked = self.edges.iter().enumerate().all(|(i, &e)| {
            g.edge_between(self.vertices[i], self.vertices[i + 1]) == Some(e)
        });
        let closed = match self.kind {
            TraceKind::Cycle => {
                self.vertices.first() == self.vertices.last() && self.edges.len().is_multiple_of(2)
            }
            TraceKind::Path => self.vertices.first() != self.vertices.last(),
        };
        alternates && linked && closed
    }
}

struct Walk {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    closed: bool,
}

fn check_two_colors(
    g: &Graph,
    c: &EdgeColoring,
    v: VertexId,
    a: Color,
    b: Color,
) -> Result<(), ColoringError> {
    if c.count_at(g, v, a) > 1 || c.count_at(g, v, b) > 1 {
        return Err(ColoringError::Improper { vertex: v });
    }
    Ok(())
}

/// Follows alternating edges from `start`, leaving on `first`.
fn walk(
    g: &Graph,
    c: &EdgeColoring,
    start: VertexId,
    first: Color,
    second: Color,
) -> Result<Walk, ColoringError> {
    let mut vertices = vec![start];
    let mut edges = Vec::new();
    let (mut x, mut col) = (start, first);
    loop {
        let Some((y, e)) = c.edge_with_color(g, x, col) else {
            return Ok(Walk {
                vertices,
                edges,
                closed: false,
            });
        };
        edges.push(e);
        vertices.push(y);
        if y == start {
            return Ok(Walk {
                vertices,
                edges,
                closed: true,
            });
        }
        check_two_colors(g, c, y, first, second)?;
        x = y;
        col = if col == first { second } else { first };
    }
}

/// The maximal `(alpha, beta)` component through `v`.
///
/// Paths are reported from their lower-numbered endpoint. Cycles start at
/// `v` and leave toward its lower-numbered neighbor on the cycle.
pub fn trace_bichromatic(
    g: &Graph,
    c: &EdgeColoring,
    alpha: Color,
    beta: Color,
    v: VertexId,
) -> Result<Option<BichromaticTrace>, ColoringError> {
    if alpha == beta {
        return Err(ColoringError::SameColors(alpha));
    }
    g.check_vertex(v)?;
    check_two_colors(g, c, v, alpha, beta)?;
    let has_alpha = c.edge_with_color(g, v, alpha).is_some();
    let has_beta = c.edge_with_color(g, v, beta).is_some();
    if !has_alpha && !has_beta {
        return Ok(None);
    }
    let (first, second) = if has_alpha { (alpha, beta) } else { (beta, alpha) };
    let forward = walk(g, c, v, first, second)?;
    let colors = (alpha.min(beta), alpha.max(beta));
    if forward.closed {
        let mut vertices = forward.vertices;
        let mut edges = forward.edges;
        if vertices[1] > vertices[vertices.len() - 2] {
            vertices.reverse();
            edges.reverse();
        }
        return Ok(Some(BichromaticTrace {
            colors,
            vertices,
            edges,
            kind: TraceKind::Cycle,
        }));
    }
    let backward = if has_alpha && has_beta {
        walk(g, c, v, second, first)?
    } else {
        Walk {
            vertices: vec![v],
            edges: Vec::new(),
            closed: false,
        }
    };
    let mut vertices: Vec<_> = backward.vertices.into_iter().rev().collect();
    vertices.extend_from_slice(&forward.vertices[1..]);
    let mut edges: Vec<_> = backward.edges.into_iter().rev().collect();
    edges.extend(forward.edges);
    if vertices[0] > vertices[vertices.len() - 1] {
        vertices.reverse();
        edges.reverse();
    }
    Ok(Some(BichromaticTrace {
        colors,
        vertices,
        edges,
        kind: TraceKind::Path,
    }))
}

/// Some bichromatic cycle of a proper coloring, or `None` if the coloring is
/// acyclic.
pub fn has_bichromatic_cycle(
    g: &Graph,
    c: &EdgeColoring,
) -> Result<Option<BichromaticTrace>, ColoringError> {
    c.check_graph(g)?;
    if let Some(vertex) = find_conflict(g, c) {
        return Err(ColoringError::Improper { vertex });
    }
    // Every two-color cycle passes through a vertex carrying both colors, so
    // tracing each color pair seen at each vertex covers them all.
    let mut done: HashSet<(Color, Color, VertexId)> = HashSet::new();
    for v in g.vertices() {
        let present: Vec<Color> = c.present_at(g, v).into_iter().collect();
        for (i, &a) in present.iter().enumerate() {
            for &b in &present[i + 1..] {
                if done.contains(&(a, b, v)) {
                    continue;
                }
                let trace = trace_bichromatic(g, c, a, b, v)?.expect("v carries both colors");
                if trace.is_cycle() {
                    return Ok(Some(trace));
                }
                done.extend(trace.vertices.iter().map(|&x| (a, b, x)));
            }
        }
    }
    Ok(None)
}

/// Proper and free of bichromatic cycles.
pub fn is_acyclic(g: &Graph, c: &EdgeColoring) -> bool {
    matches!(has_bichromatic_cycle(g, c), Ok(None))
}

/// Whether the maximal `(alpha, beta)` path starting at `u` with an
/// `alpha`-edge ends at `v` through an `alpha`-edge.
///
/// `u` must be an endpoint of its component, so a `beta`-edge at `u` means
/// no such path starts there.
pub fn exists_critical_path(
    g: &Graph,
    c: &EdgeColoring,
    alpha: Color,
    beta: Color,
    u: VertexId,
    v: VertexId,
) -> Result<bool, ColoringError> {
    if alpha == beta {
        return Err(ColoringError::SameColors(alpha));
    }
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    check_two_colors(g, c, u, alpha, beta)?;
    if c.edge_with_color(g, u, beta).is_some() || c.edge_with_color(g, u, alpha).is_none() {
        return Ok(false);
    }
    let w = walk(g, c, u, alpha, beta)?;
    let end = *w.vertices.last().expect("walk is nonempty");
    Ok(end == v && w.edges.len() % 2 == 1)
}

/// Exchanges `alpha` and `beta` on the path component through `v`.
pub fn swap_two_colors_on_component(
    g: &Graph,
    c: &EdgeColoring,
    alpha: Color,
    beta: Color,
    v: VertexId,
) -> Result<EdgeColoring, ColoringError> {
    let mut out = c.clone();
    swap_in_place(g, &mut out, alpha, beta, v)?;
    Ok(out)
}

/// In-place form of [`swap_two_colors_on_component`]; returns the recolored edges.
pub(crate) fn swap_in_place(
    g: &Graph,
    c: &mut EdgeColoring,
    alpha: Color,
    beta: Color,
    v: VertexId,
) -> Result<Vec<EdgeId>, ColoringError> {
    for col in [alpha, beta] {
        if col == 0 || col > c.palette() {
            return Err(ColoringError::ColorOutOfRange {
                color: col,
                k: c.palette(),
            });
        }
    }
    let trace = trace_bichromatic(g, c, alpha, beta, v)?.ok_or(ColoringError::NoComponent(v))?;
    if trace.is_cycle() {
        return Err(ColoringError::CycleComponent(v));
    }
    for &e in &trace.edges {
        let now = c.colors[e.0];
        c.colors[e.0] = if now == alpha { beta } else { alpha };
    }
    Ok(trace.edges)
}

/// Whether giving the uncolored edge `uv` the color `gamma` keeps the
/// coloring proper and closes no bichromatic cycle. Only the pairs
/// `(gamma, mu)` with `mu` present at both ends can close a new cycle, and
/// each such cycle is a critical path from `u` to `v`.
pub fn can_extend(
    g: &Graph,
    c: &EdgeColoring,
    u: VertexId,
    v: VertexId,
    gamma: Color,
) -> Result<bool, ColoringError> {
    if c.edge_with_color(g, u, gamma).is_some() || c.edge_with_color(g, v, gamma).is_some() {
        return Ok(false);
    }
    let at_v = c.present_at(g, v);
    for mu in c.present_at(g, u) {
        if at_v.contains(&mu) && exists_critical_path(g, c, mu, gamma, u, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
