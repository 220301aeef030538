//! Incremental acyclic edge colorer.
//!
//! Edges are inserted in the reverse of a deletion sequence that keeps
//! removing an edge at a minimum-degree vertex, so low-degree configurations
//! are completed last. Each insertion escalates through four moves:
//!
//! 1. **assign**: the lowest color free at both ends that closes no
//!    bichromatic cycle (checked through critical paths only).
//! 2. **swap**: exchange two colors along the path component at an endpoint,
//!    then retry 1.
//! 3. **reassign**: give one colored edge at an endpoint another color that
//!    keeps the coloring acyclic, then retry 1.
//! 4. **backtrack**: uncolor the edges around `uv`, color `uv` first and put
//!    them back with moves 1 to 3, widening the region when that fails.
//!
//! None of this is complete. When the move budget runs out the exact solver
//! can take over; either way every returned coloring is re-checked.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{
    can_extend, has_bichromatic_cycle, is_acyclic, swap_in_place, trace_bichromatic, Color,
    ColoringError, EdgeColoring,
};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::rational::Rational;
use crate::solver::{is_acyclically_k_colorable, Decision, SolveBudget};

/// Which bound backs the palette chosen by [`choose_palette`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Guarantee {
    /// mad < 3: `Delta + 1` colors suffice.
    MadBelowThree,
    /// mad < 4: `Delta + 2` colors suffice.
    MadBelowFour,
    /// mad >= 4: `Delta + 2` is a best effort only.
    NoGuarantee,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PaletteChoice {
    pub k: Color,
    pub guarantee: Guarantee,
}

pub fn choose_palette(g: &Graph, mad: Rational) -> PaletteChoice {
    let delta = g.max_degree() as Color;
    if mad < Rational::from_integer(3) {
        PaletteChoice {
            k: delta + 1,
            guarantee: Guarantee::MadBelowThree,
        }
    } else if mad < Rational::from_integer(4) {
        PaletteChoice {
            k: delta + 2,
            guarantee: Guarantee::MadBelowFour,
        }
    } else {
        PaletteChoice {
            k: delta + 2,
            guarantee: Guarantee::NoGuarantee,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    Assign { edge: EdgeId, color: Color },
    Swap { alpha: Color, beta: Color, anchor: VertexId },
    Reassign { edge: EdgeId, from: Color, to: Color },
    /// Uncolors `cleared`. Depth 0 marks the full restart before an exact
    /// fallback coloring is written out.
    Backtrack { depth: usize, cleared: Vec<EdgeId> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
}

impl MoveTrace {
    /// Applies the moves to the empty `k`-coloring of `g`.
    pub fn replay(&self, g: &Graph, k: Color) -> Result<EdgeColoring, ColoringError> {
        let mut c = EdgeColoring::new(g, k);
        for m in &self.moves {
            match m {
                Move::Assign { edge, color } => c.set(*edge, *color)?,
                Move::Swap {
                    alpha,
                    beta,
                    anchor,
                } => {
                    swap_in_place(g, &mut c, *alpha, *beta, *anchor)?;
                }
                Move::Reassign { edge, to, .. } => c.set(*edge, *to)?,
                Move::Backtrack { cleared, .. } => cleared.iter().for_each(|&e| c.clear(e)),
            }
        }
        Ok(c)
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveCounts {
    pub assign: usize,
    pub swap: usize,
    pub reassign: usize,
    pub backtrack: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringOutcome {
    Success,
    FallbackSuccess,
    Failure,
}

/// What the exact solver said after the moves got stuck.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FallbackVerdict {
    NotRun,
    Colorable,
    NotColorable,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColoringReport {
    pub outcome: ColoringOutcome,
    pub k: Color,
    pub colors_used: usize,
    pub moves: MoveCounts,
    /// Tentative and committed moves spent, against `move_budget`.
    pub moves_spent: usize,
    pub move_budget: usize,
    pub fallback: FallbackVerdict,
    pub fallback_nodes: u64,
    /// Total on success, the largest acyclic partial coloring reached otherwise.
    pub coloring: EdgeColoring,
    #[serde(skip)]
    pub trace: MoveTrace,
}

impl ColoringReport {
    pub fn succeeded(&self) -> bool {
        self.outcome != ColoringOutcome::Failure
    }
}

#[derive(Clone, Debug)]
pub struct ColorerConfig {
    pub k: Color,
    /// Defaults to `50 * |E|`.
    pub move_budget: Option<usize>,
    pub fallback: Option<SolveBudget>,
    pub seed: u64,
    /// Re-check properness and acyclicity after every insertion.
    pub verify_each_step: bool,
}

impl ColorerConfig {
    pub fn new(k: Color) -> Self {
        ColorerConfig {
            k,
            move_budget: None,
            fallback: Some(SolveBudget::default()),
            seed: 0,
            verify_each_step: cfg!(debug_assertions),
        }
    }
}

/// The edge could not be colored within the remaining move budget.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Stuck(pub EdgeId);

/// Insertion order: reverse of repeatedly deleting the lowest-id edge at a
/// minimum-degree vertex.
pub fn insertion_order(g: &Graph) -> Vec<EdgeId> {
    let n = g.vertex_count();
    let mut deg = g.degrees();
    let mut gone = vec![false; g.edge_slots()];
    let mut deleted = Vec::with_capacity(g.edge_count());
    for _ in 0..g.edge_count() {
        let v = (0..n)
            .filter(|&v| deg[v] > 0)
            .min_by_key(|&v| (deg[v], v))
            .expect("edges remain");
        let e = g
            .incident(VertexId(v))
            .iter()
            .map(|&(_, e)| e)
            .filter(|e| !gone[e.0])
            .min()
            .expect("vertex has a live edge");
        gone[e.0] = true;
        let (a, b) = g.endpoints(e).expect("live edge");
        deg[a.0] -= 1;
        deg[b.0] -= 1;
        deleted.push(e);
    }
    deleted.reverse();
    deleted
}

struct Savepoint {
    coloring: EdgeColoring,
    trace_len: usize,
    counts: MoveCounts,
}

/// Colorer state for one run.
pub struct Colorer<'g> {
    g: &'g Graph,
    k: Color,
    coloring: EdgeColoring,
    trace: MoveTrace,
    counts: MoveCounts,
    spent: usize,
    budget: usize,
    rng: ChaCha8Rng,
}

impl<'g> Colorer<'g> {
    pub fn new(g: &'g Graph, k: Color, move_budget: usize, seed: u64) -> Self {
        Colorer {
            g,
            k,
            coloring: EdgeColoring::new(g, k),
            trace: MoveTrace::default(),
            counts: MoveCounts::default(),
            spent: 0,
            budget: move_budget,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Starts from an existing proper acyclic partial coloring.
    pub fn with_coloring(g: &'g Graph, c: EdgeColoring, move_budget: usize) -> Self {
        let mut s = Self::new(g, c.palette(), move_budget, 0);
        for e in g.edge_ids() {
            if let Some(color) = c.get(e) {
                s.trace.moves.push(Move::Assign { edge: e, color });
            }
        }
        s.coloring = c;
        s
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }

    pub fn trace(&self) -> &MoveTrace {
        &self.trace
    }

    pub fn counts(&self) -> MoveCounts {
        self.counts
    }

    pub fn spent(&self) -> usize {
        self.spent
    }

    fn spend(&mut self) -> bool {
        if self.spent >= self.budget {
            return false;
        }
        self.spent += 1;
        true
    }

    fn save(&self) -> Savepoint {
        Savepoint {
            coloring: self.coloring.clone(),
            trace_len: self.trace.moves.len(),
            counts: self.counts,
        }
    }

    fn restore(&mut self, s: Savepoint) {
        self.coloring = s.coloring;
        self.trace.moves.truncate(s.trace_len);
        self.counts = s.counts;
    }

    fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.g.endpoints(e).expect("live edge")
    }

    /// Colors the uncolored edge `e`, keeping the coloring proper and acyclic.
    pub fn extend_one_edge(&mut self, e: EdgeId) -> Result<(), Stuck> {
        debug_assert!(self.coloring.get(e).is_none());
        if self.assign_direct(e) || self.via_swap(e) || self.via_reassign(e) || self.via_backtrack(e) {
            Ok(())
        } else {
            Err(Stuck(e))
        }
    }

    /// Moves 1 to 3 only.
    fn extend_shallow(&mut self, e: EdgeId) -> bool {
        self.assign_direct(e) || self.via_swap(e) || self.via_reassign(e)
    }

    fn assign_direct(&mut self, e: EdgeId) -> bool {
        if !self.spend() {
            return false;
        }
        let (u, v) = self.ends(e);
        for gamma in 1..=self.k {
            if can_extend(self.g, &self.coloring, u, v, gamma).expect("coloring stays proper") {
                self.coloring.set(e, gamma).expect("color in palette");
                self.trace.moves.push(Move::Assign { edge: e, color: gamma });
                self.counts.assign += 1;
                return true;
            }
        }
        false
    }

    /// No bichromatic cycle runs through any edge in `changed`.
    fn locally_acyclic(&self, changed: &[EdgeId]) -> bool {
        let c = &self.coloring;
        changed.iter().all(|&f| {
            let Some(col) = c.get(f) else { return true };
            let (x, _) = self.ends(f);
            c.present_at(self.g, x).into_iter().filter(|&mu| mu != col).all(|mu| {
                !matches!(trace_bichromatic(self.g, c, col, mu, x), Ok(Some(t)) if t.is_cycle())
            })
        })
    }

    fn via_swap(&mut self, e: EdgeId) -> bool {
        let (u, v) = self.ends(e);
        let (a, b) = if (self.g.degree(u), u) <= (self.g.degree(v), v) {
            (u, v)
        } else {
            (v, u)
        };
        for (anchor, other) in [(a, b), (b, a)] {
            let at_anchor = self.coloring.present_at(self.g, anchor);
            let at_other = self.coloring.present_at(self.g, other);
            // Freeing a color the other end lacks is the most promising swap.
            let mut alphas: Vec<Color> = at_anchor.iter().copied().collect();
            alphas.sort_by_key(|x| (at_other.contains(x), *x));
            for &alpha in &alphas {
                for beta in (1..=self.k).filter(|x| !at_anchor.contains(x)) {
                    if !self.spend() {
                        return false;
                    }
                    let save = self.save();
                    let Ok(changed) = swap_in_place(self.g, &mut self.coloring, alpha, beta, anchor)
                    else {
                        self.restore(save);
                        continue;
                    };
                    if self.locally_acyclic(&changed) {
                        self.trace.moves.push(Move::Swap {
                            alpha,
                            beta,
                            anchor,
                        });
                        self.counts.swap += 1;
                        if self.assign_direct(e) {
                            return true;
                        }
                    }
                    self.restore(save);
                }
            }
        }
        false
    }

    fn via_reassign(&mut self, e: EdgeId) -> bool {
        let (u, v) = self.ends(e);
        let colored_degree = |c: &EdgeColoring, x: usize| {
            self.g
                .incident(VertexId(x))
                .iter()
                .filter(|&&(_, f)| c.get(f).is_some())
                .count()
        };
        let mut candidates: Vec<(usize, EdgeId)> = [u, v]
            .iter()
            .flat_map(|&x| self.g.incident(x).iter().map(move |&(w, f)| (w, f)))
            .filter(|&(_, f)| self.coloring.get(f).is_some())
            .map(|(w, f)| (colored_degree(&self.coloring, w), f))
            .collect();
        candidates.sort();
        for (_, f) in candidates {
            let from = self.coloring.get(f).expect("candidate is colored");
            let (x, y) = self.ends(f);
            for to in (1..=self.k).filter(|&t| t != from) {
                if !self.spend() {
                    return false;
                }
                let save = self.save();
                self.coloring.clear(f);
                if can_extend(self.g, &self.coloring, x, y, to).expect("coloring stays proper") {
                    self.coloring.set(f, to).expect("color in palette");
                    self.trace.moves.push(Move::Reassign { edge: f, from, to });
                    self.counts.reassign += 1;
                    if self.assign_direct(e) {
                        return true;
                    }
                }
                self.restore(save);
            }
        }
        false
    }

    /// Colored edges within `radius` hops of `e`'s endpoints.
    fn region(&self, e: EdgeId, radius: usize) -> Vec<EdgeId> {
        let (u, v) = self.ends(e);
        let mut frontier = vec![u, v];
        let mut seen_v = vec![false; self.g.vertex_count()];
        seen_v[u.0] = true;
        seen_v[v.0] = true;
        let mut out = Vec::new();
        let mut seen_e = vec![false; self.g.edge_slots()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &x in &frontier {
                for &(w, f) in self.g.incident(x) {
                    if !seen_e[f.0] && self.coloring.get(f).is_some() {
                        seen_e[f.0] = true;
                        out.push(f);
                    }
                    if !seen_v[w] {
                        seen_v[w] = true;
                        next.push(VertexId(w));
                    }
                }
            }
            frontier = next;
        }
        out.sort();
        out
    }

    fn via_backtrack(&mut self, e: EdgeId) -> bool {
        const ATTEMPTS_PER_DEPTH: usize = 8;
        for depth in 1..=3 {
            let region = self.region(e, depth);
            if region.is_empty() {
                continue;
            }
            for _ in 0..ATTEMPTS_PER_DEPTH {
                if !self.spend() {
                    return false;
                }
                let save = self.save();
                for &f in &region {
                    self.coloring.clear(f);
                }
                self.trace.moves.push(Move::Backtrack {
                    depth,
                    cleared: region.clone(),
                });
                self.counts.backtrack += 1;
                let mut order = region.clone();
                order.shuffle(&mut self.rng);
                let ok = self.extend_shallow(e) && order.iter().all(|&f| self.extend_shallow(f));
                if ok {
                    return true;
                }
                self.restore(save);
                if self.spent >= self.budget {
                    return false;
                }
            }
        }
        false
    }

    fn assert_valid(&self) {
        assert!(
            matches!(has_bichromatic_cycle(self.g, &self.coloring), Ok(None)),
            "colorer left an improper or cyclic coloring"
        );
    }
}

/// Functional form of one insertion: returns the extended coloring and the
/// moves it took.
pub fn extend_one_edge(
    g: &Graph,
    c: &EdgeColoring,
    uv: EdgeId,
    move_budget: usize,
) -> Result<(EdgeColoring, Vec<Move>), Stuck> {
    let mut colorer = Colorer::with_coloring(g, c.clone(), move_budget);
    let before = colorer.trace.moves.len();
    colorer.extend_one_edge(uv)?;
    let moves = colorer.trace.moves.split_off(before);
    Ok((colorer.coloring, moves))
}

/// Colors every edge of `g` with the moves above, falling back to the exact
/// solver if enabled.
pub fn color_graph(g: &Graph, config: &ColorerConfig) -> ColoringReport {
    let k = config.k;
    let budget = config.move_budget.unwrap_or(50 * g.edge_count()).max(1);
    let mut colorer = Colorer::new(g, k, budget, config.seed);
    let mut stuck = (g.max_degree() as Color) > k;
    if !stuck {
        for e in insertion_order(g) {
            if colorer.extend_one_edge(e).is_err() {
                stuck = true;
                break;
            }
            if config.verify_each_step {
                colorer.assert_valid();
            }
        }
    }
    let mut outcome = if stuck {
        ColoringOutcome::Failure
    } else {
        ColoringOutcome::Success
    };
    let mut fallback_nodes = 0;
    let mut fallback = FallbackVerdict::NotRun;
    if stuck {
        if let Some(fb) = &config.fallback {
            let mut meter = fb.meter();
            let decision = crate::solver::decide(g, k, &mut meter);
            fallback = match decision {
                Decision::Colorable(_) => FallbackVerdict::Colorable,
                Decision::NotColorable => FallbackVerdict::NotColorable,
                Decision::Unknown => FallbackVerdict::Unknown,
            };
            if let Decision::Colorable(c) = decision {
                let cleared: Vec<EdgeId> =
                    g.edge_ids().filter(|&e| colorer.coloring.get(e).is_some()).collect();
                colorer.trace.moves.push(Move::Backtrack { depth: 0, cleared });
                for e in g.edge_ids() {
                    let color = c.get(e).expect("solver colorings are total");
                    colorer.trace.moves.push(Move::Assign { edge: e, color });
                }
                colorer.coloring = c;
                outcome = ColoringOutcome::FallbackSuccess;
            }
            fallback_nodes = meter.nodes_used();
        }
    }
    if outcome != ColoringOutcome::Failure {
        assert!(
            colorer.coloring.is_total(g) && is_acyclic(g, &colorer.coloring),
            "reported coloring must validate"
        );
    }
    ColoringReport {
        outcome,
        k,
        colors_used: colorer.coloring.colors_used(g),
        moves: colorer.counts,
        moves_spent: colorer.spent,
        move_budget: budget,
        fallback,
        fallback_nodes,
        coloring: colorer.coloring,
        trace: colorer.trace,
    }
}

/// Whether any acyclic `k`-coloring exists; `None` when the budget runs out.
pub fn exact_completion_exists(g: &Graph, k: Color, budget: &SolveBudget) -> Option<bool> {
    match is_acyclically_k_colorable(g, k, budget) {
        Decision::Colorable(_) => Some(true),
        Decision::NotColorable => Some(false),
        Decision::Unknown => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generate::{gnp, random_graph};
    use crate::mad::mad_exact;
    use proptest::prelude::*;

    fn config(k: Color) -> ColorerConfig {
        ColorerConfig {
            verify_each_step: true,
            ..ColorerConfig::new(k)
        }
    }

    #[test]
    fn palette_choices() {
        let c8 = Graph::cycle(8);
        assert_eq!(
            choose_palette(&c8, mad_exact(&c8).mad),
            PaletteChoice {
                k: 3,
                guarantee: Guarantee::MadBelowThree
            }
        );
        let q3 = Graph::hypercube(3);
        assert_eq!(choose_palette(&q3, mad_exact(&q3).mad).k, 5);
        let k5 = Graph::complete(5);
        assert_eq!(
            choose_palette(&k5, mad_exact(&k5).mad),
            PaletteChoice {
                k: 6,
                guarantee: Guarantee::NoGuarantee
            }
        );
    }

    #[test]
    fn last_edge_of_c4() {
        let c4 = Graph::cycle(4);
        let partial = EdgeColoring::from_slots(3, vec![1, 2, 1, 0]).unwrap();
        let (c, moves) = extend_one_edge(&c4, &partial, EdgeId(3), 10).unwrap();
        assert_eq!(c.get(EdgeId(3)), Some(3));
        assert_eq!(moves, vec![Move::Assign { edge: EdgeId(3), color: 3 }]);
    }

    #[test]
    fn k4_completes_with_five_colors() {
        let k4 = Graph::complete(4);
        let order = insertion_order(&k4);
        let mut colorer = Colorer::new(&k4, 5, 1000, 0);
        for &e in &order[..5] {
            colorer.extend_one_edge(e).unwrap();
        }
        let partial = colorer.coloring().clone();
        assert_eq!(exact_completion_exists(&k4, 5, &SolveBudget::default()), Some(true));
        colorer.extend_one_edge(order[5]).unwrap();
        assert!(is_acyclic(&k4, colorer.coloring()));
        assert!(colorer.coloring().is_total(&k4));
        assert_eq!(partial.colored_count(&k4), 5);
    }

    #[test]
    fn cycles_and_petersen() {
        let r = color_graph(&Graph::cycle(10), &config(3));
        assert_eq!(r.outcome, ColoringOutcome::Success);
        assert!(r.colors_used <= 3);
        let r = color_graph(&Graph::petersen(), &config(5));
        assert!(r.succeeded());
        assert!(is_acyclic(&Graph::petersen(), &r.coloring));
    }

    #[test]
    fn k4_with_four_colors_fails_even_with_fallback() {
        let r = color_graph(&Graph::complete(4), &config(4));
        assert_eq!(r.outcome, ColoringOutcome::Failure);
        assert_eq!(r.fallback, FallbackVerdict::NotColorable);
        assert!(is_acyclic(&Graph::complete(4), &r.coloring));
    }

    #[test]
    fn deletion_order_ends_at_low_degree() {
        // Triangle with a pendant: the pendant edge goes in last.
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let order = insertion_order(&g);
        assert_eq!(order.last(), Some(&EdgeId(3)));
        assert_eq!(order.len(), 4);
    }

    #[test]
    fn replay_reproduces_and_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_graph(40, 70, &mut rng).unwrap();
            let k = g.max_degree() as Color + 1;
            let cfg = ColorerConfig {
                fallback: None,
                seed: 4,
                ..config(k)
            };
            let a = color_graph(&g, &cfg);
            let b = color_graph(&g, &cfg);
            assert_eq!(a.trace, b.trace);
            assert_eq!(a.trace.replay(&g, k).unwrap(), a.coloring);
            assert!(a.coloring.colors_used(&g) <= k as usize);
            assert!(is_acyclic(&g, &a.coloring));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// The critical-path filter agrees with a full rescan after assigning.
        #[test]
        fn extension_filter_matches_full_scan(seed in any::<u64>(), n in 3usize..30, p in 0.05f64..0.4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = gnp(n, p, &mut rng);
            let k = g.max_degree() as Color + 1;
            let mut c = EdgeColoring::new(&g, k);
            let mut order: Vec<_> = g.edges().collect();
            order.shuffle(&mut rng);
            for (e, u, v) in order {
                for gamma in 1..=k {
                    let free = c.edge_with_color(&g, u, gamma).is_none()
                        && c.edge_with_color(&g, v, gamma).is_none();
                    let mut t = c.clone();
                    t.set(e, gamma).unwrap();
                    let full = free && is_acyclic(&g, &t);
                    prop_assert_eq!(can_extend(&g, &c, u, v, gamma).unwrap(), full);
                }
                if let Some(gamma) = (1..=k).find(|&x| can_extend(&g, &c, u, v, x).unwrap()) {
                    c.set(e, gamma).unwrap();
                }
                prop_assert!(is_proper(&g, &c));
            }
        }
    }
}
