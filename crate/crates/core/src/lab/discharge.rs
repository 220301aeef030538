//! Discharging engine for the two charge schemes used against sparse
//! critical graphs.
//!
//! `Mad4` starts every vertex at `d(v) - 4`; each 2-vertex takes 1 from each
//! neighbor, and each 3-vertex takes 1/2 from each neighbor of degree 5+ if it
//! has a 4-neighbor, 1/3 from every neighbor otherwise. `Mad3` starts at
//! `d(v) - 3` and each 2-vertex takes 1/2 from each neighbor.
//!
//! All rules fire once, simultaneously, on the initial degrees. The total is
//! `2|E| - c|V|`, negative exactly when the average degree is below `c`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{Graph, VertexId};
use crate::lab::lemmas::{failing_at, LemmaId};
use crate::mad::mad_exact;
use crate::rational::Rational;
use crate::solver::Criticality;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSet {
    Mad4,
    Mad3,
}

impl RuleSet {
    /// The average degree the scheme is built against.
    pub fn threshold(self) -> i64 {
        match self {
            RuleSet::Mad4 => 4,
            RuleSet::Mad3 => 3,
        }
    }

    /// Palette size of the critical graphs the scheme is aimed at.
    pub fn palette(self, g: &Graph) -> Color {
        let delta = g.max_degree() as Color;
        match self {
            RuleSet::Mad4 => delta + 2,
            RuleSet::Mad3 => delta + 1,
        }
    }

    pub fn initial_charge(self, degree: usize) -> Rational {
        Rational::from_integer(degree as i64 - self.threshold())
    }
}

impl std::str::FromStr for RuleSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mad4" => Ok(RuleSet::Mad4),
            "mad3" => Ok(RuleSet::Mad3),
            other => Err(format!("unknown rule set `{other}` (expected mad4 or mad3)")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// 1 from each neighbor of a 2-vertex.
    TwoVertexFull,
    /// 1/2 from each 5+-neighbor of a 3-vertex that has a 4-neighbor.
    ThreeVertexNextToFour,
    /// 1/3 from each neighbor of any other 3-vertex.
    ThreeVertexEven,
    /// 1/2 from each neighbor of a 2-vertex.
    TwoVertexHalf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub rule: Rule,
    pub giver: VertexId,
    pub receiver: VertexId,
    pub amount: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeState {
    pub rules: RuleSet,
    pub initial: Vec<Rational>,
    pub charges: Vec<Rational>,
    pub log: Vec<Transfer>,
}

impl ChargeState {
    pub fn initial_total(&self) -> Rational {
        self.initial.iter().copied().sum()
    }

    pub fn final_total(&self) -> Rational {
        self.charges.iter().copied().sum()
    }

    pub fn is_conserved(&self) -> bool {
        self.initial_total() == self.final_total()
    }

    pub fn negative_vertices(&self) -> Vec<VertexId> {
        (0..self.charges.len())
            .filter(|&v| self.charges[v].is_negative())
            .map(VertexId)
            .collect()
    }
}

pub fn discharge(g: &Graph, rules: RuleSet) -> ChargeState {
    let initial: Vec<Rational> = g.vertices().map(|v| rules.initial_charge(g.degree(v))).collect();
    let mut log = Vec::new();
    for v in g.vertices() {
        let give = |log: &mut Vec<Transfer>, rule, giver, amount| {
            log.push(Transfer {
                rule,
                giver,
                receiver: v,
                amount,
            })
        };
        match (rules, g.degree(v)) {
            (RuleSet::Mad4, 2) => {
                for w in g.neighbors(v) {
                    give(&mut log, Rule::TwoVertexFull, w, Rational::ONE);
                }
            }
            (RuleSet::Mad4, 3) => {
                if g.neighbors_of_degree(v, 4) > 0 {
                    for w in g.neighbors(v).filter(|&w| g.degree(w) >= 5) {
                        give(&mut log, Rule::ThreeVertexNextToFour, w, Rational::new(1, 2));
                    }
                } else {
                    for w in g.neighbors(v) {
                        give(&mut log, Rule::ThreeVertexEven, w, Rational::new(1, 3));
                    }
                }
            }
            (RuleSet::Mad3, 2) => {
                for w in g.neighbors(v) {
                    give(&mut log, Rule::TwoVertexHalf, w, Rational::new(1, 2));
                }
            }
            _ => {}
        }
    }
    let mut charges = initial.clone();
    for t in &log {
        charges[t.giver.0] -= t.amount;
        charges[t.receiver.0] += t.amount;
    }
    ChargeState {
        rules,
        initial,
        charges,
        log,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("discharging needs mad < {threshold}, but mad = {mad}")]
pub struct MadTooLarge {
    pub threshold: i64,
    pub mad: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeVertex {
    pub vertex: VertexId,
    pub charge: Rational,
    /// Applicable predicates failing at this vertex or one of its neighbors.
    pub failing: Vec<(VertexId, LemmaId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContradictionReport {
    pub rules: RuleSet,
    pub mad: Rational,
    pub k: Color,
    pub initial_total: Rational,
    pub final_total: Rational,
    pub negative: Vec<NegativeVertex>,
    pub criticality: Option<Criticality>,
    /// Every negative vertex is explained by some failing predicate.
    pub explained: bool,
}

/// Runs the scheme on a graph below its mad threshold and, for each vertex
/// left negative, lists the predicates that fail around it. On a critical
/// graph there would be no negative vertex, so each one must be explained.
pub fn discharging_contradiction_report(
    g: &Graph,
    rules: RuleSet,
    criticality: Option<Criticality>,
) -> Result<ContradictionReport, MadTooLarge> {
    let mad = mad_exact(g).mad;
    let threshold = rules.threshold();
    if mad >= Rational::from_integer(threshold) {
        return Err(MadTooLarge { threshold, mad });
    }
    let k = rules.palette(g);
    let state = discharge(g, rules);
    let negative: Vec<NegativeVertex> = state
        .negative_vertices()
        .into_iter()
        .map(|v| {
            let mut failing: Vec<(VertexId, LemmaId)> =
                failing_at(g, k, v).into_iter().map(|l| (v, l)).collect();
            for w in g.neighbors(v) {
                failing.extend(failing_at(g, k, w).into_iter().map(|l| (w, l)));
            }
            NegativeVertex {
                vertex: v,
                charge: state.charges[v.0],
                failing,
            }
        })
        .collect();
    let explained = negative.iter().all(|n| !n.failing.is_empty());
    Ok(ContradictionReport {
        rules,
        mad,
        k,
        initial_total: state.initial_total(),
        final_total: state.final_total(),
        negative,
        criticality,
        explained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gnp;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn total_oracle(g: &Graph, c: i64) -> Rational {
        Rational::from_integer(2 * g.edge_count() as i64 - c * g.vertex_count() as i64)
    }

    #[test]
    fn six_cycle_under_mad3() {
        let c6 = Graph::cycle(6);
        let s = discharge(&c6, RuleSet::Mad3);
        assert!(s.charges.iter().all(|&c| c == Rational::from_integer(-1)));
        assert_eq!(s.final_total(), Rational::from_integer(-6));
        assert_eq!(s.log.len(), 12);
    }

    #[test]
    fn two_vertex_between_big_vertices_ends_at_zero() {
        // Vertex 0 has degree 2; its neighbors 1 and 2 have degree 5.
        let mut pairs = vec![(0, 1), (0, 2)];
        for hub in [1, 2] {
            for leaf in 3..7 {
                pairs.push((hub, leaf));
            }
        }
        let g = Graph::new(7, &pairs).unwrap();
        let s = discharge(&g, RuleSet::Mad4);
        assert_eq!(s.initial[0], Rational::from_integer(-2));
        assert_eq!(s.charges[0], Rational::ZERO);
    }

    #[test]
    fn three_vertex_branches() {
        // v = 0 with neighbors 1 (degree 4), 2 and 3 (degree 5).
        let mut pairs = vec![(0, 1), (0, 2), (0, 3)];
        pairs.extend([(1, 4), (1, 5), (1, 6)]);
        for w in [2, 3] {
            pairs.extend((4..8).map(|t| (w, t)));
        }
        let g = Graph::new(8, &pairs).unwrap();
        let s = discharge(&g, RuleSet::Mad4);
        assert_eq!(s.charges[0], Rational::ZERO);
        let to_zero: Vec<_> = s.log.iter().filter(|t| t.receiver == VertexId(0)).collect();
        assert_eq!(to_zero.len(), 2);
        assert!(to_zero.iter().all(|t| t.rule == Rule::ThreeVertexNextToFour));
        // K4: every vertex takes 1/3 from each neighbor and gives the same.
        let s = discharge(&Graph::complete(4), RuleSet::Mad4);
        assert!(s.charges.iter().all(|&c| c == Rational::from_integer(-1)));
    }

    #[test]
    fn reports() {
        let r = discharging_contradiction_report(&Graph::complete(4), RuleSet::Mad4, None).unwrap();
        assert_eq!(r.initial_total, Rational::from_integer(-4));
        let c6 = Graph::cycle(6);
        let r = discharging_contradiction_report(&c6, RuleSet::Mad3, None).unwrap();
        assert_eq!(r.negative.len(), 6);
        assert!(r.explained);
        assert!(r.negative[0]
            .failing
            .iter()
            .any(|&(_, l)| l == LemmaId::NeighborOfTwoVertex));
        let err = discharging_contradiction_report(&Graph::complete(5), RuleSet::Mad4, None).unwrap_err();
        assert_eq!(err.mad, Rational::from_integer(4));
        assert!(discharging_contradiction_report(&Graph::complete(4), RuleSet::Mad3, None).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn charge_is_conserved(seed in any::<u64>(), n in 1usize..25, p in 0.0f64..0.6) {
            let g = gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
            for (rules, c) in [(RuleSet::Mad4, 4), (RuleSet::Mad3, 3)] {
                let s = discharge(&g, rules);
                prop_assert!(s.is_conserved());
                prop_assert_eq!(s.final_total(), total_oracle(&g, c));
            }
        }
    }
}
