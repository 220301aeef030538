//! Connected graphs on few vertices, one per isomorphism class.
//!
//! Every connected graph on `n` vertices has a vertex whose removal keeps it
//! connected (a leaf of a spanning tree), so adding one vertex with every
//! nonempty neighborhood to each class on `n - 1` vertices reaches every
//! class on `n`. Duplicates are removed by a canonical code: the smallest
//! adjacency bit string over all labelings that order vertices by their
//! color-refinement class.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// Upper limit on `n`; codes are packed in a `u64`.
pub const MAX_VERTICES: usize = 11;

fn pair_index(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < q);
    p * (2 * n - p - 1) / 2 + (q - p - 1)
}

/// Stable vertex classes from repeated refinement by neighbor classes.
fn refine(n: usize, adj: &[u32]) -> Vec<usize> {
    let mut class: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| class[w]).collect();
                nb.sort_unstable();
                (class[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature listed"))
            .collect();
        let before = {
            let mut c = class.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        class = next;
        if distinct.len() == before {
            return class;
        }
    }
}

/// Lexicographic successor; returns `false` and leaves `xs` sorted after the
/// last permutation.
fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        xs.reverse();
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).expect("successor exists");
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn code_of(n: usize, adj: &[u32], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for p in 0..n {
        for q in p + 1..n {
            if adj[order[p]] >> order[q] & 1 == 1 {
                code |= 1 << pair_index(n, p, q);
            }
        }
    }
    code
}

/// Canonical code of the graph with adjacency bitmasks `adj`.
pub fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    assert!(n <= MAX_VERTICES, "canonical codes support at most {MAX_VERTICES} vertices");
    let class = refine(n, adj);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class[v], v));
    let mut cells = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || class[order[i]] != class[order[start]] {
            cells.push(start..i);
            start = i;
        }
    }
    fn go(n: usize, adj: &[u32], order: &mut Vec<usize>, cells: &[std::ops::Range<usize>], best: &mut u64) {
        let Some((cell, rest)) = cells.split_first() else {
            *best = (*best).min(code_of(n, adj, order));
            return;
        };
        loop {
            go(n, adj, order, rest, best);
            if !next_permutation(&mut order[cell.clone()]) {
                break;
            }
        }
    }
    let mut best = u64::MAX;
    go(n, adj, &mut order, &cells, &mut best);
    best
}

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.vertex_count()];
    for (_, u, v) in g.edges() {
        adj[u.0] |= 1 << v.0;
        adj[v.0] |= 1 << u.0;
    }
    adj
}

/// Canonical code of `g`.
pub fn graph_code(g: &Graph) -> u64 {
    canonical_code(&adjacency(g))
}

/// The graph on `n` vertices whose canonical code is `code`.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if code >> pair_index(n, p, q) & 1 == 1 {
                pairs.push((p, q));
            }
        }
    }
    Graph::new(n, &pairs).expect("code describes a simple graph")
}

/// `result[n]` lists one connected graph per isomorphism class on `n`
/// vertices, for `n` up to `n_max`, in increasing canonical-code order.
pub fn connected_graphs_by_order(n_max: usize) -> Vec<Vec<Graph>> {
    assert!(n_max <= MAX_VERTICES);
    let mut out: Vec<Vec<Graph>> = vec![Vec::new()];
    if n_max == 0 {
        return out;
    }
    out.push(vec![Graph::empty(1)]);
    for n in 2..=n_max {
        let mut found = BTreeSet::new();
        for g in &out[n - 1] {
            let base = adjacency(g);
            for subset in 1u32..(1 << (n - 1)) {
                let mut adj = base.clone();
                for (v, row) in adj.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                adj.push(subset);
                found.insert(canonical_code(&adj));
            }
        }
        out.push(found.into_iter().map(|c| graph_from_code(n, c)).collect());
    }
    out
}

/// All connected graphs on `1..=n_max` vertices, smallest order first.
pub fn connected_graphs(n_max: usize) -> Vec<Graph> {
    connected_graphs_by_order(n_max).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Isomorphism by trying every bijection.
    fn brute_isomorphic(a: &[u32], b: &[u32]) -> bool {
        let n = a.len();
        if n != b.len() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let ok = (0..n).all(|u| (0..n).all(|v| (a[u] >> v & 1) == (b[perm[u]] >> perm[v] & 1)));
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn connected(adj: &[u32]) -> bool {
        let n = adj.len();
        let mut seen = 1u32;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if adj[v] >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen.count_ones() as usize == n
    }

    #[test]
    fn known_class_counts() {
        let counts: Vec<usize> = connected_graphs_by_order(7).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![0, 1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn matches_labeled_enumeration_up_to_five() {
        for n in 1..=5 {
            let slots = n * (n - 1) / 2;
            let mut reps: Vec<Vec<u32>> = Vec::new();
            for mask in 0u64..(1 << slots) {
                let g = graph_from_code(n, mask);
                let adj = adjacency(&g);
                if !connected(&adj) {
                    continue;
                }
                if !reps.iter().any(|r| brute_isomorphic(r, &adj)) {
                    reps.push(adj);
                }
            }
            let ours = &connected_graphs_by_order(n)[n];
            assert_eq!(ours.len(), reps.len(), "n = {n}");
            for g in ours {
                let adj = adjacency(g);
                assert!(connected(&adj));
                assert_eq!(reps.iter().filter(|r| brute_isomorphic(r, &adj)).count(), 1);
            }
        }
    }

    #[test]
    fn codes_are_labeling_invariant() {
        let p = Graph::hypercube(3);
        let adj = adjacency(&p);
        let n = adj.len();
        // Relabel by a fixed rotation.
        let mut rotated = vec![0u32; n];
        for u in 0..n {
            for v in 0..n {
                if adj[u] >> v & 1 == 1 {
                    rotated[(u + 3) % n] |= 1 << ((v + 3) % n);
                }
            }
        }
        assert_eq!(canonical_code(&adj), canonical_code(&rotated));
        assert_ne!(graph_code(&Graph::cycle(6)), graph_code(&Graph::complete_bipartite(3, 3)));
        let back = graph_from_code(n, canonical_code(&adj));
        assert!(brute_isomorphic(&adjacency(&back), &adj));
    }
}
