//! Exact routing numbers by breadth-first search over token configurations.
//!
//! A configuration packs `tokens[p]` into 4-bit nibbles of a `u64`; one BFS
//! step applies a nonempty matching of swaps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::SearchError;
use crate::graph::{Edge, Graph, Vertex};
use crate::routing::{Permutation, Schedule};

/// Size limits. Configuration values, so larger machines can raise them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLimits {
    /// Vertex limit for a single permutation.
    pub max_vertices_pi: usize,
    /// Vertex limit for the worst case over all permutations.
    pub max_vertices_worst: usize,
    pub max_edges: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            max_vertices_pi: 8,
            max_vertices_worst: 7,
            max_edges: 32,
        }
    }
}

/// Matchings tried at each BFS step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branching {
    /// Every nonempty matching; exact.
    #[default]
    All,
    /// Maximal matchings only. Faster, but depths are only upper bounds and
    /// some permutations become unreachable: on `P_4` the transposition
    /// `(0 1)` needs one round, yet every maximal matching containing `(0,1)`
    /// also swaps `(2,3)`.
    Maximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExactOptions {
    pub limits: ExactLimits,
    pub branching: Branching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub depth: usize,
    pub witness_schedule: Schedule,
    pub explored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstCase {
    pub depth: usize,
    pub worst_pi: Permutation,
    pub witness_schedule: Schedule,
    pub explored: usize,
}

fn check_edges(g: &Graph, limits: &ExactLimits) -> Result<(), SearchError> {
    if g.edge_count() > limits.max_edges {
        return Err(SearchError::TooLarge {
            what: "edges",
            value: g.edge_count(),
            limit: limits.max_edges,
        });
    }
    Ok(())
}

/// Every nonempty matching of `g`, each listed by ascending edge.
pub fn enumerate_matchings(g: &Graph) -> Result<Vec<Vec<Edge>>, SearchError> {
    check_edges(g, &ExactLimits::default())?;
    Ok(all_matchings(g))
}

fn all_matchings(g: &Graph) -> Vec<Vec<Edge>> {
    fn rec(edges: &[Edge], k: usize, used: u64, current: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if k == edges.len() {
            if !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        rec(edges, k + 1, used, current, out);
        let (u, v) = edges[k];
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            current.push((u, v));
            rec(edges, k + 1, used | 1 << u | 1 << v, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(g.edges(), 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Matchings to which no edge of `g` can be added.
pub fn maximal_matchings(g: &Graph) -> Result<Vec<Vec<Edge>>, SearchError> {
    check_edges(g, &ExactLimits::default())?;
    Ok(all_matchings(g)
        .into_iter()
        .filter(|m| {
            let covered = m.iter().fold(0u64, |acc, &(u, v)| acc | 1 << u | 1 << v);
            g.edges()
                .iter()
                .all(|&(u, v)| covered >> u & 1 == 1 || covered >> v & 1 == 1)
        })
        .collect())
}

fn branching_set(g: &Graph, options: &ExactOptions) -> Result<Vec<Vec<Edge>>, SearchError> {
    check_edges(g, &options.limits)?;
    match options.branching {
        Branching::All => Ok(all_matchings(g)),
        Branching::Maximal => maximal_matchings(g),
    }
}

fn pack(tokens: &[Vertex]) -> u64 {
    tokens
        .iter()
        .enumerate()
        .fold(0, |acc, (p, &t)| acc | (t as u64) << (4 * p))
}

fn unpack(state: u64, n: usize) -> Vec<Vertex> {
    (0..n).map(|p| (state >> (4 * p) & 0xf) as Vertex).collect()
}

fn apply(state: u64, matching: &[Edge]) -> u64 {
    let mut s = state;
    for &(u, v) in matching {
        let (a, b) = (s >> (4 * u) & 0xf, s >> (4 * v) & 0xf);
        s &= !(0xf << (4 * u) | 0xf << (4 * v));
        s |= b << (4 * u) | a << (4 * v);
    }
    s
}

/// Breadth-first search from the identity configuration. Stops early once
/// `target` is seen.
struct Search {
    parent: HashMap<u64, (u64, u32)>,
    order: Vec<(u64, usize)>,
}

fn bfs(n: usize, matchings: &[Vec<Edge>], target: Option<u64>) -> Search {
    let start = pack(&(0..n).collect::<Vec<_>>());
    let mut parent = HashMap::new();
    parent.insert(start, (start, u32::MAX));
    let mut order = vec![(start, 0)];
    let mut head = 0;
    if target == Some(start) {
        return Search { parent, order };
    }
    while head < order.len() {
        let (state, depth) = order[head];
        head += 1;
        for (k, m) in matchings.iter().enumerate() {
            let next = apply(state, m);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (state, k as u32));
            order.push((next, depth + 1));
            if target == Some(next) {
                return Search { parent, order };
            }
        }
    }
    Search { parent, order }
}

fn witness(search: &Search, matchings: &[Vec<Edge>], mut state: u64) -> Schedule {
    let mut rounds = Vec::new();
    loop {
        let (prev, k) = search.parent[&state];
        if k == u32::MAX {
            break;
        }
        rounds.push(matchings[k as usize].clone());
        state = prev;
    }
    rounds.reverse();
    Schedule::new(rounds)
}

/// Minimum number of matching rounds realizing `pi` on `g`.
pub fn exact_rt_pi(
    g: &Graph,
    pi: &Permutation,
    options: &ExactOptions,
) -> Result<SearchResult, SearchError> {
    let n = g.n();
    if pi.len() != n {
        return Err(crate::error::RoutingError::SizeMismatch {
            perm: pi.len(),
            graph: n,
        }
        .into());
    }
    if n > options.limits.max_vertices_pi.min(16) {
        return Err(SearchError::TooLarge {
            what: "vertices",
            value: n,
            limit: options.limits.max_vertices_pi.min(16),
        });
    }
    let matchings = branching_set(g, options)?;
    // token v must end on vertex pi(v)
    let mut target_tokens = vec![0; n];
    for v in 0..n {
        target_tokens[pi.apply(v)] = v;
    }
    let target = pack(&target_tokens);
    let search = bfs(n, &matchings, Some(target));
    let depth = search
        .order
        .iter()
        .rev()
        .find(|(s, _)| *s == target)
        .map(|&(_, d)| d)
        .ok_or(SearchError::Unreachable)?;
    Ok(SearchResult {
        depth,
        witness_schedule: witness(&search, &matchings, target),
        explored: search.order.len(),
    })
}

/// `rt(G)`: depth of the farthest configuration from the identity.
///
/// Swap rounds are involutions, so the configuration graph is undirected and
/// one search from the identity gives every `rt(G, π)`.
pub fn exact_rt(g: &Graph, options: &ExactOptions) -> Result<WorstCase, SearchError> {
    let n = g.n();
    if n > options.limits.max_vertices_worst.min(16) {
        return Err(SearchError::TooLarge {
            what: "vertices",
            value: n,
            limit: options.limits.max_vertices_worst.min(16),
        });
    }
    let matchings = branching_set(g, options)?;
    let search = bfs(n, &matchings, None);
    let total: usize = (1..=n).product();
    if search.order.len() != total {
        return Err(SearchError::Unreachable);
    }
    let &(state, depth) = search.order.last().expect("start state present");
    let first_at_depth = search
        .order
        .iter()
        .find(|&&(_, d)| d == depth)
        .map(|&(s, _)| s)
        .unwrap_or(state);
    let tokens = unpack(first_at_depth, n);
    let mut mapping = vec![0; n];
    for (p, &t) in tokens.iter().enumerate() {
        mapping[t] = p;
    }
    Ok(WorstCase {
        depth,
        worst_pi: Permutation::new(mapping).expect("configuration is a permutation"),
        witness_schedule: witness(&search, &matchings, first_at_depth),
        explored: search.order.len(),
    })
}

/// Exact `rt(G, π)` for every reachable `π`, keyed by its mapping.
pub fn all_exact_depths(
    g: &Graph,
    options: &ExactOptions,
) -> Result<HashMap<Vec<Vertex>, usize>, SearchError> {
    let n = g.n();
    if n > options.limits.max_vertices_worst.min(16) {
        return Err(SearchError::TooLarge {
            what: "vertices",
            value: n,
            limit: options.limits.max_vertices_worst.min(16),
        });
    }
    let matchings = branching_set(g, options)?;
    let search = bfs(n, &matchings, None);
    Ok(search
        .order
        .iter()
        .map(|&(state, depth)| {
            let tokens = unpack(state, n);
            let mut mapping = vec![0; n];
            for (p, &t) in tokens.iter().enumerate() {
                mapping[t] = p;
            }
            (mapping, depth)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{catalog, families, routing::verify_schedule};

    fn opts() -> ExactOptions {
        ExactOptions::default()
    }

    #[test]
    fn matching_counts() {
        assert_eq!(
            enumerate_matchings(&families::path(3).unwrap())
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_matchings(&families::complete(3).unwrap())
                .unwrap()
                .len(),
            3
        );
        let p4 = enumerate_matchings(&families::path(4).unwrap()).unwrap();
        assert_eq!(p4.len(), 4);
        assert!(p4.contains(&vec![(0, 1), (2, 3)]));
        // telephone numbers minus the empty matching
        assert_eq!(
            enumerate_matchings(&families::complete(6).unwrap())
                .unwrap()
                .len(),
            75
        );
        assert_eq!(
            maximal_matchings(&families::path(4).unwrap())
                .unwrap()
                .len(),
            2
        );
        let big = families::complete(9).unwrap();
        assert!(matches!(
            enumerate_matchings(&big),
            Err(SearchError::TooLarge { .. })
        ));
    }

    #[test]
    fn per_permutation_examples() {
        let p3 = families::path(3).unwrap();
        let r = exact_rt_pi(&p3, &Permutation::reversal(3), &opts()).unwrap();
        assert_eq!(r.depth, 3);
        assert!(verify_schedule(&p3, &Permutation::reversal(3), &r.witness_schedule).valid);
        assert_eq!(
            exact_rt_pi(&p3, &Permutation::identity(3), &opts())
                .unwrap()
                .depth,
            0
        );
        let k3 = families::complete(3).unwrap();
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(exact_rt_pi(&k3, &cycle, &opts()).unwrap().depth, 2);
        let p9 = families::path(9).unwrap();
        assert!(matches!(
            exact_rt_pi(&p9, &Permutation::identity(9), &opts()),
            Err(SearchError::TooLarge { .. })
        ));
    }

    #[test]
    fn worst_case_examples() {
        assert_eq!(
            exact_rt(&families::complete(3).unwrap(), &opts())
                .unwrap()
                .depth,
            2
        );
        assert_eq!(
            exact_rt(&families::path(3).unwrap(), &opts())
                .unwrap()
                .depth,
            3
        );
        assert_eq!(
            exact_rt(&families::path(2).unwrap(), &opts())
                .unwrap()
                .depth,
            1
        );
        let w = exact_rt(&families::path(4).unwrap(), &opts()).unwrap();
        assert!(
            verify_schedule(
                &families::path(4).unwrap(),
                &w.worst_pi,
                &w.witness_schedule
            )
            .valid
        );
        let disconnected = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            exact_rt(&disconnected, &opts()),
            Err(SearchError::Unreachable)
        );
    }

    #[test]
    fn path_routing_numbers_are_monotone() {
        let depths: Vec<usize> = (2..=7)
            .map(|n| {
                exact_rt(&families::path(n).unwrap(), &opts())
                    .unwrap()
                    .depth
            })
            .collect();
        assert!(depths.windows(2).all(|w| w[0] <= w[1]), "{depths:?}");
        assert_eq!(depths[0], 1);
    }

    #[test]
    fn maximal_pruning_is_not_exact() {
        let p4 = families::path(4).unwrap();
        let t = Permutation::transposition(4, 0, 1).unwrap();
        let exact = exact_rt_pi(&p4, &t, &opts()).unwrap().depth;
        let pruned = ExactOptions {
            branching: Branching::Maximal,
            ..opts()
        };
        assert_eq!(exact, 1);
        // maximal matchings of P_4 generate a group without (0 1)
        assert_eq!(exact_rt_pi(&p4, &t, &pruned), Err(SearchError::Unreachable));
    }

    #[test]
    fn maximal_pruning_never_undercounts() {
        let pruned = ExactOptions {
            branching: Branching::Maximal,
            ..opts()
        };
        for g in catalog::connected_graphs_up_to(5) {
            let exact = all_exact_depths(&g, &opts()).unwrap();
            let upper = all_exact_depths(&g, &pruned).unwrap();
            for (pi, d) in &exact {
                assert!(upper.get(pi).is_none_or(|u| u >= d));
            }
        }
    }

    #[test]
    fn worst_case_agrees_with_per_permutation_search() {
        for g in catalog::connected_graphs(5) {
            let all = all_exact_depths(&g, &opts()).unwrap();
            let worst = exact_rt(&g, &opts()).unwrap();
            assert_eq!(all.values().copied().max(), Some(worst.depth));
            for mapping in [
                vec![1, 0, 2, 3, 4],
                vec![4, 3, 2, 1, 0],
                vec![1, 2, 3, 4, 0],
                worst.worst_pi.mapping().to_vec(),
            ] {
                let pi = Permutation::new(mapping.clone()).unwrap();
                assert_eq!(exact_rt_pi(&g, &pi, &opts()).unwrap().depth, all[&mapping]);
            }
        }
    }
}
