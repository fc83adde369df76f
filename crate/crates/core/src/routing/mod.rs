//! Swap-based routing: permutations, schedules, the verifier and the
//! routing algorithms.
//!
//! Token model: `tokens[p]` is the token sitting on vertex `p`. A schedule
//! realizes `π` when, starting from `tokens[v] = v`, every token `v` ends on
//! vertex `π(v)`.

mod fast;
mod simple;
mod tree;
mod walks;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::RoutingError;
use crate::graph::{Edge, Graph, Vertex};

pub use fast::{
    apply_fast_schedule, route_fast_partition, verify_fast_schedule, FastPhase, FastSchedule,
};
pub use simple::{involution_decompose, route_complete, route_odd_even};
pub use tree::route_spanning_tree;
pub use walks::{
    color_graph, color_walks, loop_erase, route_general, route_general_detailed, route_order_two,
    route_order_two_detailed, sample_glued_walks, sweep_rounds, GluedWalk, OrderTwoOutcome,
    WalkSystem, MAX_ATTEMPTS,
};

/// A bijection on `0..n`, `mapping[v] = π(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    mapping: Vec<Vertex>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = RoutingError;

    fn try_from(mapping: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::new(mapping)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.mapping
    }
}

impl Permutation {
    pub fn new(mapping: Vec<Vertex>) -> Result<Self, RoutingError> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n || seen[v] {
                return Err(RoutingError::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// `v ↦ n - 1 - v`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            mapping: (0..n).rev().collect(),
        }
    }

    /// The transposition of `a` and `b`.
    pub fn transposition(n: usize, a: Vertex, b: Vertex) -> Result<Self, RoutingError> {
        if a >= n || b >= n {
            return Err(RoutingError::NotAPermutation(n));
        }
        let mut mapping: Vec<Vertex> = (0..n).collect();
        mapping.swap(a, b);
        Ok(Permutation { mapping })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut mapping: Vec<Vertex> = (0..n).collect();
        mapping.shuffle(rng);
        Permutation { mapping }
    }

    /// A uniformly shuffled pairing of a random subset of vertices.
    pub fn random_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(rng);
        let pairs = rng.gen_range(0..=n / 2);
        let mut mapping: Vec<Vertex> = (0..n).collect();
        for k in 0..pairs {
            let (a, b) = (order[2 * k], order[2 * k + 1]);
            mapping[a] = b;
            mapping[b] = a;
        }
        Permutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.mapping[v]
    }

    pub fn mapping(&self) -> &[Vertex] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (v, &p) in self.mapping.iter().enumerate() {
            inv[p] = v;
        }
        Permutation { mapping: inv }
    }

    /// `self ∘ other`, i.e. `v ↦ self(other(v))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            mapping: other.mapping.iter().map(|&v| self.mapping[v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(v, &p)| v == p)
    }

    pub fn is_involution(&self) -> bool {
        self.mapping
            .iter()
            .enumerate()
            .all(|(v, &p)| self.mapping[p] == v)
    }

    /// Nontrivial cycles `(c_0, ..., c_{k-1})` with `π(c_i) = c_{i+1}`,
    /// each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.mapping[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.mapping[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Smallest `k ≥ 1` with `π^k = id`.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// Parses a JSON array or `v:pi(v)` lines (blank lines and `#` comments
    /// ignored).
    pub fn parse(text: &str) -> Result<Self, RoutingError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') {
            let mapping: Vec<usize> = serde_json::from_str(trimmed)
                .map_err(|e| RoutingError::Graph(crate::error::GraphError::Parse(e.to_string())))?;
            return Permutation::new(mapping);
        }
        let parse_err = |msg: String| RoutingError::Graph(crate::error::GraphError::Parse(msg));
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (a, b) = line
                .split_once(':')
                .ok_or_else(|| parse_err(format!("line {}: expected `v:pi(v)`", lineno + 1)))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("line {}: {e}", lineno + 1)))
            };
            pairs.push((num(a)?, num(b)?));
        }
        let n = pairs.len();
        let mut mapping = vec![usize::MAX; n];
        for (v, p) in pairs {
            if v >= n || mapping[v] != usize::MAX {
                return Err(RoutingError::NotAPermutation(n));
            }
            mapping[v] = p;
        }
        Permutation::new(mapping)
    }

    /// `v:pi(v)` lines.
    pub fn to_lines(&self) -> String {
        self.mapping
            .iter()
            .enumerate()
            .map(|(v, p)| format!("{v}:{p}\n"))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mapping)
    }
}

/// Rounds of parallel swaps.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Schedule {
    pub rounds: Vec<Vec<Edge>>,
}

impl Schedule {
    pub fn new(rounds: Vec<Vec<Edge>>) -> Self {
        Schedule { rounds }
    }

    pub fn depth(&self) -> usize {
        self.rounds.len()
    }

    pub fn swap_count(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Packs a sequential list of swaps into rounds, placing each swap in
    /// the earliest round after the last swap touching either endpoint.
    pub fn from_swaps(swaps: &[Edge]) -> Self {
        let mut last: std::collections::HashMap<Vertex, usize> = Default::default();
        let mut rounds: Vec<Vec<Edge>> = Vec::new();
        for &(u, v) in swaps {
            let r = last
                .get(&u)
                .copied()
                .max(last.get(&v).copied())
                .map_or(0, |r| r + 1);
            if rounds.len() <= r {
                rounds.resize(r + 1, Vec::new());
            }
            rounds[r].push(crate::graph::canonical_edge(u, v));
            last.insert(u, r);
            last.insert(v, r);
        }
        Schedule { rounds }
    }

    /// Drops empty rounds.
    pub fn trimmed(mut self) -> Self {
        self.rounds.retain(|r| !r.is_empty());
        self
    }

    pub fn extend(&mut self, other: Schedule) {
        self.rounds.extend(other.rounds);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RoutingError> {
        serde_json::from_str(text)
            .map_err(|e| RoutingError::Graph(crate::error::GraphError::Parse(e.to_string())))
    }
}

fn check_round(
    g: &Graph,
    round: usize,
    edges: &[Edge],
    touched: &mut [usize],
) -> Result<(), RoutingError> {
    let n = g.n();
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(RoutingError::Graph(
                    crate::error::GraphError::VertexOutOfRange { vertex: w, n },
                ));
            }
        }
        if !g.has_edge(u, v) {
            return Err(RoutingError::NotAnEdge { round, u, v });
        }
        for w in [u, v] {
            if touched[w] == round + 1 {
                return Err(RoutingError::NotAMatching { round, vertex: w });
            }
            touched[w] = round + 1;
        }
    }
    Ok(())
}

/// Token array after running every round of `schedule`.
pub fn apply_schedule<T: Clone>(
    g: &Graph,
    schedule: &Schedule,
    tokens: &[T],
) -> Result<Vec<T>, RoutingError> {
    if tokens.len() != g.n() {
        return Err(RoutingError::SizeMismatch {
            perm: tokens.len(),
            graph: g.n(),
        });
    }
    let mut out = tokens.to_vec();
    let mut touched = vec![0; g.n()];
    for (r, round) in schedule.rounds.iter().enumerate() {
        check_round(g, r, round, &mut touched)?;
        for &(u, v) in round {
            out.swap(u, v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub depth: usize,
    pub diagnostic: Option<String>,
}

/// Checks that `schedule` is a legal swap schedule on `g` realizing `pi`.
pub fn verify_schedule(g: &Graph, pi: &Permutation, schedule: &Schedule) -> Verification {
    let depth = schedule.depth();
    let fail = |msg: String| Verification {
        valid: false,
        depth,
        diagnostic: Some(msg),
    };
    if pi.len() != g.n() {
        return fail(
            RoutingError::SizeMismatch {
                perm: pi.len(),
                graph: g.n(),
            }
            .to_string(),
        );
    }
    let identity: Vec<Vertex> = (0..g.n()).collect();
    let tokens = match apply_schedule(g, schedule, &identity) {
        Ok(t) => t,
        Err(e) => return fail(e.to_string()),
    };
    if let Some(v) = (0..g.n()).find(|&v| tokens[pi.apply(v)] != v) {
        return fail(format!(
            "token {v} ends on vertex {}, expected {}",
            tokens.iter().position(|&t| t == v).expect("token present"),
            pi.apply(v)
        ));
    }
    Verification {
        valid: true,
        depth,
        diagnostic: None,
    }
}

fn check_size(g: &Graph, pi: &Permutation) -> Result<(), RoutingError> {
    if pi.len() != g.n() {
        Err(RoutingError::SizeMismatch {
            perm: pi.len(),
            graph: g.n(),
        })
    } else {
        Ok(())
    }
}
