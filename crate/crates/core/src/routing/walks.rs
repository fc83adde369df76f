//! Random-walk routing of order-two permutations and its extension to
//! arbitrary permutations.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::walk_half_length;
use crate::error::RoutingError;
use crate::graph::{canonical_edge, Edge, Graph, Vertex};
use crate::spectral;

use super::{check_size, involution_decompose, Permutation, Schedule};

/// Reseeded attempts before giving up on the interference check.
pub const MAX_ATTEMPTS: usize = 32;

/// Terminal resamples per pair when a bridge is impossible.
const TERMINAL_RETRIES: usize = 64;

/// Two conditioned lazy walks `v → w` and `σ(v) → w`, glued with the second
/// reversed: `walk[0] = v`, `walk[l] = w`, `walk[2l] = σ(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedWalk {
    pub pair: (Vertex, Vertex),
    pub terminal: Vertex,
    pub walk: Vec<Vertex>,
}

impl GluedWalk {
    /// `W(v)` for either endpoint; `W(σ(v))` is `W(v)` reversed.
    pub fn from_endpoint(&self, v: Vertex) -> Vec<Vertex> {
        if v == self.pair.0 {
            self.walk.clone()
        } else {
            self.walk.iter().rev().copied().collect()
        }
    }

    fn halves(&self, l: usize) -> [Vec<Vertex>; 2] {
        let first = self.walk[..=l].to_vec();
        let second = self.walk[l..].iter().rev().copied().collect();
        [first, second]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSystem {
    pub l: usize,
    /// One glued walk per transposed pair, pairs ordered by smaller vertex.
    pub walks: Vec<GluedWalk>,
    /// `I(v)`: number of other pairs interfering with this one.
    pub interference_counts: Vec<usize>,
    /// Adjacency lists of the interference graph `H` on walks.
    pub interference_graph: Vec<Vec<usize>>,
}

impl WalkSystem {
    pub fn max_interference(&self) -> usize {
        self.interference_counts.iter().copied().max().unwrap_or(0)
    }

    /// Each step stays put or follows an edge, and the glued walk joins the
    /// pair through its terminal.
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.walks.iter().all(|w| {
            w.walk.len() == 2 * self.l + 1
                && w.walk[0] == w.pair.0
                && w.walk[2 * self.l] == w.pair.1
                && w.walk[self.l] == w.terminal
                && w.walk
                    .windows(2)
                    .all(|s| s[0] == s[1] || g.has_edge(s[0], s[1]))
        })
    }
}

/// Lazy walk `P = (1 + A T^{-1}) / 2`: `h[r][u]` is the probability that a
/// walk from `u` sits on `w` after `r` steps.
fn hitting_table(g: &Graph, w: Vertex, l: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut table = Vec::with_capacity(l + 1);
    let mut h = vec![0.0; n];
    h[w] = 1.0;
    table.push(h);
    for _ in 0..l {
        let prev = table.last().expect("nonempty");
        let next: Vec<f64> = (0..n)
            .map(|u| {
                let nb: f64 = g.neighbors(u).iter().map(|&z| prev[z]).sum();
                0.5 * prev[u] + nb / (2.0 * g.degree(u) as f64)
            })
            .collect();
        table.push(next);
    }
    table
}

fn lazy_probability(g: &Graph, u: Vertex, z: Vertex) -> f64 {
    if u == z {
        0.5
    } else {
        0.5 / g.degree(u) as f64
    }
}

/// Samples `l` steps from `start` conditioned on ending at the table's
/// terminal.
fn sample_bridge<R: Rng>(g: &Graph, table: &[Vec<f64>], start: Vertex, rng: &mut R) -> Vec<Vertex> {
    let l = table.len() - 1;
    let mut walk = vec![start];
    let mut u = start;
    for step in 0..l {
        let remaining = l - step;
        let options: Vec<(Vertex, f64)> = std::iter::once(u)
            .chain(g.neighbors(u).iter().copied())
            .map(|z| (z, lazy_probability(g, u, z) * table[remaining - 1][z]))
            .collect();
        let total: f64 = options.iter().map(|o| o.1).sum();
        let mut draw = rng.gen::<f64>() * total;
        let mut next = options
            .iter()
            .rev()
            .find(|o| o.1 > 0.0)
            .expect("bridge has support")
            .0;
        for &(z, weight) in &options {
            if weight > 0.0 && draw < weight {
                next = z;
                break;
            }
            draw -= weight;
        }
        walk.push(next);
        u = next;
    }
    walk
}

/// Terminal drawn from the stationary distribution `d_v / Σ d`.
fn sample_terminal<R: Rng>(g: &Graph, rng: &mut R) -> Vertex {
    let total: usize = g.degrees().iter().sum();
    let mut draw = rng.gen_range(0..total);
    for v in 0..g.n() {
        let d = g.degree(v);
        if draw < d {
            return v;
        }
        draw -= d;
    }
    unreachable!("draw below total degree")
}

fn pair_rng(seed: u64, attempt: usize, pair: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((attempt as u64) << 32) | pair as u64);
    rng
}

fn transposed_pairs(sigma: &Permutation) -> Vec<(Vertex, Vertex)> {
    (0..sigma.len())
        .filter(|&v| v < sigma.apply(v))
        .map(|v| (v, sigma.apply(v)))
        .collect()
}

fn sample_attempt(
    g: &Graph,
    sigma: &Permutation,
    l: usize,
    seed: u64,
    attempt: usize,
) -> Result<WalkSystem, RoutingError> {
    let mut tables: HashMap<Vertex, Vec<Vec<f64>>> = HashMap::new();
    let mut walks = Vec::new();
    for (index, (v, u)) in transposed_pairs(sigma).into_iter().enumerate() {
        let mut rng = pair_rng(seed, attempt, index);
        let mut glued = None;
        for _ in 0..TERMINAL_RETRIES {
            let w = sample_terminal(g, &mut rng);
            let table = tables.entry(w).or_insert_with(|| hitting_table(g, w, l));
            if table[l][v] <= 0.0 || table[l][u] <= 0.0 {
                continue;
            }
            let first = sample_bridge(g, table, v, &mut rng);
            let second = sample_bridge(g, table, u, &mut rng);
            let mut walk = first;
            walk.extend(second.iter().rev().skip(1));
            glued = Some(GluedWalk {
                pair: (v, u),
                terminal: w,
                walk,
            });
            break;
        }
        walks.push(glued.ok_or(RoutingError::UnreachableEndpoint {
            from: v,
            to: u,
            steps: 2 * l,
        })?);
    }
    let (interference_counts, interference_graph) = interference(g.n(), l, &walks);
    Ok(WalkSystem {
        l,
        walks,
        interference_counts,
        interference_graph,
    })
}

/// Pairs interfere when a half of one and a half of the other occupy the
/// same vertex at positions `i, j ≤ l` with `|i - j| ≤ 1`.
fn interference(n: usize, l: usize, walks: &[GluedWalk]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut occupants: Vec<Vec<usize>> = vec![Vec::new(); (l + 1) * n];
    for (k, w) in walks.iter().enumerate() {
        for half in w.halves(l) {
            for (i, &v) in half.iter().enumerate() {
                let cell = &mut occupants[i * n + v];
                if cell.last() != Some(&k) {
                    cell.push(k);
                }
            }
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); walks.len()];
    for (k, w) in walks.iter().enumerate() {
        for half in w.halves(l) {
            for (i, &v) in half.iter().enumerate() {
                for j in i.saturating_sub(1)..=(i + 1).min(l) {
                    for &other in &occupants[j * n + v] {
                        if other != k {
                            adj[k].push(other);
                        }
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    (adj.iter().map(Vec::len).collect(), adj)
}

/// One conditioned walk system for the involution `sigma`.
pub fn sample_glued_walks(
    g: &Graph,
    sigma: &Permutation,
    l: usize,
    seed: u64,
) -> Result<WalkSystem, RoutingError> {
    check_size(g, sigma)?;
    if !sigma.is_involution() {
        return Err(RoutingError::NotAnInvolution);
    }
    if l == 0 {
        return Err(RoutingError::Graph(crate::error::GraphError::BadParams(
            "walk half-length must be at least 1".into(),
        )));
    }
    sample_attempt(g, sigma, l, seed, 0)
}

/// Greedy coloring, vertices taken by descending degree then index.
pub fn color_graph(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&k| (std::cmp::Reverse(adj[k].len()), k));
    let mut color = vec![usize::MAX; adj.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for k in order {
        let used: Vec<usize> = adj[k].iter().map(|&o| color[o]).collect();
        let c = (0..)
            .find(|c| !used.contains(c))
            .expect("some color is free");
        color[k] = c;
        if classes.len() <= c {
            classes.resize(c + 1, Vec::new());
        }
        classes[c].push(k);
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    classes
}

/// Color classes of the interference graph.
pub fn color_walks(ws: &WalkSystem) -> Vec<Vec<usize>> {
    color_graph(&ws.interference_graph)
}

/// Chronological loop erasure: the simple path left after cutting every
/// cycle (including lazy repeats) in visiting order.
pub fn loop_erase(walk: &[Vertex]) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::new();
    let mut index: HashMap<Vertex, usize> = HashMap::new();
    for &v in walk {
        if let Some(&i) = index.get(&v) {
            for u in path.drain(i + 1..) {
                index.remove(&u);
            }
        } else {
            index.insert(v, path.len());
            path.push(v);
        }
    }
    path
}

/// Rounds exchanging the tokens on the ends of the simple path `path` and
/// restoring every interior token.
///
/// With edges `e_1..e_m`, the front token crosses `e_r` in round `r` while
/// the back token crosses `e_{m+1+s-r}` (`s = 1` for even `m`); they meet on
/// a single edge. Takes `m` rounds for odd `m`, `m + 1` for even `m`.
pub fn sweep_rounds(path: &[Vertex]) -> Vec<Vec<Edge>> {
    let m = path.len().saturating_sub(1);
    if m == 0 {
        return Vec::new();
    }
    let edge = |r: usize| canonical_edge(path[r - 1], path[r]);
    let s = usize::from(m.is_multiple_of(2));
    (1..=m + s)
        .map(|t| {
            let mut round = Vec::new();
            if t <= m {
                round.push(edge(t));
            }
            let back = m + 1 + s - t;
            if (1..=m).contains(&back) && back != t {
                round.push(edge(back));
            }
            round
        })
        .collect()
}

/// Result of one order-two routing, with the walk system that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderTwoOutcome {
    pub schedule: Schedule,
    pub walks: WalkSystem,
    pub classes: usize,
    pub attempts: usize,
    /// `120 l d_*`.
    pub interference_threshold: f64,
}

/// Routes the involution `sigma` along conditioned random walks.
pub fn route_order_two_detailed(
    g: &Graph,
    sigma: &Permutation,
    seed: u64,
) -> Result<OrderTwoOutcome, RoutingError> {
    check_size(g, sigma)?;
    if !sigma.is_involution() {
        return Err(RoutingError::NotAnInvolution);
    }
    g.ensure_connected()?;
    let n = g.n();
    if sigma.is_identity() {
        return Ok(OrderTwoOutcome {
            schedule: Schedule::default(),
            walks: WalkSystem {
                l: 0,
                walks: Vec::new(),
                interference_counts: Vec::new(),
                interference_graph: Vec::new(),
            },
            classes: 0,
            attempts: 0,
            interference_threshold: 0.0,
        });
    }
    let lambda = spectral::spectral_gap(g)?;
    let l = walk_half_length(n, lambda);
    let threshold = 120.0 * l as f64 * g.degree_stats().ratio_f64();

    for attempt in 0..MAX_ATTEMPTS {
        let ws = sample_attempt(g, sigma, l, seed, attempt)?;
        if ws.max_interference() as f64 > threshold {
            continue;
        }
        let paths: Vec<Vec<Vertex>> = ws.walks.iter().map(|w| loop_erase(&w.walk)).collect();
        // interference plus vertex sharing between executed paths
        let mut adj = ws.interference_graph.clone();
        let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, p) in paths.iter().enumerate() {
            for &v in p {
                users[v].push(k);
            }
        }
        for list in &users {
            for &a in list {
                for &b in list {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let classes = color_graph(&adj);
        let mut schedule = Schedule::default();
        for class in &classes {
            let sweeps: Vec<Vec<Vec<Edge>>> =
                class.iter().map(|&k| sweep_rounds(&paths[k])).collect();
            let len = sweeps.iter().map(Vec::len).max().unwrap_or(0);
            for r in 0..len {
                let mut round: Vec<Edge> = sweeps
                    .iter()
                    .filter_map(|s| s.get(r))
                    .flatten()
                    .copied()
                    .collect();
                round.sort_unstable();
                schedule.rounds.push(round);
            }
        }
        return Ok(OrderTwoOutcome {
            schedule: schedule.trimmed(),
            classes: classes.len(),
            walks: ws,
            attempts: attempt + 1,
            interference_threshold: threshold,
        });
    }
    Err(RoutingError::RetriesExhausted(MAX_ATTEMPTS))
}

pub fn route_order_two(
    g: &Graph,
    sigma: &Permutation,
    seed: u64,
) -> Result<Schedule, RoutingError> {
    route_order_two_detailed(g, sigma, seed).map(|o| o.schedule)
}

/// Both order-two routings of a general permutation, first factor first.
pub fn route_general_detailed(
    g: &Graph,
    pi: &Permutation,
    seed: u64,
) -> Result<(OrderTwoOutcome, OrderTwoOutcome), RoutingError> {
    check_size(g, pi)?;
    let (first, second) = involution_decompose(pi);
    let a = route_order_two_detailed(g, &first, seed)?;
    let b = route_order_two_detailed(g, &second, seed ^ 0x9e37_79b9_7f4a_7c15)?;
    Ok((a, b))
}

pub fn route_general(g: &Graph, pi: &Permutation, seed: u64) -> Result<Schedule, RoutingError> {
    let (a, b) = route_general_detailed(g, pi, seed)?;
    let mut schedule = a.schedule;
    schedule.extend(b.schedule);
    Ok(schedule)
}
