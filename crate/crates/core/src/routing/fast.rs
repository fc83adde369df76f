//! Routing when operations inside `X` and inside `X̄` are free and only
//! swaps across the cut cost a round.

use serde::{Deserialize, Serialize};

use crate::error::RoutingError;
use crate::graph::{canonical_edge, membership, Edge, Graph, Vertex};

use super::{check_size, Permutation, Verification};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FastPhase {
    /// Free rearrangement inside each side: the token on `p` moves to `moves[p]`.
    Free { moves: Vec<Vertex> },
    /// One round of swaps on cut edges.
    Cut { swaps: Vec<Edge> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastSchedule {
    pub x: Vec<Vertex>,
    /// Tokens that start in `X` and must leave it.
    pub marked: usize,
    /// `|M(∂X)|`.
    pub matching_size: usize,
    pub cut_rounds: usize,
    pub phases: Vec<FastPhase>,
}

fn small_side(g: &Graph, x: &[Vertex]) -> Result<Vec<bool>, RoutingError> {
    let cut = g.cut(x)?;
    if 2 * cut.x.len() > g.n() {
        return Err(RoutingError::SideTooLarge {
            size: cut.x.len(),
            n: g.n(),
        });
    }
    Ok(membership(g.n(), &cut.x))
}

/// Exchanges marked tokens through a maximum cut matching, `⌈k / |M(∂X)|⌉`
/// cut rounds for `k` marked tokens, with free phases in between.
pub fn route_fast_partition(
    g: &Graph,
    x: &[Vertex],
    pi: &Permutation,
) -> Result<FastSchedule, RoutingError> {
    check_size(g, pi)?;
    g.ensure_connected()?;
    let n = g.n();
    let in_x = small_side(g, x)?;
    let cut = g.cut(x)?;
    // matching edges oriented (X end, X̄ end), ordered by X end
    let mut pairs: Vec<(Vertex, Vertex)> = cut
        .boundary_matching()
        .edges
        .iter()
        .map(|&(a, b)| if in_x[a] { (a, b) } else { (b, a) })
        .collect();
    pairs.sort_unstable();

    let mut tokens: Vec<Vertex> = (0..n).collect();
    let mut phases = Vec::new();
    let leaves = |t: Vertex, side_x: bool| in_x[pi.apply(t)] != side_x;
    let marked = (0..n).filter(|&v| in_x[v] && !in_x[pi.apply(v)]).count();
    let mut cut_rounds = 0;

    loop {
        let out_x: Vec<Vertex> = (0..n)
            .filter(|&p| in_x[p] && leaves(tokens[p], true))
            .collect();
        let out_xbar: Vec<Vertex> = (0..n)
            .filter(|&p| !in_x[p] && leaves(tokens[p], false))
            .collect();
        debug_assert_eq!(out_x.len(), out_xbar.len());
        if out_x.is_empty() {
            break;
        }
        let r = out_x.len().min(pairs.len());
        let mut moves = vec![usize::MAX; n];
        for side in [true, false] {
            // positions holding tokens that must cross, by ascending token
            let mut crossing: Vec<Vertex> = if side {
                out_x.clone()
            } else {
                out_xbar.clone()
            };
            crossing.sort_by_key(|&p| tokens[p]);
            let chosen = &crossing[..r];
            let targets: Vec<Vertex> = pairs[..r]
                .iter()
                .map(|&(a, b)| if side { a } else { b })
                .collect();
            let rest_sources: Vec<Vertex> = (0..n)
                .filter(|&p| in_x[p] == side && !chosen.contains(&p))
                .collect();
            let rest_targets: Vec<Vertex> = (0..n)
                .filter(|&p| in_x[p] == side && !targets.contains(&p))
                .collect();
            for (&s, &t) in chosen
                .iter()
                .zip(&targets)
                .chain(rest_sources.iter().zip(&rest_targets))
            {
                moves[s] = t;
            }
        }
        tokens = permute(&tokens, &moves);
        phases.push(FastPhase::Free { moves });
        let swaps: Vec<Edge> = pairs[..r]
            .iter()
            .map(|&(a, b)| canonical_edge(a, b))
            .collect();
        for &(a, b) in &swaps {
            tokens.swap(a, b);
        }
        phases.push(FastPhase::Cut { swaps });
        cut_rounds += 1;
    }
    // settle every token inside its side
    let moves: Vec<Vertex> = tokens.iter().map(|&t| pi.apply(t)).collect();
    phases.push(FastPhase::Free { moves });

    Ok(FastSchedule {
        x: cut.x,
        marked,
        matching_size: pairs.len(),
        cut_rounds,
        phases,
    })
}

fn permute(tokens: &[Vertex], moves: &[Vertex]) -> Vec<Vertex> {
    let mut out = vec![0; tokens.len()];
    for (p, &t) in tokens.iter().enumerate() {
        out[moves[p]] = t;
    }
    out
}

/// Runs `schedule`, checking that free phases stay inside their side and
/// cut rounds are matchings of cut edges.
pub fn apply_fast_schedule<T: Clone>(
    g: &Graph,
    schedule: &FastSchedule,
    tokens: &[T],
) -> Result<Vec<T>, RoutingError> {
    let n = g.n();
    if tokens.len() != n {
        return Err(RoutingError::SizeMismatch {
            perm: tokens.len(),
            graph: n,
        });
    }
    let in_x = small_side(g, &schedule.x)?;
    let mut out = tokens.to_vec();
    for (round, phase) in schedule.phases.iter().enumerate() {
        match phase {
            FastPhase::Free { moves } => {
                let p = Permutation::new(moves.clone())?;
                if p.len() != n {
                    return Err(RoutingError::SizeMismatch {
                        perm: p.len(),
                        graph: n,
                    });
                }
                if (0..n).any(|v| in_x[v] != in_x[p.apply(v)]) {
                    return Err(RoutingError::FreePhaseCrossesCut);
                }
                let mut next = out.clone();
                for v in 0..n {
                    next[p.apply(v)] = out[v].clone();
                }
                out = next;
            }
            FastPhase::Cut { swaps } => {
                let mut touched = vec![false; n];
                for &(u, v) in swaps {
                    if u >= n || v >= n || !g.has_edge(u, v) || in_x[u] == in_x[v] {
                        return Err(RoutingError::NotAnEdge { round, u, v });
                    }
                    for w in [u, v] {
                        if std::mem::replace(&mut touched[w], true) {
                            return Err(RoutingError::NotAMatching { round, vertex: w });
                        }
                    }
                    out.swap(u, v);
                }
            }
        }
    }
    Ok(out)
}

pub fn verify_fast_schedule(g: &Graph, pi: &Permutation, schedule: &FastSchedule) -> Verification {
    let counted = schedule
        .phases
        .iter()
        .filter(|p| matches!(p, FastPhase::Cut { .. }))
        .count();
    let fail = |msg: String| Verification {
        valid: false,
        depth: counted,
        diagnostic: Some(msg),
    };
    if counted != schedule.cut_rounds {
        return fail(format!(
            "{counted} cut phases but cut_rounds = {}",
            schedule.cut_rounds
        ));
    }
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
    match apply_fast_schedule(g, schedule, &identity) {
        Err(e) => fail(e.to_string()),
        Ok(tokens) => match (0..g.n()).find(|&v| tokens[pi.apply(v)] != v) {
            Some(v) => fail(format!("token {v} does not reach {}", pi.apply(v))),
            None => Verification {
                valid: true,
                depth: counted,
                diagnostic: None,
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Swaps the first `|X|` vertices of `X` with the first `|X|` of `X̄`.
    fn full_exchange(n: usize, x: &[Vertex]) -> Permutation {
        let in_x = membership(n, x);
        let others: Vec<Vertex> = (0..n).filter(|&v| !in_x[v]).collect();
        let mut m: Vec<Vertex> = (0..n).collect();
        for (&a, &b) in x.iter().zip(&others) {
            m[a] = b;
            m[b] = a;
        }
        Permutation::new(m).unwrap()
    }

    #[test]
    fn vertex_barbell_full_exchange() {
        let g = families::vertex_barbell(5).unwrap();
        let x = [0, 1, 2, 3, 4];
        let pi = full_exchange(11, &x);
        let fs = route_fast_partition(&g, &x, &pi).unwrap();
        assert_eq!((fs.matching_size, fs.marked, fs.cut_rounds), (1, 5, 5));
        assert!(verify_fast_schedule(&g, &pi, &fs).valid);
    }

    #[test]
    fn setwise_fixed_needs_no_cut_rounds() {
        let g = families::barbell(4).unwrap();
        let pi = Permutation::new(vec![3, 2, 1, 0, 5, 4, 7, 6]).unwrap();
        let fs = route_fast_partition(&g, &[0, 1, 2, 3], &pi).unwrap();
        assert_eq!(fs.cut_rounds, 0);
        assert!(verify_fast_schedule(&g, &pi, &fs).valid);
    }

    #[test]
    fn lollipop_pair_full_exchange() {
        for n in [4, 6, 8] {
            let g = families::lollipop_pair(n).unwrap();
            let x: Vec<usize> = (0..n).collect();
            let pi = full_exchange(2 * n, &x);
            let fs = route_fast_partition(&g, &x, &pi).unwrap();
            assert_eq!(fs.cut_rounds, n.div_ceil(2));
            assert!(verify_fast_schedule(&g, &pi, &fs).valid);
        }
    }

    #[test]
    fn rejects_crossing_free_phase() {
        let g = families::path(2).unwrap();
        let bad = FastSchedule {
            x: vec![0],
            marked: 0,
            matching_size: 1,
            cut_rounds: 0,
            phases: vec![FastPhase::Free { moves: vec![1, 0] }],
        };
        assert_eq!(
            apply_fast_schedule(&g, &bad, &[0, 1]),
            Err(RoutingError::FreePhaseCrossesCut)
        );
    }

    proptest! {
        #[test]
        fn cut_rounds_match_formula(n in 2usize..16, p in 0.2f64..0.9, seed in any::<u64>()) {
            let g = families::gnp(n, p, seed).unwrap();
            prop_assume!(g.is_connected());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let order = Permutation::random(n, &mut rng);
            let size = 1 + (seed as usize) % (n / 2);
            let x: Vec<usize> = order.mapping()[..size].to_vec();
            let pi = Permutation::random(n, &mut rng);
            let fs = route_fast_partition(&g, &x, &pi).unwrap();
            prop_assert!(verify_fast_schedule(&g, &pi, &fs).valid);
            prop_assert_eq!(fs.cut_rounds, fs.marked.div_ceil(fs.matching_size));
            prop_assert!(fs.cut_rounds <= size.div_ceil(fs.matching_size));
        }
    }
}
