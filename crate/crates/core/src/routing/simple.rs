use crate::error::RoutingError;
use crate::graph::{Edge, Vertex};

use super::{Permutation, Schedule};

/// Odd-even transposition sort on the path `0 - 1 - ... - (n-1)`.
pub fn route_odd_even(n: usize, pi: &Permutation) -> Result<Schedule, RoutingError> {
    if pi.len() != n {
        return Err(RoutingError::SizeMismatch {
            perm: pi.len(),
            graph: n,
        });
    }
    // destination of the token currently on each vertex
    let mut dest: Vec<Vertex> = pi.mapping().to_vec();
    let mut rounds = Vec::with_capacity(n);
    for t in 0..n {
        let mut round = Vec::new();
        let mut i = t % 2;
        while i + 1 < n {
            if dest[i] > dest[i + 1] {
                dest.swap(i, i + 1);
                round.push((i, i + 1));
            }
            i += 2;
        }
        rounds.push(round);
    }
    Ok(Schedule::new(rounds).trimmed())
}

/// Splits `pi` into involutions `(first, second)` with `second ∘ first = pi`,
/// so routing `first` and then `second` realizes `pi`.
///
/// On a cycle `(c_0, ..., c_{k-1})`: `first` maps `c_i ↦ c_{k-1-i}` and
/// `second` maps `c_i ↦ c_{(k-i) mod k}`.
pub fn involution_decompose(pi: &Permutation) -> (Permutation, Permutation) {
    let n = pi.len();
    let mut first: Vec<Vertex> = (0..n).collect();
    let mut second: Vec<Vertex> = (0..n).collect();
    for cycle in pi.cycles() {
        let k = cycle.len();
        for (i, &c) in cycle.iter().enumerate() {
            first[c] = cycle[k - 1 - i];
            second[c] = cycle[(k - i) % k];
        }
    }
    (
        Permutation::new(first).expect("reflection of a cycle is a bijection"),
        Permutation::new(second).expect("reflection of a cycle is a bijection"),
    )
}

fn involution_round(sigma: &Permutation) -> Vec<Edge> {
    (0..sigma.len())
        .filter(|&v| v < sigma.apply(v))
        .map(|v| (v, sigma.apply(v)))
        .collect()
}

/// At most two rounds on `K_n`, one per involution factor.
pub fn route_complete(n: usize, pi: &Permutation) -> Result<Schedule, RoutingError> {
    if pi.len() != n {
        return Err(RoutingError::SizeMismatch {
            perm: pi.len(),
            graph: n,
        });
    }
    let (first, second) = involution_decompose(pi);
    Ok(Schedule::new(vec![involution_round(&first), involution_round(&second)]).trimmed())
}
