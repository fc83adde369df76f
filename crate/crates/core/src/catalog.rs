//! Exhaustive small-graph catalogues for sweeps and certification.

use std::collections::BTreeSet;

use crate::graph::Graph;

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn relabel(n: usize, mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                out |= 1 << pair_index(n, perm[u], perm[v]);
            }
            bit += 1;
        }
    }
    out
}

fn degrees(n: usize, mask: u64) -> Vec<usize> {
    let mut deg = vec![0; n];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
            bit += 1;
        }
    }
    deg
}

/// Canonical edge mask: the minimum over all relabelings that list
/// vertices in nondecreasing degree order.
fn canonical(n: usize, mask: u64) -> u64 {
    let deg = degrees(n, mask);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    // blocks of equal degree, permuted independently
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if deg[b[0]] == deg[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = vec![0; n];
    fn rec(
        blocks: &mut [Vec<usize>],
        k: usize,
        pos: usize,
        perm: &mut [usize],
        n: usize,
        mask: u64,
        best: &mut u64,
    ) {
        if k == blocks.len() {
            *best = (*best).min(relabel(n, mask, perm));
            return;
        }
        let len = blocks[k].len();
        let mut heap = blocks[k].clone();
        let mut c = vec![0; len];
        for (i, &v) in heap.iter().enumerate() {
            perm[v] = pos + i;
        }
        rec(blocks, k + 1, pos + len, perm, n, mask, best);
        // Heap's algorithm over the block
        let mut i = 0;
        while i < len {
            if c[i] < i {
                if i % 2 == 0 {
                    heap.swap(0, i);
                } else {
                    heap.swap(c[i], i);
                }
                for (j, &v) in heap.iter().enumerate() {
                    perm[v] = pos + j;
                }
                rec(blocks, k + 1, pos + len, perm, n, mask, best);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
    rec(&mut blocks, 0, 0, &mut perm, n, mask, &mut best);
    best
}

fn mask_connected(n: usize, mask: u64) -> bool {
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0u64;
        for u in 0..n {
            if frontier >> u & 1 == 0 {
                continue;
            }
            for v in 0..n {
                if v != u && mask >> pair_index(n, u, v) & 1 == 1 && seen >> v & 1 == 0 {
                    next |= 1 << v;
                }
            }
        }
        seen |= next;
        frontier = next;
    }
    seen.count_ones() as usize == n
}

/// All graphs on `n` vertices up to isomorphism, as canonical edge masks.
/// Built by vertex extension from the classes on `n - 1` vertices.
pub fn all_graph_masks(n: usize) -> Vec<u64> {
    assert!(n <= 9, "catalogue is limited to 9 vertices");
    if n <= 1 {
        return vec![0];
    }
    let mut classes = BTreeSet::new();
    for small in all_graph_masks(n - 1) {
        // re-embed the (n-1)-vertex mask into n-vertex indexing
        let mut base = 0u64;
        let mut bit = 0;
        for u in 0..n - 1 {
            for v in (u + 1)..n - 1 {
                if small >> bit & 1 == 1 {
                    base |= 1 << pair_index(n, u, v);
                }
                bit += 1;
            }
        }
        for nbrs in 0u64..(1 << (n - 1)) {
            let mut mask = base;
            for u in 0..n - 1 {
                if nbrs >> u & 1 == 1 {
                    mask |= 1 << pair_index(n, u, n - 1);
                }
            }
            classes.insert(canonical(n, mask));
        }
    }
    classes.into_iter().collect()
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graph_masks(n)
        .into_iter()
        .filter(|&m| mask_connected(n, m))
        .map(|m| Graph::from_edge_mask(n, m))
        .collect()
}

/// Connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}
