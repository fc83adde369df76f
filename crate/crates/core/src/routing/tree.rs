use crate::error::RoutingError;
use crate::graph::{Edge, Graph, Vertex};

use super::{check_size, Permutation, Schedule};

/// Vertex of minimum eccentricity, smallest index on ties.
fn center(g: &Graph) -> Vertex {
    (0..g.n())
        .min_by_key(|&v| {
            let ecc = g.bfs_distances(v).into_iter().flatten().max().unwrap_or(0);
            (ecc, v)
        })
        .expect("nonempty graph")
}

/// Tree path from `a` to `b` following parent pointers.
fn tree_path(parent: &[Vertex], depth: &[usize], mut a: Vertex, mut b: Vertex) -> Vec<Vertex> {
    let mut up = vec![a];
    let mut down = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            up.push(a);
        } else {
            b = parent[b];
            down.push(b);
        }
    }
    down.pop();
    up.extend(down.into_iter().rev());
    up
}

/// Leaf settling on a BFS spanning tree rooted at a center vertex.
///
/// Repeatedly takes the deepest remaining leaf, walks the token destined for
/// it along the tree path, and removes the leaf. The sequential swaps are
/// then packed into rounds as early as dependencies allow.
pub fn route_spanning_tree(g: &Graph, pi: &Permutation) -> Result<Schedule, RoutingError> {
    check_size(g, pi)?;
    g.ensure_connected()?;
    let n = g.n();
    let root = center(g);
    let parent: Vec<Vertex> = g
        .bfs_tree(root)
        .into_iter()
        .map(|p| p.expect("connected"))
        .collect();
    let depth: Vec<usize> = g
        .bfs_distances(root)
        .into_iter()
        .map(|d| d.expect("connected"))
        .collect();
    let mut children = vec![0usize; n];
    for v in 0..n {
        if v != root {
            children[parent[v]] += 1;
        }
    }

    let mut tokens: Vec<Vertex> = (0..n).collect();
    let mut position: Vec<Vertex> = (0..n).collect();
    let inverse = pi.inverse();
    let mut alive = vec![true; n];
    let mut swaps: Vec<Edge> = Vec::new();

    for _ in 0..n.saturating_sub(1) {
        let leaf = (0..n)
            .filter(|&v| alive[v] && v != root && children[v] == 0)
            .max_by_key(|&v| (depth[v], std::cmp::Reverse(v)))
            .expect("a tree with two or more vertices has a leaf");
        let token = inverse.apply(leaf);
        let path = tree_path(&parent, &depth, position[token], leaf);
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            tokens.swap(a, b);
            position[tokens[a]] = a;
            position[tokens[b]] = b;
            swaps.push((a, b));
        }
        alive[leaf] = false;
        children[parent[leaf]] -= 1;
    }
    Ok(Schedule::from_swaps(&swaps))
}
