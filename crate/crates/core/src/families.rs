//! Named graph families.
//!
//! Labeling conventions:
//! - `path(n)`: `0 - 1 - ... - (n-1)`.
//! - `star(n)` (`S_n = K_{1,n}`): center `0`, leaves `1..=n`.
//! - `barbell(n)` (`C_{2n}`): cliques on `0..n` and `n..2n`, bridge `(n-1, n)`.
//! - `vertex_barbell(n)` (`B_{2n}`): cliques on `0..n` and `n+1..=2n`, center `n`
//!   adjacent to all `2n` clique vertices.
//! - `lollipop_pair(n)` (`L_{2n}`): cliques `G_1` on `0..n` and `G_2` on `n..2n`,
//!   with `x_1 = 0` joined to every vertex of `G_2` and `x_2 = n` joined to
//!   every vertex of `G_1`.
//! - `grid(rows, cols)`: vertex `r * cols + c`.
//! - `gnp(n, p, seed)`: each pair `(u, v)`, `u < v`, visited in lexicographic
//!   order and kept when a uniform draw from a seeded ChaCha8 stream is `< p`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Path { n: usize },
    Complete { n: usize },
    Star { n: usize },
    Barbell { n: usize },
    VertexBarbell { n: usize },
    LollipopPair { n: usize },
    Grid { rows: usize, cols: usize },
    Gnp { n: usize, p: f64, seed: u64 },
}

pub const FAMILY_NAMES: &[&str] = &[
    "path",
    "complete",
    "star",
    "barbell",
    "vertex_barbell",
    "lollipop_pair",
    "grid",
    "gnp",
];

impl Family {
    /// Resolves a family by name. `n` is the size parameter, `cols` the
    /// second grid dimension.
    pub fn from_name(
        name: &str,
        n: Option<usize>,
        cols: Option<usize>,
        p: Option<f64>,
        seed: Option<u64>,
    ) -> Result<Self, GraphError> {
        let need_n = || n.ok_or_else(|| GraphError::BadParams(format!("{name} needs --n")));
        let family = match name {
            "path" => Family::Path { n: need_n()? },
            "complete" => Family::Complete { n: need_n()? },
            "star" => Family::Star { n: need_n()? },
            "barbell" => Family::Barbell { n: need_n()? },
            "vertex_barbell" => Family::VertexBarbell { n: need_n()? },
            "lollipop_pair" => Family::LollipopPair { n: need_n()? },
            "grid" => Family::Grid {
                rows: need_n()?,
                cols: cols.ok_or_else(|| GraphError::BadParams("grid needs --cols".into()))?,
            },
            "gnp" => Family::Gnp {
                n: need_n()?,
                p: p.ok_or_else(|| GraphError::BadParams("gnp needs --p".into()))?,
                seed: seed.unwrap_or(0),
            },
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        Ok(family)
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Path { n } => path(n),
            Family::Complete { n } => complete(n),
            Family::Star { n } => star(n),
            Family::Barbell { n } => barbell(n),
            Family::VertexBarbell { n } => vertex_barbell(n),
            Family::LollipopPair { n } => lollipop_pair(n),
            Family::Grid { rows, cols } => grid(rows, cols),
            Family::Gnp { n, p, seed } => gnp(n, p, seed),
        }
    }
}

fn positive(n: usize, what: &str) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::BadParams(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn clique_edges(vertices: impl Iterator<Item = usize> + Clone) -> Vec<Edge> {
    let vs: Vec<usize> = vertices.collect();
    let mut edges = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            edges.push((u, v));
        }
    }
    edges
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let edges: Vec<Edge> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    Graph::new(n, &clique_edges(0..n))
}

/// `S_n = K_{1,n}` on `n + 1` vertices.
pub fn star(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let edges: Vec<Edge> = (1..=n).map(|v| (0, v)).collect();
    Graph::new(n + 1, &edges)
}

pub fn barbell(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let mut edges = clique_edges(0..n);
    edges.extend(clique_edges(n..2 * n));
    edges.push((n - 1, n));
    Graph::new(2 * n, &edges)
}

pub fn vertex_barbell(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let center = n;
    let mut edges = clique_edges(0..n);
    edges.extend(clique_edges(n + 1..2 * n + 1));
    edges.extend((0..2 * n + 1).filter(|&v| v != center).map(|v| (v, center)));
    Graph::new(2 * n + 1, &edges)
}

pub fn lollipop_pair(n: usize) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    let (x1, x2) = (0, n);
    let mut edges = clique_edges(0..n);
    edges.extend(clique_edges(n..2 * n));
    edges.extend((n..2 * n).map(|v| (x1, v)));
    edges.extend((0..n).map(|u| (u, x2)));
    Graph::new(2 * n, &edges)
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    positive(rows, "rows")?;
    positive(cols, "cols")?;
    let at = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges)
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    positive(n, "n")?;
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadParams(format!(
            "p = {p} is not a probability"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}
