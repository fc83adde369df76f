//! Graph file formats: a whitespace edge list and JSON.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<Edge> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(j.n, &edges)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

pub fn from_json(text: &str) -> Result<Graph, GraphError> {
    let j: GraphJson = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    Graph::try_from(j)
}

/// `n m` header, then one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Parse("missing `n m` header".into()))?;
    let nums = parse_pair(header)?;
    let (n, m) = (nums.0, nums.1);
    let edges: Vec<Edge> = lines.map(parse_pair).collect::<Result<_, _>>()?;
    if edges.len() != m {
        return Err(GraphError::Parse(format!(
            "header promises {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(n, &edges)
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(GraphError::Parse(format!(
            "expected two integers: `{line}`"
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| GraphError::Parse(format!("`{s}`: {e}")))
    };
    Ok((parse(parts[0])?, parse(parts[1])?))
}

/// Reads either format, sniffing JSON by its leading brace.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_edge_list(text)
    }
}
