use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cut side is empty or covers every vertex")]
    EmptySide,
    #[error("edge ({0}, {1}) does not cross the bipartition hint")]
    NotBipartiteAcrossHint(usize, usize),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("eigensolver did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("{n} vertices exceeds the enumeration limit of {limit}; only user-supplied cuts can be evaluated")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("|X| = {size} exceeds n/2 for n = {n}")]
    SideTooLarge { size: usize, n: usize },
    #[error("vertex boundary of one side is empty")]
    DegenerateBoundary,
    #[error("maximum matching across the cut is empty")]
    ZeroMatching,
    #[error("SIE constant must lie in (0, 4], got {0}")]
    BadAlpha(String),
    #[error("entropy change must be non-negative")]
    NegativeEntropy,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("permutation acts on {perm} vertices but the graph has {graph}")]
    SizeMismatch { perm: usize, graph: usize },
    #[error("round {round}: vertex {vertex} is swapped twice")]
    NotAMatching { round: usize, vertex: usize },
    #[error("round {round}: ({u}, {v}) is not an edge")]
    NotAnEdge { round: usize, u: usize, v: usize },
    #[error("permutation is not an involution")]
    NotAnInvolution,
    #[error("host graph is not {0}")]
    WrongHost(&'static str),
    #[error("no length-{steps} walk from {from} reaches {to}")]
    UnreachableEndpoint {
        from: usize,
        to: usize,
        steps: usize,
    },
    #[error("random-walk routing failed after {0} attempts")]
    RetriesExhausted(usize),
    #[error("free phase moves a token across the cut")]
    FreePhaseCrossesCut,
    #[error("|X| = {size} exceeds n/2 for n = {n}")]
    SideTooLarge { size: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("permutation is unreachable (graph disconnected)")]
    Unreachable,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} qubits exceeds the simulator cap of {1}")]
    TooManyQubits(usize, usize),
    #[error("qubit subset is empty, repeated, out of range or covers every qubit")]
    BadSubset,
    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("operator dimension {got} does not match {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("operator acts outside the cut boundary on qubit {0}")]
    SupportViolation(usize),
    #[error("layer changed the cut entropy by {delta} bits, above the bound {bound}")]
    SteViolation { delta: f64, bound: f64 },
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("permutation must exchange the two cliques (or be the identity)")]
    BadPermutation,
    #[error("amplitude left the simulated subspace (norm {0:e})")]
    Leakage(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
