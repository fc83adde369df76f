//! Normalized Laplacian spectrum and the expansion quantities `c`, `h`, `m`
//! and the Cheeger constant `h_G`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::SpectralError;
use crate::graph::{Graph, Vertex};
use crate::linalg::{eigh, Matrix};

pub type Rational = Ratio<i64>;

/// Eigenvalues below this are treated as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Default hard limit on `n` for subset enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// `L = 1 - T^{-1/2} A T^{-1/2}`.
pub fn normalized_laplacian(g: &Graph) -> Result<Matrix<f64>, SpectralError> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(SpectralError::IsolatedVertex(v));
    }
    let mut l = Matrix::<f64>::identity(n);
    for &(u, v) in g.edges() {
        let w = -1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt();
        l[(u, v)] = w;
        l[(v, u)] = w;
    }
    Ok(l)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue above [`ZERO_EIGENVALUE_TOL`].
    pub spectral_gap: f64,
    /// `‖L v - λ v‖₂` for the gap eigenpair.
    pub residual: f64,
}

/// Full spectrum and gap `λ(G)` of the normalized Laplacian.
pub fn spectrum(g: &Graph) -> Result<SpectralSummary, SpectralError> {
    g.ensure_connected()?;
    if g.n() == 1 {
        // no nonzero eigenvalue exists; callers need n >= 2
        return Err(SpectralError::Graph(crate::error::GraphError::BadParams(
            "spectral gap needs at least two vertices".into(),
        )));
    }
    let l = normalized_laplacian(g)?;
    let eig = eigh(&l)?;
    let k = eig
        .values
        .iter()
        .position(|&x| x > ZERO_EIGENVALUE_TOL)
        .expect("connected graph on >= 2 vertices has a nonzero eigenvalue");
    let gap = eig.values[k];
    let vk = eig.vector(k);
    let lv = l.apply(&vk);
    let residual = lv
        .iter()
        .zip(&vk)
        .map(|(a, b)| (a - gap * b).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(SpectralSummary {
        eigenvalues: eig.values,
        spectral_gap: gap,
        residual,
    })
}

pub fn spectral_gap(g: &Graph) -> Result<f64, SpectralError> {
    spectrum(g).map(|s| s.spectral_gap)
}

/// A minimizing subset together with its exact ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed {
    pub value: Rational,
    pub witness: Vec<Vertex>,
}

impl Witnessed {
    pub fn to_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionSummary {
    /// Vertex expansion `c(G) = min |δX| / |X|`.
    pub c: Witnessed,
    /// Edge expansion `h(G) = min |∂X| / |X|`.
    pub h: Witnessed,
    /// Matching expansion `m(G) = min |M(∂X)| / |X|`.
    pub m: Witnessed,
    /// Cheeger constant `h_G = min |∂X| / Σ_{x∈X} d_x`.
    pub cheeger: Witnessed,
}

/// Per-subset counts used by every expansion quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetCounts {
    pub size: usize,
    pub vertex_boundary: usize,
    pub edge_boundary: usize,
    pub matching: usize,
    pub volume: usize,
}

/// Bitmask view of a graph for subset enumeration (`n ≤ 63`).
pub(crate) struct MaskGraph {
    pub n: usize,
    pub nbrs: Vec<u64>,
}

impl MaskGraph {
    pub fn new(g: &Graph) -> Self {
        assert!(
            g.n() < 64,
            "bitmask enumeration supports at most 63 vertices"
        );
        let nbrs = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        MaskGraph { n: g.n(), nbrs }
    }

    pub fn counts(&self, x: u64) -> SubsetCounts {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let xbar = full & !x;
        let mut reach = 0u64;
        let mut edge_boundary = 0;
        let mut volume = 0;
        let mut bits = x;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            reach |= self.nbrs[v];
            edge_boundary += (self.nbrs[v] & xbar).count_ones() as usize;
            volume += self.nbrs[v].count_ones() as usize;
        }
        SubsetCounts {
            size: x.count_ones() as usize,
            vertex_boundary: (reach & xbar).count_ones() as usize,
            edge_boundary,
            matching: self.cut_matching(x, xbar),
            volume,
        }
    }

    /// Maximum matching between `x` and `xbar` along graph edges.
    pub fn cut_matching(&self, x: u64, xbar: u64) -> usize {
        let mut mate = vec![usize::MAX; self.n];
        let mut size = 0;
        let mut bits = x;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let mut visited = 0u64;
            if self.augment(v, xbar, &mut visited, &mut mate) {
                size += 1;
            }
        }
        size
    }

    fn augment(&self, v: usize, xbar: u64, visited: &mut u64, mate: &mut [usize]) -> bool {
        let mut cand = self.nbrs[v] & xbar & !*visited;
        while cand != 0 {
            let r = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *visited |= 1 << r;
            if mate[r] == usize::MAX || self.augment(mate[r], xbar, visited, mate) {
                mate[r] = v;
                return true;
            }
        }
        false
    }
}

pub(crate) fn mask_to_vec(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Calls `f` for every nonempty subset with at most `n / 2` vertices.
pub(crate) fn for_each_small_subset(n: usize, mut f: impl FnMut(u64)) {
    let half = n / 2;
    let full: u64 = (1u64 << n) - 1;
    for mask in 1..=full {
        if mask.count_ones() as usize <= half {
            f(mask);
        }
    }
}

pub(crate) fn check_limit(g: &Graph, limit: usize) -> Result<(), SpectralError> {
    if g.n() > limit || g.n() > 63 {
        return Err(SpectralError::TooLarge {
            n: g.n(),
            limit: limit.min(63),
        });
    }
    g.ensure_connected()?;
    if g.n() < 2 {
        return Err(SpectralError::Graph(crate::error::GraphError::BadParams(
            "expansion needs at least two vertices".into(),
        )));
    }
    Ok(())
}

struct Best {
    value: Option<Rational>,
    mask: u64,
}

impl Best {
    fn new() -> Self {
        Best {
            value: None,
            mask: 0,
        }
    }

    fn offer(&mut self, value: Rational, mask: u64) {
        let better = match self.value {
            None => true,
            Some(v) if value < v => true,
            Some(v) if value == v => lex_less(mask, self.mask),
            _ => false,
        };
        if better {
            self.value = Some(value);
            self.mask = mask;
        }
    }

    fn finish(self) -> Witnessed {
        Witnessed {
            value: self.value.expect("at least one subset offered"),
            witness: mask_to_vec(self.mask),
        }
    }
}

/// Lexicographic comparison of the sorted vertex lists of two subsets.
fn lex_less(a: u64, b: u64) -> bool {
    mask_to_vec(a) < mask_to_vec(b)
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den as i64)
}

/// All four expansion quantities in one enumeration pass.
pub fn expansion_summary(g: &Graph, limit: usize) -> Result<ExpansionSummary, SpectralError> {
    check_limit(g, limit)?;
    let mg = MaskGraph::new(g);
    let (mut c, mut h, mut m, mut hg) = (Best::new(), Best::new(), Best::new(), Best::new());
    for_each_small_subset(g.n(), |mask| {
        let k = mg.counts(mask);
        c.offer(ratio(k.vertex_boundary, k.size), mask);
        h.offer(ratio(k.edge_boundary, k.size), mask);
        m.offer(ratio(k.matching, k.size), mask);
        hg.offer(ratio(k.edge_boundary, k.volume), mask);
    });
    Ok(ExpansionSummary {
        c: c.finish(),
        h: h.finish(),
        m: m.finish(),
        cheeger: hg.finish(),
    })
}

fn single(
    g: &Graph,
    limit: usize,
    key: impl Fn(&SubsetCounts) -> Rational,
) -> Result<Witnessed, SpectralError> {
    check_limit(g, limit)?;
    let mg = MaskGraph::new(g);
    let mut best = Best::new();
    for_each_small_subset(g.n(), |mask| best.offer(key(&mg.counts(mask)), mask));
    Ok(best.finish())
}

pub fn vertex_expansion(g: &Graph, limit: usize) -> Result<Witnessed, SpectralError> {
    single(g, limit, |k| ratio(k.vertex_boundary, k.size))
}

pub fn edge_expansion(g: &Graph, limit: usize) -> Result<Witnessed, SpectralError> {
    single(g, limit, |k| ratio(k.edge_boundary, k.size))
}

pub fn matching_expansion(g: &Graph, limit: usize) -> Result<Witnessed, SpectralError> {
    single(g, limit, |k| ratio(k.matching, k.size))
}

pub fn cheeger_constant(g: &Graph, limit: usize) -> Result<Witnessed, SpectralError> {
    single(g, limit, |k| ratio(k.edge_boundary, k.volume))
}

/// `min |∂X| / vol(X)` over nonempty `X` with `vol(X) ≤ vol(V) / 2`, the
/// constraint under which both Cheeger inequalities hold.
pub fn cheeger_constant_by_volume(g: &Graph, limit: usize) -> Result<Witnessed, SpectralError> {
    check_limit(g, limit)?;
    let mg = MaskGraph::new(g);
    let total = 2 * g.edge_count();
    let mut best = Best::new();
    for mask in 1..(1u64 << g.n()) {
        let k = mg.counts(mask);
        if 2 * k.volume <= total {
            best.offer(ratio(k.edge_boundary, k.volume), mask);
        }
    }
    Ok(best.finish())
}

/// Counts for an explicit subset, recomputed through [`Graph::cut`].
pub fn subset_counts(g: &Graph, x: &[Vertex]) -> Result<SubsetCounts, SpectralError> {
    let cut = g.cut(x)?;
    Ok(SubsetCounts {
        size: cut.x.len(),
        vertex_boundary: cut.delta_x.len(),
        edge_boundary: cut.boundary_edges.len(),
        matching: cut.boundary_matching().size(),
        volume: cut.x.iter().map(|&v| g.degree(v)).sum(),
    })
}

pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheegerReport {
    pub lambda: f64,
    /// `h_G` over `|X| ≤ n/2`.
    pub cheeger: Witnessed,
    /// `2 h_G ≥ λ > h_G² / 2` with that `h_G`. Fails on some graphs, e.g.
    /// the star with five leaves, where `X` = center plus two leaves gives 3/7.
    pub holds: bool,
    /// `h_G` over `vol(X) ≤ vol(V)/2`.
    pub cheeger_by_volume: Witnessed,
    /// The same inequalities with the volume-constrained constant.
    pub holds_by_volume: bool,
}

pub fn check_cheeger(g: &Graph, limit: usize) -> Result<CheegerReport, SpectralError> {
    let lambda = spectral_gap(g)?;
    let cheeger = cheeger_constant(g, limit)?;
    let cheeger_by_volume = cheeger_constant_by_volume(g, limit)?;
    let inequality = |hg: f64| 2.0 * hg >= lambda - CHECK_TOL && lambda > hg * hg / 2.0 - CHECK_TOL;
    Ok(CheegerReport {
        lambda,
        holds: inequality(cheeger.to_f64()),
        cheeger,
        holds_by_volume: inequality(cheeger_by_volume.to_f64()),
        cheeger_by_volume,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingVertexReport {
    pub c: Witnessed,
    pub m: Witnessed,
    /// `m ≤ c` and (`m = 1` or `c ≤ 2m / (1 - m)`).
    pub holds: bool,
}

pub fn check_matching_vertex_equivalence(
    g: &Graph,
    limit: usize,
) -> Result<MatchingVertexReport, SpectralError> {
    let summary = expansion_summary(g, limit)?;
    let (c, m) = (summary.c.value, summary.m.value);
    let one = Rational::from_integer(1);
    // exact rational comparison, so the tolerance is not needed here
    let holds = m <= c && (m == one || (m < one && c * (one - m) <= m * 2));
    Ok(MatchingVertexReport {
        c: summary.c,
        m: summary.m,
        holds,
    })
}
