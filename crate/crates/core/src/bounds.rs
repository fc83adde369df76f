//! Closed-form routing-time bounds and finite-size separation diagnostics.
//!
//! Gate-model bounds (`qrt_*`) are exact rationals in rounds. Hamiltonian
//! bounds (`hrt_*`) are floats in swap-time units and depend on the SIE
//! constant `alpha` (proven value 4, conjectured 2).

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::BoundsError;
use crate::graph::{Cut, Graph, Vertex};
use crate::spectral::{
    self, check_limit, for_each_small_subset, mask_to_vec, MaskGraph, Rational, Witnessed,
};

pub const DEFAULT_ALPHA: f64 = 4.0;
pub const CONJECTURED_ALPHA: f64 = 2.0;

/// Maximum degree treated as "bounded" by the separation diagnostics.
pub const BOUNDED_DEGREE: usize = 4;

pub const DIAGNOSTIC_LABEL: &str = "asymptotic conditions evaluated at finite n; not a proof";

pub fn check_alpha(alpha: f64) -> Result<(), BoundsError> {
    if alpha > 0.0 && alpha <= 4.0 {
        Ok(())
    } else {
        Err(BoundsError::BadAlpha(alpha.to_string()))
    }
}

fn small_cut(g: &Graph, x: &[Vertex]) -> Result<Cut, BoundsError> {
    let cut = g.cut(x)?;
    if 2 * cut.x.len() > g.n() {
        return Err(BoundsError::SideTooLarge {
            size: cut.x.len(),
            n: g.n(),
        });
    }
    Ok(cut)
}

fn ratio(num: i64, den: usize) -> Rational {
    Rational::new(num, den as i64)
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn qrt_diameter_lb(g: &Graph) -> Result<usize, BoundsError> {
    Ok(g.diameter()?)
}

/// `|X| / |M(∂X)|`.
pub fn qrt_matching_lb(g: &Graph, x: &[Vertex]) -> Result<Rational, BoundsError> {
    let cut = small_cut(g, x)?;
    let m = cut.boundary_matching().size();
    if m == 0 {
        return Err(BoundsError::ZeroMatching);
    }
    Ok(ratio(cut.x.len() as i64, m))
}

/// `max((2|X| - |δX|) / |M(∂(δX))|, (2|X| - |δX̄|) / |M(∂(δX̄))|)`.
pub fn qrt_expansion_lb(g: &Graph, x: &[Vertex]) -> Result<Rational, BoundsError> {
    let cut = small_cut(g, x)?;
    if cut.delta_x.is_empty() || cut.delta_xbar.is_empty() {
        return Err(BoundsError::DegenerateBoundary);
    }
    let (mx, mxbar) = (
        cut.delta_x_matching(g.n()).size(),
        cut.delta_xbar_matching(g.n()).size(),
    );
    if mx == 0 || mxbar == 0 {
        return Err(BoundsError::ZeroMatching);
    }
    let size = 2 * cut.x.len() as i64;
    let a = ratio(size - cut.delta_x.len() as i64, mx);
    let b = ratio(size - cut.delta_xbar.len() as i64, mxbar);
    Ok(a.max(b))
}

/// `2 / c(G) - 1` with the minimizing `X` of `c(G)` as witness.
pub fn qrt_vertex_lb(g: &Graph, limit: usize) -> Result<Witnessed, BoundsError> {
    let c = spectral::vertex_expansion(g, limit)?;
    Ok(Witnessed {
        value: Rational::from_integer(2) / c.value - 1,
        witness: c.witness,
    })
}

/// `diam(G) / (3π 2⁴ e max_v d_v)`.
pub fn hrt_diam_lb(g: &Graph) -> Result<f64, BoundsError> {
    let diam = g.diameter()?;
    if g.n() == 1 {
        return Ok(0.0);
    }
    Ok(diam as f64 / (3.0 * PI * 16.0 * E * g.max_degree() as f64))
}

/// `8 / (3πα h(G))` with the minimizing `X` of `h(G)` as witness.
pub fn hrt_edge_lb(g: &Graph, alpha: f64, limit: usize) -> Result<(f64, Vec<Vertex>), BoundsError> {
    check_alpha(alpha)?;
    let h = spectral::edge_expansion(g, limit)?;
    Ok((8.0 / (3.0 * PI * alpha * h.to_f64()), h.witness))
}

/// `8 / (3πα max_v d_v) · sqrt(1 / (2λ(G)))`.
pub fn hrt_spectral_lb(g: &Graph, alpha: f64) -> Result<f64, BoundsError> {
    check_alpha(alpha)?;
    let lambda = spectral::spectral_gap(g)?;
    Ok(8.0 / (3.0 * PI * alpha * g.max_degree() as f64) * (1.0 / (2.0 * lambda)).sqrt())
}

/// `8 / (3πα) · |X| / |∂X|`.
pub fn fast_hrt_lb(g: &Graph, x: &[Vertex], alpha: f64) -> Result<f64, BoundsError> {
    check_alpha(alpha)?;
    let cut = small_cut(g, x)?;
    if cut.boundary_edges.is_empty() {
        return Err(BoundsError::DegenerateBoundary);
    }
    Ok(8.0 / (3.0 * PI * alpha) * cut.x.len() as f64 / cut.boundary_edges.len() as f64)
}

/// Entropy changes (in bits) driving the state-preparation bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntropyChanges {
    pub x: Rational,
    /// `Y = X̄ \ δX`.
    pub y: Rational,
    pub xbar: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatePrepDepth {
    pub value: Rational,
    /// `ΔS_X / (2|M(∂X)|)`.
    pub boundary_matching: Rational,
    /// `(ΔS_X + ΔS_Y) / (2|M(∂(δX))|)`.
    pub delta_matching: Rational,
    /// `(ΔS_X + ΔS_X̄) / (2|δX|) - 1`, clamped at 0.
    pub vertex_boundary: Rational,
    pub source: String,
}

/// Depth lower bound for preparing a state with the given entropy changes.
pub fn state_prep_depth_lb(
    changes: EntropyChanges,
    g: &Graph,
    cut: &Cut,
) -> Result<StatePrepDepth, BoundsError> {
    let zero = Rational::from_integer(0);
    if changes.x < zero || changes.y < zero || changes.xbar < zero {
        return Err(BoundsError::NegativeEntropy);
    }
    let m = cut.boundary_matching().size();
    let md = cut.delta_x_matching(g.n()).size();
    let dx = cut.delta_x.len();
    if m == 0 || md == 0 || dx == 0 {
        return Err(BoundsError::ZeroMatching);
    }
    let a = changes.x / Rational::from_integer(2 * m as i64);
    let b = (changes.x + changes.y) / Rational::from_integer(2 * md as i64);
    let c = ((changes.x + changes.xbar) / Rational::from_integer(2 * dx as i64) - 1).max(zero);
    let (value, source) = [
        (a, "boundary matching"),
        (b, "vertex-boundary matching"),
        (c, "vertex boundary"),
    ]
    .into_iter()
    .fold((zero, "boundary matching"), |best, cur| {
        if cur.0 > best.0 {
            cur
        } else {
            best
        }
    });
    Ok(StatePrepDepth {
        value,
        boundary_matching: a,
        delta_matching: b,
        vertex_boundary: c,
        source: source.to_string(),
    })
}

/// `4 / (3πα) · ΔS_X / |∂X|`.
pub fn state_prep_time_lb(
    delta_s_x: f64,
    boundary_edges: usize,
    alpha: f64,
) -> Result<f64, BoundsError> {
    check_alpha(alpha)?;
    if delta_s_x < 0.0 {
        return Err(BoundsError::NegativeEntropy);
    }
    if boundary_edges == 0 {
        return Err(BoundsError::DegenerateBoundary);
    }
    Ok(4.0 / (3.0 * PI * alpha) * delta_s_x / boundary_edges as f64)
}

/// Walk half-length `l = ⌈20 ln n / λ⌉` used by random-walk routing.
pub fn walk_half_length(n: usize, lambda: f64) -> usize {
    ((20.0 * (n as f64).ln() / lambda).ceil() as usize).max(1)
}

/// Depth guarantee `2l(120 l d_* + 1)` for an order-two permutation.
pub fn order_two_bound(l: usize, d_star: f64) -> f64 {
    2.0 * l as f64 * (120.0 * l as f64 * d_star + 1.0)
}

/// Depth guarantee `4l(120 l d_* + 1)` for a general permutation.
pub fn general_routing_bound(l: usize, d_star: f64) -> f64 {
    2.0 * order_two_bound(l, d_star)
}

/// One reported bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    /// Exact value for gate-model bounds, `[numerator, denominator]`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<Rational>,
    pub witness: Option<Vec<Vertex>>,
    pub source: String,
    pub alpha: Option<f64>,
}

impl BoundValue {
    fn exact(value: Rational, witness: Option<Vec<Vertex>>, source: &str) -> Self {
        BoundValue {
            value: to_f64(value),
            exact: Some(value),
            witness,
            source: source.to_string(),
            alpha: None,
        }
    }

    fn real(value: f64, witness: Option<Vec<Vertex>>, source: &str, alpha: Option<f64>) -> Self {
        BoundValue {
            value,
            exact: None,
            witness,
            source: source.to_string(),
            alpha,
        }
    }
}

/// Bounds evaluated on a single user-supplied cut.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutBounds {
    pub x: Vec<Vertex>,
    pub matching_lb: BoundValue,
    pub expansion_lb: Option<BoundValue>,
    pub fast_hrt_lb: BoundValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub label: String,
    /// `d_* max_v d_v ln² n / λ^{3/2}`.
    pub ratio_bound: f64,
    pub inverse_h: Option<f64>,
    pub inverse_lambda: f64,
    pub d_star: f64,
    pub diameter: usize,
    /// `ln(rt upper) / ln(hrt lower)`.
    pub log_ratio: f64,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub edges: usize,
    pub alpha: f64,
    pub lambda: f64,
    /// `None` when `n` exceeds the enumeration limit.
    pub expansion: Option<spectral::ExpansionSummary>,
    pub enumeration_limited: bool,
    pub diameter_lb: BoundValue,
    pub matching_lb: Option<BoundValue>,
    pub expansion_lb: Option<BoundValue>,
    pub vertex_lb: Option<BoundValue>,
    pub hrt_diam_lb: BoundValue,
    pub hrt_edge_lb: Option<BoundValue>,
    pub hrt_spectral_lb: BoundValue,
    pub fast_hrt_lb: Option<BoundValue>,
    pub classical_ub_spanning_tree: BoundValue,
    pub classical_ub_random_walk: BoundValue,
    pub cuts: Vec<CutBounds>,
    /// Every lower bound is at most every upper bound.
    pub consistent: bool,
    pub separation: SeparationReport,
    pub open_questions: Vec<String>,
}

impl BoundsReport {
    pub fn lower_bounds(&self) -> Vec<&BoundValue> {
        let mut out = vec![&self.diameter_lb, &self.hrt_diam_lb, &self.hrt_spectral_lb];
        out.extend(
            [
                &self.matching_lb,
                &self.expansion_lb,
                &self.vertex_lb,
                &self.hrt_edge_lb,
                &self.fast_hrt_lb,
            ]
            .into_iter()
            .flatten(),
        );
        for c in &self.cuts {
            out.push(&c.matching_lb);
            out.push(&c.fast_hrt_lb);
            out.extend(&c.expansion_lb);
        }
        out
    }

    pub fn upper_bounds(&self) -> Vec<&BoundValue> {
        vec![
            &self.classical_ub_spanning_tree,
            &self.classical_ub_random_walk,
        ]
    }

    /// Largest gate-model lower bound, in rounds.
    pub fn best_gate_lb(&self) -> f64 {
        [
            Some(&self.diameter_lb),
            self.matching_lb.as_ref(),
            self.expansion_lb.as_ref(),
            self.vertex_lb.as_ref(),
        ]
        .into_iter()
        .flatten()
        .chain(self.cuts.iter().map(|c| &c.matching_lb))
        .chain(self.cuts.iter().filter_map(|c| c.expansion_lb.as_ref()))
        .map(|b| b.value)
        .fold(0.0, f64::max)
    }

    /// Largest Hamiltonian-model lower bound, in swap-time units.
    pub fn best_hrt_lb(&self) -> f64 {
        [
            Some(&self.hrt_diam_lb),
            Some(&self.hrt_spectral_lb),
            self.hrt_edge_lb.as_ref(),
        ]
        .into_iter()
        .flatten()
        .map(|b| b.value)
        .fold(0.0, f64::max)
    }
}

/// Best-cut maxima of the gate-model bounds over all `|X| ≤ n/2`.
struct BestCuts {
    matching: (Rational, u64),
    expansion: Option<(Rational, u64)>,
    fast: (Rational, u64),
}

fn better(candidate: Rational, mask: u64, best: &mut Option<(Rational, u64)>) {
    let take = match best {
        None => true,
        Some((v, m)) => candidate > *v || (candidate == *v && mask_to_vec(mask) < mask_to_vec(*m)),
    };
    if take {
        *best = Some((candidate, mask));
    }
}

fn best_cuts(g: &Graph) -> BestCuts {
    let mg = MaskGraph::new(g);
    let n = g.n();
    let full = (1u64 << n) - 1;
    let (mut matching, mut expansion, mut fast) = (None, None, None);
    for_each_small_subset(n, |x| {
        let k = mg.counts(x);
        let size = k.size as i64;
        better(ratio(size, k.matching), x, &mut matching);
        better(ratio(size, k.edge_boundary), x, &mut fast);
        let xbar = full & !x;
        let reach = |s: u64| {
            let mut r = 0u64;
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                r |= mg.nbrs[v];
            }
            r
        };
        let dx = reach(x) & xbar;
        let dxbar = reach(xbar) & x;
        let a = ratio(
            2 * size - dx.count_ones() as i64,
            mg.cut_matching(dx, full & !dx),
        );
        let b = ratio(
            2 * size - dxbar.count_ones() as i64,
            mg.cut_matching(dxbar, full & !dxbar),
        );
        better(a.max(b), x, &mut expansion);
    });
    BestCuts {
        matching: matching.expect("connected graph has a cut"),
        expansion,
        fast: fast.expect("connected graph has a cut"),
    }
}

/// Every bound on `g`, maximized over cuts when `n` is within `limit`,
/// plus the bounds on each of `cuts`.
pub fn bounds_report(
    g: &Graph,
    alpha: f64,
    limit: usize,
    cuts: &[Vec<Vertex>],
) -> Result<BoundsReport, BoundsError> {
    check_alpha(alpha)?;
    g.ensure_connected()?;
    let n = g.n();
    let lambda = spectral::spectral_gap(g)?;
    let diameter = g.diameter()?;
    let d_star = g.degree_stats().ratio_f64();
    let max_deg = g.max_degree() as f64;
    let hrt_const = 8.0 / (3.0 * PI * alpha);

    let enumerated = match check_limit(g, limit) {
        Ok(()) => true,
        Err(crate::error::SpectralError::TooLarge { .. }) => false,
        Err(e) => return Err(e.into()),
    };

    let (expansion, matching_lb, expansion_lb, vertex_lb, hrt_edge_lb, fast_hrt_lb) = if enumerated
    {
        let summary = spectral::expansion_summary(g, limit)?;
        let best = best_cuts(g);
        let vertex = Rational::from_integer(2) / summary.c.value - 1;
        let h = summary.h.to_f64();
        (
            Some(summary.clone()),
            Some(BoundValue::exact(
                best.matching.0,
                Some(mask_to_vec(best.matching.1)),
                "qrt >= |X|/|M(dX)|",
            )),
            best.expansion.map(|(v, m)| {
                BoundValue::exact(
                    v,
                    Some(mask_to_vec(m)),
                    "qrt >= (2|X|-|deltaX|)/|M(d(deltaX))|",
                )
            }),
            Some(BoundValue::exact(
                vertex,
                Some(summary.c.witness.clone()),
                "qrt >= 2/c(G) - 1",
            )),
            Some(BoundValue::real(
                hrt_const / h,
                Some(summary.h.witness.clone()),
                "hrt >= 8/(3 pi alpha h(G))",
                Some(alpha),
            )),
            Some(BoundValue::real(
                hrt_const * to_f64(best.fast.0),
                Some(mask_to_vec(best.fast.1)),
                "hrt_fast >= 8/(3 pi alpha) |X|/|dX|",
                Some(alpha),
            )),
        )
    } else {
        (None, None, None, None, None, None)
    };

    let mut cut_bounds = Vec::new();
    for x in cuts {
        let cut = small_cut(g, x)?;
        cut_bounds.push(CutBounds {
            x: cut.x.clone(),
            matching_lb: BoundValue::exact(
                qrt_matching_lb(g, x)?,
                Some(cut.x.clone()),
                "qrt >= |X|/|M(dX)|",
            ),
            expansion_lb: match qrt_expansion_lb(g, x) {
                Ok(v) => Some(BoundValue::exact(
                    v,
                    Some(cut.x.clone()),
                    "qrt >= (2|X|-|deltaX|)/|M(d(deltaX))|",
                )),
                Err(BoundsError::DegenerateBoundary) => None,
                Err(e) => return Err(e),
            },
            fast_hrt_lb: BoundValue::real(
                self::fast_hrt_lb(g, x, alpha)?,
                Some(cut.x.clone()),
                "hrt_fast >= 8/(3 pi alpha) |X|/|dX|",
                Some(alpha),
            ),
        });
    }

    let l = walk_half_length(n, lambda);
    let tree_ub = 3.0 * n as f64;
    let walk_ub = general_routing_bound(l, d_star);
    let mut report = BoundsReport {
        n,
        edges: g.edge_count(),
        alpha,
        lambda,
        expansion,
        enumeration_limited: !enumerated,
        diameter_lb: BoundValue::exact(
            Rational::from_integer(diameter as i64),
            None,
            "qrt >= diam(G)",
        ),
        matching_lb,
        expansion_lb,
        vertex_lb,
        hrt_diam_lb: BoundValue::real(
            hrt_diam_lb(g)?,
            None,
            "hrt >= diam/(3 pi 2^4 e max d)",
            None,
        ),
        hrt_edge_lb,
        hrt_spectral_lb: BoundValue::real(
            hrt_spectral_lb(g, alpha)?,
            None,
            "hrt >= 8/(3 pi alpha max d) sqrt(1/(2 lambda))",
            Some(alpha),
        ),
        fast_hrt_lb,
        classical_ub_spanning_tree: BoundValue::real(
            tree_ub,
            None,
            "rt <= 3n (spanning tree)",
            None,
        ),
        classical_ub_random_walk: BoundValue::real(
            walk_ub,
            None,
            "rt <= 4l(120 l d* + 1), l = ceil(20 ln n / lambda)",
            None,
        ),
        cuts: cut_bounds,
        consistent: true,
        separation: SeparationReport {
            label: DIAGNOSTIC_LABEL.to_string(),
            ratio_bound: 0.0,
            inverse_h: None,
            inverse_lambda: 1.0 / lambda,
            d_star,
            diameter,
            log_ratio: 0.0,
            flags: Vec::new(),
        },
        open_questions: vec![
            "separation between Hamiltonian and gate-based quantum routing: open".to_string(),
            "hrt(G) >= Omega(1/c(G)): open".to_string(),
        ],
    };

    let min_ub = report
        .upper_bounds()
        .iter()
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    report.consistent = report
        .lower_bounds()
        .iter()
        .all(|b| b.value <= min_ub + 1e-9);

    let ln_n = (n as f64).ln();
    let best_hrt = report.best_hrt_lb();
    let inverse_h = report.expansion.as_ref().map(|e| 1.0 / e.h.to_f64());
    let mut flags = Vec::new();
    if best_hrt < 1.0 && report.best_gate_lb() >= (3.0f64).max(n as f64 / 2.0) {
        flags.push("hrt lower bound trivial (Θ(1)) but qrt lower bound Θ(n)".to_string());
    }
    if g.max_degree() <= BOUNDED_DEGREE {
        flags.push("no superpolynomial separation (bounded degree)".to_string());
    }
    if inverse_h.is_some_and(|ih| ih >= n as f64 / 4.0) {
        flags.push("classical routing tight up to constant factor".to_string());
    }
    report.separation = SeparationReport {
        label: DIAGNOSTIC_LABEL.to_string(),
        ratio_bound: d_star * max_deg * ln_n * ln_n / lambda.powf(1.5),
        inverse_h,
        inverse_lambda: 1.0 / lambda,
        d_star,
        diameter,
        log_ratio: tree_ub.min(walk_ub).ln() / best_hrt.ln(),
        flags,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn diameter_bounds() {
        assert_eq!(qrt_diameter_lb(&families::path(7).unwrap()), Ok(6));
        assert_eq!(qrt_diameter_lb(&families::complete(5).unwrap()), Ok(1));
        assert_eq!(qrt_diameter_lb(&families::grid(3, 4).unwrap()), Ok(5));
        let p2 = families::path(2).unwrap();
        assert!(close(hrt_diam_lb(&p2).unwrap(), 1.0 / (48.0 * PI * E)));
        let p9 = families::path(9).unwrap();
        assert!(close(hrt_diam_lb(&p9).unwrap(), 8.0 / (96.0 * PI * E)));
        let k6 = families::complete(6).unwrap();
        assert!(close(
            hrt_diam_lb(&k6).unwrap(),
            1.0 / (48.0 * PI * E * 5.0)
        ));
    }

    #[test]
    fn matching_bound_examples() {
        for n in [3, 4, 6] {
            let g = families::lollipop_pair(n).unwrap();
            let x: Vec<usize> = (0..n).collect();
            assert_eq!(qrt_matching_lb(&g, &x), Ok(r(n as i64, 2)));
        }
        let k2 = families::complete(2).unwrap();
        assert_eq!(qrt_matching_lb(&k2, &[0]), Ok(r(1, 1)));
        let c10 = families::barbell(5).unwrap();
        assert_eq!(qrt_matching_lb(&c10, &[0, 1, 2, 3, 4]), Ok(r(5, 1)));
        assert!(matches!(
            qrt_matching_lb(&c10, &[0, 1, 2, 3, 4, 5]),
            Err(BoundsError::SideTooLarge { .. })
        ));
    }

    #[test]
    fn expansion_bound_examples() {
        for n in [4, 6, 8] {
            let g = families::star(n).unwrap();
            let x: Vec<usize> = (1..=n / 2).collect();
            assert_eq!(qrt_expansion_lb(&g, &x), Ok(r(2 * (n as i64 / 2) - 1, 1)));
        }
        assert_eq!(
            qrt_expansion_lb(&families::complete(2).unwrap(), &[0]),
            Ok(r(1, 1))
        );
        let b10 = families::vertex_barbell(5).unwrap();
        assert_eq!(qrt_expansion_lb(&b10, &[0, 1, 2, 3, 4]), Ok(r(9, 1)));
    }

    #[test]
    fn vertex_bound_examples() {
        for n in [4, 6, 8] {
            let s = qrt_vertex_lb(&families::star(n).unwrap(), 20).unwrap();
            assert_eq!(s.value, r(n as i64 - 1, 1));
        }
        assert_eq!(
            qrt_vertex_lb(&families::complete(2).unwrap(), 20)
                .unwrap()
                .value,
            r(1, 1)
        );
        let b = qrt_vertex_lb(&families::vertex_barbell(4).unwrap(), 20).unwrap();
        assert!(b.value >= r(7, 1));
    }

    #[test]
    fn hamiltonian_bounds() {
        let (k2, _) = hrt_edge_lb(&families::complete(2).unwrap(), 4.0, 20).unwrap();
        assert!(close(k2, 8.0 / (12.0 * PI)));
        for n in [3, 4, 5] {
            let (v, w) = hrt_edge_lb(&families::barbell(n).unwrap(), 4.0, 20).unwrap();
            assert!(v >= n as f64 / (3.0 * PI) - 1e-12);
            assert_eq!(w, (0..n).collect::<Vec<_>>());
            let (p, _) = hrt_edge_lb(&families::path(2 * n).unwrap(), 4.0, 20).unwrap();
            assert!(p >= 8.0 * n as f64 / (12.0 * PI) - 1e-12);
        }
        let s = hrt_spectral_lb(&families::star(6).unwrap(), 4.0).unwrap();
        assert!((s - 8.0 / (12.0 * PI * 6.0) * 0.5f64.sqrt()).abs() < 1e-10);
        let s = hrt_spectral_lb(&families::complete(2).unwrap(), 4.0).unwrap();
        assert!((s - 8.0 / (12.0 * PI) * 0.5).abs() < 1e-10);
        assert!(matches!(
            hrt_spectral_lb(&families::complete(2).unwrap(), 5.0),
            Err(BoundsError::BadAlpha(_))
        ));
    }

    #[test]
    fn fast_bound_examples() {
        let b10 = families::vertex_barbell(5).unwrap();
        assert!(close(
            fast_hrt_lb(&b10, &[0, 1, 2, 3, 4], 4.0).unwrap(),
            2.0 / (3.0 * PI)
        ));
        let k2 = families::complete(2).unwrap();
        assert!(close(
            fast_hrt_lb(&k2, &[0], 4.0).unwrap(),
            2.0 / (3.0 * PI)
        ));
        let c10 = families::barbell(5).unwrap();
        assert!(close(
            fast_hrt_lb(&c10, &[0, 1, 2, 3, 4], 4.0).unwrap(),
            10.0 / (3.0 * PI)
        ));
    }

    #[test]
    fn state_prep_bounds() {
        let g = families::star(6).unwrap();
        let cut = g.cut(&[1, 2, 3]).unwrap();
        let six = Rational::from_integer(6);
        let changes = EntropyChanges {
            x: six,
            y: six - 2,
            xbar: six,
        };
        let d = state_prep_depth_lb(changes, &g, &cut).unwrap();
        // 2|X| - |δX| over |M(∂(δX))| = 5
        assert_eq!(d.vertex_boundary, r(5, 1));
        assert_eq!(d.value, qrt_expansion_lb(&g, &[1, 2, 3]).unwrap());

        let zero = Rational::from_integer(0);
        let z = EntropyChanges {
            x: zero,
            y: zero,
            xbar: zero,
        };
        assert_eq!(state_prep_depth_lb(z, &g, &cut).unwrap().value, zero);
        let neg = EntropyChanges {
            x: -six,
            y: zero,
            xbar: zero,
        };
        assert_eq!(
            state_prep_depth_lb(neg, &g, &cut),
            Err(BoundsError::NegativeEntropy)
        );

        assert!(close(
            state_prep_time_lb(10.0, 1, 4.0).unwrap(),
            40.0 / (12.0 * PI)
        ));
        assert_eq!(state_prep_time_lb(0.0, 3, 4.0), Ok(0.0));
        let b = state_prep_time_lb(2.0 * 5.0, 1, 2.0).unwrap();
        assert!(close(b, 8.0 * 5.0 / (3.0 * PI * 2.0)));
    }

    #[test]
    fn report_flags() {
        let star = bounds_report(&families::star(8).unwrap(), 4.0, 20, &[]).unwrap();
        assert!(star.consistent);
        assert!((star.lambda - 1.0).abs() < 1e-10);
        assert_eq!(star.vertex_lb.as_ref().unwrap().exact, Some(r(7, 1)));
        assert!(star.separation.flags.iter().any(|f| f.contains("trivial")));

        let grid = bounds_report(&families::grid(3, 4).unwrap(), 4.0, 20, &[]).unwrap();
        assert!(grid
            .separation
            .flags
            .iter()
            .any(|f| f.contains("bounded degree")));

        let barbell = bounds_report(&families::barbell(5).unwrap(), 4.0, 20, &[]).unwrap();
        assert!(barbell.separation.flags.iter().any(|f| f.contains("tight")));
        assert_eq!(barbell.separation.label, DIAGNOSTIC_LABEL);

        let big = bounds_report(&families::path(24).unwrap(), 2.0, 20, &[vec![0, 1, 2]]).unwrap();
        assert!(big.enumeration_limited && big.matching_lb.is_none());
        assert_eq!(big.cuts[0].matching_lb.exact, Some(r(3, 1)));
        assert!(big.consistent);
    }

    #[test]
    fn report_serializes_with_alpha() {
        let rep = bounds_report(&families::path(2).unwrap(), 4.0, 20, &[]).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["hrt_edge_lb"]["alpha"], 4.0);
        assert_eq!(json["matching_lb"]["exact"], serde_json::json!([1, 1]));
        assert!(json["hrt_spectral_lb"]["source"].is_string());
    }
}
