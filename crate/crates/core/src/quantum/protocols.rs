//! W-state transfer, ancilla-assisted routing on the vertex barbell, and
//! the boundary CZ of the fast Hamiltonian model.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::SimError;
use crate::graph::{membership, Graph, Vertex};
use crate::linalg::Matrix;
use crate::routing::Permutation;

use super::canonical::{canonical_form, TwoQubitHamiltonian, NORMALIZATION, NORMALIZATION_TOL};
use super::gates::{c, cnot, cz, embed, hadamard, kron, CMatrix, I};
use super::state::{propagator, MAX_QUBITS};
use super::QuantumState;

/// Norm allowed to escape a simulated subspace.
pub const LEAKAGE_TOL: f64 = 1e-10;

/// `π / (2√s)`, the W-encoding time over `s` intermediates.
pub fn w_time(s: usize) -> f64 {
    PI / (2.0 * (s as f64).sqrt())
}

/// `W(x, S)` restricted to vacuum plus single excitations; basis index 0 is
/// the vacuum and `1 + v` an excitation on `v`.
fn w_subspace(dim_sites: usize, x: usize, s: &[usize]) -> CMatrix {
    let mut m = Matrix::zeros(dim_sites + 1);
    for &v in s {
        m[(1 + x, 1 + v)] = c(1.0);
        m[(1 + v, 1 + x)] = c(1.0);
    }
    m
}

/// `W(x, S)` as a qubit operator on `[x] ++ S`.
fn w_dense(s: usize) -> CMatrix {
    // σ⁺ ⊗ σ⁻ + h.c. with σ⁺ = |1⟩⟨0|
    let mut raise_lower = Matrix::zeros(4);
    raise_lower[(2, 1)] = c(1.0);
    raise_lower[(1, 2)] = c(1.0);
    let support: Vec<usize> = (0..=s).collect();
    let mut m = Matrix::zeros(1 << (s + 1));
    for v in 1..=s {
        m = super::gates::add(&m, &embed(&raise_lower, &[0, v], &support));
    }
    m
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WTransfer {
    pub s: usize,
    pub a0: [f64; 2],
    pub a1: [f64; 2],
    /// `π / (2√s)`.
    pub step_time: f64,
    /// Overlap of the encoded state with `|0⟩_x (a₀|0⟩_S − i a₁|W⟩_S)`.
    pub encoding_fidelity: f64,
    /// End-to-end fidelity of `a₀|0⟩ + a₁|1⟩` arriving at the target.
    pub fidelity: f64,
    pub elapsed: f64,
}

fn check_amplitudes(a0: Complex64, a1: Complex64) -> Result<(), SimError> {
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(SimError::BadSizes(format!("|a0|² + |a1|² has norm {norm}")));
    }
    Ok(())
}

/// Encodes `a₀|0⟩ + a₁|1⟩` from `x` onto `s` intermediates with
/// `e^{-iW(x,S)T}`, then decodes onto a target `y` with `e^{+iW(y,S)T}`.
pub fn w_transfer(s: usize, a0: Complex64, a1: Complex64) -> Result<WTransfer, SimError> {
    if s == 0 {
        return Err(SimError::BadSizes(
            "the transfer needs s ≥ 1 intermediates".into(),
        ));
    }
    check_amplitudes(a0, a1)?;
    let t = w_time(s);
    // sites: x = 0, S = 1..=s, y = s + 1
    let sites = s + 2;
    let mid: Vec<usize> = (1..=s).collect();
    let mut psi = vec![c(0.0); sites + 1];
    psi[0] = a0;
    psi[1] = a1;
    let encoded = propagator(&w_subspace(sites, 0, &mid), t)?.apply(&psi);
    let mut expect = vec![c(0.0); sites + 1];
    expect[0] = a0;
    for &v in &mid {
        expect[1 + v] = -I * a1 / (s as f64).sqrt();
    }
    let decoded = propagator(&w_subspace(sites, s + 1, &mid), -t)?.apply(&encoded);
    let mut target = vec![c(0.0); sites + 1];
    target[0] = a0;
    target[1 + s + 1] = a1;
    Ok(WTransfer {
        s,
        a0: [a0.re, a0.im],
        a1: [a1.re, a1.im],
        step_time: t,
        encoding_fidelity: overlap(&expect, &encoded),
        fidelity: overlap(&target, &decoded),
        elapsed: 2.0 * t,
    })
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm_sqr()
}

/// The same transfer on the full `s + 2` qubit register.
pub fn w_transfer_dense(s: usize, a0: Complex64, a1: Complex64) -> Result<WTransfer, SimError> {
    if s == 0 {
        return Err(SimError::BadSizes(
            "the transfer needs s ≥ 1 intermediates".into(),
        ));
    }
    check_amplitudes(a0, a1)?;
    let q = s + 2;
    if q > MAX_QUBITS {
        return Err(SimError::TooManyQubits(q, MAX_QUBITS));
    }
    let t = w_time(s);
    let w = w_dense(s);
    let mid: Vec<usize> = (1..=s).collect();
    let with = |first: usize| -> Vec<usize> {
        std::iter::once(first).chain(mid.iter().copied()).collect()
    };
    let basis_state = |amps: &[(usize, Complex64)]| {
        let mut v = vec![c(0.0); 1 << q];
        for &(i, a) in amps {
            v[i] += a;
        }
        QuantumState::from_amplitudes(v)
    };
    let bit = |qubit: usize| 1usize << (q - 1 - qubit);
    let mut state = basis_state(&[(0, a0), (bit(0), a1)])?;
    state.evolve(&w, &with(0), t)?;
    let mut w_terms: Vec<(usize, Complex64)> = vec![(0, a0)];
    w_terms.extend(mid.iter().map(|&v| (bit(v), -I * a1 / (s as f64).sqrt())));
    let encoding_fidelity = basis_state(&w_terms)?.fidelity(&state);
    state.evolve(&w, &with(s + 1), -t)?;
    let fidelity = basis_state(&[(0, a0), (bit(s + 1), a1)])?.fidelity(&state);
    Ok(WTransfer {
        s,
        a0: [a0.re, a0.im],
        a1: [a1.re, a1.im],
        step_time: t,
        encoding_fidelity,
        fidelity,
        elapsed: 2.0 * t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    /// Ancilla register times vacuum-or-single-excitation data register.
    Subspace,
    /// Full state vector on data and ancilla qubits.
    Dense,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarbellRun {
    pub n: usize,
    pub mode: SimMode,
    pub seed: u64,
    /// `π / (2√(n-1))`.
    pub step_time: f64,
    /// Hops from one clique vertex to its destination, `4T` each.
    pub transfers: usize,
    pub total_time: f64,
    pub fidelity: f64,
    pub leakage: f64,
}

/// Checks that `sigma` fixes the center and swaps the cliques, or is the
/// identity.
fn check_barbell_sigma(n: usize, sigma: &Permutation) -> Result<(), SimError> {
    if n < 2 {
        return Err(SimError::BadSizes(
            "the barbell protocol needs cliques of n ≥ 2".into(),
        ));
    }
    let v = 2 * n + 1;
    if sigma.len() != v {
        return Err(SimError::BadSizes(format!(
            "permutation on {} vertices, graph has {v}",
            sigma.len()
        )));
    }
    // left clique 0..n, center n, right clique n+1..=2n
    let side: Vec<Option<bool>> = (0..v)
        .map(|u| if u == n { None } else { Some(u < n) })
        .collect();
    let exchanging = (0..v).all(|u| match side[u] {
        None => sigma.apply(u) == u,
        Some(l) => side[sigma.apply(u)] == Some(!l),
    });
    if !exchanging && !sigma.is_identity() {
        return Err(SimError::BadPermutation);
    }
    Ok(())
}

fn clique_others(n: usize, u: Vertex) -> Vec<Vertex> {
    let range = if u < n { 0..n } else { n + 1..2 * n + 1 };
    range.filter(|&w| w != u).collect()
}

/// Hop order: each cycle of `sigma` from its smallest vertex.
fn hops(sigma: &Permutation) -> Vec<Vec<Vertex>> {
    sigma
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let start = *c.iter().min().expect("nonempty cycle");
            let mut walk = vec![start];
            let mut cur = sigma.apply(start);
            while cur != start {
                walk.push(cur);
                cur = sigma.apply(cur);
            }
            walk.push(start);
            walk
        })
        .collect()
}

/// Ancilla-assisted routing of `sigma` on the vertex barbell `B_2n`:
/// every qubit is parked in its ancilla, then each one is carried through
/// the center by two W transfers per clique, `4T` per hop.
pub fn barbell_route_sim(n: usize, sigma: &Permutation, seed: u64) -> Result<BarbellRun, SimError> {
    barbell_route_subspace(n, sigma, seed).map(|(run, _)| run)
}

pub(crate) fn barbell_route_subspace(
    n: usize,
    sigma: &Permutation,
    seed: u64,
) -> Result<(BarbellRun, QuantumState), SimError> {
    check_barbell_sigma(n, sigma)?;
    let v = 2 * n + 1;
    if v > MAX_QUBITS {
        return Err(SimError::TooManyQubits(v, MAX_QUBITS));
    }
    let t = w_time(n - 1);
    let psi = QuantumState::random(v, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let d = v + 1;
    let bit = |u: Vertex| 1usize << (v - 1 - u);
    // amp[a * d + k]: ancilla register basis a, data vacuum (k = 0) or excitation on k - 1
    let mut amp = vec![c(0.0); (1 << v) * d];
    for (a, &x) in psi.amplitudes().iter().enumerate() {
        amp[a * d] = x;
    }
    let mut leaked = 0.0;
    let mut swap_in = |amp: &mut Vec<Complex64>, u: Vertex| {
        for a in 0..1usize << v {
            if a & bit(u) == 0 {
                continue;
            }
            // ancilla u excited with vacuum data <-> ancilla u empty with data u excited
            amp.swap(a * d, (a ^ bit(u)) * d + 1 + u);
            for k in 1..d {
                if k != 1 + u {
                    leaked += amp[a * d + k].norm_sqr();
                    amp[a * d + k] = c(0.0);
                }
            }
        }
    };
    let mut total_time = 0.0;
    let mut transfers = 0;
    let center = n;
    for walk in hops(sigma) {
        swap_in(&mut amp, walk[0]);
        for pair in walk.windows(2) {
            let (from, to) = (pair[0], pair[1]);
            let near = clique_others(n, from);
            let far = clique_others(n, to);
            let legs = [
                propagator(&w_subspace(v, from, &near), t)?,
                propagator(&w_subspace(v, center, &near), -t)?,
                propagator(&w_subspace(v, center, &far), t)?,
                propagator(&w_subspace(v, to, &far), -t)?,
            ];
            let hop = legs
                .iter()
                .skip(1)
                .fold(legs[0].clone(), |acc, u| u.matmul(&acc));
            for a in 0..1usize << v {
                let slice = hop.apply(&amp[a * d..(a + 1) * d]);
                amp[a * d..(a + 1) * d].copy_from_slice(&slice);
            }
            total_time += 4.0 * t;
            transfers += 1;
            swap_in(&mut amp, to);
        }
    }
    let dest: Vec<usize> = (0..v).map(|u| sigma.apply(u)).collect();
    let expect = psi.permute_qubits(&dest)?;
    let register: Vec<Complex64> = (0..1usize << v).map(|a| amp[a * d]).collect();
    let outside: f64 = leaked
        + (0..1usize << v)
            .flat_map(|a| (1..d).map(move |k| a * d + k))
            .map(|i| amp[i].norm_sqr())
            .sum::<f64>();
    if outside > LEAKAGE_TOL {
        return Err(SimError::Leakage(outside));
    }
    let routed = QuantumState::from_amplitudes(normalize(register))?;
    let fidelity = expect.inner(&routed).norm_sqr() * (1.0 - outside);
    Ok((
        BarbellRun {
            n,
            mode: SimMode::Subspace,
            seed,
            step_time: t,
            transfers,
            total_time,
            fidelity,
            leakage: outside,
        },
        routed,
    ))
}

fn normalize(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
    v
}

/// The barbell protocol on the full `2(2n+1)` qubit register.
pub fn barbell_route_dense(
    n: usize,
    sigma: &Permutation,
    seed: u64,
) -> Result<BarbellRun, SimError> {
    barbell_route_full(n, sigma, seed).map(|(run, _)| run)
}

pub(crate) fn barbell_route_full(
    n: usize,
    sigma: &Permutation,
    seed: u64,
) -> Result<(BarbellRun, QuantumState), SimError> {
    check_barbell_sigma(n, sigma)?;
    let v = 2 * n + 1;
    let q = 2 * v;
    if q > MAX_QUBITS {
        return Err(SimError::TooManyQubits(q, MAX_QUBITS));
    }
    let t = w_time(n - 1);
    let psi = QuantumState::random(v, &mut ChaCha8Rng::seed_from_u64(seed))?;
    // data u is qubit u, its ancilla qubit v + u
    let mut amps = vec![c(0.0); 1 << q];
    for (a, &x) in psi.amplitudes().iter().enumerate() {
        amps[a << v] = x;
    }
    let mut state = QuantumState::from_amplitudes(amps)?;
    for u in 0..v {
        state.swap_qubits(u, v + u)?;
    }
    let w = w_dense(n - 1);
    let center = n;
    let mut total_time = 0.0;
    let mut transfers = 0;
    let on = |first: Vertex, rest: &[Vertex]| -> Vec<usize> {
        std::iter::once(first).chain(rest.iter().copied()).collect()
    };
    for walk in hops(sigma) {
        state.swap_qubits(walk[0], v + walk[0])?;
        for pair in walk.windows(2) {
            let (from, to) = (pair[0], pair[1]);
            let near = clique_others(n, from);
            let far = clique_others(n, to);
            state.evolve(&w, &on(from, &near), t)?;
            state.evolve(&w, &on(center, &near), -t)?;
            state.evolve(&w, &on(center, &far), t)?;
            state.evolve(&w, &on(to, &far), -t)?;
            total_time += 4.0 * t;
            transfers += 1;
            state.swap_qubits(to, v + to)?;
        }
    }
    for u in 0..v {
        state.swap_qubits(u, v + u)?;
    }
    let dest: Vec<usize> = (0..v).map(|u| sigma.apply(u)).collect();
    let expect = psi.permute_qubits(&dest)?;
    let mut full = vec![c(0.0); 1 << q];
    for (a, &x) in expect.amplitudes().iter().enumerate() {
        full[a << v] = x;
    }
    let fidelity = QuantumState::from_amplitudes(full)?.fidelity(&state);
    let data: Vec<Complex64> = (0..1usize << v)
        .map(|a| state.amplitudes()[a << v])
        .collect();
    let kept: f64 = data.iter().map(|a| a.norm_sqr()).sum();
    Ok((
        BarbellRun {
            n,
            mode: SimMode::Dense,
            seed,
            step_time: t,
            transfers,
            total_time,
            fidelity,
            leakage: (1.0 - kept).max(0.0),
        },
        QuantumState::from_amplitudes(normalize(data))?,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastCz {
    pub boundary_size: usize,
    pub elapsed: f64,
    /// Phase picked up by `|1̄1̄⟩`.
    pub phase_11: [f64; 2],
    /// `|tr(CZ† U)|² / 16` for the induced two-qubit map `U`.
    pub gate_fidelity: f64,
    /// Fidelity against the identity, for reference.
    pub identity_fidelity: f64,
    pub leakage: f64,
    /// Each edge term is local terms plus one normalized `ZZ`.
    pub edge_term_normalized: bool,
    #[serde(skip)]
    pub effective: Option<CMatrix>,
}

/// `3π |11⟩⟨11|`.
pub fn ccphase_term() -> CMatrix {
    let mut m = Matrix::zeros(4);
    m[(3, 3)] = c(3.0 * PI);
    m
}

/// CZ between `v` and `u` across a cut with `b` crossing edges, at the
/// natural time `1 / (3b)`.
pub fn fast_cz(b: usize) -> Result<FastCz, SimError> {
    fast_cz_at(b, 1.0 / (3.0 * b.max(1) as f64))
}

/// GHZ fan-out of `v` onto `b` qubits of `X` and of `u` onto `b` qubits of
/// `X̄`, evolution under `3π Σ |11⟩⟨11|` on the `b` crossing pairs for time
/// `t`, and the inverse fan-out.
pub fn fast_cz_at(b: usize, t: f64) -> Result<FastCz, SimError> {
    if b == 0 {
        return Err(SimError::BadSizes(
            "the cut needs at least one boundary edge".into(),
        ));
    }
    let q = 2 * b + 2;
    if q > MAX_QUBITS {
        return Err(SimError::TooManyQubits(q, MAX_QUBITS));
    }
    let term = ccphase_term();
    let form = canonical_form(&TwoQubitHamiltonian::new(term.clone())?);
    let edge_term_normalized =
        form.interaction_rank(1e-12) == 1 && (form.mu[0] - NORMALIZATION).abs() < NORMALIZATION_TOL;
    // qubits: v = 0, u = 1, X side 2..2+b, X̄ side 2+b..2+2b
    let xs: Vec<usize> = (2..2 + b).collect();
    let ys: Vec<usize> = (2 + b..2 + 2 * b).collect();
    let step = propagator(&term, t)?;
    let mut effective = Matrix::zeros(4);
    let mut leakage = 0.0f64;
    for input in 0..4 {
        let mut s = QuantumState::basis(q, input << (q - 2))?;
        let fan = |s: &mut QuantumState| -> Result<(), SimError> {
            for (&a, &bq) in xs.iter().zip(&ys) {
                s.apply_gate(&cnot(), (0, a))?;
                s.apply_gate(&cnot(), (1, bq))?;
            }
            Ok(())
        };
        fan(&mut s)?;
        for (&a, &bq) in xs.iter().zip(&ys) {
            s.apply_unitary(&step, &[a, bq])?;
        }
        fan(&mut s)?;
        let mut kept = 0.0;
        for out in 0..4 {
            let z = s.amplitudes()[out << (q - 2)];
            effective[(out, input)] = z;
            kept += z.norm_sqr();
        }
        leakage = leakage.max(1.0 - kept);
    }
    let fid = |target: &CMatrix| {
        let tr: Complex64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| target[(i, j)].conj() * effective[(i, j)])
            .sum();
        tr.norm_sqr() / 16.0
    };
    Ok(FastCz {
        boundary_size: b,
        elapsed: t,
        phase_11: [effective[(3, 3)].re, effective[(3, 3)].im],
        gate_fidelity: fid(&cz()),
        identity_fidelity: fid(&Matrix::identity(4)),
        leakage: leakage.max(0.0),
        edge_term_normalized,
        effective: Some(effective),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastHamiltonianRoute {
    pub x: Vec<Vertex>,
    /// Tokens that start in `X` and must leave it.
    pub marked: usize,
    /// `|∂X|`.
    pub boundary_edges: usize,
    /// Cross-cut swaps, `X` end first.
    pub swaps: Vec<(Vertex, Vertex)>,
    /// `1 / (3|∂X|)`.
    pub cz_time: f64,
    pub cz_per_swap: usize,
    pub total_time: f64,
    /// `|X| / |∂X|`.
    pub upper_bound: f64,
    /// End-to-end fidelity when the instance is small enough to simulate.
    pub simulated_fidelity: Option<f64>,
}

/// Largest graph [`fast_hamiltonian_route`] executes on the simulator.
pub const FAST_ROUTE_SIM_MAX: usize = 10;

/// Swaps marked tokens pairwise across the cut, each swap as three CZs of
/// duration `1/(3|∂X|)`, then settles every side for free.
pub fn fast_hamiltonian_route(
    g: &Graph,
    x: &[Vertex],
    pi: &Permutation,
    seed: u64,
) -> Result<FastHamiltonianRoute, SimError> {
    let n = g.n();
    if pi.len() != n {
        return Err(SimError::BadSizes(format!(
            "permutation on {} vertices, graph has {n}",
            pi.len()
        )));
    }
    let cut = g.cut(x)?;
    if 2 * cut.x.len() > n {
        return Err(SimError::BadSizes(format!(
            "|X| = {} exceeds n/2",
            cut.x.len()
        )));
    }
    let in_x = membership(n, &cut.x);
    let out_x: Vec<Vertex> = cut
        .x
        .iter()
        .copied()
        .filter(|&v| !in_x[pi.apply(v)])
        .collect();
    let out_xbar: Vec<Vertex> = cut
        .xbar
        .iter()
        .copied()
        .filter(|&v| in_x[pi.apply(v)])
        .collect();
    let swaps: Vec<(Vertex, Vertex)> = out_x
        .iter()
        .copied()
        .zip(out_xbar.iter().copied())
        .collect();
    let edges = cut.boundary_edges.len();
    let cz_time = 1.0 / (3.0 * edges as f64);
    let total_time = swaps.len() as f64 * 3.0 * cz_time;

    let simulated_fidelity = if n <= FAST_ROUTE_SIM_MAX && 2 * edges + 2 <= MAX_QUBITS {
        Some(simulate_fast_route(n, &swaps, pi, edges, seed)?)
    } else {
        None
    };
    Ok(FastHamiltonianRoute {
        x: cut.x,
        marked: swaps.len(),
        boundary_edges: edges,
        swaps,
        cz_time,
        cz_per_swap: 3,
        total_time,
        upper_bound: x.len() as f64 / edges as f64,
        simulated_fidelity,
    })
}

fn simulate_fast_route(
    n: usize,
    swaps: &[(Vertex, Vertex)],
    pi: &Permutation,
    edges: usize,
    seed: u64,
) -> Result<f64, SimError> {
    let cz_gate = fast_cz(edges)?.effective.expect("effective map recorded");
    let h = hadamard();
    let ih = kron(&Matrix::identity(2), &h);
    // CNOT = (1 ⊗ H) CZ (1 ⊗ H), control first
    let cx = ih.matmul(&cz_gate).matmul(&ih);
    let psi = QuantumState::random(n, &mut ChaCha8Rng::seed_from_u64(seed))?;
    let mut state = psi.clone();
    let mut tokens: Vec<Vertex> = (0..n).collect();
    for &(a, b) in swaps {
        state.apply_gate(&cx, (a, b))?;
        state.apply_gate(&cx, (b, a))?;
        state.apply_gate(&cx, (a, b))?;
        tokens.swap(a, b);
    }
    // free moves inside each side: the token on p goes to pi(token)
    let dest: Vec<usize> = tokens.iter().map(|&t| pi.apply(t)).collect();
    let state = state.permute_qubits(&dest)?;
    let all: Vec<usize> = (0..n).map(|v| pi.apply(v)).collect();
    Ok(psi.permute_qubits(&all)?.fidelity(&state))
}
