//! Bell-pair routing that saturates the vertex-boundary depth bound at
//! every odd step.

use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::graph::{Graph, Vertex};

use super::entropy::{run_layer, Gate, QubitCut, SteReport};
use super::gates::swap;
use super::state::MAX_QUBITS;
use super::QuantumState;

/// Entropy of a named subsystem after each step, starting before step 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyTrace {
    pub subsystem: String,
    pub qubits: Vec<usize>,
    /// `values[d]` is `S_X` after `d` layers, in bits.
    pub values: Vec<f64>,
}

impl EntropyTrace {
    pub fn final_value(&self) -> f64 {
        *self
            .values
            .last()
            .expect("trace starts with the initial value")
    }

    /// Rows `step,entropy`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("step,S_{}\n", self.subsystem);
        for (d, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{d},{v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Algorithm1Run {
    pub x_size: usize,
    pub delta_size: usize,
    pub k: usize,
    pub num_qubits: usize,
    /// Host graph edges on `2|X|` vertices.
    pub edges: Vec<(usize, usize)>,
    pub trace: EntropyTrace,
    /// Swap pairs of each layer.
    pub layers: Vec<Vec<(usize, usize)>>,
    pub ste: Vec<SteReport>,
    /// `(ΔS_X + ΔS_X̄)/(2|δX|) - 1` after each layer, clamped at 0.
    pub vertex_bound: Vec<f64>,
}

impl Algorithm1Run {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// Host graph: `X` a clique, `X̄ = δX ∪ Y` with `Y` a clique, every `δX`
/// vertex joined to all of `X`, all of `Y` and the rest of `δX`.
pub fn algorithm1_graph(x_size: usize, delta_size: usize) -> Result<Graph, SimError> {
    let n = 2 * x_size;
    let delta = x_size..x_size + delta_size;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let both_x = v < x_size;
            let both_y = u >= x_size + delta_size;
            if both_x || both_y || delta.contains(&u) || delta.contains(&v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Runs `2k - 1` layers on `|X| = 2k|δX|` Bell pairs per side with
/// `|X̄| = |X|`. Odd layers swap ends of unrouted `X` pairs into `δX`,
/// even layers push those ends on into `Y`.
pub fn run_algorithm1(
    x_size: usize,
    delta_size: usize,
    k: usize,
) -> Result<Algorithm1Run, SimError> {
    if k == 0 || delta_size == 0 {
        return Err(SimError::BadSizes("k and |δX| must be positive".into()));
    }
    if x_size != 2 * k * delta_size {
        return Err(SimError::BadSizes(format!(
            "|X| = {x_size} must equal 2k|δX| = {}",
            2 * k * delta_size
        )));
    }
    let q = 2 * x_size;
    if q > MAX_QUBITS {
        return Err(SimError::TooManyQubits(q, MAX_QUBITS));
    }
    let g = algorithm1_graph(x_size, delta_size)?;
    let x: Vec<Vertex> = (0..x_size).collect();
    let delta: Vec<Vertex> = (x_size..x_size + delta_size).collect();
    let y: Vec<Vertex> = (x_size + delta_size..q).collect();
    let cut = QubitCut::from_graph(&g, &x)?;

    let mut pairs: Vec<(usize, usize)> = x.chunks(2).map(|c| (c[0], c[1])).collect();
    pairs.extend(delta.iter().zip(&y).map(|(&d, &v)| (d, v)));
    pairs.extend(y[delta_size..].chunks(2).map(|c| (c[0], c[1])));
    let mut state = QuantumState::bell_pairs(q, &pairs)?;

    // occupant[p] is the original qubit now at p; partner[o] its Bell partner
    let mut occupant: Vec<usize> = (0..q).collect();
    let mut partner = vec![0; q];
    for &(a, b) in &pairs {
        partner[a] = b;
        partner[b] = a;
    }
    let in_x = |p: usize| p < x_size;
    let in_y = |p: usize| p >= x_size + delta_size;

    let mut values = vec![state.reduced_entropy(&cut.x)?];
    let mut layers = Vec::new();
    let mut ste = Vec::new();
    let mut vertex_bound = Vec::new();
    for step in 1..=2 * k - 1 {
        let position = |occ: &[usize], o: usize| {
            occ.iter()
                .position(|&v| v == o)
                .expect("every qubit placed")
        };
        // unrouted pairs have both ends on the side they started, with the
        // source side of odd layers being X and of even layers Y
        let source = |p: usize| if step % 2 == 1 { in_x(p) } else { in_y(p) };
        let mut taken = vec![false; q];
        let mut swaps = Vec::new();
        for &d in &delta {
            let end = (0..q).find(|&p| {
                !taken[p] && source(p) && source(position(&occupant, partner[occupant[p]])) && {
                    let other = position(&occupant, partner[occupant[p]]);
                    !taken[other]
                }
            });
            let Some(p) = end else { break };
            taken[p] = true;
            taken[position(&occupant, partner[occupant[p]])] = true;
            swaps.push((p, d));
        }
        let layer: Vec<Gate> = swaps
            .iter()
            .map(|&(a, b)| Gate {
                unitary: swap(),
                qubits: (a, b),
            })
            .collect();
        ste.push(run_layer(&mut state, &layer, &cut)?);
        for &(a, b) in &swaps {
            occupant.swap(a, b);
        }
        let s_x = state.reduced_entropy(&cut.x)?;
        vertex_bound.push((2.0 * (s_x - values[0]) / (2.0 * delta_size as f64) - 1.0).max(0.0));
        values.push(s_x);
        layers.push(swaps);
    }
    Ok(Algorithm1Run {
        x_size,
        delta_size,
        k,
        num_qubits: q,
        edges: g.edges().to_vec(),
        trace: EntropyTrace {
            subsystem: "X".into(),
            qubits: cut.x,
            values,
        },
        layers,
        ste,
        vertex_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn host_graph_shape() {
        let g = algorithm1_graph(4, 1).unwrap();
        let cut = g.cut(&[0, 1, 2, 3]).unwrap();
        assert_eq!(cut.delta_x, vec![4]);
        assert_eq!(cut.delta_xbar, vec![0, 1, 2, 3]);
        assert!(g.is_connected());
    }

    #[test]
    fn saturates_at_odd_steps() {
        let run = run_algorithm1(4, 1, 2).unwrap();
        assert_eq!(run.num_qubits, 8);
        assert_eq!(run.depth(), 3);
        let expect = [0.0, 2.0, 2.0, 4.0];
        for (v, e) in run.trace.values.iter().zip(expect) {
            assert!((v - e).abs() < 1e-8, "{:?}", run.trace.values);
        }
        assert!(run.ste.iter().all(|r| r.ok));
        for (d, b) in run.vertex_bound.iter().enumerate() {
            if d % 2 == 0 {
                assert!((b - (d + 1) as f64).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn other_sizes() {
        let run = run_algorithm1(2, 1, 1).unwrap();
        assert!((run.trace.final_value() - 2.0).abs() < 1e-8);
        let run = run_algorithm1(4, 2, 1).unwrap();
        assert!((run.trace.final_value() - 4.0).abs() < 1e-8);
        let run = run_algorithm1(6, 1, 3).unwrap();
        assert_eq!(run.depth(), 5);
        assert!((run.trace.final_value() - 6.0).abs() < 1e-8);
        assert!(run.trace.to_csv().starts_with("step,S_X\n0,"));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(
            run_algorithm1(0, 1, 0),
            Err(SimError::BadSizes(_))
        ));
        assert!(matches!(
            run_algorithm1(3, 1, 1),
            Err(SimError::BadSizes(_))
        ));
        assert_eq!(
            run_algorithm1(8, 1, 4).unwrap_err(),
            SimError::TooManyQubits(16, 14)
        );
    }
}
