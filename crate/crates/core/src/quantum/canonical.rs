//! Local-unitary normal form of two-qubit Hamiltonians.

use serde::{Deserialize, Serialize};

use crate::error::SimError;
use crate::linalg::{eigh, Matrix};

use super::gates::{kron, paulis, scaled, CMatrix};
use super::state::check_hermitian;

/// `Σ_j |μ_j|` of a normalized interaction; the fastest swap then takes time 1.
pub const NORMALIZATION: f64 = 3.0 * std::f64::consts::PI / 4.0;
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// A Hermitian operator on two qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitHamiltonian {
    matrix: CMatrix,
}

impl TwoQubitHamiltonian {
    pub fn new(matrix: CMatrix) -> Result<Self, SimError> {
        if matrix.dim != 4 {
            return Err(SimError::DimensionMismatch {
                got: matrix.dim,
                expected: 4,
            });
        }
        check_hermitian(&matrix)?;
        Ok(TwoQubitHamiltonian { matrix })
    }

    /// `Σ_j μ_j σ_j ⊗ σ_j`.
    pub fn from_couplings(mu: [f64; 3]) -> Self {
        let p = paulis();
        let mut m = Matrix::zeros(4);
        for (j, &mu_j) in mu.iter().enumerate() {
            m = super::gates::add(&m, &scaled(&kron(&p[j + 1], &p[j + 1]), mu_j));
        }
        TwoQubitHamiltonian { matrix: m }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `c_ij = tr(H σ_i ⊗ σ_j) / 4` over `[1, X, Y, Z]²`.
    pub fn pauli_coefficients(&self) -> [[f64; 4]; 4] {
        let p = paulis();
        let mut out = [[0.0; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let prod = self.matrix.matmul(&kron(&p[i], &p[j]));
                *v = (0..4).map(|k| prod[(k, k)].re).sum::<f64>() / 4.0;
            }
        }
        out
    }

    /// Rescales the interaction so `Σ|μ_j| = budget`. Local terms scale too.
    pub fn normalized_to(&self, budget: f64) -> Self {
        let norm = canonical_form(self).norm;
        if norm == 0.0 {
            return self.clone();
        }
        TwoQubitHamiltonian {
            matrix: scaled(&self.matrix, budget / norm),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalForm {
    /// `μ_x ≥ μ_y ≥ |μ_z| ≥ 0`.
    pub mu: [f64; 3],
    /// `Σ_j |μ_j|`.
    pub norm: f64,
    pub norm_ok: bool,
    /// Coefficients of `σ_j ⊗ 1` and `1 ⊗ σ_j`.
    pub local_first: [f64; 3],
    pub local_second: [f64; 3],
}

impl CanonicalForm {
    /// Number of nonzero canonical couplings.
    pub fn interaction_rank(&self, tol: f64) -> usize {
        self.mu.iter().filter(|m| m.abs() > tol).count()
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Signed singular values of the Pauli coupling block. Local unitaries act
/// on that block as `O₁ M O₂ᵀ` with rotations, so the smallest singular
/// value carries the sign of `det M`.
pub fn canonical_form(h: &TwoQubitHamiltonian) -> CanonicalForm {
    let c = h.pauli_coefficients();
    let mut m = [[0.0; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = c[i + 1][j + 1];
        }
    }
    let mut mtm = Matrix::<f64>::zeros(3);
    for i in 0..3 {
        for j in 0..3 {
            mtm[(i, j)] = (0..3).map(|k| m[k][i] * m[k][j]).sum();
        }
    }
    let eig = eigh(&mtm).expect("3x3 symmetric converges");
    let mut s: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0).sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let sign = if det3(&m) < 0.0 { -1.0 } else { 1.0 };
    let mu = [s[0], s[1], sign * s[2]];
    let norm = mu.iter().map(|x| x.abs()).sum::<f64>();
    CanonicalForm {
        mu,
        norm,
        norm_ok: norm <= NORMALIZATION + NORMALIZATION_TOL,
        local_first: [c[1][0], c[2][0], c[3][0]],
        local_second: [c[0][1], c[0][2], c[0][3]],
    }
}

#[cfg(test)]
mod tests {
    use super::super::gates::{add, hadamard, pauli_x, pauli_z, swap};
    use super::super::QuantumState;
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn close(a: [f64; 3], b: [f64; 3]) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-10)
    }

    #[test]
    fn examples() {
        let xx = TwoQubitHamiltonian::new(scaled(&kron(&pauli_x(), &pauli_x()), 3.0 * PI / 4.0))
            .unwrap();
        let f = canonical_form(&xx);
        assert!(close(f.mu, [3.0 * PI / 4.0, 0.0, 0.0]) && f.norm_ok);

        let heis = TwoQubitHamiltonian::from_couplings([PI / 4.0; 3]);
        let f = canonical_form(&heis);
        assert!(close(f.mu, [PI / 4.0; 3]) && f.norm_ok);
        assert!((f.norm - NORMALIZATION).abs() < 1e-12);

        let big = TwoQubitHamiltonian::new(scaled(&kron(&pauli_x(), &pauli_x()), PI)).unwrap();
        assert!(!canonical_form(&big).norm_ok);

        assert!(matches!(
            TwoQubitHamiltonian::new(Matrix::zeros(2)),
            Err(SimError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn heisenberg_for_unit_time_is_swap() {
        let heis = TwoQubitHamiltonian::from_couplings([PI / 4.0; 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = QuantumState::random(2, &mut rng).unwrap();
        let mut a = psi.clone();
        a.evolve(heis.matrix(), &[0, 1], 1.0).unwrap();
        let mut b = psi;
        b.apply_gate(&swap(), (0, 1)).unwrap();
        assert!((a.fidelity(&b) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ccphase_is_local_plus_zz() {
        // 3π|11⟩⟨11| = (3π/4)(1 - Z₁ - Z₂ + ZZ)
        let mut m = Matrix::zeros(4);
        m[(3, 3)] = super::super::gates::c(3.0 * PI);
        let f = canonical_form(&TwoQubitHamiltonian::new(m).unwrap());
        assert!(close(f.mu, [3.0 * PI / 4.0, 0.0, 0.0]) && f.norm_ok);
        assert_eq!(f.interaction_rank(1e-12), 1);
        assert!(close(f.local_first, [0.0, 0.0, -3.0 * PI / 4.0]));
    }

    #[test]
    fn negative_determinant_flips_last_coupling() {
        let h = TwoQubitHamiltonian::from_couplings([0.5, 0.3, 0.2]);
        let y = super::super::gates::pauli_y();
        let flip = kron(&Matrix::identity(2), &y);
        // conjugating the second qubit by Y flips the X and Z couplings
        let m = flip.matmul(h.matrix()).matmul(&flip.adjoint());
        let f = canonical_form(&TwoQubitHamiltonian::new(m).unwrap());
        assert!(close(f.mu, [0.5, 0.3, 0.2]));
        let neg = TwoQubitHamiltonian::from_couplings([-0.5, -0.3, -0.2]);
        assert!(close(canonical_form(&neg).mu, [0.5, 0.3, -0.2]));
    }

    proptest! {
        #[test]
        fn invariant_under_local_unitaries(
            mu in prop::array::uniform3(-1.0f64..1.0),
            local in prop::array::uniform2(-1.0f64..1.0),
            t1 in 0.0f64..6.3, t2 in 0.0f64..6.3,
        ) {
            let mut h = TwoQubitHamiltonian::from_couplings(mu).matrix().clone();
            h = add(&h, &scaled(&kron(&pauli_z(), &Matrix::identity(2)), local[0]));
            h = add(&h, &scaled(&kron(&Matrix::identity(2), &pauli_x()), local[1]));
            let base = canonical_form(&TwoQubitHamiltonian::new(h.clone()).unwrap());
            let rot = |theta: f64, axis: &CMatrix| super::super::propagator(axis, theta).unwrap();
            let u = kron(&rot(t1, &pauli_x()).matmul(&hadamard()), &rot(t2, &super::super::gates::pauli_y()));
            let conj = u.matmul(&h).matmul(&u.adjoint());
            let moved = canonical_form(&TwoQubitHamiltonian::new(conj).unwrap());
            prop_assert!(close(base.mu, moved.mu));
            prop_assert!(base.mu[0] >= base.mu[1] - 1e-12 && base.mu[1] >= base.mu[2].abs() - 1e-12);
        }
    }
}
