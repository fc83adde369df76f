use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::SimError;
use crate::linalg::{eigh, hermitian_function, Matrix};

use super::gates::{c, unitarity_deviation, CMatrix};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 14;
/// Largest local operator passed to [`QuantumState::evolve`].
pub const MAX_EVOLVE_QUBITS: usize = 12;
pub const NORM_TOL: f64 = 1e-10;
pub const UNITARY_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Density eigenvalues below this are dropped, with `0 log 0 = 0`.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
pub const SYMMETRY_TOL: f64 = 1e-8;

/// A pure state on `q` qubits. Qubit 0 is the most significant bit of the
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    labels: Vec<String>,
}

fn check_qubits(q: usize) -> Result<(), SimError> {
    if q == 0 {
        return Err(SimError::BadSizes(
            "a register needs at least one qubit".into(),
        ));
    }
    if q > MAX_QUBITS {
        return Err(SimError::TooManyQubits(q, MAX_QUBITS));
    }
    Ok(())
}

/// Shannon entropy in bits of a spectrum, ignoring tiny eigenvalues.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&p| p > EIGENVALUE_FLOOR)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

impl QuantumState {
    /// `|0…0⟩`.
    pub fn zero(q: usize) -> Result<Self, SimError> {
        Self::basis(q, 0)
    }

    pub fn basis(q: usize, index: usize) -> Result<Self, SimError> {
        check_qubits(q)?;
        let dim = 1usize << q;
        if index >= dim {
            return Err(SimError::BadSizes(format!("basis index {index} ≥ {dim}")));
        }
        let mut amplitudes = vec![c(0.0); dim];
        amplitudes[index] = c(1.0);
        Ok(Self::unlabelled(amplitudes))
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(SimError::BadSizes(format!(
                "length {len} is not a power of two"
            )));
        }
        check_qubits(len.trailing_zeros() as usize)?;
        let state = Self::unlabelled(amplitudes);
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(SimError::BadSizes(format!("amplitudes have norm {norm}")));
        }
        Ok(state)
    }

    /// Haar-random pure state.
    pub fn random(q: usize, rng: &mut impl Rng) -> Result<Self, SimError> {
        check_qubits(q)?;
        let mut amplitudes: Vec<Complex64> = (0..1usize << q)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self::unlabelled(amplitudes))
    }

    /// `(|00⟩ + |11⟩)/√2` on each listed pair, `|0⟩` elsewhere.
    pub fn bell_pairs(q: usize, pairs: &[(usize, usize)]) -> Result<Self, SimError> {
        let mut state = Self::zero(q)?;
        let flat: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        state.check_distinct(&flat)?;
        let h = super::gates::hadamard();
        for &(a, b) in pairs {
            state.apply_unitary(&h, &[a])?;
            state.apply_unitary(&super::gates::cnot(), &[a, b])?;
        }
        Ok(state)
    }

    fn unlabelled(amplitudes: Vec<Complex64>) -> Self {
        let q = amplitudes.len().trailing_zeros() as usize;
        QuantumState {
            amplitudes,
            labels: (0..q).map(|i| format!("q{i}")).collect(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SimError> {
        if labels.len() != self.num_qubits() {
            return Err(SimError::BadSizes(format!(
                "{} labels for {} qubits",
                labels.len(),
                self.num_qubits()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        if self.amplitudes.len() != other.amplitudes.len() {
            return 0.0;
        }
        self.inner(other).norm_sqr()
    }

    fn check_distinct(&self, qubits: &[usize]) -> Result<(), SimError> {
        let q = self.num_qubits();
        let mut seen = vec![false; q];
        for &b in qubits {
            if b >= q || std::mem::replace(&mut seen[b], true) {
                return Err(SimError::BadSubset);
            }
        }
        Ok(())
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits() - 1 - qubit)
    }

    /// Applies any `2^m × 2^m` operator to `qubits` without checks on the
    /// operator itself.
    pub(crate) fn apply_operator(
        &mut self,
        op: &CMatrix,
        qubits: &[usize],
    ) -> Result<(), SimError> {
        self.check_distinct(qubits)?;
        let m = qubits.len();
        if op.dim != 1 << m {
            return Err(SimError::DimensionMismatch {
                got: op.dim,
                expected: 1 << m,
            });
        }
        let masks: Vec<usize> = qubits.iter().map(|&b| self.mask(b)).collect();
        let all: usize = masks.iter().sum();
        // offsets[l] is the basis offset of local index l
        let offsets: Vec<usize> = (0..op.dim)
            .map(|l| {
                (0..m)
                    .filter(|&k| (l >> (m - 1 - k)) & 1 == 1)
                    .map(|k| masks[k])
                    .sum()
            })
            .collect();
        let mut local = vec![c(0.0); op.dim];
        for base in 0..self.amplitudes.len() {
            if base & all != 0 {
                continue;
            }
            for (l, &off) in offsets.iter().enumerate() {
                local[l] = self.amplitudes[base | off];
            }
            for (i, &off) in offsets.iter().enumerate() {
                self.amplitudes[base | off] = (0..op.dim).map(|j| op[(i, j)] * local[j]).sum();
            }
        }
        Ok(())
    }

    /// Applies a unitary on the listed qubits.
    pub fn apply_unitary(&mut self, u: &CMatrix, qubits: &[usize]) -> Result<(), SimError> {
        let dev = unitarity_deviation(u);
        if dev > UNITARY_TOL {
            return Err(SimError::NotUnitary(dev));
        }
        self.apply_operator(u, qubits)
    }

    /// Applies a two-qubit unitary, first qubit of the pair most significant.
    pub fn apply_gate(&mut self, u: &CMatrix, pair: (usize, usize)) -> Result<(), SimError> {
        if u.dim != 4 {
            return Err(SimError::DimensionMismatch {
                got: u.dim,
                expected: 4,
            });
        }
        self.apply_unitary(u, &[pair.0, pair.1])
    }

    /// Exchanges two qubits by permuting amplitudes.
    pub fn swap_qubits(&mut self, a: usize, b: usize) -> Result<(), SimError> {
        self.check_distinct(&[a, b])?;
        let (ma, mb) = (self.mask(a), self.mask(b));
        for i in 0..self.amplitudes.len() {
            if i & ma != 0 && i & mb == 0 {
                self.amplitudes.swap(i, i ^ ma ^ mb);
            }
        }
        Ok(())
    }

    /// The state with qubit `v` relocated to position `dest[v]`.
    pub fn permute_qubits(&self, dest: &[usize]) -> Result<Self, SimError> {
        let q = self.num_qubits();
        if dest.len() != q {
            return Err(SimError::BadPermutation);
        }
        self.check_distinct(dest)
            .map_err(|_| SimError::BadPermutation)?;
        let mut amplitudes = vec![c(0.0); self.amplitudes.len()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            let moved = (0..q)
                .filter(|&v| idx & self.mask(v) != 0)
                .map(|v| self.mask(dest[v]))
                .sum::<usize>();
            amplitudes[moved] = amp;
        }
        let mut labels = self.labels.clone();
        for (v, &d) in dest.iter().enumerate() {
            labels[d] = self.labels[v].clone();
        }
        Ok(QuantumState { amplitudes, labels })
    }

    /// Applies `e^{-iHt}` for `H` acting on the listed qubits.
    pub fn evolve(&mut self, h: &CMatrix, qubits: &[usize], t: f64) -> Result<(), SimError> {
        if qubits.len() > MAX_EVOLVE_QUBITS {
            return Err(SimError::TooManyQubits(qubits.len(), MAX_EVOLVE_QUBITS));
        }
        let u = propagator(h, t)?;
        self.apply_operator(&u, qubits)
    }

    /// Amplitudes reshaped to a `2^|subset| × 2^(q-|subset|)` row-major matrix.
    fn split(&self, subset: &[usize]) -> Result<(usize, usize, Vec<Complex64>), SimError> {
        let q = self.num_qubits();
        self.check_distinct(subset)?;
        if subset.is_empty() || subset.len() == q {
            return Err(SimError::BadSubset);
        }
        let in_sub: Vec<bool> = (0..q).map(|b| subset.contains(&b)).collect();
        let rest: Vec<usize> = (0..q).filter(|&b| !in_sub[b]).collect();
        let (rows, cols) = (1usize << subset.len(), 1usize << rest.len());
        let mut out = vec![c(0.0); rows * cols];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            let gather = |qs: &[usize]| {
                qs.iter().fold(0, |acc, &b| {
                    (acc << 1) | usize::from(idx & self.mask(b) != 0)
                })
            };
            out[gather(subset) * cols + gather(&rest)] = amp;
        }
        Ok((rows, cols, out))
    }

    /// `ρ_subset`, indexed with the first listed qubit most significant.
    pub fn reduced_density(&self, subset: &[usize]) -> Result<CMatrix, SimError> {
        let (rows, cols, m) = self.split(subset)?;
        Ok(gram(rows, cols, &m, false))
    }

    /// `S(ρ_subset)` in bits.
    pub fn reduced_entropy(&self, subset: &[usize]) -> Result<f64, SimError> {
        let (rows, cols, m) = self.split(subset)?;
        // the smaller Gram matrix has the same nonzero spectrum
        let rho = gram(rows, cols, &m, rows > cols);
        Ok(entropy_bits(&eigh(&rho)?.values))
    }

    /// `|S_X - S_X̄| ≤ 1e-8`, each side from its own reduced density.
    pub fn entropy_symmetry_check(&self, subset: &[usize]) -> Result<bool, SimError> {
        let complement: Vec<usize> = (0..self.num_qubits())
            .filter(|b| !subset.contains(b))
            .collect();
        let side = |s: &[usize]| -> Result<f64, SimError> {
            if s.len() <= 8 {
                Ok(entropy_bits(&eigh(&self.reduced_density(s)?)?.values))
            } else {
                self.reduced_entropy(s)
            }
        };
        let a = side(subset)?;
        let b = side(&complement)?;
        Ok((a - b).abs() <= SYMMETRY_TOL)
    }
}

/// `M M†`, or `(M† M)ᵀ` when `transpose` (same nonzero spectrum, smaller
/// when `M` is tall).
fn gram(rows: usize, cols: usize, m: &[Complex64], transpose: bool) -> CMatrix {
    if transpose {
        let mut out = Matrix::zeros(cols);
        for i in 0..cols {
            for j in 0..cols {
                out[(i, j)] = (0..rows)
                    .map(|r| m[r * cols + i] * m[r * cols + j].conj())
                    .sum();
            }
        }
        out
    } else {
        let mut out = Matrix::zeros(rows);
        for i in 0..rows {
            for j in i..rows {
                let v: Complex64 = (0..cols)
                    .map(|k| m[i * cols + k] * m[j * cols + k].conj())
                    .sum();
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }
}

pub fn check_hermitian(h: &CMatrix) -> Result<(), SimError> {
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL * h.frobenius().max(1.0) {
        return Err(SimError::NotHermitian(dev));
    }
    Ok(())
}

/// `e^{-iHt}` by eigendecomposition.
pub fn propagator(h: &CMatrix, t: f64) -> Result<CMatrix, SimError> {
    check_hermitian(h)?;
    if t == 0.0 {
        return Ok(Matrix::identity(h.dim));
    }
    Ok(hermitian_function(h, |lambda| {
        Complex64::from_polar(1.0, -lambda * t)
    })?)
}

/// Largest `|eigenvalue|`.
pub fn operator_norm(h: &CMatrix) -> Result<f64, SimError> {
    check_hermitian(h)?;
    Ok(eigh(h)?.values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}
