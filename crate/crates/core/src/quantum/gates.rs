//! Standard one- and two-qubit operators. The first listed qubit of an
//! operator is the most significant bit of its local index.

use num_complex::Complex64;

use crate::linalg::Matrix;

pub type CMatrix = Matrix<Complex64>;

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(rows: &[&[f64]]) -> CMatrix {
    Matrix::from_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| c(x)).collect())
            .collect::<Vec<_>>(),
    )
}

pub fn pauli_x() -> CMatrix {
    real(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> CMatrix {
    Matrix::from_rows(&[vec![c(0.0), -I], vec![I, c(0.0)]])
}

pub fn pauli_z() -> CMatrix {
    real(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// `[1, X, Y, Z]`.
pub fn paulis() -> [CMatrix; 4] {
    [Matrix::identity(2), pauli_x(), pauli_y(), pauli_z()]
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    real(&[&[h, h], &[h, -h]])
}

pub fn swap() -> CMatrix {
    real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

pub fn cz() -> CMatrix {
    let mut m = Matrix::identity(4);
    m[(3, 3)] = c(-1.0);
    m
}

/// Control on the first qubit.
pub fn cnot() -> CMatrix {
    real(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let dim = a.dim * b.dim;
    let mut out = Matrix::zeros(dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let aij = a[(i, j)];
            if aij == c(0.0) {
                continue;
            }
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out[(i * b.dim + k, j * b.dim + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

pub fn scaled(m: &CMatrix, k: f64) -> CMatrix {
    Matrix {
        dim: m.dim,
        data: m.data.iter().map(|&z| z * k).collect(),
    }
}

pub fn add(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    Matrix {
        dim: a.dim,
        data: a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect(),
    }
}

/// `max |(U†U - 1)_ij|`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let p = u.adjoint().matmul(u);
    let mut worst = 0.0f64;
    for i in 0..u.dim {
        for j in 0..u.dim {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - target).norm());
        }
    }
    worst
}

/// Lifts `op` on `op_qubits` to an operator on `support`, which must
/// contain every qubit of `op_qubits`.
pub fn embed(op: &CMatrix, op_qubits: &[usize], support: &[usize]) -> CMatrix {
    let m = support.len();
    let pos: Vec<usize> = op_qubits
        .iter()
        .map(|q| {
            support
                .iter()
                .position(|s| s == q)
                .expect("qubit in support")
        })
        .collect();
    let bit = |idx: usize, p: usize| (idx >> (m - 1 - p)) & 1;
    let local = |idx: usize| pos.iter().fold(0, |acc, &p| (acc << 1) | bit(idx, p));
    let mut rest_mask = (1usize << m) - 1;
    for &p in &pos {
        rest_mask &= !(1 << (m - 1 - p));
    }
    let dim = 1 << m;
    let mut out = Matrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            if i & rest_mask == j & rest_mask {
                out[(i, j)] = op[(local(i), local(j))];
            }
        }
    }
    out
}
