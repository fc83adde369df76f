//! Dense state-vector simulation of the entropic bounds and the transfer
//! protocols. Times are in swap units: normalized two-qubit Hamiltonians
//! have `Σ|μ_j| ≤ 3π/4`, which makes the fastest swap take time 1.

mod algorithm1;
mod canonical;
mod entropy;
pub mod gates;
mod protocols;
mod state;

pub use algorithm1::{algorithm1_graph, run_algorithm1, Algorithm1Run, EntropyTrace};

pub use canonical::{
    canonical_form, CanonicalForm, TwoQubitHamiltonian, NORMALIZATION, NORMALIZATION_TOL,
};
pub use entropy::{
    analytic_rate, entanglement_capacity, entanglement_capacity_with, run_layer, ste_check,
    CapacityReport, Gate, QubitCut, SteReport, CAPACITY_TOL, CONJECTURED_ALPHA, FD_REFINE_TOL,
    FD_STEP, STE_TOL,
};

pub use protocols::{
    barbell_route_dense, barbell_route_sim, ccphase_term, fast_cz, fast_cz_at,
    fast_hamiltonian_route, w_time, w_transfer, w_transfer_dense, BarbellRun, FastCz,
    FastHamiltonianRoute, SimMode, WTransfer, FAST_ROUTE_SIM_MAX, LEAKAGE_TOL,
};
pub use state::{
    entropy_bits, operator_norm, propagator, QuantumState, EIGENVALUE_FLOOR, HERMITIAN_TOL,
    MAX_EVOLVE_QUBITS, MAX_QUBITS, NORM_TOL, SYMMETRY_TOL, UNITARY_TOL,
};
