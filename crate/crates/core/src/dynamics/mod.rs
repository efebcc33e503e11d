//! Local unitary dynamics on the full state and on the spinor pair.

pub mod evolution;
pub mod hamiltonian;
pub mod recurrence;

pub use evolution::{
    compare_backends, evolve_full, evolve_full_schedule, evolve_separable,
    evolve_separable_schedule, evolve_spinor, evolve_spinor_schedule, recombine, separate,
    EvolutionReport, PhaseLedger, Schedule, Segment, TracePoint,
};
pub use hamiltonian::{
    aligned_eigen_residual, aligned_eigenvectors, aligned_hamiltonian, local_propagator,
    su2_operator, LocalHamiltonian,
};
pub use recurrence::{
    compound_rotation_check, eigenspace_basis, eigenspace_coefficients, recompose_from_eigenspaces,
    recurrence_drift, DriftFit, Handedness,
};
