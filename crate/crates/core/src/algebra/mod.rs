//! Finite-dimensional Fock-basis linear algebra: labeled bases, pure states,
//! density matrices, partial trace and transpose, and correlation measures.

mod basis;
mod density;
pub mod eigen;
pub mod measures;
mod state;

pub use basis::{BasisLabel, DiracPattern, LabeledBasis, ProductBasis, Subsystem};
pub use density::{partial_trace, partial_transpose, DensityMatrix, STATE_EIGEN_TOL};
pub use eigen::{sym_eigenvalues, tridiagonal_eigenvalues};
pub use measures::{
    entropy_of_spectrum, log_negativity, log_negativity_from, mutual_information, negativity,
    negativity_of_spectrum, von_neumann_entropy,
};
pub use state::{tensor_state, StateVector};
