//! Coinless two-dimensional discrete-time quantum walks of a single photon.
//!
//! The walker lives in polarization ⊗ path ⊗ OAM. Polarization plays the
//! coin, the path (PBS) shift moves `x`, and a J-plate (or q-plate) moves the
//! OAM quantum number `m` conditioned on an orthonormal polarization pair.
//! The entanglement generated between any two of the three degrees of
//! freedom is measured with the negativity of the partially transposed
//! reduced density matrix.

pub mod entanglement;
pub mod error;
pub mod io;
pub mod layout;
pub mod operators;
pub mod recurrence;
pub mod state;

pub use num_complex::Complex64;

pub use entanglement::{
    hermitian_eigenvalues, jacobi_eigenvalues, negativity, negativity_curve, parameter_sweep,
    partial_transpose, reduced_density_matrix, state_negativity, DensityMatrix, Dof, DofPair,
    FactorBasis, Negativity, SquareMatrix, SweepParam, SweepSpec, TransposeSide,
};
pub use error::{Error, Result};
pub use layout::{component_counts, emit_layout, ComponentCounts, OpticalLayout, Realization};
pub use operators::{
    apply_coin, coin_matrix, evolve, evolve_snapshots, jplate_matrix, jplate_tilde_matrix,
    pair_from_params, qplate_pair, shift_sigma, shift_sigma_modified, shift_x, shift_y,
    shift_y_modified, step, step_one_dimensional, CoinOperator, Mat2, OrthoPair, Plate, SU2Params,
    WalkKind, WalkVariant,
};
pub use recurrence::{compare_with_operator, oracle_evolve, recurrence_step, AmplitudeGrids};
pub use state::{Axis, Coin, InitialStateParams, Site, Spinor, WalkState};
