//! # magic-jsd
//!
//! Quantum `(alpha, beta)` Jensen-Shannon divergences and the magic
//! (nonstabilizerness) quantifiers they induce, for qubits, qutrits and
//! pairs of qubits.
//!
//! | module | contents |
//! |---|---|
//! | [`linalg`], [`state`], [`random`] | dense complex matrices, Jacobi eigensolver, validated states, seeded ensembles |
//! | [`entropy`] | unified `(alpha, beta)` entropy and relative entropy, scalar helpers |
//! | [`jsd`] | the two divergences and their pure-state closed forms |
//! | [`stabilizer`] | Weyl operators, stabilizer sets, Clifford group, robustness |
//! | [`magic`] | pure-state magic, mixed-state upper bound, robustness cross-bound |
//! | [`gate_power`] | magic generating power of unitaries |
//! | [`verify`] | numeric property suites |
//! | [`scan`] | grid scans behind the plots |

#![forbid(unsafe_code)]

pub mod entropy;
pub mod error;
pub mod gate_power;
pub mod jsd;
pub mod linalg;
pub mod magic;
pub mod params;
pub mod random;
pub mod scan;
pub mod stabilizer;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{eig_hermitian, matrix_power_on_support, CMatrix, Spectrum};
pub use params::ParamPair;
pub use random::{random_density_matrix, random_pure_state, Sampler};
pub use stabilizer::StabilizerSet;
pub use state::{overlap, trace_distance, AnyState, DensityMatrix, PureState};
