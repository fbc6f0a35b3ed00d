//! Fast-forwarding `SU(n)` unitaries in the totally symmetric irrep through
//! quadratic bosonic Hamiltonians evaluated on a discretized phase space.

pub mod algebra;
pub mod combinatorics;
pub mod decompose;
pub mod error;
pub mod expander;
pub mod fastforward;
pub mod fit;
pub mod linalg;
pub mod oscillator;
pub mod pipeline;

pub use algebra::{
    build_generator, commutator_residual, exact_unitary, AlgebraMatrix, AngleSet, GeneratorKind,
    HermitianGenerator, SparseMatrix,
};
pub use combinatorics::{binomial, irrep_dimension, rank_desc, unrank, CompositionIndex, IrrepShape};
pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use decompose::{euler_decompose, fundamental_matrix, lift_sequence, EulerFactor, EulerSequence};
pub use fastforward::{
    build_plan, three_term_angles, expand_factor, split_phases, FactorTerm, FactorizationPlan, Monomial,
};
pub use oscillator::{
    eigen_residual, fourier_eigen_residual, hermite_function, hermite_state, matrix_element_residual,
    DiscreteOscillator, HermiteState,
};
pub use fit::ErrorFitResult;
pub use pipeline::{
    apply_factor, error_sweep, kicked_top_demo, simulate, Embedding, PipelineConfig, PipelineResult,
};
pub use expander::{
    build_channel, distinct_solutions, spectral_gap, ChannelSpectrum, ExpanderParams, QuaternionSolution,
};
