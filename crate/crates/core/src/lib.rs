//! Resonant Jaynes-Cummings dynamics with field entropies computed from the
//! 2x2 atomic density matrix, for a field that starts in a coherent state or
//! in a two-component mixture `P|alpha><alpha| + (1-P)|-alpha><-alpha|`.
//!
//! - [`fock`]: truncated number-basis states and operators, dense Hermitian
//!   eigendecomposition.
//! - [`dynamics`]: the evolved branches `|c>`, `|s>`, reduced density
//!   matrices, inversion, purity and parity overlaps.
//! - [`entropy`]: Cayley-Hamilton and Chebyshev powers of the atomic matrix,
//!   entropy operators, the mixed-field entropy, and the diagonalization oracle.
//! - [`scenario`]: time-grid runs, summary report and CSV/JSON output.
//!
//! Time is always the dimensionless product `lambda * t`.

pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod scenario;

pub use dynamics::{
    atomic_density, atomic_inversion, branch_gram, evolve_branches, field_density_mixed,
    field_density_pure, field_purity, rho_f_mix_squared_full, AtomicMatrix, BranchGram, Branches,
};
pub use entropy::{
    atomic_entropy, atomic_power_ch, atomic_power_chebyshev, decompose_atomic,
    entropy_coefficients, field_entropy_operator, field_entropy_pure, g_coefficient,
    mixed_field_entropy, oracle_entropy, power_relation_check, AtomicDecomposition,
    EntropyCoefficients, MixedEntropy,
};
pub use error::{JcError, Result};
pub use fock::{coherent_state, hermitian_eig, parity_operator, FockOperator, FockVector, Spectrum};
pub use num_complex::Complex64;
pub use scenario::{
    compare_figures, emit, emit_to_path, run_scenario, ConfigPatch, FigureComparison,
    OutputFormat, RunReport, ScenarioConfig, ScenarioRun, TimeSeriesRecord,
};
