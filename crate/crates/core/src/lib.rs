//! Four-state quantum walk on the integer line with an entangled two-qubit
//! coin `A(beta) ⊗ A(beta)` and a three-direction shift.
//!
//! The crate evolves the walk exactly ([`walk`]), analyses it in momentum
//! space ([`spectral`]), evaluates the closed-form weak limit and stationary
//! laws ([`limit`]), and cross-checks all of them against each other
//! ([`verify`]).

pub mod error;
pub mod limit;
pub mod linalg;
pub mod quadrature;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use limit::{
    density_at, limit_cdf, limit_cdf_left, limit_density, spectral_cdf, stationary_amplitudes,
    stationary_law, LimitDensity, StationaryAmplitudes, StationaryLaw,
};
pub use linalg::{Matrix2, Matrix4, Spinor, C64};
pub use quadrature::QuadSpec;
pub use spectral::{
    eigen_system, flat_band_profile, initial_overlap, inverse_fourier_amplitude,
    inverse_fourier_profile, localized_mass, spectral_moment, spectral_moments, Branch,
    EigenSystem, MomentumOperator,
};
pub use verify::{
    ks_distance, localization_check, pinned_simulation_checks, theorem_consistency_suite,
    CheckRecord, ConvergenceReport, LocalizationOptions, SuiteOptions, SuiteReport,
};
pub use walk::{
    build_coin_operator, empirical_moment, evolve, evolve_state, position_distribution,
    CoinParameters, InitialCoinState, PositionDistribution, WalkState,
};
