//! Svetlichny-inequality machinery for systems of spin-`j` particles.
//!
//! Measurement operators act as `|m> -> e^{i phase(m)} |-m>` with
//! antisymmetric phases; parties share the GHZ-type state
//! `(2j+1)^{-1/2} Σ_m |m>^{⊗N}`. The crate evaluates `<S_N>` in closed form
//! and through dense state-vector simulation, generates the phase schemes
//! that maximize it, and searches the `m = 0` sign choices exhaustively.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`. Angles, spins and sign sums are exact.

pub mod error;
pub mod scalar;
pub mod schemes;
pub mod spin_space;
pub mod states;
pub mod svetlichny;

pub use error::{Error, Result};
pub use scalar::Real;
pub use schemes::{
    boson_scheme, f_function, fermion_scheme, optimal_scheme, predicted_max, residue_class, search_zero_signs,
    verify_condition, verify_fixed_sign_bound, SearchResult, SignAssignment,
};
pub use spin_space::{MagneticIndex, Phase, PhaseTable, RationalAngle, SpinJ};
pub use states::{StateVector, DEFAULT_DIMENSION_GUARD};
pub use svetlichny::{
    bounds, correlator, expectation_analytic, expectation_oracle, sign_v, Bounds, Scenario, SettingsTuple,
    SvetlichnyReport,
};

pub type Operator = spin_space::MeasurementOperator<f64>;
pub type Operator32 = spin_space::MeasurementOperator<f32>;
pub type State = StateVector<f64>;
pub type State32 = StateVector<f32>;
pub type Report = SvetlichnyReport<f64>;
pub type Report32 = SvetlichnyReport<f32>;

/// `<S_N>` in closed form, reported against the bounds.
pub fn evaluate<T: Real>(scenario: &Scenario) -> Result<SvetlichnyReport<T>> {
    let value = expectation_analytic::<T>(scenario)?;
    SvetlichnyReport::new(scenario.n_parties(), scenario.j().twice(), value)
}
