//! Simulation and entanglement analysis of Grover-search dynamics.
//!
//! The crate builds the register states of Grover's search both from their
//! closed-form amplitudes and by explicit Oracle/diffusion application,
//! quantifies their multipartite entanglement (separable degree δ, maximum
//! Schmidt number χ over all bipartitions, Schmidt measure E_χ = log₂χ,
//! finest tensor factorization), and machine-checks the structural laws
//! relating the two by exhaustive enumeration at small register sizes.
//!
//! Core math is generic over the amplitude scalar via [`Scalar`]
//! (`f32`/`f64`); the `*64` aliases at the crate root cover the common case.

mod error;
mod scalar;

pub mod dynamics;
pub mod entanglement;
pub mod statecore;

pub use error::{Error, Result};
pub use scalar::{compensated_sum, Scalar};

pub use dynamics::{DynamicsTrace, StepLabel, StepRecord, TraceClassification};
pub use entanglement::{Bipartition, EntanglementReport, RankPolicy, TwoValueClass};
pub use statecore::{GroverParams, MarkedSet, PureState, TwoValueSpec};

/// `f64` aliases for the generic core types.
pub type PureState64 = statecore::PureState<f64>;
pub type TwoValueSpec64 = statecore::TwoValueSpec<f64>;
pub type GroverParams64 = statecore::GroverParams<f64>;
pub type EntanglementReport64 = entanglement::EntanglementReport<f64>;
pub type DynamicsTrace64 = dynamics::DynamicsTrace<f64>;
pub type StepRecord64 = dynamics::StepRecord<f64>;

/// Fixed-width float formatting (17 significant digits, locale-independent)
/// used by every text output so identical runs are byte-identical.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}
