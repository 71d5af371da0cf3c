//! Construction and evolution of Grover-search register states.
//!
//! States are plain real amplitude vectors over the computational basis.
//! Qubit 0 is the *most significant* bit of the basis index: qubit `i` of
//! `|x₀x₁…x_{n−1}⟩` occupies bit position `n − 1 − i` of `x`. Every routine
//! in the crate uses this convention.
//!
//! The module offers two independent routes to the same states: closed-form
//! constructors ([`iteration_state`], [`oracle_state`]) and whole-register
//! operator maps ([`apply_oracle`], [`apply_diffusion`]). Keeping both routes
//! distinct is deliberate; the test suites compare them against each other.

mod bits;
mod grover;
mod marked;
mod state;

pub use bits::{flip_qubit, pack_bits, qubit_bit};
pub use grover::{grover_params, iteration_state, oracle_state, GroverParams};
pub use marked::MarkedSet;
pub use state::{
    apply_diffusion, apply_oracle, make_uniform, success_probability, two_value_state, PureState,
    TwoValueSpec, INPUT_NORM_TOL, TWO_VALUE_NORM_TOL,
};

/// Largest register the library will allocate (2^30 amplitudes).
pub const MAX_REGISTER_QUBITS: usize = 30;

/// Checked `2^n` with the register-size guards applied.
pub(crate) fn register_dim(n: usize) -> crate::Result<usize> {
    if n == 0 {
        return Err(crate::Error::EmptyRegister);
    }
    if n > MAX_REGISTER_QUBITS {
        return Err(crate::Error::RegisterTooLarge {
            n,
            max: MAX_REGISTER_QUBITS,
        });
    }
    Ok(1usize << n)
}
