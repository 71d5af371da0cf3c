use serde::{Deserialize, Serialize};

use super::{register_dim, MarkedSet};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};

/// Norm² tolerance accepted when constructing a state from external data.
pub const INPUT_NORM_TOL: f64 = 1e-6;

/// Norm tolerance for the a²·|f⁻¹(0)| + b²·|f⁻¹(1)| = 1 constraint.
pub const TWO_VALUE_NORM_TOL: f64 = 1e-9;

/// Real amplitude vector of an `n`-qubit register, indexed by basis integer.
///
/// Immutable by construction: every operation returns a fresh state, so
/// values are safe to share across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<T> {
    n: usize,
    amps: Vec<T>,
}

impl<T: Scalar> PureState<T> {
    /// Builds a state from raw amplitudes, checking the length and that the
    /// norm² is within [`INPUT_NORM_TOL`] of 1.
    pub fn new(n: usize, amps: Vec<T>) -> Result<Self> {
        let dim = register_dim(n)?;
        if amps.len() != dim {
            return Err(Error::AmplitudeLength {
                expected: dim,
                actual: amps.len(),
            });
        }
        if let Some(bad) = amps.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFiniteAmplitude(bad));
        }
        let state = Self { n, amps };
        let deviation = state.norm_sq_error();
        if deviation > INPUT_NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(state)
    }

    /// Internal constructor for amplitudes that are normalized by build.
    pub(crate) fn from_parts(n: usize, amps: Vec<T>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n);
        Self { n, amps }
    }

    /// The basis state |0…0⟩.
    pub fn all_zeros(n: usize) -> Result<Self> {
        let dim = register_dim(n)?;
        let mut amps = vec![T::zero(); dim];
        amps[0] = T::one();
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[T] {
        &self.amps
    }

    pub fn amp(&self, x: usize) -> T {
        self.amps[x]
    }

    /// Σ amps².
    pub fn norm_sq(&self) -> T {
        compensated_sum(self.amps.iter().map(|&a| a * a))
    }

    /// |Σ amps² − 1| as `f64`.
    pub fn norm_sq_error(&self) -> f64 {
        (self.norm_sq() - T::one()).abs().to_f64_lossy()
    }

    /// Largest |self − other| amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut worst = T::zero();
        for (&a, &b) in self.amps.iter().zip(&other.amps) {
            worst = worst.max((a - b).abs());
        }
        Ok(worst)
    }

    /// Tensor product, placing `other`'s qubits after `self`'s.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        register_dim(n)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amps {
            for &b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(Self { n, amps })
    }

    /// Applies a real orthogonal 2×2 matrix `[[m00, m01], [m10, m11]]` to one
    /// qubit. Used by the local-unitary invariance tests.
    pub fn apply_one_qubit(&self, qubit: usize, m: [[T; 2]; 2]) -> Result<Self> {
        if qubit >= self.n {
            return Err(Error::IndexOutOfRange {
                index: qubit,
                n: self.n,
            });
        }
        let bit = 1usize << (self.n - 1 - qubit);
        let mut amps = self.amps.clone();
        for x in 0..self.dim() {
            if x & bit == 0 {
                let x1 = x | bit;
                let a0 = self.amps[x];
                let a1 = self.amps[x1];
                amps[x] = m[0][0] * a0 + m[0][1] * a1;
                amps[x1] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(Self { n: self.n, amps })
    }

    /// Serializes to the state file schema
    /// `{"n": <int>, "amplitudes": [<real>, …]}`.
    pub fn to_json(&self) -> String {
        let repr = StateFileRepr {
            n: self.n,
            amplitudes: self.amps.iter().map(|a| a.to_f64_lossy()).collect(),
        };
        serde_json::to_string(&repr).expect("state file serialization")
    }

    /// Reads the state file schema, enforcing length and [`INPUT_NORM_TOL`].
    pub fn from_json(text: &str) -> Result<Self> {
        let repr: StateFileRepr =
            serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
        let amps = repr
            .amplitudes
            .into_iter()
            .map(T::from_f64_const)
            .collect();
        Self::new(repr.n, amps)
    }
}

#[derive(Serialize, Deserialize)]
struct StateFileRepr {
    n: usize,
    amplitudes: Vec<f64>,
}

/// The `(a, b, marked)` triple of a real 2-value state: amplitude `a` on
/// `f⁻¹(0)` and `b` on `f⁻¹(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoValueSpec<T> {
    pub marked: MarkedSet,
    pub a: T,
    pub b: T,
}

impl<T: Scalar> TwoValueSpec<T> {
    pub fn new(marked: MarkedSet, a: T, b: T) -> Self {
        Self { marked, a, b }
    }

    /// |a²·(2^n − M) + b²·M − 1|.
    pub fn norm_error(&self) -> f64 {
        let dim = 1usize << self.marked.n();
        let m = self.marked.size();
        let unmarked = T::from_usize(dim - m).expect("register size");
        let marked = T::from_usize(m).expect("marked size");
        (self.a * self.a * unmarked + self.b * self.b * marked - T::one())
            .abs()
            .to_f64_lossy()
    }
}

/// The uniform superposition |ψ₀ᴳ⟩ with every amplitude 2^{−n/2}.
pub fn make_uniform<T: Scalar>(n: usize) -> Result<PureState<T>> {
    let dim = register_dim(n)?;
    let amp = T::from_usize(dim).expect("register size").sqrt().recip();
    Ok(PureState::from_parts(n, vec![amp; dim]))
}

/// Builds the real 2-value state for `spec`: amplitude `b` on marked basis
/// states and `a` elsewhere. Rejects specs whose normalization is off by
/// more than [`TWO_VALUE_NORM_TOL`].
pub fn two_value_state<T: Scalar>(spec: &TwoValueSpec<T>) -> Result<PureState<T>> {
    let deviation = spec.norm_error();
    if deviation > TWO_VALUE_NORM_TOL {
        return Err(Error::NotNormalized { deviation });
    }
    let dim = register_dim(spec.marked.n())?;
    let mut amps = vec![spec.a; dim];
    for &x in spec.marked.members() {
        amps[x] = spec.b;
    }
    Ok(PureState::from_parts(spec.marked.n(), amps))
}

/// The sign-flip oracle O: negates the amplitude of every marked basis
/// state, leaving all others bit-identical.
pub fn apply_oracle<T: Scalar>(state: &PureState<T>, marked: &MarkedSet) -> Result<PureState<T>> {
    if state.n() != marked.n() {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: marked.n(),
        });
    }
    let mut amps = state.amps.clone();
    for &x in marked.members() {
        amps[x] = -amps[x];
    }
    Ok(PureState::from_parts(state.n(), amps))
}

/// The inversion-about-mean reflection P: amp[x] ← 2·mean − amp[x].
pub fn apply_diffusion<T: Scalar>(state: &PureState<T>) -> PureState<T> {
    let dim = state.dim();
    let mean = compensated_sum(state.amps.iter().copied())
        / T::from_usize(dim).expect("register size");
    let two_mean = mean + mean;
    let amps = state.amps.iter().map(|&a| two_mean - a).collect();
    PureState::from_parts(state.n(), amps)
}

/// Σ over marked basis states of amp², the probability of measuring a
/// solution.
pub fn success_probability<T: Scalar>(state: &PureState<T>, marked: &MarkedSet) -> Result<T> {
    if state.n() != marked.n() {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: marked.n(),
        });
    }
    Ok(compensated_sum(marked.members().iter().map(|&x| {
        let a = state.amp(x);
        a * a
    })))
}
