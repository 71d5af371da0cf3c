//! Multipartite entanglement measures for pure register states.
//!
//! The central quantities are the separable degree δ (the number of factors
//! in the finest tensor factorization), the maximum Schmidt number χ (the
//! largest reduced-density-matrix rank over all bipartitions), and the
//! Schmidt measure E_χ = log₂χ. χ is computed per factor and multiplied,
//! which equals the direct scan over all 2^{n−1} − 1 canonical bipartitions;
//! the direct scan is kept as a cross-check mode.
//!
//! Ranks are numerical (SVD with a relative threshold). Every rank decision
//! that falls inside a configurable band around the threshold raises an
//! `ambiguous` flag instead of silently committing, and an exact integer
//! elimination oracle is provided for ±1 sign patterns so the numerical
//! path can be cross-validated.

mod classify;
mod exact;
mod factor;
mod rank;
mod svd;

pub use classify::{classify_two_value, TwoValueCategory, TwoValueClass};
pub use exact::{exact_integer_rank, exact_sign_rank, sign_matrix};
pub use factor::{finest_factorization, separable_degree, Factor};
pub use rank::{max_schmidt_number_direct, reduced_rank};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statecore::PureState;

/// A bipartition A : B of the `n` qubits, stored canonically with qubit 0 on
/// side A so each unordered split appears exactly once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    n: usize,
    mask_a: usize, // bit i set ⇔ qubit i ∈ A
}

impl Bipartition {
    /// Builds a bipartition from a qubit bitmask (bit `i` ⇔ qubit `i`),
    /// normalizing to the canonical representative containing qubit 0.
    pub fn new(n: usize, mask_a: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        let full = (1usize << n) - 1;
        if mask_a == 0 || mask_a & !full != 0 || mask_a == full {
            return Err(Error::InvalidBipartition { n });
        }
        let mask_a = if mask_a & 1 == 1 { mask_a } else { full & !mask_a };
        Ok(Self { n, mask_a })
    }

    /// All canonical bipartitions of `n` qubits; there are 2^{n−1} − 1.
    pub fn canonical(n: usize) -> impl Iterator<Item = Bipartition> {
        let full = (1usize << n) - 1;
        (1..full).step_by(2).map(move |mask_a| Bipartition { n, mask_a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask_a(&self) -> usize {
        self.mask_a
    }

    /// Side-A qubits, ascending.
    pub fn side_a(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.mask_a >> q & 1 == 1).collect()
    }

    /// Side-B qubits, ascending.
    pub fn side_b(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.mask_a >> q & 1 == 0).collect()
    }
}

/// Thresholding policy for numerical ranks, plus the register-size cap for
/// full entanglement scans.
///
/// A singular value counts toward the rank when it exceeds
/// `rel_tol · σ₁ · max(rows, cols)`; any value within a factor of
/// `ambiguity_factor` of that threshold flags the decision as ambiguous.
#[derive(Clone, Copy, Debug)]
pub struct RankPolicy {
    pub rel_tol: f64,
    pub ambiguity_factor: f64,
    pub max_n: usize,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            ambiguity_factor: 32.0,
            max_n: 16,
        }
    }
}

impl RankPolicy {
    pub fn new(rel_tol: f64, ambiguity_factor: f64, max_n: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::InvalidPolicy(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if ambiguity_factor <= 1.0 {
            return Err(Error::InvalidPolicy(format!(
                "ambiguity_factor must exceed 1, got {ambiguity_factor}"
            )));
        }
        Ok(Self {
            rel_tol,
            ambiguity_factor,
            max_n,
        })
    }

    pub fn with_max_n(mut self, max_n: usize) -> Self {
        self.max_n = max_n;
        self
    }

    pub(crate) fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::AnalysisCapExceeded { n, cap: self.max_n });
        }
        Ok(())
    }
}

/// Full entanglement description of one state: the finest factorization, the
/// separable degree δ, per-factor and global maximum Schmidt numbers, and
/// E_χ = log₂χ.
#[derive(Clone, Debug)]
pub struct EntanglementReport<T> {
    pub delta: usize,
    pub factors: Vec<Factor<T>>,
    pub chi: usize,
    pub e_chi: f64,
    pub per_factor_chi: Vec<usize>,
    pub ambiguous: bool,
}

impl<T: Scalar> EntanglementReport<T> {
    /// JSON in the report schema:
    /// `{"delta", "chi", "e_chi", "factors": [{"qubits", "amplitudes"}], "ambiguous"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.repr()).expect("report serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).expect("report serialization")
    }

    pub(crate) fn repr(&self) -> ReportRepr<'_> {
        ReportRepr {
            delta: self.delta,
            chi: self.chi,
            e_chi: self.e_chi,
            factors: self
                .factors
                .iter()
                .map(|f| FactorRepr {
                    qubits: &f.qubits,
                    amplitudes: f.state.amps().iter().map(|a| a.to_f64_lossy()).collect(),
                })
                .collect(),
            ambiguous: self.ambiguous,
        }
    }
}

#[derive(Serialize)]
pub(crate) struct ReportRepr<'a> {
    delta: usize,
    chi: usize,
    e_chi: f64,
    factors: Vec<FactorRepr<'a>>,
    ambiguous: bool,
}

#[derive(Serialize)]
struct FactorRepr<'a> {
    qubits: &'a [usize],
    amplitudes: Vec<f64>,
}

/// Computes the full [`EntanglementReport`] of a state: factorize, take the
/// maximum internal Schmidt rank of each factor, and multiply.
pub fn analyze<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<EntanglementReport<T>> {
    policy.check_cap(state.n())?;
    let (factors, mut ambiguous) = finest_factorization(state, policy)?;
    let mut per_factor_chi = Vec::with_capacity(factors.len());
    let mut chi = 1usize;
    for f in &factors {
        let (c, amb) = rank::factor_chi(&f.state, policy)?;
        ambiguous |= amb;
        per_factor_chi.push(c);
        chi *= c;
    }
    Ok(EntanglementReport {
        delta: factors.len(),
        factors,
        chi,
        e_chi: (chi as f64).log2(),
        per_factor_chi,
        ambiguous,
    })
}

/// Maximum Schmidt number χ over all bipartitions, via the factorization
/// route. [`max_schmidt_number_direct`] is the brute-force cross-check.
pub fn max_schmidt_number<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    let report = analyze(state, policy)?;
    Ok((report.chi, report.ambiguous))
}

/// The Schmidt measure E_χ = log₂χ; 0 for fully separable states.
pub fn schmidt_measure<T: Scalar>(state: &PureState<T>, policy: &RankPolicy) -> Result<f64> {
    let (chi, _) = max_schmidt_number(state, policy)?;
    Ok((chi as f64).log2())
}
