use super::{svd, Bipartition, RankPolicy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statecore::{pack_bits, PureState};

/// Reshapes the amplitude vector into a row-major 2^{|A|} × 2^{|B|} matrix.
/// Row and column indices pack the A- and B-qubit values in ascending qubit
/// order (smallest qubit most significant).
pub(crate) fn reshape<T: Scalar>(
    state: &PureState<T>,
    a_qubits: &[usize],
    b_qubits: &[usize],
) -> (usize, usize, Vec<T>) {
    let n = state.n();
    let rows = 1usize << a_qubits.len();
    let cols = 1usize << b_qubits.len();
    let mut data = vec![T::zero(); rows * cols];
    for x in 0..state.dim() {
        let r = pack_bits(x, n, a_qubits);
        let c = pack_bits(x, n, b_qubits);
        data[r * cols + c] = state.amp(x);
    }
    (rows, cols, data)
}

/// Rank decision on descending singular values: count σ above
/// `rel_tol · σ₁ · max(rows, cols)`, flagging any σ within a factor of
/// `ambiguity_factor` of the threshold.
pub(crate) fn rank_from_singular_values<T: Scalar>(
    values: &[T],
    rows: usize,
    cols: usize,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    let sigma1 = values[0];
    if sigma1 == T::zero() || !sigma1.is_finite() {
        return Err(Error::ZeroState);
    }
    let tau = T::from_f64_const(policy.rel_tol)
        * sigma1
        * T::from_usize(rows.max(cols)).expect("matrix dimension");
    let band = T::from_f64_const(policy.ambiguity_factor);
    let mut rank = 0usize;
    let mut ambiguous = false;
    for &sigma in values {
        if sigma > tau {
            rank += 1;
            if sigma < tau * band {
                ambiguous = true;
            }
        } else if sigma > tau / band {
            ambiguous = true;
        }
    }
    Ok((rank, ambiguous))
}

pub(crate) fn split_rank<T: Scalar>(
    state: &PureState<T>,
    split: Bipartition,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    let (rows, cols, data) = reshape(state, &split.side_a(), &split.side_b());
    let values = svd::singular_values(rows, cols, &data)?;
    rank_from_singular_values(&values, rows, cols, policy)
}

/// Rank of the reduced density matrix Tr_B(|ψ⟩⟨ψ|), i.e. the Schmidt rank of
/// the split, together with the ambiguity flag of the threshold decision.
pub fn reduced_rank<T: Scalar>(
    state: &PureState<T>,
    split: Bipartition,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    if split.n() != state.n() {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: split.n(),
        });
    }
    split_rank(state, split, policy)
}

/// Maximum Schmidt rank of a single factor over its internal canonical
/// bipartitions; 1 for single-qubit factors.
pub(crate) fn factor_chi<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    if state.n() == 1 {
        return Ok((1, false));
    }
    let mut chi = 1usize;
    let mut ambiguous = false;
    for split in Bipartition::canonical(state.n()) {
        let (rank, amb) = split_rank(state, split, policy)?;
        ambiguous |= amb;
        chi = chi.max(rank);
    }
    Ok((chi, ambiguous))
}

/// χ by brute force: the maximum [`reduced_rank`] over every canonical
/// bipartition of the whole register. Cross-check for the factorization
/// route in [`super::max_schmidt_number`].
pub fn max_schmidt_number_direct<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    policy.check_cap(state.n())?;
    factor_chi(state, policy)
}
