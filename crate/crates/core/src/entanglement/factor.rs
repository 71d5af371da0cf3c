use super::rank::split_rank;
use super::svd::leading_triplet;
use super::rank::reshape;
use super::{Bipartition, RankPolicy};
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};
use crate::statecore::{pack_bits, PureState};

/// Largest tolerated amplitude deviation when the tensor product of the
/// extracted factors is compared against the input state.
const RECONSTRUCTION_TOL: f64 = 1e-9;

/// One factor of a tensor-product decomposition: the global qubits it covers
/// (ascending) and its state over those qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<T> {
    pub qubits: Vec<usize>,
    pub state: PureState<T>,
}

/// Finest tensor factorization by greedy minimal-factor extraction.
///
/// Starting from the smallest unassigned qubit `q`, subsets containing `q`
/// are tried by size and then ascending mask; the first subset whose split
/// against the remaining qubits has Schmidt rank 1 is peeled off as a
/// factor, and the search recurses on the residue. Factors come out ordered
/// by their smallest qubit. Each factor's sign is fixed so its
/// largest-magnitude amplitude is positive; the residual global sign is
/// pushed onto the first factor. The finest factorization of a pure state
/// is unique as a partition.
///
/// Returns the factors and the OR of every rank-decision ambiguity flag
/// encountered. Fails with [`Error::FactorizationInconsistent`] if the
/// factors do not reproduce the input within 1e-9.
pub fn finest_factorization<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<(Vec<Factor<T>>, bool)> {
    policy.check_cap(state.n())?;
    let mut ambiguous = false;
    let mut factors: Vec<Factor<T>> = Vec::new();
    let mut qubits: Vec<usize> = (0..state.n()).collect();
    let mut residual = state.clone();

    while qubits.len() > 1 {
        let local_n = qubits.len();
        let mut extracted = false;
        for mask in proper_subsets_with_first(local_n) {
            let split = Bipartition::new(local_n, mask)?;
            let (rank, amb) = split_rank(&residual, split, policy)?;
            ambiguous |= amb;
            if rank == 1 {
                let (head, tail) = peel_factor(&residual, split)?;
                let (head_qubits, tail_qubits) = partition_labels(&qubits, mask);
                factors.push(Factor {
                    qubits: head_qubits,
                    state: sign_normalized(head),
                });
                qubits = tail_qubits;
                residual = tail;
                extracted = true;
                break;
            }
        }
        if !extracted {
            factors.push(Factor {
                qubits: std::mem::take(&mut qubits),
                state: sign_normalized(residual.clone()),
            });
            break;
        }
    }
    if qubits.len() == 1 {
        factors.push(Factor {
            qubits,
            state: sign_normalized(residual),
        });
    }

    let mut reconstruction = tensor_of_factors(state.n(), &factors);
    let overlap = compensated_sum(
        (0..state.dim()).map(|x| reconstruction.amp(x) * state.amp(x)),
    );
    if overlap < T::zero() {
        factors[0].state = negated(&factors[0].state);
        reconstruction = negated(&reconstruction);
    }
    let deviation = reconstruction.max_abs_diff(state)?;
    if deviation.to_f64_lossy() > RECONSTRUCTION_TOL {
        return Err(Error::FactorizationInconsistent {
            deviation: deviation.to_f64_lossy(),
        });
    }
    Ok((factors, ambiguous))
}

/// Separable degree δ: the number of factors in the finest factorization.
/// δ = 1 means fully entangled; δ = n fully separable.
pub fn separable_degree<T: Scalar>(
    state: &PureState<T>,
    policy: &RankPolicy,
) -> Result<(usize, bool)> {
    let (factors, ambiguous) = finest_factorization(state, policy)?;
    Ok((factors.len(), ambiguous))
}

/// Tensor product of factors placed at their global qubit positions.
pub fn tensor_of_factors<T: Scalar>(n: usize, factors: &[Factor<T>]) -> PureState<T> {
    let dim = 1usize << n;
    let amps = (0..dim)
        .map(|x| {
            factors.iter().fold(T::one(), |acc, f| {
                acc * f.state.amp(pack_bits(x, n, &f.qubits))
            })
        })
        .collect();
    PureState::from_parts(n, amps)
}

/// Proper nonempty subsets of `n` local qubits that contain qubit 0, ordered
/// by size then ascending mask value.
fn proper_subsets_with_first(n: usize) -> Vec<usize> {
    let full = (1usize << n) - 1;
    let mut masks: Vec<usize> = (1..full).step_by(2).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// Splits a rank-1 state across `split` into (A-side factor, B-side residue)
/// via the leading singular triplet. The factor is the unit left singular
/// vector; the residue carries σ₁ ≈ 1.
fn peel_factor<T: Scalar>(
    state: &PureState<T>,
    split: Bipartition,
) -> Result<(PureState<T>, PureState<T>)> {
    let a = split.side_a();
    let b = split.side_b();
    let (rows, cols, data) = reshape(state, &a, &b);
    let (sigma, head, v) = leading_triplet(rows, cols, &data)?;
    let tail: Vec<T> = v.into_iter().map(|x| sigma * x).collect();
    Ok((
        PureState::from_parts(a.len(), head),
        PureState::from_parts(b.len(), tail),
    ))
}

/// Splits the ascending label list by the local mask.
fn partition_labels(labels: &[usize], mask: usize) -> (Vec<usize>, Vec<usize>) {
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for (i, &label) in labels.iter().enumerate() {
        if mask >> i & 1 == 1 {
            head.push(label);
        } else {
            tail.push(label);
        }
    }
    (head, tail)
}

/// Flips the overall sign if needed so the largest-magnitude amplitude is
/// positive (first maximum wins ties).
fn sign_normalized<T: Scalar>(state: PureState<T>) -> PureState<T> {
    let mut lead = 0;
    for x in 1..state.dim() {
        if state.amp(x).abs() > state.amp(lead).abs() {
            lead = x;
        }
    }
    if state.amp(lead) < T::zero() {
        negated(&state)
    } else {
        state
    }
}

fn negated<T: Scalar>(state: &PureState<T>) -> PureState<T> {
    PureState::from_parts(state.n(), state.amps().iter().map(|&a| -a).collect())
}
