//! Exact rank of integer matrices, used as an oracle for the numerical rank
//! path on ±2^{−n/2} sign states.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Bipartition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statecore::{pack_bits, PureState};

/// Rank over the rationals of a row-major integer matrix, by fraction-free
/// (Bareiss) Gaussian elimination. Intermediate values are exact minors, so
/// arbitrary-precision integers keep the elimination overflow-free.
pub fn exact_integer_rank(rows: usize, cols: usize, entries: &[i64]) -> usize {
    assert_eq!(
        entries.len(),
        rows * cols,
        "entry count must equal rows × cols"
    );
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut m: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                m.swap(pivot * cols + j, rank * cols + j);
            }
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let num = &m[rank * cols + col] * &m[i * cols + j]
                    - &m[i * cols + col] * &m[rank * cols + j];
                m[i * cols + j] = num / &prev; // exact by the Bareiss identity
            }
            m[i * cols + col] = BigInt::zero();
        }
        prev = m[rank * cols + col].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of a ±1 matrix.
///
/// Entries must be +1 or −1 (checked in debug builds); the elimination is
/// exact, so there is no tolerance and no ambiguity.
pub fn exact_sign_rank(rows: usize, cols: usize, signs: &[i8]) -> usize {
    debug_assert!(
        signs.iter().all(|&s| s == 1 || s == -1),
        "sign matrices contain only ±1"
    );
    let entries: Vec<i64> = signs.iter().map(|&s| i64::from(s)).collect();
    exact_integer_rank(rows, cols, &entries)
}

/// Extracts the ±1 sign matrix of a ±2^{−n/2} state under `split`, scaling
/// by √2^n. Fails if any amplitude is not a sign within 1e-6 of ±2^{−n/2}.
/// Row/column packing matches the numerical reshape exactly.
pub fn sign_matrix<T: Scalar>(
    state: &PureState<T>,
    split: Bipartition,
) -> Result<(usize, usize, Vec<i8>)> {
    if split.n() != state.n() {
        return Err(Error::QubitMismatch {
            left: state.n(),
            right: split.n(),
        });
    }
    let n = state.n();
    let a = split.side_a();
    let b = split.side_b();
    let rows = 1usize << a.len();
    let cols = 1usize << b.len();
    let scale = T::from_usize(state.dim()).expect("register size").sqrt();
    let tol = T::from_f64_const(1e-6);
    let mut signs = vec![0i8; rows * cols];
    for x in 0..state.dim() {
        let v = state.amp(x) * scale;
        let s = if (v - T::one()).abs() <= tol {
            1
        } else if (v + T::one()).abs() <= tol {
            -1
        } else {
            return Err(Error::NotSignPattern(x));
        };
        let r = pack_bits(x, n, &a);
        let c = pack_bits(x, n, &b);
        signs[r * cols + c] = s;
    }
    Ok((rows, cols, signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::{apply_oracle, make_uniform, MarkedSet};

    #[test]
    fn all_ones_matrix_has_rank_one() {
        assert_eq!(exact_sign_rank(4, 2, &[1; 8]), 1);
    }

    #[test]
    fn nonsingular_two_by_two() {
        // [[−1, 1], [1, 1]], determinant −2.
        assert_eq!(exact_sign_rank(2, 2, &[-1, 1, 1, 1]), 2);
    }

    #[test]
    fn rank_of_structured_integer_matrices() {
        // Rank 2: third row is the sum of the first two.
        let m = [1, 2, 3, 4, 5, 6, 5, 7, 9];
        assert_eq!(exact_integer_rank(3, 3, &m), 2);
        // Identity-like.
        let id = [1, 0, 0, 0, 1, 0, 0, 0, 1];
        assert_eq!(exact_integer_rank(3, 3, &id), 3);
        // Zero matrix.
        assert_eq!(exact_integer_rank(2, 3, &[0; 6]), 0);
        // Zero leading column forces a column skip.
        let skip = [0, 1, 0, 0, 0, 1];
        assert_eq!(exact_integer_rank(2, 3, &skip), 2);
    }

    #[test]
    fn sign_matrix_of_one_flipped_uniform_state() {
        let marked = MarkedSet::new(3, [0]).unwrap();
        let state = apply_oracle(&make_uniform::<f64>(3).unwrap(), &marked).unwrap();
        let split = Bipartition::new(3, 0b001).unwrap();
        let (rows, cols, signs) = sign_matrix(&state, split).unwrap();
        assert_eq!((rows, cols), (2, 4));
        assert_eq!(signs, vec![-1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(exact_sign_rank(rows, cols, &signs), 2);
    }

    #[test]
    fn non_sign_states_are_rejected() {
        let mut amps = vec![0.0f64; 8];
        amps[0] = 1.0;
        let state = PureState::new(3, amps).unwrap();
        let split = Bipartition::new(3, 0b001).unwrap();
        assert!(matches!(
            sign_matrix(&state, split),
            Err(Error::NotSignPattern(_))
        ));
    }
}
