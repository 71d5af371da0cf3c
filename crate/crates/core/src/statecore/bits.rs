//! Qubit ↔ bit-position helpers for the fixed register convention.

/// Value of qubit `qubit` in basis index `x` of an `n`-qubit register.
/// Qubit 0 is the most significant bit.
#[inline]
pub fn qubit_bit(x: usize, n: usize, qubit: usize) -> bool {
    debug_assert!(qubit < n);
    (x >> (n - 1 - qubit)) & 1 == 1
}

/// Basis index with qubit `qubit` flipped.
#[inline]
pub fn flip_qubit(x: usize, n: usize, qubit: usize) -> usize {
    debug_assert!(qubit < n);
    x ^ (1usize << (n - 1 - qubit))
}

/// Pack the values of `qubits` (ascending order) in `x` into a compact index.
/// The smallest listed qubit becomes the most significant bit, mirroring the
/// register convention.
#[inline]
pub fn pack_bits(x: usize, n: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .fold(0usize, |acc, &q| (acc << 1) | usize::from(qubit_bit(x, n, q)))
}
