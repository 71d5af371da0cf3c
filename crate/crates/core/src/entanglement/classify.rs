use crate::scalar::Scalar;
use crate::statecore::{MarkedSet, TwoValueSpec};

/// Amplitude tolerance for the structural equality tests (a = b, a = −b,
/// a = 0). The checks assume `f64`-scale inputs; the dynamics keeps genuine
/// amplitude gaps far above this.
const CLASSIFY_TOL: f64 = 1e-12;

/// Structural class of a real 2-value state, decided combinatorially from
/// `(a, b)` and the marked set without building the amplitude vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoValueCategory {
    /// a = b, or M ∈ {0, 2^n}: the ±uniform state, fully separable.
    Uniform,
    /// The support is a single basis state: fully separable.
    BasisState,
    /// One amplitude vanishes and the support is a subcube: fully separable
    /// into basis-state and (|0⟩+|1⟩)/√2 factors.
    Subcube,
    /// One amplitude vanishes and the support is not a subcube: the state
    /// cannot be fully separable.
    EntangledSupport,
    /// a = −b with a·b ≠ 0: a real equally weighted state (±2^{−n/2} signs).
    Rews,
    /// a·b ≠ 0 and a ≠ ±b.
    Generic,
}

/// Classifier output: the category, the qubits that factor out as
/// (|0⟩+|1⟩)/√2, the marked set projected onto the remaining qubits, and a
/// lower bound on the separable degree implied by the structure.
#[derive(Clone, Debug)]
pub struct TwoValueClass {
    pub category: TwoValueCategory,
    pub free_qubits: Vec<usize>,
    /// `None` when every qubit is free (uniform states).
    pub residual_marked: Option<MarkedSet>,
    pub predicted_delta_lower_bound: usize,
}

/// Classifies a two-value state combinatorially.
///
/// A qubit is *free* when flipping it maps the marked set onto itself; each
/// free qubit contributes a (|0⟩+|1⟩)/√2 factor at its own position (free
/// qubits may sit anywhere, not only in a leading block). For vanishing `a`
/// (or `b`) the support is a subcube exactly when its size is 2^{#free},
/// which is the full-separability condition for support-uniform states.
pub fn classify_two_value<T: Scalar>(spec: &TwoValueSpec<T>) -> TwoValueClass {
    let n = spec.marked.n();
    let dim = 1usize << n;
    let m = spec.marked.size();
    let tol = T::from_f64_const(CLASSIFY_TOL);

    if m == 0 || m == dim || (spec.a - spec.b).abs() <= tol {
        return TwoValueClass {
            category: TwoValueCategory::Uniform,
            free_qubits: (0..n).collect(),
            residual_marked: None,
            predicted_delta_lower_bound: n,
        };
    }

    let a_zero = spec.a.abs() <= tol;
    let b_zero = spec.b.abs() <= tol;
    if a_zero || b_zero {
        let support = if a_zero {
            spec.marked.clone()
        } else {
            spec.marked.complement()
        };
        let free: Vec<usize> = (0..n)
            .filter(|&q| support.invariant_under_flip(q))
            .collect();
        let (category, predicted) = if support.size() == 1 {
            (TwoValueCategory::BasisState, n)
        } else if support.size() == 1usize << free.len() {
            (TwoValueCategory::Subcube, n)
        } else {
            let constants = (0..n).filter(|&q| support.qubit_is_constant(q)).count();
            (
                TwoValueCategory::EntangledSupport,
                free.len() + constants + 1,
            )
        };
        return with_residual(spec, category, free, predicted);
    }

    let category = if (spec.a + spec.b).abs() <= tol {
        TwoValueCategory::Rews
    } else {
        TwoValueCategory::Generic
    };
    let free: Vec<usize> = (0..n)
        .filter(|&q| spec.marked.invariant_under_flip(q))
        .collect();
    let predicted = free.len() + 1;
    with_residual(spec, category, free, predicted)
}

fn with_residual<T: Scalar>(
    spec: &TwoValueSpec<T>,
    category: TwoValueCategory,
    free_qubits: Vec<usize>,
    predicted_delta_lower_bound: usize,
) -> TwoValueClass {
    let n = spec.marked.n();
    let non_free: Vec<usize> = (0..n).filter(|q| !free_qubits.contains(q)).collect();
    let residual_marked = if non_free.is_empty() {
        None
    } else {
        Some(
            spec.marked
                .project(&non_free)
                .expect("non-empty projection target"),
        )
    };
    TwoValueClass {
        category,
        free_qubits,
        residual_marked,
        predicted_delta_lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::MarkedSet;

    fn spec(n: usize, members: &[usize], a: f64, b: f64) -> TwoValueSpec<f64> {
        TwoValueSpec::new(MarkedSet::new(n, members.iter().copied()).unwrap(), a, b)
    }

    #[test]
    fn single_marked_support_is_a_basis_state() {
        let c = classify_two_value(&spec(3, &[0], 0.0, 1.0));
        assert_eq!(c.category, TwoValueCategory::BasisState);
        assert!(c.free_qubits.is_empty());
        assert_eq!(c.predicted_delta_lower_bound, 3);
    }

    #[test]
    fn axis_pair_support_is_a_subcube() {
        // {000, 010} = |0⟩ ⊗ (+) ⊗ |0⟩: free qubit 1, fully separable.
        let c = classify_two_value(&spec(3, &[0, 2], 0.0, std::f64::consts::FRAC_1_SQRT_2));
        assert_eq!(c.category, TwoValueCategory::Subcube);
        assert_eq!(c.free_qubits, vec![1]);
        assert_eq!(c.predicted_delta_lower_bound, 3);
        assert_eq!(c.residual_marked.unwrap().members(), &[0]);
    }

    #[test]
    fn non_subcube_support_is_flagged_entangled() {
        // {000, 011}: no free qubit, constant qubit 0, Bell residue.
        let c = classify_two_value(&spec(3, &[0, 3], 0.0, std::f64::consts::FRAC_1_SQRT_2));
        assert_eq!(c.category, TwoValueCategory::EntangledSupport);
        assert!(c.free_qubits.is_empty());
        assert_eq!(c.predicted_delta_lower_bound, 2);
    }

    #[test]
    fn generic_amplitudes_detect_free_qubits() {
        // Marked pair {x, flip q2(x)}: qubit 2 factors out.
        let sqrt = |x: f64| x.sqrt();
        let a = 1.0 / sqrt(32.0);
        let b = sqrt((1.0 - 6.0 * a * a) / 2.0);
        let c = classify_two_value(&spec(3, &[4, 5], a, b));
        assert_eq!(c.category, TwoValueCategory::Generic);
        assert_eq!(c.free_qubits, vec![2]);
        assert_eq!(c.predicted_delta_lower_bound, 2);
        // residual over qubits {0, 1}: member 0b10
        assert_eq!(c.residual_marked.unwrap().members(), &[2]);
    }

    #[test]
    fn equal_amplitudes_are_uniform_regardless_of_marking() {
        let v = 1.0 / 8.0f64.sqrt();
        let c = classify_two_value(&spec(3, &[1, 5], v, v));
        assert_eq!(c.category, TwoValueCategory::Uniform);
        assert_eq!(c.free_qubits, vec![0, 1, 2]);
        assert!(c.residual_marked.is_none());
    }

    #[test]
    fn sign_states_are_recognized() {
        let v = 1.0 / 8.0f64.sqrt();
        let c = classify_two_value(&spec(3, &[0], v, -v));
        assert_eq!(c.category, TwoValueCategory::Rews);
        assert!(c.free_qubits.is_empty());
        assert_eq!(c.predicted_delta_lower_bound, 1);
    }
}
