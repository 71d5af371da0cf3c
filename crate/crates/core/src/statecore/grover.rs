use super::{register_dim, two_value_state, MarkedSet, PureState, TwoValueSpec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Snap width used when the optimal-iteration formula lands on an exact
/// half-integer; keeps `R` stable against last-ulp rounding of θ.
const ROUND_SNAP: f64 = 1e-9;

/// Search-problem parameters: register size `n`, solution count `m`, the
/// rotation angle θ with `cos(θ/2) = √((2^n − m)/2^n)`, and the optimal
/// iteration count `R` placing `(2R+1)·θ/2` nearest π/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverParams<T> {
    n: usize,
    m: usize,
    theta: T,
    r: usize,
}

impl<T: Scalar> GroverParams<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// Optimal iteration count `R`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The rotation angle `(2k+1)·θ/2` after `k` iterations.
    pub fn angle(&self, k: usize) -> T {
        let factor = T::from_usize(2 * k + 1).expect("iteration index");
        factor * self.theta / T::from_f64_const(2.0)
    }

    /// Closed-form amplitudes (unmarked, marked) of the iteration state
    /// |ψ_k^G⟩.
    pub fn iteration_amplitudes(&self, k: usize) -> (T, T) {
        let dim_sqrt = T::from_usize(1 << self.n).expect("register size").sqrt();
        let half = self.angle(0);
        let angle = self.angle(k);
        let a = angle.cos() / (dim_sqrt * half.cos());
        let b = angle.sin() / (dim_sqrt * half.sin());
        (a, b)
    }

    /// Closed-form amplitudes of the Oracle state |ψ_k^O⟩ for `k ≥ 1`: the
    /// iteration amplitudes of `k − 1` with the marked branch negated.
    pub fn oracle_amplitudes(&self, k: usize) -> Result<(T, T)> {
        if k < 1 {
            return Err(Error::OracleIndexZero);
        }
        let (a, b) = self.iteration_amplitudes(k - 1);
        Ok((a, -b))
    }

    /// cos[(2R+1)·θ/2], the quantity whose vanishing marks the
    /// perfect-measurement endpoint.
    pub fn final_cos(&self) -> T {
        self.angle(self.r).cos()
    }

    /// Success probability sin²[(2k+1)·θ/2] after `k` iterations.
    pub fn success_probability(&self, k: usize) -> T {
        let s = self.angle(k).sin();
        s * s
    }
}

/// Computes θ and `R` for `m` solutions among `2^n` candidates. Requires
/// `1 ≤ m ≤ 2^(n−1)` so that θ/2 stays in [0, π/4]; `R = 0` exactly when
/// `m = 2^(n−1)`.
pub fn grover_params<T: Scalar>(n: usize, m: usize) -> Result<GroverParams<T>> {
    let dim = register_dim(n)?;
    if m < 1 || m > dim / 2 {
        return Err(Error::MarkedCountOutOfRange {
            m,
            lo: 1,
            hi: dim / 2,
        });
    }
    let ratio = T::from_usize(m).expect("marked count") / T::from_usize(dim).expect("size");
    let theta = T::from_f64_const(2.0) * ratio.sqrt().asin();

    // R = ⌈(π−θ)/(2θ) − 1/2⌉, i.e. the nearest integer to (π−θ)/(2θ) with
    // exact halves rounding down. m = 2^(n−1) makes the argument land on an
    // exact integer and must give R = 0, hence the snap.
    let t = (T::PI() - theta) / (theta + theta) - T::from_f64_const(0.5);
    let nearest = t.round();
    let r_real = if (t - nearest).abs() <= T::from_f64_const(ROUND_SNAP) {
        nearest
    } else {
        t.ceil()
    };
    let r = r_real.to_usize().unwrap_or(0);
    Ok(GroverParams { n, m, theta, r })
}

/// Closed-form state after `k` Grover iterations (Eq.-style two-value form):
/// `cos[(2k+1)θ/2]/(√2^n·cos(θ/2))` on unmarked and
/// `sin[(2k+1)θ/2]/(√2^n·sin(θ/2))` on marked basis states.
pub fn iteration_state<T: Scalar>(
    params: &GroverParams<T>,
    marked: &MarkedSet,
    k: usize,
) -> Result<PureState<T>> {
    check_consistent(params, marked)?;
    let (a, b) = params.iteration_amplitudes(k);
    two_value_state(&TwoValueSpec::new(marked.clone(), a, b))
}

/// Closed-form state after the `k`-th Oracle call (`k ≥ 1`): equals
/// `apply_oracle(iteration_state(k − 1))`.
pub fn oracle_state<T: Scalar>(
    params: &GroverParams<T>,
    marked: &MarkedSet,
    k: usize,
) -> Result<PureState<T>> {
    check_consistent(params, marked)?;
    let (a, b) = params.oracle_amplitudes(k)?;
    two_value_state(&TwoValueSpec::new(marked.clone(), a, b))
}

fn check_consistent<T: Scalar>(params: &GroverParams<T>, marked: &MarkedSet) -> Result<()> {
    if params.n != marked.n() {
        return Err(Error::QubitMismatch {
            left: params.n,
            right: marked.n(),
        });
    }
    if params.m != marked.size() {
        return Err(Error::InconsistentMarkedCount {
            marked: marked.size(),
            params: params.m,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statecore::{apply_diffusion, apply_oracle, make_uniform};

    fn marked(n: usize, xs: &[usize]) -> MarkedSet {
        MarkedSet::new(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn params_for_single_solution() {
        let p: GroverParams<f64> = grover_params(3, 1).unwrap();
        assert!((p.theta() - 0.7227342478134157).abs() < 1e-12);
        assert_eq!(p.r(), 2);
    }

    #[test]
    fn params_at_exact_angles() {
        // m = 2^(n−2) gives θ = π/3 exactly and R = 1.
        let p: GroverParams<f64> = grover_params(4, 4).unwrap();
        assert!((p.theta() - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
        assert_eq!(p.r(), 1);

        // m = 2^(n−1) gives θ = π/2 and R = 0, for every n up to 16.
        for n in 1..=16 {
            let p: GroverParams<f64> = grover_params(n, 1 << (n - 1)).unwrap();
            assert_eq!(p.r(), 0, "n={n}");
        }
    }

    #[test]
    fn params_reject_out_of_range_counts() {
        assert!(matches!(
            grover_params::<f64>(3, 0),
            Err(Error::MarkedCountOutOfRange { .. })
        ));
        assert!(matches!(
            grover_params::<f64>(3, 5),
            Err(Error::MarkedCountOutOfRange { .. })
        ));
    }

    #[test]
    fn near_optimality_exhaustive() {
        // sin²[(2R+1)θ/2] ≥ 1/2 for every (n, m); follows from
        // |π/2 − (2R+1)θ/2| ≤ θ/2 ≤ π/4.
        for n in 1..=12 {
            for m in 1..=(1usize << (n - 1)) {
                let p: GroverParams<f64> = grover_params(n, m).unwrap();
                let eps = p.success_probability(p.r());
                assert!(eps >= 0.5, "n={n} m={m} eps={eps}");
                let drift = (std::f64::consts::FRAC_PI_2 - p.angle(p.r())).abs();
                assert!(drift <= p.theta() / 2.0 + 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn amplitude_gap_exhaustive() {
        // Unmarked and marked closed-form amplitudes stay separated for
        // every k ∈ [1, R].
        for n in 3..=12 {
            for m in 1..(1usize << (n - 1)) {
                let p: GroverParams<f64> = grover_params(n, m).unwrap();
                for k in 1..=p.r() {
                    let (a, b) = p.iteration_amplitudes(k);
                    assert!((a - b).abs() > 1e-12, "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_hand_iteration() {
        let m = marked(3, &[0]);
        let p: GroverParams<f64> = grover_params(3, 1).unwrap();

        // k = 0 is the uniform state.
        let s0 = iteration_state(&p, &m, 0).unwrap();
        assert!(s0.max_abs_diff(&make_uniform(3).unwrap()).unwrap() < 1e-14);

        let sqrt32 = 32.0f64.sqrt();
        let s1 = iteration_state(&p, &m, 1).unwrap();
        assert!((s1.amp(1) - 1.0 / sqrt32).abs() < 1e-14);
        assert!((s1.amp(0) - 5.0 / sqrt32).abs() < 1e-14);

        let sqrt128 = 128.0f64.sqrt();
        let s2 = iteration_state(&p, &m, 2).unwrap();
        assert!((s2.amp(1) + 1.0 / sqrt128).abs() < 1e-14);
        assert!((s2.amp(0) - 11.0 / sqrt128).abs() < 1e-14);
    }

    #[test]
    fn oracle_state_is_sign_flipped_iteration() {
        let m = marked(3, &[0]);
        let p: GroverParams<f64> = grover_params(3, 1).unwrap();

        let o1 = oracle_state(&p, &m, 1).unwrap();
        let sqrt8 = 8.0f64.sqrt();
        assert!((o1.amp(0) + 1.0 / sqrt8).abs() < 1e-14);
        assert!((o1.amp(3) - 1.0 / sqrt8).abs() < 1e-14);

        let o2 = oracle_state(&p, &m, 2).unwrap();
        let sqrt32 = 32.0f64.sqrt();
        assert!((o2.amp(0) + 5.0 / sqrt32).abs() < 1e-14);
        assert!((o2.amp(3) - 1.0 / sqrt32).abs() < 1e-14);

        // Defining identity: oracle_state(k) = O(iteration_state(k−1)).
        for k in 1..=p.r() {
            let explicit = apply_oracle(&iteration_state(&p, &m, k - 1).unwrap(), &m).unwrap();
            let closed = oracle_state(&p, &m, k).unwrap();
            assert!(closed.max_abs_diff(&explicit).unwrap() < 1e-12);
        }

        assert!(matches!(
            oracle_state(&p, &m, 0),
            Err(Error::OracleIndexZero)
        ));
    }

    #[test]
    fn closed_form_tracks_operator_route() {
        for n in 3..=8 {
            for m_count in 1..=(1usize << (n - 1)) {
                let mk = marked(n, &(0..m_count).collect::<Vec<_>>());
                let p: GroverParams<f64> = grover_params(n, m_count).unwrap();
                let mut op = make_uniform(n).unwrap();
                for k in 1..=p.r() {
                    let after_oracle = apply_oracle(&op, &mk).unwrap();
                    let o_closed = oracle_state(&p, &mk, k).unwrap();
                    assert!(
                        o_closed.max_abs_diff(&after_oracle).unwrap() <= 1e-10,
                        "oracle n={n} m={m_count} k={k}"
                    );
                    op = apply_diffusion(&after_oracle);
                    let g_closed = iteration_state(&p, &mk, k).unwrap();
                    assert!(
                        g_closed.max_abs_diff(&op).unwrap() <= 1e-10,
                        "iteration n={n} m={m_count} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_inconsistent_marked_sets() {
        let p: GroverParams<f64> = grover_params(3, 1).unwrap();
        assert!(matches!(
            iteration_state(&p, &marked(3, &[0, 1]), 0),
            Err(Error::InconsistentMarkedCount { .. })
        ));
        assert!(matches!(
            iteration_state(&p, &marked(2, &[0]), 0),
            Err(Error::QubitMismatch { .. })
        ));
    }
}
