//! The full state sequence of one Grover run with per-step entanglement
//! measurements.
//!
//! A trace starts at |0…0⟩, applies the Hadamard wall, then alternates
//! Oracle and diffusion steps up to the optimal iteration count R. Every
//! state is built twice — by whole-register operator application and from
//! the closed-form amplitudes — and the maximum deviation between the two
//! routes is recorded per step. Entanglement reports are computed on the
//! operator-built state, keeping the measurement pipeline independent of
//! the formula it validates.

mod table;

pub use table::{classify_trace, CellCheck, TableRow, TraceClassification};

use serde::Serialize;

use crate::entanglement::{analyze, EntanglementReport, RankPolicy};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::statecore::{
    apply_diffusion, apply_oracle, grover_params, iteration_state, make_uniform, oracle_state,
    success_probability, GroverParams, MarkedSet, PureState,
};
use crate::format_real;

/// Absolute tolerance on cos[(2R+1)θ/2] below which the final state is
/// treated as the exact-measurement endpoint.
pub const FINAL_COS_TOL: f64 = 1e-12;

/// Position of a step in the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepLabel {
    /// |0…0⟩ before anything runs.
    Initial,
    /// The uniform state |ψ₀ᴳ⟩ after the Hadamard wall.
    Hadamard,
    /// |ψ_k^O⟩ after the k-th Oracle call.
    Oracle(usize),
    /// |ψ_k^G⟩ after the k-th diffusion.
    Diffusion(usize),
}

impl StepLabel {
    pub fn name(&self) -> &'static str {
        match self {
            StepLabel::Initial => "initial",
            StepLabel::Hadamard => "hadamard",
            StepLabel::Oracle(_) => "oracle",
            StepLabel::Diffusion(_) => "diffusion",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            StepLabel::Initial | StepLabel::Hadamard => None,
            StepLabel::Oracle(k) | StepLabel::Diffusion(k) => Some(*k),
        }
    }
}

impl std::fmt::Display for StepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.k() {
            Some(k) => write!(f, "{}({k})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// One step of the run: the closed-form two-value amplitudes (a, b), the
/// measured success probability, the entanglement report of the
/// operator-built state, and the operator-vs-closed-form deviation.
///
/// The initial record stores a = b = 0; the all-zeros register is not a
/// two-value state.
#[derive(Clone, Debug)]
pub struct StepRecord<T> {
    pub label: StepLabel,
    pub a: T,
    pub b: T,
    pub success_probability: T,
    pub report: EntanglementReport<T>,
    pub closed_form_deviation: T,
}

/// The whole run: 2 + 2R steps in the fixed order initial, hadamard,
/// oracle(1), diffusion(1), …, oracle(R), diffusion(R).
#[derive(Clone, Debug)]
pub struct DynamicsTrace<T> {
    pub params: GroverParams<T>,
    pub marked: MarkedSet,
    pub steps: Vec<StepRecord<T>>,
    pub final_cos_zero: bool,
}

impl<T: Scalar> DynamicsTrace<T> {
    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    /// Whether any step's rank decisions were ambiguous.
    pub fn ambiguous(&self) -> bool {
        self.steps.iter().any(|s| s.report.ambiguous)
    }

    pub fn final_step(&self) -> &StepRecord<T> {
        self.steps.last().expect("traces have at least two steps")
    }

    /// The steps the structural results quantify over: oracle(1) …
    /// oracle(R), i.e. everything after the Hadamard wall except the final
    /// diffusion.
    pub fn intermediate_steps(&self) -> &[StepRecord<T>] {
        &self.steps[2..self.steps.len() - 1]
    }
}

/// Runs the dynamics for `1 ≤ M ≤ 2^{n−1} − 1` (the regime with at least one
/// iteration), recording one [`StepRecord`] per state.
pub fn run_dynamics<T: Scalar>(
    n: usize,
    marked: &MarkedSet,
    policy: &RankPolicy,
) -> Result<DynamicsTrace<T>> {
    if marked.n() != n {
        return Err(Error::QubitMismatch {
            left: n,
            right: marked.n(),
        });
    }
    let dim = 1usize << n;
    let m = marked.size();
    if m < 1 || m > dim / 2 - 1 {
        return Err(Error::MarkedCountOutOfRange {
            m,
            lo: 1,
            hi: dim / 2 - 1,
        });
    }
    policy.check_cap(n)?;
    let params: GroverParams<T> = grover_params(n, m)?;

    let mut steps = Vec::with_capacity(2 + 2 * params.r());

    let initial = PureState::all_zeros(n)?;
    steps.push(StepRecord {
        label: StepLabel::Initial,
        a: T::zero(),
        b: T::zero(),
        success_probability: success_probability(&initial, marked)?,
        report: analyze(&initial, policy)?,
        closed_form_deviation: T::zero(),
    });

    // The Hadamard wall is applied as a whole-register map; the closed form
    // and the operator route coincide by construction.
    let uniform = make_uniform(n)?;
    let (a0, b0) = params.iteration_amplitudes(0);
    steps.push(StepRecord {
        label: StepLabel::Hadamard,
        a: a0,
        b: b0,
        success_probability: success_probability(&uniform, marked)?,
        report: analyze(&uniform, policy)?,
        closed_form_deviation: uniform
            .max_abs_diff(&iteration_state(&params, marked, 0)?)?,
    });

    let mut current = uniform;
    for k in 1..=params.r() {
        current = apply_oracle(&current, marked)?;
        let closed = oracle_state(&params, marked, k)?;
        let (a, b) = params.oracle_amplitudes(k)?;
        steps.push(StepRecord {
            label: StepLabel::Oracle(k),
            a,
            b,
            success_probability: success_probability(&current, marked)?,
            report: analyze(&current, policy)?,
            closed_form_deviation: current.max_abs_diff(&closed)?,
        });

        current = apply_diffusion(&current);
        let closed = iteration_state(&params, marked, k)?;
        let (a, b) = params.iteration_amplitudes(k);
        steps.push(StepRecord {
            label: StepLabel::Diffusion(k),
            a,
            b,
            success_probability: success_probability(&current, marked)?,
            report: analyze(&current, policy)?,
            closed_form_deviation: current.max_abs_diff(&closed)?,
        });
    }

    let final_cos_zero = params.final_cos().abs() <= T::from_f64_const(FINAL_COS_TOL);
    Ok(DynamicsTrace {
        params,
        marked: marked.clone(),
        steps,
        final_cos_zero,
    })
}

/// CSV rendering: header plus one row per step, columns
/// `step_index,label,k,a,b,success_probability,delta,chi,e_chi,ambiguous,closed_form_deviation`.
pub fn trace_to_csv<T: Scalar>(trace: &DynamicsTrace<T>) -> String {
    let mut out = String::from(
        "step_index,label,k,a,b,success_probability,delta,chi,e_chi,ambiguous,closed_form_deviation\n",
    );
    for (i, step) in trace.steps.iter().enumerate() {
        let k = step.label.k().map(|k| k.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{i},{label},{k},{a},{b},{eps},{delta},{chi},{e_chi},{ambiguous},{dev}\n",
            label = step.label.name(),
            a = format_real(step.a.to_f64_lossy()),
            b = format_real(step.b.to_f64_lossy()),
            eps = format_real(step.success_probability.to_f64_lossy()),
            delta = step.report.delta,
            chi = step.report.chi,
            e_chi = format_real(step.report.e_chi),
            ambiguous = step.report.ambiguous,
            dev = format_real(step.closed_form_deviation.to_f64_lossy()),
        ));
    }
    out
}

#[derive(Serialize)]
struct TraceHeaderRepr {
    n: usize,
    m: usize,
    theta: f64,
    r: usize,
    final_cos_zero: bool,
}

#[derive(Serialize)]
struct StepRepr<'a> {
    step_index: usize,
    label: &'static str,
    k: Option<usize>,
    a: f64,
    b: f64,
    success_probability: f64,
    report: crate::entanglement::ReportRepr<'a>,
    closed_form_deviation: f64,
}

#[derive(Serialize)]
struct TraceRepr<'a> {
    header: TraceHeaderRepr,
    steps: Vec<StepRepr<'a>>,
}

/// JSON rendering: a header object (n, m, theta, r, final_cos_zero) plus the
/// array of step records with embedded entanglement reports.
pub fn trace_to_json<T: Scalar>(trace: &DynamicsTrace<T>) -> String {
    let repr = TraceRepr {
        header: TraceHeaderRepr {
            n: trace.n(),
            m: trace.m(),
            theta: trace.params.theta().to_f64_lossy(),
            r: trace.params.r(),
            final_cos_zero: trace.final_cos_zero,
        },
        steps: trace
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| StepRepr {
                step_index: i,
                label: s.label.name(),
                k: s.label.k(),
                a: s.a.to_f64_lossy(),
                b: s.b.to_f64_lossy(),
                success_probability: s.success_probability.to_f64_lossy(),
                report: s.report.repr(),
                closed_form_deviation: s.closed_form_deviation.to_f64_lossy(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&repr).expect("trace serialization")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn marked(n: usize, xs: &[usize]) -> MarkedSet {
        MarkedSet::new(n, xs.iter().copied()).unwrap()
    }

    fn policy() -> RankPolicy {
        RankPolicy::default()
    }

    #[test]
    fn single_solution_trace_shape_and_measurements() {
        let trace: DynamicsTrace<f64> = run_dynamics(3, &marked(3, &[0]), &policy()).unwrap();
        assert_eq!(trace.steps.len(), 6);
        let labels: Vec<String> = trace.steps.iter().map(|s| s.label.to_string()).collect();
        assert_eq!(
            labels,
            vec!["initial", "hadamard", "oracle(1)", "diffusion(1)", "oracle(2)", "diffusion(2)"]
        );
        let deltas: Vec<usize> = trace.steps.iter().map(|s| s.report.delta).collect();
        assert_eq!(deltas, vec![3, 3, 1, 1, 1, 1]);
        let chis: Vec<usize> = trace.steps.iter().map(|s| s.report.chi).collect();
        assert_eq!(chis, vec![1, 1, 2, 2, 2, 2]);
        let eps = trace.final_step().success_probability;
        assert!((eps - 121.0 / 128.0).abs() < 1e-12);
        assert!(!trace.final_cos_zero);
        assert!(!trace.ambiguous());
        for s in &trace.steps {
            assert!(s.closed_form_deviation <= 1e-10);
        }
    }

    #[test]
    fn subcube_cos_zero_trace_ends_uniform_on_support() {
        let trace: DynamicsTrace<f64> =
            run_dynamics(4, &marked(4, &[0, 1, 2, 3]), &policy()).unwrap();
        assert_eq!(trace.params.r(), 1);
        assert!(trace.final_cos_zero);
        let last = trace.final_step();
        assert!((last.success_probability - 1.0).abs() < 1e-12);
        assert_eq!(last.report.delta, 4);
        assert_eq!(last.report.chi, 1);
        // amplitude 1/2 on each marked state
        assert!((last.b - 0.5).abs() < 1e-12);
        assert!(last.a.abs() < 1e-12);
    }

    #[test]
    fn two_value_normalization_holds_after_hadamard() {
        for m_count in [1usize, 2, 3, 5, 7] {
            let mk = marked(4, &(0..m_count).collect::<Vec<_>>());
            let trace: DynamicsTrace<f64> = run_dynamics(4, &mk, &policy()).unwrap();
            for step in &trace.steps[1..] {
                let unmarked = (16 - m_count) as f64;
                let residue = step.a * step.a * unmarked + step.b * step.b * m_count as f64 - 1.0;
                assert!(residue.abs() <= 1e-10, "{}", step.label);
            }
        }
    }

    #[test]
    fn success_probability_increases_across_diffusions() {
        for n in 3..=6 {
            for m_count in 1..(1usize << (n - 1)) {
                let mk = marked(n, &(0..m_count).collect::<Vec<_>>());
                let trace: DynamicsTrace<f64> = run_dynamics(n, &mk, &policy()).unwrap();
                let mut last = trace.steps[1].success_probability;
                for step in &trace.steps[2..] {
                    if matches!(step.label, StepLabel::Diffusion(_)) {
                        assert!(step.success_probability > last, "n={n} m={m_count}");
                        last = step.success_probability;
                    }
                }
            }
        }
    }

    #[test]
    fn reports_agree_between_operator_and_closed_form_states() {
        // Entanglement is representation-independent: re-deriving each
        // oracle/diffusion state from the closed form gives the same δ, χ.
        let mk = marked(4, &[1, 6, 11]);
        let trace: DynamicsTrace<f64> = run_dynamics(4, &mk, &policy()).unwrap();
        for (i, step) in trace.steps.iter().enumerate().skip(2) {
            let closed = match step.label {
                StepLabel::Oracle(k) => oracle_state(&trace.params, &mk, k).unwrap(),
                StepLabel::Diffusion(k) => iteration_state(&trace.params, &mk, k).unwrap(),
                _ => unreachable!(),
            };
            let report = analyze(&closed, &policy()).unwrap();
            assert_eq!(report.delta, step.report.delta, "step {i}");
            assert_eq!(report.chi, step.report.chi, "step {i}");
        }
    }

    #[test]
    fn rejects_out_of_range_marked_counts() {
        // M = 2^{n−1} leaves zero iterations and is rejected here even
        // though the state constructors accept it.
        assert!(matches!(
            run_dynamics::<f64>(3, &marked(3, &[0, 1, 2, 3]), &policy()),
            Err(Error::MarkedCountOutOfRange { .. })
        ));
        assert!(matches!(
            run_dynamics::<f64>(3, &marked(3, &[]), &policy()),
            Err(Error::MarkedCountOutOfRange { .. })
        ));
    }

    #[test]
    fn csv_has_one_row_per_step_and_stable_formatting() {
        let trace: DynamicsTrace<f64> = run_dynamics(3, &marked(3, &[0]), &policy()).unwrap();
        let csv = trace_to_csv(&trace);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7); // header + 6 steps
        assert!(lines[0].starts_with("step_index,label,k,"));
        assert!(lines[1].starts_with("0,initial,,"));
        let eps: f64 = lines[6].split(',').nth(5).unwrap().parse().unwrap();
        assert!((eps - 121.0 / 128.0).abs() < 1e-12);
        // identical rebuild → identical bytes
        let again: DynamicsTrace<f64> = run_dynamics(3, &marked(3, &[0]), &policy()).unwrap();
        assert_eq!(csv, trace_to_csv(&again));
    }

    #[test]
    fn json_mirror_carries_header_and_steps() {
        let trace: DynamicsTrace<f64> = run_dynamics(3, &marked(3, &[0]), &policy()).unwrap();
        let text = trace_to_json(&trace);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["header"]["n"], 3);
        assert_eq!(value["header"]["m"], 1);
        assert_eq!(value["header"]["r"], 2);
        assert_eq!(value["header"]["final_cos_zero"], false);
        assert_eq!(value["steps"].as_array().unwrap().len(), 6);
        assert_eq!(value["steps"][2]["label"], "oracle");
        assert_eq!(value["steps"][2]["k"], 1);
        assert_eq!(value["steps"][2]["report"]["delta"], 1);
    }
}
