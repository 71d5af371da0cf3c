//! Per-step conformance of a trace against the structural classification of
//! the entanglement dynamics by the shape of M = 2^q(2p+1).
//!
//! Rows: M = 1; odd M ≥ 3; M = 2^q; even non-power M below 2^{n/2}. Even
//! non-power counts at or above 2^{n/2} fall outside the classification and
//! are labeled out-of-table rather than checked. Power rows split into
//! sub-rows by k = δ(|ψ₁ᴼ⟩), the separable degree after the first Oracle
//! call. Allowed (δ, χ) per cell are inclusive ranges built from
//!   A  = [2, min(M+1, 2^⌊n/2⌋)]          A′ = [2, min(M, 2^⌊n/2⌋)]
//!   B  = [2, min(M/2^{k−1}+1, 2^⌊(n−k+1)/2⌋)]
//!   B′ = [2, min(M/2^{k−1}, 2^⌊(n−k+1)/2⌋)]
//! with the final column selected by whether cos[(2R+1)θ/2] vanishes.

use super::{DynamicsTrace, StepLabel, StepRecord};
use crate::scalar::Scalar;

/// Shape class of the marked count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableRow {
    /// M = 1.
    Single,
    /// M = 2p + 1 with p ≥ 1.
    Odd,
    /// M = 2^q with q ≥ 1.
    PowerOfTwo,
    /// M = 2^q(2p+1) with p, q ≥ 1 and M < 2^{n/2}.
    PowerTimesOdd,
    /// M = 2^q(2p+1) with p, q ≥ 1 and M ≥ 2^{n/2}: not classified.
    OutOfTable,
}

impl std::fmt::Display for TableRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            TableRow::Single => "1",
            TableRow::Odd => "2p+1",
            TableRow::PowerOfTwo => "2^q",
            TableRow::PowerTimesOdd => "2^q(2p+1)",
            TableRow::OutOfTable => "out-of-table",
        };
        write!(f, "{label}")
    }
}

/// One step compared against its predicted cell.
#[derive(Clone, Debug)]
pub struct CellCheck {
    pub step_index: usize,
    pub label: StepLabel,
    pub delta: usize,
    pub chi: usize,
    /// Inclusive allowed range for δ.
    pub delta_allowed: (usize, usize),
    /// Inclusive allowed range for χ.
    pub chi_allowed: (usize, usize),
    pub pass: bool,
}

/// Row classification of a whole trace.
#[derive(Clone, Debug)]
pub struct TraceClassification {
    pub row: TableRow,
    /// δ(|ψ₁ᴼ⟩) for the power rows, which select a sub-row by it.
    pub sub_k: Option<usize>,
    pub final_cos_zero: bool,
    pub checks: Vec<CellCheck>,
    pub conforms: bool,
    pub out_of_table: bool,
}

#[derive(Clone, Copy)]
struct Cell {
    delta: (usize, usize),
    chi: (usize, usize),
}

fn chi_cap(n_qubits: usize) -> usize {
    1usize << (n_qubits / 2)
}

/// Classifies a completed trace into its row and checks every step's (δ, χ)
/// against the predicted cell. Out-of-table traces only get the trivial
/// initial/hadamard checks.
pub fn classify_trace<T: Scalar>(trace: &DynamicsTrace<T>) -> TraceClassification {
    let n = trace.n();
    let m = trace.m();
    let (q, p) = trace
        .marked
        .two_adic_split()
        .expect("dynamics runs have at least one marked state");
    let row = if m == 1 {
        TableRow::Single
    } else if q == 0 {
        TableRow::Odd
    } else if p == 0 {
        TableRow::PowerOfTwo
    } else if m * m < (1usize << n) {
        TableRow::PowerTimesOdd
    } else {
        TableRow::OutOfTable
    };

    let sub_k = match row {
        TableRow::PowerOfTwo | TableRow::PowerTimesOdd => Some(trace.steps[2].report.delta),
        _ => None,
    };

    let mut checks = Vec::with_capacity(trace.steps.len());
    let trivial = Cell {
        delta: (n, n),
        chi: (1, 1),
    };
    for (i, step) in trace.steps.iter().take(2).enumerate() {
        checks.push(check_step(i, step, trivial));
    }

    let out_of_table = row == TableRow::OutOfTable;
    if !out_of_table {
        let q = q as usize;
        let a_hi = (m + 1).min(chi_cap(n));
        let a_prime_hi = m.min(chi_cap(n));
        let cells: Option<(Cell, Cell)> = match (row, sub_k) {
            (TableRow::Single, _) => Some((
                Cell { delta: (1, 1), chi: (2, 2) },
                if trace.final_cos_zero {
                    trivial
                } else {
                    Cell { delta: (1, 1), chi: (2, 2) }
                },
            )),
            (TableRow::Odd, _) => Some((
                Cell { delta: (1, 1), chi: (2, a_hi) },
                if trace.final_cos_zero {
                    Cell { delta: (1, n - 1), chi: (2, a_prime_hi) }
                } else {
                    Cell { delta: (1, 1), chi: (2, a_hi) }
                },
            )),
            (TableRow::PowerOfTwo, Some(1)) | (TableRow::PowerTimesOdd, Some(1)) => Some((
                Cell { delta: (1, 1), chi: (2, a_hi) },
                if trace.final_cos_zero {
                    Cell { delta: (1, n - 1), chi: (2, a_prime_hi) }
                } else {
                    Cell { delta: (1, 1), chi: (2, a_hi) }
                },
            )),
            (TableRow::PowerOfTwo, Some(k)) if k == q + 1 => Some((
                Cell { delta: (k, k), chi: (2, 2) },
                if trace.final_cos_zero {
                    trivial
                } else {
                    Cell { delta: (k, k), chi: (2, 2) }
                },
            )),
            (TableRow::PowerOfTwo, Some(k)) if k >= 2 && k <= q => Some(b_cells(
                n,
                m,
                k,
                trace.final_cos_zero,
            )),
            (TableRow::PowerTimesOdd, Some(k)) if k >= 2 && k <= q + 1 => Some(b_cells(
                n,
                m,
                k,
                trace.final_cos_zero,
            )),
            _ => None,
        };

        match cells {
            Some((intermediate, final_cell)) => {
                let last = trace.steps.len() - 1;
                for (i, step) in trace.steps.iter().enumerate().skip(2) {
                    let cell = if i == last { final_cell } else { intermediate };
                    checks.push(check_step(i, step, cell));
                }
            }
            None => {
                // δ(|ψ₁ᴼ⟩) outside every sub-row: flag the first oracle step.
                let step = &trace.steps[2];
                checks.push(CellCheck {
                    step_index: 2,
                    label: step.label,
                    delta: step.report.delta,
                    chi: step.report.chi,
                    delta_allowed: (1, q as usize + 1),
                    chi_allowed: (1, chi_cap(n)),
                    pass: false,
                });
            }
        }
    }

    let conforms = checks.iter().all(|c| c.pass);
    TraceClassification {
        row,
        sub_k,
        final_cos_zero: trace.final_cos_zero,
        checks,
        conforms,
        out_of_table,
    }
}

fn b_cells(n: usize, m: usize, k: usize, final_cos_zero: bool) -> (Cell, Cell) {
    let residue = m >> (k - 1);
    let b_hi = (residue + 1).min(chi_cap(n - k + 1));
    let b_prime_hi = residue.min(chi_cap(n - k + 1));
    let intermediate = Cell {
        delta: (k, k),
        chi: (2, b_hi),
    };
    let final_cell = if final_cos_zero {
        Cell {
            delta: (k, n - 1),
            chi: (2, b_prime_hi),
        }
    } else {
        intermediate
    };
    (intermediate, final_cell)
}

fn check_step<T: Scalar>(index: usize, step: &StepRecord<T>, cell: Cell) -> CellCheck {
    let delta = step.report.delta;
    let chi = step.report.chi;
    let pass = delta >= cell.delta.0
        && delta <= cell.delta.1
        && chi >= cell.chi.0
        && chi <= cell.chi.1;
    CellCheck {
        step_index: index,
        label: step.label,
        delta,
        chi,
        delta_allowed: cell.delta,
        chi_allowed: cell.chi,
        pass,
    }
}
