//! In-crate singular value decomposition.
//!
//! Householder QR row reduction followed by one-sided Jacobi
//! orthogonalization on the thin side. The reshaped amplitude matrices this
//! crate ranks are exactly rank-deficient with highly repetitive entries, a
//! regime where iterative bidiagonal solvers can fail to converge; Jacobi
//! rotations converge unconditionally and resolve the small singular values
//! the rank thresholds inspect with high relative accuracy.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 64;

/// Descending singular values of a `rows × cols` row-major matrix.
pub(crate) fn singular_values<T: Scalar>(rows: usize, cols: usize, data: &[T]) -> Result<Vec<T>> {
    let d = decompose(rows, cols, data, false)?;
    Ok(d.values)
}

/// Leading singular triplet `(σ₁, u₁, v₁)` with `u₁` of length `rows` and
/// `v₁` of length `cols`; the matrix is `σ₁·u₁·v₁ᵀ + …`.
pub(crate) fn leading_triplet<T: Scalar>(
    rows: usize,
    cols: usize,
    data: &[T],
) -> Result<(T, Vec<T>, Vec<T>)> {
    let d = decompose(rows, cols, data, true)?;
    let u = d.u.expect("vectors requested");
    let v = d.v.expect("vectors requested");
    Ok((d.values[0], u.into_iter().next().unwrap(), v.into_iter().next().unwrap()))
}

struct Decomp<T> {
    values: Vec<T>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
}

fn transpose<T: Scalar>(rows: usize, cols: usize, data: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); data.len()];
    for i in 0..rows {
        for j in 0..cols {
            out[j * rows + i] = data[i * cols + j];
        }
    }
    out
}

fn decompose<T: Scalar>(
    rows: usize,
    cols: usize,
    data: &[T],
    want_vectors: bool,
) -> Result<Decomp<T>> {
    assert_eq!(data.len(), rows * cols, "matrix shape mismatch");
    assert!(rows > 0 && cols > 0, "empty matrix");
    if cols > rows {
        let t = transpose(rows, cols, data);
        let d = decompose(cols, rows, &t, want_vectors)?;
        return Ok(Decomp {
            values: d.values,
            u: d.v,
            v: d.u,
        });
    }

    // Column-major working copy; rows ≥ cols from here on.
    let mut acols: Vec<Vec<T>> = (0..cols)
        .map(|j| (0..rows).map(|i| data[i * cols + j]).collect())
        .collect();

    let reflectors = if rows > cols {
        let r = householder_reduce(rows, &mut acols);
        for col in &mut acols {
            col.truncate(cols);
        }
        Some(r)
    } else {
        None
    };

    // Accumulated right rotations (columns of V), identity to start.
    let mut vcols: Option<Vec<Vec<T>>> = want_vectors.then(|| {
        (0..cols)
            .map(|j| {
                let mut e = vec![T::zero(); cols];
                e[j] = T::one();
                e
            })
            .collect()
    });

    jacobi_orthogonalize(&mut acols, vcols.as_mut())?;

    // Column norms are the singular values; sort descending (stable on ties).
    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<T> = acols
        .iter()
        .map(|c| c.iter().fold(T::zero(), |s, &x| s + x * x).sqrt())
        .collect();
    order.sort_by(|&a, &b| {
        norms[b]
            .partial_cmp(&norms[a])
            .expect("finite singular values")
            .then(a.cmp(&b))
    });
    let values: Vec<T> = order.iter().map(|&j| norms[j]).collect();

    let (u, v) = if want_vectors {
        let mut us = Vec::with_capacity(cols);
        for &j in &order {
            let mut u = if norms[j] > T::zero() {
                acols[j].iter().map(|&x| x / norms[j]).collect()
            } else {
                vec![T::zero(); cols]
            };
            if let Some(refl) = &reflectors {
                u.resize(rows, T::zero());
                apply_q(refl, &mut u);
            }
            us.push(u);
        }
        let vs = vcols
            .expect("accumulated")
            .into_iter()
            .collect::<Vec<_>>();
        let vs = order.iter().map(|&j| vs[j].clone()).collect();
        (Some(us), Some(vs))
    } else {
        (None, None)
    };

    Ok(Decomp { values, u, v })
}

/// One-sided Jacobi: rotate column pairs until all are mutually orthogonal.
fn jacobi_orthogonalize<T: Scalar>(
    acols: &mut [Vec<T>],
    mut vcols: Option<&mut Vec<Vec<T>>>,
) -> Result<()> {
    let c = acols.len();
    if c < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    // Columns whose norm sits at the rounding-noise floor of the whole
    // matrix carry no directional information; rotating against them would
    // cycle forever. The Frobenius norm is rotation-invariant, so the
    // cutoff is computed once.
    let frob2 = acols.iter().map(|col| dot(col, col)).fold(T::zero(), |s, x| s + x);
    let tiny = frob2 * eps * eps * T::from_f64_const(16.0);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c - 1 {
            for q in p + 1..c {
                let alpha = dot(&acols[p], &acols[p]);
                let beta = dot(&acols[q], &acols[q]);
                if alpha <= tiny || beta <= tiny {
                    continue;
                }
                let gamma = dot(&acols[p], &acols[q]);
                // |γ| ≤ √(αβ) by Cauchy–Schwarz, so γ ≠ 0 implies αβ > 0.
                if gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let root = (T::one() + zeta * zeta).sqrt();
                let t = if zeta >= T::zero() {
                    (zeta + root).recip()
                } else {
                    -((root - zeta).recip())
                };
                let cs = (T::one() + t * t).sqrt().recip();
                let sn = cs * t;
                rotate_pair(acols, p, q, cs, sn);
                if let Some(v) = vcols.as_deref_mut() {
                    rotate_pair(v, p, q, cs, sn);
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    Err(Error::SvdFailure)
}

fn rotate_pair<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, cs: T, sn: T) {
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (xp, xq) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *xp;
        let b = *xq;
        *xp = cs * a - sn * b;
        *xq = sn * a + cs * b;
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y)
}

/// Reflector for the QR reduction, with its v·v precomputed.
struct Reflector<T> {
    start: usize,
    v: Vec<T>,
    vtv: T,
}

/// Householder QR: reduces `rows × c` columns to upper-triangular form so
/// the Jacobi stage only sees a `c × c` block; returns the reflectors for
/// reconstructing left singular vectors.
fn householder_reduce<T: Scalar>(rows: usize, acols: &mut [Vec<T>]) -> Vec<Reflector<T>> {
    let c = acols.len();
    let mut reflectors = Vec::with_capacity(c);
    for k in 0..c {
        let norm = acols[k][k..]
            .iter()
            .fold(T::zero(), |s, &x| s + x * x)
            .sqrt();
        let mut v = vec![T::zero(); rows];
        if norm > T::zero() {
            let head = acols[k][k];
            let sign = if head >= T::zero() { T::one() } else { -T::one() };
            v[k] = head + sign * norm;
            v[(k + 1)..rows].copy_from_slice(&acols[k][(k + 1)..rows]);
        }
        let vtv = dot(&v[k..], &v[k..]);
        if vtv > T::zero() {
            let two = T::from_f64_const(2.0);
            for col in acols.iter_mut().skip(k) {
                let s = two * dot(&v[k..], &col[k..]) / vtv;
                for i in k..rows {
                    col[i] = col[i] - s * v[i];
                }
            }
            // the reflector annihilates these entries by construction
            for i in k + 1..rows {
                acols[k][i] = T::zero();
            }
        }
        reflectors.push(Reflector { start: k, v, vtv });
    }
    reflectors
}

/// Applies Q = H₀H₁…H_{c−1} to a full-length vector.
fn apply_q<T: Scalar>(reflectors: &[Reflector<T>], y: &mut [T]) {
    let two = T::from_f64_const(2.0);
    for r in reflectors.iter().rev() {
        if r.vtv > T::zero() {
            let s = two * dot(&r.v[r.start..], &y[r.start..]) / r.vtv;
            for i in r.start..y.len() {
                y[i] = y[i] - s * r.v[i];
            }
        }
    }
}
