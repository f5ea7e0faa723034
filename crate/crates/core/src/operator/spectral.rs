//! Largest singular value of small dense matrices.
//!
//! Power iteration on the Gram matrix `AᵀA`. Before the plain iteration the
//! normalised Gram matrix is squared repeatedly, so near-degenerate leading
//! eigenvalues cost a few matrix products instead of millions of steps; the
//! final vector is then polished until its eigen-residual is below the
//! relative tolerance.

use crate::error::{Error, Result};

pub const RELATIVE_TOLERANCE: f64 = 1e-12;
pub const ITERATION_CAP: usize = 100_000;

const MAX_SQUARINGS: usize = 64;

/// Largest singular value of the row-major `rows × cols` matrix `data`.
pub fn largest_singular_value(rows: usize, cols: usize, data: &[f64]) -> Result<f64> {
    debug_assert_eq!(data.len(), rows * cols);
    let live_rows: Vec<usize> = (0..rows)
        .filter(|&r| data[r * cols..(r + 1) * cols].iter().any(|v| *v != 0.0))
        .collect();
    let live_cols: Vec<usize> = (0..cols)
        .filter(|&c| (0..rows).any(|r| data[r * cols + c] != 0.0))
        .collect();
    if live_rows.is_empty() {
        return Ok(0.0);
    }
    let (r, c) = (live_rows.len(), live_cols.len());
    let mut a = Vec::with_capacity(r * c);
    for &i in &live_rows {
        for &j in &live_cols {
            a.push(data[i * cols + j]);
        }
    }
    compressed_norm(r, c, &a)
}

/// Norm of a matrix without zero rows or columns.
fn compressed_norm(rows: usize, cols: usize, a: &[f64]) -> Result<f64> {
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    if !scale.is_finite() {
        return Ok(f64::INFINITY);
    }
    // At most one nonzero per row and per column: images of distinct basis
    // vectors are orthogonal and the norm is the largest entry.
    let row_single = (0..rows).all(|i| a[i * cols..(i + 1) * cols].iter().filter(|v| **v != 0.0).count() <= 1);
    let col_single = (0..cols).all(|j| (0..rows).filter(|&i| a[i * cols + j] != 0.0).count() <= 1);
    if row_single && col_single {
        return Ok(scale);
    }

    let scaled: Vec<f64> = a.iter().map(|v| v / scale).collect();
    // Gram matrix on the smaller side.
    let (k, gram) = if cols <= rows {
        let mut g = vec![0.0; cols * cols];
        for i in 0..rows {
            let row = &scaled[i * cols..(i + 1) * cols];
            for p in 0..cols {
                if row[p] == 0.0 {
                    continue;
                }
                for q in 0..cols {
                    g[p * cols + q] += row[p] * row[q];
                }
            }
        }
        (cols, g)
    } else {
        let mut g = vec![0.0; rows * rows];
        for p in 0..rows {
            for q in 0..rows {
                let mut s = 0.0;
                for j in 0..cols {
                    s += scaled[p * cols + j] * scaled[q * cols + j];
                }
                g[p * rows + q] = s;
            }
        }
        (rows, g)
    };
    let lambda = largest_eigenvalue_psd(k, &gram)?;
    Ok(lambda.max(0.0).sqrt() * scale)
}

/// Largest eigenvalue of a symmetric positive semidefinite `k × k` matrix.
pub fn largest_eigenvalue_psd(k: usize, g: &[f64]) -> Result<f64> {
    let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if gmax == 0.0 {
        return Ok(0.0);
    }
    if k == 1 {
        return Ok(g[0]);
    }

    let mut h: Vec<f64> = g.iter().map(|v| v / gmax).collect();
    let mut next = vec![0.0; k * k];
    for _ in 0..MAX_SQUARINGS {
        matmul_sym(k, &h, &mut next);
        let m = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            break;
        }
        next.iter_mut().for_each(|v| *v /= m);
        let diff = h
            .iter()
            .zip(&next)
            .fold(0.0f64, |d, (a, b)| d.max((a - b).abs()));
        std::mem::swap(&mut h, &mut next);
        if diff <= 1e-15 {
            break;
        }
    }

    // Start from the dominant column of the converged power.
    let mut best = 0;
    let mut best_norm = -1.0;
    for c in 0..k {
        let n: f64 = (0..k).map(|r| h[r * k + c] * h[r * k + c]).sum();
        if n > best_norm {
            best_norm = n;
            best = c;
        }
    }
    let mut v: Vec<f64> = (0..k).map(|r| h[r * k + best]).collect();
    if !normalize(&mut v) {
        v = (0..k).map(|i| 1.0 + 0.01 * (i as f64).sin()).collect();
        normalize(&mut v);
    }

    let tol = RELATIVE_TOLERANCE + 4.0 * (k as f64) * f64::EPSILON;
    let mut w = vec![0.0; k];
    for _ in 0..ITERATION_CAP {
        for r in 0..k {
            w[r] = (0..k).map(|c| g[r * k + c] * v[c]).sum();
        }
        let rho: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let residual = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rho * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if rho <= 0.0 && residual == 0.0 {
            return Ok(0.0);
        }
        if residual <= tol * rho.abs() {
            return Ok(rho);
        }
        v.copy_from_slice(&w);
        if !normalize(&mut v) {
            return Ok(0.0);
        }
    }
    Err(Error::NonConvergence { iterations: ITERATION_CAP })
}

fn matmul_sym(k: usize, a: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for i in 0..k {
        for p in 0..k {
            let aip = a[i * k + p];
            if aip == 0.0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] += aip * a[p * k + j];
            }
        }
    }
}

fn normalize(v: &mut [f64]) -> bool {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n == 0.0 || !n.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= n);
    true
}
