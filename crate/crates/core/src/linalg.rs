//! Dense kernels for the top eigenvalue of small nonnegative matrices.
//!
//! Matrices are row-major `n × n` slices of `f64`.

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_POWER_ITERATIONS: usize = 200_000;

/// Raw output of an eigen-solve.
#[derive(Debug, Clone)]
pub struct TopEigen {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `‖Ax − λx‖∞ / ‖x‖∞`.
    pub residual: f64,
    pub iterations: usize,
}

fn mat_vec(a: &[f64], n: usize, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = a[i * n..(i + 1) * n]
            .iter()
            .zip(x)
            .map(|(aij, xj)| aij * xj)
            .sum();
    }
}

fn inf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn residual(y: &[f64], x: &[f64], value: f64) -> f64 {
    let r = y
        .iter()
        .zip(x)
        .fold(0.0f64, |m, (yi, xi)| m.max((yi - value * xi).abs()));
    r / inf_norm(x)
}

fn normalize_l2(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

/// Perron root of a symmetric nonnegative matrix by power iteration on
/// `A + I`, starting from the all-ones vector. Each sweep evaluates the
/// Rayleigh quotient and stops once `residual ≤ tol · max(1, λ)`.
pub fn symmetric_perron(a: &[f64], n: usize, tol: f64, max_iter: usize) -> Result<TopEigen> {
    check_tol(tol)?;
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut last = f64::INFINITY;
    for it in 1..=max_iter {
        mat_vec(a, n, &x, &mut y);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let value = x.iter().zip(&y).map(|(xi, yi)| xi * yi).sum::<f64>() / xx;
        let res = residual(&y, &x, value);
        last = res;
        if res <= tol * value.abs().max(1.0) {
            normalize_l2(&mut x);
            return Ok(TopEigen {
                value,
                vector: x,
                residual: res,
                iterations: it,
            });
        }
        let scale = inf_norm(&y) + inf_norm(&x);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (*xi + yi) / scale;
        }
    }
    Err(Error::IterationCap {
        iterations: max_iter,
        tol,
        residual: last,
    })
}

/// Perron root of a (not necessarily symmetric) irreducible nonnegative
/// matrix by power iteration on `A + I`. The iterate's Collatz–Wielandt
/// ratios `min (Ax)ᵢ/xᵢ ≤ ρ ≤ max (Ax)ᵢ/xᵢ` bracket the root; iteration stops
/// when the bracket is narrower than `tol · max(1, ρ)`.
pub fn nonnegative_perron(a: &[f64], n: usize, tol: f64, max_iter: usize) -> Result<TopEigen> {
    check_tol(tol)?;
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut last = f64::INFINITY;
    for it in 1..=max_iter {
        mat_vec(a, n, &x, &mut y);
        let (lo, hi) =
            x.iter()
                .zip(&y)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (xi, yi)| {
                    let r = yi / xi;
                    (lo.min(r), hi.max(r))
                });
        let value = 0.5 * (lo + hi);
        last = hi - lo;
        if hi - lo <= tol * value.abs().max(1.0) {
            let res = residual(&y, &x, value);
            normalize_l2(&mut x);
            return Ok(TopEigen {
                value,
                vector: x,
                residual: res,
                iterations: it,
            });
        }
        let scale = inf_norm(&y) + inf_norm(&x);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (*xi + yi) / scale;
        }
    }
    Err(Error::IterationCap {
        iterations: max_iter,
        tol,
        residual: last,
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

/// All eigenpairs of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues (unsorted) and the row-major matrix whose columns
/// are the eigenvectors.
pub fn jacobi_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    const MAX_SWEEPS: usize = 100;
    let mut a = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob: f64 = a.iter().map(|x| x * x).sum();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum();
        if off <= 1e-26 * frob || off == 0.0 {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::IterationCap {
        iterations: MAX_SWEEPS,
        tol: 1e-13,
        residual: f64::NAN,
    })
}

/// Largest eigenpair of a symmetric matrix via [`jacobi_eigen`], with the
/// residual measured on the original matrix.
pub fn symmetric_top_dense(a: &[f64], n: usize) -> Result<TopEigen> {
    let (values, vectors) = jacobi_eigen(a, n)?;
    let (idx, &value) = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .ok_or_else(|| Error::param("empty matrix"))?;
    let mut vector: Vec<f64> = (0..n).map(|i| vectors[i * n + idx]).collect();
    if vector.iter().sum::<f64>() < 0.0 {
        vector.iter_mut().for_each(|x| *x = -*x);
    }
    let mut y = vec![0.0; n];
    mat_vec(a, n, &vector, &mut y);
    let res = residual(&y, &vector, value);
    Ok(TopEigen {
        value,
        vector,
        residual: res,
        iterations: 0,
    })
}
