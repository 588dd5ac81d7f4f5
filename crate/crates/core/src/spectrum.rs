//! Distance matrices, the Wiener index and the distance spectral radius.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::Graph;
use crate::linalg::{self, TopEigen, DEFAULT_TOL, MAX_POWER_ITERATIONS};

/// Largest order accepted by the dense cross-check.
pub const DENSE_MAX_ORDER: usize = 512;

/// Exact hop-count distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn diameter(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&d| f64::from(d)).collect()
    }
}

fn bfs_row(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.order()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    distance_matrix_with(g, Execution::default())
}

/// All-pairs BFS, one source per task.
pub fn distance_matrix_with(g: &Graph, exec: Execution) -> Result<DistanceMatrix> {
    let n = g.order();
    let rows = exec::map_indexed(exec, n, |s| bfs_row(g, s));
    let mut entries = Vec::with_capacity(n * n);
    for (u, row) in rows.into_iter().enumerate() {
        if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected { u, v });
        }
        entries.extend(row);
    }
    Ok(DistanceMatrix { n, entries })
}

/// `W(G) = Σ_{i<j} d_ij`.
pub fn wiener_index(d: &DistanceMatrix) -> u64 {
    let total: u64 = d.entries.iter().map(|&x| u64::from(x)).sum();
    total / 2
}

/// The Rayleigh-quotient lower bound `2W/n` on the spectral radius, kept as
/// an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WienerBound {
    pub numerator: u64,
    pub denominator: u64,
}

impl WienerBound {
    pub fn of(d: &DistanceMatrix) -> Self {
        WienerBound {
            numerator: 2 * wiener_index(d),
            denominator: d.order() as u64,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PowerIteration,
    Dense,
}

/// A computed distance spectral radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub value: f64,
    /// `‖Dx − value·x‖∞ / ‖x‖∞` at the returned vector.
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

impl SpectralEstimate {
    fn from_eigen(e: &TopEigen, method: Method) -> Self {
        SpectralEstimate {
            value: e.value,
            residual: e.residual,
            iterations: e.iterations,
            method,
        }
    }
}

/// Distance spectral radius by shifted power iteration.
///
/// `tol` bounds the residual relative to `max(1, μ)`; [`DEFAULT_TOL`] is the
/// usual choice.
pub fn spectral_radius(d: &DistanceMatrix, tol: f64) -> Result<SpectralEstimate> {
    perron_vector(d, tol).map(|(e, _)| e)
}

/// Like [`spectral_radius`], also returning the unit Perron vector.
pub fn perron_vector(d: &DistanceMatrix, tol: f64) -> Result<(SpectralEstimate, Vec<f64>)> {
    if d.order() == 0 {
        return Err(Error::OrderTooSmall {
            order: 0,
            needed: 1,
        });
    }
    let top = linalg::symmetric_perron(&d.to_f64(), d.order(), tol, MAX_POWER_ITERATIONS)?;
    Ok((
        SpectralEstimate::from_eigen(&top, Method::PowerIteration),
        top.vector,
    ))
}

/// Distance spectral radius of a graph at the default tolerance.
pub fn mu(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(
        &distance_matrix_with(g, Execution::Sequential)?,
        DEFAULT_TOL,
    )?
    .value)
}

/// Largest eigenvalue from a full Jacobi eigensolve.
pub fn spectral_radius_dense(d: &DistanceMatrix) -> Result<SpectralEstimate> {
    let n = d.order();
    if n > DENSE_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "order",
            size: n,
            cap: DENSE_MAX_ORDER,
        });
    }
    if n == 0 {
        return Err(Error::OrderTooSmall {
            order: 0,
            needed: 1,
        });
    }
    let top = linalg::symmetric_top_dense(&d.to_f64(), n)?;
    Ok(SpectralEstimate::from_eigen(&top, Method::Dense))
}

/// Distance spectral radius of a graph from the dense solver.
pub fn mu_dense(g: &Graph) -> Result<f64> {
    Ok(spectral_radius_dense(&distance_matrix_with(g, Execution::Sequential)?)?.value)
}
