//! Quotient matrices of vertex partitions, the closed-form characteristic
//! polynomials of the two three-block families, and their largest roots.
//!
//! Polynomial coefficients are exact `i128`; floating point only enters in
//! root extraction and eigenvalue iteration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, DEFAULT_TOL, MAX_POWER_ITERATIONS};
use crate::params::OddFactorParams;
use crate::spectrum::DistanceMatrix;

/// Ordered blocks of vertex labels covering `0..n` exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Partition(format!("block {i} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::Partition(format!(
                        "vertex {v} out of range for order {n}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Partition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Partition(format!("vertex {v} is not covered")));
        }
        Ok(VertexPartition { blocks })
    }

    /// Consecutive label ranges of the given sizes, matching the family
    /// labeling convention.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut blocks = Vec::with_capacity(sizes.len());
        for &size in sizes {
            blocks.push((start..start + size).collect());
            start += size;
        }
        Self::new(blocks, start)
    }

    pub fn all_in_one(n: usize) -> Result<Self> {
        Self::from_sizes(&[n])
    }

    /// Parses a partition file: one block per line, labels separated by
    /// single spaces.
    pub fn from_text(text: &str, n: usize) -> Result<Self> {
        let blocks = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>().map_err(|_| {
                            Error::Partition(format!("line {}: bad label {tok:?}", i + 1))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks, n)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Block-average row sums of a matrix with respect to a partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub size: usize,
    pub block_sizes: Vec<usize>,
    /// Sum over the rows of block `i` of each row's sum inside block `j`.
    pub totals: Vec<u64>,
    pub equitable: bool,
}

impl QuotientMatrix {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.totals[i * self.size + j] as f64 / self.block_sizes[i] as f64
    }

    pub fn entries(&self) -> Vec<f64> {
        (0..self.size * self.size)
            .map(|idx| self.entry(idx / self.size, idx % self.size))
            .collect()
    }

    /// Integer entries, available whenever every block average is integral
    /// (always the case for equitable partitions of integer matrices).
    pub fn exact_entries(&self) -> Option<Vec<i128>> {
        (0..self.size * self.size)
            .map(|idx| {
                let size = self.block_sizes[idx / self.size] as u64;
                let total = self.totals[idx];
                total.is_multiple_of(size).then(|| i128::from(total / size))
            })
            .collect()
    }

    /// The exact 3×3 matrix, if this quotient has three blocks and integer
    /// entries.
    pub fn exact_3x3(&self) -> Option<[[i128; 3]; 3]> {
        if self.size != 3 {
            return None;
        }
        let e = self.exact_entries()?;
        Some([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }
}

/// Quotient of a distance matrix; equitability is decided by exact integer
/// comparison of block row sums.
pub fn quotient_matrix(d: &DistanceMatrix, pi: &VertexPartition) -> Result<QuotientMatrix> {
    let n = d.order();
    let covered: usize = pi.blocks.iter().map(Vec::len).sum();
    if covered != n || pi.blocks.iter().flatten().any(|&v| v >= n) {
        return Err(Error::Partition(format!("partition does not cover 0..{n}")));
    }
    let r = pi.len();
    let mut totals = vec![0u64; r * r];
    let mut equitable = true;
    for (i, bi) in pi.blocks.iter().enumerate() {
        for (j, bj) in pi.blocks.iter().enumerate() {
            let mut first = None;
            for &u in bi {
                let row = d.row(u);
                let sum: u64 = bj.iter().map(|&v| u64::from(row[v])).sum();
                totals[i * r + j] += sum;
                match first {
                    None => first = Some(sum),
                    Some(f) if f != sum => equitable = false,
                    _ => {}
                }
            }
        }
    }
    Ok(QuotientMatrix {
        size: r,
        block_sizes: pi.blocks.iter().map(Vec::len).collect(),
        totals,
        equitable,
    })
}

/// Perron root of a quotient matrix by shifted power iteration.
pub fn quotient_largest_eigenvalue(q: &QuotientMatrix) -> Result<f64> {
    let entries = q.entries();
    if entries.iter().any(|&x| x < 0.0) {
        return Err(Error::param("quotient matrix has negative entries"));
    }
    if q.size == 1 {
        return Ok(entries[0]);
    }
    Ok(
        linalg::nonnegative_perron(&entries, q.size, DEFAULT_TOL * 1e-2, MAX_POWER_ITERATIONS)?
            .value,
    )
}

/// `c[0]·x³ + c[1]·x² + c[2]·x + c[3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cubic(pub [i128; 4]);

/// `c[0]·x² + c[1]·x + c[2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quadratic(pub [i128; 3]);

impl Cubic {
    /// `det(xI − M)` via trace, principal 2×2 minors and determinant.
    pub fn characteristic(m: &[[i128; 3]; 3]) -> Cubic {
        let trace = m[0][0] + m[1][1] + m[2][2];
        let minor = |i: usize, j: usize| m[i][i] * m[j][j] - m[i][j] * m[j][i];
        let minors = minor(0, 1) + minor(0, 2) + minor(1, 2);
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        Cubic([1, -trace, minors, -det])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_exact(&self, x: i128) -> i128 {
        self.0.iter().fold(0, |acc, &c| acc * x + c)
    }

    /// `Σ |cᵢ|·|x|ⁱ`, the scale against which a value of the cubic at `x`
    /// should be judged.
    pub fn magnitude(&self, x: f64) -> f64 {
        self.0
            .iter()
            .fold(0.0, |acc, &c| acc * x.abs() + (c as f64).abs())
    }

    /// `self − other`, returned as its quadratic part when the leading
    /// terms cancel.
    pub fn difference(&self, other: &Cubic) -> Cubic {
        let mut out = [0; 4];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *o = a - b;
        }
        Cubic(out)
    }
}

impl Quadratic {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_exact(&self, x: i128) -> i128 {
        self.0.iter().fold(0, |acc, &c| acc * x + c)
    }

    /// `scale · self` lifted to a cubic with zero leading coefficient.
    pub fn scaled_as_cubic(&self, scale: i128) -> Cubic {
        Cubic([0, scale * self.0[0], scale * self.0[1], scale * self.0[2]])
    }

    /// Symmetry axis `−a₁ / (2a₂)` as an unreduced fraction with positive
    /// denominator.
    pub fn axis(&self) -> (i128, i128) {
        let (num, den) = (-self.0[1], 2 * self.0[0]);
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    }
}

fn ints(p: &OddFactorParams) -> (i128, i128, i128) {
    (p.b as i128, p.k as i128, p.n as i128)
}

/// Quotient of the distance matrix of `K_s ∨ (K_{n-(b+1)s+bk-1} ∪ (bs-bk+1)K_1)`
/// over its three natural blocks, written out entrywise.
pub fn split_join_quotient(p: &OddFactorParams, s: usize) -> Result<[[i128; 3]; 3]> {
    p.check_split(s)?;
    let (b, k, n) = ints(p);
    let s = s as i128;
    let big = n - (b + 1) * s + b * k - 1;
    let singles = b * s - b * k + 1;
    Ok([
        [s - 1, big, singles],
        [s, big - 1, 2 * singles],
        [s, 2 * big, 2 * singles - 2],
    ])
}

/// Quotient of the distance matrix of `K_{k+1} ∨ (K_{n-k-b-2} ∪ (b+1)K_1)`.
pub fn extremal_quotient(p: &OddFactorParams) -> Result<[[i128; 3]; 3]> {
    p.extremal_clique_order()?;
    let (b, k, n) = ints(p);
    Ok([
        [k, n - k - b - 2, b + 1],
        [k + 1, n - k - b - 3, 2 * b + 2],
        [k + 1, 2 * n - 2 * k - 2 * b - 4, 2 * b],
    ])
}

/// Closed-form characteristic polynomial of the split-join quotient.
pub fn char_poly_b(p: &OddFactorParams, s: usize) -> Result<Cubic> {
    p.check_split(s)?;
    let (b, k, n) = ints(p);
    let s = s as i128;
    let c2 = -(n + b * s - b * k - 3);
    let c1 = (2 * b * k - 2 * b * s - 5) * n + (2 * b * b + 3 * b) * s * s
        - (4 * b * b * k + 3 * b * k - 3 * b - 3) * s
        + 2 * b * b * k * k
        - 3 * b * k
        + 6;
    let c0 = -(b * b + b) * s * s * s
        + (b * n + 2 * b * b * k + b * k + 2 * b * b + b - 1) * s * s
        + ((1 - 2 * b - b * k) * n - b * b * k * k - 4 * b * b * k - b * k + 4 * b + 2) * s
        + (2 * b * k - 4) * n
        + 2 * b * b * k * k
        - 4 * b * k
        + 4;
    Ok(Cubic([1, c2, c1, c0]))
}

/// Closed-form characteristic polynomial of the extremal quotient.
pub fn char_poly_bstar(p: &OddFactorParams) -> Result<Cubic> {
    p.extremal_clique_order()?;
    let (b, k, n) = ints(p);
    let c2 = -(n + b - 3);
    let c1 = -(2 * b + 5) * n + 2 * b * b + 3 * b * k + 6 * b + 3 * k + 9;
    let c0 = (b * k + k - b - 3) * n - b * b * k + b * b - b * k * k - b * k + 4 * b - k * k + 5;
    Ok(Cubic([1, c2, c1, c0]))
}

/// The quadratic `g` with `f_B − f_{B*} = (s − k − 1)·g`.
pub fn g_poly(p: &OddFactorParams, s: usize) -> Result<Quadratic> {
    p.check_split(s)?;
    let (b, k, n) = ints(p);
    let s = s as i128;
    let a1 = -2 * b * n + (2 * b * b + 3 * b) * s - 2 * b * b * k + 2 * b * b + 6 * b + 3;
    let a0 = -(b * b + b) * s * s + (b * n + b * b * k + b * b - 1) * s + (1 - b) * n
        - 2 * b * b * k
        - b * k
        + b * b
        + 4 * b
        - k
        + 1;
    Ok(Quadratic([-b, a1, a0]))
}

const BISECTION_CAP: usize = 200;

/// Bisection on `[lo, hi]` assuming `p(lo) ≤ 0 < p(hi)`.
fn bisect(c: &Cubic, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if c.eval(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Cauchy bound `1 + max|cᵢ/c₃|` on the magnitude of every root.
pub fn cauchy_bound(c: &Cubic) -> f64 {
    let lead = c.0[0] as f64;
    1.0 + c.0[1..]
        .iter()
        .fold(0.0f64, |m, &x| m.max((x as f64 / lead).abs()))
}

/// Largest real root of a cubic with positive leading coefficient.
///
/// The search interval is bracketed by the Cauchy bound; when the cubic has
/// two critical points the local minimum decides whether the largest root
/// lies to its right or left of the local maximum.
pub fn largest_root(c: &Cubic) -> f64 {
    assert!(
        c.0[0] > 0,
        "largest_root needs a positive leading coefficient"
    );
    let bound = cauchy_bound(c);
    let (a, b2, c1) = (3.0 * c.0[0] as f64, 2.0 * c.0[1] as f64, c.0[2] as f64);
    let disc = b2 * b2 - 4.0 * a * c1;
    if disc <= 0.0 {
        return bisect(c, -bound, bound);
    }
    let root = disc.sqrt();
    let local_max = (-b2 - root) / (2.0 * a);
    let local_min = (-b2 + root) / (2.0 * a);
    if c.eval(local_min) <= 0.0 {
        bisect(c, local_min, bound)
    } else {
        bisect(c, -bound, local_max)
    }
}

/// Largest root by plain bisection over `[lo, hi]`, for callers that
/// already hold a bracket with `p(lo) ≤ 0 < p(hi)` and no larger root.
pub fn root_in(c: &Cubic, lo: f64, hi: f64) -> Result<f64> {
    if !(c.eval(lo) <= 0.0 && c.eval(hi) > 0.0) {
        return Err(Error::param(format!(
            "[{lo}, {hi}] does not bracket a sign change"
        )));
    }
    Ok(bisect(c, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, extremal_graph, path, split_join_graph};
    use crate::spectrum::{distance_matrix, spectral_radius_dense};

    fn p(b: usize, k: usize, n: usize) -> OddFactorParams {
        OddFactorParams::new(b, k, n).unwrap()
    }

    #[test]
    fn extremal_quotient_is_equitable() {
        let params = p(1, 1, 15);
        let d = distance_matrix(&extremal_graph(&params).unwrap()).unwrap();
        let q = quotient_matrix(&d, &VertexPartition::from_sizes(&[2, 11, 2]).unwrap()).unwrap();
        assert!(q.equitable);
        let exact = q.exact_3x3().unwrap();
        assert_eq!(exact, [[1, 11, 2], [2, 10, 4], [2, 22, 2]]);
        assert_eq!(exact, extremal_quotient(&params).unwrap());
    }

    #[test]
    fn path_split_is_not_equitable() {
        let d = distance_matrix(&path(3)).unwrap();
        let pi = VertexPartition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        assert!(!quotient_matrix(&d, &pi).unwrap().equitable);
    }

    #[test]
    fn one_block_quotients() {
        let d = distance_matrix(&complete(6).unwrap()).unwrap();
        let q = quotient_matrix(&d, &VertexPartition::all_in_one(6).unwrap()).unwrap();
        assert!(q.equitable);
        assert_eq!(q.entry(0, 0), 5.0);
        assert_eq!(quotient_largest_eigenvalue(&q).unwrap(), 5.0);
        let d = distance_matrix(&path(3)).unwrap();
        let q = quotient_matrix(&d, &VertexPartition::all_in_one(3).unwrap()).unwrap();
        assert!(!q.equitable);
        assert!((q.entry(0, 0) - 8.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn malformed_partitions() {
        assert!(VertexPartition::new(vec![vec![0, 1], vec![1]], 2).is_err());
        assert!(VertexPartition::new(vec![vec![0]], 2).is_err());
        assert!(VertexPartition::new(vec![vec![0, 1], vec![]], 2).is_err());
        assert!(VertexPartition::new(vec![vec![0, 2]], 2).is_err());
        assert!(VertexPartition::from_text("0 1\n2 x\n", 3).is_err());
        let pi = VertexPartition::from_text("0 2\n1\n", 3).unwrap();
        assert_eq!(pi.blocks(), &[vec![0, 2], vec![1]]);
        let d = distance_matrix(&path(4)).unwrap();
        assert!(quotient_matrix(&d, &pi).is_err());
    }

    #[test]
    fn bstar_polynomial() {
        assert_eq!(
            char_poly_bstar(&p(1, 1, 15)).unwrap(),
            Cubic([1, -13, -82, -24])
        );
        for params in [p(1, 1, 15), p(3, 1, 17), p(3, 2, 20), p(5, 3, 31)] {
            let c = char_poly_bstar(&params).unwrap();
            assert_eq!(c.0[1], -((params.n + params.b) as i128 - 3));
            assert_eq!(
                c,
                Cubic::characteristic(&extremal_quotient(&params).unwrap())
            );
        }
        assert!(char_poly_bstar(&p(1, 2, 4)).is_err());
    }

    #[test]
    fn split_polynomial() {
        let params = p(1, 1, 15);
        let c = char_poly_b(&params, 3).unwrap();
        assert_eq!(c.0[1], -14);
        assert_eq!(
            c,
            Cubic::characteristic(&split_join_quotient(&params, 3).unwrap())
        );
        assert_eq!(
            char_poly_b(&params, 2).unwrap(),
            char_poly_bstar(&params).unwrap()
        );
        assert!(char_poly_b(&params, 1).is_err());
        assert!(char_poly_b(&params, 8).is_err());
    }

    #[test]
    fn gap_polynomial() {
        let params = p(1, 1, 15);
        let g = g_poly(&params, 3).unwrap();
        assert_eq!(g.0[0], -1);
        assert_eq!(g.axis(), (-6, 2));
        assert!(g.eval_exact(17) < 0);
        let diff = char_poly_b(&params, 3)
            .unwrap()
            .difference(&char_poly_bstar(&params).unwrap());
        assert_eq!(diff, g.scaled_as_cubic(1));
    }

    #[test]
    fn roots() {
        assert!((largest_root(&Cubic([1, 0, -1, 0])) - 1.0).abs() < 1e-12);
        let theta = largest_root(&Cubic([1, -13, -82, -24]));
        assert!((theta - 17.7074).abs() < 1e-4, "{theta}");
        let gstar = extremal_graph(&p(1, 1, 15)).unwrap();
        let dense = spectral_radius_dense(&distance_matrix(&gstar).unwrap())
            .unwrap()
            .value;
        assert!((theta - dense).abs() < 1e-9);
        // x³ + x: a single real root, no critical points
        assert!(largest_root(&Cubic([1, 0, 1, 0])).abs() < 1e-12);
        // (x-2)²(x+1): double root at the local minimum
        assert!((largest_root(&Cubic([1, -3, 0, 4])) - 2.0).abs() < 1e-7);
        // (x+5)(x²+1): root left of the critical points
        assert!((largest_root(&Cubic([1, 5, 1, 5])) + 5.0).abs() < 1e-10);
    }

    #[test]
    fn root_is_stable_across_brackets() {
        let c = Cubic([1, -13, -82, -24]);
        let a = largest_root(&c);
        let b = root_in(&c, 10.0, cauchy_bound(&c)).unwrap();
        let d = root_in(&c, 17.0, 18.0).unwrap();
        assert!((a - b).abs() < 1e-10 && (a - d).abs() < 1e-10);
        assert!(root_in(&c, 18.0, 19.0).is_err());
    }

    #[test]
    fn quotient_eigenvalue_matches_root() {
        let params = p(1, 1, 15);
        let d = distance_matrix(&extremal_graph(&params).unwrap()).unwrap();
        let q = quotient_matrix(&d, &VertexPartition::from_sizes(&[2, 11, 2]).unwrap()).unwrap();
        let lam = quotient_largest_eigenvalue(&q).unwrap();
        assert!((lam - largest_root(&Cubic([1, -13, -82, -24]))).abs() < 1e-9);
    }

    #[test]
    fn split_join_quotient_matches_graph() {
        for (params, s) in [(p(1, 1, 15), 3), (p(3, 2, 20), 4), (p(1, 3, 21), 6)] {
            let g = split_join_graph(&params, s).unwrap();
            let spec = crate::graph::split_join_spec(&params, s).unwrap();
            let blocks = spec.clique_plus_singletons_blocks().unwrap();
            let d = distance_matrix(&g).unwrap();
            let q = quotient_matrix(&d, &VertexPartition::from_sizes(&blocks).unwrap()).unwrap();
            assert!(q.equitable);
            assert_eq!(
                q.exact_3x3().unwrap(),
                split_join_quotient(&params, s).unwrap()
            );
        }
    }
}
