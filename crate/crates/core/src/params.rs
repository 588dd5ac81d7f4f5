use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The triple `(b, k, n)`: odd degree cap `b`, number of deleted vertices
/// `k`, and graph order `n`, with `b` odd and `n ≡ k (mod 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddFactorParams {
    pub b: usize,
    pub k: usize,
    pub n: usize,
}

impl OddFactorParams {
    pub fn new(b: usize, k: usize, n: usize) -> Result<Self> {
        if b == 0 || b.is_multiple_of(2) {
            return Err(Error::param(format!("b must be odd and positive, got {b}")));
        }
        if k == 0 {
            return Err(Error::param("k must be positive"));
        }
        if n % 2 != k % 2 {
            return Err(Error::param(format!(
                "n = {n} and k = {k} must have the same parity"
            )));
        }
        Ok(OddFactorParams { b, k, n })
    }

    /// Numerator of the order threshold `(b² + 2bk + 5b + 2k + 4) / b`.
    pub fn order_bound_numerator(&self) -> usize {
        let (b, k) = (self.b, self.k);
        b * b + 2 * b * k + 5 * b + 2 * k + 4
    }

    /// Smallest integer order meeting the threshold (parity not applied).
    pub fn min_order(b: usize, k: usize) -> usize {
        let num = b * b + 2 * b * k + 5 * b + 2 * k + 4;
        num.div_ceil(b)
    }

    /// Whether `n ≥ (b² + 2bk + 5b + 2k + 4) / b`, compared exactly.
    pub fn meets_order_bound(&self) -> bool {
        self.n * self.b >= self.order_bound_numerator()
    }

    /// Rejects parameters outside the range where the distance criterion
    /// applies.
    pub fn require_order_bound(&self) -> Result<()> {
        if self.meets_order_bound() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "n = {} is below the order threshold {}/{}",
                self.n,
                self.order_bound_numerator(),
                self.b
            )))
        }
    }

    /// Order of the large clique in the extremal graph, `n - k - b - 2`.
    pub fn extremal_clique_order(&self) -> Result<usize> {
        let used = self.k + self.b + 2;
        if self.n <= used {
            return Err(Error::param(format!(
                "n - k - b - 2 = {} must be at least 1",
                self.n as i64 - used as i64
            )));
        }
        Ok(self.n - used)
    }

    /// Valid split sizes satisfy `s ≥ k + 1` and `n ≥ (b+1)s - bk + 2`.
    pub fn check_split(&self, s: usize) -> Result<()> {
        if s < self.k + 1 {
            return Err(Error::param(format!(
                "s = {s} must be at least k + 1 = {}",
                self.k + 1
            )));
        }
        if self.n + self.b * self.k < (self.b + 1) * s + 2 {
            return Err(Error::param(format!(
                "s = {s} too large: need n >= (b+1)s - bk + 2"
            )));
        }
        Ok(())
    }

    /// Largest `s` with `(b+1)s ≤ n + bk - 2`.
    pub fn max_split(&self) -> usize {
        (self.n + self.b * self.k).saturating_sub(2) / (self.b + 1)
    }

    /// Split sizes `k+2 ..= max_split` examined by the proof chain.
    pub fn proper_splits(&self) -> std::ops::RangeInclusive<usize> {
        (self.k + 2)..=self.max_split()
    }
}

impl std::fmt::Display for OddFactorParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(b={}, k={}, n={})", self.b, self.k, self.n)
    }
}

/// Every `(b, k, n)` with the given `b`, `k` values, `n ≤ max_n` of matching
/// parity, meeting the order threshold and leaving a nonempty large clique.
pub fn theorem_grid(bs: &[usize], ks: &[usize], max_n: usize) -> Vec<OddFactorParams> {
    let mut out = Vec::new();
    for &b in bs {
        for &k in ks {
            for n in OddFactorParams::min_order(b, k)..=max_n {
                if let Ok(p) = OddFactorParams::new(b, k, n) {
                    if p.extremal_clique_order().is_ok() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
