//! Existence of `(1,f)`-odd factors and k-criticality, decided by
//! enumerating vertex subsets.
//!
//! Two subset criteria compare `o(G − S)` with a weight of `S`: one over all
//! `S` for plain existence, and one over `|S| ≥ k` with the `k` heaviest
//! members discounted for k-criticality. They are checked against a
//! definitional route (delete every k-set and test what remains) and an
//! edge-subset brute force that looks for a factor directly.
//!
//! Subsets are visited in increasing size, and in increasing bitmask order
//! within a size, so a reported witness is always the smallest violating
//! set of minimum cardinality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::{Graph, VertexSet};

/// Odd per-vertex degree caps `f(v) ∈ {1, 3, 5, …}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddBoundFunction {
    values: Vec<usize>,
}

impl OddBoundFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some((v, &x)) = values.iter().enumerate().find(|(_, &x)| x % 2 == 0) {
            return Err(Error::param(format!(
                "f({v}) = {x} must be odd and positive"
            )));
        }
        Ok(OddBoundFunction { values })
    }

    /// `f ≡ b` on `n` vertices.
    pub fn constant(n: usize, b: usize) -> Result<Self> {
        Self::new(vec![b; n])
    }

    pub fn get(&self, v: usize) -> usize {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f` on the listed vertices, in the order given.
    pub fn restrict(&self, kept: &[usize]) -> Self {
        OddBoundFunction {
            values: kept.iter().map(|&v| self.values[v]).collect(),
        }
    }

    fn check_order(&self, g: &Graph) -> Result<()> {
        if self.len() == g.order() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "bound function has {} values for a graph of order {}",
                self.len(),
                g.order()
            )))
        }
    }
}

/// Enumeration caps and execution strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    /// Largest order for the subset criteria (2ⁿ subsets).
    pub max_order: usize,
    /// Largest order for the definitional k-criticality check.
    pub max_definitional_order: usize,
    /// Largest edge count for the edge-subset oracle (2ᵐ subsets).
    pub max_oracle_edges: usize,
    pub exec: Execution,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            max_order: 22,
            max_definitional_order: 16,
            max_oracle_edges: 24,
            exec: Execution::default(),
        }
    }
}

impl FactorConfig {
    pub fn sequential() -> Self {
        FactorConfig {
            exec: Execution::Sequential,
            ..Self::default()
        }
    }
}

/// A set `S` violating a subset criterion: `odd_components > bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub set: VertexSet,
    pub odd_components: usize,
    pub bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityWitness {
    pub verdict: bool,
    pub violation: Option<Violation>,
}

impl CriticalityWitness {
    fn from_violation(violation: Option<Violation>) -> Self {
        CriticalityWitness {
            verdict: violation.is_none(),
            violation,
        }
    }
}

/// Bitmask view of a graph of order ≤ 64.
struct MaskGraph {
    adj: Vec<u64>,
    full: u64,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        MaskGraph {
            adj: g.adjacency_masks().expect("order checked against cap"),
            full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    fn odd_components(&self, removed: u64) -> usize {
        let mut remaining = self.full & !removed;
        let mut odd = 0;
        while remaining != 0 {
            let mut comp = remaining & remaining.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    next |= self.adj[f.trailing_zeros() as usize];
                    f &= f - 1;
                }
                frontier = next & remaining & !comp;
                comp |= frontier;
            }
            remaining &= !comp;
            odd += (comp.count_ones() & 1) as usize;
        }
        odd
    }
}

/// Next integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Subsets of `0..n` with exactly `size` members, in increasing order.
fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut cur = (size <= n).then_some(first);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            Some(next_same_popcount(out)).filter(|&x| x < limit)
        };
        Some(out)
    })
}

/// Smallest violating set, scanning subset sizes in `sizes` in order.
fn first_violation<F>(
    n: usize,
    sizes: std::ops::RangeInclusive<usize>,
    exec: Execution,
    check: F,
) -> Option<Violation>
where
    F: Fn(u64) -> Option<Violation> + Sync + Send,
{
    for size in sizes {
        let found = if exec.is_parallel() {
            let masks: Vec<u64> = subsets_of_size(n, size).collect();
            exec::find_map_first(exec, &masks, |&m| check(m))
        } else {
            subsets_of_size(n, size).find_map(&check)
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap.min(63) {
        Err(Error::CapExceeded {
            what,
            size,
            cap: cap.min(63),
        })
    } else {
        Ok(())
    }
}

fn mask_weight(f: &OddBoundFunction, mask: u64) -> i64 {
    let mut w = 0;
    let mut m = mask;
    while m != 0 {
        w += f.get(m.trailing_zeros() as usize) as i64;
        m &= m - 1;
    }
    w
}

/// Existence of a `(1,f)`-odd factor: `o(G − S) ≤ Σ_{v∈S} f(v)` for every
/// `S ⊆ V(G)`, including `S = ∅`.
pub fn has_odd_factor(
    g: &Graph,
    f: &OddBoundFunction,
    config: &FactorConfig,
) -> Result<CriticalityWitness> {
    f.check_order(g)?;
    let n = g.order();
    if n == 0 {
        return Err(Error::OrderTooSmall {
            order: 0,
            needed: 1,
        });
    }
    check_cap("order", n, config.max_order)?;
    let mg = MaskGraph::new(g);
    let violation = first_violation(n, 0..=n, config.exec, |mask| {
        let bound = mask_weight(f, mask);
        let q = mg.odd_components(mask);
        (q as i64 > bound).then(|| Violation {
            set: VertexSet::from_mask(mask),
            odd_components: q,
            bound,
        })
    });
    Ok(CriticalityWitness::from_violation(violation))
}

/// Right-hand side of the k-criticality criterion for a given `S`:
/// `Σ_{v∈S} f(v)` minus the sum of the `k` largest values of `f` on `S`.
pub fn criticality_bound(f: &OddBoundFunction, set: &[usize], k: usize) -> i64 {
    let mut vals: Vec<i64> = set.iter().map(|&v| f.get(v) as i64).collect();
    vals.sort_unstable_by(|a, b| b.cmp(a));
    vals.iter().skip(k).sum()
}

/// k-criticality with respect to `(1,f)`-odd factors: for every `S` with
/// `|S| ≥ k`, `o(G − S)` must not exceed [`criticality_bound`].
pub fn is_k_critical(
    g: &Graph,
    f: &OddBoundFunction,
    k: usize,
    config: &FactorConfig,
) -> Result<CriticalityWitness> {
    f.check_order(g)?;
    let n = g.order();
    if k == 0 {
        return Err(Error::param("k must be positive"));
    }
    if n < k + 2 {
        return Err(Error::OrderTooSmall {
            order: n,
            needed: k + 2,
        });
    }
    check_cap("order", n, config.max_order)?;
    let mg = MaskGraph::new(g);
    let constant = (0..n)
        .all(|v| f.get(v) == f.get(0))
        .then(|| f.get(0) as i64);
    let violation = first_violation(n, k..=n, config.exec, |mask| {
        let bound = match constant {
            Some(b) => b * (i64::from(mask.count_ones()) - k as i64),
            None => {
                let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                criticality_bound(f, &members, k)
            }
        };
        let q = mg.odd_components(mask);
        (q as i64 > bound).then(|| Violation {
            set: VertexSet::from_mask(mask),
            odd_components: q,
            bound,
        })
    });
    Ok(CriticalityWitness::from_violation(violation))
}

/// k-criticality straight from the definition: `G − X` has a `(1,f)`-odd
/// factor for every `k`-set `X`.
pub fn is_k_critical_definitional(
    g: &Graph,
    f: &OddBoundFunction,
    k: usize,
    config: &FactorConfig,
) -> Result<bool> {
    f.check_order(g)?;
    let n = g.order();
    if n < k + 2 {
        return Err(Error::OrderTooSmall {
            order: n,
            needed: k + 2,
        });
    }
    check_cap("order", n, config.max_definitional_order)?;
    let deletions: Vec<u64> = subsets_of_size(n, k).collect();
    let inner = FactorConfig {
        exec: Execution::Sequential,
        ..*config
    };
    let mut error = std::sync::Mutex::new(None);
    let all = exec::all(config.exec, &deletions, |&mask| {
        let run = || -> Result<bool> {
            let (h, kept) = g.remove_vertices(&VertexSet::from_mask(mask))?;
            Ok(has_odd_factor(&h, &f.restrict(&kept), &inner)?.verdict)
        };
        run().unwrap_or_else(|e| {
            error.lock().unwrap().get_or_insert(e);
            false
        })
    });
    match error.get_mut().unwrap().take() {
        Some(e) => Err(e),
        None => Ok(all),
    }
}

/// True if `edges` (a subset of `E(G)`) forms a `(1,f)`-odd factor.
pub fn is_odd_factor(g: &Graph, f: &OddBoundFunction, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; g.order()];
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return false;
        }
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter()
        .enumerate()
        .all(|(v, &d)| d % 2 == 1 && d <= f.get(v))
}

/// Searches every edge subset for a `(1,f)`-odd factor.
///
/// Subsets are bitmasks over the canonical edge order (sorted `u < v`
/// pairs) and are visited in increasing numeric order, so the result is the
/// first factor in that order.
pub fn find_odd_factor_bruteforce(
    g: &Graph,
    f: &OddBoundFunction,
    config: &FactorConfig,
) -> Result<Option<Vec<(usize, usize)>>> {
    f.check_order(g)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    check_cap("edge count", m, config.max_oracle_edges)?;
    let n = g.order();
    let mut deg = vec![0usize; n];
    let bad_at = |d: usize, v: usize| d.is_multiple_of(2) || d > f.get(v);
    let mut bad = n;
    let total = 1u64 << m;
    let mut mask = 0u64;
    loop {
        if bad == 0 {
            let chosen = (0..m)
                .filter(|&e| mask >> e & 1 == 1)
                .map(|e| edges[e])
                .collect();
            return Ok(Some(chosen));
        }
        let next = mask + 1;
        if next == total {
            return Ok(None);
        }
        let mut changed = mask ^ next;
        while changed != 0 {
            let e = changed.trailing_zeros() as usize;
            changed &= changed - 1;
            let added = next >> e & 1 == 1;
            let (u, v) = edges[e];
            for w in [u, v] {
                let before = bad_at(deg[w], w);
                if added {
                    deg[w] += 1;
                } else {
                    deg[w] -= 1;
                }
                let after = bad_at(deg[w], w);
                match (before, after) {
                    (true, false) => bad -= 1,
                    (false, true) => bad += 1,
                    _ => {}
                }
            }
        }
        mask = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, extremal_graph, path, star};
    use crate::params::OddFactorParams;

    fn ones(n: usize) -> OddBoundFunction {
        OddBoundFunction::constant(n, 1).unwrap()
    }

    fn cfg() -> FactorConfig {
        FactorConfig::default()
    }

    #[test]
    fn gosper_enumeration() {
        let v: Vec<u64> = subsets_of_size(4, 2).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 3).collect::<Vec<_>>(), vec![0b111]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
    }

    #[test]
    fn bound_function_validation() {
        assert!(OddBoundFunction::constant(3, 2).is_err());
        assert!(OddBoundFunction::new(vec![1, 0]).is_err());
        let f = OddBoundFunction::new(vec![1, 3, 5]).unwrap();
        assert_eq!(f.restrict(&[2, 0]).get(0), 5);
        assert!(has_odd_factor(&path(2), &f, &cfg()).is_err());
    }

    #[test]
    fn existence_examples() {
        let k2 = complete(2).unwrap();
        assert!(has_odd_factor(&k2, &ones(2), &cfg()).unwrap().verdict);
        let claw = star(3);
        let w = has_odd_factor(&claw, &ones(4), &cfg()).unwrap();
        assert!(!w.verdict);
        let v = w.violation.unwrap();
        assert_eq!((v.set.to_vec(), v.odd_components, v.bound), (vec![0], 3, 1));
        let threes = OddBoundFunction::constant(4, 3).unwrap();
        assert!(has_odd_factor(&claw, &threes, &cfg()).unwrap().verdict);
        let w = has_odd_factor(&path(3), &ones(3), &cfg()).unwrap();
        let v = w.violation.unwrap();
        assert_eq!((v.set.len(), v.odd_components, v.bound), (0, 1, 0));
    }

    #[test]
    fn bruteforce_examples() {
        let k2 = complete(2).unwrap();
        assert_eq!(
            find_odd_factor_bruteforce(&k2, &ones(2), &cfg()).unwrap(),
            Some(vec![(0, 1)])
        );
        let k4 = complete(4).unwrap();
        let fac = find_odd_factor_bruteforce(&k4, &ones(4), &cfg())
            .unwrap()
            .unwrap();
        assert_eq!(fac.len(), 2);
        assert!(is_odd_factor(&k4, &ones(4), &fac));
        let claw = star(3);
        let threes = OddBoundFunction::constant(4, 3).unwrap();
        assert_eq!(
            find_odd_factor_bruteforce(&claw, &threes, &cfg()).unwrap(),
            Some(vec![(0, 1), (0, 2), (0, 3)])
        );
        assert_eq!(
            find_odd_factor_bruteforce(&claw, &ones(4), &cfg()).unwrap(),
            None
        );
        let k8 = complete(8).unwrap();
        assert!(matches!(
            find_odd_factor_bruteforce(&k8, &ones(8), &cfg()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn criticality_examples() {
        let k5 = complete(5).unwrap();
        assert!(is_k_critical(&k5, &ones(5), 1, &cfg()).unwrap().verdict);
        assert!(is_k_critical_definitional(&k5, &ones(5), 1, &cfg()).unwrap());
        let k4 = complete(4).unwrap();
        assert!(is_k_critical_definitional(&k4, &ones(4), 2, &cfg()).unwrap());
        let k3 = complete(3).unwrap();
        assert!(matches!(
            is_k_critical(&k3, &ones(3), 2, &cfg()),
            Err(Error::OrderTooSmall {
                order: 3,
                needed: 4
            })
        ));

        let gstar = extremal_graph(&OddFactorParams::new(1, 1, 15).unwrap()).unwrap();
        let w = is_k_critical(&gstar, &ones(15), 1, &cfg()).unwrap();
        let v = w.violation.unwrap();
        assert_eq!(
            (v.set.to_vec(), v.odd_components, v.bound),
            (vec![0, 1], 3, 1)
        );
        assert!(!is_k_critical_definitional(&gstar, &ones(15), 1, &cfg()).unwrap());
    }

    #[test]
    fn witnesses_do_not_depend_on_execution() {
        let gstar = extremal_graph(&OddFactorParams::new(3, 1, 17).unwrap()).unwrap();
        let f = OddBoundFunction::constant(17, 3).unwrap();
        let seq = is_k_critical(&gstar, &f, 1, &FactorConfig::sequential()).unwrap();
        let par = is_k_critical(
            &gstar,
            &f,
            1,
            &FactorConfig {
                exec: Execution::Parallel,
                ..cfg()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
        assert!(!seq.verdict);
    }

    #[test]
    fn max_term_reduces_for_constant_f() {
        let f = OddBoundFunction::constant(6, 3).unwrap();
        for size in 2..=6 {
            let set: Vec<usize> = (0..size).collect();
            assert_eq!(criticality_bound(&f, &set, 2), 3 * (size as i64 - 2));
        }
        let g = OddBoundFunction::new(vec![1, 5, 3, 7]).unwrap();
        assert_eq!(criticality_bound(&g, &[0, 1, 2, 3], 2), 4);
    }

    #[test]
    fn caps_are_enforced() {
        let big = complete(23).unwrap();
        assert!(matches!(
            has_odd_factor(&big, &ones(23), &cfg()),
            Err(Error::CapExceeded {
                what: "order",
                size: 23,
                cap: 22
            })
        ));
        let mid = complete(17).unwrap();
        assert!(is_k_critical_definitional(&mid, &ones(17), 1, &cfg()).is_err());
    }
}
