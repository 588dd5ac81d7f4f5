//! Exhaustive generation of small graphs up to isomorphism.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order for which [`graphs_up_to_iso`] is offered.
pub const MAX_ENUMERATION_ORDER: usize = 8;

fn pair_bit(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn code_under(adj: &[u64], n: usize, pos: &[usize]) -> u64 {
    let mut code = 0u64;
    for u in 0..n {
        let mut nb = adj[u];
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if u < v {
                code |= 1 << pair_bit(pos[u], pos[v], n);
            }
        }
    }
    code
}

/// Canonical code of a graph on at most 11 vertices: the minimum
/// upper-triangle bit code over all relabelings that list vertices by
/// non-increasing degree. Two graphs share a code iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= 11, "canonical_code supports at most 11 vertices");
    let adj = g.adjacency_masks().expect("small order");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    // vertices grouped into runs of equal degree; each run may be permuted
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut pos = vec![0usize; n];
    let mut best = u64::MAX;
    search(&adj, n, &mut classes, 0, 0, &mut pos, &mut best);
    best
}

fn search(
    adj: &[u64],
    n: usize,
    classes: &mut [Vec<usize>],
    class: usize,
    offset: usize,
    pos: &mut [usize],
    best: &mut u64,
) {
    if class == classes.len() {
        *best = (*best).min(code_under(adj, n, pos));
        return;
    }
    let len = classes[class].len();
    permute(adj, n, classes, class, offset, 0, len, pos, best);
}

#[allow(clippy::too_many_arguments)]
fn permute(
    adj: &[u64],
    n: usize,
    classes: &mut [Vec<usize>],
    class: usize,
    offset: usize,
    i: usize,
    len: usize,
    pos: &mut [usize],
    best: &mut u64,
) {
    if i == len {
        search(adj, n, classes, class + 1, offset + len, pos, best);
        return;
    }
    for j in i..len {
        classes[class].swap(i, j);
        pos[classes[class][i]] = offset + i;
        permute(adj, n, classes, class, offset, i + 1, len, pos, best);
        classes[class].swap(i, j);
    }
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices, built by attaching a new vertex to the classes on `n − 1`.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::CapExceeded {
            what: "order",
            size: n,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            for nbhd in 0u64..(1 << (m - 1)) {
                let extra = (0..m - 1)
                    .filter(|&v| nbhd >> v & 1 == 1)
                    .map(|v| (v, m - 1));
                let h = Graph::from_edges(m, edges.iter().copied().chain(extra))
                    .expect("fresh vertex edges");
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

pub fn connected_graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs_up_to_iso(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    #[test]
    fn known_class_counts() {
        // OEIS A000088 and A001349
        let all = [1, 2, 4, 11, 34, 156, 1044];
        let connected = [1, 1, 2, 6, 21, 112, 853];
        for n in 1..=7 {
            assert_eq!(graphs_up_to_iso(n).unwrap().len(), all[n - 1], "n = {n}");
            assert_eq!(
                connected_graphs_up_to_iso(n).unwrap().len(),
                connected[n - 1],
                "n = {n}"
            );
        }
    }

    #[test]
    fn codes_identify_relabelings() {
        let p = path(5);
        let relabeled = Graph::from_edges(5, [(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        assert_eq!(canonical_code(&p), canonical_code(&relabeled));
        assert_ne!(canonical_code(&p), canonical_code(&cycle(5).unwrap()));
    }
}
