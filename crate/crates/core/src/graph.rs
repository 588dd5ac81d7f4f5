//! Simple undirected graphs, the join/union family constructors, odd
//! components and vertex connectivity.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseErrorKind, Result};
use crate::params::OddFactorParams;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted and symmetric; there are no loops and no
/// parallel edges. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge iterator, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::param(format!("self-loop at vertex {u}")));
            }
            if !g.insert_edge(u, v) {
                return Err(Error::param(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Inserts `uv` keeping neighbor lists sorted; false if already present.
    fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                true
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Pairs `u < v` that are not adjacent.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order();
        (0..n).flat_map(move |u| {
            ((u + 1)..n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// `G + uv`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: n,
                });
            }
        }
        if u == v || self.has_edge(u, v) {
            return Err(Error::param(format!("{u}-{v} is not a non-edge")));
        }
        let mut g = self.clone();
        g.insert_edge(u, v);
        Ok(g)
    }

    /// `G - X` with the surviving vertices relabeled densely in increasing
    /// order. The second value maps new labels to old ones.
    pub fn remove_vertices(&self, removed: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(removed)?;
        let kept: Vec<usize> = (0..self.order())
            .filter(|&v| !removed.contains(v))
            .collect();
        let mut relabel = vec![usize::MAX; self.order()];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let adj = kept
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter(|&&w| relabel[w] != usize::MAX)
                    .map(|&w| relabel[w])
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok((Graph { adj, edges }, kept))
    }

    /// Adjacency rows as bitmasks, available for graphs of order at most 64.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1 << w)))
                .collect(),
        )
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.max() {
            Some(v) if v >= self.order() => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            }),
            _ => Ok(()),
        }
    }

    /// Orders of the connected components of `G - removed`, in order of
    /// their smallest vertex.
    pub fn component_orders(&self, removed: &VertexSet) -> Result<Vec<usize>> {
        self.check_set(removed)?;
        let n = self.order();
        let mut seen: Vec<bool> = (0..n).map(|v| removed.contains(v)).collect();
        let mut queue = VecDeque::new();
        let mut orders = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut count = 0;
            while let Some(v) = queue.pop_front() {
                count += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            orders.push(count);
        }
        Ok(orders)
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0
            && self
                .component_orders(&VertexSet::empty())
                .map(|c| c.len() == 1)
                .unwrap_or(false)
    }

    /// Canonical edge-list document: header `n m`, then one `u v` line per
    /// edge with `u < v`, sorted, every line LF-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.order(), self.size()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses an edge-list document. Errors carry the 1-based line number.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.split('\n').collect();
        if lines.len() > 1 && lines.last() == Some(&"") {
            lines.pop();
        }
        let err = |line: usize, kind| Error::Parse { line, kind };
        let (n, m) = parse_pair(lines[0])
            .ok_or_else(|| err(1, ParseErrorKind::Malformed(lines[0].to_string())))?;
        let found = lines.len() - 1;
        let mut g = Graph::empty(n);
        for (idx, raw) in lines.iter().enumerate().skip(1) {
            let line = idx + 1;
            if idx > m {
                return Err(err(
                    line,
                    ParseErrorKind::EdgeCountMismatch { declared: m, found },
                ));
            }
            let (u, v) = parse_pair(raw)
                .ok_or_else(|| err(line, ParseErrorKind::Malformed(raw.to_string())))?;
            for w in [u, v] {
                if w >= n {
                    return Err(err(
                        line,
                        ParseErrorKind::VertexOutOfRange {
                            vertex: w,
                            order: n,
                        },
                    ));
                }
            }
            if u == v {
                return Err(err(line, ParseErrorKind::SelfLoop(u)));
            }
            if !g.insert_edge(u, v) {
                return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
            }
        }
        if found < m {
            return Err(err(
                lines.len() + 1,
                ParseErrorKind::EdgeCountMismatch { declared: m, found },
            ));
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let (a, b) = line.split_once(' ')?;
    let num = |s: &str| {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            None
        } else {
            s.parse::<usize>().ok()
        }
    };
    Some((num(a)?, num(b)?))
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("complete graph needs n >= 1"));
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| w != v).collect())
        .collect();
    Ok(Graph {
        adj,
        edges: n * (n - 1) / 2,
    })
}

/// The path `P_n` on vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are simple")
}

/// The cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param("cycle needs n >= 3"));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// The star `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are simple")
}

/// `A ∪ B`; the vertices of `b` are shifted by `|A|`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.order();
    let mut adj = a.adj.clone();
    adj.extend(
        b.adj
            .iter()
            .map(|nb| nb.iter().map(|&w| w + shift).collect()),
    );
    Graph {
        adj,
        edges: a.edges + b.edges,
    }
}

/// `A ∨ B`: the disjoint union plus every edge between the two sides.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let (na, nb) = (a.order(), b.order());
    let mut adj = Vec::with_capacity(na + nb);
    for nbrs in &a.adj {
        let mut row = nbrs.clone();
        row.extend(na..na + nb);
        adj.push(row);
    }
    for nbrs in &b.adj {
        let mut row: Vec<usize> = (0..na).collect();
        row.extend(nbrs.iter().map(|&w| w + na));
        adj.push(row);
    }
    Graph {
        adj,
        edges: a.edges + b.edges + na * nb,
    }
}

/// `K_s ∨ (K_{n_1} ∪ ... ∪ K_{n_t})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub s: usize,
    pub parts: Vec<usize>,
}

impl FamilySpec {
    pub fn new(s: usize, parts: Vec<usize>) -> Result<Self> {
        let spec = FamilySpec { s, parts };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::param("family needs at least one part"));
        }
        if self.s == 0 || self.parts.contains(&0) {
            return Err(Error::param("family blocks must be nonempty"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.s + self.parts.iter().sum::<usize>()
    }

    /// Block sizes in labeling order: the join clique, then each part.
    pub fn block_sizes(&self) -> Vec<usize> {
        std::iter::once(self.s)
            .chain(self.parts.iter().copied())
            .collect()
    }

    /// Three-block sizes `[s, big, singletons]` when the family has the
    /// shape `K_s ∨ (K_big ∪ r K_1)`. These are the partitions whose
    /// quotient matrices appear in the closed forms.
    pub fn clique_plus_singletons_blocks(&self) -> Option<[usize; 3]> {
        let (&big, rest) = self.parts.split_first()?;
        if rest.is_empty() || rest.iter().any(|&p| p != 1) {
            return None;
        }
        Some([self.s, big, rest.len()])
    }
}

/// Builds a [`FamilySpec`]. Labels: the join clique first, then the parts in
/// the given order.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let mut union = complete(spec.parts[0])?;
    for &p in &spec.parts[1..] {
        union = disjoint_union(&union, &complete(p)?);
    }
    Ok(join(&complete(spec.s)?, &union))
}

/// The extremal family `K_{k+1} ∨ (K_{n-k-b-2} ∪ (b+1)K_1)`.
pub fn extremal_spec(p: &OddFactorParams) -> Result<FamilySpec> {
    let big = p.extremal_clique_order()?;
    let mut parts = vec![big];
    parts.extend(std::iter::repeat_n(1, p.b + 1));
    FamilySpec::new(p.k + 1, parts)
}

pub fn extremal_graph(p: &OddFactorParams) -> Result<Graph> {
    build_family(&extremal_spec(p)?)
}

/// The split-join family `K_s ∨ (K_{n-(b+1)s+bk-1} ∪ (bs-bk+1)K_1)`.
pub fn split_join_spec(p: &OddFactorParams, s: usize) -> Result<FamilySpec> {
    p.check_split(s)?;
    let (b, k, n) = (p.b, p.k, p.n);
    let big = n + b * k - (b + 1) * s - 1;
    let mut parts = vec![big];
    parts.extend(std::iter::repeat_n(1, b * s - b * k + 1));
    FamilySpec::new(s, parts)
}

pub fn split_join_graph(p: &OddFactorParams, s: usize) -> Result<Graph> {
    build_family(&split_join_spec(p, s)?)
}

/// Number of odd-order components of `G - S`.
pub fn odd_components(g: &Graph, s: &VertexSet) -> Result<usize> {
    Ok(g.component_orders(s)?
        .into_iter()
        .filter(|c| c % 2 == 1)
        .count())
}

/// Vertex connectivity κ(G).
///
/// `K_n` gives `n - 1` and a disconnected graph gives 0. Otherwise the
/// minimum over nonadjacent pairs of the number of internally
/// vertex-disjoint paths between them.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(Error::OrderTooSmall {
            order: n,
            needed: 2,
        });
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = n - 1;
    let mut net = SplitNetwork::new(g);
    for (u, v) in g.non_edges() {
        best = best.min(net.disjoint_paths(u, v, best));
        if best == 1 {
            break;
        }
    }
    Ok(best)
}

/// Unit-capacity network with every vertex split into an in/out pair.
struct SplitNetwork {
    // (head, capacity, index of reverse arc)
    arcs: Vec<Vec<(usize, u8, usize)>>,
    base: Vec<Vec<(usize, u8, usize)>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut arcs: Vec<Vec<(usize, u8, usize)>> = vec![Vec::new(); 2 * n];
        let add = |arcs: &mut Vec<Vec<(usize, u8, usize)>>, from: usize, to: usize| {
            let (fi, ti) = (arcs[to].len(), arcs[from].len());
            arcs[from].push((to, 1, fi));
            arcs[to].push((from, 0, ti));
        };
        for v in 0..n {
            add(&mut arcs, 2 * v, 2 * v + 1);
        }
        for (u, v) in g.edges() {
            add(&mut arcs, 2 * u + 1, 2 * v);
            add(&mut arcs, 2 * v + 1, 2 * u);
        }
        SplitNetwork {
            base: arcs.clone(),
            arcs,
        }
    }

    /// Max number of internally disjoint `u`-`v` paths, stopping at `limit`.
    fn disjoint_paths(&mut self, u: usize, v: usize, limit: usize) -> usize {
        self.arcs.clone_from(&self.base);
        let (source, sink) = (2 * u + 1, 2 * v);
        let nodes = self.arcs.len();
        let mut flow = 0;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nodes];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = None);
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for (i, &(y, cap, _)) in self.arcs[x].iter().enumerate() {
                    if cap > 0 && y != source && parent[y].is_none() {
                        parent[y] = Some((x, i));
                        if y == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut y = sink;
            while let Some((x, i)) = parent[y] {
                let rev = self.arcs[x][i].2;
                self.arcs[x][i].1 -= 1;
                self.arcs[y][rev].1 += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// A set of vertex labels: a bitmask when every member fits in a machine
/// word, a sorted list otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub enum VertexSet {
    Mask(u64),
    List(Vec<usize>),
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet::Mask(0)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet::Mask(mask)
    }

    /// Contiguous range `start..end` of labels.
    pub fn range(start: usize, end: usize) -> Self {
        (start..end).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        match self {
            VertexSet::Mask(m) => v < 64 && m >> v & 1 == 1,
            VertexSet::List(l) => l.binary_search(&v).is_ok(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VertexSet::Mask(m) => m.count_ones() as usize,
            VertexSet::List(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max(&self) -> Option<usize> {
        match self {
            VertexSet::Mask(0) => None,
            VertexSet::Mask(m) => Some(63 - m.leading_zeros() as usize),
            VertexSet::List(l) => l.last().copied(),
        }
    }

    /// Members in increasing order.
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            VertexSet::Mask(m) => (0..64).filter(|&v| m >> v & 1 == 1).collect(),
            VertexSet::List(l) => l.clone(),
        }
    }

    pub fn as_mask(&self) -> Option<u64> {
        match self {
            VertexSet::Mask(m) => Some(*m),
            VertexSet::List(_) => None,
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.last().is_none_or(|&m| m < 64) {
            VertexSet::Mask(v.iter().fold(0, |m, &x| m | 1 << x))
        } else {
            VertexSet::List(v)
        }
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl std::fmt::Display for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.to_vec().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
