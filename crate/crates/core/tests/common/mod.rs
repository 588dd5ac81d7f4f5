#![allow(dead_code)]

use oddcrit::graph::{gnp, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial with `i128` coefficients, lowest degree first.
type Poly = Vec<i128>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i128)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i128)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if prefix[i] > prefix[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `det(xI − M)` by the Leibniz formula over polynomial entries, returned
/// highest degree first like `oddcrit::quotient::Cubic`.
pub fn char_poly_leibniz(m: &[[i128; 3]; 3]) -> [i128; 4] {
    let entry = |i: usize, j: usize| -> Poly {
        if i == j {
            vec![-m[i][j], 1]
        } else {
            vec![-m[i][j]]
        }
    };
    let mut total: Poly = vec![0; 4];
    for (perm, sign) in permutations(3) {
        let mut term: Poly = vec![sign];
        for (i, &j) in perm.iter().enumerate() {
            term = poly_mul(&term, &entry(i, j));
        }
        for (t, c) in total
            .iter_mut()
            .zip(term.iter().chain(std::iter::repeat(&0)))
        {
            *t += c;
        }
    }
    [total[3], total[2], total[1], total[0]]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_connected(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = gnp(n, density, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Sum of all BFS hop counts over unordered pairs, written without the
/// library's distance matrix.
pub fn wiener_by_bfs(g: &Graph) -> u64 {
    let n = g.order();
    let mut total = 0u64;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut frontier = vec![s];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        total += dist
            .iter()
            .filter(|&&x| x != usize::MAX)
            .map(|&x| x as u64)
            .sum::<u64>();
    }
    total / 2
}
