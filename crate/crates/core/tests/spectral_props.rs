mod common;

use oddcrit::graph::{complete, cycle, path};
use oddcrit::linalg::DEFAULT_TOL;
use oddcrit::spectrum::{
    distance_matrix, perron_vector, spectral_radius, spectral_radius_dense, wiener_index,
    WienerBound,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_matrix_invariants(n in 2usize..14, p in 0.1..1.0f64, seed in any::<u64>()) {
        let g = common::random_connected(n, p, &mut common::rng(seed));
        let d = distance_matrix(&g).unwrap();
        for i in 0..n {
            prop_assert_eq!(d.get(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                if i != j {
                    prop_assert!(d.get(i, j) >= 1);
                    prop_assert_eq!(d.get(i, j) == 1, g.has_edge(i, j));
                }
                for k in 0..n {
                    prop_assert!(d.get(i, j) <= d.get(i, k) + d.get(k, j));
                }
            }
        }
        prop_assert_eq!(wiener_index(&d), common::wiener_by_bfs(&g));
    }

    #[test]
    fn rayleigh_lower_bound(n in 2usize..25, p in 0.05..1.0f64, seed in any::<u64>()) {
        let g = common::random_connected(n, p, &mut common::rng(seed));
        let d = distance_matrix(&g).unwrap();
        let mu = spectral_radius(&d, DEFAULT_TOL).unwrap().value;
        prop_assert!(mu >= WienerBound::of(&d).value() - 1e-9);
    }

    #[test]
    fn adding_an_edge_lowers_mu(n in 3usize..16, p in 0.05..0.9f64, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = common::random_connected(n, p, &mut common::rng(seed));
        let non_edges: Vec<_> = g.non_edges().collect();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let before = spectral_radius(&distance_matrix(&g).unwrap(), DEFAULT_TOL).unwrap().value;
        let after = spectral_radius(&distance_matrix(&g.with_edge(u, v).unwrap()).unwrap(), DEFAULT_TOL).unwrap().value;
        prop_assert!(before - after > 1e-9, "{} -> {}", before, after);
    }

    #[test]
    fn perron_vector_positive(n in 2usize..30, p in 0.05..1.0f64, seed in any::<u64>()) {
        let g = common::random_connected(n, p, &mut common::rng(seed));
        let (est, x) = perron_vector(&distance_matrix(&g).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert!(est.value > 0.0);
        prop_assert!(x.iter().all(|&v| v > 0.0));
    }
}

#[test]
fn complete_graphs_have_radius_n_minus_one() {
    for n in 2..=60 {
        let d = distance_matrix(&complete(n).unwrap()).unwrap();
        let mu = spectral_radius(&d, DEFAULT_TOL).unwrap().value;
        assert!((mu - (n - 1) as f64).abs() < 1e-9, "K_{n}: {mu}");
    }
}

#[test]
fn power_and_dense_agree_up_to_200() {
    let mut rng = common::rng(2024);
    let mut graphs = vec![path(200), cycle(151).unwrap(), path(2)];
    for n in [30, 64, 120, 200] {
        for p in [0.03, 0.1, 0.5] {
            graphs.push(common::random_connected(n, p, &mut rng));
        }
    }
    for g in graphs {
        let d = distance_matrix(&g).unwrap();
        let power = spectral_radius(&d, DEFAULT_TOL).unwrap();
        let dense = spectral_radius_dense(&d).unwrap();
        assert!(
            dense.residual <= 1e-9 * dense.value,
            "dense residual {}",
            dense.residual
        );
        assert!(
            (power.value - dense.value).abs() <= 1e-8 * dense.value.max(1.0),
            "n = {}: power {} dense {}",
            g.order(),
            power.value,
            dense.value
        );
    }
}

#[test]
fn path_closed_form() {
    // P_3 distance matrix [[0,1,2],[1,0,1],[2,1,0]]: the symmetric eigenvector
    // (1, t, 1) gives λ² − 2λ − 2 = 0.
    let d = distance_matrix(&path(3)).unwrap();
    let expected = 1.0 + 3f64.sqrt();
    assert!((spectral_radius(&d, DEFAULT_TOL).unwrap().value - expected).abs() < 1e-9);
    assert!((spectral_radius_dense(&d).unwrap().value - expected).abs() < 1e-9);
}
