mod common;

use oddcrit::graph::{
    build_family, extremal_graph, extremal_spec, split_join_graph, split_join_spec, FamilySpec,
};
use oddcrit::params::{theorem_grid, OddFactorParams};
use oddcrit::quotient::{
    char_poly_b, char_poly_bstar, extremal_quotient, g_poly, largest_root,
    quotient_largest_eigenvalue, quotient_matrix, split_join_quotient, Cubic, VertexPartition,
};
use oddcrit::spectrum::{distance_matrix, mu_dense};
use proptest::prelude::*;

fn grid() -> Vec<OddFactorParams> {
    theorem_grid(&[1, 3, 5], &[1, 2, 3], 40)
}

#[test]
fn built_quotients_match_closed_forms() {
    for p in grid() {
        let spec = extremal_spec(&p).unwrap();
        let d = distance_matrix(&build_family(&spec).unwrap()).unwrap();
        let pi =
            VertexPartition::from_sizes(&spec.clique_plus_singletons_blocks().unwrap()).unwrap();
        let q = quotient_matrix(&d, &pi).unwrap();
        assert!(q.equitable, "{p}");
        assert_eq!(
            q.exact_3x3().unwrap(),
            extremal_quotient(&p).unwrap(),
            "{p}"
        );
        for s in p.proper_splits() {
            let spec = split_join_spec(&p, s).unwrap();
            let d = distance_matrix(&build_family(&spec).unwrap()).unwrap();
            let pi = VertexPartition::from_sizes(&spec.clique_plus_singletons_blocks().unwrap())
                .unwrap();
            let q = quotient_matrix(&d, &pi).unwrap();
            assert!(q.equitable, "{p} s={s}");
            assert_eq!(
                q.exact_3x3().unwrap(),
                split_join_quotient(&p, s).unwrap(),
                "{p} s={s}"
            );
        }
    }
}

#[test]
fn printed_polynomials_match_determinant_expansion() {
    for p in grid() {
        assert_eq!(
            char_poly_bstar(&p).unwrap().0,
            common::char_poly_leibniz(&extremal_quotient(&p).unwrap()),
            "{p}"
        );
        for s in (p.k + 1)..=p.max_split() {
            let q = split_join_quotient(&p, s).unwrap();
            let expected = common::char_poly_leibniz(&q);
            assert_eq!(char_poly_b(&p, s).unwrap().0, expected, "{p} s={s}");
            assert_eq!(Cubic::characteristic(&q).0, expected, "{p} s={s}");
        }
    }
}

#[test]
fn difference_factors_through_g() {
    for p in grid() {
        let fstar = char_poly_bstar(&p).unwrap();
        for s in (p.k + 1)..=p.max_split() {
            let diff = char_poly_b(&p, s).unwrap().difference(&fstar);
            let scaled = g_poly(&p, s)
                .unwrap()
                .scaled_as_cubic((s - p.k - 1) as i128);
            assert_eq!(diff, scaled, "{p} s={s}");
        }
    }
}

#[test]
fn equitable_quotient_shares_the_spectral_radius() {
    for p in theorem_grid(&[1, 3], &[1, 2, 3], 30) {
        let g = extremal_graph(&p).unwrap();
        let spec = extremal_spec(&p).unwrap();
        let q = quotient_matrix(
            &distance_matrix(&g).unwrap(),
            &VertexPartition::from_sizes(&spec.clique_plus_singletons_blocks().unwrap()).unwrap(),
        )
        .unwrap();
        let dense = mu_dense(&g).unwrap();
        let root = largest_root(&char_poly_bstar(&p).unwrap());
        assert!((root - dense).abs() < 1e-6, "{p}: {root} vs {dense}");
        assert!(
            (quotient_largest_eigenvalue(&q).unwrap() - dense).abs() < 1e-6,
            "{p}"
        );
        for s in [p.k + 2, p.k + 3] {
            if p.check_split(s).is_err() {
                continue;
            }
            let dense = mu_dense(&split_join_graph(&p, s).unwrap()).unwrap();
            let root = largest_root(&char_poly_b(&p, s).unwrap());
            assert!((root - dense).abs() < 1e-6, "{p} s={s}: {root} vs {dense}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characteristic_coefficients(m in prop::array::uniform3(prop::array::uniform3(-50i128..50))) {
        let c = Cubic::characteristic(&m);
        prop_assert_eq!(c.0, common::char_poly_leibniz(&m));
        let trace = m[0][0] + m[1][1] + m[2][2];
        prop_assert_eq!(c.0[1], -trace);
        // p(0) = det(−M) = −det M
        let leibniz_det = -common::char_poly_leibniz(&m)[3];
        prop_assert_eq!(c.eval_exact(0), -leibniz_det);
    }

    #[test]
    fn family_quotients_are_equitable(s in 1usize..4, parts in prop::collection::vec(1usize..5, 1..4)) {
        let spec = FamilySpec::new(s, parts).unwrap();
        let d = distance_matrix(&build_family(&spec).unwrap()).unwrap();
        let pi = VertexPartition::from_sizes(&spec.block_sizes()).unwrap();
        let q = quotient_matrix(&d, &pi).unwrap();
        prop_assert!(q.equitable);
        let lambda = quotient_largest_eigenvalue(&q).unwrap();
        let dense = oddcrit::spectrum::spectral_radius_dense(&d).unwrap().value;
        prop_assert!((lambda - dense).abs() < 1e-6, "{} vs {}", lambda, dense);
    }

    #[test]
    fn largest_root_is_a_root(r in prop::array::uniform3(-40i128..40)) {
        let mut r = r;
        r.sort();
        // (x − r0)(x − r1)(x − r2)
        let c = Cubic([
            1,
            -(r[0] + r[1] + r[2]),
            r[0] * r[1] + r[0] * r[2] + r[1] * r[2],
            -r[0] * r[1] * r[2],
        ]);
        let root = largest_root(&c);
        prop_assert!((root - r[2] as f64).abs() < 1e-6, "{:?}: {}", r, root);
    }

    #[test]
    fn largest_root_with_complex_pair(a in -30i128..30, re in -30i128..30, im in 1i128..20) {
        // (x − a)(x² − 2·re·x + re² + im²)
        let q = re * re + im * im;
        let c = Cubic([1, -2 * re - a, q + 2 * re * a, -a * q]);
        prop_assert!((largest_root(&c) - a as f64).abs() < 1e-6);
    }
}

#[test]
fn non_equitable_partition_detected() {
    let d = distance_matrix(&oddcrit::graph::path(4)).unwrap();
    let q = quotient_matrix(&d, &VertexPartition::from_sizes(&[2, 2]).unwrap()).unwrap();
    assert!(!q.equitable);
    assert!(VertexPartition::new(vec![vec![0, 1], vec![1, 2, 3]], 4).is_err());
}
